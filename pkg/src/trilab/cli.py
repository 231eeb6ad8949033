"""Command-line front end.

Every subcommand produces a table of records, written as CSV or JSON to
``--output`` (or stdout).  Diagnostics go to stderr.  Exit status: 0 on
success, 1 when the mathematical verdict is negative, 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import bounds, dualgeom, f3core, nullstellensatz, trifference
from .errors import Exhausted, NotFound, TrilabError

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2

SUBCOMMANDS = (
    "check-trifferent", "search-max-dim", "f-of-d", "m-of-nd", "ap1-check",
    "heavy-hyperplane", "aux1-witness", "avoid-hyperplane", "cn-coeff",
    "phi-map", "bounds", "tech", "rate",
)

# name -> (type, default); a default of ... marks a required parameter
PARAMETERS = {
    "check-trifferent": {"file": (str, ...), "words": (bool, False)},
    "search-max-dim": {"n": (int, ...), "witness_out": (str, None)},
    "f-of-d": {"d": (int, ...), "witness_dir": (str, None)},
    "m-of-nd": {"d": (int, ...), "n_min": (int, 2), "n_max": (int, None),
                "budget": (int, dualgeom.M_ORACLE_BUDGET), "witness_dir": (str, None)},
    "ap1-check": {"file": (str, ...), "dimension": (int, None)},
    "heavy-hyperplane": {"file": (str, ...)},
    "aux1-witness": {"file": (str, ...)},
    "avoid-hyperplane": {"file": (str, ...), "dimension": (int, None)},
    "cn-coeff": {"file": (str, ...), "degrees": (str, ...), "grids": (str, ...)},
    "phi-map": {"file": (str, ...), "witness_out": (str, None)},
    "bounds": {"n": (int, ...), "d": (int, ...), "k": (int, 1), "set_size": (int, None)},
    "tech": {"alpha": (str, "0"), "d": (int, 3000), "crossover": (bool, False)},
    "rate": {"d": (str, "3,30,300,3000,6000")},
}


class UsageError(TrilabError):
    pass


@dataclass
class ExperimentConfig:
    subcommand: str
    parameters: dict = field(default_factory=dict)
    workers: int = 1
    output: Optional[str] = None
    format: str = "csv"
    seed: int = 0
    figure: Optional[str] = None

    def validated(self) -> dict:
        if self.subcommand not in PARAMETERS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")
        schema = PARAMETERS[self.subcommand]
        unknown = set(self.parameters) - set(schema)
        if unknown:
            raise UsageError(f"unknown parameters for {self.subcommand}: {', '.join(sorted(unknown))}")
        out = {}
        for name, (typ, default) in schema.items():
            value = self.parameters.get(name, default)
            if value is ...:
                raise UsageError(f"{self.subcommand} requires --{name.replace('_', '-')}")
            if value is not None and not isinstance(value, typ):
                try:
                    value = typ(value)
                except (TypeError, ValueError) as exc:
                    raise UsageError(f"--{name}: expected {typ.__name__}") from exc
            out[name] = value
        return out


# ---------------------------------------------------------------- tables


def emit_table(records, format: str = "csv", fieldnames=None) -> bytes:
    records = list(records)
    if format == "json":
        return (json.dumps(records, indent=2) + "\n").encode()
    if fieldnames is None:
        fieldnames = list(records[0]) if records else []
    for r in records:
        if list(r) != list(fieldnames):
            raise ValueError("records are not homogeneous")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fieldnames)
    for r in records:
        w.writerow(["" if r[k] is None else r[k] for k in fieldnames])
    return buf.getvalue().encode()


def parse_table(data: bytes, format: str = "csv") -> list[dict]:
    text = data.decode()
    if format == "json":
        return json.loads(text)
    return list(csv.DictReader(io.StringIO(text)))


# ------------------------------------------------------------ file input


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from exc


def _write(path, text: str):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from exc


def _witness_dir(p, config):
    if p.get("witness_dir"):
        return Path(p["witness_dir"])
    if config.output:
        return Path(config.output).resolve().parent
    return None


# ------------------------------------------------------------ subcommands


def _check_trifferent(p, config):
    text = _read(p["file"])
    if p["words"]:
        words = f3core.parse_vectors(text, source=p["file"])
        verdict = trifference.is_perfect_3hash_set(words)
        rec = {"kind": "set", "n": words[0].n if words else 0, "size": len(words)}
    else:
        V = f3core.parse_generator_matrix(text, source=p["file"])
        verdict = trifference.is_trifferent_linear(V)
        rec = {"kind": "linear", "n": V.n, "size": 3**V.rank}
        if not verdict:
            v, w = verdict.witness
            # a failing pair (v, w) is the non-trifferent triple {0, v, w}
            verdict = trifference.Verdict(False, (f3core.F3Vector.zero(V.n), v, w))
    rec["verdict"] = "trifferent" if verdict else "not trifferent"
    rec["failing_triple"] = "" if verdict else " ".join(str(x) for x in verdict.witness)
    if not verdict:
        print(f"failing triple: {rec['failing_triple']}", file=sys.stderr)
    return [rec], EXIT_OK if verdict else EXIT_FALSE


def _search_max_dim(p, config):
    res = trifference.max_trifferent_dimension(p["n"], workers=config.workers)
    rec = res.to_record()
    if p["witness_out"] and res.witness:
        _write(p["witness_out"], f3core.format_vectors(res.witness.rows))
    if config.format == "csv":
        rec["witness"] = "|".join(rec["witness"] or [])
    return [rec], EXIT_OK


def _f_of_d(p, config):
    res = dualgeom.f_oracle(p["d"], workers=config.workers)
    wdir = _witness_dir(p, config)
    wfile = ""
    if wdir is not None:
        wfile = f"f_d{p['d']}.sym"
        _write(wdir / wfile, dualgeom.format_symmetric_set(res.witness))
    return [{"d": p["d"], "value": res.value, "witness_file": wfile}], EXIT_OK


def _m_of_nd(p, config):
    d = p["d"]
    n_max = p["n_max"] if p["n_max"] is not None else p["n_min"]
    wdir = _witness_dir(p, config)
    rows, lm, mb, avg = [], [], [], []
    for n in range(p["n_min"], n_max + 1):
        if n % 2:
            continue
        res = dualgeom.m_oracle_detail(n, d, budget=p["budget"], workers=config.workers)
        wfile = ""
        if wdir is not None:
            wfile = f"m_n{n}_d{d}.sym"
            _write(wdir / wfile, dualgeom.format_symmetric_set(res.witness))
        rows.append({"d": d, "n": n, "value": res.value, "witness_file": wfile})
        lm.append(float(bounds.m_lower_bound_lm(n, d)) if d >= 3 and n >= 2 * d else None)
        mb.append(bounds.m_lower_bound_mb(n, d) if n // 2 >= d else None)
        avg.append(float(dualgeom.averaging_bound(n, d)))
    if config.figure and rows:
        from .plotting import plot_m_table

        plot_m_table(d, [r["n"] for r in rows], [r["value"] for r in rows], lm, mb, avg, config.figure)
    return rows, EXIT_OK


def _load_set(p):
    return dualgeom.parse_symmetric_set(_read(p["file"]), p.get("dimension"), source=p["file"])


def _ap1_check(p, config):
    X = _load_set(p)
    verdict = dualgeom.ap1_satisfied(X)
    rec = {
        "d": X.dimension,
        "size": X.size,
        "verdict": "satisfied" if verdict else "violated",
        "h1": str(verdict.witness[0]) if not verdict else "",
        "h2": str(verdict.witness[1]) if not verdict else "",
    }
    return [rec], EXIT_OK if verdict else EXIT_FALSE


def _heavy_hyperplane(p, config):
    X = _load_set(p)
    r = dualgeom.heavy_hyperplane_lm(X)
    rec = {
        "d": X.dimension,
        "size": X.size,
        "hyperplane": str(r.hyperplane),
        "count": r.intersection_count,
        "bound_exact": str(r.guaranteed_lower_bound),
        "bound": repr(float(r.guaranteed_lower_bound)),
        "meets_bound": "yes" if r.intersection_count >= r.guaranteed_lower_bound else "no",
    }
    return [rec], EXIT_OK if r.intersection_count >= r.guaranteed_lower_bound else EXIT_FALSE


def _aux1_witness(p, config):
    X = _load_set(p)
    try:
        w = dualgeom.aux1_witness(X)
    except Exhausted as exc:
        print(f"exhausted: {exc}", file=sys.stderr)
        return [{"d": X.dimension, "size": X.size, "h1": "", "h2": ""}], EXIT_FALSE
    return [{"d": X.dimension, "size": X.size, "h1": str(w.h1), "h2": str(w.h2)}], EXIT_OK


def _avoid_hyperplane(p, config):
    pts = f3core.parse_vectors(_read(p["file"]), source=p["file"])
    d = p["dimension"] if p["dimension"] is not None else (pts[0].n if pts else None)
    if d is None:
        raise UsageError("empty point list needs --dimension")
    try:
        H = nullstellensatz.find_avoiding_hyperplane(pts, d)
    except NotFound as exc:
        print(f"NotFound: {exc}", file=sys.stderr)
        return [{"hyperplane": ""}], EXIT_FALSE
    return [{"hyperplane": str(H)}], EXIT_OK


def _cn_coeff(p, config):
    forms = [nullstellensatz.LinearForm(v)
             for v in f3core.parse_vectors(_read(p["file"]), source=p["file"])]
    try:
        degrees = tuple(int(x) for x in p["degrees"].split(","))
        grids = tuple(tuple(int(ch) for ch in g) for g in p["grids"].split(","))
    except ValueError as exc:
        raise UsageError("--degrees is comma-separated ints, --grids comma-separated trit strings") from exc
    query = nullstellensatz.CnQuery(degrees, grids)
    c = nullstellensatz.cn_coefficient(nullstellensatz.product_evaluator(forms), query)
    rec = {"degree": len(forms), "degree_budget": sum(degrees), "coefficient": c}
    try:
        P = nullstellensatz.expand_product(forms, len(degrees))
        rec["expansion_coefficient"] = P.coefficient(degrees)
    except TrilabError:
        rec["expansion_coefficient"] = ""
    return [rec], EXIT_OK


def _phi_map(p, config):
    X = _load_set(p)
    U = dualgeom.phi_map(X)
    m_minus_1 = dualgeom.max_origin_count(X)
    n = len(X.pairs)
    guaranteed = Fraction(2 * n - m_minus_1, 2)
    mw = f3core.min_weight(U)
    if p["witness_out"]:
        _write(p["witness_out"], f3core.format_vectors(U.rows))
    rec = {
        "n": U.n, "rank": U.rank, "rows": "|".join(str(r) for r in U.rows),
        "min_weight": mw, "guaranteed_weight": str(guaranteed),
        "holds": "yes" if mw >= guaranteed else "no",
    }
    return [rec], EXIT_OK if mw >= guaranteed else EXIT_FALSE


def _bounds(p, config):
    n, d, k = p["n"], p["d"], p["k"]
    size = p["set_size"] if p["set_size"] is not None else 2 * n
    reports = [
        bounds.korner_bound(3, n),
        bounds.fk_bound(3, n),
        bounds.BoundReport("km_size", {"n": n}, None,
                           bounds.RationalPower(Fraction(9, 5), Fraction(n, 4))),
    ]
    lin = bounds.dim_bound_lin(n)
    reports.append(bounds.BoundReport("dim_lin", {"n": n, "d": d}, d, lin, d <= lin))
    fl = bounds.f_lower_bound(d)
    reports.append(bounds.BoundReport("f_lower", {"d": d, "2n": 2 * n}, 2 * n, fl, 2 * n >= fl))
    if d >= 3 and size >= 2 * d:
        reports.append(bounds.BoundReport("m_lm", {"set_size": size, "d": d}, None,
                                          bounds.m_lower_bound_lm(size, d)))
    if size % 2 == 0 and size // 2 >= d:
        reports.append(bounds.BoundReport("m_mb", {"set_size": size, "d": d}, None,
                                          bounds.m_lower_bound_mb(size, d)))
    if 0 <= d <= n:
        reports.append(bounds.packing_check(n, d, k))
    return [r.to_record() for r in reports], EXIT_OK


def _tech(p, config):
    try:
        alpha = Fraction(p["alpha"])
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError("--alpha must be a rational such as 0, 1/100 or 0.01") from exc
    report = bounds.tech_gap_analysis(alpha, p["d"])
    rows = report.to_records()
    cross = None
    if p["crossover"]:
        cross = bounds.tech_crossover_alpha(p["d"])
        for r in rows:
            r["crossover_alpha_exact"] = str(cross)
            r["crossover_alpha"] = repr(float(cross))
    if config.figure:
        from .plotting import plot_tech_gap

        top = float(cross) * 3 if cross else 0.05
        alphas = [top * i / 40 for i in range(41)]
        reps = [bounds.tech_gap_analysis(Fraction(a).limit_denominator(10**6), p["d"]) for a in alphas]
        plot_tech_gap(p["d"], alphas, [r.lhs_exponent for r in reps], [r.rhs_exponent for r in reps],
                      float(cross) if cross else None, config.figure)
    return rows, EXIT_OK if report.contradiction else EXIT_FALSE


def _rate(p, config):
    try:
        ds = [int(x) for x in p["d"].split(",")]
    except ValueError as exc:
        raise UsageError("--d is a comma-separated list of integers") from exc
    rows = [{"d": d, "rate": repr(bounds.asymptotic_rate(d))} for d in ds]
    if config.figure:
        from .plotting import plot_rates

        plot_rates(ds, [float(r["rate"]) for r in rows], path=config.figure)
    return rows, EXIT_OK


# header for subcommands whose table can legitimately be empty
FIELDNAMES = {"m-of-nd": ["d", "n", "value", "witness_file"]}

HANDLERS = {
    "check-trifferent": _check_trifferent,
    "search-max-dim": _search_max_dim,
    "f-of-d": _f_of_d,
    "m-of-nd": _m_of_nd,
    "ap1-check": _ap1_check,
    "heavy-hyperplane": _heavy_hyperplane,
    "aux1-witness": _aux1_witness,
    "avoid-hyperplane": _avoid_hyperplane,
    "cn-coeff": _cn_coeff,
    "phi-map": _phi_map,
    "bounds": _bounds,
    "tech": _tech,
    "rate": _rate,
}


def run(config: ExperimentConfig, stdout=None) -> int:
    """Execute one experiment; returns the exit status."""
    stdout = stdout if stdout is not None else sys.stdout.buffer
    try:
        params = config.validated()
        records, status = HANDLERS[config.subcommand](params, config)
        data = emit_table(records, config.format,
                          None if records else FIELDNAMES.get(config.subcommand))
        if config.output:
            try:
                Path(config.output).write_bytes(data)
            except OSError as exc:
                raise UsageError(f"{config.output}: {exc.strerror or exc}") from exc
        else:
            stdout.write(data)
            stdout.flush()
        return status
    except TrilabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default=None, help="write the table here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--figure", default=None, help="render a figure to this path (m-of-nd, tech, rate)")

    parser = argparse.ArgumentParser(prog="trilab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, parents=[common])
        for pname, (typ, default) in PARAMETERS[name].items():
            flag = "--" + pname.replace("_", "-")
            if pname == "file":
                sp.add_argument("file")
            elif typ is bool:
                sp.add_argument(flag, dest=pname, action="store_true")
            else:
                sp.add_argument(flag, dest=pname, type=typ, required=default is ...,
                                default=None if default is ... else default)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    ns = vars(args)
    config = ExperimentConfig(
        subcommand=ns.pop("subcommand"),
        workers=ns.pop("workers"),
        output=ns.pop("output"),
        format=ns.pop("format"),
        seed=ns.pop("seed"),
        figure=ns.pop("figure"),
        parameters=ns,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

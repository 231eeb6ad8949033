import io
import json

import pytest

from trilab.cli import ExperimentConfig, emit_table, main, parse_table, run


def call(tmp_path, *argv):
    out = tmp_path / "out.txt"
    code = main([*argv, "--output", str(out)])
    return code, (out.read_text() if out.exists() else None)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_search_witness_is_trifferent(tmp_path):
    wit = tmp_path / "w4.gen"
    code, text = call(tmp_path, "search-max-dim", "--n", "4", "--witness-out", str(wit))
    assert code == 0
    row = parse_table(text.encode())[0]
    assert row["best_dimension"] == "2"
    code, text = call(tmp_path, "check-trifferent", str(wit))
    assert code == 0
    assert parse_table(text.encode())[0]["verdict"] == "trifferent"


def test_full_plane_is_not_trifferent(tmp_path, capfd):
    f = write(tmp_path, "full.gen", "10\n01\n")
    code, text = call(tmp_path, "check-trifferent", f)
    assert code == 1
    row = parse_table(text.encode())[0]
    triple = row["failing_triple"].split()
    assert len(triple) == 3 and len(set(triple)) == 3
    cols = list(zip(*triple))
    assert not any(set(c) == {"0", "1", "2"} for c in cols)
    assert "failing triple" in capfd.readouterr().err


def test_check_word_set(tmp_path):
    f = write(tmp_path, "set.txt", "000\n012\n021\n")
    assert call(tmp_path, "check-trifferent", "--words", f)[0] == 0
    g = write(tmp_path, "all2.txt", "".join(f"{a}{b}\n" for a in range(3) for b in range(3)))
    code, text = call(tmp_path, "check-trifferent", "--words", g)
    assert code == 1 and parse_table(text.encode())[0]["failing_triple"] == "00 01 10"


def test_f_of_d_row_and_witness(tmp_path):
    code, text = call(tmp_path, "f-of-d", "--d", "2")
    assert code == 0
    assert text == "d,value,witness_file\n2,8,f_d2.sym\n"
    assert call(tmp_path, "ap1-check", str(tmp_path / "f_d2.sym"))[0] == 0


def test_f_of_d_without_output_has_empty_witness():
    buf = io.BytesIO()
    assert run(ExperimentConfig("f-of-d", {"d": 1}), stdout=buf) == 0
    assert buf.getvalue() == b"d,value,witness_file\n1,0,\n"


def test_m_of_nd_sweep(tmp_path):
    code, text = call(tmp_path, "m-of-nd", "--d", "3", "--n-min", "6", "--n-max", "14")
    assert code == 0
    rows = parse_table(text.encode())
    assert [int(r["n"]) for r in rows] == [6, 8, 10, 12, 14]
    assert [int(r["value"]) for r in rows] == [4, 4, 6, 6, 6]


def test_ap1_violation(tmp_path):
    f = write(tmp_path, "x.sym", "10\n01\n11\n")
    code, text = call(tmp_path, "ap1-check", f)
    row = parse_table(text.encode())[0]
    assert code == 1 and row["verdict"] == "violated" and row["h1"] and row["h2"]


def test_heavy_and_aux1(tmp_path):
    f = write(tmp_path, "e.sym", "100\n010\n001\n")
    code, text = call(tmp_path, "heavy-hyperplane", f)
    assert code == 0 and parse_table(text.encode())[0]["count"] == "2"
    g = write(tmp_path, "e2.sym", "10\n01\n")
    code, text = call(tmp_path, "aux1-witness", g)
    row = parse_table(text.encode())[0]
    assert code == 0 and row["h1"] and row["h2"]


def test_avoid_hyperplane(tmp_path):
    f = write(tmp_path, "pts.txt", "00\n10\n01\n11\n")
    code, text = call(tmp_path, "avoid-hyperplane", f)
    assert code == 0 and text == "hyperplane\n10;2\n"
    g = write(tmp_path, "all.txt", "".join(f"{a}{b}\n" for a in range(3) for b in range(3)))
    assert call(tmp_path, "avoid-hyperplane", g)[0] == 1


def test_cn_coeff(tmp_path):
    f = write(tmp_path, "forms.txt", "12\n11\n")
    code, text = call(tmp_path, "cn-coeff", f, "--degrees", "0,2", "--grids", "0,012")
    row = parse_table(text.encode())[0]
    assert code == 0 and row["coefficient"] == row["expansion_coefficient"] == "2"
    assert call(tmp_path, "cn-coeff", f, "--degrees", "1,1", "--grids", "0,01")[0] == 2
    assert call(tmp_path, "cn-coeff", f, "--degrees", "a", "--grids", "0")[0] == 2


def test_phi_map(tmp_path):
    f = write(tmp_path, "full.sym", "10\n01\n11\n12\n")
    out = tmp_path / "u.gen"
    code, text = call(tmp_path, "phi-map", f, "--witness-out", str(out))
    row = parse_table(text.encode())[0]
    assert code == 0 and (row["n"], row["rank"], row["min_weight"]) == ("4", "2", "3")
    assert call(tmp_path, "check-trifferent", str(out))[0] == 0


def test_bounds_and_tech_and_rate(tmp_path):
    code, text = call(tmp_path, "bounds", "--n", "4", "--d", "2")
    rows = {r["name"]: r for r in parse_table(text.encode())}
    assert code == 0 and rows["korner"]["rhs_exact"] == "81/8"
    assert rows["packing"]["verdict"] == "holds"
    code, text = call(tmp_path, "tech", "--alpha", "0", "--d", "3000")
    assert code == 0 and {r["contradiction"] for r in parse_table(text.encode())} == {"yes"}
    assert call(tmp_path, "tech", "--alpha", "x")[0] == 2
    code, text = call(tmp_path, "rate", "--d", "3")
    assert code == 0 and float(parse_table(text.encode())[0]["rate"]) == pytest.approx(12 ** (1 / 3))


def test_empty_sweep_is_header_only(tmp_path):
    code, text = call(tmp_path, "m-of-nd", "--d", "2", "--n-min", "6", "--n-max", "4")
    assert code == 0 and text == "d,n,value,witness_file\n"


def test_empty_table_csv_header():
    assert emit_table([], "csv", ["a", "b"]) == b"a,b\n"
    assert emit_table([], "csv") == b"\n"
    assert emit_table([], "json") == b"[]\n"
    with pytest.raises(ValueError):
        emit_table([{"a": 1}, {"b": 2}])


def test_json_round_trip(tmp_path):
    recs = [{"d": 2, "value": 8, "witness_file": ""}, {"d": 3, "value": 18, "witness_file": "x"}]
    assert parse_table(emit_table(recs, "json"), "json") == recs
    code, text = call(tmp_path, "f-of-d", "--d", "2", "--format", "json")
    assert json.loads(text) == [{"d": 2, "value": 8, "witness_file": "f_d2.sym"}]


def test_usage_errors(tmp_path, capfd):
    assert main([]) == 2
    assert main(["no-such"]) == 2
    assert main(["f-of-d"]) == 2
    assert run(ExperimentConfig("f-of-d", {"d": 2, "bogus": 1})) == 2
    assert run(ExperimentConfig("f-of-d", {})) == 2
    assert run(ExperimentConfig("f-of-d", {"d": 2}, format="xml")) == 2
    assert run(ExperimentConfig("f-of-d", {"d": 2}, workers=0)) == 2
    assert run(ExperimentConfig("nope", {})) == 2
    assert call(tmp_path, "f-of-d", "--d", "5")[0] == 2
    assert call(tmp_path, "check-trifferent", str(tmp_path / "missing"))[0] == 2
    err = capfd.readouterr().err
    assert "bogus" in err and "missing" in err


def test_parse_errors_exit_2(tmp_path):
    bad = write(tmp_path, "bad.gen", "10\n1x\n")
    assert call(tmp_path, "check-trifferent", bad)[0] == 2
    ragged = write(tmp_path, "ragged.gen", "10\n100\n")
    assert call(tmp_path, "check-trifferent", ragged)[0] == 2
    dup = write(tmp_path, "dup.sym", "10\n20\n")
    assert call(tmp_path, "ap1-check", dup)[0] == 2
    zero = write(tmp_path, "zero.sym", "00\n")
    assert call(tmp_path, "ap1-check", zero)[0] == 2


def test_figures_written(tmp_path):
    for sub, extra in (("m-of-nd", ["--d", "2", "--n-min", "2", "--n-max", "8"]),
                       ("rate", ["--d", "3,30,300"]),
                       ("tech", ["--d", "300", "--crossover"])):
        fig = tmp_path / f"{sub}.png"
        code, _ = call(tmp_path, sub, *extra, "--figure", str(fig))
        assert code == 0
        assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_output_independent_of_workers(tmp_path):
    cases = [("search-max-dim", ["--n", "5"]), ("f-of-d", ["--d", "3"]),
             ("m-of-nd", ["--d", "3", "--n-min", "10", "--n-max", "12"])]
    for sub, extra in cases:
        outs = []
        for w in (1, 2, 8):
            d = tmp_path / f"w{w}"
            d.mkdir(exist_ok=True)
            out = d / "t.csv"
            assert main([sub, *extra, "--workers", str(w), "--output", str(out)]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1] == outs[2]


def test_stdout_default(capsysbinary):
    assert main(["rate", "--d", "3"]) == 0
    assert capsysbinary.readouterr().out.startswith(b"d,rate\n3,")

"""Perfect 3-hash (trifferent) predicates and the maximum-dimension search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Optional

from ._parallel import parallel_map
from .errors import DimensionError, InvalidTriple, TooLarge
from .f3core import F3Vector, GeneratorBasis, add_planes, span_planes

SEARCH_GUARD = 8


class Verdict(NamedTuple):
    """A truth value with the lexicographically first counterexample when false."""

    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class CodeSet:
    words: tuple[F3Vector, ...]

    def __post_init__(self):
        words = tuple(sorted(self.words))
        if words and any(w.n != words[0].n for w in words):
            raise DimensionError("code words have unequal lengths")
        if len(set(words)) != len(words):
            raise ValueError("duplicate code words")
        object.__setattr__(self, "words", words)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


def _trifferent_planes(x1, x2, y1, y2, z1, z2, full) -> bool:
    x0 = full & ~(x1 | x2)
    y0 = full & ~(y1 | y2)
    z0 = full & ~(z1 | z2)
    hit = (
        (x0 & y1 & z2) | (x0 & y2 & z1) | (x1 & y0 & z2)
        | (x1 & y2 & z0) | (x2 & y0 & z1) | (x2 & y1 & z0)
    )
    return hit != 0


def is_trifferent_triple(x: F3Vector, y: F3Vector, z: F3Vector) -> bool:
    if not x.n == y.n == z.n:
        raise DimensionError("vectors have unequal lengths")
    if x == y or y == z or x == z:
        raise InvalidTriple("the three vectors must be pairwise distinct")
    full = (1 << x.n) - 1
    return _trifferent_planes(x.ones, x.twos, y.ones, y.twos, z.ones, z.twos, full)


def is_perfect_3hash_set(F: CodeSet | Iterable[F3Vector]) -> Verdict:
    words = F.words if isinstance(F, CodeSet) else CodeSet(tuple(F)).words
    if len(words) < 3:
        return Verdict(True)
    full = (1 << words[0].n) - 1
    for x, y, z in itertools.combinations(words, 3):
        if not _trifferent_planes(x.ones, x.twos, y.ones, y.twos, z.ones, z.twos, full):
            return Verdict(False, (x, y, z))
    return Verdict(True)


def _pair_ok(v1, v2, w1, w2) -> bool:
    # some coordinate where v and w are both nonzero and differ
    return bool((v1 & w2) | (v2 & w1))


def is_trifferent_linear(V: GeneratorBasis) -> Verdict:
    """Linear trifference: each pair of distinct nonzero codewords (v, w) has a
    coordinate where both are nonzero and unequal.  Equivalent to the triple
    test on the whole code, because {x, y, z} reduces to {0, y - x, z - x}."""
    words = span_planes(V.rows)[1:]
    n = V.n
    for i, (v1, v2) in enumerate(words):
        for w1, w2 in words[i + 1:]:
            if not _pair_ok(v1, v2, w1, w2):
                return Verdict(False, (F3Vector(n, v1, v2), F3Vector(n, w1, w2)))
    return Verdict(True)


def km_size_bound(n: int) -> float:
    """Size (9/5)^(n/4) of the concatenated trifferent sets built from a
    two-dimensional trifferent code of length 4."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (9 / 5) ** (n / 4)


# ------------------------------------------------------------- subspaces


def _free_columns(n: int, profile: tuple[int, ...]) -> list[list[int]]:
    piv = set(profile)
    return [[j for j in range(p + 1, n) if j not in piv] for p in profile]


def _row_planes(n: int, pivot: int, free: list[int], values: tuple[int, ...]) -> tuple[int, int]:
    o, t = 1 << pivot, 0
    for j, v in zip(free, values):
        if v == 1:
            o |= 1 << j
        elif v == 2:
            t |= 1 << j
    return o, t


def enumerate_subspaces(n: int, d: int) -> Iterator[GeneratorBasis]:
    """Every d-dimensional subspace of F_3^n exactly once.

    Order: pivot profiles lexicographically, then the free entries of the rows
    (row-major, each entry 0 < 1 < 2).
    """
    for profile in itertools.combinations(range(n), d):
        frees = _free_columns(n, profile)
        ranges = [itertools.product(range(3), repeat=len(f)) for f in frees]
        for choice in itertools.product(*ranges):
            rows = tuple(
                F3Vector(n, *_row_planes(n, p, f, c)) for p, f, c in zip(profile, frees, choice)
            )
            yield GeneratorBasis(rows)


def gaussian_binomial(n: int, k: int, q: int = 3) -> int:
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@dataclass(frozen=True)
class SearchResult:
    n: int
    best_dimension: int
    witness: Optional[GeneratorBasis]
    subspaces_examined: int
    per_dimension: dict = field(default_factory=dict, compare=False)

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "best_dimension": self.best_dimension,
            "witness": [str(r) for r in self.witness.rows] if self.witness else None,
            "subspaces_examined": self.subspaces_examined,
        }


def _extend_ok(words, g1, g2, full) -> tuple[bool, list]:
    """Add row g to a trifferent code given by its codewords; check new pairs."""
    plus = [add_planes(a1, a2, g1, g2, full) for a1, a2 in words]
    minus = [add_planes(a1, a2, g2, g1, full) for a1, a2 in words]
    new = plus + minus
    old = words[1:]
    for k, (v1, v2) in enumerate(new):
        for w1, w2 in old:
            if not (v1 & w2) | (v2 & w1):
                return False, []
        for w1, w2 in new[k + 1:]:
            if not (v1 & w2) | (v2 & w1):
                return False, []
    return True, words + new


def _search_profile(args) -> tuple[Optional[tuple], int]:
    """Depth-first search of one pivot profile; returns (first witness rows, nodes checked)."""
    n, profile = args
    full = (1 << n) - 1
    frees = _free_columns(n, profile)
    d = len(profile)
    examined = 0

    def dfs(r, words, rows):
        nonlocal examined
        if r == d:
            return rows
        for values in itertools.product(range(3), repeat=len(frees[r])):
            g1, g2 = _row_planes(n, profile[r], frees[r], values)
            examined += 1
            ok, nxt = _extend_ok(words, g1, g2, full)
            if ok:
                found = dfs(r + 1, nxt, rows + ((g1, g2),))
                if found is not None:
                    return found
        return None

    found = dfs(0, [(0, 0)], ())
    return found, examined


def max_trifferent_dimension(n: int, workers: int = 1) -> SearchResult:
    """Exact maximum dimension of a trifferent linear code of length n.

    Subcodes of trifferent codes are trifferent, and the leading rows of an
    RREF basis span a subcode in RREF, so every partial basis that fails is
    pruned.  Each pivot profile is searched to its first full witness;
    ``subspaces_examined`` counts the partial subspaces tested.
    """
    if not 1 <= n <= SEARCH_GUARD:
        raise TooLarge(f"n={n} outside 1..{SEARCH_GUARD}")
    best, witness, examined = 0, None, 0
    per_dim = {}
    for d in range(1, n + 1):
        profiles = list(itertools.combinations(range(n), d))
        results = parallel_map(_search_profile, [(n, p) for p in profiles], workers)
        count = sum(c for _, c in results)
        examined += count
        hit = next((rows for rows, _ in results if rows is not None), None)
        per_dim[d] = count
        if hit is None:
            break
        best = d
        witness = GeneratorBasis(tuple(F3Vector(n, o, t) for o, t in hit))
    return SearchResult(n, best, witness, examined, per_dim)

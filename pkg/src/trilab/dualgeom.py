"""Centrally symmetric point sets in F_3^d and the hyperplane problems on them.

A linear code V of dimension d gives such a set X: the coordinate functionals,
written in the dual of a basis of V, together with their negatives.  Two
integers go with it: ``f(d)``, the least |X| meeting the intersection of every
pair of non-parallel affine hyperplanes that miss the origin, and ``m(n, d)``,
the largest count that some hyperplane through the origin always reaches on a
size-n set.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from ._parallel import chunked, parallel_map
from .errors import (
    DegenerateInput,
    DimensionError,
    Exhausted,
    InvalidSize,
    ParseError,
    PreconditionError,
    TooLarge,
)
from .f3core import (
    AffineHyperplane,
    F3Vector,
    GeneratorBasis,
    canonical_normals,
    enumerate_hyperplanes,
    inverse,
    parse_vectors,
    points,
    rank,
    rref,
)
from .nullstellensatz import find_avoiding_hyperplane
from .trifference import Verdict

AP1_GUARD = 6
F_ORACLE_GUARD = 3
M_ORACLE_BUDGET = 10**7


@dataclass(frozen=True)
class SymmetricSet:
    """X = {+-v : v in pairs}; ``pairs`` holds the representatives whose first
    nonzero entry is 1 (the lexicographically smaller of v and -v)."""

    dimension: int
    pairs: tuple[F3Vector, ...]

    def __post_init__(self):
        reps = tuple(sorted(self.pairs))
        for v in reps:
            if v.n != self.dimension:
                raise DimensionError(f"vector {v} not in dimension {self.dimension}")
            if v.is_zero():
                raise ValueError("a symmetric set excludes the origin")
            if v.leading() != 1:
                raise ValueError(f"{v} is not an antipodal representative")
        if len(set(reps)) != len(reps):
            raise ValueError("repeated antipodal pair")
        object.__setattr__(self, "pairs", reps)

    @classmethod
    def from_vectors(cls, d: int, vectors: Iterable[F3Vector]) -> "SymmetricSet":
        """Close ``vectors`` under negation, dropping zeros."""
        reps = {v.canonical() for v in vectors if not v.is_zero()}
        return cls(d, tuple(reps))

    @property
    def size(self) -> int:
        return 2 * len(self.pairs)

    def __len__(self):
        return self.size

    def points(self) -> list[F3Vector]:
        return sorted(self.pairs + tuple(-v for v in self.pairs))

    def __contains__(self, v: F3Vector) -> bool:
        return not v.is_zero() and v.canonical() in self.pairs

    def spans(self) -> bool:
        return rank(self.pairs) == self.dimension if self.pairs else self.dimension == 0

    def count_in(self, H: AffineHyperplane) -> int:
        return sum(1 for x in self.points() if H.contains(x))


def parse_symmetric_set(text: str, d: Optional[int] = None, *, source: str = "<text>") -> SymmetricSet:
    vecs = parse_vectors(text, source=source)
    if d is None:
        if not vecs:
            raise ParseError(f"{source}: empty set needs an explicit dimension")
        d = vecs[0].n
    seen = set()
    for v in vecs:
        if v.n != d:
            raise ParseError(f"{source}: {v} is not in dimension {d}")
        if v.is_zero():
            raise ParseError(f"{source}: the origin is not allowed")
        c = v.canonical()
        if c in seen:
            raise ParseError(f"{source}: antipodal pair of {v} listed twice")
        seen.add(c)
    return SymmetricSet(d, tuple(seen))


def format_symmetric_set(X: SymmetricSet) -> str:
    return "".join(f"{v}\n" for v in X.pairs)


@lru_cache(maxsize=None)
def projective_points(d: int) -> tuple[F3Vector, ...]:
    """All antipodal representatives of F_3^d, lexicographic."""
    return tuple(sorted(canonical_normals(d)))


# ----------------------------------------------------------------- reduction


def code_to_symmetric_set(V: GeneratorBasis) -> SymmetricSet:
    """Coordinate functionals of V (the generator columns) closed under negation."""
    return SymmetricSet.from_vectors(V.rank, V.columns())


# ------------------------------------------------------ Alternate Problem 1


def _check_dim(d: int, guard: int):
    if d > guard:
        raise TooLarge(f"d={d} exceeds the guard {guard}")


def ap1_satisfied(X: SymmetricSet) -> Verdict:
    """Does X meet H1 & H2 for every unordered non-parallel pair of affine
    hyperplanes avoiding 0?  Counterexample pairs follow the hyperplane
    enumeration order (offset-major), first hyperplane major."""
    d = X.dimension
    _check_dim(d, AP1_GUARD)
    pts = X.points()
    hyps = enumerate_hyperplanes(d, through_origin=False) if d >= 1 else []
    masks = []
    for H in hyps:
        m = 0
        for i, p in enumerate(pts):
            if H.normal.dot(p) == H.offset:
                m |= 1 << i
        masks.append(m)
    for i, (H1, m1) in enumerate(zip(hyps, masks)):
        for H2, m2 in zip(hyps[i + 1:], masks[i + 1:]):
            if H1.normal != H2.normal and not m1 & m2:
                return Verdict(False, (H1, H2))
    return Verdict(True)


@lru_cache(maxsize=None)
def _line_pair_masks(d: int) -> tuple[int, ...]:
    """For each non-parallel pair of hyperplanes avoiding 0, the set of
    antipodal pairs meeting their intersection, as a bitmask over
    ``projective_points(d)``; deduplicated, sorted."""
    reps = projective_points(d)
    index = {v: i for i, v in enumerate(reps)}
    hyps = enumerate_hyperplanes(d, through_origin=False)
    pts = [p for p in points(d) if not p.is_zero()]
    out = set()
    for H1, H2 in itertools.combinations(hyps, 2):
        if H1.normal == H2.normal:
            continue
        m = 0
        for p in pts:
            if H1.normal.dot(p) == H1.offset and H2.normal.dot(p) == H2.offset:
                m |= 1 << index[p.canonical()]
        out.add(m)
    return tuple(sorted(out))


def _ap1_mask(mask: int, lines: tuple[int, ...]) -> bool:
    return all(mask & lm for lm in lines)


def _f_chunk(args):
    d, combos = args
    lines = _line_pair_masks(d)
    for combo in combos:
        m = 0
        for i in combo:
            m |= 1 << i
        if _ap1_mask(m, lines):
            return combo
    return None


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: SymmetricSet


def f_oracle(d: int, workers: int = 1) -> OracleResult:
    """Exact f(d); ascends by size, minimizer lexicographic-first among
    index-combinations of ``projective_points(d)``."""
    if d < 1:
        raise DimensionError("d must be >= 1")
    _check_dim(d, F_ORACLE_GUARD)
    reps = projective_points(d)
    if d == 1:
        return OracleResult(0, SymmetricSet(1, ()))
    for k in range(len(reps) + 1):
        combos = list(itertools.combinations(range(len(reps)), k))
        parts = chunked(combos, workers)
        hits = parallel_map(_f_chunk, [(d, part) for part in parts], workers)
        hit = next((h for h in hits if h is not None), None)
        if hit is not None:
            return OracleResult(2 * k, SymmetricSet(d, tuple(reps[i] for i in hit)))
    raise AssertionError("the full punctured space always satisfies the condition")


# ------------------------------------------------------ Alternate Problem 2


def best_origin_hyperplane(X: SymmetricSet) -> tuple[AffineHyperplane, int]:
    """Origin hyperplane with the most points of X; first in enumeration order on ties."""
    best, best_count = None, -1
    pts = X.points()
    for H in enumerate_hyperplanes(X.dimension, through_origin=True):
        c = sum(1 for x in pts if H.normal.dot(x) == 0)
        if c > best_count:
            best, best_count = H, c
    return best, best_count


@lru_cache(maxsize=None)
def _origin_pair_masks(d: int) -> tuple[int, ...]:
    reps = projective_points(d)
    out = []
    for H in enumerate_hyperplanes(d, through_origin=True):
        m = 0
        for i, v in enumerate(reps):
            if H.normal.dot(v) == 0:
                m |= 1 << i
        out.append(m)
    return tuple(out)


def _m_chunk(args):
    d, combos = args
    hms = _origin_pair_masks(d)
    best, arg = None, None
    for combo in combos:
        m = 0
        for i in combo:
            m |= 1 << i
        top = max((m & h).bit_count() for h in hms)
        if best is None or top < best:
            best, arg = top, combo
    return best, arg


def m_oracle_detail(n: int, d: int, budget: int = M_ORACLE_BUDGET, workers: int = 1) -> OracleResult:
    """m(n, d) together with a lexicographic-first size-n set attaining it."""
    if d < 1:
        raise DimensionError("d must be >= 1")
    if n % 2 or not 2 <= n <= 3**d - 1:
        raise InvalidSize(f"n={n} must be even with 2 <= n <= {3**d - 1}")
    reps = projective_points(d)
    total = math.comb(len(reps), n // 2)
    if total > budget:
        raise TooLarge(f"{total} symmetric sets exceed the budget {budget}")
    combos = list(itertools.combinations(range(len(reps)), n // 2))
    results = parallel_map(_m_chunk, [(d, part) for part in chunked(combos, workers)], workers)
    best, arg = None, None
    for b, a in results:
        if best is None or b < best:
            best, arg = b, a
    return OracleResult(2 * best, SymmetricSet(d, tuple(reps[i] for i in arg)))


def m_oracle(n: int, d: int, budget: int = M_ORACLE_BUDGET, workers: int = 1) -> int:
    return m_oracle_detail(n, d, budget, workers).value


def averaging_bound(n: int, d: int) -> Fraction:
    """Expected |X & H| for a uniformly random origin hyperplane H."""
    return Fraction(3 ** (d - 1) - 1, 3**d - 1) * n


# ----------------------------------------------------- random-pair hyperplane


def p_w(w: F3Vector) -> Fraction:
    """Probability that w_i = w_j for a uniformly random pair {i, j}."""
    d = w.n
    if d < 2:
        raise DimensionError("need at least two coordinates")
    e = w.entries
    a, b, c = e.count(2), e.count(0), e.count(1)
    return Fraction(a * (a - 1) + b * (b - 1) + c * (c - 1), d * (d - 1))


@dataclass(frozen=True)
class HeavyHyperplaneReport:
    hyperplane: AffineHyperplane
    intersection_count: int
    guaranteed_lower_bound: Fraction
    basis: tuple[F3Vector, ...] = ()
    pair: tuple[int, int] = (0, 0)


def lm_bound(n: int, d: int) -> Fraction:
    return Fraction(n + 4 * d, 3) - 3 - Fraction(n, d)


def greedy_basis(vectors: Sequence[F3Vector], d: int) -> list[F3Vector]:
    chosen = []
    for v in vectors:
        if rank(chosen + [v]) > len(chosen):
            chosen.append(v)
            if len(chosen) == d:
                break
    return chosen


def heavy_hyperplane_lm(X: SymmetricSet) -> HeavyHyperplaneReport:
    """Put d independent members of X at the standard basis and take the best
    hyperplane {c_i = c_j} in those coordinates.  The average over all pairs
    already meets the guaranteed bound, so the maximum does too."""
    d, n = X.dimension, X.size
    if d < 3 or n < 2 * d:
        raise PreconditionError(f"need d >= 3 and |X| >= 2d, got d={d}, |X|={n}")
    basis = greedy_basis(X.points(), d)
    if len(basis) < d:
        raise DegenerateInput("X lies in a hyperplane through the origin")
    # rows of B^-1 are the coordinate functionals in the new basis (B has the e_i as columns)
    cols = [F3Vector.from_trits(e[k] for e in (b.entries for b in basis)) for k in range(d)]
    coord = inverse(cols)
    pts = X.points()
    best = None
    for i, j in itertools.combinations(range(d), 2):
        H = AffineHyperplane.from_equation(coord[i] - coord[j], 0)
        c = sum(1 for x in pts if H.normal.dot(x) == 0)
        if best is None or c > best[1]:
            best = (H, c, (i, j))
    H, c, pair = best
    return HeavyHyperplaneReport(H, c, lm_bound(n, d), tuple(basis), pair)


# ------------------------------------------------------------ aux1 witness


@dataclass(frozen=True)
class Ap1Witness:
    h1: AffineHyperplane
    h2: AffineHyperplane

    def certifies(self, X: SymmetricSet) -> bool:
        return (
            self.h1.offset != 0
            and self.h2.offset != 0
            and not self.h1.parallel(self.h2)
            and not any(self.h1.contains(x) and self.h2.contains(x) for x in X.points())
        )


def aux1_witness(X: SymmetricSet, h1: Optional[AffineHyperplane] = None) -> Ap1Witness:
    """Build a non-parallel pair of hyperplanes avoiding 0 whose intersection misses X.

    Requires an origin hyperplane ``h1`` holding at least |X| - 4d + 4 points
    (the best one is used if none is given).  The emptier of its two
    translates leaves at most 2d - 2 points, and an avoiding hyperplane for
    those plus 0 and a point of the opposite translate completes the pair.
    """
    d, n = X.dimension, X.size
    if d < 2:
        raise PreconditionError("non-parallel pairs need d >= 2")
    if h1 is None:
        h1, _ = best_origin_hyperplane(X)
    if h1.offset != 0 or h1.d != d:
        raise PreconditionError("h1 must be a hyperplane through the origin of F_3^d")
    pts = X.points()
    if sum(1 for x in pts if h1.contains(x)) < n - 4 * d + 4:
        raise PreconditionError("no origin hyperplane holds |X| - 4d + 4 points")
    t1, t2 = h1.translate(1), h1.translate(2)
    y1 = [x for x in pts if t1.contains(x)]
    y2 = [x for x in pts if t2.contains(x)]
    h1p, Y = (t1, y1) if len(y1) <= len(y2) else (t2, y2)
    x = min(p for p in points(d) if h1p.negated().contains(p))
    avoid = list(Y) + [F3Vector.zero(d), x]
    if not Y:
        # H'_1 itself avoids Y, 0 and x; block it so the result is non-parallel
        avoid.append(min(p for p in points(d) if h1p.contains(p)))
    try:
        h2 = find_avoiding_hyperplane(avoid, d)
    except Exception as exc:
        raise Exhausted(f"no hyperplane avoids {len(avoid)} points") from exc
    w = Ap1Witness(h1p, h2)
    if not w.certifies(X):
        raise Exhausted("constructed pair does not certify X")
    return w


# ----------------------------------------------------------------- phi map


def phi_map(X: SymmetricSet, representatives: Optional[Sequence[F3Vector]] = None) -> GeneratorBasis:
    """Image of the dual space under xi -> (xi(x_1), ..., xi(x_n))."""
    d = X.dimension
    reps = list(X.pairs if representatives is None else representatives)
    if sorted(r.canonical() for r in reps) != list(X.pairs):
        raise ValueError("representatives must list each antipodal pair of X once")
    if not X.spans():
        raise DegenerateInput("X lies in a hyperplane through the origin")
    rows = [F3Vector.from_trits(r.entries[k] for r in reps) for k in range(d)]
    return rref(rows)


def max_origin_count(X: SymmetricSet) -> int:
    return best_origin_hyperplane(X)[1]


def random_symmetric_set(rng, d: int, pairs: int, spanning: bool = False) -> SymmetricSet:
    """Uniform random symmetric set with the given number of antipodal pairs."""
    reps = projective_points(d)
    while True:
        X = SymmetricSet(d, tuple(rng.sample(reps, pairs)))
        if not spanning or X.spans():
            return X

"""Exact arithmetic and enumeration over the field with three elements.

Vectors are bitsliced: a length-n vector is stored as two n-bit integers,
``ones`` (bit i set iff entry i is 1) and ``twos`` (bit i set iff entry i is
2).  Negation swaps the planes, addition is a handful of bitwise operations
and the Hamming weight is one popcount, which is what the exhaustive searches
in the rest of the package lean on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionError, EmptySpan, ParseError, TooLarge

ENUMERATION_GUARD = 20

INVERSE = (None, 1, 2)


def _mask(n: int) -> int:
    return (1 << n) - 1


def add_planes(a1: int, a2: int, b1: int, b2: int, full: int) -> tuple[int, int]:
    """Entrywise sum of two bitsliced vectors, returned as (ones, twos)."""
    za = full & ~(a1 | a2)
    zb = full & ~(b1 | b2)
    s1 = (a1 & zb) | (za & b1) | (a2 & b2)
    s2 = (a2 & zb) | (za & b2) | (a1 & b1)
    return s1, s2


@dataclass(frozen=True)
class F3Vector:
    n: int
    ones: int
    twos: int

    def __post_init__(self):
        if self.n < 0:
            raise DimensionError("negative length")
        if self.ones & self.twos:
            raise ValueError("an entry cannot be both 1 and 2")
        if (self.ones | self.twos) >> self.n:
            raise ValueError("bits set beyond the vector length")

    @classmethod
    def from_trits(cls, trits: Iterable[int]) -> "F3Vector":
        ones = twos = 0
        n = 0
        for i, t in enumerate(trits):
            t = int(t)
            if t not in (0, 1, 2):
                raise ValueError(f"entry {t!r} is not a trit")
            if t == 1:
                ones |= 1 << i
            elif t == 2:
                twos |= 1 << i
            n = i + 1
        return cls(n, ones, twos)

    @classmethod
    def parse(cls, text: str) -> "F3Vector":
        text = text.strip()
        if not text or any(ch not in "012" for ch in text):
            raise ParseError(f"not a trit string: {text!r}")
        return cls.from_trits(int(ch) for ch in text)

    @classmethod
    def zero(cls, n: int) -> "F3Vector":
        return cls(n, 0, 0)

    @classmethod
    def unit(cls, n: int, i: int) -> "F3Vector":
        return cls(n, 1 << i, 0)

    @property
    def entries(self) -> tuple[int, ...]:
        o, t = self.ones, self.twos
        return tuple(1 if o >> i & 1 else 2 if t >> i & 1 else 0 for i in range(self.n))

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return "".join(map(str, self.entries))

    def __repr__(self):
        return f"F3Vector('{self}')"

    def __lt__(self, other: "F3Vector") -> bool:
        return self.entries < other.entries

    def __le__(self, other: "F3Vector") -> bool:
        return self.entries <= other.entries

    def _check(self, other: "F3Vector"):
        if self.n != other.n:
            raise DimensionError(f"length mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "F3Vector") -> "F3Vector":
        self._check(other)
        return F3Vector(self.n, *add_planes(self.ones, self.twos, other.ones, other.twos, _mask(self.n)))

    def __neg__(self) -> "F3Vector":
        return F3Vector(self.n, self.twos, self.ones)

    def __sub__(self, other: "F3Vector") -> "F3Vector":
        return self + (-other)

    def scale(self, c: int) -> "F3Vector":
        c %= 3
        if c == 0:
            return F3Vector.zero(self.n)
        return self if c == 1 else -self

    def dot(self, other: "F3Vector") -> int:
        self._check(other)
        same = (self.ones & other.ones).bit_count() + (self.twos & other.twos).bit_count()
        cross = (self.ones & other.twos).bit_count() + (self.twos & other.ones).bit_count()
        return (same + 2 * cross) % 3

    @property
    def support(self) -> int:
        return self.ones | self.twos

    def is_zero(self) -> bool:
        return not (self.ones | self.twos)

    def leading(self) -> int:
        """Value of the first nonzero entry (0 for the zero vector)."""
        s = self.support
        if not s:
            return 0
        low = s & -s
        return 1 if self.ones & low else 2

    def canonical(self) -> "F3Vector":
        """The representative of {v, -v} whose first nonzero entry is 1."""
        return -self if self.leading() == 2 else self


def negate(v: F3Vector) -> F3Vector:
    return -v


def weight(v: F3Vector) -> int:
    return v.support.bit_count()


# ---------------------------------------------------------------- matrices


def _rows_as_lists(rows: Sequence[F3Vector]) -> tuple[int, list[list[int]]]:
    if not rows:
        raise EmptySpan("no rows given")
    n = rows[0].n
    for r in rows:
        if r.n != n:
            raise DimensionError("rows have unequal lengths")
    if n < 1:
        raise DimensionError("rows must have length >= 1")
    return n, [list(r.entries) for r in rows]


def _eliminate(m: list[list[int]], ncols: int) -> list[int]:
    """In-place Gauss-Jordan elimination mod 3; returns the pivot columns."""
    pivots = []
    row = 0
    for col in range(ncols):
        pr = next((r for r in range(row, len(m)) if m[r][col]), None)
        if pr is None:
            continue
        m[row], m[pr] = m[pr], m[row]
        if m[row][col] == 2:
            m[row] = [(2 * x) % 3 for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % 3 for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return pivots


@dataclass(frozen=True)
class GeneratorBasis:
    """A full-rank generator matrix in reduced row-echelon form."""

    rows: tuple[F3Vector, ...]

    def __post_init__(self):
        if not self.rows:
            raise EmptySpan("a basis needs at least one row")
        n = self.rows[0].n
        prev = -1
        pivots = []
        for r in self.rows:
            if r.n != n:
                raise DimensionError("rows have unequal lengths")
            if r.is_zero():
                raise ValueError("zero row in basis")
            s = r.support
            p = (s & -s).bit_length() - 1
            if p <= prev or r.leading() != 1:
                raise ValueError("rows are not in reduced row-echelon form")
            pivots.append(p)
            prev = p
        for i, r in enumerate(self.rows):
            for j, p in enumerate(pivots):
                if i != j and r.support >> p & 1:
                    raise ValueError("pivot column is not cleared")

    @property
    def n(self) -> int:
        return self.rows[0].n

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple((r.support & -r.support).bit_length() - 1 for r in self.rows)

    def columns(self) -> list[F3Vector]:
        """The n columns of the matrix, each a vector of length rank."""
        ents = [r.entries for r in self.rows]
        return [F3Vector.from_trits(e[i] for e in ents) for i in range(self.n)]

    def __str__(self):
        return "\n".join(str(r) for r in self.rows)


def rref(matrix: Sequence[F3Vector]) -> GeneratorBasis:
    n, m = _rows_as_lists(list(matrix))
    pivots = _eliminate(m, n)
    if not pivots:
        raise EmptySpan("all rows are zero")
    return GeneratorBasis(tuple(F3Vector.from_trits(r) for r in m[: len(pivots)]))


def rank(vectors: Sequence[F3Vector]) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    n, m = _rows_as_lists(vectors)
    return len(_eliminate(m, n))


def inverse(matrix: Sequence[F3Vector]) -> list[F3Vector]:
    """Inverse of a square invertible matrix given by rows."""
    n, m = _rows_as_lists(list(matrix))
    if len(m) != n:
        raise DimensionError("matrix is not square")
    aug = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    pivots = _eliminate(aug, n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return [F3Vector.from_trits(row[n:]) for row in aug]


def _guard(d: int):
    if d > ENUMERATION_GUARD:
        raise TooLarge(f"3^{d} elements exceed the enumeration guard 3^{ENUMERATION_GUARD}")


def span_planes(rows: Sequence[F3Vector]) -> list[tuple[int, int]]:
    """All combinations of ``rows`` as (ones, twos) pairs.

    Ordered lexicographically by coefficient tuple, first row most significant.
    """
    _guard(len(rows))
    n = rows[0].n if rows else 0
    full = _mask(n)
    cur = [(0, 0)]
    for r in rows:
        g1, g2 = r.ones, r.twos
        nxt = []
        for a1, a2 in cur:
            nxt.append((a1, a2))
            nxt.append(add_planes(a1, a2, g1, g2, full))
            nxt.append(add_planes(a1, a2, g2, g1, full))
        cur = nxt
    return cur


def enumerate_subspace(basis: GeneratorBasis) -> list[F3Vector]:
    n = basis.n
    return [F3Vector(n, o, t) for o, t in span_planes(basis.rows)]


def min_weight(V: GeneratorBasis) -> int:
    return min((o | t).bit_count() for o, t in span_planes(V.rows)[1:])


# ------------------------------------------------------------- hyperplanes


@lru_cache(maxsize=None)
def canonical_normals(d: int) -> tuple[F3Vector, ...]:
    """Nonzero vectors with first nonzero entry 1.

    Grouped by the position of that leading 1, lexicographic within a group:
    for d = 2 the order is 10, 11, 12, 01.
    """
    out = []
    for lead in range(d):
        for tail in itertools.product(range(3), repeat=d - lead - 1):
            out.append(F3Vector.from_trits((0,) * lead + (1,) + tail))
    return tuple(out)


@dataclass(frozen=True)
class AffineHyperplane:
    normal: F3Vector
    offset: int

    def __post_init__(self):
        if self.normal.is_zero():
            raise ValueError("hyperplane normal must be nonzero")
        if self.normal.leading() != 1:
            raise ValueError("normal is not canonical; use AffineHyperplane.from_equation")
        if self.offset not in (0, 1, 2):
            raise ValueError("offset must be a trit")

    @classmethod
    def from_equation(cls, normal: F3Vector, offset: int) -> "AffineHyperplane":
        offset %= 3
        if normal.leading() == 2:
            return cls(-normal, (2 * offset) % 3)
        return cls(normal, offset)

    @classmethod
    def parse(cls, text: str) -> "AffineHyperplane":
        try:
            normal, offset = text.strip().split(";")
            return cls.from_equation(F3Vector.parse(normal), int(offset))
        except ValueError as exc:
            raise ParseError(f"not a hyperplane 'normal;offset': {text!r}") from exc

    @property
    def d(self) -> int:
        return self.normal.n

    @property
    def through_origin(self) -> bool:
        return self.offset == 0

    def contains(self, x: F3Vector) -> bool:
        return hyperplane_contains(self, x)

    def parallel(self, other: "AffineHyperplane") -> bool:
        return self.normal == other.normal

    def translate(self, offset: int) -> "AffineHyperplane":
        return AffineHyperplane(self.normal, offset % 3)

    def negated(self) -> "AffineHyperplane":
        """The hyperplane -H = {-x : x in H}."""
        return AffineHyperplane(self.normal, (2 * self.offset) % 3)

    def points(self) -> list[F3Vector]:
        return [p for p in points(self.d) if self.contains(p)]

    def __str__(self):
        return f"{self.normal};{self.offset}"


def hyperplane_contains(H: AffineHyperplane, x: F3Vector) -> bool:
    if H.normal.n != x.n:
        raise DimensionError(f"hyperplane in dimension {H.normal.n}, point of length {x.n}")
    return H.normal.dot(x) == H.offset


def enumerate_hyperplanes(d: int, through_origin: bool) -> list[AffineHyperplane]:
    """Hyperplanes of F_3^d, offset-major then in canonical normal order."""
    if not 1 <= d <= ENUMERATION_GUARD:
        raise TooLarge(f"dimension {d} outside 1..{ENUMERATION_GUARD}")
    offsets = (0,) if through_origin else (1, 2)
    return [AffineHyperplane(nv, c) for c in offsets for nv in canonical_normals(d)]


def all_hyperplanes(d: int) -> list[AffineHyperplane]:
    return enumerate_hyperplanes(d, True) + enumerate_hyperplanes(d, False)


# ------------------------------------------------------------------ points


@lru_cache(maxsize=None)
def points(d: int) -> tuple[F3Vector, ...]:
    """All 3^d points in lexicographic order; index = base-3 value, first entry most significant."""
    _guard(d)
    return tuple(F3Vector.from_trits(t) for t in itertools.product(range(3), repeat=d))


def point_index(v: F3Vector) -> int:
    idx = 0
    for e in v.entries:
        idx = 3 * idx + e
    return idx


@lru_cache(maxsize=None)
def hyperplane_point_masks(d: int) -> tuple[tuple[AffineHyperplane, int], ...]:
    """Every affine hyperplane (offset-major order) with its point-index bitmask."""
    pts = points(d)
    out = []
    for H in all_hyperplanes(d):
        m = 0
        for i, p in enumerate(pts):
            if H.normal.dot(p) == H.offset:
                m |= 1 << i
        out.append((H, m))
    return tuple(out)


# ------------------------------------------------------------ file format


def parse_vectors(text: str, *, source: str = "<text>") -> list[F3Vector]:
    """Parse one trit string per line; blank lines and '#' comments are skipped."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        bad = [ch for ch in s if ch not in "012"]
        if bad:
            raise ParseError(f"{source}:{lineno}: invalid character {bad[0]!r}")
        rows.append(F3Vector.parse(s))
    if rows and any(r.n != rows[0].n for r in rows):
        raise ParseError(f"{source}: rows have unequal lengths")
    return rows


def parse_generator_matrix(text: str, *, source: str = "<text>") -> GeneratorBasis:
    rows = parse_vectors(text, source=source)
    if not rows:
        raise ParseError(f"{source}: no rows")
    return rref(rows)


def format_vectors(vectors: Iterable[F3Vector]) -> str:
    return "".join(f"{v}\n" for v in vectors)

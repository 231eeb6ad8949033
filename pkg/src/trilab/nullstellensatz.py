"""Grid-sum coefficient formula over F_3 and hyperplanes avoiding small sets.

``cn_coefficient`` recovers the coefficient of x_1^{d_1}...x_n^{d_n} in a
polynomial of degree at most d_1 + ... + d_n from its values on a product
grid.  ``expand_product`` is the independent route: formal expansion of a
product of linear forms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import InvalidQuery, NotFound, PreconditionError, TooLarge
from .f3core import (
    INVERSE,
    AffineHyperplane,
    F3Vector,
    all_hyperplanes,
    hyperplane_point_masks,
    point_index,
)

MAX_FORMS = 12
MAX_VARIABLES = 8
AVOID_GUARD = 12
AF_INSTANCE_GUARD = 5


@dataclass(frozen=True)
class LinearForm:
    coefficients: F3Vector

    def __post_init__(self):
        if self.coefficients.is_zero():
            raise ValueError("linear form is identically zero")

    @classmethod
    def hyperplane_form(cls, x: F3Vector) -> "LinearForm":
        """<x, t> - t_{d+1} as a form in d + 1 variables."""
        return cls(F3Vector.from_trits(x.entries + (2,)))

    @property
    def variable_count(self) -> int:
        return self.coefficients.n

    def __call__(self, point: Sequence[int]) -> int:
        return sum(c * p for c, p in zip(self.coefficients.entries, point)) % 3


@dataclass(frozen=True)
class DensePolynomial:
    """Formal polynomial over F_3: exponent tuple -> nonzero coefficient."""

    variable_count: int
    terms: Mapping[tuple[int, ...], int]

    @classmethod
    def constant(cls, variable_count: int, c: int = 1) -> "DensePolynomial":
        c %= 3
        return cls(variable_count, {(0,) * variable_count: c} if c else {})

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exponents: Sequence[int]) -> int:
        return self.terms.get(tuple(exponents), 0)

    def __call__(self, point: Sequence[int]) -> int:
        total = 0
        for exps, c in self.terms.items():
            term = c
            for p, e in zip(point, exps):
                term *= pow(p, e, 3)
            total += term
        return total % 3

    def times_form(self, form: LinearForm) -> "DensePolynomial":
        out: dict[tuple[int, ...], int] = {}
        coeffs = form.coefficients.entries
        for exps, c in self.terms.items():
            for k, a in enumerate(coeffs):
                if a:
                    e = exps[:k] + (exps[k] + 1,) + exps[k + 1:]
                    out[e] = (out.get(e, 0) + c * a) % 3
        return DensePolynomial(self.variable_count, {e: c for e, c in out.items() if c})


def expand_product(forms: Sequence[LinearForm], variable_count: Optional[int] = None) -> DensePolynomial:
    forms = list(forms)
    if variable_count is None:
        variable_count = forms[0].variable_count if forms else 0
    if len(forms) > MAX_FORMS or variable_count > MAX_VARIABLES:
        raise TooLarge(f"at most {MAX_FORMS} forms in {MAX_VARIABLES} variables")
    if any(f.variable_count != variable_count for f in forms):
        raise ValueError("forms have different variable counts")
    P = DensePolynomial.constant(variable_count)
    for f in forms:
        P = P.times_form(f)
    return P


def product_evaluator(forms: Sequence[LinearForm]) -> Callable[[Sequence[int]], int]:
    forms = list(forms)

    def evaluate(point):
        v = 1
        for f in forms:
            v = v * f(point) % 3
            if not v:
                break
        return v

    return evaluate


@dataclass(frozen=True)
class CnQuery:
    degrees: tuple[int, ...]
    grids: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.degrees) != len(self.grids):
            raise InvalidQuery("one grid per variable is required")
        for d, U in zip(self.degrees, self.grids):
            if d < 0:
                raise InvalidQuery("degrees must be non-negative")
            if len(set(U)) != len(U) or any(u not in (0, 1, 2) for u in U):
                raise InvalidQuery(f"grid {U} must hold distinct elements of F_3")
            if len(U) != d + 1:
                raise InvalidQuery(f"grid {U} must have {d + 1} elements")


def grid_weight(U: Sequence[int], alpha: int) -> int:
    """D(U, alpha) = prod over c in U, c != alpha, of (alpha - c), in F_3."""
    v = 1
    for c in U:
        if c != alpha:
            v = v * (alpha - c) % 3
    return v


def _grid_terms(P, query: CnQuery):
    weights = [{a: INVERSE[grid_weight(U, a)] for a in U} for U in query.grids]
    for alpha in itertools.product(*query.grids):
        val = P(alpha)
        if val:
            for w, a in zip(weights, alpha):
                val = val * w[a] % 3
        yield alpha, val


def cn_coefficient(P: Callable[[Sequence[int]], int], query: CnQuery) -> int:
    """Coefficient of prod x_i^{d_i}, assuming deg P <= sum of the degrees."""
    if not isinstance(query, CnQuery):
        raise InvalidQuery("query must be a CnQuery")
    return sum(v for _, v in _grid_terms(P, query)) % 3


# --------------------------------------------------- avoiding hyperplanes


def find_avoiding_hyperplane(X: Iterable[F3Vector], d: Optional[int] = None) -> AffineHyperplane:
    """First affine hyperplane (offset-major, canonical normal order) missing X."""
    X = list(X)
    if d is None:
        if not X:
            raise ValueError("dimension needed for an empty set")
        d = X[0].n
    if d > AVOID_GUARD:
        raise TooLarge(f"d={d} exceeds the guard {AVOID_GUARD}")
    if d <= 8:
        mask = 0
        for x in X:
            mask |= 1 << point_index(x)
        H = avoiding_index(mask, d)
        if H is None:
            raise NotFound(f"every hyperplane of F_3^{d} meets the {len(set(X))} given points")
        return H
    for H in all_hyperplanes(d):
        if not any(H.normal.dot(x) == H.offset for x in X):
            return H
    raise NotFound(f"every hyperplane of F_3^{d} meets the {len(set(X))} given points")


def avoiding_index(point_mask: int, d: int) -> Optional[AffineHyperplane]:
    for H, m in hyperplane_point_masks(d):
        if not m & point_mask:
            return H
    return None


def verify_lemma_af(d: int, max_size: int) -> tuple[int, int]:
    """Check every subset of F_3^d with at most ``max_size`` points.

    Returns (sets checked, sets with no avoiding hyperplane).
    """
    masks = [m for _, m in hyperplane_point_masks(d)]
    N = 3**d
    checked = failed = 0
    for k in range(max_size + 1):
        for combo in itertools.combinations(range(N), k):
            pm = 0
            for i in combo:
                pm |= 1 << i
            checked += 1
            for m in masks:
                if not m & pm:
                    break
            else:
                failed += 1
    return checked, failed


@dataclass(frozen=True)
class AfProofInstance:
    coefficient: int
    origin_column_contribution: int
    nonzero_t_contribution: int
    expansion_coefficient: int
    p_at_zero: int
    p_at_last_unit: int


def af_proof_instance(X: Sequence[F3Vector]) -> AfProofInstance:
    """Grid-sum bookkeeping for P(t) = prod (<x, t> - t_{d+1}) with |X| = 2d.

    deg P = 2d < 2d + 1, so the coefficient of t_1^2...t_d^2 t_{d+1} is 0 and
    the t != 0 part of the grid sum must cancel the nonzero t = 0 part: some
    P(t, s) with t != 0 is nonzero, i.e. some hyperplane misses X.
    """
    X = list(X)
    if not X:
        raise PreconditionError("X must be nonempty")
    d = X[0].n
    if len(set(X)) != 2 * d or len(X) != 2 * d:
        raise PreconditionError(f"need exactly 2d = {2 * d} distinct points")
    if d > AF_INSTANCE_GUARD:
        raise PreconditionError(f"d={d} exceeds {AF_INSTANCE_GUARD}")
    forms = [LinearForm.hyperplane_form(x) for x in X]
    P = product_evaluator(forms)
    query = CnQuery((2,) * d + (1,), ((0, 1, 2),) * d + ((0, 1),))
    origin = other = 0
    for alpha, v in _grid_terms(P, query):
        if any(alpha[:d]):
            other += v
        else:
            origin += v
    C = (origin + other) % 3
    expansion = expand_product(forms).coefficient((2,) * d + (1,))
    zero = (0,) * (d + 1)
    return AfProofInstance(C, origin % 3, other % 3, expansion, P(zero), P(zero[:-1] + (1,)))

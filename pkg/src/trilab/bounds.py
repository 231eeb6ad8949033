"""Exact evaluation of the size and dimension inequalities for trifferent codes.

Verdicts are always decided with integers or ``Fraction``; floats are only
a rendering.  Irrational quantities (rational powers, logarithms of huge
binomials) go through mpmath at ``PRECISION`` bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import mpmath

from .errors import PreconditionError

PRECISION = 128

_mp = mpmath.mp.clone()
_mp.prec = PRECISION


@dataclass(frozen=True)
class RationalPower:
    """base ** exponent with rational base and exponent, kept symbolic."""

    base: Fraction
    exponent: Fraction

    def value(self):
        return _mp.power(_mp.mpf(self.base.numerator) / self.base.denominator,
                         _mp.mpf(self.exponent.numerator) / self.exponent.denominator)

    def __float__(self):
        return float(self.value())

    def exceeds(self, x: Fraction) -> bool:
        """Exact test x <= self, for x >= 0 and base >= 1."""
        x = Fraction(x)
        p, q = self.exponent.numerator, self.exponent.denominator
        if p < 0:
            raise ValueError("negative exponents are not supported")
        # x <= b^(p/q)  <=>  x^q <= b^p
        return x**q <= self.base**p

    def __str__(self):
        return f"({self.base})^({self.exponent})"


Exact = Union[int, Fraction, RationalPower]


def _exact_str(v) -> str:
    if v is None:
        return ""
    return str(v)


def _decimal(v) -> str:
    if v is None:
        return ""
    if isinstance(v, RationalPower):
        return mpmath.nstr(v.value(), 17)
    if isinstance(v, int) and v.bit_length() > 1000:
        return mpmath.nstr(_mp.mpf(v), 17)
    return repr(float(v))


@dataclass(frozen=True)
class BoundReport:
    name: str
    inputs: dict
    lhs: Optional[Exact]
    rhs: Exact
    verdict: Optional[bool] = None
    note: str = ""

    @property
    def float_view(self) -> str:
        return _decimal(self.rhs if self.lhs is None else self.lhs)

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "inputs": ";".join(f"{k}={v}" for k, v in self.inputs.items()),
            "lhs_exact": _exact_str(self.lhs),
            "lhs": _decimal(self.lhs),
            "rhs_exact": _exact_str(self.rhs),
            "rhs": _decimal(self.rhs),
            "verdict": {True: "holds", False: "fails", None: "n/a"}[self.verdict],
        }


def korner_bound(k: int, n: int, size: Optional[int] = None) -> BoundReport:
    """(k-1) * (k/(k-1))^n; with ``size`` given, checks size <= bound."""
    if k < 3 or n < 1:
        raise PreconditionError("need k >= 3 and n >= 1")
    value = (k - 1) * Fraction(k, k - 1) ** n
    verdict = None if size is None else size <= value
    return BoundReport("korner", {"k": k, "n": n}, size, value, verdict)


def fk_exponent(k: int) -> Fraction:
    return Fraction(math.factorial(k), k ** (k - 1))


def fk_bound(k: int, n: int = 1, size: Optional[int] = None) -> BoundReport:
    """(2^(k!/k^(k-1)))^n."""
    if k < 3:
        raise PreconditionError("need k >= 3")
    value = RationalPower(Fraction(2), fk_exponent(k) * n)
    verdict = None if size is None else value.exceeds(Fraction(size))
    return BoundReport("fredman_komlos", {"k": k, "n": n}, size, value, verdict)


def fk_base(k: int) -> float:
    return float(RationalPower(Fraction(2), fk_exponent(k)))


def dim_bound_lin(n: int) -> Fraction:
    if n < 1:
        raise PreconditionError("need n >= 1")
    return Fraction(n + 11, 4)


def f_lower_bound(d: int) -> int:
    if d < 1:
        raise PreconditionError("need d >= 1")
    return 8 * d - 22


def m_lower_bound_lm(n: int, d: int) -> Fraction:
    if d < 3 or n < 2 * d:
        raise PreconditionError(f"need d >= 3 and n >= 2d, got n={n}, d={d}")
    return Fraction(n + 4 * d, 3) - 3 - Fraction(n, d)


def packing_lhs(n: int, k: int) -> int:
    return math.comb(n, k) * 2**k if k >= 0 else 0


def packing_check(n: int, d: int, k: int) -> BoundReport:
    """binom(n, k) 2^k <= 3^(n-d): radius-k balls around codewords are disjoint."""
    if k < 0 or not 0 <= d <= n:
        raise PreconditionError("need k >= 0 and 0 <= d <= n")
    lhs, rhs = packing_lhs(n, k), 3 ** (n - d)
    return BoundReport("packing", {"n": n, "d": d, "k": k}, lhs, rhs, lhs <= rhs)


def _mb_holds(n: int, d: int, m: int) -> bool:
    k = (2 * n - m - 1) // 4
    return packing_lhs(n, k) <= 3 ** (n - d)


def m_lower_bound_mb(n2: int, d: int) -> int:
    """Least m in [0, n2] for which the packing inequality with
    k = floor((2n - m - 1)/4) holds, n = n2/2.  Any size-n2 set satisfies the
    inequality at its own m, so this lower-bounds m(n2, d)."""
    if n2 % 2 or d < 1 or n2 // 2 < d:
        raise PreconditionError(f"need n2 = 2n with n >= d >= 1, got n2={n2}, d={d}")
    n = n2 // 2
    # the left side shrinks as m grows (k <= (2n-1)/4 keeps binom(n,k)2^k increasing in k)
    lo, hi = 0, n2
    if _mb_holds(n, d, lo):
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _mb_holds(n, d, mid):
            hi = mid
        else:
            lo = mid
    return hi


def m_lower_bound_mb_hull(n2: int, d: int) -> int:
    """Running maximum of ``m_lower_bound_mb`` over even sizes 2d..n2.

    The raw bound dips by 2 at some sizes (floor effects in k); since m(n, d)
    is nondecreasing in n, the running maximum is still a lower bound.
    """
    if n2 % 2 or d < 1 or n2 // 2 < d:
        raise PreconditionError(f"need n2 = 2n with n >= d >= 1, got n2={n2}, d={d}")
    return max(m_lower_bound_mb(s, d) for s in range(2 * d, n2 + 1, 2))


def lm_mb_crossover(d: int, stop: Optional[int] = None) -> Optional[Fraction]:
    """Least even n >= 2d with m_lower_bound_lm(n, d) > m_lower_bound_mb(n, d), as n/d."""
    stop = stop or 20 * d
    for n in range(2 * d, stop + 1, 2):
        if m_lower_bound_lm(n, d) > m_lower_bound_mb(n, d):
            return Fraction(n, d)
    return None


def asymptotic_rate(d: int) -> float:
    """(binom(2d, floor(d/3)) * 2^floor(d/3))^(1/d)."""
    if d < 3:
        raise PreconditionError("need d >= 3")
    k = d // 3
    big = math.comb(2 * d, k) * 2**k
    return float(_mp.exp(_mp.log(_mp.mpf(big)) / d))


# --------------------------------------------------------- tech arithmetic


def _log_gbinom(a, b):
    """log of the real binomial coefficient C(a, b) via log-gamma."""
    return _mp.loggamma(a + 1) - _mp.loggamma(b + 1) - _mp.loggamma(a - b + 1)


@dataclass(frozen=True)
class TechEndpoint:
    gamma: Fraction
    m: Fraction
    n_prime: Fraction
    m_prime: Fraction
    lhs_exponent: float
    rhs_exponent: float
    integer_variants: tuple = ()


@dataclass(frozen=True)
class TechReport:
    alpha: Fraction
    d: int
    gamma_window: tuple[Fraction, Fraction]
    n_prime: Fraction
    m_prime_floor: Fraction
    lhs_exponent: float
    rhs_exponent: float
    endpoints: tuple[TechEndpoint, ...] = field(default=())
    recomputed_gamma_window: tuple[Fraction, Fraction] = ()

    @property
    def gap(self) -> float:
        return self.lhs_exponent - self.rhs_exponent

    @property
    def contradiction(self) -> bool:
        return self.lhs_exponent > self.rhs_exponent

    def to_records(self) -> list[dict]:
        rows = []
        for e in self.endpoints:
            rows.append({
                "alpha_exact": str(self.alpha),
                "alpha": repr(float(self.alpha)),
                "d": self.d,
                "gamma_exact": str(e.gamma),
                "gamma": repr(float(e.gamma)),
                "m_exact": str(e.m),
                "m": repr(float(e.m)),
                "n_prime_exact": str(e.n_prime),
                "m_prime_exact": str(e.m_prime),
                "lhs_exponent": repr(e.lhs_exponent),
                "rhs_exponent": repr(e.rhs_exponent),
                "contradiction": "yes" if e.lhs_exponent > e.rhs_exponent else "no",
            })
        return rows


def _endpoint(alpha: Fraction, d: int, gamma: Fraction) -> TechEndpoint:
    n = (4 + alpha) * d
    m = (4 + gamma) * d
    x = (2 * n - m) / 12
    half = m / 2
    if x < 0 or x > half:
        lhs = -_mp.inf
    else:
        lhs = (_log_gbinom(_mp.mpf(half.numerator) / half.denominator,
                           _mp.mpf(x.numerator) / x.denominator)
               + _mp.mpf(x.numerator) / x.denominator * _mp.log(2)) / d
    rhs = (_mp.mpf((half - d).numerator) / (half - d).denominator) * _mp.log(3) / d
    variants = []
    for mi in sorted({math.floor(m), math.ceil(m)}):
        xi = Fraction(2 * n - mi, 12)
        for xk in sorted({math.floor(xi), math.ceil(xi)}):
            top = [math.floor(Fraction(mi, 2)), math.ceil(Fraction(mi, 2))]
            for t in sorted(set(top)):
                if 0 <= xk <= t:
                    left = math.comb(t, xk) * 2**xk
                    variants.append((mi, t, xk, float(_mp.log(_mp.mpf(left)) / d)))
    return TechEndpoint(
        gamma=gamma,
        m=m,
        n_prime=(m - 1) / 2,
        m_prime=(4 * m - 2 * n) / 3,
        lhs_exponent=float(lhs),
        rhs_exponent=float(rhs),
        integer_variants=tuple(variants),
    )


def tech_gap_analysis(alpha, d: int) -> TechReport:
    """Both sides of the final binomial inequality, per-d logarithms, at the
    two ends of the admissible window for gamma = m/d - 4.

    The left exponent is the smaller of the two endpoint values and the right
    exponent the larger, so ``contradiction`` means left > right at both ends.
    """
    alpha = Fraction(alpha) if not isinstance(alpha, float) else Fraction(str(alpha))
    if not 0 <= alpha <= 1 or d < 10:
        raise PreconditionError("need 0 <= alpha <= 1 and d >= 10")
    window = (Fraction(2, 3) * alpha - Fraction(5, d), 8 * alpha + Fraction(3, d))
    recomputed = (Fraction(2, 3) * alpha - Fraction(13, d), 2 * alpha + Fraction(3, d))
    ends = tuple(_endpoint(alpha, d, g) for g in window)
    upper = ends[1]
    return TechReport(
        alpha=alpha,
        d=d,
        gamma_window=window,
        n_prime=upper.n_prime,
        m_prime_floor=upper.m_prime,
        lhs_exponent=min(e.lhs_exponent for e in ends),
        rhs_exponent=max(e.rhs_exponent for e in ends),
        endpoints=ends,
        recomputed_gamma_window=recomputed,
    )


def tech_crossover_alpha(d: int, tol: float = 1e-4, hi: Fraction = Fraction(1, 2)) -> Fraction:
    """Bisect for the alpha where the left exponent stops exceeding the right one."""
    lo = Fraction(0)
    if not tech_gap_analysis(lo, d).contradiction:
        raise PreconditionError("no contradiction even at alpha = 0")
    if tech_gap_analysis(hi, d).contradiction:
        return hi
    while hi - lo > Fraction(str(tol)):
        mid = (lo + hi) / 2
        if tech_gap_analysis(mid, d).contradiction:
            lo = mid
        else:
            hi = mid
    return lo

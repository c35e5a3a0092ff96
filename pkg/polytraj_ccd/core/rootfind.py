"""
Root Finding - closed-form real roots of polynomials up to degree 4

This module is responsible for:
1. Detecting the effective degree of a polynomial (relative threshold on the
   leading coefficients) and cascading quartic -> cubic -> quadratic -> linear
2. Closed-form roots: Ferrari (quartic, via its resolvent cubic),
   Cardano / trigonometric form (cubic), sign-aware quadratic formula
3. Newton polishing of every closed-form root against the original polynomial
4. Filtering to an interval, sorting and de-duplicating

The distance-rate polynomial of the collision checker is at most quartic, so
no iterative root finder is needed.
"""

import cmath
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import DegeneratePolynomialError, InvalidArgumentError

MAX_DEGREE = 4

# |c_k| <= DEGREE_DROP_RTOL * max|c_i| drops the degree by one
DEGREE_DROP_RTOL = 1e-12
# |imag| <= IMAG_RTOL * (1 + |real|) counts as a real root
IMAG_RTOL = 1e-9
# A double root splits into a conjugate pair whose imaginary part grows like
# sqrt(eps), so IMAG_RTOL alone would drop tangencies. A pair with
# IMAG_RTOL < |imag| <= TANGENCY_IMAG_RTOL * (1 + |real|) is kept only when
# |poly(real)| is within RealPolynomial.residual_bound; pairs failing either
# test are discarded as genuinely complex.
TANGENCY_IMAG_RTOL = 1e-4
# roots closer than this (s) are merged
DEDUP_TOL = 1e-9
NEWTON_ITERATIONS = 2


@dataclass(frozen=True)
class RealPolynomial:
    """
    Real polynomial c0 + c1 t + c2 t^2 + c3 t^3 + c4 t^4

    `coefficients` are stored in ascending order and padded to five entries.
    """
    coefficients: Tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        if len(coeffs) > MAX_DEGREE + 1:
            raise InvalidArgumentError(f"RealPolynomial supports degree <= {MAX_DEGREE}, got {len(coeffs) - 1}")
        if not all(math.isfinite(c) for c in coeffs):
            raise InvalidArgumentError(f"Polynomial coefficients must be finite: {coeffs}")
        coeffs = coeffs + (0.0,) * (MAX_DEGREE + 1 - len(coeffs))
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_descending(cls, *coefficients: float) -> "RealPolynomial":
        """
        Build from highest-degree-first coefficients, e.g. (1, 0, 0, 0, -1) for t^4 - 1
        """
        return cls(tuple(reversed(coefficients)))

    def __call__(self, t: float) -> float:
        return _horner(self.coefficients, t)

    @property
    def scale(self) -> float:
        return max(abs(c) for c in self.coefficients)

    def residual_bound(self, lo: float, hi: float) -> float:
        """
        Largest |poly(t)| accepted for a reported root on [lo, hi]
        """
        reach = max(1.0, max(abs(lo), abs(hi)) ** 4)
        return 1e-6 * (1.0 + self.scale) * reach


def _horner(coeffs: Sequence[float], t: float) -> float:
    value = 0.0
    for c in reversed(coeffs):
        value = value * t + c
    return value


def _horner_with_derivative(coeffs: Sequence[float], t: float) -> Tuple[float, float]:
    value = 0.0
    slope = 0.0
    for c in reversed(coeffs):
        slope = slope * t + value
        value = value * t + c
    return value, slope


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _polish(coeffs: Sequence[float], t: float) -> float:
    """
    Newton steps on the original polynomial; a step is kept only if it
    does not increase the residual
    """
    for _ in range(NEWTON_ITERATIONS):
        value, slope = _horner_with_derivative(coeffs, t)
        if value == 0.0 or slope == 0.0:
            break
        candidate = t - value / slope
        if not math.isfinite(candidate) or abs(_horner(coeffs, candidate)) > abs(value):
            break
        t = candidate
    return t


def solve_quadratic(a: float, b: float, c: float) -> List[complex]:
    """
    Roots of a t^2 + b t + c (a != 0), avoiding cancellation for real roots

    Returns:
        List[complex]: Both roots
    """
    disc = b * b - 4.0 * a * c
    if disc >= 0.0:
        q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
        if q == 0.0:
            return [0j, 0j]
        return [complex(q / a), complex(c / q)]
    real = -b / (2.0 * a)
    imag = math.sqrt(-disc) / (2.0 * abs(a))
    return [complex(real, imag), complex(real, -imag)]


def solve_cubic(a: float, b: float, c: float, d: float) -> List[complex]:
    """
    Roots of a t^3 + b t^2 + c t + d (a != 0)

    Three distinct real roots use the trigonometric form; otherwise Cardano's
    formula gives one real root and a (possibly degenerate) complex pair.
    """
    B, C, D = b / a, c / a, d / a
    shift = B / 3.0
    p = C - B * B / 3.0
    q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D

    if p == 0.0 and q == 0.0:
        return [complex(-shift)] * 3

    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc < 0.0:
        # p < 0 here
        radius = 2.0 * math.sqrt(-p / 3.0)
        arg = (3.0 * q / (2.0 * p)) * math.sqrt(-3.0 / p)
        theta = math.acos(max(-1.0, min(1.0, arg))) / 3.0
        return [
            complex(radius * math.cos(theta - 2.0 * math.pi * k / 3.0) - shift)
            for k in range(3)
        ]

    half_q = -q / 2.0
    s = half_q + math.copysign(math.sqrt(disc), half_q)
    u = _cbrt(s)
    v = -p / (3.0 * u) if u != 0.0 else 0.0
    real = -(u + v) / 2.0 - shift
    imag = (u - v) * math.sqrt(3.0) / 2.0
    return [complex(u + v - shift), complex(real, imag), complex(real, -imag)]


def solve_quartic(a: float, b: float, c: float, d: float, e: float) -> List[complex]:
    """
    Roots of a t^4 + b t^3 + c t^2 + d t + e (a != 0) by Ferrari's method

    The depressed quartic y^4 + p y^2 + q y + r is split into two quadratics
    using the largest real root m of the resolvent cubic
    8 m^3 + 8 p m^2 + (2 p^2 - 8 r) m - q^2 = 0.
    """
    A, B, C, D = b / a, c / a, d / a, e / a
    shift = A / 4.0
    A2 = A * A
    p = B - 3.0 * A2 / 8.0
    q = C - A * B / 2.0 + A2 * A / 8.0
    r = D - A * C / 4.0 + A2 * B / 16.0 - 3.0 * A2 * A2 / 256.0

    biquadratic_tol = 1e-14 * max(1.0, abs(p) ** 1.5, abs(r) ** 0.75)
    m = 0.0
    if abs(q) > biquadratic_tol:
        resolvent = (-q * q, 2.0 * p * p - 8.0 * r, 8.0 * p, 8.0)
        candidates = [
            z.real for z in solve_cubic(8.0, 8.0 * p, 2.0 * p * p - 8.0 * r, -q * q)
            if abs(z.imag) <= IMAG_RTOL * (1.0 + abs(z.real))
        ]
        m = _polish(resolvent, max(candidates)) if candidates else 0.0

    if m <= 0.0:
        ys = []
        for z in solve_quadratic(1.0, p, r):
            w = cmath.sqrt(z)
            ys.extend([w, -w])
    else:
        s = math.sqrt(2.0 * m)
        half = p / 2.0 + m
        ys = solve_quadratic(1.0, -s, half + q / (2.0 * s)) + solve_quadratic(1.0, s, half - q / (2.0 * s))

    return [y - shift for y in ys]


def effective_degree(coefficients: Sequence[float]) -> int:
    """
    Degree after dropping leading coefficients that are negligible relative
    to the largest coefficient

    Raises:
        DegeneratePolynomialError: all coefficients are zero
    """
    scale = max(abs(c) for c in coefficients)
    if scale == 0.0:
        raise DegeneratePolynomialError("degenerate polynomial")
    degree = len(coefficients) - 1
    while degree > 0 and abs(coefficients[degree]) <= DEGREE_DROP_RTOL * scale:
        degree -= 1
    return degree


def _closed_form_roots(coeffs: Sequence[float]) -> List[complex]:
    degree = len(coeffs) - 1
    if degree == 1:
        return [complex(-coeffs[0] / coeffs[1])]
    if degree == 2:
        return solve_quadratic(coeffs[2], coeffs[1], coeffs[0])
    if degree == 3:
        return solve_cubic(coeffs[3], coeffs[2], coeffs[1], coeffs[0])
    return solve_quartic(coeffs[4], coeffs[3], coeffs[2], coeffs[1], coeffs[0])


def real_roots_in_interval(poly: RealPolynomial, lo: float, hi: float) -> List[float]:
    """
    All real roots of `poly` in [lo, hi]

    Args:
        poly: Polynomial of degree <= 4
        lo: Interval start
        hi: Interval end (lo <= hi)

    Returns:
        List[float]: Ascending roots, de-duplicated within DEDUP_TOL

    Raises:
        DegeneratePolynomialError: poly is identically zero
        InvalidArgumentError: lo > hi
    """
    if lo > hi:
        raise InvalidArgumentError(f"Empty interval [{lo}, {hi}]")

    degree = effective_degree(poly.coefficients)
    if degree == 0:
        return []

    coeffs = poly.coefficients[: degree + 1]
    bound = poly.residual_bound(lo, hi)

    found = []
    for z in _closed_form_roots(coeffs):
        t = z.real
        imag = abs(z.imag)
        if imag > IMAG_RTOL * (1.0 + abs(t)):
            # near-tangent pair: accept the real part only if it is numerically a root
            if imag > TANGENCY_IMAG_RTOL * (1.0 + abs(t)) or abs(_horner(coeffs, t)) > bound:
                continue
        t = _polish(coeffs, t)
        if t < lo - DEDUP_TOL or t > hi + DEDUP_TOL:
            continue
        found.append(min(max(t, lo), hi))

    found.sort()
    roots: List[float] = []
    for t in found:
        if roots and t - roots[-1] <= DEDUP_TOL:
            continue
        roots.append(t)
    return roots


__all__ = [
    "RealPolynomial",
    "effective_degree",
    "real_roots_in_interval",
    "solve_quadratic",
    "solve_cubic",
    "solve_quartic",
]

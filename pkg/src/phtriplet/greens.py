"""Exact polynomial calculus: the independent integration-by-parts oracle.

Test functions are vector polynomials in monomial form. Differentiation and
L² inner products are exact up to floating-point rounding, so the two sides
of a Green identity can be compared without quadrature error.

Inner products are linear in the first argument: ⟨u, v⟩ = ∫ v(ξ)^H u(ξ) dξ.
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DimensionMismatch, IntervalMismatch
from .opspec import Interval
from .triplet import TraceLayout, trace_of_polynomial

MAX_DEGREE = 32


class VectorPolynomial:
    """n component polynomials in ξ on an interval.

    ``coeffs[i, j]`` is the coefficient of ξ^j in component i.
    """

    # let ndarray @ VectorPolynomial fall through to __rmatmul__
    __array_ufunc__ = None

    def __init__(self, coeffs, interval=None):
        if isinstance(coeffs, (list, tuple)) and coeffs and np.ndim(coeffs[0]) == 1:
            # ragged per-component lists: pad with zeros
            rows = [np.asarray(r, dtype=complex) for r in coeffs]
            width = max(len(r) for r in rows)
            coeffs = [np.pad(r, (0, width - len(r))) for r in rows]
        c = np.atleast_2d(np.asarray(coeffs, dtype=complex))
        if c.ndim != 2:
            raise DimensionMismatch("coefficients must be an (n, degree+1) array")
        if c.shape[1] == 0:
            c = np.zeros((c.shape[0], 1), dtype=complex)
        if not np.all(np.isfinite(c)):
            raise ValueError("non-finite polynomial coefficient")
        self.coeffs = c
        self.interval = interval if interval is not None else Interval(0.0, 1.0)

    @classmethod
    def zeros(cls, n, interval=None):
        return cls(np.zeros((n, 1)), interval)

    @classmethod
    def monomial(cls, power, component=0, n=1, coeff=1.0, interval=None):
        c = np.zeros((n, power + 1), dtype=complex)
        c[component, power] = coeff
        return cls(c, interval)

    @property
    def n(self):
        return self.coeffs.shape[0]

    @property
    def degree_bound(self):
        return self.coeffs.shape[1] - 1

    def derivative(self, order=1):
        return poly_derivative(self, order)

    def __call__(self, xi):
        return np.array([npoly.polyval(xi, c) for c in self.coeffs])

    def __add__(self, other):
        _check_compatible(self, other)
        width = max(self.coeffs.shape[1], other.coeffs.shape[1])
        out = np.zeros((self.n, width), dtype=complex)
        out[:, : self.coeffs.shape[1]] += self.coeffs
        out[:, : other.coeffs.shape[1]] += other.coeffs
        return VectorPolynomial(out, self.interval)

    def __rmatmul__(self, matrix):
        """Constant matrix times vector polynomial."""
        m = np.asarray(matrix, dtype=complex)
        if m.shape[1] != self.n:
            raise DimensionMismatch(f"matrix {m.shape} cannot act on {self.n} components")
        return VectorPolynomial(m @ self.coeffs, self.interval)

    def __repr__(self):
        return f"VectorPolynomial(n={self.n}, degree<={self.degree_bound}, interval={self.interval})"


def _check_compatible(u, v):
    if u.n != v.n:
        raise DimensionMismatch(f"component counts differ ({u.n} vs {v.n})")
    if u.interval != v.interval:
        raise IntervalMismatch(f"{u.interval} vs {v.interval}")


def poly_derivative(x, order=1):
    if order < 0:
        raise ValueError("derivative order must be ≥ 0")
    c = x.coeffs
    for _ in range(order):
        if c.shape[1] == 1:
            c = np.zeros_like(c)
            break
        c = c[:, 1:] * np.arange(1, c.shape[1])
    return VectorPolynomial(c, x.interval)


def _linear_combination(mats, derivatives, n, interval):
    out = VectorPolynomial.zeros(n, interval)
    for mat, dx in zip(mats, derivatives):
        if np.any(mat):
            out = out + (mat @ dx)
    return out


def apply_even_order_pair(pair, x):
    """(𝒫x, 𝒮x) with 𝒫x = Σ_k P_k x^{(2k)} and 𝒮x = Σ_l S_l x^{(2l)}."""
    if x.n != pair.n:
        raise DimensionMismatch(f"operator has n={pair.n}, polynomial has {x.n} components")
    ders = [poly_derivative(x, 2 * k) for k in range(pair.order + 1)]
    px = _linear_combination(pair.p_coeffs, ders, x.n, x.interval)
    sx = _linear_combination(pair.s_coeffs, ders, x.n, x.interval)
    return px, sx


def apply_skew(j, x):
    """𝒥x = Σ_k J_k x^{(k)}."""
    if x.n != j.n:
        raise DimensionMismatch(f"operator has n={j.n}, polynomial has {x.n} components")
    ders = [poly_derivative(x, k) for k in range(j.order + 1)]
    return _linear_combination(j.j_coeffs, ders, x.n, x.interval)


def _definite_integral(c, interval):
    powers = np.arange(1, len(c) + 1)
    return np.sum(c * (interval.b ** powers - interval.a ** powers) / powers)


def l2_inner_product(u, v):
    """⟨u, v⟩ = ∫_a^b v(ξ)^H u(ξ) dξ, integrated monomial by monomial."""
    _check_compatible(u, v)
    total = 0j
    for ui, vi in zip(u.coeffs, v.coeffs):
        total += _definite_integral(npoly.polymul(np.conj(vi), ui), u.interval)
    return complex(total)


def random_vector_polynomial(n, max_degree, interval, rng, exact_degree=False):
    """Coefficients uniform in the unit square of ℂ; degree uniform in [0, max_degree]."""
    if max_degree > MAX_DEGREE:
        raise ValueError(f"degree cap is {MAX_DEGREE}")
    deg = max_degree if exact_degree else int(rng.integers(0, max_degree + 1))
    c = rng.random((n, deg + 1)) + 1j * rng.random((n, deg + 1))
    return VectorPolynomial(c, interval)


# -- Green identities --------------------------------------------------------


@dataclass(frozen=True)
class GreenTerms:
    """Both sides of one Green identity evaluated on a pair (x, y)."""

    lhs: complex
    trace_form: complex
    map_form: complex
    scale: float

    @property
    def residual(self):
        return max(abs(self.lhs - self.trace_form), abs(self.lhs - self.map_form))

    @property
    def relative_residual(self):
        return self.residual / self.scale


def _blockdiag_form(mat, gx, gy):
    half = mat.shape[0]
    return complex(gy[:half].conj() @ mat @ gx[:half] - gy[half:].conj() @ mat @ gx[half:])


def range_green_terms(pair, triplet, x, y):
    px, sx = apply_even_order_pair(pair, x)
    py, sy = apply_even_order_pair(pair, y)
    first = l2_inner_product(sx, py)
    second = l2_inner_product(px, sy)
    layout = TraceLayout(pair.n, 2 * pair.order)
    gx = trace_of_polynomial(x, layout)
    gy = trace_of_polynomial(y, layout)
    trace_form = _blockdiag_form(triplet.a_matrix, gx, gy)
    g0x, g1x = triplet.gamma0_matrix @ gx, triplet.gamma1_matrix @ gx
    g0y, g1y = triplet.gamma0_matrix @ gy, triplet.gamma1_matrix @ gy
    map_form = complex(g0y.conj() @ g1x - g1y.conj() @ g0x)
    return GreenTerms(first - second, trace_form, map_form, max(1.0, abs(first), abs(second)))


def green_residual_range(pair, triplet, x, y):
    """|G(x,y) − boundary form| with G(x,y) = ⟨𝒮x, 𝒫y⟩ − ⟨𝒫x, 𝒮y⟩.

    Both the trace form γ(y)^H·diag(A, −A)·γ(x) and the boundary-map form
    ⟨Γ₁x, Γ₀y⟩ − ⟨Γ₀x, Γ₁y⟩ are checked; the larger residual is returned.
    """
    return range_green_terms(pair, triplet, x, y).residual


def skew_green_terms(j, triplet, x, y):
    jx, jy = apply_skew(j, x), apply_skew(j, y)
    first = l2_inner_product(jx, y)
    second = l2_inner_product(x, jy)
    layout = TraceLayout(j.n, j.order)
    gx = trace_of_polynomial(x, layout)
    gy = trace_of_polynomial(y, layout)
    trace_form = _blockdiag_form(triplet.q_matrix, gx, gy)
    g0x, g1x = triplet.gamma0_matrix @ gx, triplet.gamma1_matrix @ gx
    g0y, g1y = triplet.gamma0_matrix @ gy, triplet.gamma1_matrix @ gy
    map_form = complex(g0y.conj() @ g1x + g1y.conj() @ g0x)
    return GreenTerms(first + second, trace_form, map_form, max(1.0, abs(first), abs(second)))


def green_residual_skew(j, triplet, x, y):
    """|⟨𝒥x, y⟩ + ⟨x, 𝒥y⟩ − boundary form|, max over trace and map forms."""
    return skew_green_terms(j, triplet, x, y).residual


@dataclass(frozen=True)
class GreenStatistics:
    count: int
    max_residual: float
    max_relative_residual: float
    seed: int
    max_degree: int

    def as_dict(self):
        return {
            "count": self.count,
            "max_residual": self.max_residual,
            "max_relative_residual": self.max_relative_residual,
            "seed": self.seed,
            "max_degree": self.max_degree,
        }


def _run_suite(terms_fn, op, triplet, n, interval, samples, seed, max_degree):
    rng = np.random.default_rng(seed)
    worst_abs = worst_rel = 0.0
    for _ in range(samples):
        x = random_vector_polynomial(n, max_degree, interval, rng)
        y = random_vector_polynomial(n, max_degree, interval, rng)
        t = terms_fn(op, triplet, x, y)
        worst_abs = max(worst_abs, t.residual)
        worst_rel = max(worst_rel, t.relative_residual)
    return GreenStatistics(samples, worst_abs, worst_rel, seed, max_degree)


def range_green_suite(pair, triplet, samples=100, seed=0, max_degree=None):
    """Residual statistics over seeded random polynomial pairs (degree ≤ 2N+4 by default)."""
    deg = 2 * pair.order + 4 if max_degree is None else max_degree
    return _run_suite(range_green_terms, pair, triplet, pair.n, pair.interval, samples, seed, deg)


def skew_green_suite(j, triplet, samples=100, seed=0, max_degree=None):
    deg = j.order + 4 if max_degree is None else max_degree
    return _run_suite(skew_green_terms, j, triplet, j.n, j.interval, samples, seed, deg)

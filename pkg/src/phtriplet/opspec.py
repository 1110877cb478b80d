"""Coefficient data for the operator pair (𝒫, 𝒮) and the skew operator 𝒥.

𝒫 = Σ_k dᵏ P_k dᵏ and 𝒮 = Σ_l dˡ S_l dˡ on an interval (a, b); for constant
coefficients these collapse to Σ_k P_k d²ᵏ. 𝒥 = Σ_k J_k dᵏ.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import AssumptionViolated, DegeneratePencil, DimensionMismatch
from .numkernel import as_matrix, spectral_norm


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise AssumptionViolated("interval endpoints must be finite")
        if not self.a < self.b:
            raise AssumptionViolated(f"interval needs a < b, got ({self.a}, {self.b})")

    @property
    def length(self):
        return self.b - self.a


def _coefficient_stack(coeffs, name, n=None):
    mats = [as_matrix(c, f"{name}[{i}]") for i, c in enumerate(coeffs)]
    if not mats:
        raise DimensionMismatch(f"{name} needs at least one coefficient matrix")
    n = mats[0].shape[0] if n is None else n
    for i, m in enumerate(mats):
        if m.shape != (n, n):
            raise DimensionMismatch(f"{name}[{i}] has shape {m.shape}, expected {(n, n)}")
    stack = np.stack(mats)
    stack.setflags(write=False)
    return stack


@dataclass(frozen=True, eq=False)
class EvenOrderOperatorPair:
    """Coefficients P_0..P_N and S_0..S_N (dense, zeros stored explicitly).

    ``require_nonzero=False`` admits an all-zero 𝒫 or 𝒮; such pairs are only
    meaningful for the coercivity scan, which then reports failure.
    """

    p_coeffs: np.ndarray
    s_coeffs: np.ndarray
    interval: Interval = field(default_factory=lambda: Interval(0.0, 1.0))
    require_nonzero: bool = True

    def __post_init__(self):
        p = _coefficient_stack(self.p_coeffs, "P")
        s = _coefficient_stack(self.s_coeffs, "S", n=p.shape[1])
        if p.shape[0] != s.shape[0]:
            raise DimensionMismatch(
                f"P and S must have the same number of coefficients ({p.shape[0]} vs {s.shape[0]})"
            )
        if self.require_nonzero and (not np.any(p) or not np.any(s)):
            raise AssumptionViolated("all P_k zero or all S_l zero: ker 𝒫 ∩ ker 𝒮 is nontrivial")
        object.__setattr__(self, "p_coeffs", p)
        object.__setattr__(self, "s_coeffs", s)

    @property
    def n(self):
        return self.p_coeffs.shape[1]

    @property
    def order(self):
        """N, the half order of both operators."""
        return self.p_coeffs.shape[0] - 1

    def p(self, k):
        """P_k, zero beyond the stored range."""
        if 0 <= k <= self.order:
            return self.p_coeffs[k]
        return np.zeros((self.n, self.n), dtype=complex)

    def s(self, k):
        if 0 <= k <= self.order:
            return self.s_coeffs[k]
        return np.zeros((self.n, self.n), dtype=complex)


@dataclass(frozen=True, eq=False)
class SkewOperator:
    """Coefficients J_0..J_M of 𝒥 = Σ J_k dᵏ, M ≥ 1."""

    j_coeffs: np.ndarray
    interval: Interval = field(default_factory=lambda: Interval(0.0, 1.0))

    def __post_init__(self):
        j = _coefficient_stack(self.j_coeffs, "J")
        if j.shape[0] < 2:
            raise DimensionMismatch("a skew operator needs M ≥ 1 (at least J_0 and J_1)")
        object.__setattr__(self, "j_coeffs", j)

    @property
    def n(self):
        return self.j_coeffs.shape[1]

    @property
    def order(self):
        return self.j_coeffs.shape[0] - 1


@dataclass(frozen=True)
class CheckResult:
    """One structural check: ``passed`` iff ``defect <= tolerance``."""

    name: str
    defect: float
    tolerance: float
    passed: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "name": self.name,
            "defect": self.defect,
            "tolerance": self.tolerance,
            "passed": self.passed,
            **self.detail,
        }


def maxwell_products(pair):
    """C_p = Σ_{m=0}^{p} S_m^H P_{p−m} for p = 0..2N."""
    N = pair.order
    return [sum(pair.s(m).conj().T @ pair.p(p - m) for m in range(p + 1)) for p in range(2 * N + 1)]


def check_maxwell_symmetry(pair, tol=DEFAULT_TOLERANCES.struct_tol):
    """Check that every C_p is Hermitian (Maxwell reciprocity of the coefficients)."""
    N = pair.order
    defects = []
    scale = 1.0
    for p, c in enumerate(maxwell_products(pair)):
        defects.append(spectral_norm(c - c.conj().T))
        bound = sum(spectral_norm(pair.s(m)) * spectral_norm(pair.p(p - m)) for m in range(p + 1))
        scale = max(scale, bound)
    worst = int(np.argmax(defects))
    defect = float(defects[worst])
    return CheckResult(
        "maxwell_symmetry",
        defect,
        tol * scale,
        defect <= tol * scale,
        {"worst_p": worst, "per_p": [float(d) for d in defects], "max_p": 2 * N},
    )


def check_mixed_order(pair):
    """True iff some P_k ≠ 0 and S_l ≠ 0 with k ≠ l."""
    N = pair.order
    nonzero_p = [k for k in range(N + 1) if np.any(pair.p_coeffs[k])]
    nonzero_s = [l for l in range(N + 1) if np.any(pair.s_coeffs[l])]
    return any(k != l for k in nonzero_p for l in nonzero_s)


def check_skew_parity(j, tol=DEFAULT_TOLERANCES.struct_tol):
    """Check J_k = (−1)^{k+1} J_k^H for every k."""
    defects = [
        spectral_norm(jk - (-1) ** (k + 1) * jk.conj().T) for k, jk in enumerate(j.j_coeffs)
    ]
    scale = max([1.0] + [spectral_norm(jk) for jk in j.j_coeffs])
    worst = int(np.argmax(defects))
    defect = float(defects[worst])
    return CheckResult(
        "skew_parity",
        defect,
        tol * scale,
        defect <= tol * scale,
        {"worst_k": worst, "per_k": [float(d) for d in defects]},
    )


def symbol_pencil(pair, mu):
    """Coefficients of T(λ) = Σ_l λ^{2l} S_l − μ Σ_k λ^{2k} P_k.

    Returns an array of shape (2N+1, n, n); entry ``[d]`` multiplies λ^d.
    """
    N, n = pair.order, pair.n
    coeffs = np.zeros((2 * N + 1, n, n), dtype=complex)
    for l in range(N + 1):
        coeffs[2 * l] = pair.s_coeffs[l] - mu * pair.p_coeffs[l]
    return coeffs


def evaluate_matrix_polynomial(coeffs, lam):
    out = np.zeros(coeffs.shape[1:], dtype=complex)
    for c in coeffs[::-1]:
        out = out * lam + c
    return out


def determinant_coefficients(coeffs):
    """Coefficients (ascending) of det of a matrix polynomial, by interpolation.

    The determinant has degree ≤ deg·n. It is sampled at deg·n + 1 roots of
    unity (the coefficient matrices are first normalised to unit scale, so the
    unit circle is the natural radius) and the samples are inverted by FFT.

    Returns
    -------
    c : complex ndarray
        Determinant coefficients for the *normalised* polynomial.
    hadamard : float
        Largest Hadamard bound ∏‖row‖ over the samples; the scale against
        which an identically vanishing determinant is judged.
    """
    deg = coeffs.shape[0] - 1
    n = coeffs.shape[1]
    scale = max(spectral_norm(c) for c in coeffs)
    if scale == 0.0:
        raise DegeneratePencil("symbol is the zero matrix polynomial")
    normed = coeffs / scale
    npts = deg * n + 1
    nodes = np.exp(2j * np.pi * np.arange(npts) / npts)
    values = np.empty(npts, dtype=complex)
    hadamard = 0.0
    for i, z in enumerate(nodes):
        t = evaluate_matrix_polynomial(normed, z)
        values[i] = np.linalg.det(t)
        hadamard = max(hadamard, float(np.prod(np.linalg.norm(t, axis=1))))
    return np.fft.fft(values) / npts, hadamard


@dataclass(frozen=True)
class DefectDimensions:
    d_plus: int
    d_minus: int

    @property
    def existence_of_triplet(self):
        return self.d_plus == self.d_minus


def _det_degree(pair, mu, deg_tol):
    c, hadamard = determinant_coefficients(symbol_pencil(pair, mu))
    mags = np.abs(c)
    if mags.max() <= deg_tol * max(hadamard, np.finfo(float).tiny):
        raise DegeneratePencil(f"det(𝒮 − ({mu})𝒫 symbol) vanishes identically")
    return int(np.flatnonzero(mags > deg_tol * mags.max())[-1])


def defect_dimensions(pair, deg_tol=DEFAULT_TOLERANCES.deg_tol):
    """dim ker(𝒮 ∓ i𝒫) as the degree of det of the symbol at μ = ±i."""
    return DefectDimensions(_det_degree(pair, 1j, deg_tol), _det_degree(pair, -1j, deg_tol))

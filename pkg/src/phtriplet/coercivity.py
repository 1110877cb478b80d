"""Sufficient-condition certificate for coercivity of the stacked operator [𝒫; 𝒮].

On the sine mode sin(μ_k ξ), μ_k = kπ/(b − a), the operator Σ_j X_j d^{2j}
acts as the matrix Φ_X(k) = Σ_j (−1)^j μ_k^{2j} X_j. If
σ_min(Φ_S(k))² + σ_min(Φ_P(k))² is bounded below by c² > 0 uniformly in k,
the stacked operator is coercive on the span of these modes. The scan covers
k ≤ k_max; a Weyl-type lower bound on σ_min covers the tail.
"""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_K_MAX
from .numkernel import singular_values, spectral_norm

LABEL = "sufficient-condition certificate"


def _mu(pair, k):
    return k * np.pi / pair.interval.length


def fourier_coefficient_matrices(pair, k):
    """(Φ_P(k), Φ_S(k)) for the sine mode with index k ≥ 1."""
    if k < 1:
        raise ValueError("mode index k must be ≥ 1")
    mu2 = _mu(pair, k) ** 2
    weights = np.array([(-mu2) ** j for j in range(pair.order + 1)])
    phi_p = np.tensordot(weights, pair.p_coeffs, axes=1)
    phi_s = np.tensordot(weights, pair.s_coeffs, axes=1)
    return phi_p, phi_s


def _sigma_min(m):
    return float(singular_values(m)[-1])


@dataclass(frozen=True)
class CoercivityCertificate:
    """Outcome of a coercivity scan.

    ``tail_status`` is ``"certified_at"`` (with ``tail_k``) or
    ``"uncertified"``. ``tail_method`` records which bound closed the tail:
    ``"leading_coefficient"`` (σ_min(X_N)μ^{2N} − Σ‖X_j‖μ^{2j}) or
    ``"constant_invertible"`` (X has only an invertible X_0).
    ``lower_bound`` is the certified c² over all k when ``certified``.
    """

    c_squared_min: float
    argmin_k: int
    k_max_scanned: int
    tail_status: str
    tail_k: int | None
    tail_method: str | None
    tail_operator: str | None
    lower_bound: float
    certified: bool
    c_s: tuple
    c_p: tuple

    @property
    def label(self):
        return LABEL

    def as_dict(self):
        return {
            "label": LABEL,
            "c_squared_min": self.c_squared_min,
            "argmin_k": self.argmin_k,
            "k_max_scanned": self.k_max_scanned,
            "tail_status": self.tail_status,
            "tail_k": self.tail_k,
            "tail_method": self.tail_method,
            "tail_operator": self.tail_operator,
            "lower_bound": self.lower_bound,
            "certified": self.certified,
        }


def _leading_bound(coeffs, mu):
    """σ_min(X_N)μ^{2N} − Σ_{j<N} ‖X_j‖₂ μ^{2j}, a lower bound for σ_min(Φ_X)."""
    N = coeffs.shape[0] - 1
    head = _sigma_min(coeffs[N]) * mu ** (2 * N)
    return head - sum(spectral_norm(coeffs[j]) * mu ** (2 * j) for j in range(N))


def _constant_invertible(coeffs):
    if np.any(coeffs[1:]):
        return None
    s = _sigma_min(coeffs[0])
    return s if s > 0 else None


def coercivity_scan(pair, k_max=DEFAULT_K_MAX):
    """Scan k = 1..k_max and try to certify the tail k > k_max.

    The leading-coefficient bound g(μ) = σ_min(X_N)μ^{2N} − Σ‖X_j‖μ^{2j}
    satisfies g(μ)/μ^{2N} increasing, so once g(μ_{k*}) ≥ √c² > 0 it stays
    there for all k ≥ k*. The tail counts as certified when such k* ≤ k_max
    exists for X = S or X = P.
    """
    if k_max < 1:
        raise ValueError("k_max must be ≥ 1")
    c_s, c_p = [], []
    for k in range(1, k_max + 1):
        phi_p, phi_s = fourier_coefficient_matrices(pair, k)
        c_s.append(_sigma_min(phi_s))
        c_p.append(_sigma_min(phi_p))
    totals = np.square(c_s) + np.square(c_p)
    idx = int(np.argmin(totals))
    c2 = float(totals[idx])

    tail_k = method = operator = None
    lower = 0.0
    if c2 > 0:
        target = np.sqrt(c2)
        for name, coeffs in (("S", pair.s_coeffs), ("P", pair.p_coeffs)):
            const = _constant_invertible(coeffs)
            if const is not None:
                # Φ_X(k) = X_0 for every k
                cand, cand_lower = 1, min(c2, const ** 2)
                cand_method = "constant_invertible"
            else:
                cand = next(
                    (k for k in range(1, k_max + 1) if _leading_bound(coeffs, _mu(pair, k)) >= target),
                    None,
                )
                cand_lower, cand_method = c2, "leading_coefficient"
            if cand is not None and (tail_k is None or cand < tail_k):
                tail_k, method, operator, lower = cand, cand_method, name, cand_lower
    certified = tail_k is not None
    return CoercivityCertificate(
        c_squared_min=c2,
        argmin_k=idx + 1,
        k_max_scanned=k_max,
        tail_status="certified_at" if certified else "uncertified",
        tail_k=tail_k,
        tail_method=method,
        tail_operator=operator,
        lower_bound=float(lower) if certified else 0.0,
        certified=certified,
        c_s=tuple(c_s),
        c_p=tuple(c_p),
    )

"""Dense complex linear algebra used by the triplet constructions.

Thin, validated wrappers around LAPACK (via numpy) with the conventions the
rest of the package relies on: eigenvalues ascending, eigenvector phases
normalised, ranks measured relative to the largest singular value.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NeitherHermitianNorSkew, NonFinite, NotHermitian

DEFAULT_RTOL = 1e-10


def as_matrix(m, name="matrix"):
    """Return `m` as a 2-D complex array, rejecting NaN/Inf."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 0)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"{name} has non-finite entries")
    return arr


def _square(m, name):
    arr = as_matrix(m, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {arr.shape}")
    return arr


def spectral_norm(m):
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def hermitian_defect(h):
    """‖h − h^H‖₂ / max(‖h‖₂, tiny); zero for the zero matrix."""
    h = np.asarray(h)
    scale = spectral_norm(h)
    if scale == 0.0:
        return 0.0
    return spectral_norm(h - h.conj().T) / scale


def skew_defect(a):
    a = np.asarray(a)
    scale = spectral_norm(a)
    if scale == 0.0:
        return 0.0
    return spectral_norm(a + a.conj().T) / scale


def normalize_phase(v, tol=1e-12):
    """Rotate each column so that its first non-negligible entry is real positive."""
    v = np.array(v, dtype=complex, copy=True)
    for j in range(v.shape[1]):
        col = v[:, j]
        big = np.flatnonzero(np.abs(col) > tol * max(1.0, np.abs(col).max(initial=0.0)))
        if big.size:
            pivot = col[big[0]]
            v[:, j] = col * (abs(pivot) / pivot)
    return v


def _lex_key(col, decimals=9):
    return tuple(x for z in np.round(col, decimals) for x in (z.real, z.imag))


def hermitian_eig(h, tol=DEFAULT_RTOL):
    """Eigen-decomposition of a Hermitian matrix.

    Parameters
    ----------
    h : (m, m) array_like
        Hermitian up to ``tol`` relative to its spectral norm.
    tol : float
        Admissible relative Hermitian defect.

    Returns
    -------
    w : (m,) float ndarray
        Eigenvalues, ascending.
    v : (m, m) complex ndarray
        Orthonormal eigenvectors as columns. Phases are normalised and
        eigenvectors of (numerically) repeated eigenvalues are ordered
        lexicographically, so repeated calls give identical output.
    """
    h = _square(h, "h")
    if hermitian_defect(h) > tol:
        raise NotHermitian(f"matrix is not Hermitian (relative defect {hermitian_defect(h):.3e})")
    if h.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=complex)
    hs = 0.5 * (h + h.conj().T)
    w, v = np.linalg.eigh(hs)
    v = normalize_phase(v)

    # reorder inside clusters of equal eigenvalues
    scale = max(1.0, abs(w).max())
    order = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[start] > 1e-9 * scale:
            cluster = list(range(start, i))
            cluster.sort(key=lambda j: _lex_key(v[:, j]))
            order.extend(cluster)
            start = i
    return w[order], v[:, order]


def singular_values(m):
    m = as_matrix(m)
    if m.size == 0:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def numerical_rank(m, rtol=DEFAULT_RTOL):
    """Number of singular values above ``rtol`` times the largest one."""
    if rtol <= 0:
        raise ValueError("rtol must be positive")
    s = singular_values(m)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def is_psd(h, tol=1e-9):
    """True iff the smallest eigenvalue is ≥ −tol·max(1, ‖h‖)."""
    h = _square(h, "h")
    if h.shape[0] == 0:
        return True
    w, _ = hermitian_eig(h, tol=max(tol, DEFAULT_RTOL))
    return bool(w[0] >= -tol * max(1.0, spectral_norm(h)))


def min_eigenvalue(h):
    h = _square(h, "h")
    if h.shape[0] == 0:
        return 0.0
    return float(np.linalg.eigvalsh(0.5 * (h + h.conj().T))[0])


def orth(m, rtol=DEFAULT_RTOL):
    """Orthonormal basis of the column space (columns beyond the numerical rank dropped)."""
    m = as_matrix(m)
    if m.size == 0:
        return np.zeros((m.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    r = numerical_rank(m, rtol)
    return u[:, :r]


def null_space(m, rtol=DEFAULT_RTOL):
    """Orthonormal basis of ker m."""
    m = as_matrix(m)
    cols = m.shape[1]
    if m.shape[0] == 0 or cols == 0:
        return np.eye(cols, dtype=complex)
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    r = numerical_rank(m, rtol)
    return vh[r:].conj().T


def projector(basis):
    basis = np.asarray(basis, dtype=complex)
    return basis @ basis.conj().T


def projector_distance(basis1, basis2):
    """‖Π₁ − Π₂‖₂ for orthonormal bases; basis independent."""
    return spectral_norm(projector(basis1) - projector(basis2))


@dataclass(frozen=True)
class ReducedFactorization:
    """``a = u_r @ diag(d_r) @ u_r^H`` restricted to the nonzero spectrum.

    ``kind`` is ``"skew"`` (eigenvalues purely imaginary) or ``"hermitian"``.
    """

    u_r: np.ndarray
    d_r: np.ndarray
    kind: str

    @property
    def rank(self):
        return len(self.d_r)

    def reconstruct(self):
        return (self.u_r * self.d_r) @ self.u_r.conj().T


def reduced_spectral_factorization(a, rtol=DEFAULT_RTOL, herm_tol=DEFAULT_RTOL):
    """Reduced spectral factorization of a Hermitian or skew-Hermitian matrix.

    Skew-Hermitian input is factorised through the Hermitian matrix ``i·a``;
    if ``i·a`` has eigenvalue λ then ``a`` has eigenvalue ``−i·λ``. Eigenvalues
    with modulus ≤ ``rtol·‖a‖₂`` are discarded.
    """
    a = _square(a, "a")
    scale = spectral_norm(a)
    m = a.shape[0]
    if scale == 0.0:
        return ReducedFactorization(np.zeros((m, 0), dtype=complex), np.zeros(0, dtype=complex), "skew")

    if skew_defect(a) <= herm_tol:
        w, v = hermitian_eig(1j * a, tol=herm_tol)
        keep = np.abs(w) > rtol * scale
        return ReducedFactorization(v[:, keep], (-1j * w[keep]).astype(complex), "skew")
    if hermitian_defect(a) <= herm_tol:
        w, v = hermitian_eig(a, tol=herm_tol)
        keep = np.abs(w) > rtol * scale
        return ReducedFactorization(v[:, keep], w[keep].astype(complex), "hermitian")
    raise NeitherHermitianNorSkew(
        f"matrix is neither Hermitian nor skew-Hermitian "
        f"(defects {hermitian_defect(a):.3e}, {skew_defect(a):.3e})"
    )

"""Boundary matrices and boundary triplets built from coefficient data.

The trace vector stacks derivatives at the right endpoint first:
γx = [x(b), x'(b), …, x^{(d−1)}(b), x(a), …, x^{(d−1)}(a)], each an n-block.
With ⟨u, v⟩ = v^H u the Green identities read

    ⟨𝒮x, 𝒫y⟩ − ⟨𝒫x, 𝒮y⟩ = γ(y)^H diag(A, −A) γ(x),     A = B − B^H,
    ⟨𝒥x, y⟩ + ⟨x, 𝒥y⟩   = γ(y)^H diag(Q, −Q) γ(x).
"""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import AssumptionViolated, DimensionMismatch, OrderZero, ParityViolated, SingularA
from .numkernel import ReducedFactorization, numerical_rank, reduced_spectral_factorization
from .opspec import check_maxwell_symmetry, check_mixed_order, check_skew_parity

SQRT_HALF = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class TraceLayout:
    n: int
    depth: int

    @property
    def total(self):
        return 2 * self.depth * self.n

    def block(self, side, order):
        """Slice of the trace vector holding x^{(order)} at ``side`` ('b' or 'a')."""
        if not 0 <= order < self.depth:
            raise IndexError(f"derivative order {order} outside 0..{self.depth - 1}")
        start = (order + (0 if side == "b" else self.depth)) * self.n
        return slice(start, start + self.n)


def trace_of_polynomial(x, layout):
    """Evaluate the trace vector of anything with ``derivative``, ``n`` and ``interval``."""
    if x.n != layout.n:
        raise DimensionMismatch(f"layout expects {layout.n} components, got {x.n}")
    out = np.empty(layout.total, dtype=complex)
    for order in range(layout.depth):
        dx = x.derivative(order)
        out[layout.block("b", order)] = dx(x.interval.b)
        out[layout.block("a", order)] = dx(x.interval.a)
    return out


def build_boundary_matrix(pair):
    """The matrix B with ⟨𝒮x,𝒫y⟩ − ⟨𝒫x,𝒮y⟩ boundary terms given by A = B − B^H.

    B is the conjugate transpose of Σ_{l=1}^{N} Σ_{k=0}^{l−1} Σ_{m odd, 2l−1..2N−1} M_{lkm},
    where M_{lkm} has the block (−1)^k S_{(m+1)/2}^H P_{(m+1−2l)/2} at
    (m−k, m+1−2l+k) and (−1)^k S_{(m+1−2l)/2}^H P_{(m+1)/2} at
    (m+1−2l+k, m−k). Block indices are derivative orders 0..2N−1.
    """
    N, n = pair.order, pair.n
    if N == 0:
        raise OrderZero("N = 0: no boundary terms, B is empty")
    total = np.zeros((2 * N * n, 2 * N * n), dtype=complex)

    def add(i, j, block):
        total[i * n:(i + 1) * n, j * n:(j + 1) * n] += block

    for l in range(1, N + 1):
        for k in range(l):
            sign = (-1) ** k
            for m in range(2 * l - 1, 2 * N, 2):
                hi, lo = (m + 1) // 2, (m + 1 - 2 * l) // 2
                add(m - k, m + 1 - 2 * l + k, sign * pair.s(hi).conj().T @ pair.p(lo))
                add(m + 1 - 2 * l + k, m - k, sign * pair.s(lo).conj().T @ pair.p(hi))
    return total.conj().T


def build_a_matrix(b_matrix):
    return b_matrix - b_matrix.conj().T


@dataclass(frozen=True, eq=False)
class RangeTriplet:
    """Boundary triplet (ℂ^g, Γ₀, Γ₁) for ran[𝒫; 𝒮], as matrices on the trace vector."""

    a_matrix: np.ndarray
    b_matrix: np.ndarray
    factorization: ReducedFactorization
    gamma0_matrix: np.ndarray
    gamma1_matrix: np.ndarray
    mode: str  # "full_rank" | "reduced" | "trivial"
    layout: TraceLayout

    @property
    def boundary_space_dim(self):
        return self.gamma0_matrix.shape[0]

    @property
    def gamma_matrix(self):
        return np.vstack([self.gamma0_matrix, self.gamma1_matrix])


def _range_maps(a_matrix, fact, rank):
    size = a_matrix.shape[0]
    if rank == size:
        eye = np.eye(size)
        g0 = SQRT_HALF * np.hstack([a_matrix, -a_matrix])
        g1 = SQRT_HALF * np.hstack([-eye, -eye])
        return g0, g1, "full_rank"
    if rank == 0:
        empty = np.zeros((0, 2 * size), dtype=complex)
        return empty, empty.copy(), "trivial"
    uh = fact.u_r.conj().T
    d = np.diag(fact.d_r)
    g0 = SQRT_HALF * np.hstack([d @ uh, -d @ uh])
    g1 = SQRT_HALF * np.hstack([-uh, -uh])
    return g0, g1, "reduced"


def build_range_triplet(pair, rtol=DEFAULT_TOLERANCES.rank_rtol, tol=DEFAULT_TOLERANCES.struct_tol,
                        enforce_assumptions=True):
    """Boundary triplet for ran[𝒫; 𝒮].

    Full rank A gives Γ = (1/√2)[[A, −A], [−I, −I]] γ. Otherwise A is factorised
    as U_r D_r U_r^H and Γ = (1/√2)[[D_r, −D_r], [−I, −I]] diag(U_r^H, U_r^H) γ.
    A = 0 gives the trivial triplet with g = 0.

    ``enforce_assumptions=False`` skips the structural preconditions; only
    useful for negative controls, since the Green identity then fails.
    """
    if enforce_assumptions:
        maxwell = check_maxwell_symmetry(pair, tol)
        if not maxwell.passed:
            raise AssumptionViolated(
                f"coefficient symmetry fails at p={maxwell.detail['worst_p']} "
                f"(defect {maxwell.defect:.3e} > {maxwell.tolerance:.3e})"
            )
        if not check_mixed_order(pair):
            raise AssumptionViolated("no pair (P_k, S_l) ≠ (0, 0) with k ≠ l")
    b = build_boundary_matrix(pair)
    a = build_a_matrix(b)
    fact = reduced_spectral_factorization(a, rtol)
    g0, g1, mode = _range_maps(a, fact, fact.rank)
    return RangeTriplet(a, b, fact, g0, g1, mode, TraceLayout(pair.n, 2 * pair.order))


def build_q_matrix(j, tol=DEFAULT_TOLERANCES.struct_tol):
    """Hermitian matrix Q of the skew Green identity, (Mn × Mn).

    Block (i, j) (1-based) is (−1)^{i−1} J_{i+j−1} when i+j−1 ≤ M and zero
    otherwise; for M = 1, Q = J_1.
    """
    parity = check_skew_parity(j, tol)
    if not parity.passed:
        raise ParityViolated(
            f"J_{parity.detail['worst_k']} violates J_k = (−1)^(k+1) J_k^H "
            f"(defect {parity.defect:.3e})"
        )
    M, n = j.order, j.n
    q = np.zeros((M * n, M * n), dtype=complex)
    for i in range(1, M + 1):
        for jj in range(1, M + 2 - i):
            q[(i - 1) * n:i * n, (jj - 1) * n:jj * n] = (-1) ** (i - 1) * j.j_coeffs[i + jj - 1]
    return q


@dataclass(frozen=True, eq=False)
class SkewTriplet:
    """Boundary triplet (ℂ^{g_Q}, Γ̂₀, Γ̂₁) for 𝒥₀*, acting on the depth-M trace."""

    q_matrix: np.ndarray
    factorization: ReducedFactorization
    gamma0_matrix: np.ndarray
    gamma1_matrix: np.ndarray
    layout: TraceLayout

    @property
    def boundary_space_dim(self):
        return self.gamma0_matrix.shape[0]

    @property
    def gamma_matrix(self):
        return np.vstack([self.gamma0_matrix, self.gamma1_matrix])


def build_skew_triplet(j, rtol=DEFAULT_TOLERANCES.rank_rtol, tol=DEFAULT_TOLERANCES.struct_tol):
    """Γ̂ = (1/√2)[[K_r, −K_r], [I, I]] diag(S_r^H, S_r^H) γ with Q = S_r K_r S_r^H."""
    q = build_q_matrix(j, tol)
    fact = reduced_spectral_factorization(q, rtol)
    size = q.shape[0]
    if fact.rank == 0:
        g0 = np.zeros((0, 2 * size), dtype=complex)
        g1 = g0.copy()
    else:
        sh = fact.u_r.conj().T
        k = np.diag(fact.d_r.real)
        g0 = SQRT_HALF * np.hstack([k @ sh, -k @ sh])
        g1 = SQRT_HALF * np.hstack([sh, sh])
    return SkewTriplet(q, fact, g0, g1, TraceLayout(j.n, j.order))


def triplet_to_trace(a_matrix, rtol=DEFAULT_TOLERANCES.rank_rtol):
    """Inverse of the full-rank boundary map: γ = (√2/2)[[A⁻¹, −I], [−A⁻¹, −I]] Γ."""
    a = np.asarray(a_matrix, dtype=complex)
    size = a.shape[0]
    if size == 0 or numerical_rank(a, rtol) < size:
        raise SingularA("A is singular; only the reduced triplet is available")
    a_inv = np.linalg.inv(a)
    eye = np.eye(size)
    return (np.sqrt(2.0) / 2.0) * np.block([[a_inv, -eye], [-a_inv, -eye]])

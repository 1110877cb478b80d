"""Boundary conditions in the boundary space and their classification.

A condition is a matrix pair acting on the boundary values (Γ₀x, Γ₁x):
(K, L) means K·Γ₀x + L·Γ₁x = 0, i.e. (Γ₀x, Γ₁x) ∈ Θ = ker[K L]. The
closed-form verdicts use matrix products of K and L only; ``oracle_classify``
decides the same questions from the definitions of adjoint and dissipative
relations, working directly on a basis of Θ.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import DimensionMismatch, SingularA
from .numkernel import (
    as_matrix,
    is_psd,
    min_eigenvalue,
    null_space,
    numerical_rank,
    orth,
    projector_distance,
    spectral_norm,
)

CLASSIFY_TOL = 1e-9


def _pair(first, second, names):
    x = as_matrix(first, names[0])
    y = as_matrix(second, names[1])
    if x.shape[0] != x.shape[1] or x.shape != y.shape:
        raise DimensionMismatch(
            f"{names[0]} and {names[1]} must be square of equal size, got {x.shape} and {y.shape}"
        )
    return x, y


@dataclass(frozen=True, eq=False)
class RelationBC:
    """K·Γ₀x + L·Γ₁x = 0 on the range triplet (g × g matrices)."""

    k_matrix: np.ndarray
    l_matrix: np.ndarray

    def __post_init__(self):
        k, l = _pair(self.k_matrix, self.l_matrix, ("K", "L"))
        object.__setattr__(self, "k_matrix", k)
        object.__setattr__(self, "l_matrix", l)

    @property
    def boundary_space_dim(self):
        return self.k_matrix.shape[0]


@dataclass(frozen=True, eq=False)
class SkewBC:
    """F·Γ̂₀x + E·Γ̂₁x = 0 on the skew triplet (g_Q × g_Q matrices)."""

    f_matrix: np.ndarray
    e_matrix: np.ndarray

    def __post_init__(self):
        f, e = _pair(self.f_matrix, self.e_matrix, ("F", "E"))
        object.__setattr__(self, "f_matrix", f)
        object.__setattr__(self, "e_matrix", e)

    @property
    def boundary_space_dim(self):
        return self.f_matrix.shape[0]


@dataclass(frozen=True)
class ClassificationReport:
    """Raw diagnostics and the verdicts derived from them.

    ``symmetry_defect`` is ‖KL^H − LK^H‖₂ for relations and ‖FE^H + EF^H‖₂
    for skew conditions; ``dissipativity_min_eig`` is the smallest
    eigenvalue of KL^H + LK^H (resp. FE^H + EF^H).
    """

    kind: str
    boundary_space_dim: int
    symmetry_defect: float
    dissipativity_min_eig: float
    combined_rank: int
    tolerance: float
    verdicts: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "kind": self.kind,
            "boundary_space_dim": self.boundary_space_dim,
            "symmetry_defect": self.symmetry_defect,
            "dissipativity_min_eig": self.dissipativity_min_eig,
            "combined_rank": self.combined_rank,
            "tolerance": self.tolerance,
            "verdicts": dict(self.verdicts),
        }


def _scaled_tol(x, y, tol):
    return tol * max(1.0, spectral_norm(x) * spectral_norm(y))


def classify_relation_bc(bc, tol=CLASSIFY_TOL, rank_rtol=DEFAULT_TOLERANCES.rank_rtol):
    """Self-adjointness and maximal dissipativity of Θ = ker[K L].

    self-adjoint ⇔ KL^H = LK^H and rk[K L] = g;
    maximally dissipative ⇔ KL^H + LK^H ⪰ 0 and rk[K L] = g.
    """
    k, l = bc.k_matrix, bc.l_matrix
    g = bc.boundary_space_dim
    kl = k @ l.conj().T
    lk = l @ k.conj().T
    defect = spectral_norm(kl - lk)
    rank = numerical_rank(np.hstack([k, l]), rank_rtol) if g else 0
    full = rank == g
    bound = _scaled_tol(k, l, tol)
    verdicts = {
        "self_adjoint": bool(full and defect <= bound),
        "maximally_dissipative": bool(full and is_psd(kl + lk, tol)),
    }
    return ClassificationReport("relation", g, defect, min_eigenvalue(kl + lk), rank, bound, verdicts)


def classify_skew_bc(bc, tol=CLASSIFY_TOL, rank_rtol=DEFAULT_TOLERANCES.rank_rtol):
    """Skew-adjointness and maximal dissipativity of the condition F·Γ̂₀x + E·Γ̂₁x = 0.

    maximally dissipative ⇔ FE^H + EF^H ⪰ 0 and rk[F E] = g_Q;
    skew-adjoint ⇔ FE^H + EF^H = 0 and rk[F E] = g_Q.
    """
    f, e = bc.f_matrix, bc.e_matrix
    g = bc.boundary_space_dim
    form = f @ e.conj().T + e @ f.conj().T
    defect = spectral_norm(form)
    rank = numerical_rank(np.hstack([f, e]), rank_rtol) if g else 0
    full = rank == g
    bound = _scaled_tol(f, e, tol)
    verdicts = {
        "skew_adjoint": bool(full and defect <= bound),
        "maximally_dissipative": bool(full and is_psd(form, tol)),
    }
    return ClassificationReport("skew", g, defect, min_eigenvalue(form), rank, bound, verdicts)


# -- linear relations as subspaces of ℂ^g × ℂ^g ----------------------------


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Orthonormal columns spanning a subspace of ℂ^{2g}; rows [first; second]."""

    basis: np.ndarray
    g: int

    @classmethod
    def span(cls, columns, g, rtol=DEFAULT_TOLERANCES.rank_rtol):
        cols = as_matrix(columns, "columns")
        if cols.shape[0] != 2 * g:
            raise DimensionMismatch(f"columns must have {2 * g} rows, got {cols.shape[0]}")
        return cls(orth(cols, rtol), g)

    @classmethod
    def kernel(cls, matrix, g, rtol=DEFAULT_TOLERANCES.rank_rtol):
        m = as_matrix(matrix, "matrix")
        if m.shape[1] != 2 * g:
            raise DimensionMismatch(f"matrix must have {2 * g} columns, got {m.shape[1]}")
        return cls(null_space(m, rtol), g)

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def first(self):
        return self.basis[: self.g]

    @property
    def second(self):
        return self.basis[self.g:]

    def flipped(self):
        """{(u, −v) : (u, v) in the subspace}."""
        return SubspaceBasis(np.vstack([self.first, -self.second]), self.g)

    def distance(self, other):
        return projector_distance(self.basis, other.basis)


def relation_kernel(bc, rtol=DEFAULT_TOLERANCES.rank_rtol):
    """Θ = ker[K L] (or ker[F E]) as a subspace of ℂ^{2g}."""
    if isinstance(bc, SkewBC):
        k, l = bc.f_matrix, bc.e_matrix
    else:
        k, l = bc.k_matrix, bc.l_matrix
    return SubspaceBasis.kernel(np.hstack([k, l]), k.shape[0], rtol)


def relation_adjoint_parameters(bc, rtol=DEFAULT_TOLERANCES.rank_rtol):
    """Θ* = ran[L^H; −K^H], the parameter relation of the adjoint."""
    k, l = bc.k_matrix, bc.l_matrix
    return SubspaceBasis.span(np.vstack([l.conj().T, -k.conj().T]), bc.boundary_space_dim, rtol)


def adjoint_relation(theta, rtol=DEFAULT_TOLERANCES.rank_rtol):
    """{(g₁, g₂) : ⟨g₂, h₁⟩ = ⟨g₁, h₂⟩ for all (h₁, h₂) ∈ Θ}.

    With ⟨u, v⟩ = v^H u this is the kernel of [−W₂^H, W₁^H].
    """
    constraint = np.hstack([-theta.second.conj().T, theta.first.conj().T])
    return SubspaceBasis.kernel(constraint, theta.g, rtol)


def oracle_classify(theta, tol=CLASSIFY_TOL, subspace_tol=DEFAULT_TOLERANCES.subspace_tol,
                    rtol=DEFAULT_TOLERANCES.rank_rtol):
    """Verdicts for Θ straight from the definitions.

    Returns a dict with ``self_adjoint`` (Θ = Θ*), ``skew_adjoint``
    (Θ = −Θ*), ``dissipative`` (Re⟨v, u⟩ ≤ 0 for all (u, v) ∈ Θ) and
    ``maximal_dissipative`` (dissipative and dim Θ = g).
    """
    adj = adjoint_relation(theta, rtol)
    same_dim = adj.dim == theta.dim
    self_adjoint = same_dim and theta.distance(adj) <= subspace_tol
    skew_adjoint = same_dim and theta.distance(adj.flipped()) <= subspace_tol
    w1, w2 = theta.first, theta.second
    form = w1.conj().T @ w2
    dissipative = is_psd(-(form + form.conj().T), tol)
    return {
        "self_adjoint": bool(self_adjoint),
        "skew_adjoint": bool(skew_adjoint),
        "dissipative": bool(dissipative),
        "maximal_dissipative": bool(dissipative and theta.dim == theta.g),
    }


# -- trace-form conditions and the combined check ----------------------------


def trace_bc_to_triplet_bc(qb, rb, triplet, rtol=DEFAULT_TOLERANCES.rank_rtol):
    """Rewrite Q_b·γ_b + R_b·γ_a = 0 as K·Γ₀ + L·Γ₁ = 0 on a full-rank triplet.

    γ_b and γ_a are the b-side and a-side halves of the trace vector. Returns
    K = (Q_b − R_b)·A⁻¹ and L = −(Q_b + R_b).
    """
    a = triplet.a_matrix
    size = a.shape[0]
    q = as_matrix(qb, "Q_b")
    r = as_matrix(rb, "R_b")
    if q.shape != (size, size) or r.shape != (size, size):
        raise DimensionMismatch(f"Q_b and R_b must be {size} × {size}")
    if triplet.mode != "full_rank" or numerical_rank(a, rtol) < size:
        raise SingularA("trace-form conditions need an invertible A (full-rank triplet)")
    k = np.linalg.solve(a.T, (q - r).T).T
    return RelationBC(k, -(q + r))


@dataclass(frozen=True)
class GeneralizedPHReport:
    holds: bool
    relation: ClassificationReport
    skew: ClassificationReport

    def as_dict(self):
        return {"holds": self.holds, "relation": self.relation.as_dict(), "skew": self.skew.as_dict()}


def check_generalized_ph(rel, skew, tol=CLASSIFY_TOL, rank_rtol=DEFAULT_TOLERANCES.rank_rtol,
                         g=None, g_q=None):
    """Skew-adjoint (F, E) and self-adjoint (K, L), both with full rank.

    ``g`` and ``g_q`` optionally pin the boundary-space dimensions of the
    two triplets; mismatched conditions raise DimensionMismatch.
    """
    if g is not None and rel.boundary_space_dim != g:
        raise DimensionMismatch(f"(K, L) has size {rel.boundary_space_dim}, triplet has g = {g}")
    if g_q is not None and skew.boundary_space_dim != g_q:
        raise DimensionMismatch(f"(F, E) has size {skew.boundary_space_dim}, triplet has g_Q = {g_q}")
    r = classify_relation_bc(rel, tol, rank_rtol)
    s = classify_skew_bc(skew, tol, rank_rtol)
    holds = r.verdicts["self_adjoint"] and s.verdicts["skew_adjoint"]
    return GeneralizedPHReport(bool(holds), r, s)

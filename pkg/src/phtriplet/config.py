"""Default tolerances. Every report echoes the values it was computed with."""

from dataclasses import asdict, dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    rank_rtol: float = 1e-10  # singular values relative to the largest one
    herm_tol: float = 1e-10  # Hermitian / skew-Hermitian defect, relative
    struct_tol: float = 1e-10  # coefficient symmetry checks, relative
    defect_tol: float = 1e-9  # KL^H - LK^H style defects, relative
    psd_tol: float = 1e-9
    subspace_tol: float = 1e-9  # projector distance
    deg_tol: float = 1e-8  # relative coefficient threshold for det degree
    green_tol: float = 1e-9  # Green residual, relative to the inner-product scale

    def as_dict(self):
        return asdict(self)

    def updated(self, **overrides):
        unknown = set(overrides) - set(self.as_dict())
        if unknown:
            raise KeyError(f"unknown tolerance(s): {sorted(unknown)}")
        return replace(self, **overrides)


DEFAULT_TOLERANCES = Tolerances()
DEFAULT_K_MAX = 100
DEFAULT_SAMPLES = 100
DEFAULT_SEED = 0

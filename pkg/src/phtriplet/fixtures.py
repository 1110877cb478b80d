"""The three worked examples: Dzektser equation, biharmonic wave, elastic rod.

Each builder returns plain coefficient data; reference matrices that the
examples are checked against live here too.
"""

from dataclasses import dataclass

import numpy as np

from .errors import AssumptionViolated
from .opspec import EvenOrderOperatorPair, Interval, SkewOperator

FIXTURE_NAMES = ("dzektser", "wave", "rod")


@dataclass(frozen=True, eq=False)
class Fixture:
    name: str
    pair: EvenOrderOperatorPair
    skew: SkewOperator | None = None
    boundary_conditions: dict | None = None
    notes: tuple = ()


ROD_ORIENTATION_NOTE = (
    "A restricted to the (x2, x2') traces is [[0, mu*T], [-mu*T, 0]]; a hand "
    "integration by parts written with the opposite orientation gives the "
    "transposed sign. The Green residual suite vanishes for the orientation used here."
)


def dzektser_pair():
    """𝒫 = 1 + d², 𝒮 = d² + 2d⁴ on (0, π); n = 1, N = 2."""
    return EvenOrderOperatorPair(
        [[[1.0]], [[1.0]], [[0.0]]],
        [[[0.0]], [[1.0]], [[2.0]]],
        Interval(0.0, np.pi),
    )


# Dirichlet conditions x(π) = x''(π) = x(0) = x''(0) = 0 in trace form
DZEKTSER_DIRICHLET_QB = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]], dtype=complex
)
DZEKTSER_DIRICHLET_RB = np.array(
    [[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0]], dtype=complex
)

# Reference matrices for the Dzektser pair (rows/cols: x, x', x'', x''')
DZEKTSER_B_H = np.array(
    [[0, 0, 0, 0], [1, 0, 0, 0], [0, -2, 0, 0], [2, 0, 2, 0]], dtype=complex
)
DZEKTSER_A_H = np.array(
    [[0, -1, 0, -2], [1, 0, 2, 0], [0, -2, 0, -2], [2, 0, 2, 0]], dtype=complex
)


def wave_pair(interval=None):
    """Biharmonic wave: P = (I, 0), S = (diag(1, 0), diag(0, −1)); n = 2, N = 1."""
    return EvenOrderOperatorPair(
        [np.eye(2), np.zeros((2, 2))],
        [np.diag([1.0, 0.0]), np.diag([0.0, -1.0])],
        interval or Interval(0.0, 1.0),
    )


def wave_skew(interval=None):
    """𝒥 = J₁ d with J₁ = [[0, 1], [1, 0]]."""
    return SkewOperator([np.zeros((2, 2)), [[0.0, 1.0], [1.0, 0.0]]], interval or Interval(0.0, 1.0))


# Published factorisation of the wave boundary matrix, rows (x1, x2, x1', x2')
WAVE_U_R = np.array([[0, 0], [-1j, 1j], [0, 0], [1, 1]]) / np.sqrt(2.0)
WAVE_D_R = np.array([1j, -1j])


def _check_rod_parameters(mu, tension, kappa, rho_area):
    for label, value in (("mu", mu), ("T", tension), ("kappa", kappa), ("rhoA", rho_area)):
        if not np.isfinite(value) or value <= 0:
            raise AssumptionViolated(f"rod parameter {label} must be positive, got {value}")


def rod_pair(mu=1.0, tension=1.0, kappa=1.0, rho_area=1.0, interval=None):
    """Elastic rod: P₀ = I, P₁ = −μE₂₂, S₀ = diag(κ, T, 1/ρA), S₁ = 0; n = 3, N = 1."""
    _check_rod_parameters(mu, tension, kappa, rho_area)
    p1 = np.zeros((3, 3))
    p1[1, 1] = -mu
    return EvenOrderOperatorPair(
        [np.eye(3), p1],
        [np.diag([kappa, tension, 1.0 / rho_area]), np.zeros((3, 3))],
        interval or Interval(0.0, 1.0),
    )


def rod_skew(interval=None):
    j0 = np.array([[0, 0, 1], [0, 0, 0], [-1, 0, 0]], dtype=float)
    j1 = np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=float)
    return SkewOperator([j0, j1], interval or Interval(0.0, 1.0))


ROD_S_R = np.array([[0, 0], [1, -1], [1, 1]]) / np.sqrt(2.0)
ROD_K_R = np.array([1.0, -1.0])


def fixture(name, **params):
    """Build a named fixture; ``rod`` accepts mu, tension, kappa, rho_area."""
    if name == "dzektser":
        return Fixture(
            name,
            dzektser_pair(),
            boundary_conditions={
                "form": "trace",
                "Q_b": DZEKTSER_DIRICHLET_QB,
                "R_b": DZEKTSER_DIRICHLET_RB,
            },
        )
    if name == "wave":
        return Fixture(name, wave_pair(), wave_skew())
    if name == "rod":
        return Fixture(
            name,
            rod_pair(**params),
            rod_skew(),
            boundary_conditions={
                "form": "triplet",
                "K": np.eye(2),
                "L": -np.eye(2),
                "F": np.zeros((2, 2)),
                "E": np.eye(2),
            },
            notes=(ROD_ORIENTATION_NOTE,),
        )
    raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")

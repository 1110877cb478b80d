"""Random problem generators shared by the unit and acceptance tests."""

import numpy as np

from phtriplet.classify import RelationBC, SkewBC
from phtriplet.opspec import EvenOrderOperatorPair, Interval, SkewOperator


def random_complex(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_unitary(rng, n):
    q, r = np.linalg.qr(random_complex(rng, n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_interval(rng):
    a = float(rng.uniform(-1.0, 1.0))
    return Interval(a, a + float(rng.uniform(0.5, 2.0)))


def random_valid_pair(rng, n=None, order=None, interval=None):
    """A pair passing the coefficient symmetry check with mixed orders.

    Two families. Commuting: P_k = (Σ p_{k,i} E_i) T and S_l = (Σ s_{l,i} E_i) T with
    E_i the rank-one projectors of a random unitary, real weights and a random
    invertible T; then S_m^H P_{p−m} = T^H (Hermitian) T. Identity: P = (I, 0, …)
    with Hermitian S_l.
    """
    n = n or int(rng.integers(1, 4))
    order = order if order is not None else int(rng.integers(1, 4))
    interval = interval or random_interval(rng)
    if rng.random() < 0.75:
        u = random_unitary(rng, n)
        proj = [np.outer(u[:, i], u[:, i].conj()) for i in range(n)]
        t = random_complex(rng, n, n) + 2 * np.eye(n)
        p = [sum(rng.normal() * e for e in proj) @ t for _ in range(order + 1)]
        s = [sum(rng.normal() * e for e in proj) @ t for _ in range(order + 1)]
    else:
        p = [np.eye(n)] + [np.zeros((n, n))] * order
        s = []
        for _ in range(order + 1):
            h = random_complex(rng, n, n)
            s.append(h + h.conj().T)
    return EvenOrderOperatorPair(p, s, interval)


def perturbed_pair(pair, rng, size=1.0):
    """Add an anti-Hermitian perturbation of norm ``size`` to S_0."""
    h = random_complex(rng, pair.n, pair.n)
    skew = h - h.conj().T
    skew *= size / np.linalg.norm(skew, 2)
    s = np.array(pair.s_coeffs)
    s[0] = s[0] + skew
    return EvenOrderOperatorPair(pair.p_coeffs, s, pair.interval)


def random_parity_skew(rng, n=None, order=None, interval=None):
    """J_k = (−1)^{k+1} J_k^H for every k."""
    n = n or int(rng.integers(1, 4))
    order = order or int(rng.integers(1, 5))
    js = []
    for k in range(order + 1):
        x = random_complex(rng, n, n)
        js.append(0.5 * (x + (-1) ** (k + 1) * x.conj().T))
    return SkewOperator(js, interval or random_interval(rng))


# -- boundary condition draws ---------------------------------------------------


def random_relation_draw(rng, g, kind):
    """(K, L) of a given kind: self_adjoint, dissipative, generic or rank_deficient."""
    r = random_complex(rng, g, g)
    if kind == "self_adjoint":
        h = random_complex(rng, g, g)
        return r, r @ (h + h.conj().T)
    if kind == "dissipative":
        x = random_complex(rng, g, g)
        d = x - x.conj().T + (0.5 + rng.random()) * np.eye(g)
        return r, r @ d
    if kind == "rank_deficient":
        rank = int(rng.integers(0, g))
        left = random_complex(rng, g, rank)
        return left @ random_complex(rng, rank, g), left @ random_complex(rng, rank, g)
    return r, random_complex(rng, g, g)


DRAW_KINDS = ("self_adjoint", "dissipative", "generic", "rank_deficient")


def relation_draws(seed, count):
    rng = np.random.default_rng(seed)
    for i in range(count):
        g = int(rng.integers(1, 4))
        kind = DRAW_KINDS[i % len(DRAW_KINDS)]
        k, l = random_relation_draw(rng, g, kind)
        yield kind, RelationBC(k, l), SkewBC(k, l)


# criterion number -> PASS/FAIL line, filled by test_acceptance and echoed in the summary
ACCEPTANCE_RESULTS = {}

"""Seeded random operators for property checks and demos."""

import numpy as np

from .states import BipartiteState, make_state


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(d, rng, rank=None):
    rng = rng_from(rng)
    k = d if rank is None else rank
    return rng.normal(size=(d, k)) + 1j * rng.normal(size=(d, k))


def random_hermitian(d, rng, scale=1.0):
    g = ginibre(d, rng)
    return scale * 0.5 * (g + g.conj().T)


def random_unitary(d, rng):
    """Haar unitary via QR of a Ginibre matrix with phase fix."""
    q, r = np.linalg.qr(ginibre(d, rng))
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def random_density(d, rng, rank=None):
    """Wishart-type state ``G G^dagger / Tr``; ``rank < d`` gives a
    rank-deficient mixture of ``rank`` pure states."""
    g = ginibre(d, rng, rank)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_bipartite(rng, dims=(2, 2), rank=None) -> BipartiteState:
    return make_state(random_density(dims[0] * dims[1], rng, rank), dims)


def random_product(rng, dims=(2, 2)) -> BipartiteState:
    rng = rng_from(rng)
    a = random_density(dims[0], rng)
    b = random_density(dims[1], rng)
    return make_state(np.kron(a, b), dims)

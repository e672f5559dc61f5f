"""Impenetrable 1D bosons in a harmonic trap, solved by Bose-Fermi mapping.

Eigenstates are labelled by strictly increasing occupation sets of oscillator
levels; the eigenfunction is the sign-symmetrized Slater determinant of the
occupied modes and vanishes on every coincidence hyperplane.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .oscillator import gauss_hermite, hermite_functions

MAX_PARTICLES = 12
MAX_LEVELS = 10_000


@dataclass(frozen=True)
class OccupationSet:
    """Strictly increasing oscillator level indices for N hard-core bosons."""

    levels: tuple

    def __post_init__(self):
        lv = tuple(int(n) for n in self.levels)
        if len(lv) == 0:
            raise ValueError("empty occupation set")
        if any(n < 0 for n in lv):
            raise ValueError("negative oscillator level")
        if any(lv[i] >= lv[i + 1] for i in range(len(lv) - 1)):
            raise ValueError("occupation levels must be strictly increasing")
        object.__setattr__(self, "levels", lv)

    @property
    def n_particles(self):
        return len(self.levels)

    @property
    def energy(self):
        return sum(2 * n + 1 for n in self.levels)


def ground_occupations(n_particles):
    return OccupationSet(tuple(range(n_particles)))


@dataclass(frozen=True)
class TGLevel:
    energy: int
    multiplicity: int
    occupations: tuple  # of OccupationSet


def tg_levels(n_particles, count):
    """Lowest `count` eigenvalues (with multiplicity), grouped by energy.

    Best-first search over occupation sets; the last returned group always
    carries all of its realizing sets, so the total multiplicity may exceed
    `count` when the cut lands inside a degenerate level.
    """
    if n_particles < 1 or n_particles > MAX_PARTICLES:
        raise ValueError(f"particle number must be in [1, {MAX_PARTICLES}]")
    if count < 1 or count > MAX_LEVELS:
        raise ValueError(f"count must be in [1, {MAX_LEVELS}]")

    start = tuple(range(n_particles))
    heap = [(n_particles**2, start)]
    seen = {start}
    groups = {}
    n_popped = 0
    while heap:
        if n_popped >= count and heap[0][0] not in groups:
            break
        e, occ = heapq.heappop(heap)
        groups.setdefault(e, []).append(OccupationSet(occ))
        n_popped += 1
        for i in range(n_particles):
            raised = occ[i] + 1
            if i + 1 < n_particles and raised == occ[i + 1]:
                continue
            nxt = occ[:i] + (raised,) + occ[i + 1 :]
            if nxt not in seen:
                seen.add(nxt)
                heapq.heappush(heap, (e + 2, nxt))
    return [TGLevel(e, len(s), tuple(s)) for e, s in sorted(groups.items())]


def tg_eigenvalues(n_particles, count):
    """Flat ascending list of exactly `count` eigenvalues with multiplicity."""
    flat = []
    for level in tg_levels(n_particles, count):
        flat.extend([level.energy] * level.multiplicity)
    return flat[:count]


def _pair_sign(x):
    """Product over i<j of sgn(x_j - x_i); zero at any coincidence."""
    n = x.shape[-1]
    sign = np.ones(x.shape[:-1])
    for i in range(n):
        for j in range(i + 1, n):
            sign = sign * np.sign(x[..., j] - x[..., i])
    return sign


@dataclass(frozen=True)
class TGEigenstate:
    """Symmetric hard-core eigenstate; callable on point batches (..., N)."""

    occupations: OccupationSet
    energy: int

    def __call__(self, points):
        x = np.asarray(points, dtype=float)
        if x.shape[-1] != self.occupations.n_particles:
            raise ValueError("point dimension does not match particle number")
        occ = self.occupations.levels
        v = hermite_functions(max(occ), x)  # (n_max+1, ..., N)
        mat = np.stack([v[n] for n in occ], axis=-2)  # (..., N_occ, N)
        det = np.linalg.det(mat)
        norm = 1.0 / math.sqrt(math.factorial(len(occ)))
        return norm * _pair_sign(x) * det


def tg_eigenfunction(occ):
    """Eigenstate for an occupation set, positive on the ordered wedge."""
    if not isinstance(occ, OccupationSet):
        occ = OccupationSet(tuple(occ))
    return TGEigenstate(occupations=occ, energy=occ.energy)


def tg_norm_check(occ, quadrature_degree):
    """N-dimensional Gauss-Hermite quadrature of |psi|^2 (N <= 4)."""
    if not isinstance(occ, OccupationSet):
        occ = OccupationSet(tuple(occ))
    n = occ.n_particles
    if n > 4:
        raise ValueError("tensor quadrature limited to N <= 4")
    state = tg_eigenfunction(occ)
    z, w = gauss_hermite(quadrature_degree)
    wt = w * np.exp(z**2)  # total weights: |psi|^2 carries its own Gaussian
    grids = np.meshgrid(*([z] * n), indexing="ij")
    pts = np.stack(grids, axis=-1).reshape(-1, n)
    weights = np.ones(len(pts))
    for axis in range(n):
        idx = np.meshgrid(*([np.arange(quadrature_degree)] * n), indexing="ij")[axis].ravel()
        weights *= wt[idx]
    vals = state(pts)
    return float(np.sum(weights * vals**2))


def diagonal_vanishing_rate(occ, x0, delta, rest=None):
    """|psi(x0+delta, x0-delta, rest...)| / delta; finite nonzero as delta->0."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    if not isinstance(occ, OccupationSet):
        occ = OccupationSet(tuple(occ))
    state = tg_eigenfunction(occ)
    rest = tuple(rest) if rest is not None else ()
    if 2 + len(rest) != occ.n_particles:
        raise ValueError("rest coordinates must fill the remaining particles")
    point = np.array([x0 + delta, x0 - delta, *rest])
    return float(abs(state(point)) / delta)

"""Pointwise gauge and geometry kernels for the flux-carrying pair interaction.

Everything here is exact, closed-form and stateless: the unit-flux vector
potential, the two gauge phases S (arctan branch) and S~ (small-angle), link
phases for lattice hoppings, the circumradius three-body identity, and the
classical Hamilton function split into its four terms.

All angles are reduced to (-pi, pi].
"""

from dataclasses import dataclass

import numpy as np


def _vec2(p):
    v = np.asarray(p, dtype=float)
    if v.shape != (2,):
        raise ValueError(f"expected a 2-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("non-finite components")
    return v


def vector_potential_A0(r):
    """Unit-flux vector potential (-y, x)/|r|^2; singular at the origin."""
    r = _vec2(r)
    rr = r[0] ** 2 + r[1] ** 2
    if rr == 0.0:
        raise ValueError("vector potential is singular at the origin")
    return np.array([-r[1], r[0]]) / rr


def singular_gauge_phase(a, b):
    """Angle of a-b with the horizontal axis, in (-pi, pi]."""
    a, b = _vec2(a), _vec2(b)
    d = a - b
    if d[0] == 0.0 and d[1] == 0.0:
        raise ValueError("coincident points have no exchange angle")
    return float(np.arctan2(d[1], d[0]))


def phase_S(r):
    """Even gauge phase arctan(y/x) in (-pi/2, pi/2); undefined on x=0."""
    r = _vec2(r)
    if r[0] == 0.0:
        raise ValueError("phase S is discontinuous across the line x=0")
    return float(np.arctan(r[1] / r[0]))


def grad_S(r):
    """Analytic gradient of arctan(y/x): (-y, x)/(x^2+y^2), for x != 0."""
    r = _vec2(r)
    if r[0] == 0.0:
        raise ValueError("grad S undefined on the line x=0")
    rr = r[0] ** 2 + r[1] ** 2
    return np.array([-r[1], r[0]]) / rr


def gauge_residual(r):
    """grad S - A0, identically zero away from the line x=0."""
    return grad_S(r) - vector_potential_A0(r)


def tilde_gauge_residual(r):
    """grad S~ - A0 with S~ = y/x; bounded by C|y|/x^2 near the axis."""
    r = _vec2(r)
    if r[0] == 0.0:
        raise ValueError("S~ undefined on the line x=0")
    x, y = r
    grad_tilde = np.array([-y / x**2, 1.0 / x])
    return grad_tilde - vector_potential_A0(r)


def _perp(v):
    return np.stack([-v[..., 1], v[..., 0]], axis=-1)


def circumradius_sum(p1, p2, p3):
    """Cyclic sum of A0(p1-p2).A0(p1-p3); equals 1/(2 R^2), 0 when collinear."""
    pts = [_vec2(p1), _vec2(p2), _vec2(p3)]
    for i in range(3):
        if np.array_equal(pts[i], pts[(i + 1) % 3]):
            raise ValueError("coincident summits")
    total = 0.0
    for i in range(3):
        a = pts[i] - pts[(i + 1) % 3]
        b = pts[i] - pts[(i + 2) % 3]
        total += float(_perp(a) @ b) / ((a @ a) * (b @ b))
    return total


def segment_winding(ax, ay, bx, by):
    """Signed angle subtended at the origin going from a to b (broadcasts).

    Equals the line integral of A0 along the straight segment [a, b] whenever
    the segment avoids the origin; no validity checks are performed here.
    """
    return np.arctan2(ax * by - ay * bx, ax * bx + ay * by)


def peierls_link_phase(a, b, alpha):
    """alpha times the line integral of A0 along the segment a -> b."""
    a, b = _vec2(a), _vec2(b)
    if (a == 0).all() or (b == 0).all():
        raise ValueError("segment endpoint at the flux origin")
    cross = a[0] * b[1] - a[1] * b[0]
    dot = a @ b
    if cross == 0.0 and dot <= 0.0:
        raise ValueError("segment passes through the flux origin")
    return float(alpha * segment_winding(a[0], a[1], b[0], b[1]))


@dataclass(frozen=True)
class PhaseLink:
    """Directed lattice link with its accumulated gauge phase."""

    start: tuple
    end: tuple
    phase: float

    def reversed(self):
        return PhaseLink(self.end, self.start, -self.phase)


@dataclass(frozen=True)
class ClassicalTerms:
    """Term-by-term value of the expanded classical Hamilton function."""

    kinetic_trap: float
    cross: float
    three_body: float
    two_body: float

    @property
    def total(self):
        return self.kinetic_trap + self.cross + self.three_body + self.two_body


def classical_hamiltonian(positions, momenta, alpha):
    """Expanded Hamilton function of flux-coupled classical particles.

    positions, momenta: arrays (N, 2).  Returns the four terms separately:
    kinetic+trap, momentum cross term, three-body product term, and the
    two-body inverse-square term.
    """
    x = np.asarray(positions, dtype=float)
    p = np.asarray(momenta, dtype=float)
    if x.ndim != 2 or x.shape[1] != 2 or p.shape != x.shape:
        raise ValueError("positions and momenta must both have shape (N, 2)")
    n = x.shape[0]
    for j in range(n):
        for k in range(j + 1, n):
            if np.array_equal(x[j], x[k]):
                raise ValueError("coincident positions")

    kinetic_trap = float(np.sum(p**2) + np.sum(x**2))

    # a0[j, k] = A0(x_j - x_k) for j != k
    diff = x[:, None, :] - x[None, :, :]
    dist2 = np.sum(diff**2, axis=-1)
    np.fill_diagonal(dist2, 1.0)
    a0 = _perp(diff) / dist2[..., None]
    mask = ~np.eye(n, dtype=bool)

    cross = 2.0 * alpha * float(np.einsum("jd,jkd->", p, a0 * mask[..., None]))

    three_body = 0.0
    for j in range(n):
        for k in range(n):
            if k == j:
                continue
            for l in range(n):
                if l == j or l == k:
                    continue
                three_body += float(a0[j, k] @ a0[j, l])
    three_body *= alpha**2

    two_body = alpha**2 * float(np.sum(1.0 / dist2[mask]))

    return ClassicalTerms(kinetic_trap, cross, three_body, two_body)

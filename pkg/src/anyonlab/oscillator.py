"""1D harmonic-oscillator eigenbasis and Gauss-Hermite quadrature.

Modes are evaluated with the normalized three-term recurrence, which stays
bounded far beyond the n ~ 30 overflow point of raw Hermite polynomials.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_hermite

MAX_MODE = 200
DEFAULT_QUAD_DEGREE = 128


def hermite_functions(n_max, x):
    """Values of the normalized oscillator modes 0..n_max at points x.

    Returns an array of shape (n_max+1,) + x.shape.
    """
    if n_max < 0 or n_max > MAX_MODE:
        raise ValueError(f"mode index must be in [0, {MAX_MODE}]")
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = np.pi ** (-0.25) * np.exp(-0.5 * x**2)
    if n_max >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = np.sqrt(2.0 / (n + 1)) * x * out[n] - np.sqrt(n / (n + 1)) * out[n - 1]
    return out


def hermite_function_derivatives(n_max, x):
    """d/dx of the normalized modes 0..n_max, via v_n' = sqrt(2n) v_{n-1} - x v_n."""
    v = hermite_functions(n_max, x)
    x = np.asarray(x, dtype=float)
    dv = np.empty_like(v)
    dv[0] = -x * v[0]
    for n in range(1, n_max + 1):
        dv[n] = np.sqrt(2.0 * n) * v[n - 1] - x * v[n]
    return dv


@dataclass(frozen=True)
class OscillatorMode:
    """Eigenpair of -d^2/dx^2 + x^2: energy 2n+1, parity (-1)^n."""

    index: int
    energy: float

    def __call__(self, x):
        return hermite_functions(self.index, x)[self.index]

    @property
    def parity(self):
        return 1 if self.index % 2 == 0 else -1


def ho_mode(n):
    """Normalized oscillator mode of index n (capacity n <= 200)."""
    if n < 0 or n > MAX_MODE:
        raise ValueError(f"mode index must be in [0, {MAX_MODE}]")
    return OscillatorMode(index=int(n), energy=float(2 * n + 1))


@dataclass(frozen=True)
class TransverseGround:
    """Ground state of -d^2/dy^2 + y^2/eps^2: energy 1/eps, width sqrt(eps)."""

    epsilon: float
    energy: float

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return (np.pi * self.epsilon) ** (-0.25) * np.exp(-(y**2) / (2.0 * self.epsilon))


def transverse_ground(epsilon):
    if epsilon <= 0:
        raise ValueError("anisotropy epsilon must be positive")
    return TransverseGround(epsilon=float(epsilon), energy=1.0 / epsilon)


def gauss_hermite(n):
    """Nodes and weights for weight exp(-x^2), exact to degree 2n-1.

    Nodes are symmetrized about zero so that reversal antisymmetry is exact.
    """
    if n < 1 or n > MAX_MODE:
        raise ValueError(f"quadrature degree must be in [1, {MAX_MODE}]")
    z, w = roots_hermite(n)
    z = 0.5 * (z - z[::-1])
    w = 0.5 * (w + w[::-1])
    return z, w


def quad_inner(f, g, degree=DEFAULT_QUAD_DEGREE):
    """L2 inner product of two functions that decay like exp(-x^2/2)."""
    z, w = gauss_hermite(degree)
    return float(np.sum(w * np.exp(z**2) * f(z) * g(z)))

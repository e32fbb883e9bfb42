"""Closed-form benchmark solutions and their compensating forcing.

With unit exchange and zero composite source the dynamics reduce to

    m_t = a Lap m + a |grad m|^2 m - m x Lap m + g

and the benchmark fields

    1D: m = (cos(u) sin t, sin(u) sin t, cos t),  u = cos(pi x)
    3D: same with u = cos(pi x) cos(pi y) cos(pi z)

are unit length for all (x, t) and satisfy the homogeneous Neumann
condition (u is even about every wall).  The matching forcing is

    g = m_t - a Lap m - a |grad m|^2 m + m x Lap m

evaluated analytically; note the trailing m factor on the |grad m|^2 term,
required for the expression to be a vector.  Everything reduces to the
scalar profiles u, |grad u|^2, Lap u, which are precomputed per grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .grid import GridSpec, VectorField3, apply_neumann_ghost


@dataclass(frozen=True)
class ManufacturedSolution:
    dim: int  # 1 or 3

    def __post_init__(self):
        if self.dim not in (1, 3):
            raise ConfigError("manufactured solutions exist for dim 1 and 3")

    def bind(self, grid: GridSpec) -> "BoundSolution":
        if self.dim == 1 and grid.dim != 1:
            raise ConfigError("1D manufactured solution needs an x-only grid")
        if self.dim == 3 and grid.dim != 3:
            raise ConfigError("3D manufactured solution needs a full 3D grid")
        x, y, z = grid.meshgrid()
        pi = np.pi
        if self.dim == 1:
            u = np.cos(pi * x) * np.ones((1, grid.ny, grid.nz))
            grad_u_sq = (pi * np.sin(pi * x))**2 * np.ones((1, grid.ny, grid.nz))
            lap_u = -pi**2 * u
        else:
            cx, sx = np.cos(pi * x), np.sin(pi * x)
            cy, sy = np.cos(pi * y), np.sin(pi * y)
            cz, sz = np.cos(pi * z), np.sin(pi * z)
            u = cx * cy * cz
            grad_u_sq = pi**2 * ((sx * cy * cz)**2 + (cx * sy * cz)**2
                                 + (cx * cy * sz)**2)
            lap_u = -3.0 * pi**2 * u
        u = np.broadcast_to(u, grid.counts).copy()
        grad_u_sq = np.broadcast_to(grad_u_sq, grid.counts).copy()
        lap_u = np.broadcast_to(lap_u, grid.counts).copy()
        return BoundSolution(grid, np.cos(u), np.sin(u), grad_u_sq, lap_u)


@dataclass(frozen=True)
class BoundSolution:
    """Per-grid precomputation of the benchmark profiles."""

    grid: GridSpec
    cos_u: np.ndarray
    sin_u: np.ndarray
    grad_u_sq: np.ndarray
    lap_u: np.ndarray

    def m_interior(self, t: float) -> np.ndarray:
        s, c = np.sin(t), np.cos(t)
        return np.stack((self.cos_u * s, self.sin_u * s,
                         np.full(self.grid.counts, c)))

    def sample(self, t: float) -> VectorField3:
        out = VectorField3.from_interior(self.grid, self.m_interior(t), t)
        return apply_neumann_ghost(out)

    def sampler(self, t: float) -> VectorField3:
        return self.sample(t)

    def laplacian_interior(self, t: float) -> np.ndarray:
        s = np.sin(t)
        l1 = (-self.sin_u * self.lap_u - self.cos_u * self.grad_u_sq) * s
        l2 = (self.cos_u * self.lap_u - self.sin_u * self.grad_u_sq) * s
        return np.stack((l1, l2, np.zeros(self.grid.counts)))

    def forcing(self, alpha: float) -> "ManufacturedForcing":
        return ManufacturedForcing(self, alpha)


@dataclass(frozen=True)
class ManufacturedForcing:
    """g(x, t) for the reduced model; satisfies the ForcingSpec protocol."""

    solution: BoundSolution
    alpha: float

    def g_interior(self, t: float) -> np.ndarray:
        sol = self.solution
        a = self.alpha
        s, c = np.sin(t), np.cos(t)
        cu, su = sol.cos_u, sol.sin_u
        gsq, lap_u = sol.grad_u_sq, sol.lap_u
        l1 = (-su * lap_u - cu * gsq) * s
        l2 = (cu * lap_u - su * gsq) * s
        gn_m = gsq * s * s          # |grad m|^2
        g1 = cu * c - a * l1 - a * gn_m * cu * s - c * l2
        g2 = su * c - a * l2 - a * gn_m * su * s + c * l1
        g3 = -s - a * gn_m * c + s * s * lap_u
        return np.stack((g1, g2, g3))

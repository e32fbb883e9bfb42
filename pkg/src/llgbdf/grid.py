"""Cell-centered structured grid with mirror ghost layers and long-stencil
difference operators.

Fields live on cell centers x_{i-1/2} = (i - 1/2) h with two ghost cells per
side of every active axis; an axis with a single cell is an invariant
direction (derivatives along it are zero by convention).  The homogeneous
Neumann condition is enforced by symmetric reflection of the interior into
the ghosts:

    m[0] = m[1],  m[-1] = m[2],  m[N+1] = m[N],  m[N+2] = m[N-1]

Fourth-order first/second differences use the 5-point long stencils

    d1: (f[-2] - 8 f[-1] + 8 f[+1] - f[+2]) / (12 h)
    d2: (-f[-2] + 16 f[-1] - 30 f[0] + 16 f[+1] - f[+2]) / (12 h^2)

with 3-point second-order variants available for runs that need them.  The
discrete Laplacian is the sum of the per-axis second differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import backend
from .errors import ConfigError

GHOST = 2


@dataclass(frozen=True)
class GridSpec:
    """Grid dimensions and nondimensional mesh geometry.

    Counts of 1 mark invariant directions; every active axis needs at least
    4 cells so both ghost layers can be mirrored from distinct interior
    cells.
    """

    nx: int
    ny: int
    nz: int
    lx: float = 1.0
    ly: float = 1.0
    lz: float = 1.0
    hx: float = field(init=False)
    hy: float = field(init=False)
    hz: float = field(init=False)

    def __post_init__(self):
        for n, l, name in ((self.nx, self.lx, "x"), (self.ny, self.ly, "y"),
                           (self.nz, self.lz, "z")):
            if n < 1:
                raise ConfigError(f"n{name} must be >= 1, got {n}")
            if n > 1 and n < 4:
                raise ConfigError(
                    f"active axis {name} needs >= 4 cells for the ghost "
                    f"mirror rules, got {n}"
                )
            if l <= 0.0:
                raise ConfigError(f"l{name} must be positive, got {l}")
        object.__setattr__(self, "hx", self.lx / self.nx)
        object.__setattr__(self, "hy", self.ly / self.ny)
        object.__setattr__(self, "hz", self.lz / self.nz)

    @classmethod
    def line(cls, n: int, length: float = 1.0) -> "GridSpec":
        return cls(n, 1, 1, length, 1.0, 1.0)

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.nx, self.ny, self.nz)

    @property
    def spacings(self) -> tuple[float, float, float]:
        return (self.hx, self.hy, self.hz)

    @property
    def active(self) -> tuple[bool, bool, bool]:
        return (self.nx > 1, self.ny > 1, self.nz > 1)

    @property
    def dim(self) -> int:
        return sum(self.active)

    @property
    def padded_shape(self) -> tuple[int, int, int]:
        return tuple(n + 2 * GHOST if n > 1 else 1 for n in self.counts)

    @property
    def interior(self) -> tuple[slice, slice, slice]:
        return tuple(slice(GHOST, GHOST + n) if n > 1 else slice(0, 1)
                     for n in self.counts)

    @property
    def cell_volume(self) -> float:
        """Product of mesh sizes over active axes (the l2 weight)."""
        vol = 1.0
        for act, h in zip(self.active, self.spacings):
            if act:
                vol *= h
        return vol

    @property
    def n_cells(self) -> int:
        return self.nx * self.ny * self.nz

    def axis_centers(self, axis: int) -> np.ndarray:
        n = self.counts[axis]
        h = self.spacings[axis]
        return (np.arange(n) + 0.5) * h

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Interior cell-center coordinates, broadcastable to (nx, ny, nz)."""
        x = self.axis_centers(0)[:, None, None]
        y = self.axis_centers(1)[None, :, None]
        z = self.axis_centers(2)[None, None, :]
        return x, y, z


@dataclass
class VectorField3:
    """Three-component cell-centered field with ghost padding.

    ``data`` has shape ``(3, *grid.padded_shape)``; only interior values are
    meaningful until :func:`apply_neumann_ghost` runs.
    """

    grid: GridSpec
    data: np.ndarray
    time_tag: float = 0.0

    @classmethod
    def zeros(cls, grid: GridSpec, time_tag: float = 0.0) -> "VectorField3":
        return cls(grid, np.zeros((3, *grid.padded_shape)), time_tag)

    @classmethod
    def from_interior(cls, grid: GridSpec, interior: np.ndarray,
                      time_tag: float = 0.0) -> "VectorField3":
        f = cls.zeros(grid, time_tag)
        f.interior[...] = interior
        return f

    @classmethod
    def uniform(cls, grid: GridSpec, vec, time_tag: float = 0.0) -> "VectorField3":
        f = cls.zeros(grid, time_tag)
        for c in range(3):
            f.interior[c] = vec[c]
        return f

    @property
    def interior(self) -> np.ndarray:
        return self.data[(slice(None), *self.grid.interior)]

    def interior_flat(self) -> np.ndarray:
        """Component-major flattened copy of the interior (solver layout)."""
        return self.interior.reshape(3, -1).ravel()

    def set_interior_flat(self, flat: np.ndarray) -> None:
        self.interior[...] = flat.reshape(3, *self.grid.counts)

    def copy(self) -> "VectorField3":
        return VectorField3(self.grid, self.data.copy(), self.time_tag)


def apply_neumann_ghost(f: VectorField3) -> VectorField3:
    """Mirror-fill all ghost layers in place and return the field.

    Grids that cannot support the mirror rules are rejected at GridSpec
    construction, so this cannot fail on a well-formed field.
    """
    backend.kernels.fill_ghosts(f.data)
    return f


def _d1_coeff(grid: GridSpec, order: int) -> tuple[float, float, float]:
    if order == 4:
        return tuple(1.0 / (12.0 * h) if act else 0.0
                     for act, h in zip(grid.active, grid.spacings))
    return tuple(1.0 / (2.0 * h) if act else 0.0
                 for act, h in zip(grid.active, grid.spacings))


def _d2_coeff(grid: GridSpec, order: int) -> tuple[float, float, float]:
    if order == 4:
        return tuple(1.0 / (12.0 * h * h) if act else 0.0
                     for act, h in zip(grid.active, grid.spacings))
    return tuple(1.0 / (h * h) if act else 0.0
                 for act, h in zip(grid.active, grid.spacings))


def _shift(view: np.ndarray, grid: GridSpec, axis: int, off: int) -> np.ndarray:
    sl = [slice(None), *grid.interior]
    n = grid.counts[axis]
    sl[1 + axis] = slice(GHOST + off, GHOST + n + off)
    return view[tuple(sl)]


def d1(f: VectorField3, axis: int, order: int = 4) -> VectorField3:
    """Centered first difference along ``axis`` (ghosts must be filled).
    Inactive axis: returns the zero field."""
    out = VectorField3.zeros(f.grid, f.time_tag)
    if not f.grid.active[axis]:
        return out
    c = _d1_coeff(f.grid, order)[axis]
    if order == 4:
        val = (8.0 * (_shift(f.data, f.grid, axis, +1) - _shift(f.data, f.grid, axis, -1))
               - (_shift(f.data, f.grid, axis, +2) - _shift(f.data, f.grid, axis, -2))) * c
    elif order == 2:
        val = (_shift(f.data, f.grid, axis, +1) - _shift(f.data, f.grid, axis, -1)) * c
    else:
        raise ConfigError(f"unsupported stencil order {order}")
    out.interior[...] = val
    return out


def d2(f: VectorField3, axis: int, order: int = 4) -> VectorField3:
    """Centered second difference along ``axis`` (ghosts must be filled)."""
    out = VectorField3.zeros(f.grid, f.time_tag)
    if not f.grid.active[axis]:
        return out
    c = _d2_coeff(f.grid, order)[axis]
    core = _shift(f.data, f.grid, axis, 0)
    s1 = ((_shift(f.data, f.grid, axis, +1) - core)
          - (core - _shift(f.data, f.grid, axis, -1)))
    if order == 4:
        s2 = ((_shift(f.data, f.grid, axis, +2) - core)
              - (core - _shift(f.data, f.grid, axis, -2)))
        val = (16.0 * s1 - s2) * c
    elif order == 2:
        val = s1 * c
    else:
        raise ConfigError(f"unsupported stencil order {order}")
    out.interior[...] = val
    return out


def laplacian(f: VectorField3, order: int = 4,
              out: VectorField3 | None = None) -> VectorField3:
    """Sum of per-axis second differences (ghosts must be filled)."""
    if out is None:
        out = VectorField3.zeros(f.grid, f.time_tag)
    if order == 4:
        backend.kernels.laplacian4(f.data, out.data, *_d2_coeff(f.grid, 4))
    elif order == 2:
        backend.kernels.laplacian2(f.data, out.data, *_d2_coeff(f.grid, 2))
    else:
        raise ConfigError(f"unsupported stencil order {order}")
    return out


def grad_norm_sq(f: VectorField3, order: int = 4) -> np.ndarray:
    """Pointwise |grad m|^2: sum over axes and components of squared first
    differences, returned on the padded scalar layout (interior filled)."""
    out = np.zeros(f.grid.padded_shape)
    if order == 4:
        backend.kernels.grad_norm_sq4(f.data, out, *_d1_coeff(f.grid, 4))
    elif order == 2:
        backend.kernels.grad_norm_sq2(f.data, out, *_d1_coeff(f.grid, 2))
    else:
        raise ConfigError(f"unsupported stencil order {order}")
    return out


class Norms(NamedTuple):
    linf: float
    l2: float
    h1: float


def norms(e: VectorField3) -> Norms:
    """Discrete error norms.

    linf is the max over interior cells and components; l2 carries the cell
    volume weight so it approximates the continuum L2 norm; h1 adds the l2
    norms of the fourth-order first differences (ghosts of ``e`` are mirror
    filled for that purpose).
    """
    v = e.interior
    linf = float(np.abs(v).max())
    vol = e.grid.cell_volume
    l2sq = float((v * v).sum()) * vol
    apply_neumann_ghost(e)
    h1sq = l2sq
    for axis in range(3):
        if not e.grid.active[axis]:
            continue
        g = d1(e, axis, order=4).interior
        h1sq += float((g * g).sum()) * vol
    return Norms(linf, np.sqrt(l2sq), np.sqrt(h1sq))

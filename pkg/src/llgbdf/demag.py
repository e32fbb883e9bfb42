"""Stray (demagnetization) field via FFT convolution with the cell-averaged
Newell tensor.

The field of a magnetization distribution on a rectangular grid is a lattice
convolution h_s[i] = sum_j N(i - j) m[j] with the 3x3 symmetric demag tensor
N.  The tensor is tabulated once per grid on the zero-padded (2nx, 2ny, 2nz)
lattice (wrap-around lag indexing) and kept in the frequency domain; each
evaluation is three forward FFTs, a spectral tensor-vector product, and
three inverse FFTs.

Sign/normalization convention: a uniformly magnetized cube produces
<h_s> = -m/3, i.e. the lag-0 tensor of an isolated cubic cell is
diag(-1/3, -1/3, -1/3).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import ConfigError
from .grid import GridSpec, VectorField3

#: component order of the tensor tables
_XX, _XY, _XZ, _YY, _YZ, _ZZ = range(6)


def _padded_extents(grid: GridSpec) -> tuple[int, int, int]:
    return (2 * grid.nx, 2 * grid.ny, 2 * grid.nz)


def _real_space_table(grid: GridSpec) -> np.ndarray:
    nxe, nye, nze = _padded_extents(grid)
    return backend.kernels.newell_table(
        nxe, nye, nze, grid.nx, grid.ny, grid.nz,
        grid.hx, grid.hy, grid.hz,
    )


@dataclass(frozen=True)
class DemagKernel:
    """Spectral demag tensor for one grid; immutable and shareable."""

    grid: GridSpec
    spectral: np.ndarray   # (6, 2nx, 2ny, nz_r) complex

    @property
    def self_tensor(self) -> np.ndarray:
        """Lag-0 tensor reconstructed from the spectrum (3x3 matrix)."""
        nxe, nye, nze = _padded_extents(self.grid)
        real = np.fft.irfftn(self.spectral, s=(nxe, nye, nze), axes=(1, 2, 3))
        n0 = real[:, 0, 0, 0]
        return np.array([[n0[_XX], n0[_XY], n0[_XZ]],
                         [n0[_XY], n0[_YY], n0[_YZ]],
                         [n0[_XZ], n0[_YZ], n0[_ZZ]]])


def build_demag_kernel(grid: GridSpec) -> DemagKernel:
    """Tabulate the Newell tensor for ``grid`` and transform it.

    O(N log N) after the one-off O(N) tabulation; reuse the kernel across
    steps and runs on the same grid.
    """
    if min(grid.lx, grid.ly, grid.lz) <= 0.0:
        raise ConfigError("demag kernel needs positive physical extents")
    table = _real_space_table(grid)
    spectral = np.fft.rfftn(table, axes=(1, 2, 3))
    return DemagKernel(grid=grid, spectral=spectral)


def stray_field(m: VectorField3, kern: DemagKernel) -> VectorField3:
    """h_s at every interior cell (zero-padded FFT convolution)."""
    if m.grid != kern.grid:
        raise ConfigError("magnetization grid does not match demag kernel grid")
    grid = m.grid
    nxe, nye, nze = _padded_extents(grid)
    pad = np.zeros((3, nxe, nye, nze))
    pad[:, :grid.nx, :grid.ny, :grid.nz] = m.interior
    mf = np.fft.rfftn(pad, axes=(1, 2, 3))
    s = kern.spectral
    hf = np.empty_like(mf)
    hf[0] = s[_XX] * mf[0] + s[_XY] * mf[1] + s[_XZ] * mf[2]
    hf[1] = s[_XY] * mf[0] + s[_YY] * mf[1] + s[_YZ] * mf[2]
    hf[2] = s[_XZ] * mf[0] + s[_YZ] * mf[1] + s[_ZZ] * mf[2]
    h = np.fft.irfftn(hf, s=(nxe, nye, nze), axes=(1, 2, 3))
    out = VectorField3.zeros(grid, m.time_tag)
    out.interior[...] = h[:, :grid.nx, :grid.ny, :grid.nz]
    return out


def direct_stray_field(m: VectorField3) -> VectorField3:
    """O(N^2) pairwise-summation oracle for :func:`stray_field`.

    Shares the Newell tabulation but not the FFT layout or transform; only
    meant for small grids.
    """
    grid = m.grid
    if grid.n_cells > 20000:
        raise ConfigError("direct summation oracle limited to small grids")
    table = _real_space_table(grid)
    nxe, nye, nze = _padded_extents(grid)
    v = m.interior
    out = VectorField3.zeros(grid, m.time_tag)
    jx = np.arange(grid.nx)[:, None, None]
    jy = np.arange(grid.ny)[None, :, None]
    jz = np.arange(grid.nz)[None, None, :]
    for ix in range(grid.nx):
        tx = (ix - jx) % nxe
        for iy in range(grid.ny):
            ty = (iy - jy) % nye
            for iz in range(grid.nz):
                tz = (iz - jz) % nze
                nxx = table[_XX, tx, ty, tz]
                nxy = table[_XY, tx, ty, tz]
                nxz = table[_XZ, tx, ty, tz]
                nyy = table[_YY, tx, ty, tz]
                nyz = table[_YZ, tx, ty, tz]
                nzz = table[_ZZ, tx, ty, tz]
                out.interior[0, ix, iy, iz] = float(
                    (nxx * v[0] + nxy * v[1] + nxz * v[2]).sum())
                out.interior[1, ix, iy, iz] = float(
                    (nxy * v[0] + nyy * v[1] + nyz * v[2]).sum())
                out.interior[2, ix, iy, iz] = float(
                    (nxz * v[0] + nyz * v[1] + nzz * v[2]).sum())
    return out

"""Pure-numpy reference implementations of the hot kernels.

Every function here has a numba twin in ``_kernels_numba`` with an identical
signature; ``backend`` picks one of the two modules at import time.  Arrays
are laid out component-major, ``(3, sx, sy, sz)``, where an axis of size > 1
carries two ghost layers per side (interior slice ``2:size-2``) and an axis
of size 1 is an invariant direction.

Second-difference stencils are evaluated as differences of one-sided
differences (never as a single weighted sum of O(30|f|) terms): on fine
meshes the naive form loses ~eps*30|f|/h^2 absolute accuracy, which is
enough to pollute the smallest convergence-table entries.
"""

from __future__ import annotations

import numpy as np


def _interior(size: int) -> slice:
    return slice(2, size - 2) if size > 1 else slice(0, 1)


def _shifted(data: np.ndarray, axis: int, off: int):
    """Interior view of ``data`` shifted by ``off`` cells along ``axis``."""
    sl = [slice(None)] + [_interior(s) for s in data.shape[1:]]
    size = data.shape[1 + axis]
    sl[1 + axis] = slice(2 + off, size - 2 + off)
    return data[tuple(sl)]


def fill_ghosts(data: np.ndarray) -> None:
    """Mirror-fill both ghost layers on every active axis, in place.

    Ghost <- interior assignment: layer 1 mirrors layer 2, layer 0 mirrors
    layer 3 (and symmetrically at the far wall).
    """
    for axis in range(3):
        size = data.shape[1 + axis]
        if size == 1:
            continue
        idx = [slice(None)] * 4

        def put(dst, src, idx=idx, axis=axis):
            idx_d = list(idx)
            idx_s = list(idx)
            idx_d[1 + axis] = dst
            idx_s[1 + axis] = src
            data[tuple(idx_d)] = data[tuple(idx_s)]

        put(1, 2)
        put(0, 3)
        put(size - 2, size - 3)
        put(size - 1, size - 4)


def laplacian4(data: np.ndarray, out: np.ndarray,
               i12hx2: float, i12hy2: float, i12hz2: float) -> None:
    """Fourth-order long-stencil Laplacian on the interior; ghosts of ``out``
    are left untouched.  Inactive axes pass coefficient 0."""
    core = _shifted(data, 0, 0)
    acc = np.zeros_like(core)
    for axis, c in ((0, i12hx2), (1, i12hy2), (2, i12hz2)):
        if c == 0.0 or data.shape[1 + axis] == 1:
            continue
        fp1 = _shifted(data, axis, +1)
        fm1 = _shifted(data, axis, -1)
        fp2 = _shifted(data, axis, +2)
        fm2 = _shifted(data, axis, -2)
        s1 = (fp1 - core) - (core - fm1)
        s2 = (fp2 - core) - (core - fm2)
        acc += (16.0 * s1 - s2) * c
    _shifted(out, 0, 0)[...] = acc


def laplacian2(data: np.ndarray, out: np.ndarray,
               ihx2: float, ihy2: float, ihz2: float) -> None:
    """Classic 3-point Laplacian (second order) on the interior."""
    core = _shifted(data, 0, 0)
    acc = np.zeros_like(core)
    for axis, c in ((0, ihx2), (1, ihy2), (2, ihz2)):
        if c == 0.0 or data.shape[1 + axis] == 1:
            continue
        fp1 = _shifted(data, axis, +1)
        fm1 = _shifted(data, axis, -1)
        acc += ((fp1 - core) - (core - fm1)) * c
    _shifted(out, 0, 0)[...] = acc


def combine(x: np.ndarray, lap: np.ndarray, mhat: np.ndarray, out: np.ndarray,
            c0: float, a_cross: float, a_cross2: float, a_lap: float) -> None:
    """out = c0*x + a_cross*(mhat x lap) + a_cross2*(mhat x (mhat x lap))
    + a_lap*lap, on the interior.  This is the shared form of every scheme's
    implicit operator action (lap = Laplacian of x)."""
    xs = _shifted(x, 0, 0)
    ls = _shifted(lap, 0, 0)
    ms = _shifted(mhat, 0, 0)
    c1x = ms[1] * ls[2] - ms[2] * ls[1]
    c1y = ms[2] * ls[0] - ms[0] * ls[2]
    c1z = ms[0] * ls[1] - ms[1] * ls[0]
    os_ = _shifted(out, 0, 0)
    os_[0] = c0 * xs[0] + a_cross * c1x + a_lap * ls[0]
    os_[1] = c0 * xs[1] + a_cross * c1y + a_lap * ls[1]
    os_[2] = c0 * xs[2] + a_cross * c1z + a_lap * ls[2]
    if a_cross2 != 0.0:
        os_[0] += a_cross2 * (ms[1] * c1z - ms[2] * c1y)
        os_[1] += a_cross2 * (ms[2] * c1x - ms[0] * c1z)
        os_[2] += a_cross2 * (ms[0] * c1y - ms[1] * c1x)


def grad_norm_sq4(data: np.ndarray, out: np.ndarray,
                  i12hx: float, i12hy: float, i12hz: float) -> None:
    """Pointwise sum over axes and components of the squared fourth-order
    first difference; ``out`` has scalar layout ``(sx, sy, sz)``."""
    acc = np.zeros(tuple(_interior(s).stop - _interior(s).start
                         for s in data.shape[1:]))
    for axis, c in ((0, i12hx), (1, i12hy), (2, i12hz)):
        if c == 0.0 or data.shape[1 + axis] == 1:
            continue
        fp1 = _shifted(data, axis, +1)
        fm1 = _shifted(data, axis, -1)
        fp2 = _shifted(data, axis, +2)
        fm2 = _shifted(data, axis, -2)
        d = (8.0 * (fp1 - fm1) - (fp2 - fm2)) * c
        acc += (d * d).sum(axis=0)
    out[tuple(_interior(s) for s in out.shape)] = acc


def grad_norm_sq2(data: np.ndarray, out: np.ndarray,
                  i2hx: float, i2hy: float, i2hz: float) -> None:
    """Second-order variant of :func:`grad_norm_sq4`."""
    acc = np.zeros(tuple(_interior(s).stop - _interior(s).start
                         for s in data.shape[1:]))
    for axis, c in ((0, i2hx), (1, i2hy), (2, i2hz)):
        if c == 0.0 or data.shape[1 + axis] == 1:
            continue
        d = (_shifted(data, axis, +1) - _shifted(data, axis, -1)) * c
        acc += (d * d).sum(axis=0)
    out[tuple(_interior(s) for s in out.shape)] = acc


def normalize(data: np.ndarray, floor: float) -> float:
    """Normalize every interior cell vector to unit length, in place.

    Cells with |m| < floor are left untouched (so a singular cell remains
    locatable); returns the minimum |m| encountered before normalization."""
    v = _shifted(data, 0, 0)
    norm = np.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
    min_norm = float(norm.min()) if norm.size else 0.0
    np.divide(v, norm, out=v, where=norm >= floor)
    return min_norm


def newell_table(nxe: int, nye: int, nze: int, nx: int, ny: int, nz: int,
                 dx: float, dy: float, dz: float) -> np.ndarray:
    """Tabulate the six cell-averaged demagnetization tensor components on
    the zero-padded lattice ``(nxe, nye, nze)`` with wrap-around lags.

    Index ``t`` along an axis of extent ``ne`` encodes the cell lag
    ``((t + n) % ne) - n``.  Output shape is ``(6, nxe, nye, nze)`` ordered
    (xx, xy, xz, yy, yz, zz)."""
    tx = np.arange(nxe)
    ty = np.arange(nye)
    tz = np.arange(nze)
    lag_x = ((tx + nx) % nxe) - nx
    lag_y = ((ty + ny) % nye) - ny
    lag_z = ((tz + nz) % nze) - nz
    lx = lag_x[:, None, None].astype(np.float64)
    ly = lag_y[None, :, None].astype(np.float64)
    lz = lag_z[None, None, :].astype(np.float64)

    out = np.zeros((6, nxe, nye, nze))
    scale = -1.0 / (4.0 * np.pi * dx * dy * dz)
    # (antiderivative, argument permutation) per tensor component
    plans = ((_newell_f, (0, 1, 2)), (_newell_g, (0, 1, 2)),
             (_newell_g, (0, 2, 1)), (_newell_f, (1, 2, 0)),
             (_newell_g, (1, 2, 0)), (_newell_f, (2, 0, 1)))
    w = (-1.0, 2.0, -1.0)
    for c, (func, perm) in enumerate(plans):
        acc = np.zeros((nxe, nye, nze))
        for ox in (-1, 0, 1):
            for oy in (-1, 0, 1):
                for oz in (-1, 0, 1):
                    weight = w[ox + 1] * w[oy + 1] * w[oz + 1]
                    args = ((lx + ox) * dx, (ly + oy) * dy, (lz + oz) * dz)
                    a = args[perm[0]]
                    b = args[perm[1]]
                    cc = args[perm[2]]
                    acc += weight * func(a, b, cc)
        out[c] = scale * acc
    return out


# Guards 0/0 at coincident-corner evaluations.  Must be small against any
# cell size yet large enough that ratios like y/eps stay finite (an inf
# inside asinh would turn the 0-prefactor terms into NaN).
_NEWELL_EPS = 1e-30


def _newell_f(x, y, z):
    x = np.abs(x)
    y = np.abs(y)
    z = np.abs(z)
    r = np.sqrt(x * x + y * y + z * z)
    return (0.5 * y * (z * z - x * x) * np.arcsinh(y / (np.sqrt(x * x + z * z) + _NEWELL_EPS))
            + 0.5 * z * (y * y - x * x) * np.arcsinh(z / (np.sqrt(x * x + y * y) + _NEWELL_EPS))
            - x * y * z * np.arctan(y * z / (x * r + _NEWELL_EPS))
            + (x * x - 0.5 * (y * y + z * z)) * r / 3.0)


def _newell_g(x, y, z):
    z = np.abs(z)
    r = np.sqrt(x * x + y * y + z * z)
    return (x * y * z * np.arcsinh(z / (np.sqrt(x * x + y * y) + _NEWELL_EPS))
            + y * (3.0 * z * z - y * y) / 6.0 * np.arcsinh(x / (np.sqrt(y * y + z * z) + _NEWELL_EPS))
            + x * (3.0 * z * z - x * x) / 6.0 * np.arcsinh(y / (np.sqrt(x * x + z * z) + _NEWELL_EPS))
            - z * z * z / 6.0 * np.arctan(x * y / (z * r + _NEWELL_EPS))
            - z * y * y * 0.5 * np.arctan(x * z / (y * r + _NEWELL_EPS))
            - z * x * x * 0.5 * np.arctan(y * z / (x * r + _NEWELL_EPS))
            - x * y * r / 3.0)

"""Numba-jitted twins of the kernels in ``_kernels_numpy``.

Same signatures, same semantics; loops are written out so the stencil,
cross-product, and Newell tabulation work runs at native speed.  Elementwise
kernels parallelize over the slowest interior axis (each cell written once,
so results do not depend on the thread count); reductions that feed outputs
stay serial or use order-independent combiners (min)."""

from __future__ import annotations

import numpy as np
from numba import njit, prange


@njit(cache=True)
def fill_ghosts(data):
    _, sx, sy, sz = data.shape
    if sx > 1:
        data[:, 1, :, :] = data[:, 2, :, :]
        data[:, 0, :, :] = data[:, 3, :, :]
        data[:, sx - 2, :, :] = data[:, sx - 3, :, :]
        data[:, sx - 1, :, :] = data[:, sx - 4, :, :]
    if sy > 1:
        data[:, :, 1, :] = data[:, :, 2, :]
        data[:, :, 0, :] = data[:, :, 3, :]
        data[:, :, sy - 2, :] = data[:, :, sy - 3, :]
        data[:, :, sy - 1, :] = data[:, :, sy - 4, :]
    if sz > 1:
        data[:, :, :, 1] = data[:, :, :, 2]
        data[:, :, :, 0] = data[:, :, :, 3]
        data[:, :, :, sz - 2] = data[:, :, :, sz - 3]
        data[:, :, :, sz - 1] = data[:, :, :, sz - 4]


@njit(cache=True)
def _bounds(size):
    if size > 1:
        return 2, size - 2
    return 0, 1


@njit(cache=True, parallel=True)
def laplacian4(data, out, i12hx2, i12hy2, i12hz2):
    _, sx, sy, sz = data.shape
    x0, x1 = _bounds(sx)
    y0, y1 = _bounds(sy)
    z0, z1 = _bounds(sz)
    ax = i12hx2 != 0.0 and sx > 1
    ay = i12hy2 != 0.0 and sy > 1
    az = i12hz2 != 0.0 and sz > 1
    for c in range(3):
        f = data[c]
        g = out[c]
        for i in prange(x0, x1):
            for j in range(y0, y1):
                for k in range(z0, z1):
                    v = f[i, j, k]
                    acc = 0.0
                    if ax:
                        s1 = (f[i + 1, j, k] - v) - (v - f[i - 1, j, k])
                        s2 = (f[i + 2, j, k] - v) - (v - f[i - 2, j, k])
                        acc += (16.0 * s1 - s2) * i12hx2
                    if ay:
                        s1 = (f[i, j + 1, k] - v) - (v - f[i, j - 1, k])
                        s2 = (f[i, j + 2, k] - v) - (v - f[i, j - 2, k])
                        acc += (16.0 * s1 - s2) * i12hy2
                    if az:
                        s1 = (f[i, j, k + 1] - v) - (v - f[i, j, k - 1])
                        s2 = (f[i, j, k + 2] - v) - (v - f[i, j, k - 2])
                        acc += (16.0 * s1 - s2) * i12hz2
                    g[i, j, k] = acc


@njit(cache=True, parallel=True)
def laplacian2(data, out, ihx2, ihy2, ihz2):
    _, sx, sy, sz = data.shape
    x0, x1 = _bounds(sx)
    y0, y1 = _bounds(sy)
    z0, z1 = _bounds(sz)
    ax = ihx2 != 0.0 and sx > 1
    ay = ihy2 != 0.0 and sy > 1
    az = ihz2 != 0.0 and sz > 1
    for c in range(3):
        f = data[c]
        g = out[c]
        for i in prange(x0, x1):
            for j in range(y0, y1):
                for k in range(z0, z1):
                    v = f[i, j, k]
                    acc = 0.0
                    if ax:
                        acc += ((f[i + 1, j, k] - v) - (v - f[i - 1, j, k])) * ihx2
                    if ay:
                        acc += ((f[i, j + 1, k] - v) - (v - f[i, j - 1, k])) * ihy2
                    if az:
                        acc += ((f[i, j, k + 1] - v) - (v - f[i, j, k - 1])) * ihz2
                    g[i, j, k] = acc


@njit(cache=True, parallel=True)
def combine(x, lap, mhat, out, c0, a_cross, a_cross2, a_lap):
    _, sx, sy, sz = x.shape
    x0, x1 = _bounds(sx)
    y0, y1 = _bounds(sy)
    z0, z1 = _bounds(sz)
    for i in prange(x0, x1):
        for j in range(y0, y1):
            for k in range(z0, z1):
                lx = lap[0, i, j, k]
                ly = lap[1, i, j, k]
                lz = lap[2, i, j, k]
                mx = mhat[0, i, j, k]
                my = mhat[1, i, j, k]
                mz = mhat[2, i, j, k]
                c1x = my * lz - mz * ly
                c1y = mz * lx - mx * lz
                c1z = mx * ly - my * lx
                ox = c0 * x[0, i, j, k] + a_cross * c1x + a_lap * lx
                oy = c0 * x[1, i, j, k] + a_cross * c1y + a_lap * ly
                oz = c0 * x[2, i, j, k] + a_cross * c1z + a_lap * lz
                if a_cross2 != 0.0:
                    ox += a_cross2 * (my * c1z - mz * c1y)
                    oy += a_cross2 * (mz * c1x - mx * c1z)
                    oz += a_cross2 * (mx * c1y - my * c1x)
                out[0, i, j, k] = ox
                out[1, i, j, k] = oy
                out[2, i, j, k] = oz


@njit(cache=True, parallel=True)
def grad_norm_sq4(data, out, i12hx, i12hy, i12hz):
    _, sx, sy, sz = data.shape
    x0, x1 = _bounds(sx)
    y0, y1 = _bounds(sy)
    z0, z1 = _bounds(sz)
    ax = i12hx != 0.0 and sx > 1
    ay = i12hy != 0.0 and sy > 1
    az = i12hz != 0.0 and sz > 1
    for i in prange(x0, x1):
        for j in range(y0, y1):
            for k in range(z0, z1):
                acc = 0.0
                for c in range(3):
                    f = data[c]
                    if ax:
                        d = (8.0 * (f[i + 1, j, k] - f[i - 1, j, k])
                             - (f[i + 2, j, k] - f[i - 2, j, k])) * i12hx
                        acc += d * d
                    if ay:
                        d = (8.0 * (f[i, j + 1, k] - f[i, j - 1, k])
                             - (f[i, j + 2, k] - f[i, j - 2, k])) * i12hy
                        acc += d * d
                    if az:
                        d = (8.0 * (f[i, j, k + 1] - f[i, j, k - 1])
                             - (f[i, j, k + 2] - f[i, j, k - 2])) * i12hz
                        acc += d * d
                out[i, j, k] = acc


@njit(cache=True, parallel=True)
def grad_norm_sq2(data, out, i2hx, i2hy, i2hz):
    _, sx, sy, sz = data.shape
    x0, x1 = _bounds(sx)
    y0, y1 = _bounds(sy)
    z0, z1 = _bounds(sz)
    ax = i2hx != 0.0 and sx > 1
    ay = i2hy != 0.0 and sy > 1
    az = i2hz != 0.0 and sz > 1
    for i in prange(x0, x1):
        for j in range(y0, y1):
            for k in range(z0, z1):
                acc = 0.0
                for c in range(3):
                    f = data[c]
                    if ax:
                        d = (f[i + 1, j, k] - f[i - 1, j, k]) * i2hx
                        acc += d * d
                    if ay:
                        d = (f[i, j + 1, k] - f[i, j - 1, k]) * i2hy
                        acc += d * d
                    if az:
                        d = (f[i, j, k + 1] - f[i, j, k - 1]) * i2hz
                        acc += d * d
                out[i, j, k] = acc


@njit(cache=True, parallel=True)
def normalize(data, floor):
    _, sx, sy, sz = data.shape
    x0, x1 = _bounds(sx)
    y0, y1 = _bounds(sy)
    z0, z1 = _bounds(sz)
    # per-slab minima instead of a cross-thread reduction
    minbuf = np.full(x1 - x0, np.inf)
    for ii in prange(x1 - x0):
        i = x0 + ii
        local = np.inf
        for j in range(y0, y1):
            for k in range(z0, z1):
                vx = data[0, i, j, k]
                vy = data[1, i, j, k]
                vz = data[2, i, j, k]
                n = np.sqrt(vx * vx + vy * vy + vz * vz)
                if n < local:
                    local = n
                if n >= floor:
                    data[0, i, j, k] = vx / n
                    data[1, i, j, k] = vy / n
                    data[2, i, j, k] = vz / n
        minbuf[ii] = local
    return minbuf.min()


_NEWELL_EPS = 1e-30


@njit(cache=True)
def _newell_f(x, y, z):
    x = abs(x)
    y = abs(y)
    z = abs(z)
    r = np.sqrt(x * x + y * y + z * z)
    return (0.5 * y * (z * z - x * x) * np.arcsinh(y / (np.sqrt(x * x + z * z) + _NEWELL_EPS))
            + 0.5 * z * (y * y - x * x) * np.arcsinh(z / (np.sqrt(x * x + y * y) + _NEWELL_EPS))
            - x * y * z * np.arctan(y * z / (x * r + _NEWELL_EPS))
            + (x * x - 0.5 * (y * y + z * z)) * r / 3.0)


@njit(cache=True)
def _newell_g(x, y, z):
    z = abs(z)
    r = np.sqrt(x * x + y * y + z * z)
    return (x * y * z * np.arcsinh(z / (np.sqrt(x * x + y * y) + _NEWELL_EPS))
            + y * (3.0 * z * z - y * y) / 6.0 * np.arcsinh(x / (np.sqrt(y * y + z * z) + _NEWELL_EPS))
            + x * (3.0 * z * z - x * x) / 6.0 * np.arcsinh(y / (np.sqrt(x * x + z * z) + _NEWELL_EPS))
            - z * z * z / 6.0 * np.arctan(x * y / (z * r + _NEWELL_EPS))
            - z * y * y * 0.5 * np.arctan(x * z / (y * r + _NEWELL_EPS))
            - z * x * x * 0.5 * np.arctan(y * z / (x * r + _NEWELL_EPS))
            - x * y * r / 3.0)


@njit(cache=True, parallel=True)
def newell_table(nxe, nye, nze, nx, ny, nz, dx, dy, dz):
    out = np.zeros((6, nxe, nye, nze))
    scale = -1.0 / (4.0 * np.pi * dx * dy * dz)
    for ti in prange(nxe):
        li = ((ti + nx) % nxe) - nx
        for tj in range(nye):
            lj = ((tj + ny) % nye) - ny
            for tk in range(nze):
                lk = ((tk + nz) % nze) - nz
                xx = 0.0
                xy = 0.0
                xz = 0.0
                yy = 0.0
                yz = 0.0
                zz = 0.0
                for ox in range(-1, 2):
                    wx = 2.0 if ox == 0 else -1.0
                    px = (li + ox) * dx
                    for oy in range(-1, 2):
                        wy = 2.0 if oy == 0 else -1.0
                        py = (lj + oy) * dy
                        for oz in range(-1, 2):
                            w = wx * wy * (2.0 if oz == 0 else -1.0)
                            pz = (lk + oz) * dz
                            xx += w * _newell_f(px, py, pz)
                            xy += w * _newell_g(px, py, pz)
                            xz += w * _newell_g(px, pz, py)
                            yy += w * _newell_f(py, pz, px)
                            yz += w * _newell_g(py, pz, px)
                            zz += w * _newell_f(pz, px, py)
                out[0, ti, tj, tk] = scale * xx
                out[1, ti, tj, tk] = scale * xy
                out[2, ti, tj, tk] = scale * xz
                out[3, ti, tj, tk] = scale * yy
                out[4, ti, tj, tk] = scale * yz
                out[5, ti, tj, tk] = scale * zz
    return out

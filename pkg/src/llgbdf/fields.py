"""Material parameters, composite source term, and the free energy.

The composite source aggregates everything except exchange:

    f = -q (m2 e2 + m3 e3) + h_s + h_e

so the dynamics only ever see ``eps * Lap(m) + f``.  Fields are expressed in
units of Ms; lengths in units of the characteristic length L; time in units
of tau = 1/(mu0 gamma Ms).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .demag import DemagKernel, stray_field
from .errors import ConfigError
from .grid import VectorField3, grad_norm_sq

MU0 = 4.0e-7 * np.pi          # vacuum permeability [H/m]
GYROMAGNETIC = 1.7595e11      # gyromagnetic ratio [rad/(s T)]

# Permalloy constants used throughout the experiments
PERMALLOY_CEX = 1.3e-11       # exchange constant [J/m]
PERMALLOY_KU = 100.0          # uniaxial anisotropy [J/m^3]
PERMALLOY_MS = 8.0e5          # saturation magnetization [A/m]


@dataclass(frozen=True)
class MaterialParams:
    """Dimensionless coefficients plus the unit map back to SI.

    ``epsilon = Cex / (mu0 Ms^2 L^2)`` and ``q = Ku / (mu0 Ms^2)`` whenever
    the physical block is present; construction cross-checks this.
    """

    epsilon: float
    q: float
    alpha: float
    he: tuple[float, float, float] = (0.0, 0.0, 0.0)
    stray_enabled: bool = False
    # physical block (optional; None for purely dimensionless runs)
    Ms: float | None = None
    Cex: float | None = None
    Ku: float | None = None
    L: float | None = None
    mu0: float = MU0
    gamma: float = GYROMAGNETIC

    def __post_init__(self):
        if self.epsilon <= 0.0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}")
        if self.alpha < 0.0:
            raise ConfigError(f"alpha must be >= 0, got {self.alpha}")
        if self.has_physical:
            eps_ref = self.Cex / (self.mu0 * self.Ms**2 * self.L**2)
            q_ref = self.Ku / (self.mu0 * self.Ms**2)
            if abs(self.epsilon - eps_ref) > 1e-12 * abs(eps_ref):
                raise ConfigError(
                    f"epsilon={self.epsilon!r} inconsistent with physical "
                    f"constants (expected {eps_ref!r})"
                )
            if abs(self.q - q_ref) > 1e-12 * max(abs(q_ref), 1e-300):
                raise ConfigError(
                    f"q={self.q!r} inconsistent with physical constants "
                    f"(expected {q_ref!r})"
                )

    @property
    def has_physical(self) -> bool:
        return None not in (self.Ms, self.Cex, self.Ku, self.L)

    @classmethod
    def dimensionless(cls, epsilon: float, q: float, alpha: float,
                      he=(0.0, 0.0, 0.0), stray_enabled: bool = False
                      ) -> "MaterialParams":
        return cls(epsilon, q, alpha, tuple(he), stray_enabled)

    @classmethod
    def permalloy(cls, L: float, alpha: float, he=(0.0, 0.0, 0.0),
                  stray_enabled: bool = True) -> "MaterialParams":
        """Permalloy at characteristic length L [m]; ``he`` in units of
        mu0*Ms (use :meth:`he_from_mT` for mT inputs)."""
        epsilon = PERMALLOY_CEX / (MU0 * PERMALLOY_MS**2 * L**2)
        q = PERMALLOY_KU / (MU0 * PERMALLOY_MS**2)
        return cls(epsilon, q, alpha, tuple(he), stray_enabled,
                   Ms=PERMALLOY_MS, Cex=PERMALLOY_CEX, Ku=PERMALLOY_KU, L=L)

    # -- unit map ---------------------------------------------------------

    @property
    def field_unit_T(self) -> float:
        """Tesla per dimensionless field unit (mu0 * Ms)."""
        self._require_physical()
        return self.mu0 * self.Ms

    @property
    def time_unit_s(self) -> float:
        """Seconds per dimensionless time unit, tau = 1/(mu0 gamma Ms)."""
        self._require_physical()
        return 1.0 / (self.mu0 * self.gamma * self.Ms)

    def he_from_mT(self, he_mT: float, axis: int = 0) -> tuple[float, float, float]:
        vec = [0.0, 0.0, 0.0]
        vec[axis] = he_mT * 1e-3 / self.field_unit_T
        return tuple(vec)

    def k_from_ps(self, k_ps: float) -> float:
        return k_ps * 1e-12 / self.time_unit_s

    def _require_physical(self):
        if self.Ms is None:
            raise ConfigError("operation requires the physical parameter block")

    def replace(self, **changes) -> "MaterialParams":
        from dataclasses import replace as dc_replace
        return dc_replace(self, **changes)


def anisotropy_field(m: VectorField3, q: float) -> VectorField3:
    """Uniaxial (easy x-axis) anisotropy contribution (0, -q m2, -q m3)."""
    out = VectorField3.zeros(m.grid, m.time_tag)
    out.interior[1] = -q * m.interior[1]
    out.interior[2] = -q * m.interior[2]
    return out


def assemble_source(m: VectorField3, p: MaterialParams,
                    kern: DemagKernel | None, t: float
                    ) -> tuple[VectorField3, VectorField3 | None]:
    """Composite source f plus the stray field it contains (None if stray
    is disabled); the stray field is reused by energy diagnostics."""
    f = anisotropy_field(m, p.q)
    f.time_tag = t
    hs = None
    if p.stray_enabled:
        if kern is None:
            raise ConfigError("stray field enabled but no demag kernel supplied")
        hs = stray_field(m, kern)
        f.interior[...] += hs.interior
    he = np.asarray(p.he)
    if he.any():
        f.interior[...] += he[:, None, None, None]
    return f, hs


def composite_f(m: VectorField3, p: MaterialParams,
                kern: DemagKernel | None = None, t: float = 0.0) -> VectorField3:
    """f = anisotropy + stray (if enabled) + external field."""
    return assemble_source(m, p, kern, t)[0]


def energy(m: VectorField3, p: MaterialParams,
           kern: DemagKernel | None = None,
           hs: VectorField3 | None = None,
           spatial_order: int = 4) -> float:
    """Gibbs free energy [J when the physical block is present, else in
    units of mu0 Ms^2 L^d / 2].

    F = (mu0 Ms^2 / 2) L^d sum_cells [ eps |grad m|^2 + q (m2^2 + m3^2)
        - 2 h_e . m - h_s . m ] * cellvol

    Ghosts of ``m`` are refreshed here; pass ``hs`` to reuse a stray field
    already computed for this magnetization.
    """
    from .grid import apply_neumann_ghost

    apply_neumann_ghost(m)
    gns = grad_norm_sq(m, order=spatial_order)[m.grid.interior]
    v = m.interior
    density = p.epsilon * gns + p.q * (v[1] * v[1] + v[2] * v[2])
    he = np.asarray(p.he)
    if he.any():
        density = density - 2.0 * (he[:, None, None, None] * v).sum(axis=0)
    if p.stray_enabled:
        if hs is None:
            if kern is None:
                raise ConfigError("stray enabled: need demag kernel or hs")
            hs = stray_field(m, kern)
        density = density - (hs.interior * v).sum(axis=0)
    total = float(density.sum()) * m.grid.cell_volume
    if p.has_physical:
        return 0.5 * p.mu0 * p.Ms**2 * p.L**m.grid.dim * total
    return 0.5 * total

"""Molecule parameters, physical constants and unit conversion.

Internal unit system ("natural"): B = hbar = d = 1, i.e. energies in units of
the rotational constant B, frequencies in B/hbar, lengths in the core radius
r_B = (d^2/B)^(1/3), dipole moments in d.  The mass unit that closes the
system is m_unit = hbar^2 / (B r_B^2); a molecule is then fully specified by
the single dimensionless number

    kappa = (d^4 m^3 B / hbar^6)^(1/2)  =  (m / m_unit)^(3/2).

Dipolar energies are written Gaussian style, V = d^2/r^3; the SI value of
d^2 therefore carries a 1/(4 pi eps0).  SI conversion happens only at the
boundaries (CLI, CharScales); all internal computation is in natural units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# CODATA-style constants, fixed for reproducibility (recorded in manifests).
HBAR = 1.054571817e-34        # J s
H_PLANCK = 6.62607015e-34     # J s
DEBYE = 3.33564e-30           # C m
AMU = 1.66054e-27             # kg
EPS0 = 8.8541878128e-12       # F/m
FOUR_PI_EPS0 = 4.0 * math.pi * EPS0


@dataclass(frozen=True)
class MoleculeParams:
    """Rigid-rotor molecule: permanent dipole d, rotational constant B, mass m.

    ``units`` is either "natural" (d = B = m_unit = 1 internally; only
    ``kappa`` is meaningful for mass-dependent quantities) or "SI" (the SI
    fields below are set and every scale can also be reported in SI).

    SI fields: ``d_si`` in C m, ``b_si`` in J, ``mass_si`` in kg.
    """

    units: str = "natural"
    d_si: float | None = None
    b_si: float | None = None
    mass_si: float | None = None
    kappa: float | None = None   # (d^4 m^3 B / hbar^6)^(1/2); set in both modes

    def __post_init__(self):
        if self.units not in ("natural", "SI"):
            raise_config(f"unknown unit tag {self.units!r}")
        if self.units == "SI":
            for name in ("d_si", "b_si", "mass_si"):
                v = getattr(self, name)
                if v is None or v <= 0:
                    raise_config(f"SI molecule needs positive {name}")
            object.__setattr__(self, "kappa", self._kappa_si())
        elif self.kappa is not None and self.kappa <= 0:
            raise_config("kappa must be positive")

    @classmethod
    def from_si(cls, d_debye: float, b_over_h_hz: float, mass_amu: float) -> "MoleculeParams":
        """Build from laboratory values: d [Debye], B/h [Hz], m [amu]."""
        return cls(units="SI", d_si=d_debye * DEBYE,
                   b_si=H_PLANCK * b_over_h_hz, mass_si=mass_amu * AMU)

    @classmethod
    def natural(cls, kappa: float | None = None) -> "MoleculeParams":
        """Dimensionless molecule; ``kappa`` fixes the mass if given."""
        return cls(units="natural", kappa=kappa)

    # -- derived SI quantities -------------------------------------------------

    @property
    def d2_gauss_si(self) -> float:
        """Gaussian-convention d^2 in J m^3 (so that V = d^2/r^3)."""
        self._need_si("d2_gauss_si")
        return self.d_si**2 / FOUR_PI_EPS0

    @property
    def r_b_si(self) -> float:
        """Core radius (d^2/B)^(1/3) in meters."""
        self._need_si("r_b_si")
        return (self.d2_gauss_si / self.b_si) ** (1.0 / 3.0)

    @property
    def mass_unit_si(self) -> float:
        """Natural mass unit hbar^2/(B r_B^2) in kg."""
        return HBAR**2 / (self.b_si * self.r_b_si**2)

    @property
    def mass_natural(self) -> float:
        """Mass in natural units, kappa^(2/3)."""
        if self.kappa is None:
            raise_config("mass-dependent scale requires kappa (or SI parameters)")
        return self.kappa ** (2.0 / 3.0)

    @property
    def time_unit_si(self) -> float:
        """hbar/B in seconds."""
        self._need_si("time_unit_si")
        return HBAR / self.b_si

    def _kappa_si(self) -> float:
        return math.sqrt(self.d2_gauss_si**2 * self.mass_si**3 * self.b_si / HBAR**6)

    def _need_si(self, what: str):
        if self.units != "SI":
            raise_config(f"{what} requires SI molecule parameters")


def raise_config(msg: str):
    from .errors import ConfigurationError

    raise ConfigurationError(msg)


def omega_si_to_natural(omega_si: float, params: MoleculeParams) -> float:
    """Angular frequency [rad/s] -> units of B/hbar."""
    return omega_si * HBAR / params.b_si


def omega_natural_to_si(omega_nat: float, params: MoleculeParams) -> float:
    return omega_nat * params.b_si / HBAR

"""Single-molecule rotor physics: DC pendulum spectrum, dipole moments,
two-level AC dressing and trap tensor shifts.

Everything is computed in natural units (energies in B, dipoles in d,
frequencies in B/hbar).  The DC Hamiltonian is H/B = J^2 - beta * C^(1)_0
with beta = d E_DC / B; M is conserved, so each M block is a real symmetric
tridiagonal matrix over J = |M| .. Jmax.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .angular import dipole_element, tensor_c20_diagonal
from .errors import ConfigurationError, DegenerateDressingWarning

__all__ = [
    "DcDressedRotor",
    "DipoleMoments",
    "pendulum_block",
    "pendulum_spectrum",
    "dipole_moments",
    "table1_perturbative",
    "ac_dressed_levels",
    "tensor_shift",
    "stark_shift_perturbative",
]


def _c0_up(J: int, M: int) -> float:
    """<J+1,M| C^(1)_0 |J,M>."""
    return dipole_element(J, M, 0, "up")


def pendulum_block(beta: float, M: int, jmax: int):
    """Eigenpairs of the M block of J^2 - beta*C0.  Returns (Js, E, V).

    Eigenvector columns carry a fixed gauge: the |J,M> component matching the
    adiabatic label J (sorted ascending from J=|M|) is made positive, which
    continues smoothly from beta = 0.
    """
    Js = np.arange(abs(M), jmax + 1)
    n = len(Js)
    H = np.diag(Js * (Js + 1.0))
    for a in range(n - 1):
        el = -beta * _c0_up(int(Js[a]), M)
        H[a, a + 1] = H[a + 1, a] = el
    E, V = np.linalg.eigh(H)
    for k in range(n):
        if V[k, k] < 0:
            V[:, k] = -V[:, k]
    return Js, E, V


@dataclass
class DcDressedRotor:
    """Pendulum eigenpairs for all M blocks, with delta and omega_bar."""

    beta: float
    jmax: int
    blocks: dict = field(repr=False)   # M -> (Js, E, V)

    @property
    def delta(self) -> float:
        """DC splitting of the J=1 manifold, E(1,0) - E(1,+-1), units B."""
        return self.energy(1, 0) - self.energy(1, 1)

    @property
    def omega_bar(self) -> float:
        """Mean J=0 -> J=1 separation, units B."""
        e1 = (self.energy(1, 0) + 2 * self.energy(1, 1)) / 3.0
        return e1 - self.energy(0, 0)

    def energy(self, J: int, M: int) -> float:
        Js, E, _ = self.blocks[abs(M)]
        return float(E[J - abs(M)])

    def vector(self, J: int, M: int) -> np.ndarray:
        """Eigenvector over |J',M>, J' = |M|..jmax, gauge-fixed."""
        Js, _, V = self.blocks[abs(M)]
        return V[:, J - abs(M)].copy()

    def js(self, M: int) -> np.ndarray:
        return self.blocks[abs(M)][0]


def pendulum_spectrum(beta: float, jmax: int = 20, m_max: int | None = None) -> DcDressedRotor:
    """Diagonalize the rigid pendulum for every M block up to ``m_max``.

    ``jmax`` below 2 cannot represent the J=1 manifold and is rejected;
    below 4 the basis is too small for converged moments, so a warning is
    issued.  Within each M block levels never cross as beta grows, so sorting
    by energy labels states by adiabatic continuation from the free rotor.
    """
    if beta < 0:
        raise ConfigurationError("beta must be >= 0")
    if jmax < 2:
        raise ConfigurationError(f"jmax={jmax} cannot form the J=1 manifold")
    if jmax < 4:
        warnings.warn(f"jmax={jmax} is below the convergence guard (4)", stacklevel=2)
    if m_max is None:
        m_max = jmax
    blocks = {M: pendulum_block(beta, M, jmax) for M in range(0, m_max + 1)}
    return DcDressedRotor(beta=beta, jmax=jmax, blocks=blocks)


def stark_shift_perturbative(J: int, M: int, beta: float) -> float:
    """Second-order level shift: E/B = J(J+1) + (beta^2/2)(1-3M^2/J(J+1)) / ((2J-1)(2J+3))."""
    frac = 0.0 if J == 0 else 3.0 * M * M / (J * (J + 1))
    return J * (J + 1) + 0.5 * beta**2 * (1.0 - frac) / ((2 * J - 1) * (2 * J + 3))


@dataclass(frozen=True)
class DipoleMoments:
    """Permanent (g) and transition (f) moments of the J<=1 dressed states.

    Numeric matrix elements in units of d:
        g0 = <phi_00|d0|phi_00>, g1 = <phi_11|d0|phi_11>, g2 = <phi_10|d0|phi_10>
        f0 = <phi_10|d0|phi_00>, f1 = <phi_11|d1|phi_00>, f2 = <phi_10|d-1|phi_11>
    """

    beta: float
    g0: float
    g1: float
    g2: float
    f0: float
    f1: float
    f2: float

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("g0", "g1", "g2", "f0", "f1", "f2")}


def _overlap_dq(bra, Js_bra, M_bra, ket, Js_ket, M_ket, q: int) -> float:
    s = 0.0
    for a, Jb in enumerate(Js_bra):
        for b, Jk in enumerate(Js_ket):
            if abs(Jb - Jk) == 1 and M_bra == M_ket + q:
                direction = "up" if Jb == Jk + 1 else "down"
                s += bra[a] * dipole_element(int(Jk), M_ket, q, direction) * ket[b]
    return s


def dipole_moments(rotor: DcDressedRotor) -> DipoleMoments:
    """Numeric g/f moments from pendulum eigenvectors (units of d)."""
    Js0 = rotor.js(0)
    Js1 = rotor.js(1)
    p00, p10 = rotor.vector(0, 0), rotor.vector(1, 0)
    p11 = rotor.vector(1, 1)
    return DipoleMoments(
        beta=rotor.beta,
        g0=_overlap_dq(p00, Js0, 0, p00, Js0, 0, 0),
        g1=_overlap_dq(p11, Js1, 1, p11, Js1, 1, 0),
        g2=_overlap_dq(p10, Js0, 0, p10, Js0, 0, 0),
        f0=_overlap_dq(p10, Js0, 0, p00, Js0, 0, 0),
        f1=_overlap_dq(p11, Js1, 1, p00, Js0, 0, 1),
        f2=_overlap_dq(p10, Js0, 0, p11, Js1, 1, -1),
    )


def table1_perturbative(beta: float) -> DipoleMoments:
    """Published cubic-order moment formulas (units of d).

    The g1 entry is printed with a division, (d beta/10)/(1 - 3 beta^2/5600);
    the numerically exact cubic coefficient is -19/1400, so at this order the
    division-vs-product reading is immaterial (both are ~25x smaller than the
    true coefficient, and all entries agree with numerics to O(beta^3) x 0.15
    absolute).  The printed form is kept verbatim.
    """
    b2 = beta * beta
    return DipoleMoments(
        beta=beta,
        g0=(beta / 3.0) * (1.0 - 7.0 * b2 / 360.0),
        g1=(beta / 10.0) / (1.0 - 3.0 * b2 / 5600.0),
        g2=-(beta / 5.0) * (1.0 - 19.0 * b2 / 350.0),
        f0=(1.0 / math.sqrt(3.0)) * (1.0 - 43.0 * b2 / 360.0),
        f1=(1.0 / math.sqrt(3.0)) * (1.0 - 49.0 * b2 / 1440.0),
        f2=(3.0 * beta / 20.0) * (1.0 + 11.0 * b2 / 1400.0),
    )


def ac_dressed_levels(delta: float, omega_rabi: float):
    """Two-level dressed shifts for drive detuned by ``delta`` (units B/hbar).

    Returns ((ground_shift, excited_shift), (ground_weak, excited_weak)):
    the exact shifts relative to the bare ground energy (excited one minus a
    photon), and their weak-saturation approximants +-Omega^2/delta.  At
    delta = 0 the exact branch degenerates to +-Omega and a warning is
    issued; the approximants are NaN there.
    """
    if delta == 0.0:
        warnings.warn("degenerate dressing: delta = 0, expansion invalid",
                      DegenerateDressingWarning, stacklevel=2)
        return (abs(omega_rabi), -abs(omega_rabi)), (math.nan, math.nan)
    root = math.sqrt(0.25 * delta**2 + omega_rabi**2)
    ground = -0.5 * delta + root
    excited = -0.5 * delta - root
    weak = omega_rabi**2 / delta
    return (ground, excited), (weak, -delta - weak)


def tensor_shift(J: int, M: int) -> float:
    """Tensor light-shift weight <J,M|C^(2)_0|J,M> (exact rational as float)."""
    return tensor_c20_diagonal(J, M)

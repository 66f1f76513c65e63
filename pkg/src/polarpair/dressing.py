"""Rotating-wave dressed interaction potentials for AC and DC+AC driving.

A single microwave field of polarization q and detuning Delta (from the
appropriate single-molecule rotational line) couples the 16 lowest pair
states.  After retaining energy-conserving Floquet terms, the dressed
Hamiltonian for each permutation sector sigma is

    H~[n, n]  = -hbar * Delta_n(r),   Delta_n(r) = J_n w - (E_n(r) - E_gs(inf))/hbar
    H~[n', n] = -E_AC <Phi_n'| d_q;1 + d_q;2 |Phi_n>,   J_n' = J_n + 1

with w the drive frequency and E_n the bare tracked surfaces.  Couplings use
the r-independent asymptotic pair states (off-resonant corrections of order
Omega d^2/(r^3 B) are dropped; see ``offresonant_coupling_scale``).  All
frequencies are in units of B/hbar, energies in B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .angular import rotation_matrix
from .errors import ConfigurationError, ConvergenceError
from .pair import PairBasis, StateLabel, Surface, asymptotic_states, bare_surfaces, table3_rows
from .rotor import dipole_moments, pendulum_spectrum, table1_perturbative
from .tracking import track_eigensystems

__all__ = [
    "AcFieldConfig",
    "DressedSector",
    "DressedSurface",
    "build_rwa_ac",
    "build_rwa_dc_ac",
    "dressed_surfaces",
    "three_state_resonant_model",
    "reduced_m0_model",
    "ReducedModelPoint",
    "condon_points",
    "condon_radius_ac",
    "crossing_radius_ac",
    "minimum_gap",
    "offresonant_coupling_scale",
]


@dataclass(frozen=True)
class AcFieldConfig:
    """Microwave drive: polarization q in {-1, 0, +1}, blue detuning ``delta``
    and Rabi frequency ``omega_rabi``, both in units of B/hbar."""

    q: int
    delta: float
    omega_rabi: float

    def __post_init__(self):
        if self.q not in (-1, 0, 1):
            raise ConfigurationError(f"polarization q must be -1, 0 or +1, got {self.q}")
        if self.delta <= 0:
            raise ConfigurationError("shielding requires blue detuning, delta > 0")
        if self.omega_rabi < 0:
            raise ConfigurationError("omega_rabi must be >= 0")


def offresonant_coupling_scale(r, omega_rabi: float) -> float:
    """Magnitude estimate of the neglected off-resonant couplings.

    Dropped terms are of order Omega * d^2/(r^3 B); in natural units this is
    Omega / r^3.  Useful for error budgeting when interpreting dressed
    surfaces at small r.
    """
    return omega_rabi / np.asarray(r, dtype=float) ** 3


class _RwaBasis:
    """Asymptotic pair states of one sector plus drive coupling matrices."""

    def __init__(self, beta: float, theta: float, phi: float, basis: PairBasis,
                 sigma: int, q: int):
        self.sigma = sigma
        vecs, e0, c3, labels = asymptotic_states(beta, theta if beta > 0 else 0.0,
                                                 basis, sigma, phi if beta > 0 else 0.0)
        order = np.lexsort((
            [lab.proj for lab in labels],
            [{"-": 0, "0": 1, "+": 2, None: 1}[lab.mu] for lab in labels],
            e0,
        ))
        self.vectors = vecs[:, order]
        self.e0 = e0[order]
        self.labels = [labels[i] for i in order]
        self.jn = np.array([lab.j for lab in self.labels])
        prod = basis.sector(sigma) @ self.vectors
        if beta == 0.0:
            # zero-field combinations live in the collision frame: rotate them
            r1 = _single_rotation(basis, phi, theta)
            prod = np.kron(r1, r1) @ prod.astype(complex)
        dq_tot = np.kron(basis.dq[q], np.eye(basis.nsingle)) + \
            np.kron(np.eye(basis.nsingle), basis.dq[q])
        self.coupling = prod.conj().T @ dq_tot @ prod   # units of d
        if np.abs(self.coupling.imag).max() < 1e-14:
            self.coupling = self.coupling.real


def _single_rotation(basis: PairBasis, phi: float, theta: float) -> np.ndarray:
    n = basis.nsingle
    R = np.zeros((n, n), dtype=complex)
    for J in range(basis.jmax_single + 1):
        block = rotation_matrix(J, phi, theta)   # rows/cols ordered m = +J..-J
        ms = list(range(J, -J - 1, -1))
        for a, ma in enumerate(ms):
            for b, mb in enumerate(ms):
                R[basis.index[(J, ma)], basis.index[(J, mb)]] = block[a, b]
    return R


def _restricted_single(beta: float, basis: PairBasis):
    """Single-molecule data evaluated in the pair basis' own J-range.

    The drive frequency, transition moment and ground asymptote must all be
    consistent with the restricted basis: a converged value differs at
    O(beta^2/15) in B, which dwarfs typical detunings Delta ~ 1e-6 B/hbar.
    Returns (e00, omega_bar, delta, f0, f1).
    """
    from .angular import dipole_element
    jm = basis.jmax_single
    _, e0b, v0 = pendulum_block(beta, 0, jm)
    _, e1b, v1 = pendulum_block(beta, 1, jm)
    e00, e10 = e0b[0], e0b[1]
    e11 = e1b[0]
    omega_bar = (e10 + 2 * e11) / 3.0 - e00
    delta = e10 - e11
    # f0 = <phi10|d0|phi00>, f1 = <phi11|d1|phi00> in the restricted space
    f0 = sum(v0[a, 1] * dipole_element(J, 0, 0, "up") * v0[a + 1, 0]
             + v0[a + 1, 1] * dipole_element(J, 0, 0, "up") * v0[a, 0]
             for a, J in enumerate(range(0, jm)))
    f1 = 0.0
    for a, J in enumerate(range(0, jm + 1)):        # phi00 over J = 0..jm
        for b, Jp in enumerate(range(1, jm + 1)):   # phi11 over J = 1..jm
            if Jp == J + 1:
                f1 += v1[b, 0] * dipole_element(J, 0, 1, "up") * v0[a, 0]
            elif Jp == J - 1:
                f1 += v1[b, 0] * dipole_element(J, 0, 1, "down") * v0[a, 0]
    return e00, omega_bar, delta, f0, f1


def _drive_frequency(beta: float, q: int, basis: PairBasis) -> float:
    """Base drive frequency omega - Delta = omega_bar + (2/3 - q^2) delta."""
    if beta == 0.0:
        return 2.0
    _, omega_bar, delta, _, _ = _restricted_single(beta, basis)
    return omega_bar + (2.0 / 3.0 - q * q) * delta


def _rwa_matrix(rwa: _RwaBasis, e_bare_point: np.ndarray, e_gs_inf: float,
                w_drive: float, cfg: AcFieldConfig, f_coupling: float) -> np.ndarray:
    detun = rwa.jn * w_drive - (e_bare_point - e_gs_inf)
    e_ac = cfg.omega_rabi / f_coupling
    h = -e_ac * _mask_next_manifold(rwa) * rwa.coupling
    h = h + h.conj().T
    np.fill_diagonal(h, -detun)
    return h


def _mask_next_manifold(rwa: _RwaBasis) -> np.ndarray:
    # keep only J -> J+1 couplings (energy-conserving with one photon)
    return (rwa.jn[:, None] == rwa.jn[None, :] + 1).astype(float)


def build_rwa_ac(sigma: int, r: float, theta: float, phi: float,
                 cfg: AcFieldConfig, bare: Surface,
                 basis: PairBasis | None = None) -> np.ndarray:
    """Dressed-sector Hamiltonian at one point, AC field over zero-field states.

    Returns the 10x10 (sigma = +) or 6x6 (sigma = -) matrix in units of B,
    with diagonal -hbar Delta_{J;Y}(r) interpolated from the tracked ``bare``
    surface and couplings Omega_Y arranged by the drive polarization.  Basis
    ordering: ascending (E0, mu, Y).
    """
    if basis is None:
        basis = PairBasis(1)
    rwa = _RwaBasis(0.0, theta, phi, basis, sigma, cfg.q)
    e_point = _interp_tracks(bare, rwa.labels, r)
    f = table1_perturbative(0.0).f0  # 1/sqrt(3); Omega = E_AC f_|q| at beta=0
    return _rwa_matrix(rwa, e_point, 0.0, 2.0 + cfg.delta, cfg, f)


def build_rwa_dc_ac(sigma: int, r: float, theta: float, beta: float,
                    cfg: AcFieldConfig, bare: Surface,
                    basis: PairBasis | None = None, phi: float = 0.0) -> np.ndarray:
    """Dressed-sector Hamiltonian at one point for combined DC + AC fields."""
    if basis is None:
        basis = PairBasis(1)
    if beta <= 0:
        raise ConfigurationError("dc_ac mode needs beta > 0")
    rwa = _RwaBasis(beta, theta, phi, basis, sigma, cfg.q)
    e_point = _interp_tracks(bare, rwa.labels, r)
    e00, omega_bar, delta, f0, f1 = _restricted_single(beta, basis)
    f = f0 if cfg.q == 0 else f1
    w = omega_bar + (2.0 / 3.0 - cfg.q**2) * delta + cfg.delta
    return _rwa_matrix(rwa, e_point, 2.0 * e00, w, cfg, f)


def _interp_tracks(bare: Surface, labels, r: float) -> np.ndarray:
    """Bare track energies at separation r (linear in 1/r^3 between nodes)."""
    x = 1.0 / bare.r**3
    xq = 1.0 / float(r) ** 3
    order = np.argsort(x)
    out = np.empty(len(labels))
    for k, lab in enumerate(labels):
        idx = bare.labels.index(lab)
        out[k] = np.interp(xq, x[order], bare.energies[order, idx])
    return out


@dataclass
class DressedSector:
    """Tracked dressed curves of one permutation sector."""

    sigma: int
    r: np.ndarray
    energies: np.ndarray          # (npts, nstates), units B
    labels: list[StateLabel]
    photon_multiple: np.ndarray   # J_n: asymptotic detuning is -J_n * Delta
    asymptote: np.ndarray         # dressed values at the outermost point
    flags: list = field(default_factory=list)
    vectors: np.ndarray | None = None


@dataclass
class DressedSurface:
    """Both permutation sectors of the dressed interaction."""

    mode: str
    cfg: AcFieldConfig
    beta: float
    theta: float
    sym: DressedSector
    antisym: DressedSector

    def sector(self, sigma: int) -> DressedSector:
        return self.sym if sigma > 0 else self.antisym

    def ground_track(self) -> np.ndarray:
        idx = [i for i, lab in enumerate(self.sym.labels) if lab.j == 0][0]
        return self.sym.energies[:, idx]


def dressed_surfaces(rs, cfg: AcFieldConfig, mode: str = "ac_only",
                     beta: float = 0.0, theta: float = math.pi / 2,
                     phi: float = 0.0, basis: PairBasis | None = None,
                     keep_vectors: bool = False) -> DressedSurface:
    """Tracked dressed adiabatic potentials over a radial grid.

    ``mode`` is "ac_only" (zero-field bare states, collision-frame couplings)
    or "dc_ac" (pendulum-dressed states, lab-frame couplings; needs beta > 0).
    The bare surfaces entering the detunings are diagonalized numerically on
    the same grid, not taken from the perturbative tables.
    """
    if basis is None:
        basis = PairBasis(1)
    rs = np.asarray(rs, dtype=float)
    if mode == "ac_only":
        beta_eff = 0.0
        f = table1_perturbative(0.0).f0
        w = 2.0 + cfg.delta
        e_gs_inf = 0.0
    elif mode == "dc_ac":
        if beta <= 0:
            raise ConfigurationError("dc_ac mode needs beta > 0")
        beta_eff = beta
        e00, omega_bar, delta, f0, f1 = _restricted_single(beta, basis)
        f = f0 if cfg.q == 0 else f1
        w = omega_bar + (2.0 / 3.0 - cfg.q**2) * delta + cfg.delta
        e_gs_inf = 2.0 * e00
    else:
        raise ConfigurationError(f"unknown mode {mode!r}")

    bare = bare_surfaces(rs, beta_eff, basis, theta=theta, phi=phi)
    sectors = {}
    for sigma in (1, -1):
        rwa = _RwaBasis(beta_eff, theta, phi, basis, sigma, cfg.q)
        cols = [bare.labels.index(lab) for lab in rwa.labels]
        e_bare = bare.energies[:, cols]
        nst = len(rwa.labels)
        evals = np.empty((len(rs), nst))
        evecs = np.empty((len(rs), nst, nst), dtype=complex)
        for i in range(len(rs)):
            h = _rwa_matrix(rwa, e_bare[i], e_gs_inf, w, cfg, f)
            E, V = np.linalg.eigh(h)
            evals[i] = E
            evecs[i] = V
        te, tv, flags = track_eigensystems(evals, evecs, start=len(rs) - 1,
                                           degeneracy_tol=1e-13)
        # identify tracks with basis states at the outer point
        ov2 = np.abs(tv[-1].conj().T @ np.eye(nst)) ** 2
        perm = np.argmax(ov2, axis=0)
        if len(set(perm.tolist())) != nst:   # fall back to greedy if ambiguous
            from .pair import _greedy_assign
            perm = _greedy_assign(ov2)
        sectors[sigma] = DressedSector(
            sigma=sigma, r=rs, energies=te[:, perm],
            labels=list(rwa.labels),
            photon_multiple=rwa.jn.copy(),
            asymptote=te[-1, perm],
            flags=flags,
            vectors=tv[:, :, perm] if keep_vectors else None,
        )
    return DressedSurface(mode=mode, cfg=cfg, beta=beta_eff, theta=theta,
                          sym=sectors[1], antisym=sectors[-1])


# ---------------------------------------------------------------------------
# Closed-form models
# ---------------------------------------------------------------------------

def three_state_resonant_model(r, theta: float, cfg: AcFieldConfig,
                               warn_guard: bool = True):
    """Dressed ground potential near the Condon point from the 3-state model.

    Uses the dipolar detuning approximants Delta_+-(r) = (Delta - 1/(3 r^3))/2
    (half the bright-excited detuning; the ground detuning is negligible at
    r ~ r_C).  For q = 0 the coupling is sqrt(2) Omega sin(theta); for
    |q| = 1 it is sqrt(2) Omega at every angle.  Returns energy in B.
    """
    r = np.asarray(r, dtype=float)
    if warn_guard and cfg.omega_rabi > 0.2 * cfg.delta:
        import warnings
        warnings.warn("three-state model assumes Omega << Delta", stacklevel=2)
    half = 0.5 * (cfg.delta - 1.0 / (3.0 * r**3))
    coupling2 = 2.0 * cfg.omega_rabi**2
    if cfg.q == 0:
        coupling2 = coupling2 * math.sin(theta) ** 2
    return -half + np.sqrt(half * half + coupling2)


@dataclass
class ReducedModelPoint:
    """Four dressed M=0 energies at one (r, theta) point, units B."""

    e_sym: np.ndarray        # J = 0, 1, 2 (asymptotic photon labels)
    e_antisym: float
    from_closed_form: bool


def reduced_m0_model(r, theta: float, cfg: AcFieldConfig, beta: float,
                     bare: Surface | None = None, use_cubic: bool = True,
                     guard: bool = True):
    """Dressed M = 0 potentials for DC+AC, q = 0 (three symmetric + one odd).

    The symmetric 3x3 block couples (0;0;+), (1;0;+), (2;0;+) with sqrt(2)
    Omega; its eigenvalues are evaluated from the closed-form real cubic
    (trigonometric Cardano branches, labeled by asymptotic photon number) and
    the antisymmetric energy is the bare detuning.  Detunings come from the
    perturbative table by default or from a tracked ``bare`` surface.

    Valid for Delta << delta (warns beyond delta/5) and r >> r_delta.  Near a
    triple root the closed form degrades; such points fall back to a direct
    eigensolver and are reported with ``from_closed_form = False``.
    """
    if cfg.q != 0:
        raise ConfigurationError("the reduced M=0 model is defined for q = 0")
    rot = pendulum_spectrum(beta, jmax=20, m_max=1)
    if guard and cfg.delta > rot.delta / 5.0:
        import warnings
        warnings.warn(f"reduced model assumes Delta << delta "
                      f"(Delta = {cfg.delta:.3g}, delta = {rot.delta:.3g})", stacklevel=2)

    rarr = np.atleast_1d(np.asarray(r, dtype=float))
    ups = 1.0 - 3.0 * math.cos(theta) ** 2
    if bare is None:
        rows = {(rw.label.j, rw.label.proj, rw.label.sigma): rw
                for rw in table3_rows(beta, theta=theta)}
        keys = [(0, 0, 1), (1, 0, 1), (2, 0, 1)]
        e_int = {k: rows[k].c3 * ups / rarr**3 + (rows[k].c6_6b / 6.0) / rarr**6
                 for k in keys + [(1, 0, -1)]}
    else:
        e_int = {}
        for k in [(0, 0, 1), (1, 0, 1), (2, 0, 1), (1, 0, -1)]:
            idx = [i for i, lab in enumerate(bare.labels)
                   if (lab.j, lab.proj, lab.sigma) == k][0]
            x = 1.0 / bare.r**3
            order = np.argsort(x)
            e_int[k] = np.interp(1.0 / rarr**3, x[order],
                                 (bare.energies[:, idx] - bare.asymptote[idx])[order])
    detun = {k: k[0] * cfg.delta - e_int[k] for k in e_int}

    om2 = 2.0 * cfg.omega_rabi**2
    g = math.sqrt(om2)
    e_sym = np.empty((rarr.size, 3))
    used_cubic = np.ones(rarr.size, dtype=bool)
    for i in range(rarr.size):
        d0, d1, d2 = (detun[(0, 0, 1)][i], detun[(1, 0, 1)][i], detun[(2, 0, 1)][i])
        lam, ok = _cubic_ladder_eigen(d0, d1, d2, om2) if use_cubic else (None, False)
        if not ok:
            used_cubic[i] = False
            K = np.array([[d0, g, 0.0], [g, d1, g], [0.0, g, d2]])
            # ascending eigenvalues carry photon labels J = 0, 1, 2
            lam = np.linalg.eigvalsh(K)
        e_sym[i] = -lam
    e_anti = -detun[(1, 0, -1)]
    if np.isscalar(r) or np.asarray(r).ndim == 0:
        return ReducedModelPoint(e_sym=e_sym[0], e_antisym=float(e_anti[0]),
                                 from_closed_form=bool(used_cubic[0]))
    return e_sym, np.asarray(e_anti), used_cubic


def _cubic_ladder_eigen(d0: float, d1: float, d2: float, om2: float):
    """Eigenvalues of [[d0, g, 0], [g, d1, g], [0, g, d2]] with g^2 = om2.

    Trigonometric solution of the shifted characteristic cubic
    mu^3 - P mu - D = 0, P = sum dt_i^2/2 + 2 g^2, D = dt0 dt1 dt2 + g^2 dt1;
    branches cos(Theta/3 - 2 pi k/3) are energy-ordered, and asymptotic
    matching fixes J = (0, 1, 2) -> k = (2, 1, 0).  Returns (lam[J], ok).
    """
    mean = (d0 + d1 + d2) / 3.0
    t0, t1, t2 = d0 - mean, d1 - mean, d2 - mean
    P = 0.5 * (t0 * t0 + t1 * t1 + t2 * t2) + 2.0 * om2
    D = t0 * t1 * t2 + om2 * t1
    if P <= 0.0:
        return None, False
    Q = P / 3.0
    arg = 0.5 * D / Q**1.5
    if abs(arg) > 1.0 - 1e-12:
        return None, False   # near triple degeneracy: closed form ill-conditioned
    th = math.acos(arg)
    lam = np.array([mean + 2.0 * math.sqrt(Q) * math.cos(th / 3.0 - 2.0 * math.pi * k / 3.0)
                    for k in (2, 1, 0)])   # J = 0, 1, 2
    return lam, True


def condon_radius_ac(cfg: AcFieldConfig) -> float:
    """AC-only Condon radius r_C = (1/(3 Delta))^(1/3) in r_B (any theta)."""
    return (1.0 / (3.0 * cfg.delta)) ** (1.0 / 3.0)


def crossing_radius_ac(cfg: AcFieldConfig) -> float:
    """AC-only real crossing with the odd state: r_C' = 2^(1/3) r_C."""
    return (2.0 / (3.0 * cfg.delta)) ** (1.0 / 3.0)


def condon_points(theta: float, cfg: AcFieldConfig, beta: float):
    """(r_C(theta), r_C'(theta)) for the DC+AC case, in r_B; None when absent.

    r_C exists where cos^2(theta) < 1/3 (avoided crossing with the symmetric
    excited state); r_C' where cos^2(theta) > 1/3 (real crossing with the
    antisymmetric state).  Both use the weak-field coefficient table at the
    given beta; at beta = 0 they reduce to the AC-only values.
    """
    m = table1_perturbative(beta)
    c3_g = m.g0 * m.g0
    c3_sym = m.g0 * m.g2 + m.f0 * m.f0
    c3_anti = m.g0 * m.g2 - m.f0 * m.f0
    ups = 1.0 - 3.0 * math.cos(theta) ** 2
    r_c = r_cp = None
    if ups > 0:
        r_c = ((c3_sym - c3_g) / (cfg.delta * ups)) ** (1.0 / 3.0)
    elif ups < 0:
        r_cp = ((c3_g - c3_anti) * (-ups) / cfg.delta) ** (1.0 / 3.0)
    return r_c, r_cp


def minimum_gap(surface: DressedSurface, upper_j: int = 1, lower_j: int = 0,
                refine: bool = True):
    """Minimal separation between two symmetric dressed tracks and its radius.

    Scans the grid for the smallest gap between the tracks with photon labels
    ``lower_j`` and ``upper_j``, then refines by golden-section on a local
    quadratic-free interpolation of the tracked curves.
    """
    sec = surface.sym
    i_lo = [i for i, lab in enumerate(sec.labels) if lab.j == lower_j][0]
    up_candidates = [i for i, lab in enumerate(sec.labels) if lab.j == upper_j]
    gap_grid = None
    for i_up in up_candidates:
        g = np.abs(sec.energies[:, i_up] - sec.energies[:, i_lo])
        if gap_grid is None or g.min() < gap_grid[0]:
            gap_grid = (g.min(), int(np.argmin(g)), i_up)
    gmin, imin, i_up = gap_grid
    if not refine or imin in (0, len(sec.r) - 1):
        return gmin, sec.r[imin]
    # golden-section on interpolated difference around the bracket
    x = sec.r
    ylo = sec.energies[:, i_lo]
    yup = sec.energies[:, i_up]
    a, b = x[max(imin - 1, 0)], x[min(imin + 1, len(x) - 1)]
    fun = lambda rr: abs(np.interp(rr, x, yup) - np.interp(rr, x, ylo))
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - phi * (b - a), a + phi * (b - a)
    for _ in range(60):
        if fun(c) < fun(d):
            b, d = d, c
            c = b - phi * (b - a)
        else:
            a, c = c, d
            d = a + phi * (b - a)
    rmin = 0.5 * (a + b)
    return fun(rmin), rmin

"""Exact angular-momentum algebra for integer j.

Clebsch-Gordan coefficients are evaluated from the Racah closed-form sum with
exact integer factorial arithmetic (``fractions.Fraction``), so the foundation
carries no accumulated rounding.  Wigner rotation matrices follow the z-y-z
Euler convention with Condon-Shortley phases; the rank-1 matrix D^1_{qY} is
the passive form used for re-expressing lab-frame field components on a frame
whose z axis lies along the collision axis,

    D^1_{qY}(phi, theta, 0) = exp(-i q phi) * d^1_{Yq}(theta),

where d^1(theta) is the standard little-d matrix of exp(-i theta Jy).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "clebsch_gordan",
    "wigner_little_d",
    "wigner_d1",
    "wigner_D1",
    "dipole_element",
    "c1q",
    "c2q",
    "tensor_c20_diagonal",
    "jy_matrix",
    "rotation_matrix",
]


def _check_am(j: int, m: int, name: str = "j"):
    if j < 0:
        raise ValueError(f"{name} must be non-negative, got {j}")
    if abs(m) > j:
        raise ValueError(f"|m| <= {name} violated: ({j}, {m})")


@lru_cache(maxsize=None)
def _cg_cached(j1, m1, j2, m2, j, m) -> float:
    f = math.factorial
    pre2 = (
        Fraction(2 * j + 1)
        * f(j + j1 - j2) * f(j - j1 + j2) * f(j1 + j2 - j)
        * f(j + m) * f(j - m) * f(j1 - m1) * f(j1 + m1) * f(j2 - m2) * f(j2 + m2)
        / f(j1 + j2 + j + 1)
    )
    total = Fraction(0)
    for k in range(0, j1 + j2 - j + 1):
        d = (k, j1 + j2 - j - k, j1 - m1 - k, j2 + m2 - k, j - j2 + m1 + k, j - j1 - m2 + k)
        if min(d) < 0:
            continue
        total += Fraction((-1) ** k, f(d[0]) * f(d[1]) * f(d[2]) * f(d[3]) * f(d[4]) * f(d[5]))
    if total == 0:
        return 0.0
    sign = 1.0 if total > 0 else -1.0
    return sign * math.sqrt(float(pre2 * total * total))


def clebsch_gordan(j1: int, m1: int, j2: int, m2: int, j: int, m: int) -> float:
    """Clebsch-Gordan coefficient (j1,m1;j2,m2|j,m), Condon-Shortley phases.

    Integer angular momenta only.  Returns 0 when m != m1+m2, when |m| > j
    for any of the three pairs, or when the triangle rule fails; raises on
    negative j.
    """
    for jj, nm in ((j1, "j1"), (j2, "j2"), (j, "j")):
        if jj < 0:
            raise ValueError(f"{nm} must be non-negative, got {jj}")
    if abs(m1) > j1 or abs(m2) > j2 or abs(m) > j:
        return 0.0
    if m1 + m2 != m or not (abs(j1 - j2) <= j <= j1 + j2):
        return 0.0
    return _cg_cached(j1, m1, j2, m2, j, m)


def wigner_little_d(j: int, mp: int, m: int, theta: float) -> float:
    """d^j_{mp,m}(theta) = <j,mp| exp(-i theta Jy) |j,m> (Condon-Shortley)."""
    _check_am(j, mp)
    _check_am(j, m)
    f = math.factorial
    pre = math.sqrt(f(j + mp) * f(j - mp) * f(j + m) * f(j - m))
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    total = 0.0
    for k in range(0, 2 * j + 1):
        d = (j + m - k, j - mp - k, k, k + mp - m)
        if min(d) < 0:
            continue
        total += ((-1) ** (k + mp - m) / (f(d[0]) * f(d[1]) * f(d[2]) * f(d[3]))
                  * c ** (2 * j + m - mp - 2 * k) * s ** (mp - m + 2 * k))
    return pre * total


def wigner_d1(q: int, Y: int, theta: float) -> float:
    """Passive rank-1 little-d element d^1_{Yq}(theta) used by D^1_{qY}."""
    if abs(q) > 1 or abs(Y) > 1:
        raise ValueError(f"rank-1 projections must lie in -1..1, got q={q}, Y={Y}")
    return wigner_little_d(1, Y, q, theta)


def wigner_D1(q: int, Y: int, phi: float, theta: float) -> complex:
    """Rank-1 rotation matrix element D^1_{qY}(phi, theta, 0), passive z-y-z.

    Unitary over (q, Y); reduces to delta_{qY} e^{-i q phi} at theta = 0.
    """
    return np.exp(-1j * q * phi) * wigner_d1(q, Y, theta)


def dipole_element(J: int, M: int, q: int, direction: str = "up") -> float:
    """<J',M+q| d_q |J,M> in units of the permanent dipole, J' = J +/- 1.

    ``direction`` selects the target manifold: "up" for J+1, "down" for J-1.
    Elements with any other Delta-J vanish identically.  Raises when the
    target state (J', M+q) is unphysical.
    """
    _check_am(J, M, "J")
    if abs(q) > 1:
        raise ValueError(f"dipole is rank 1, got q={q}")
    if direction == "up":
        Jp = J + 1
    elif direction == "down":
        Jp = J - 1
    else:
        raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
    Mp = M + q
    _check_am(Jp, Mp, "J'")
    # <J',M+q|d_q|J,M> = (J,M;1,q|J',M+q)(J,0;1,0|J',0) sqrt((2J+1)/(2J'+1))
    return (clebsch_gordan(J, M, 1, q, Jp, Mp)
            * clebsch_gordan(J, 0, 1, 0, Jp, 0)
            * math.sqrt((2 * J + 1) / (2 * Jp + 1)))


def c1q(q: int, theta: float, phi: float) -> complex:
    """Unnormalized rank-1 spherical harmonic C^(1)_q(theta, phi)."""
    if q == 0:
        return complex(math.cos(theta))
    if q == 1:
        return -math.sin(theta) / math.sqrt(2.0) * np.exp(1j * phi)
    if q == -1:
        return math.sin(theta) / math.sqrt(2.0) * np.exp(-1j * phi)
    raise ValueError(f"rank-1 component q={q}")


def c2q(q: int, theta: float, phi: float) -> complex:
    """Unnormalized rank-2 spherical harmonic C^(2)_q(theta, phi)."""
    c, s = math.cos(theta), math.sin(theta)
    if q == 0:
        return complex(0.5 * (3 * c * c - 1))
    aq = abs(q)
    if aq == 1:
        val = -math.sqrt(1.5) * s * c
    elif aq == 2:
        val = math.sqrt(3.0 / 8.0) * s * s
    else:
        raise ValueError(f"rank-2 component q={q}")
    if q < 0:
        val = val * (-1) ** aq
    return val * np.exp(1j * q * phi)


def tensor_c20_diagonal(J: int, M: int) -> float:
    """<J,M| C^(2)_0 |J,M> = (J(J+1) - 3M^2) / ((2J-1)(2J+3))."""
    _check_am(J, M, "J")
    return float(Fraction(J * (J + 1) - 3 * M * M, (2 * J - 1) * (2 * J + 3)))


def jy_matrix(j: int) -> np.ndarray:
    """J_y on the |j,m> basis ordered m = +j..-j (Condon-Shortley)."""
    ms = np.arange(j, -j - 1, -1)
    n = len(ms)
    Jy = np.zeros((n, n), dtype=complex)
    for a, m in enumerate(ms):
        if m + 1 <= j:  # J+ |j,m> = sqrt(j(j+1)-m(m+1)) |j,m+1>
            amp = math.sqrt(j * (j + 1) - m * (m + 1))
            Jy[a - 1, a] += amp / 2j
            Jy[a, a - 1] -= amp / 2j
    return Jy


def rotation_matrix(j: int, phi: float, theta: float) -> np.ndarray:
    """Active rotation exp(-i phi Jz) exp(-i theta Jy) on |j,m>, m = +j..-j."""
    ms = np.arange(j, -j - 1, -1)
    d = np.array([[wigner_little_d(j, int(mp), int(m), theta) for m in ms] for mp in ms])
    return np.exp(-1j * phi * ms)[:, None] * d

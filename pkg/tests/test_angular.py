import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.linalg import expm

from polarpair.angular import (c1q, c2q, clebsch_gordan, dipole_element,
                               jy_matrix, rotation_matrix, tensor_c20_diagonal,
                               wigner_D1, wigner_d1)


def cg_racah_oracle(j1, m1, j2, m2, j, m):
    """Independent Racah-sum evaluation with exact rationals."""
    if m1 + m2 != m or not (abs(j1 - j2) <= j <= j1 + j2):
        return 0.0
    f = math.factorial
    pre = Fraction(2 * j + 1) * f(j + j1 - j2) * f(j - j1 + j2) * f(j1 + j2 - j)
    pre = pre * f(j + m) * f(j - m) * f(j1 - m1) * f(j1 + m1) * f(j2 - m2) * f(j2 + m2)
    pre = pre / f(j1 + j2 + j + 1)
    s = Fraction(0)
    for k in range(0, j1 + j2 - j + 1):
        d = (k, j1 + j2 - j - k, j1 - m1 - k, j2 + m2 - k, j - j2 + m1 + k, j - j1 - m2 + k)
        if min(d) < 0:
            continue
        s += Fraction((-1) ** k, math.prod(f(x) for x in d))
    return float(s) * math.sqrt(float(pre)) if s else 0.0


class TestClebschGordan:
    def test_singlet_coupling_is_identity(self):
        assert clebsch_gordan(0, 0, 1, 0, 1, 0) == 1.0

    def test_1010_20(self):
        assert clebsch_gordan(1, 0, 1, 0, 2, 0) == pytest.approx(math.sqrt(2 / 3), abs=1e-15)

    def test_forbidden_projection(self):
        assert clebsch_gordan(1, 1, 1, 1, 1, 2) == 0.0

    def test_negative_j_raises(self):
        with pytest.raises(ValueError):
            clebsch_gordan(-1, 0, 1, 0, 1, 0)

    def test_against_racah_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            j1, j2 = rng.integers(0, 4, size=2)
            j = rng.integers(abs(j1 - j2), j1 + j2 + 1)
            m1 = rng.integers(-j1, j1 + 1)
            m2 = rng.integers(-j2, j2 + 1)
            m = m1 + m2
            if abs(m) > j:
                continue
            ours = clebsch_gordan(int(j1), int(m1), int(j2), int(m2), int(j), int(m))
            ref = cg_racah_oracle(int(j1), int(m1), int(j2), int(m2), int(j), int(m))
            assert ours == pytest.approx(ref, abs=1e-14)

    def test_orthogonality(self):
        # sum_{m1,m2} (j1,m1;j2,m2|j,m)(j1,m1;j2,m2|j',m') = delta_{jj'} delta_{mm'};
        # the m != m' case vanishes term-by-term via the projection rule, so
        # the non-trivial content is the fixed-m sum over (m1, m2 = m - m1)
        j1, j2 = 2, 3
        for j in range(abs(j1 - j2), j1 + j2 + 1):
            for jp in range(abs(j1 - j2), j1 + j2 + 1):
                for m in range(-min(j, jp), min(j, jp) + 1):
                    s = sum(clebsch_gordan(j1, m1, j2, m - m1, j, m)
                            * clebsch_gordan(j1, m1, j2, m - m1, jp, m)
                            for m1 in range(-j1, j1 + 1)
                            if abs(m - m1) <= j2)
                    want = 1.0 if j == jp else 0.0
                    assert s == pytest.approx(want, abs=1e-12)


class TestWignerD1:
    def test_diagonal_cos(self):
        for th in np.linspace(0, math.pi, 7):
            assert wigner_D1(0, 0, 0.3, th) == pytest.approx(math.cos(th), abs=1e-14)

    def test_theta_zero_phase(self):
        for q in (-1, 0, 1):
            for Y in (-1, 0, 1):
                val = wigner_D1(q, Y, 0.7, 0.0)
                want = np.exp(-1j * q * 0.7) if q == Y else 0.0
                assert val == pytest.approx(want, abs=1e-14)

    def test_pinned_element(self):
        assert wigner_D1(0, 1, 0.0, math.pi / 2) == pytest.approx(-1 / math.sqrt(2), abs=1e-14)

    def test_matches_jy_exponential(self):
        # passive convention: D^1_{qY}(0, theta) = [exp(-i theta Jy)]_{Y q}
        ms = [1, 0, -1]
        for th in (0.3, 1.1, 2.4):
            R = expm(-1j * th * jy_matrix(1))
            for a, q in enumerate(ms):
                for b, Y in enumerate(ms):
                    assert wigner_D1(q, Y, 0.0, th) == pytest.approx(R[b, a], abs=1e-12)

    def test_unitarity(self):
        for phi, th in [(0.0, 0.4), (1.2, 1.9), (2.2, 3.0)]:
            D = np.array([[wigner_D1(q, Y, phi, th) for Y in (1, 0, -1)] for q in (1, 0, -1)])
            assert np.allclose(D @ D.conj().T, np.eye(3), atol=1e-12)

    def test_rotation_matrix_consistent(self):
        R = rotation_matrix(1, 0.5, 1.2)
        assert np.allclose(R, expm(-1j * 0.5 * np.diag([1, 0, -1])) @ expm(-1j * 1.2 * jy_matrix(1)), atol=1e-12)


class TestDipoleElement:
    def test_f0_free_rotor(self):
        assert dipole_element(0, 0, 0, "up") == pytest.approx(1 / math.sqrt(3), abs=1e-15)

    def test_f1_free_rotor(self):
        assert dipole_element(0, 0, 1, "up") == pytest.approx(1 / math.sqrt(3), abs=1e-15)

    def test_j1_to_j2(self):
        assert dipole_element(1, 0, 0, "up") == pytest.approx(2 / math.sqrt(15), abs=1e-15)

    def test_invalid_target_raises(self):
        with pytest.raises(ValueError):
            dipole_element(1, 1, 1, "down")  # would need |M|=2 in J=0

    def test_hermiticity(self):
        # <J',M'|d_q|J,M> = (-1)^q <J,M|d_-q|J',M'> for all pairs with J <= 3
        for J in range(0, 4):
            for M in range(-J, J + 1):
                for q in (-1, 0, 1):
                    for direction, Jp in (("up", J + 1), ("down", J - 1)):
                        Mp = M + q
                        if Jp < 0 or Jp > 3 or abs(Mp) > Jp:
                            continue
                        fwd = dipole_element(J, M, q, direction)
                        back = dipole_element(Jp, Mp, -q, "down" if direction == "up" else "up")
                        assert fwd == pytest.approx((-1) ** q * back, abs=1e-14)


class TestSphericalComponents:
    def test_c1_values(self):
        th, ph = 0.9, 0.4
        assert c1q(0, th, ph) == pytest.approx(math.cos(th))
        assert c1q(1, th, ph) == pytest.approx(-math.sin(th) * np.exp(1j * ph) / math.sqrt(2))
        assert c1q(-1, th, ph) == pytest.approx(math.sin(th) * np.exp(-1j * ph) / math.sqrt(2))

    def test_c2_conjugation(self):
        th, ph = 1.1, 0.7
        for q in (1, 2):
            assert c2q(-q, th, ph) == pytest.approx((-1) ** q * np.conj(c2q(q, th, ph)), abs=1e-14)

    def test_tensor_diagonal(self):
        assert tensor_c20_diagonal(0, 0) == 0.0
        assert tensor_c20_diagonal(1, 0) == pytest.approx(2 / 5)
        assert tensor_c20_diagonal(1, 1) == pytest.approx(-1 / 5)

import math

import numpy as np
import pytest

from polarpair.errors import ConfigurationError
from polarpair.pair import (CharScales, PairBasis, StateLabel, asymptotic_states,
                            bare_surfaces, characteristic_scales, fit_long_range,
                            pair_hamiltonian, table2_rows, table3_rows,
                            v_eff_3d_dc, vdd_matrix)
from polarpair.units import MoleculeParams

BASIS1 = PairBasis(1)
BASIS2 = PairBasis(2)

SRO = MoleculeParams.from_si(d_debye=8.9, b_over_h_hz=10e9, mass_amu=104.0)


class TestVddMatrix:
    def test_hermitian_at_random_angles(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            r, th, ph = rng.uniform(1, 10), rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
            V = vdd_matrix(r, th, ph, BASIS1)
            assert np.linalg.norm(V - V.conj().T) < 1e-13

    def test_resonant_transfer_element(self):
        # <0,0;1,0|V_dd|1,0;0,0> at theta=0 -> -(2/3)/r^3 (units d^2)
        V = vdd_matrix(2.0, 0.0, 0.0, BASIS1)
        i_01 = BASIS1.index[(0, 0)] * BASIS1.nsingle + BASIS1.index[(1, 0)]
        i_10 = BASIS1.index[(1, 0)] * BASIS1.nsingle + BASIS1.index[(0, 0)]
        assert V[i_01, i_10] == pytest.approx(-(2 / 3) / 2.0**3, abs=1e-14)

    def test_inverse_cube_scaling(self):
        V1 = vdd_matrix(3.0, 1.0, 0.5, BASIS1)
        V2 = vdd_matrix(6.0, 1.0, 0.5, BASIS1)
        assert np.allclose(V2, V1 / 8.0, atol=1e-15)

    def test_rejects_nonpositive_r(self):
        with pytest.raises(ValueError):
            vdd_matrix(0.0, 0.0, 0.0, BASIS1)

    def test_permutation_block_diagonality(self):
        rng = np.random.default_rng(5)
        for _ in range(4):
            r, th, ph = rng.uniform(1, 8), rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
            H = pair_hamiltonian(r, th, ph, 0.3, BASIS1)
            cross = BASIS1.sym.T @ H @ BASIS1.anti
            assert np.abs(cross).max() < 1e-13

    def test_phi_independence_of_spectrum(self):
        for phi in (0.9, 2.5):
            h0 = pair_hamiltonian(3.0, 1.1, 0.0, 0.2, BASIS1)
            h1 = pair_hamiltonian(3.0, 1.1, phi, 0.2, BASIS1)
            e0 = np.linalg.eigvalsh(h0)
            e1 = np.linalg.eigvalsh(h1)
            assert np.abs(e0 - e1).max() < 1e-12

    def test_zero_field_y_block_structure(self):
        # with the quantization axis on e_r, H_int conserves Y = M1 + M2
        H = pair_hamiltonian(2.5, 0.0, 0.0, 0.0, BASIS1)
        mtot = BASIS1.m_total_diag()
        for a in range(BASIS1.nproduct):
            for b in range(BASIS1.nproduct):
                if mtot[a] != mtot[b]:
                    assert abs(H[a, b]) < 1e-12


def _fit_tracks(surface, window):
    sel = (surface.r >= window[0]) & (surface.r <= window[1])
    out = {}
    for i, lab in enumerate(surface.labels):
        a, c3, c6 = fit_long_range(surface.r[sel], surface.energies[sel, i])
        out[i] = (a, c3, c6)
    return out


class TestZeroFieldSurfaces:
    @pytest.fixture(scope="class")
    def surface(self):
        rs = np.geomspace(5.0, 40.0, 60)
        return bare_surfaces(rs, 0.0, BASIS2)

    def test_ground_c6(self, surface):
        sel = (surface.r >= 5) & (surface.r <= 20)
        i = surface.find(j=0, sigma=1)[0]
        _, _, c6 = fit_long_range(surface.r[sel], surface.energies[sel, i])
        assert 6 * c6 == pytest.approx(-1.0, rel=0.02)

    def test_first_excited_c3_ladder(self, surface):
        want = {(0, 1): -2 / 3, (1, -1): -1 / 3, (1, 1): 1 / 3, (0, -1): 2 / 3}
        sel = (surface.r >= 8) & (surface.r <= 25)
        for (y, sigma), c3_want in want.items():
            idxs = [i for i in surface.find(j=1, sigma=sigma) if abs(surface.labels[i].proj) == abs(y)]
            assert idxs
            for i in idxs:
                _, c3, _ = fit_long_range(surface.r[sel], surface.energies[sel, i])
                assert c3 == pytest.approx(c3_want, rel=0.002, abs=1e-4)

    def test_all_16_against_table2(self, surface):
        """Fitted (C3, C6) for every track matches the zero-field table to 5%.

        Tracks are picked by (asymptotic energy, Y, sigma); degenerate +-Y
        partners are matched set-wise within each group after sorting by C6.
        With jmax_single = 2 the basis also holds higher manifolds (e.g. a
        second J1+J2 = 2 group at 6B from 0+2 excitation); the energy filter
        keeps only the table's 16 states.
        """
        fits = _fit_tracks(surface, (8.0, 25.0))
        rows = table2_rows()
        groups = {}
        for row in rows:
            groups.setdefault((row.e0, abs(row.label.proj), row.label.sigma), []).append(row)
        for key, grp in groups.items():
            e0, absy, sigma = key
            idxs = [i for i in surface.find(sigma=sigma)
                    if abs(surface.labels[i].proj) == absy
                    and np.isclose(surface.asymptote[i], e0, atol=1e-6)]
            assert len(idxs) == len(grp), key
            got = sorted(6 * fits[i][2] for i in idxs)
            want = sorted(r.c6_6b for r in grp)
            for g, w in zip(got, want):
                assert g == pytest.approx(w, rel=0.05, abs=5e-3), key
            got3 = sorted(fits[i][1] for i in idxs)
            want3 = sorted(r.c3 for r in grp)
            for g, w in zip(got3, want3):
                assert g == pytest.approx(w, rel=0.05, abs=2e-4), key

    def test_pi_pairs_degenerate(self, surface):
        # report both tracks of each +-Y pair and assert pairwise degeneracy
        found = 0
        for (e0, y) in [(2.0, 1), (4.0, 1), (4.0, 2)]:
            for sigma in (1, -1):
                idxs = [i for i in surface.find(sigma=sigma)
                        if abs(surface.labels[i].proj) == y
                        and np.isclose(surface.asymptote[i], e0, atol=1e-6)]
                if len(idxs) != 2:
                    continue
                found += 1
                d = np.abs(surface.energies[:, idxs[0]] - surface.energies[:, idxs[1]])
                assert d.max() < 1e-10
        assert found >= 4

    def test_manifold_asymptotes(self, surface):
        for i, lab in enumerate(surface.labels):
            resid = surface.energies[-1, i] - surface.asymptote[i]
            assert abs(resid) < 2e-4  # 1/r^3 or 1/r^6 tail at r = 40 r_B

    def test_parity_labels(self, surface):
        for lab in surface.labels:
            assert lab.parity == lab.sigma * (-1) ** lab.j


class TestDcSurfaces:
    @pytest.fixture(scope="class")
    def surface(self):
        rs = np.geomspace(6.0, 40.0, 70)
        return bare_surfaces(rs, 0.2, BASIS2, theta=np.pi / 2)

    def test_ground_c3_is_g0_squared(self, surface):
        sel = (surface.r >= 8) & (surface.r <= 25)
        i = surface.find(j=0)[0]
        _, c3, _ = fit_long_range(surface.r[sel], surface.energies[sel, i])
        from polarpair.rotor import dipole_moments, pendulum_spectrum
        g0 = dipole_moments(pendulum_spectrum(0.2, jmax=24)).g0
        assert c3 == pytest.approx(g0 * g0, rel=0.03)

    @staticmethod
    def _match_rows(surface, fits, rows, beta):
        from polarpair.rotor import pendulum_block
        _, e0s, _ = pendulum_block(beta, 0, BASIS2.jmax_single)
        shift = 2 * e0s[0]  # table e0 excludes the common ground Stark shift
        groups = {}
        for row in rows:
            groups.setdefault((round(row.e0, 9), row.label.proj, row.label.sigma), []).append(row)
        out = []
        for key, grp in groups.items():
            e0, m, sigma = key
            idxs = [i for i in surface.find(sigma=sigma)
                    if surface.labels[i].proj == m
                    and np.isclose(surface.asymptote[i], e0 + shift, atol=1e-7)]
            assert len(idxs) == len(grp), key
            got = sorted(idxs, key=lambda i: fits[i][2])
            want = sorted(grp, key=lambda r: r.c6_6b)
            out.extend(zip(got, want))
        return out

    def test_all_16_against_table3_in_plane(self):
        """theta = pi/2 (Upsilon = 1): 5% on C3, 10% on C6 (table is O(beta^2))."""
        rs = np.geomspace(6.0, 40.0, 70)
        surface = bare_surfaces(rs, 0.2, BASIS2, theta=math.pi / 2)
        fits = _fit_tracks(surface, (8.0, 25.0))
        pairs = self._match_rows(surface, fits, table3_rows(0.2), 0.2)
        assert len(pairs) == 16
        for i, row in pairs:
            assert fits[i][1] == pytest.approx(row.c3, rel=0.05, abs=3e-4), (row.n, "c3")
            assert 6 * fits[i][2] == pytest.approx(row.c6_6b, rel=0.10, abs=2e-2), (row.n, "c6")

    def test_table3_off_plane_with_a1_terms(self):
        """theta = pi/3 activates the A1 ~ 1/beta^2 C6 entries.

        Those entries come from near-degenerate intermediates split by
        hbar*delta, so they only hold for r >> r_delta (5.5 r_B here); the
        fit window starts at 20 r_B for C6. C3 keeps the standard window.
        """
        theta = math.pi / 3
        rs = np.geomspace(6.0, 80.0, 90)
        surface = bare_surfaces(rs, 0.2, BASIS2, theta=theta)
        fits = _fit_tracks(surface, (20.0, 60.0))
        rows = table3_rows(0.2, theta=theta)
        pairs = self._match_rows(surface, fits, rows, 0.2)
        for i, row in pairs:
            assert fits[i][1] == pytest.approx(row.c3, rel=0.05, abs=3e-4), (row.n, "c3")
            assert 6 * fits[i][2] == pytest.approx(row.c6_6b, rel=0.10, abs=3e-2), (row.n, "c6")

    def test_asymptotes_include_stark(self, surface):
        from polarpair.rotor import pendulum_block
        _, e0, _ = pendulum_block(0.2, 0, BASIS2.jmax_single)
        ground = surface.find(j=0)[0]
        assert surface.asymptote[ground] == pytest.approx(2 * e0[0], abs=1e-12)


class TestTables:
    def test_table2_row_count_and_entries(self):
        rows = table2_rows()
        assert len(rows) == 16
        by_n = {r.n: r for r in rows}
        assert by_n[0].c6_6b == -1.0
        assert by_n[7].c6_6b == pytest.approx(-(48 - 39 * math.sqrt(3)) / 50)
        assert by_n[8].c6_6b == pytest.approx(-(48 + 39 * math.sqrt(3)) / 50)
        assert by_n[13].note is not None  # published value failed verification

    def test_table3_beta0_limit_reduces_to_table2_where_defined(self):
        rows = table3_rows(1e-9, theta=math.pi / 2)
        by_n = {r.n: r for r in rows}
        # n=5 C3 -> (g0 g2 + f0^2) Upsilon -> d^2/3 at beta -> 0
        assert by_n[5].c3 == pytest.approx(1 / 3, abs=1e-6)
        assert by_n[0].c6_6b == -1.0
        assert by_n[3].c3 == pytest.approx(1 / 3, abs=1e-6)
        assert by_n[1].c3 == pytest.approx(-2 / 3, abs=1e-6)

    def test_table3_xi_example(self):
        # tan(xi) at Upsilon = 1 -> (14-1)(2+1)/(26*2) = 0.75
        U = 1.0
        assert (14 - U) * (2 + U) / (26 * (1 + U)) == pytest.approx(0.75)

    def test_table3_rejects_strong_field(self):
        with pytest.raises(ConfigurationError):
            table3_rows(1.2)


class TestVeff3dDc:
    def test_magic_angle_kills_dipolar_term(self):
        th = math.acos(1 / math.sqrt(3))
        for r in (3.0, 6.0, 10.0):
            assert v_eff_3d_dc(r, th, 0.3) == pytest.approx(-1 / (6 * r**6), rel=1e-10)

    def test_in_plane_maximum(self):
        beta = 0.2
        rstar = (3 / beta**2) ** (1 / 3)
        vstar = beta**4 / 54
        rs = np.linspace(0.5 * rstar, 2.5 * rstar, 4001)
        v = v_eff_3d_dc(rs, math.pi / 2, beta)
        imax = np.argmax(v)
        assert rs[imax] == pytest.approx(rstar, rel=0.01)
        assert v[imax] == pytest.approx(vstar, rel=0.02)

    def test_pole_axis_attractive(self):
        rs = np.geomspace(1.0, 50.0, 50)
        assert np.all(v_eff_3d_dc(rs, 0.0, 0.25) < 0)


class TestCharacteristicScales:
    def test_rstar_ratio_invariant(self):
        for beta in (0.1, 0.3, 0.5):
            sc = characteristic_scales(MoleculeParams.natural(kappa=1e6), beta=beta)
            assert sc.get("r_star") == pytest.approx((3 / beta**2) ** (1 / 3))
            assert sc.get("r_star") > 1

    def test_sro_kappa(self):
        sc = characteristic_scales(SRO)
        assert sc.get("kappa") == pytest.approx(1.26e6, rel=0.03)

    def test_sro_lengths(self):
        delta = 2 * math.pi * 30e3 * 1.054571817e-34 / SRO.b_si  # 30 kHz in B/hbar
        sc = characteristic_scales(SRO, beta=0.1, delta_ac=delta)
        assert sc.get("r_b", si=True) == pytest.approx(11e-9, rel=0.05)
        assert sc.get("r_c", si=True) == pytest.approx(0.5e-6, rel=0.05)

    def test_sro_aperp(self):
        from polarpair.units import omega_si_to_natural
        w = omega_si_to_natural(2 * math.pi * 150e3, SRO)
        sc = characteristic_scales(SRO, beta=0.1, omega_perp=w)
        assert sc.get("a_perp", si=True) == pytest.approx(25e-9, rel=0.05)

    def test_omega_c_order_of_magnitude(self):
        # B = h x 10 GHz, beta = 1/10: omega_c/2pi lands in the kHz-to-MHz window
        from polarpair.units import omega_natural_to_si
        sc = characteristic_scales(SRO, beta=0.1)
        w_si = omega_natural_to_si(sc.get("omega_c"), SRO)
        assert 2 * math.pi * 1e3 < w_si < 2 * math.pi * 1e6

    def test_missing_parameter_names_scale(self):
        sc = characteristic_scales(MoleculeParams.natural())
        with pytest.raises(ConfigurationError, match="r_star"):
            sc.get("r_star")
        with pytest.raises(ConfigurationError, match="omega_c"):
            sc.get("omega_c")

    def test_s0_consistency(self):
        # S0 = sqrt(m |C6|)/r_star^2 with |C6| = 1/6, m = kappa^(2/3)
        sc = characteristic_scales(MoleculeParams.natural(kappa=1.26e6), beta=0.2)
        m = 1.26e6 ** (2 / 3)
        rstar = (3 / 0.04) ** (1 / 3)
        assert sc.get("s0") == pytest.approx(math.sqrt(m / 6) / rstar**2)


class TestAsymptoticStates:
    def test_sector_dimensions(self):
        vs, e0, c3, labels = asymptotic_states(0.0, 0.0, BASIS1, +1)
        assert vs.shape == (10, 10)
        vs, e0, c3, labels = asymptotic_states(0.0, 0.0, BASIS1, -1)
        assert vs.shape == (6, 6)

    def test_orthonormal(self):
        for sigma in (1, -1):
            vs, *_ = asymptotic_states(0.2, 1.0, BASIS2, sigma)
            assert np.allclose(vs.T @ vs, np.eye(vs.shape[1]), atol=1e-10)

    def test_zero_field_labels_cover_table2(self):
        labs = []
        for sigma in (1, -1):
            *_, l = asymptotic_states(0.0, 0.0, BASIS1, sigma)
            labs.extend(l)
        want = {(r.label.j, r.label.proj, r.label.sigma) for r in table2_rows()}
        got = {(l.j, l.proj, l.sigma) for l in labs}
        assert got == want

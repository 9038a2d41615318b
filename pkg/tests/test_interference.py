import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from young import interference as itf
from young.coherence import l1_coherence
from young.fock import PhotonState, StateError, apply_phase_shift, enumerate_basis, one_body_matrix
from young.optimize import TorusSearchConfig
from young.reference_cases import multi_path_optimum, noon_state, two_path_state

from strategies import angles, states

H = 1 / math.sqrt(2)
COARSE = TorusSearchConfig(grid_points_per_dim=16, refine_candidates=4)


def single(c1=H, c2=H):
    return PhotonState.from_vector(2, 1, [c1, c2])


class TestIntensity:
    def test_single_photon_fringe_extremes(self):
        s = single()
        assert itf.intensity(s, [0, 0]) == pytest.approx(2.0)
        assert itf.intensity(s, [np.pi, 0]) == pytest.approx(0.0, abs=1e-15)

    def test_two_photon_peak(self):
        assert itf.intensity(two_path_state([0.5, H, 0.5]), [0, 0]) == pytest.approx(4.0)

    def test_epsilon_scales_quadratically(self):
        s = single(0.6, 0.8)
        assert itf.intensity(s, [0.3, 0], epsilon0=3.0) == pytest.approx(9 * itf.intensity(s, [0.3, 0]))

    def test_bad_epsilon(self):
        with pytest.raises(ValueError):
            itf.intensity(single(), [0, 0], epsilon0=0.0)

    def test_length_mismatch(self):
        with pytest.raises(StateError):
            itf.intensity(single(), [0.0])

    @given(states(), st.data())
    def test_common_offset_and_non_negativity(self, state, data):
        alpha = np.array(data.draw(st.lists(angles, min_size=state.modes, max_size=state.modes)))
        shift = data.draw(angles)
        value = itf.intensity(state, alpha)
        assert value >= -1e-12
        assert itf.intensity(state, alpha + shift) == pytest.approx(value, abs=1e-12)

    @given(states(max_photons=3))
    def test_torus_mean_is_photon_number(self, state):
        k = 4  # frequencies are in {-1, 0, 1}, so any grid with k >= 3 averages exactly
        axis = 2 * np.pi * np.arange(k) / k
        grid = np.stack(np.meshgrid(*[axis] * (state.modes - 1), indexing="ij"), -1)
        rows = grid.reshape(-1, state.modes - 1)
        rows = np.concatenate([rows, np.zeros((len(rows), 1))], axis=1)
        mean = float(np.mean(itf.intensity_from_matrix(one_body_matrix(state), rows)))
        assert abs(mean - state.photons) <= 1e-10

    def test_clamp(self):
        assert itf.clamp(-5e-13) == 0.0
        with pytest.raises(ArithmeticError):
            itf.clamp(-1e-9)


class TestFringe:
    def test_single_photon_samples(self):
        curve = itf.fringe_curve(single(), 0, 4)
        np.testing.assert_allclose(curve.intensities, [2, 1, 0, 1], atol=1e-12)
        np.testing.assert_allclose(curve.phases, [0, np.pi / 2, np.pi, 3 * np.pi / 2])

    def test_noon_is_flat(self):
        np.testing.assert_allclose(itf.fringe_curve(noon_state(2), 0, 32).intensities, 2.0, atol=1e-12)

    def test_single_term_is_flat(self):
        s = PhotonState.from_terms([((1, 0), 1.0)])
        np.testing.assert_allclose(itf.fringe_curve(s, 1, 8).intensities, 1.0)

    def test_invalid_inputs(self):
        with pytest.raises(StateError):
            itf.fringe_curve(single(), 2, 8)
        with pytest.raises(StateError):
            itf.fringe_curve(single(), 0, 1)

    def test_csv(self):
        text = itf.fringe_curve(single(), 0, 360).to_csv()
        lines = text.splitlines()
        assert lines[0] == "phase_rad,intensity" and len(lines) == 361


class TestVisibility:
    @pytest.mark.parametrize("c1", [0.1, 0.3, 0.6, H])
    def test_single_photon(self, c1):
        c2 = math.sqrt(1 - c1 * c1)
        v = itf.visibility(single(c1, c2))
        assert v.visibility == pytest.approx(2 * c1 * c2, abs=1e-12)
        assert v.method is itf.Method.SCAN_1D

    def test_three_path_uniform(self):
        v = itf.visibility(multi_path_optimum(3, 1))
        assert v.visibility == pytest.approx(1.0, abs=1e-9)
        assert v.i_min == pytest.approx(0.0, abs=1e-12)
        # conjugate minima tie; the lexicographically smaller one wins
        np.testing.assert_allclose(v.phases_at_min, [2 * np.pi / 3, 4 * np.pi / 3, 0], atol=1e-8)
        assert v.method is itf.Method.TORUS_SEARCH

    def test_four_path_three_photon(self):
        state = multi_path_optimum(4, 3)
        assert itf.visibility(state).visibility == pytest.approx(1.0, abs=1e-9)
        assert itf.intensity(state, [0, 0, -np.pi, -np.pi]) == pytest.approx(0.0, abs=1e-12)

    def test_flat_state(self):
        v = itf.visibility(noon_state(3, modes=3))
        assert v.visibility == 0.0 and v.i_max == v.i_min

    def test_to_dict_rounds_phases(self):
        doc = itf.visibility(multi_path_optimum(3, 1)).to_dict()
        assert doc["phases_at_min"] == [2.09439510239, 4.18879020479, 0.0]
        assert doc["method"] == "torus_search"

    @given(states())
    def test_range_and_coherence_bound(self, state):
        v = itf.visibility(state, COARSE)
        assert 0.0 <= v.visibility <= 1.0
        assert v.i_max >= v.i_min >= 0.0
        assert v.visibility <= l1_coherence(state) + 1e-9
        if v.i_max > v.i_min:
            assert abs(v.visibility - (v.i_max - v.i_min) / (v.i_max + v.i_min)) <= 1e-12

    @given(states(), st.data())
    def test_gauge_invariance(self, state, data):
        theta = np.array(data.draw(st.lists(angles, min_size=state.modes, max_size=state.modes)))
        a, b = itf.visibility(state, COARSE), itf.visibility(apply_phase_shift(state, theta), COARSE)
        assert abs(a.i_max - b.i_max) <= 1e-9
        assert abs(a.i_min - b.i_min) <= 1e-9
        assert abs(a.visibility - b.visibility) <= 1e-9

    @given(states(), st.randoms())
    def test_mode_permutation_invariance(self, state, rnd):
        perm = list(range(state.modes))
        rnd.shuffle(perm)
        permuted = PhotonState.from_terms(
            (tuple(occ[p] for p in perm), c) for occ, c in state.terms()
        )
        a, b = itf.visibility(state, COARSE), itf.visibility(permuted, COARSE)
        assert abs(a.visibility - b.visibility) <= 1e-9

    @given(st.integers(2, 4), st.integers(2, 4), st.data())
    def test_collective_only_has_zero_visibility(self, modes, photons, data):
        picks = data.draw(st.lists(st.integers(0, modes - 1), min_size=2, max_size=modes, unique=True))
        re = data.draw(st.lists(st.floats(0.1, 1.0), min_size=len(picks), max_size=len(picks)))
        terms = []
        for k, r in zip(picks, re):
            occ = [0] * modes
            occ[k] = photons
            terms.append((occ, r * np.exp(1j * k)))
        state = PhotonState.from_terms(terms, renormalize=True)
        assert itf.visibility(state, COARSE).visibility == 0.0
        curve = itf.fringe_curve(state, 0, 16)
        assert np.ptp(curve.intensities) <= 1e-12


class TestTwoPathClosedForm:
    @pytest.mark.parametrize(
        "moduli, expected",
        [
            ((H, H), 1.0),
            ((0.5, H, 0.5), 1.0),
            ((H, 0.0, H), 0.0),
            ((0.25, 0.5, math.sqrt(6) / 4, 0.5, 0.25), 1.0),
        ],
    )
    def test_values(self, moduli, expected):
        assert itf.two_path_visibility_analytic(moduli) == pytest.approx(expected, abs=1e-12)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            itf.two_path_visibility_analytic((0.5, 0.5))

    @given(st.integers(1, 6), st.data())
    def test_matches_numeric_when_phase_matched(self, n, data):
        raw = np.array(data.draw(st.lists(st.floats(0.0, 1.0), min_size=n + 1, max_size=n + 1)))
        if np.linalg.norm(raw) < 1e-3:
            raw[0] = 1.0
        moduli = raw / np.linalg.norm(raw)
        start, step = data.draw(angles), data.draw(angles)
        state = two_path_state(moduli, start - step * np.arange(n + 1))
        assert itf.is_phase_matched(state)
        numeric = itf.visibility(state).visibility
        assert abs(numeric - itf.two_path_visibility_analytic(itf.two_path_moduli(state))) <= 1e-6

    def test_phase_mismatch_detected(self):
        state = two_path_state([0.5, H, 0.5], [0.0, 0.0, 1.0])
        assert not itf.is_phase_matched(state)
        # the numeric visibility falls below the closed form once the phases disagree
        assert itf.visibility(state).visibility < itf.two_path_visibility_analytic([0.5, H, 0.5])

    def test_basis_order_matches_closed_form(self):
        assert enumerate_basis(2, 3) == [(3, 0), (2, 1), (1, 2), (0, 3)]

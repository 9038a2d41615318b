import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from young.coherence import PairKind, StateClass, classify_pair, decompose, l1_coherence
from young.fock import PhotonState, enumerate_basis, hopping_element
from young.reference_cases import PAIR_COUNTS, full_basis_state

from strategies import occupation_pairs, states

H = 1 / math.sqrt(2)


@pytest.mark.parametrize(
    "modes, photons, amps, expected",
    [
        (2, 1, [H, H], 1.0),
        (2, 2, [H, 0.0, H], 1.0),
        (3, 1, [1 / math.sqrt(3)] * 3, 2.0),
    ],
)
def test_l1_values(modes, photons, amps, expected):
    state = PhotonState.from_vector(modes, photons, amps)
    assert l1_coherence(state) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize(
    "a, b, kind",
    [
        ((2, 0), (1, 1), PairKind.LOCAL),
        ((2, 0), (0, 2), PairKind.COLLECTIVE),
        ((1, 1, 0), (1, 0, 1), PairKind.LOCAL),
        ((2, 0, 0), (0, 1, 1), PairKind.COLLECTIVE),
        ((3, 0, 0), (1, 1, 1), PairKind.COLLECTIVE),
    ],
)
def test_classify_examples(a, b, kind):
    assert classify_pair(a, b) is kind


def test_classify_rejects_identical_and_mismatched():
    with pytest.raises(ValueError):
        classify_pair((1, 1), (1, 1))
    with pytest.raises(ValueError):
        classify_pair((1, 1), (1, 0, 1))
    with pytest.raises(ValueError):
        classify_pair((2, 0), (1, 0))


def test_two_photon_two_path_structure():
    report = decompose(PhotonState.from_vector(2, 2, [0.5, H, 0.5]))
    kinds = {(e.index_a, e.index_b): e.kind for e in report.entries}
    assert kinds == {(0, 1): PairKind.LOCAL, (0, 2): PairKind.COLLECTIVE, (1, 2): PairKind.LOCAL}
    assert report.state_class is StateClass.MIXED


def test_single_term_is_incoherent():
    report = decompose(PhotonState.from_terms([((2, 0), 1.0)]))
    assert report.total == 0.0 and report.entries == ()
    assert report.state_class is StateClass.INCOHERENT


def test_noon_is_collective_only():
    report = decompose(PhotonState.from_terms([((3, 0), H), ((0, 3), H)]))
    assert report.state_class is StateClass.COLLECTIVE_ONLY


def test_single_photon_is_local_only():
    report = decompose(PhotonState.from_vector(3, 1, [0.6, 0.0, 0.8]))
    assert report.state_class is StateClass.LOCAL_ONLY


@pytest.mark.parametrize("size, counts", sorted(PAIR_COUNTS.items()))
def test_pair_counts(size, counts):
    report = decompose(full_basis_state(*size))
    assert (report.local_count, len(report.entries)) == counts


def test_zero_amplitudes_skipped():
    state = PhotonState.from_vector(2, 2, [H, 0.0, H])
    assert len(decompose(state).entries) == 1


def test_to_dict_is_sorted_and_labelled():
    state = full_basis_state(3, 2)
    doc = decompose(state).to_dict(state)
    keys = [(e["index_a"], e["index_b"]) for e in doc["entries"]]
    assert keys == sorted(keys)
    assert doc["entries"][0]["occ_a"] == [2, 0, 0]


@given(states())
def test_sum_rule_and_entry_invariants(state):
    report = decompose(state)
    assert abs(report.total - l1_coherence(state)) <= 1e-12
    assert abs(report.total - report.local_sum - report.collective_sum) <= 1e-12
    live = int(np.count_nonzero(state.moduli))
    assert len(report.entries) == live * (live - 1) // 2
    for e in report.entries:
        assert e.index_a < e.index_b
        assert abs(e.coherence - 2 * state.moduli[e.index_a] * state.moduli[e.index_b]) <= 1e-12


@given(occupation_pairs(), st.randoms())
def test_symmetric_and_permutation_invariant(pair, rnd):
    a, b = pair
    if a == b:
        return
    perm = list(range(len(a)))
    rnd.shuffle(perm)
    kind = classify_pair(a, b)
    assert classify_pair(b, a) is kind
    assert classify_pair([a[p] for p in perm], [b[p] for p in perm]) is kind


def test_local_iff_some_hopping_element():
    for modes in range(2, 5):
        for photons in range(1, 5):
            for a, b in itertools.combinations(enumerate_basis(modes, photons), 2):
                hops = any(
                    hopping_element(a, b, i, j) > 0
                    for i in range(modes)
                    for j in range(modes)
                    if i != j
                )
                assert (classify_pair(a, b) is PairKind.LOCAL) == hops

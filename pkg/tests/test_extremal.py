from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

import tourneykit as tk
from tourneykit.errors import BadSpec, TooLargeForExhaustive
from tourneykit.extremal import layers_separate, smallest_strongly_k_connected_subset

FIG1_ORDER = ("x2", "x1", "w*", "z1_1,1", "z1_2,1", "z1_2,2", "z2_1,1", "z2_2,1", "z2_2,2",
              "w1", "w2", "y1", "y2")

SMALL_SPECS = [(2, 2, 1), (2, 2, 2), (2, 3, 1), (2, 3, 2), (3, 2, 1), (3, 2, 5), (3, 3, 1), (3, 3, 5)]


def test_spec_222_roles():
    spec = tk.ExtremalSpec(2, 2, 2)
    assert spec.n == 13
    assert spec.roles == FIG1_ORDER
    assert spec.index("w*") == 2


def test_back_arcs_222():
    spec = tk.ExtremalSpec(2, 2, 2)
    named = sorted((spec.roles[u], spec.roles[v]) for u, v in spec.back_arcs())
    assert named == sorted([
        ("z1_1,1", "x1"), ("z1_2,1", "x2"), ("z1_2,2", "x2"),
        ("y1", "z2_1,1"), ("y2", "z2_2,1"), ("y2", "z2_2,2"),
        ("z2_1,1", "z1_1,1"), ("z2_2,1", "z1_2,1"), ("z2_2,2", "z1_2,2"),
    ])


@pytest.mark.parametrize("s,m,sp", SMALL_SPECS)
def test_back_arc_count_and_orientation(s, m, sp):
    spec = tk.ExtremalSpec(s, m, sp)
    back = set(spec.back_arcs())
    assert len(back) == (m + 1) * comb(s + 1, 2)
    assert len(spec.roles) == spec.n == len(set(spec.roles))
    t = tk.extremal_tournament(spec)
    assert t.is_tournament()
    for u in range(t.n):
        for v in range(u + 1, t.n):
            assert t.has_arc(v, u) == ((v, u) in back)
    assert t.labels == spec.roles
    assert t.meta["s"] == s and t.meta["m"] == m and t.meta["sprime"] == sp


def test_spec_321_order():
    spec = tk.ExtremalSpec(3, 2, 2)
    assert spec.n == 21
    assert spec.roles[:4] == ("x3", "x2", "x1", "w*")
    assert spec.roles[4:10] == ("z1_1,1", "z1_2,1", "z1_2,2", "z1_3,1", "z1_3,2", "z1_3,3")
    assert spec.roles[-5:] == ("w1", "w2", "y1", "y2", "y3")


def test_spec_rejections():
    with pytest.raises(BadSpec):
        tk.ExtremalSpec(1, 2, 1)
    with pytest.raises(BadSpec):
        tk.ExtremalSpec(2, 1, 1)
    with pytest.raises(BadSpec):
        tk.ExtremalSpec(2, 2, 0)
    with pytest.raises(BadSpec):
        tk.ExtremalSpec(2, 2, 3)


@given(st.integers(2, 6), st.integers(2, 6), st.data())
def test_size_hypothesis_always_met(s, m, data):
    block = comb(s + 1, 2)
    sp = data.draw(st.integers(1, block - 1))
    spec = tk.ExtremalSpec(s, m, sp)
    # the m = 2, s' = 1 corner meets the bound with equality
    assert spec.n - (2 * block + 2 * s + 2) == (m - 2) * block + sp - 1
    assert spec.meets_size_hypothesis


@pytest.mark.parametrize("s,m,sp", SMALL_SPECS)
def test_three_claims(s, m, sp):
    spec = tk.ExtremalSpec(s, m, sp)
    t = tk.extremal_tournament(spec)
    cert = tk.certify_extremal(t, spec, 2)
    assert cert.kappa_exact >= s
    assert cert.diameter_exact >= Fraction(spec.n - 2 * s, comb(s + 1, 2))
    assert all(cert.layers_separate) and len(cert.layers_separate) == m
    if spec.n <= 16:
        assert cert.subtournament_verified
        assert cert.min_k_subtournament >= cert.size_bound
    else:
        assert not cert.subtournament_verified and cert.min_k_subtournament is None
    assert cert.ok


def test_certify_222(ext222):
    spec = tk.ExtremalSpec(2, 2, 2)
    cert = tk.certify_extremal(ext222, spec, 2)
    assert cert.kappa_exact >= 2 and cert.diameter_exact >= 3
    assert cert.size_bound == Fraction(14, 3)
    assert cert.min_k_subtournament >= 5
    w = tk.mask_of(cert.min_witness)
    assert tk.is_strongly_k_connected(ext222, 2, w)


def test_layer_pruning_matches_full_scan(ext222):
    spec = tk.ExtremalSpec(2, 2, 2)
    layers = [spec.layer(i) for i in (1, 2)]
    assert (smallest_strongly_k_connected_subset(ext222, 2, layers)
            == smallest_strongly_k_connected_subset(ext222, 2))


def test_deleting_a_layer_cuts_y_from_x(ext222):
    assert layers_separate(ext222, tk.ExtremalSpec(2, 2, 2)) == [True, True]


def test_certify_errors(ext222):
    spec = tk.ExtremalSpec(2, 2, 2)
    with pytest.raises(ValueError):
        tk.certify_extremal(ext222, spec, 3)
    with pytest.raises(BadSpec):
        tk.certify_extremal(ext222, tk.ExtremalSpec(2, 2, 1), 2)


def test_minimal_examples(c3):
    assert tk.is_minimally_strongly_k_connected(c3, 1) == (True, None)
    apex = tk.make_tournament(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
    assert tk.is_minimally_strongly_k_connected(apex, 1) == (False, (0, 1, 2))


def test_minimal_witness_of_222(ext222):
    cert = tk.certify_extremal(ext222, tk.ExtremalSpec(2, 2, 2), 2)
    sub = tk.induced_subdigraph(ext222, cert.min_witness)
    assert tk.is_minimally_strongly_k_connected(sub, 2) == (True, None)


def test_minimal_too_large():
    with pytest.raises(TooLargeForExhaustive):
        tk.is_minimally_strongly_k_connected(tk.random_tournament(17, 0), 1)


def test_triangle_is_the_only_minimal_1_connected_up_to_5():
    for n in range(3, 6):
        for t in tk.enumerate_labeled_tournaments(n):
            minimal, _ = tk.is_minimally_strongly_k_connected(t, 1)
            assert minimal == (n == 3 and tk.is_strongly_connected(t))

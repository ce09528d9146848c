import pytest
from hypothesis import given, strategies as st

import tourneykit as tk
from tourneykit.errors import BadLength, NotStronglyConnected
from tourneykit.results import Status

import oracles


def strong_tournaments(min_n=3, max_n=40):
    def build(n, seed):
        t = tk.random_tournament(n, seed)
        return t if tk.is_strongly_connected(t) else None
    return st.builds(build, st.integers(min_n, max_n), st.integers(0, 2**32)).filter(lambda t: t is not None)


def test_camion_c3(c3):
    assert tk.camion_cycle(c3).vertices == (0, 1, 2)


def test_camion_transitive():
    with pytest.raises(NotStronglyConnected) as e:
        tk.camion_cycle(tk.transitive_tournament(5))
    u, v = e.value.pair
    assert v not in oracles.reachable(oracles.out_sets(tk.transitive_tournament(5)), u, set(range(5)))


def test_camion_small_strong():
    with pytest.raises(BadLength):
        tk.camion_cycle(tk.make_tournament(1, []))


def test_camion_all_n5():
    count = 0
    for t in tk.enumerate_labeled_tournaments(5):
        if tk.is_strongly_connected(t):
            c = tk.camion_cycle(t)
            assert c.is_valid(t, 3) and len(c) == 5
            count += 1
        else:
            with pytest.raises(NotStronglyConnected):
                tk.camion_cycle(t)
    assert count == 544


def test_moon_examples(c3, paley7):
    assert tk.moon_cycle(c3, 0, 3).vertices == (0, 1, 2)
    for v in range(7):
        for length in range(3, 8):
            c = tk.moon_cycle(paley7, v, length)
            assert c.is_valid(paley7, 3) and len(c) == length and v in c


def test_moon_errors(c3):
    with pytest.raises(BadLength):
        tk.moon_cycle(c3, 0, 4)
    with pytest.raises(BadLength):
        tk.moon_cycle(c3, 0, 2)
    with pytest.raises(NotStronglyConnected):
        tk.moon_cycle(tk.transitive_tournament(4), 0, 3)


def test_cycle_canonical():
    assert tk.Cycle((2, 0, 1)).vertices == (0, 1, 2)
    assert not tk.Cycle((0, 2, 1)).is_valid(tk.cycle_digraph(3))


@given(strong_tournaments())
def test_camion_property(t):
    c = tk.camion_cycle(t)
    assert c.is_valid(t, 3) and c.mask == t.all_mask


@given(strong_tournaments(), st.data())
def test_moon_property(t, data):
    v = data.draw(st.integers(0, t.n - 1))
    length = data.draw(st.integers(3, t.n))
    c = tk.moon_cycle(t, v, length)
    assert c.is_valid(t, 3) and len(c) == length and v in c
    if length == t.n:
        assert len(tk.camion_cycle(t)) == len(c)


def test_moon_on_subset():
    t = tk.random_tournament(30, 3)
    comps = tk.strongly_connected_components(t)
    big = max(comps, key=len)
    c = tk.moon_cycle(t, big[0], len(big), tk.mask_of(big))
    assert set(c.vertices) == set(big)


def test_camion_large():
    t = tk.random_tournament(400, 1)
    assert tk.is_strongly_connected(t)
    assert tk.camion_cycle(t).is_valid(t, 3)


def test_two_cycles_paley_none(paley7):
    for v in range(7):
        res = tk.two_cycle_partition(paley7, v, 3)
        assert res.status is Status.NONE
        res = tk.two_cycle_partition(paley7, v, 4)
        assert res.status is Status.NONE


def test_two_cycles_transitive():
    assert tk.two_cycle_partition(tk.transitive_tournament(6), 0, 3).status is Status.NONE


def test_two_cycles_bad_length(c3):
    with pytest.raises(BadLength):
        tk.two_cycle_partition(c3, 0, 3)
    with pytest.raises(BadLength):
        tk.two_cycle_partition(tk.random_tournament(8, 1), 0, 6)


def test_two_cycles_matches_oracle_n8():
    agreed = found = 0
    for seed in range(300):
        t = tk.random_tournament(8, seed)
        if not tk.is_strongly_k_connected(t, 2):
            continue
        v = seed % 8
        truth = tk.factor_oracle(t, tk.FactorSpec((3, 5), (v, None)))
        res = tk.two_cycle_partition(t, v, 3)
        assert res.found == truth
        if res.found:
            c1, c2 = res.value
            assert v in c1 and len(c1) == 3 and len(c2) == 5
            assert c1.is_valid(t, 3) and c2.is_valid(t, 3)
            assert c1.mask | c2.mask == t.all_mask
            found += 1
        agreed += 1
    assert agreed > 20 and found > 0

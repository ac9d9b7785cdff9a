from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from polybern.bijections import weight_polynomial
from polybern.callan import CallanPerm, blue, red, validate as validate_callan, weight_lr
from polybern.errors import ValidationError
from polybern.oracle import spb_formula
from polybern.tableaux import PackedTableau, iter_packed, tableau_from_json
from polybern.trees import (
    DoubleTree, enumerate_trees, iter_trees, packed_to_tree, render, tree_to_callan, tree_to_packed,
    validate, weight_ch,
)


def brute_trees(n, k):
    """Every parent assignment of the opposite colour, filtered by the validator."""
    red_opts = [blue(j) for j in range(k + 1)]
    blue_opts = [red(i) for i in range(n + 1)]
    out = set()
    for rp in product(red_opts, repeat=n):
        for bp in product(blue_opts, repeat=k):
            t = DoubleTree(n, k, rp, bp)
            if validate(t):
                out.add(t)
    return out


def T(n, k, rp, bp):
    return DoubleTree.from_json({"n": n, "k": k, "redParent": rp, "blueParent": bp})


def test_worked_tree(fixture):
    t = DoubleTree.from_json(fixture("tree_7x6.json"))
    assert validate(t)
    assert weight_ch(t) == 2
    lines = render(t).splitlines()
    assert lines[0] == "r0" and "b0" in lines


def test_invalid_trees():
    cyclic = DoubleTree(1, 1, (blue(1),), (red(1),))
    assert not validate(cyclic)
    # red 2 under blue 1 under red 1? fine; red 1 under blue 1 under red 2 is not
    bad = DoubleTree(2, 1, (blue(1), blue(0)), (red(2),))
    assert not validate(bad)
    with pytest.raises(ValidationError):
        T(1, 1, {"1": "b1"}, {"1": "r1"})


def test_one_by_one():
    expected = {
        T(1, 1, {"1": "b0"}, {"1": "r0"}),
        T(1, 1, {"1": "b0"}, {"1": "r1"}),
        T(1, 1, {"1": "b1"}, {"1": "r0"}),
    }
    got = list(enumerate_trees(1, 1))
    assert set(got) == expected
    assert sorted(weight_ch(t) for t in got) == [0, 0, 1]
    assert list(enumerate_trees(0, 0)) == [DoubleTree(0, 0, (), ())]


@pytest.mark.parametrize("n,k", [(n, k) for n in range(4) for k in range(4) if n + k <= 5])
def test_generator_matches_brute_force(n, k):
    got = list(iter_trees(n, k))
    assert len(got) == len(set(got)) and set(got) == brute_trees(n, k)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(4) for k in range(4)])
def test_weight_distribution(n, k):
    assert weight_polynomial(iter_trees(n, k), weight_ch) == spb_formula(n, k)


def test_worked_correspondences(fixture):
    p = tableau_from_json(fixture("packed_7x6.json"))
    t = DoubleTree.from_json(fixture("tree_7x6.json"))
    c = CallanPerm.from_json(fixture("callan_7x6.json"))
    assert packed_to_tree(p) == t
    assert tree_to_packed(t) == p
    assert tree_to_callan(t) == c


def test_small_maps():
    bare = packed_to_tree(PackedTableau(0, 0))
    assert bare == DoubleTree(0, 0, (), ())
    assert tree_to_callan(bare) == CallanPerm(0, 0, (), ())
    chain = T(1, 1, {"1": "b1"}, {"1": "r0"})
    assert tree_to_callan(chain) == CallanPerm(1, 1, (blue(1), red(1)), ())
    assert weight_ch(chain) == weight_lr(tree_to_callan(chain)) == 1


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_round_trips_and_weights(n, k, data):
    p = data.draw(st.sampled_from(list(iter_packed(n, k))))
    t = packed_to_tree(p)
    assert validate(t) and tree_to_packed(t) == p
    c = tree_to_callan(t)
    assert validate_callan(c) and weight_lr(c) == weight_ch(t)


def test_packed_to_tree_rejects_invalid():
    with pytest.raises(ValidationError):
        packed_to_tree(PackedTableau(1, 1))


def test_json_round_trip():
    for t in enumerate_trees(2, 2):
        assert DoubleTree.from_json(t.to_json()) == t

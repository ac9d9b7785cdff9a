from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from polybern.bijections import weight_polynomial
from polybern.callan import (
    CallanPerm, blue, classify, enumerate_callan, iter_callan, phi, red, standardize_reds, tokens,
    validate, weight_br, weight_lr, weight_rl,
)
from polybern.errors import DomainError, ValidationError
from polybern.oracle import spb_formula


def C(n, k, s1, s2):
    return CallanPerm.parse(n, k, s1, s2)


def brute_callan(n, k):
    """All splits of all orderings of the tokens, filtered by the validator."""
    toks = [red(i) for i in range(1, n + 1)] + [blue(j) for j in range(1, k + 1)]
    found = set()
    for order in permutations(toks):
        for cut in range(len(order) + 1):
            p = CallanPerm(n, k, order[:cut], order[cut:])
            if validate(p):
                found.add(p)
    return found


def test_worked_example_is_valid(fixture):
    p = CallanPerm.from_json(fixture("callan_7x6.json"))
    assert validate(p)
    assert weight_lr(p) == 2
    assert weight_br(p) == 2


def test_invalid_examples():
    assert not validate(CallanPerm(1, 0, (red(1),), ()))
    assert not validate(CallanPerm(0, 2, (blue(1), blue(2)), ()))
    with pytest.raises(ValidationError):
        CallanPerm.from_json({"s1": ["r1"], "s2": []})
    with pytest.raises(ValidationError):
        CallanPerm.from_json({"s1": ["x1"]})


def test_small_enumerations():
    assert set(enumerate_callan(1, 1)) == {C(1, 1, "b1 r1", ""), C(1, 1, "b1", "r1"), C(1, 1, "", "r1 b1")}
    assert list(enumerate_callan(3, 0)) == [C(3, 0, "", "r3 r2 r1")]
    assert list(enumerate_callan(0, 0)) == [CallanPerm(0, 0, (), ())]
    assert str(CallanPerm(0, 0, (), ())) == "(∅, ∅)"


@pytest.mark.parametrize("n,k", [(n, k) for n in range(3) for k in range(3)] + [(1, 3), (3, 1)])
def test_generator_matches_brute_force(n, k):
    got = list(iter_callan(n, k))
    assert len(got) == len(set(got))
    assert set(got) == brute_callan(n, k)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(4) for k in range(4)])
def test_canonical_order_and_count(n, k):
    objs = list(enumerate_callan(n, k))
    assert objs == sorted(objs, key=CallanPerm.sort_key)
    assert len(objs) == spb_formula(n, k)(1)


def test_weights_on_small_objects():
    expected = {("b1 r1", ""): 1, ("b1", "r1"): 0, ("", "r1 b1"): 0}
    for (s1, s2), w in expected.items():
        p = C(1, 1, s1, s2)
        assert weight_lr(p) == weight_br(p) == weight_rl(p) == w


def test_weight_lr_empty_s1():
    for p in enumerate_callan(2, 2):
        if not p.s1:
            assert weight_lr(p) == 0


def test_worked_weight_rl_examples(fixture):
    chain = fixture("phi_chain.json")
    assert weight_rl(CallanPerm.from_json(chain["steps"][0])) == 3
    assert weight_rl(C(3, 3, "b2 b1 r3", "r2 b3 r1")) == 0


def test_weight_br_stops_when_s2_leads_with_top_red(fixture):
    # s2 starts with red 7 = red n, so the marking stops before marking anything
    start = CallanPerm.from_json(fixture("phi_chain.json")["steps"][0])
    assert weight_br(start) == 0


@pytest.mark.parametrize("weight", [weight_lr, weight_br, weight_rl])
def test_weight_distributions(weight):
    for n in range(4):
        for k in range(4):
            assert weight_polynomial(iter_callan(n, k), weight) == spb_formula(n, k), (n, k)


def test_standardize_reds():
    assert standardize_reds(tokens("b6 r7 r6 b5 r3 r4 r5")) == tokens("b6 r5 r4 b5 r1 r2 r3")
    assert standardize_reds(tokens("r3 r2 r0 b1")) == tokens("r3 r2 r1 b1")
    assert standardize_reds(tokens("r2 b1 r1")) == tokens("r2 b1 r1")


def test_phi_chain(fixture):
    steps = fixture("phi_chain.json")["steps"]
    perms = [CallanPerm.from_json(s) for s in steps]
    for step, p, q in zip(steps, perms, perms[1:]):
        assert classify(p)[0] == step["case"]
        assert phi(p) == q


def test_phi_domain_error():
    with pytest.raises(DomainError):
        phi(CallanPerm(1, 0, (), (red(1),)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(1, 4), st.data())
def test_phi_lands_in_smaller_class(n, k, data):
    objs = list(iter_callan(n, k))
    p = data.draw(st.sampled_from(objs))
    q = phi(p)
    assert validate(q) and q.k == k - 1 and q.n <= n


def test_json_round_trip():
    for p in enumerate_callan(2, 2):
        assert CallanPerm.from_json(p.to_json()) == p

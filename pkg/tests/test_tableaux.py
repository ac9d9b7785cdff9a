from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from polybern.bijections import weight_polynomial
from polybern.errors import ValidationError
from polybern.oracle import spb_formula
from polybern.tableaux import (
    DOWN, LEFT, AltTableau, PackedTableau, cut, dual_involution, enumerate_alt, enumerate_packed,
    iter_alt, iter_packed, pad, render, tableau_from_json, transpose, validate_alt, validate_packed,
    weight_left, weight_packed_down, weight_packed_left, weight_st,
)

GRID = [(n, k) for n in range(4) for k in range(4)]


def brute_alt(n, k):
    cells = [(r, c) for r in range(1, n + 1) for c in range(1, k + 1)]
    out = set()
    for fill in product((None, LEFT, DOWN), repeat=len(cells)):
        t = AltTableau.from_cells(n, k, [(r, c, a) for (r, c), a in zip(cells, fill) if a])
        if validate_alt(t):
            out.add(t)
    return out


def brute_packed(n, k):
    cells = [(r, c) for r in range(1, n + 2) for c in range(0, k + 1)]
    out = set()
    for fill in product((None, LEFT, DOWN), repeat=len(cells)):
        t = PackedTableau.from_cells(n, k, [(r, c, a) for (r, c), a in zip(cells, fill) if a])
        if validate_packed(t):
            out.add(t)
    return out


def test_worked_tableau(fixture):
    t = tableau_from_json(fixture("tableau_7x6.json"))
    assert validate_alt(t)
    assert weight_st(t) == 2
    assert weight_left(t) == 2
    assert render(t).splitlines()[0] == ".....<"
    assert len(render(t).splitlines()) == 7


def test_worked_packed(fixture):
    t = tableau_from_json(fixture("tableau_7x6.json"))
    p = tableau_from_json(fixture("packed_7x6.json"))
    assert pad(t) == p and cut(p) == t
    assert weight_packed_left(p) == 2
    assert weight_packed_down(p) == 1


def test_validation_examples():
    assert not validate_alt(AltTableau.from_cells(2, 1, [(1, 1, DOWN), (2, 1, LEFT)]))
    assert validate_alt(AltTableau(3, 4))
    assert not validate_packed(PackedTableau(1, 1))
    assert validate_packed(PackedTableau(0, 0))
    with pytest.raises(ValidationError):
        tableau_from_json({"rows": 2, "cols": 1, "cells": [{"r": 1, "c": 1, "a": "D"}, {"r": 2, "c": 1, "a": "L"}]})


def test_small_counts():
    assert set(enumerate_alt(1, 1)) == {AltTableau(1, 1), AltTableau.from_cells(1, 1, [(1, 1, LEFT)]),
                                        AltTableau.from_cells(1, 1, [(1, 1, DOWN)])}
    assert len(list(enumerate_alt(2, 1))) == 7
    assert list(enumerate_alt(4, 0)) == [AltTableau(4, 0)]
    assert len(list(enumerate_packed(1, 1))) == 3
    assert len(list(enumerate_packed(2, 1))) == 7
    assert len(list(enumerate_packed(0, 0))) == 1


@pytest.mark.parametrize("n,k", [(n, k) for n in range(3) for k in range(3) if n * k <= 4])
def test_alt_generator_matches_brute_force(n, k):
    got = list(iter_alt(n, k))
    assert len(got) == len(set(got)) and set(got) == brute_alt(n, k)


@pytest.mark.parametrize("n,k", [(0, 0), (1, 0), (0, 2), (1, 1), (2, 1), (1, 2)])
def test_packed_generator_matches_brute_force(n, k):
    got = list(iter_packed(n, k))
    assert len(got) == len(set(got)) and set(got) == brute_packed(n, k)


def test_weight_st_examples():
    assert weight_st(AltTableau.from_cells(2, 1, [(1, 1, LEFT), (2, 1, LEFT)])) == 1
    assert weight_st(AltTableau.from_cells(2, 2, [(2, 1, LEFT)])) == 0
    assert weight_left(AltTableau.from_cells(1, 1, [(1, 1, LEFT)])) == 1
    assert weight_left(AltTableau.from_cells(1, 1, [(1, 1, DOWN)])) == 0


@pytest.mark.parametrize("n,k", GRID)
def test_weight_distributions(n, k):
    expected = spb_formula(n, k)
    alts = list(iter_alt(n, k))
    packs = list(iter_packed(n, k))
    assert weight_polynomial(alts, weight_st) == expected
    assert weight_polynomial(alts, weight_left) == expected
    assert weight_polynomial(packs, weight_packed_left) == expected
    assert weight_polynomial(packs, weight_packed_down) == expected


def test_pad_examples():
    p = pad(AltTableau(2, 3))
    assert {(r, c) for r, c, a in p.cells if a == LEFT} == {(1, 0), (2, 0)}
    assert {(r, c) for r, c, a in p.cells if a == DOWN} == {(3, 1), (3, 2), (3, 3)}
    single = pad(AltTableau.from_cells(1, 1, [(1, 1, LEFT)]))
    assert single.cells == ((1, 1, LEFT), (2, 1, DOWN))
    assert weight_packed_left(single) == 1


def test_involution_figure(fixture):
    data = fixture("involution_3x3.json")
    src, dst = tableau_from_json(data["input"]), tableau_from_json(data["output"])
    assert dual_involution(src) == dst
    assert dual_involution(dst) == src
    assert weight_packed_down(dst) == 1 == weight_packed_left(src)


def test_involution_fixed_points():
    # nothing to slide: no column-0 row with a down arrow, no bottom column with a left arrow
    p = pad(AltTableau(2, 2))
    assert dual_involution(p) == p


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_involution_and_transpose_properties(n, k, data):
    p = data.draw(st.sampled_from(list(iter_packed(n, k))))
    q = dual_involution(p)
    assert validate_packed(q) and dual_involution(q) == p
    assert weight_packed_left(p) == weight_packed_down(q)
    t = transpose(p)
    assert (t.rows, t.cols) == (k, n) and validate_packed(t) and transpose(t) == p
    assert weight_packed_left(p) == weight_packed_down(t)


def test_transpose_single_cell():
    p = pad(AltTableau.from_cells(1, 1, [(1, 1, LEFT)]))
    t = transpose(p)
    assert weight_packed_down(t) == weight_packed_left(p) == 1


def test_json_round_trip():
    for t in enumerate_alt(2, 2):
        assert tableau_from_json(t.to_json()) == t
    for p in enumerate_packed(2, 2):
        assert tableau_from_json(p.to_json()) == p

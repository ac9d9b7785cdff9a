"""Rectangular alternative tableaux and their packed completions.

Orientation: row 1 is the top row and column 1 the leftmost column.  A packed
tableau of size ``n x k`` adds a bottom row ``n + 1`` and a leftmost column
``0``.  Arrows are ``"L"`` (pointing left) and ``"D"`` (pointing down); every
cell an arrow points at must be empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import ValidationError

LEFT = "L"
DOWN = "D"

__all__ = [
    "LEFT", "DOWN", "AltTableau", "PackedTableau", "ArrowColumn",
    "validate_alt", "validate_packed", "enumerate_alt", "iter_alt",
    "enumerate_packed", "iter_packed", "weight_st", "weight_left",
    "weight_packed_left", "weight_packed_down", "pad", "cut",
    "dual_involution", "transpose", "render",
]

Cell = tuple[int, int, str]


def _normalize_cells(cells) -> tuple[Cell, ...]:
    out = []
    for cell in cells:
        if isinstance(cell, dict):
            r, c, a = cell["r"], cell["c"], cell["a"]
        else:
            r, c, a = cell
        out.append((int(r), int(c), str(a)))
    return tuple(sorted(out))


class _Grid:
    rows: int
    cols: int
    cells: tuple[Cell, ...]
    packed = False

    def grid(self) -> dict[tuple[int, int], str]:
        return {(r, c): a for r, c, a in self.cells}

    def row_range(self) -> range:
        return range(1, self.rows + 2) if self.packed else range(1, self.rows + 1)

    def col_range(self) -> range:
        return range(0, self.cols + 1) if self.packed else range(1, self.cols + 1)

    def sort_key(self):
        return self.cells

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "packed": self.packed,
                "cells": [{"r": r, "c": c, "a": a} for r, c, a in self.cells]}

    def __str__(self):
        return render(self)


@dataclass(frozen=True, order=True)
class AltTableau(_Grid):
    rows: int
    cols: int
    cells: tuple[Cell, ...] = ()

    @classmethod
    def from_cells(cls, rows: int, cols: int, cells) -> AltTableau:
        return cls(rows, cols, _normalize_cells(cells))


@dataclass(frozen=True, order=True)
class PackedTableau(_Grid):
    """``rows`` and ``cols`` are ``n`` and ``k``; the grid itself is ``(n+1) x (k+1)``."""

    rows: int
    cols: int
    cells: tuple[Cell, ...] = ()
    packed = True

    @classmethod
    def from_cells(cls, rows: int, cols: int, cells) -> PackedTableau:
        return cls(rows, cols, _normalize_cells(cells))


@dataclass(frozen=True)
class ArrowColumn:
    """A single tableau column; ``entries`` maps position (1 = top) to an arrow."""

    height: int
    entries: tuple[tuple[int, str], ...] = ()

    def left_count(self) -> int:
        return sum(1 for _, a in self.entries if a == LEFT)

    def is_valid(self) -> bool:
        downs = [q for q, a in self.entries if a == DOWN]
        if len(downs) > 1:
            return False
        if any(not 1 <= q <= self.height for q, _ in self.entries):
            return False
        return not downs or all(q <= downs[0] for q, _ in self.entries)


def tableau_from_json(data: dict):
    try:
        cls = PackedTableau if data.get("packed") else AltTableau
        t = cls.from_cells(int(data["rows"]), int(data["cols"]), data.get("cells", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed tableau: {exc}") from exc
    problems = violations(t)
    if problems:
        raise ValidationError("; ".join(problems))
    return t


# -- validation --------------------------------------------------------------

def violations(t) -> list[str]:
    problems = []
    rows, cols = list(t.row_range()), list(t.col_range())
    g = {}
    for r, c, a in t.cells:
        if r not in rows or c not in cols:
            problems.append(f"cell ({r},{c}) outside the grid")
        if a not in (LEFT, DOWN):
            problems.append(f"cell ({r},{c}) holds unknown arrow {a!r}")
        if (r, c) in g:
            problems.append(f"cell ({r},{c}) filled twice")
        g[r, c] = a
    if problems:
        return problems
    for (r, c), a in g.items():
        if a == LEFT:
            hit = [cc for cc in cols if cc < c and (r, cc) in g]
        else:
            hit = [rr for rr in rows if rr > r and (rr, c) in g]
        if hit:
            problems.append(f"arrow {a} at ({r},{c}) points at a filled cell")
    if t.packed:
        n, k = t.rows, t.cols
        for r in range(1, n + 1):
            if sum(1 for c in cols if g.get((r, c)) == LEFT) != 1:
                problems.append(f"row {r} must hold exactly one left arrow")
        if any(g.get((n + 1, c)) == LEFT for c in cols):
            problems.append("bottom row must not hold a left arrow")
        for c in range(1, k + 1):
            if sum(1 for r in rows if g.get((r, c)) == DOWN) != 1:
                problems.append(f"column {c} must hold exactly one down arrow")
        if any(g.get((r, 0)) == DOWN for r in rows):
            problems.append("leftmost column must not hold a down arrow")
    return problems


def validate_alt(t) -> bool:
    return isinstance(t, AltTableau) and not violations(t)


def validate_packed(t) -> bool:
    return isinstance(t, PackedTableau) and not violations(t)


# -- enumeration -------------------------------------------------------------

@lru_cache(maxsize=None)
def _alt_column_options(n: int, blocked: int) -> tuple[tuple[tuple[tuple[int, str], ...], int], ...]:
    """Fillings of one column of height ``n``.

    ``blocked`` has bit ``r-1`` set when row ``r`` already holds an arrow further
    left, which forbids a left arrow there.  Returns ``(entries, new_blocked)``.
    """
    out = []

    def lefts(r: int, limit: int, acc: list, mask: int, sink: list):
        if r == limit:
            sink.append((tuple(acc), mask))
            return
        lefts(r + 1, limit, acc, mask, sink)
        bit = 1 << (r - 1)
        if not blocked & bit:
            lefts(r + 1, limit, acc + [(r, LEFT)], mask | bit, sink)

    lefts(1, n + 1, [], blocked, out)
    for d in range(1, n + 1):
        sink: list = []
        lefts(1, d, [], blocked | (1 << (d - 1)), sink)
        out.extend((e + ((d, DOWN),), m) for e, m in sink)
    return tuple(out)


def iter_alt(n: int, k: int) -> Iterator[AltTableau]:
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")

    def rec(col: int, blocked: int, acc: tuple):
        if col > k:
            yield AltTableau(n, k, tuple(sorted(acc)))
            return
        for entries, mask in _alt_column_options(n, blocked):
            yield from rec(col + 1, mask, acc + tuple((r, col, a) for r, a in entries))

    yield from rec(1, 0, ())


def enumerate_alt(n: int, k: int) -> Iterator[AltTableau]:
    yield from sorted(iter_alt(n, k), key=AltTableau.sort_key)


@lru_cache(maxsize=None)
def _packed_column_options(n: int, has_left: int, first: bool):
    """Fillings of one packed column over rows ``1..n+1``.

    Every one of rows ``1..n`` must carry its unique left arrow before any down
    arrow (a down arrow to its left would be pointed at), so ``has_left``
    doubles as the blocked mask.  Column 0 carries no down arrow; every other
    column carries exactly one.
    """
    out = []

    def lefts(r: int, limit: int, acc: list, mask: int, sink: list):
        if r == limit:
            sink.append((tuple(acc), mask))
            return
        lefts(r + 1, limit, acc, mask, sink)
        bit = 1 << (r - 1)
        if r <= n and not mask & bit:
            lefts(r + 1, limit, acc + [(r, LEFT)], mask | bit, sink)

    if first:
        lefts(1, n + 1, [], has_left, out)
        return tuple(out)
    for d in range(1, n + 2):
        bit = 1 << (d - 1)
        if d <= n and not has_left & bit:
            continue
        sink: list = []
        lefts(1, d, [], has_left, sink)
        out.extend((e + ((d, DOWN),), m) for e, m in sink)
    return tuple(out)


def iter_packed(n: int, k: int) -> Iterator[PackedTableau]:
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    full = (1 << n) - 1

    def rec(col: int, has_left: int, acc: tuple):
        if col > k:
            if has_left == full:
                yield PackedTableau(n, k, tuple(sorted(acc)))
            return
        for entries, mask in _packed_column_options(n, has_left, col == 0):
            yield from rec(col + 1, mask, acc + tuple((r, col, a) for r, a in entries))

    yield from rec(0, 0, ())


def enumerate_packed(n: int, k: int) -> Iterator[PackedTableau]:
    yield from sorted(iter_packed(n, k), key=PackedTableau.sort_key)


# -- weights -----------------------------------------------------------------

def weight_st(t: AltTableau) -> int:
    """Staircase weight over the maximal top prefix of rows holding a left arrow."""
    left_col = {r: c for r, c, a in t.cells if a == LEFT}
    count, best = 0, None
    r = 1
    while r in left_col:
        c = left_col[r]
        if best is None or c < best:
            count += 1
            best = c
        r += 1
    return count


def weight_left(t: AltTableau) -> int:
    """Columns holding a left arrow but no down arrow."""
    with_left = {c for _, c, a in t.cells if a == LEFT}
    with_down = {c for _, c, a in t.cells if a == DOWN}
    return len(with_left - with_down)


def weight_packed_left(p: PackedTableau) -> int:
    """Columns holding a left arrow whose down arrow sits in the bottom row."""
    bottom = p.rows + 1
    with_left = {c for _, c, a in p.cells if a == LEFT}
    return sum(1 for r, c, a in p.cells if a == DOWN and r == bottom and c in with_left)


def weight_packed_down(p: PackedTableau) -> int:
    """Rows holding a down arrow whose left arrow sits in the leftmost column."""
    with_down = {r for r, _, a in p.cells if a == DOWN}
    return sum(1 for r, c, a in p.cells if a == LEFT and c == 0 and r in with_down)


# -- bijections --------------------------------------------------------------

def pad(t: AltTableau) -> PackedTableau:
    n, k = t.rows, t.cols
    rows_with_left = {r for r, _, a in t.cells if a == LEFT}
    cols_with_down = {c for _, c, a in t.cells if a == DOWN}
    extra = [(r, 0, LEFT) for r in range(1, n + 1) if r not in rows_with_left]
    extra += [(n + 1, c, DOWN) for c in range(1, k + 1) if c not in cols_with_down]
    return PackedTableau(n, k, tuple(sorted(t.cells + tuple(extra))))


def cut(p: PackedTableau) -> AltTableau:
    return AltTableau(p.rows, p.cols,
                      tuple(cell for cell in p.cells if cell[0] <= p.rows and cell[1] >= 1))


def dual_involution(p: PackedTableau) -> PackedTableau:
    """Exchange the two packed weights.

    Both marked sets are read off the input and the slides applied at once:
    a marked column sends its down arrow up to its lowest left arrow, which
    moves to column 0; a marked row sends its left arrow right onto its
    leftmost down arrow, which moves to the bottom row.
    """
    n = p.rows
    bottom = n + 1
    g = p.grid()
    lefts_in_col: dict[int, list[int]] = {}
    downs_in_row: dict[int, list[int]] = {}
    for (r, c), a in g.items():
        if a == LEFT:
            lefts_in_col.setdefault(c, []).append(r)
        else:
            downs_in_row.setdefault(r, []).append(c)
    marked_cols = [c for c in lefts_in_col if c >= 1 and g.get((bottom, c)) == DOWN]
    marked_rows = [r for r in downs_in_row if r <= n and g.get((r, 0)) == LEFT]

    out = dict(g)
    for c in marked_cols:
        low = max(lefts_in_col[c])
        del out[bottom, c]
        out[low, c] = DOWN
        out[low, 0] = LEFT
    for r in marked_rows:
        leftmost = min(downs_in_row[r])
        del out[r, 0]
        out[r, leftmost] = LEFT
        out[bottom, leftmost] = DOWN
    return PackedTableau(p.rows, p.cols, tuple(sorted((r, c, a) for (r, c), a in out.items())))


def transpose(p: PackedTableau) -> PackedTableau:
    """Reflect so that the bottom row becomes the leftmost column, swapping arrow kinds."""
    n, k = p.rows, p.cols
    flip = {LEFT: DOWN, DOWN: LEFT}
    return PackedTableau(k, n, tuple(sorted((k + 1 - c, n + 1 - r, flip[a]) for r, c, a in p.cells)))


# -- rendering ---------------------------------------------------------------

def render(t) -> str:
    g = t.grid()
    glyph = {LEFT: "<", DOWN: "v"}
    lines = []
    for r in t.row_range():
        lines.append("".join(glyph.get(g.get((r, c)), ".") for c in t.col_range()))
    return "\n".join(lines)

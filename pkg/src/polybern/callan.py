"""Double Callan permutations.

A double Callan permutation of size ``n x k`` is a pair of token strings
``(s1, s2)`` over red ``1..n`` and blue ``1..k``: ``s1`` is empty or starts
blue, ``s2`` is empty or starts red, and every maximal one-coloured run is
decreasing.  Runs are never stored; they are recomputed from the strings.

In ``s1 = B1 R1 ... Bl Rl B(l+1)`` a blue run followed by a red run forms a
*Callan pair* with it; a trailing blue run of ``s1`` is the *extra* block.
In ``s2 = R'1 B'1 ... R'm B'm R'(m+1)`` every blue run pairs with the red run
before it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import DomainError, ValidationError

RED = "r"
BLUE = "b"

__all__ = [
    "RED", "BLUE", "Token", "red", "blue", "CallanPerm", "runs", "validate",
    "enumerate_callan", "iter_callan", "weight_lr", "weight_br", "weight_rl",
    "phi", "standardize_reds",
]


class Token(NamedTuple):
    color: str
    value: int

    def __str__(self):
        return f"{self.color}{self.value}"

    @classmethod
    def parse(cls, text: str) -> Token:
        text = text.strip()
        if len(text) < 2 or text[0] not in (RED, BLUE) or not text[1:].isdigit():
            raise ValidationError(f"bad token {text!r}; expected e.g. 'r7' or 'b6'")
        return cls(text[0], int(text[1:]))


def red(v: int) -> Token:
    return Token(RED, v)


def blue(v: int) -> Token:
    return Token(BLUE, v)


def tokens(text: str) -> tuple[Token, ...]:
    """Parse a whitespace-separated token string such as ``"b6 r7 r6"``."""
    return tuple(Token.parse(t) for t in text.split())


def runs(seq: Sequence[Token]) -> list[tuple[str, list[int]]]:
    """Maximal one-coloured runs of ``seq`` as ``(color, values)`` pairs, in order."""
    out: list[tuple[str, list[int]]] = []
    for t in seq:
        if out and out[-1][0] == t.color:
            out[-1][1].append(t.value)
        else:
            out.append((t.color, [t.value]))
    return out


def _flatten(run_list: Iterable[tuple[str, Sequence[int]]]) -> tuple[Token, ...]:
    return tuple(Token(c, v) for c, vals in run_list for v in vals)


@dataclass(frozen=True, order=True)
class CallanPerm:
    n: int
    k: int
    s1: tuple[Token, ...]
    s2: tuple[Token, ...]

    @classmethod
    def parse(cls, n: int, k: int, s1: str, s2: str) -> CallanPerm:
        return cls(n, k, tokens(s1), tokens(s2))

    def sort_key(self):
        return (self.s1, self.s2)

    def __str__(self):
        def show(s):
            return " ".join(map(str, s)) if s else "∅"
        return f"({show(self.s1)}, {show(self.s2)})"

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k,
                "s1": [str(t) for t in self.s1], "s2": [str(t) for t in self.s2]}

    @classmethod
    def from_json(cls, data: dict) -> CallanPerm:
        try:
            s1 = tuple(Token.parse(t) for t in data.get("s1", []))
            s2 = tuple(Token.parse(t) for t in data.get("s2", []))
            reds = [t.value for t in s1 + s2 if t.color == RED]
            blues = [t.value for t in s1 + s2 if t.color == BLUE]
            n = int(data["n"]) if "n" in data else len(reds)
            k = int(data["k"]) if "k" in data else len(blues)
        except (TypeError, KeyError, AttributeError) as exc:
            raise ValidationError(f"malformed Callan permutation: {exc}") from exc
        p = cls(n, k, s1, s2)
        problems = violations(p)
        if problems:
            raise ValidationError("; ".join(problems))
        return p


def violations(p: CallanPerm) -> list[str]:
    problems = []
    expected = {red(i) for i in range(1, p.n + 1)} | {blue(i) for i in range(1, p.k + 1)}
    seen = list(p.s1) + list(p.s2)
    if len(seen) != len(set(seen)) or set(seen) != expected:
        problems.append(f"tokens must be exactly red 1..{p.n} and blue 1..{p.k}, each once")
    if p.s1 and p.s1[0].color != BLUE:
        problems.append("s1 must start with a blue token")
    if p.s2 and p.s2[0].color != RED:
        problems.append("s2 must start with a red token")
    for name, s in (("s1", p.s1), ("s2", p.s2)):
        for color, vals in runs(s):
            if any(a <= b for a, b in zip(vals, vals[1:])):
                problems.append(f"{name}: run {color}{vals} is not strictly decreasing")
    return problems


def validate(p: CallanPerm) -> bool:
    return not violations(p)


# -- enumeration -------------------------------------------------------------

def _set_partitions(items: Sequence[int], j: int) -> Iterator[list[list[int]]]:
    """Unordered partitions of ``items`` into exactly ``j`` nonempty blocks."""
    m = len(items)
    if j == 0:
        if m == 0:
            yield []
        return
    if m < j:
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest, j - 1):
        yield [[first]] + part
    for part in _set_partitions(rest, j):
        for i in range(j):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _ordered_partitions(items: Sequence[int], j: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    for part in _set_partitions(items, j):
        blocks = [tuple(sorted(b, reverse=True)) for b in part]
        yield from itertools.permutations(blocks)


def _alternating(first: str, second: str, first_items, second_items) -> Iterator[tuple[Token, ...]]:
    """All strings of alternating nonempty decreasing runs starting with colour ``first``."""
    a, b = len(first_items), len(second_items)
    if a == 0 and b == 0:
        yield ()
        return
    if a == 0:
        return
    for ja in range(1, a + 1):
        # runs of the second colour: ja (ends on second) or ja - 1 (ends on first)
        for jb in (ja - 1, ja):
            if jb > b or (jb == 0) != (b == 0):
                continue
            for pa in _ordered_partitions(first_items, ja):
                for pb in _ordered_partitions(second_items, jb):
                    out = []
                    for i in range(ja):
                        out.extend(Token(first, v) for v in pa[i])
                        if i < jb:
                            out.extend(Token(second, v) for v in pb[i])
                    yield tuple(out)


def _subsets(items: Sequence[int]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    for r in range(len(items) + 1):
        for chosen in itertools.combinations(items, r):
            chosen_set = set(chosen)
            yield chosen, tuple(v for v in items if v not in chosen_set)


def iter_callan(n: int, k: int) -> Iterator[CallanPerm]:
    """Every element of the class exactly once, in generation order."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    reds = tuple(range(1, n + 1))
    blues = tuple(range(1, k + 1))
    for r1, r2 in _subsets(reds):
        for b1, b2 in _subsets(blues):
            s1_options = list(_alternating(BLUE, RED, b1, r1))
            if not s1_options:
                continue
            s2_options = list(_alternating(RED, BLUE, r2, b2))
            for s1 in s1_options:
                for s2 in s2_options:
                    yield CallanPerm(n, k, s1, s2)


def enumerate_callan(n: int, k: int) -> Iterator[CallanPerm]:
    """Every element exactly once, in canonical (lexicographic token) order."""
    yield from sorted(iter_callan(n, k), key=CallanPerm.sort_key)


# -- weights -----------------------------------------------------------------

def _left_to_right_minima(seq: Sequence[int]) -> int:
    count, best = 0, None
    for v in seq:
        if best is None or v < best:
            count += 1
            best = v
    return count


def _right_to_left_maxima(seq: Sequence[int]) -> int:
    count, best = 0, None
    for v in reversed(seq):
        if best is None or v > best:
            count += 1
            best = v
    return count


def weight_lr(p: CallanPerm) -> int:
    """Left-to-right minima among the minima of the paired blue runs of ``s1``."""
    rs = runs(p.s1)
    mins = [min(vals) for i, (color, vals) in enumerate(rs)
            if color == BLUE and i + 1 < len(rs)]
    return _left_to_right_minima(mins)


def weight_br(p: CallanPerm) -> int:
    """Count of blue tokens marked while walking the reds from ``n`` down to ``1``."""
    if p.n == 0:
        return 0
    pred: dict[int, Token | None] = {}
    leads_s2 = p.s2[0] if p.s2 else None
    for s in (p.s1, p.s2):
        prev = None
        for t in s:
            if t.color == RED:
                pred[t.value] = prev
            prev = t
    marks = 0
    last = None
    for v in range(p.n, 0, -1):
        if leads_s2 == red(v):
            break
        before = pred[v]
        if before is None or before.color != BLUE:
            continue
        if last is None or before.value < last:
            marks += 1
            last = before.value
    return marks


def weight_rl(p: CallanPerm) -> int:
    """Right-to-left maxima among blue-run maxima of ``s1 b0 s2 r0``, minus one."""
    s = p.s1 + (blue(0),) + p.s2 + (red(0),)
    maxima = [max(vals) for color, vals in runs(s) if color == BLUE]
    return _right_to_left_maxima(maxima) - 1


# -- the reduction map -------------------------------------------------------

def standardize_reds(seq: Sequence[Token]) -> tuple[Token, ...]:
    """Relabel red values order-isomorphically onto ``1..m``; blues are untouched."""
    values = sorted(t.value for t in seq if t.color == RED)
    if len(values) != len(set(values)):
        raise ValueError("red values must be distinct")
    rank = {v: i + 1 for i, v in enumerate(values)}
    return tuple(Token(RED, rank[t.value]) if t.color == RED else t for t in seq)


def _resort(seq: Sequence[Token]) -> list[tuple[str, list[int]]]:
    """Merge adjacent same-colour runs and sort each run decreasingly."""
    return [(c, sorted(vals, reverse=True)) for c, vals in runs(seq)]


def classify(p: CallanPerm) -> tuple[int, str, int, list[int]]:
    """Locate blue ``k`` and its Callan pair.

    Returns ``(case, where, run_index, paired_reds)`` where ``case`` is 1, 2 or 3
    as in the reduction map, ``where`` is ``"s1"`` or ``"s2"``, ``run_index`` the
    index of the blue run containing ``k`` in that string's run list, and
    ``paired_reds`` the red run paired with it (empty in case 1).
    """
    if p.k < 1:
        raise DomainError("blue k requires k >= 1")
    target = blue(p.k)
    r1, r2 = runs(p.s1), runs(p.s2)
    for i, (color, vals) in enumerate(r1):
        if color == BLUE and p.k in vals:
            if i + 1 == len(r1):
                return 1, "s1", i, []
            paired = r1[i + 1][1]
            if i == 0 and len(vals) == 1:
                return 2, "s1", i, list(paired)
            return 3, "s1", i, list(paired)
    for i, (color, vals) in enumerate(r2):
        if color == BLUE and p.k in vals:
            return 3, "s2", i, list(r2[i - 1][1])
    raise ValidationError(f"{target} not found in {p}")


def phi(p: CallanPerm) -> CallanPerm:
    """Remove blue ``k``; the result has ``k - 1`` blues and at most ``n`` reds."""
    case, where, idx, paired = classify(p)
    r1, r2 = runs(p.s1), runs(p.s2)
    if case == 1:
        r1[idx] = (BLUE, [v for v in r1[idx][1] if v != p.k])
        if not r1[idx][1]:
            del r1[idx]
    elif case == 2:
        del r1[0:2]
    else:
        rs = r1 if where == "s1" else r2
        red_idx = idx + 1 if where == "s1" else idx - 1
        rs[red_idx] = (RED, [0])
        rs[idx] = (BLUE, [v for v in rs[idx][1] if v != p.k])
        if not rs[idx][1]:
            del rs[idx]
    s1 = _flatten(_resort(_flatten(r1)))
    s2 = _flatten(_resort(_flatten(r2)))
    both = standardize_reds(s1 + s2)
    s1, s2 = both[:len(s1)], both[len(s1):]
    n_new = sum(1 for t in both if t.color == RED)
    return CallanPerm(n_new, p.k - 1, s1, s2)

"""Permutations of ``[n+k+1]`` whose excedance set is exactly ``[n]``.

Such a permutation is a placement of ``n+k+1`` non-attacking rooks on a
board where column ``i`` may hold its rook in row ``r`` iff ``r > i`` (for
``i <= n``) or ``r <= i`` (for ``i > n``); the rook of column ``i`` sits in
row ``perm[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .callan import BLUE, RED, CallanPerm, Token, blue, red
from .errors import DomainError, ValidationError

__all__ = [
    "ExcPerm", "validate", "enumerate_exc", "iter_exc", "weight_lr", "psi",
    "psi_case", "callan_to_exc", "callan_rooks", "allowed", "render_board",
]


@dataclass(frozen=True, order=True)
class ExcPerm:
    n: int
    k: int
    perm: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.n + self.k + 1

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def sort_key(self):
        return self.perm

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "perm": list(self.perm)}

    @classmethod
    def from_json(cls, data: dict) -> ExcPerm:
        try:
            perm = tuple(int(v) for v in data["perm"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed permutation: {exc}") from exc
        if "n" in data:
            n = int(data["n"])
        else:
            n = sum(1 for i, v in enumerate(perm, 1) if v > i)
        k = int(data["k"]) if "k" in data else len(perm) - n - 1
        e = cls(n, k, perm)
        problems = violations(e)
        if problems:
            raise ValidationError("; ".join(problems))
        return e


def allowed(n: int, i: int, r: int) -> bool:
    """Whether column ``i`` may hold its rook in row ``r`` (1-based)."""
    return r > i if i <= n else r <= i


def violations(e: ExcPerm) -> list[str]:
    big = e.size
    if e.n < 0 or e.k < 0:
        return ["n and k must be non-negative"]
    if sorted(e.perm) != list(range(1, big + 1)):
        return [f"not a permutation of 1..{big}"]
    bad = [i for i, v in enumerate(e.perm, 1) if not allowed(e.n, i, v)]
    if bad:
        return [f"excedance set differs from 1..{e.n} at positions {bad}"]
    return []


def validate(e: ExcPerm) -> bool:
    return not violations(e)


def iter_exc(n: int, k: int) -> Iterator[ExcPerm]:
    """Column-by-column rook placement; yields in lexicographic order."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    big = n + k + 1
    used = [False] * (big + 1)
    acc: list[int] = []

    def rec(i: int):
        if i > big:
            yield ExcPerm(n, k, tuple(acc))
            return
        rows = range(i + 1, big + 1) if i <= n else range(1, i + 1)
        for r in rows:
            if not used[r]:
                used[r] = True
                acc.append(r)
                yield from rec(i + 1)
                acc.pop()
                used[r] = False

    yield from rec(1)


def enumerate_exc(n: int, k: int) -> Iterator[ExcPerm]:
    yield from iter_exc(n, k)


def weight_lr(e: ExcPerm) -> int:
    """Left-to-right minima among positions ``n+1..N``, minus one."""
    count, best = 0, None
    for v in e.perm[e.n:]:
        if best is None or v < best:
            count += 1
            best = v
    return count - 1


def _standardize(values: Sequence[int]) -> list[int]:
    rank = {v: i + 1 for i, v in enumerate(sorted(values))}
    return [rank[v] for v in values]


def psi_case(e: ExcPerm) -> tuple[int, int, int]:
    """``(case, a, b)`` with ``a`` the position of ``N`` and ``b`` the value at ``N``."""
    if e.k < 1:
        raise DomainError("psi requires k >= 1")
    big = e.size
    b = e(big)
    a = e.perm.index(big) + 1
    if b == big:
        return 1, a, b
    return (2 if b > a else 3), a, b


def psi(e: ExcPerm) -> ExcPerm:
    case, a, b = psi_case(e)
    big = e.size
    if case == 1:
        return ExcPerm(e.n, e.k - 1, e.perm[:-1])
    if case == 2:
        mu = list(e.perm[:-1])
        mu[a - 1] = b
        return ExcPerm(e.n, e.k - 1, tuple(mu))
    drop = {i for i in range(b, a) if e(i) == i + 1} | {a}
    keep = [i for i in range(1, big) if i not in drop]
    values = _standardize([e(i) for i in keep])
    return ExcPerm(e.n - len(drop), e.k - 1, tuple(values))


# -- the rook map from double Callan permutations ----------------------------

def callan_rooks(p: CallanPerm) -> dict[Token, Token]:
    """Rook placement on the coloured board, as ``{column label: row label}``.

    Columns are labelled red ``n..1`` then blue ``k..0`` from the left; rows
    red ``n..0`` then blue ``k..1`` from the bottom.
    """
    s = p.s1 + (blue(0),) + p.s2 + (red(0),)
    rooks: dict[Token, Token] = {}
    for x, y in zip(s, s[1:]):
        if x.color != y.color:
            continue
        if x.color == RED:
            rooks[x] = y
        else:
            rooks[y] = x
    used_rows = set(rooks.values())
    red_rows = [red(v) for v in range(0, p.n + 1)]    # topmost first
    blue_rows = [blue(v) for v in range(1, p.k + 1)]  # topmost first
    for x in s[:-1]:
        if x in rooks:
            continue
        pool = blue_rows if x.color == RED else red_rows
        row = next((r for r in pool if r not in used_rows), None)
        if row is None:
            raise ValidationError(f"no free row of the opposite colour for column {x} in {p}")
        rooks[x] = row
        used_rows.add(row)
    return rooks


def column_index(n: int, k: int, label: Token) -> int:
    return n + 1 - label.value if label.color == RED else n + k + 1 - label.value


def row_index(n: int, k: int, label: Token) -> int:
    return n + 1 - label.value if label.color == RED else n + k + 2 - label.value


def callan_to_exc(p: CallanPerm) -> ExcPerm:
    n, k = p.n, p.k
    rooks = callan_rooks(p)
    perm = [0] * (n + k + 1)
    for col, row in rooks.items():
        perm[column_index(n, k, col) - 1] = row_index(n, k, row)
    e = ExcPerm(n, k, tuple(perm))
    problems = violations(e)
    if problems:
        raise ValidationError(f"rook placement of {p} is not admissible: " + "; ".join(problems))
    return e


def render_board(e: ExcPerm) -> str:
    """Rows from ``N`` (top) down to 1; ``#`` cracked, ``R`` rook, ``.`` free."""
    big = e.size
    lines = []
    for r in range(big, 0, -1):
        line = []
        for i in range(1, big + 1):
            if e(i) == r:
                line.append("R")
            elif allowed(e.n, i, r):
                line.append(".")
            else:
                line.append("#")
        lines.append("".join(line))
    return "\n".join(lines)

"""Double alternative trees.

Two rooted trees on red ``0..n`` and blue ``0..k`` with roots red 0 and
blue 0, colours alternating along edges, and every same-coloured descendant
of a vertex carrying a larger value.  A tree is stored as parent maps only;
child order is never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .callan import BLUE, RED, CallanPerm, Token, blue, red
from .errors import ValidationError
from .tableaux import DOWN, LEFT, PackedTableau, violations as tableau_violations

__all__ = [
    "DoubleTree", "validate", "enumerate_trees", "iter_trees", "weight_ch",
    "packed_to_tree", "tree_to_packed", "tree_to_callan", "render",
]


@dataclass(frozen=True, order=True)
class DoubleTree:
    """``red_parent[i]`` is the parent of red ``i + 1``; likewise ``blue_parent``."""

    n: int
    k: int
    red_parent: tuple[Token, ...]
    blue_parent: tuple[Token, ...]

    def parent(self, v: Token) -> Token | None:
        if v.value == 0:
            return None
        return (self.red_parent if v.color == RED else self.blue_parent)[v.value - 1]

    def vertices(self) -> list[Token]:
        return [red(i) for i in range(self.n + 1)] + [blue(j) for j in range(self.k + 1)]

    def children(self) -> dict[Token, list[Token]]:
        kids: dict[Token, list[Token]] = {v: [] for v in self.vertices()}
        for i, par in enumerate(self.red_parent, 1):
            kids.setdefault(par, []).append(red(i))
        for j, par in enumerate(self.blue_parent, 1):
            kids.setdefault(par, []).append(blue(j))
        return kids

    def sort_key(self):
        return (self.red_parent, self.blue_parent)

    def to_json(self) -> dict:
        return {
            "n": self.n, "k": self.k,
            "redParent": {str(i): str(p) for i, p in enumerate(self.red_parent, 1)},
            "blueParent": {str(j): str(p) for j, p in enumerate(self.blue_parent, 1)},
        }

    @classmethod
    def from_json(cls, data: dict) -> DoubleTree:
        try:
            n, k = int(data["n"]), int(data["k"])
            rp = data.get("redParent", {})
            bp = data.get("blueParent", {})
            red_parent = tuple(Token.parse(rp[str(i)]) for i in range(1, n + 1))
            blue_parent = tuple(Token.parse(bp[str(j)]) for j in range(1, k + 1))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed double tree: {exc}") from exc
        t = cls(n, k, red_parent, blue_parent)
        problems = violations(t)
        if problems:
            raise ValidationError("; ".join(problems))
        return t


def violations(t: DoubleTree) -> list[str]:
    problems = []
    if len(t.red_parent) != t.n or len(t.blue_parent) != t.k:
        return ["parent maps do not match n and k"]
    for v in t.vertices():
        par = t.parent(v)
        if par is None:
            continue
        limit = t.k if par.color == BLUE else t.n
        if not 0 <= par.value <= limit:
            problems.append(f"{v} has parent {par} outside the vertex set")
        elif par.color == v.color:
            problems.append(f"{v} and its parent {par} share a colour")
    if problems:
        return problems
    for v in t.vertices():
        seen = {v}
        cur = t.parent(v)
        while cur is not None:
            if cur in seen:
                problems.append(f"cycle through {v}")
                break
            seen.add(cur)
            if cur.color == v.color and cur.value >= v.value:
                problems.append(f"{v} has a same-coloured ancestor {cur} that is not smaller")
            cur = t.parent(cur)
    return problems


def validate(t: DoubleTree) -> bool:
    return not violations(t)


# -- enumeration -------------------------------------------------------------

def iter_trees(n: int, k: int) -> Iterator[DoubleTree]:
    """Every double alternative tree of size ``n x k``.

    Walking up from any vertex, same-coloured ancestors must decrease, which is
    equivalent to "grandparent < vertex" at every step; that already rules out
    cycles.  Blue parents are chosen first; each red's admissible parents are
    then independent of the other reds.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    reds = range(1, n + 1)

    def blue_choices(j: int, acc: list[int]):
        if j > k:
            yield tuple(acc)
            return
        for a in range(n + 1):
            acc.append(a)
            yield from blue_choices(j + 1, acc)
            acc.pop()

    for bp in blue_choices(1, []):
        # smallest blue child of each red, for the constraint "red's parent < that child"
        min_child = {}
        for j, a in enumerate(bp, 1):
            if a and a not in min_child:
                min_child[a] = j
        options = []
        for a in reds:
            opts = [0]
            cap = min_child.get(a)
            for j, grand in enumerate(bp, 1):
                if grand < a and (cap is None or j < cap):
                    opts.append(j)
            options.append(opts)
        blue_parent = tuple(red(a) for a in bp)

        def red_choices(i: int, acc: list[Token]):
            if i == n:
                yield DoubleTree(n, k, tuple(acc), blue_parent)
                return
            for j in options[i]:
                acc.append(blue(j))
                yield from red_choices(i + 1, acc)
                acc.pop()

        yield from red_choices(0, [])


def enumerate_trees(n: int, k: int) -> Iterator[DoubleTree]:
    yield from sorted(iter_trees(n, k), key=DoubleTree.sort_key)


# -- weight and maps ---------------------------------------------------------

def weight_ch(t: DoubleTree) -> int:
    """Number of non-leaf children of red 0."""
    has_child = {p for p in t.red_parent} | {p for p in t.blue_parent}
    return sum(1 for j, p in enumerate(t.blue_parent, 1) if p == red(0) and blue(j) in has_child)


def packed_to_tree(p: PackedTableau) -> DoubleTree:
    """Row ``r`` carries red ``n + 1 - r`` and column ``c`` carries blue ``c``.

    A left arrow makes its row's red a child of its column's blue; a down arrow
    makes the column's blue a child of the row's red.
    """
    problems = tableau_violations(p) if isinstance(p, PackedTableau) else ["not a packed tableau"]
    if problems:
        raise ValidationError("; ".join(problems))
    n, k = p.rows, p.cols
    red_parent: list[Token | None] = [None] * n
    blue_parent: list[Token | None] = [None] * k
    for r, c, a in p.cells:
        rv = n + 1 - r
        if a == LEFT:
            red_parent[rv - 1] = blue(c)
        else:
            blue_parent[c - 1] = red(rv)
    return DoubleTree(n, k, tuple(red_parent), tuple(blue_parent))


def tree_to_packed(t: DoubleTree) -> PackedTableau:
    problems = violations(t)
    if problems:
        raise ValidationError("; ".join(problems))
    n = t.n
    cells = [(n + 1 - i, par.value, LEFT) for i, par in enumerate(t.red_parent, 1)]
    cells += [(n + 1 - par.value, j, DOWN) for j, par in enumerate(t.blue_parent, 1)]
    return PackedTableau(t.n, t.k, tuple(sorted(cells)))


def _preorder(root: Token, kids: dict[Token, list[Token]]) -> list[Token]:
    """Root first, then the subtrees in decreasing order of their root values."""
    out = []
    stack = [root]
    while stack:
        v = stack.pop()
        out.append(v)
        # pushed ascending so the largest child is popped first
        stack.extend(sorted(kids.get(v, ()), key=lambda u: u.value))
    return out


def tree_to_callan(t: DoubleTree) -> CallanPerm:
    kids = t.children()
    s1 = _preorder(red(0), kids)[1:]
    s2 = _preorder(blue(0), kids)[1:]
    return CallanPerm(t.n, t.k, tuple(s1), tuple(s2))


def render(t: DoubleTree) -> str:
    kids = t.children()
    lines = []

    def walk(v: Token, depth: int):
        lines.append("  " * depth + str(v))
        for u in sorted(kids.get(v, ()), key=lambda u: -u.value):
            walk(u, depth + 1)

    walk(red(0), 0)
    walk(blue(0), 0)
    return "\n".join(lines)

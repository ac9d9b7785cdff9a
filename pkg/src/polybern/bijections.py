"""The stepwise bijection from double Callan permutations to alternative
tableaux, the registry of weighted models and maps, and the exhaustive
verification harness built on them.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from . import callan, excedance, tableaux, trees
from .cache import ResultCache
from .callan import CallanPerm
from .errors import DomainError, UnknownModelError
from .exactnum import Poly
from .oracle import spb_formula, spb_recurrence
from .tableaux import DOWN, LEFT, AltTableau, ArrowColumn

__all__ = [
    "b_to_t_column", "callan_to_tableau", "Model", "MapSpec", "MODELS", "MAPS",
    "model_polynomial", "weight_polynomial", "verify_map", "verify_all",
    "VerifyReport", "MapResult",
]


# -- stepwise bijection ------------------------------------------------------

def b_to_t_column(p: CallanPerm) -> ArrowColumn:
    """The column recording how the reduction map removes blue ``k``.

    Positions are red values of ``p``; the column has height ``n``.
    """
    case, _, _, paired = callan.classify(p)
    entries: dict[int, str] = {}
    if case == 1:
        pass
    elif case == 2:
        entries[1] = LEFT
        if 1 in paired:
            for v in paired:
                entries[v] = LEFT
        else:
            top = max(paired)
            entries[top] = DOWN
            for v in paired:
                if v != top:
                    entries[v] = LEFT
    elif len(paired) == 1:
        entries[paired[0]] = DOWN
    elif 1 in paired:
        for v in paired:
            if v != 1:
                entries[v] = LEFT
    else:
        top = max(paired)
        entries[top] = DOWN
        for v in paired:
            if v != top:
                entries[v] = LEFT
    return ArrowColumn(p.n, tuple(sorted(entries.items())))


def callan_to_tableau(p: CallanPerm) -> AltTableau:
    active = list(range(1, p.n + 1))
    cells = []
    current = p
    for j in range(p.k, 0, -1):
        column = b_to_t_column(current)
        filled_left = set()
        for q, arrow in column.entries:
            row = active[q - 1]
            cells.append((row, j, arrow))
            if arrow == LEFT:
                filled_left.add(row)
        active = [r for r in active if r not in filled_left]
        current = callan.phi(current)
    return AltTableau(p.n, p.k, tuple(sorted(cells)))


# -- registry ----------------------------------------------------------------

@dataclass(frozen=True)
class Kind:
    """A combinatorial class: generator, canonical enumerator, validator, JSON codec."""

    name: str
    iterate: Callable[[int, int], Iterable[Any]]
    enumerate: Callable[[int, int], Iterable[Any]]
    validate: Callable[[Any], bool]
    from_json: Callable[[dict], Any]
    size: Callable[[Any], tuple[int, int]]


KINDS: dict[str, Kind] = {
    "callan": Kind("callan", callan.iter_callan, callan.enumerate_callan, callan.validate,
                   CallanPerm.from_json, lambda o: (o.n, o.k)),
    "tableau": Kind("tableau", tableaux.iter_alt, tableaux.enumerate_alt, tableaux.validate_alt,
                    tableaux.tableau_from_json, lambda o: (o.rows, o.cols)),
    "packed": Kind("packed", tableaux.iter_packed, tableaux.enumerate_packed,
                   tableaux.validate_packed, tableaux.tableau_from_json,
                   lambda o: (o.rows, o.cols)),
    "tree": Kind("tree", trees.iter_trees, trees.enumerate_trees, trees.validate,
                 trees.DoubleTree.from_json, lambda o: (o.n, o.k)),
    "exc": Kind("exc", excedance.iter_exc, excedance.enumerate_exc, excedance.validate,
                excedance.ExcPerm.from_json, lambda o: (o.n, o.k)),
}


@dataclass(frozen=True)
class Model:
    id: str
    kind: str
    weight: Callable[[Any], int]


# Looked up by name at call time so a patched weight function is picked up.
_WEIGHTS: dict[str, tuple[Any, str]] = {
    "callan.lr": (callan, "weight_lr"),
    "callan.br": (callan, "weight_br"),
    "callan.rl": (callan, "weight_rl"),
    "tableau.st": (tableaux, "weight_st"),
    "tableau.left": (tableaux, "weight_left"),
    "packed.left": (tableaux, "weight_packed_left"),
    "packed.down": (tableaux, "weight_packed_down"),
    "tree.ch": (trees, "weight_ch"),
    "exc.lr": (excedance, "weight_lr"),
}


def _weight(model_id: str) -> Callable[[Any], int]:
    module, attr = _WEIGHTS[model_id]
    return lambda obj: getattr(module, attr)(obj)


MODELS: dict[str, Model] = {mid: Model(mid, mid.split(".")[0], _weight(mid)) for mid in _WEIGHTS}
MODEL_IDS = ("formula",) + tuple(MODELS)
DEFAULT_MODEL = {"callan": "callan.lr", "tableau": "tableau.st", "packed": "packed.left",
                 "tree": "tree.ch", "exc": "exc.lr"}
EXTENDED_MODELS = ("callan.lr", "tableau.st", "tableau.left", "packed.left", "tree.ch")


def get_model(model_id: str) -> Model:
    try:
        return MODELS[model_id]
    except KeyError:
        raise UnknownModelError(f"unknown model {model_id!r}; choose from {', '.join(MODEL_IDS)}") from None


def weight_polynomial(objects: Iterable[Any], weight: Callable[[Any], int]) -> Poly:
    counts = Counter(weight(o) for o in objects)
    if not counts:
        return Poly()
    return Poly(tuple(counts.get(i, 0) for i in range(max(counts) + 1)))


def model_polynomial(model_id: str, n: int, k: int) -> Poly:
    if model_id == "formula":
        return spb_formula(n, k)
    model = get_model(model_id)
    return weight_polynomial(KINDS[model.kind].iterate(n, k), model.weight)


@dataclass(frozen=True)
class MapSpec:
    """A map between two model classes and what the harness asserts about it.

    ``weights`` names the domain and codomain weight models whose values must
    agree pointwise; ``None`` means no weight contract (or a custom one in
    ``extra``).  ``codomain_size`` gives the declared size of the image class;
    ``None`` means "check via ``codomain_ok`` only" (for non-injective maps).
    """

    id: str
    domain: str
    codomain: str
    apply: Callable[[Any], Any]
    weights: tuple[str, str] | None
    injective: bool = True
    codomain_size: Callable[[int, int], tuple[int, int]] | None = lambda n, k: (n, k)
    codomain_ok: Callable[[Any, Any], bool] | None = None
    needs_k: bool = False
    extra: Callable[[int, int, list, list], list[str]] | None = None


def _phi_codomain(src: CallanPerm, img: CallanPerm) -> bool:
    return img.k == src.k - 1 and 0 <= img.n <= src.n


def _psi_codomain(src, img) -> bool:
    return img.k == src.k - 1 and 0 <= img.n <= src.n


def _psi_extra(n: int, k: int, domain: list, images: list) -> list[str]:
    problems = []
    preimages: Counter = Counter()
    for e, f in zip(domain, images):
        case, _, b = excedance.psi_case(e)
        if case in (1, 2) and f.n != n:
            problems.append(f"case {case} image of {e.perm} left E_{n}^{k-1}")
        drop = 1 if case == 3 and b == 1 else 0
        if excedance.weight_lr(f) != excedance.weight_lr(e) - drop:
            problems.append(f"weight contract broken at {list(e.perm)} (case {case}, b={b})")
        if case == 2:
            preimages[f.perm] += 1
    for mu in excedance.iter_exc(n, k - 1):
        if n and preimages[mu.perm] != n:
            problems.append(f"case-2 preimage count of {list(mu.perm)} is {preimages[mu.perm]}, expected {n}")
    if not n and preimages:
        problems.append("case 2 is impossible for n = 0 but occurred")
    return problems


def _involution_extra(n: int, k: int, domain: list, images: list) -> list[str]:
    bad = [p for p, q in zip(domain, images) if tableaux.dual_involution(q) != p]
    return [f"not an involution at {bad[0].cells}"] if bad else []


def _transpose_extra(n: int, k: int, domain: list, images: list) -> list[str]:
    problems = [f"transpose is not an involution at {p.cells}"
                for p, q in zip(domain, images) if tableaux.transpose(q) != p][:1]
    forward = Counter(tableaux.weight_packed_down(q) for q in images)
    backward = Counter(tableaux.weight_packed_left(tableaux.transpose(q)) for q in images)
    if forward != backward:
        problems.append("transpose does not exchange the packed weights in reverse")
    return problems


MAPS: dict[str, MapSpec] = {m.id: m for m in [
    MapSpec("pad", "tableau", "packed", tableaux.pad, ("tableau.left", "packed.left")),
    MapSpec("cut", "packed", "tableau", tableaux.cut, ("packed.left", "tableau.left")),
    MapSpec("packed_to_tree", "packed", "tree", trees.packed_to_tree, ("packed.left", "tree.ch")),
    MapSpec("tree_to_packed", "tree", "packed", trees.tree_to_packed, ("tree.ch", "packed.left")),
    MapSpec("tree_to_callan", "tree", "callan", trees.tree_to_callan, ("tree.ch", "callan.lr")),
    MapSpec("callan_to_tableau", "callan", "tableau", callan_to_tableau, ("callan.lr", "tableau.st")),
    MapSpec("callan_to_exc", "callan", "exc", excedance.callan_to_exc, ("callan.rl", "exc.lr")),
    MapSpec("dual_involution", "packed", "packed", tableaux.dual_involution,
            ("packed.left", "packed.down"), extra=_involution_extra),
    MapSpec("transpose", "packed", "packed", tableaux.transpose, ("packed.left", "packed.down"),
            codomain_size=lambda n, k: (k, n), extra=_transpose_extra),
    MapSpec("phi", "callan", "callan", callan.phi, None, injective=False, codomain_size=None,
            codomain_ok=_phi_codomain, needs_k=True),
    MapSpec("psi", "exc", "exc", excedance.psi, None, injective=False, codomain_size=None,
            codomain_ok=_psi_codomain, needs_k=True, extra=_psi_extra),
]}


def get_map(map_id: str) -> MapSpec:
    try:
        return MAPS[map_id]
    except KeyError:
        raise UnknownModelError(f"unknown map {map_id!r}; choose from {', '.join(MAPS)}") from None


# -- verification ------------------------------------------------------------

@dataclass
class MapResult:
    map_id: str
    n: int
    k: int
    status: str                 # "pass", "fail" or "skip"
    objects: int = 0
    problems: list[str] = field(default_factory=list)
    counterexample: dict | None = None
    seconds: float = 0.0


def _serialize(obj) -> dict | None:
    return obj.to_json() if obj is not None and hasattr(obj, "to_json") else None


def verify_map(map_id: str, n: int, k: int) -> MapResult:
    spec = get_map(map_id)
    start = time.perf_counter()
    if spec.needs_k and k < 1:
        return MapResult(map_id, n, k, "skip")
    dom_kind, cod_kind = KINDS[spec.domain], KINDS[spec.codomain]
    domain = list(dom_kind.enumerate(n, k))
    images = []
    problems: list[str] = []
    witness = None

    def fail(msg, obj):
        nonlocal witness
        problems.append(msg)
        if witness is None:
            witness = obj

    for obj in domain:
        try:
            img = spec.apply(obj)
        except (DomainError, ValueError) as exc:
            fail(f"map raised {type(exc).__name__}: {exc}", obj)
            images.append(None)
            continue
        images.append(img)
        if not cod_kind.validate(img):
            fail("image is not a valid object", obj)
            continue
        if spec.codomain_size is not None and cod_kind.size(img) != spec.codomain_size(n, k):
            fail(f"image has size {cod_kind.size(img)}, expected {spec.codomain_size(n, k)}", obj)
        if spec.codomain_ok is not None and not spec.codomain_ok(obj, img):
            fail("image lies outside the declared codomain", obj)
        if spec.weights is not None:
            w_dom, w_cod = MODELS[spec.weights[0]].weight, MODELS[spec.weights[1]].weight
            if w_dom(obj) != w_cod(img):
                fail(f"weight {spec.weights[0]}={w_dom(obj)} but {spec.weights[1]}={w_cod(img)}", obj)

    valid_images = [i for i in images if i is not None]
    if spec.injective and len(set(valid_images)) != len(valid_images):
        seen = {}
        for obj, img in zip(domain, images):
            if img in seen:
                fail("map is not injective", obj)
                break
            seen[img] = obj
    if spec.injective and spec.codomain_size is not None and not problems:
        cn, ck = spec.codomain_size(n, k)
        target = sum(1 for _ in cod_kind.iterate(cn, ck))
        if target != len(set(valid_images)):
            problems.append(f"image has {len(set(valid_images))} objects, codomain has {target}")
    if spec.extra is not None and not problems:
        for msg in spec.extra(n, k, domain, images):
            fail(msg, None)

    return MapResult(map_id, n, k, "fail" if problems else "pass", len(domain),
                     problems[:10], _serialize(witness), time.perf_counter() - start)


@dataclass
class CellReport:
    n: int
    k: int
    models: dict[str, Poly] = field(default_factory=dict)
    maps: dict[str, MapResult] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)
    seconds: float = 0.0

    def failures(self) -> list[dict]:
        out = []
        expected = spb_formula(self.n, self.k)
        for mid, poly in self.models.items():
            if poly != expected:
                out.append({"n": self.n, "k": self.k, "model": mid,
                            "got": poly.to_list(), "expected": expected.to_list()})
        for name, ok in self.checks.items():
            if not ok:
                out.append({"n": self.n, "k": self.k, "check": name})
        for mid, res in self.maps.items():
            if res.status == "fail":
                out.append({"n": self.n, "k": self.k, "map": mid, "problems": res.problems,
                            "counterexample": res.counterexample})
        return out


@dataclass
class VerifyReport:
    max_n: int
    max_k: int
    cells: list[CellReport] = field(default_factory=list)
    extras: list[CellReport] = field(default_factory=list)
    seconds: float = 0.0

    def failures(self) -> list[dict]:
        return [f for c in self.cells + self.extras for f in c.failures()]

    @property
    def passed(self) -> bool:
        return not self.failures()

    def to_json(self, timings: bool = False) -> dict:
        """Timings are left out by default so repeated runs serialize identically."""
        def cell_json(c: CellReport):
            out = {
                "n": c.n, "k": c.k,
                "models": {m: p.to_list() for m, p in c.models.items()},
                "maps": {m: r.status for m, r in c.maps.items()},
                "checks": dict(c.checks),
            }
            if timings:
                out["seconds"] = round(c.seconds, 3)
            return out
        out = {
            "maxN": self.max_n, "maxK": self.max_k,
            "passed": self.passed,
            "grid": [cell_json(c) for c in self.cells],
            "extended": [cell_json(c) for c in self.extras],
            "failures": self.failures(),
        }
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


def verify_cell(n: int, k: int, model_ids: Iterable[str] | None = None,
                map_ids: Iterable[str] | None = None, cache_dir: str | None = None) -> CellReport:
    start = time.perf_counter()
    cell = CellReport(n, k)
    expected = spb_formula(n, k)
    cache = ResultCache(cache_dir) if cache_dir else None
    for mid in (MODELS if model_ids is None else model_ids):
        if cache is None:
            cell.models[mid] = model_polynomial(mid, n, k)
        else:
            cell.models[mid] = cache.polynomial(mid, n, k, model_polynomial)
    cell.checks["recurrence"] = spb_recurrence(n, k) == expected
    cell.checks["duality"] = spb_formula(k, n) == expected
    for mid in (MAPS if map_ids is None else map_ids):
        cell.maps[mid] = verify_map(mid, n, k)
    cell.seconds = time.perf_counter() - start
    return cell


def _verify_cell_args(args):
    return verify_cell(*args)


def verify_all(max_n: int, max_k: int, extended: bool = False, jobs: int = 1,
               cache_dir: str | None = None) -> VerifyReport:
    """All nine models and every map on the grid ``0..max_n x 0..max_k``.

    With ``extended``, the five lighter models are also checked at ``n = k = 5``.
    ``jobs > 1`` fans grid cells out to worker processes; the report is
    identical to the sequential one apart from timings.  Model polynomials
    are read from and written to ``cache_dir`` when given.
    """
    start = time.perf_counter()
    report = VerifyReport(max_n, max_k)
    tasks = [(n, k, None, None, cache_dir) for n in range(max_n + 1) for k in range(max_k + 1)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            report.cells = list(pool.map(_verify_cell_args, tasks))
    else:
        report.cells = [verify_cell(*t) for t in tasks]
    if extended:
        report.extras.append(verify_cell(5, 5, EXTENDED_MODELS, (), cache_dir))
    report.seconds = time.perf_counter() - start
    return report

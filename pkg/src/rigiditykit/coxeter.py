"""Coxeter systems on full subsets of a defining graph.

Two conventions meet here.  In a *defining graph* a missing edge means
``m = inf`` and an edge labeled 2 means "commute".  In a *Coxeter diagram*
a missing edge means ``m = 2`` and an infinite label is drawn explicitly.
``graph_to_diagram`` / ``diagram_to_graph`` are the only places where one is
turned into the other; the classification tables live in diagram form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from . import _kernels
from .certificates import (
    InfiniteSubgroupWitness,
    Join,
    Node,
    NormalizerWitness,
    ProductSplit,
    WqNormalize,
    check_certificate,
)
from .graph import LabeledGraph, connected_components

MAX_T_VERTICES = 16
SPECTRAL_TOL = 1e-9


class NotIrreducible(ValueError):
    pass


class TooLarge(ValueError):
    pass


class Amenable(ValueError):
    pass


class NotInT(ValueError):
    pass


class Disconnected(ValueError):
    pass


@dataclass(frozen=True)
class CoxeterSystem:
    graph: LabeledGraph
    subset: tuple[str, ...]

    @classmethod
    def of(cls, G: LabeledGraph, subset: Iterable[str] | None = None) -> "CoxeterSystem":
        sub = tuple(sorted(G.vertices if subset is None else set(subset)))
        for s in sub:
            if s not in G:
                raise ValueError(f"{s!r} is not a generator of the graph")
        return cls(G, sub)

    def restrict(self, subset: Iterable[str]) -> "CoxeterSystem":
        return CoxeterSystem.of(self.graph, subset)


def _sys(G_or_sys, subset=None) -> CoxeterSystem:
    if isinstance(G_or_sys, CoxeterSystem):
        return G_or_sys if subset is None else G_or_sys.restrict(subset)
    return CoxeterSystem.of(G_or_sys, subset)


# ---------------------------------------------------------------------------
# conventions

Diagram = dict  # {(i, j): m or None}, i < j, only pairs with m != 2; None is infinity


def graph_to_diagram(G: LabeledGraph, verts: Iterable[str]) -> tuple[tuple[str, ...], Diagram]:
    vs = tuple(sorted(verts))
    dia: Diagram = {}
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            m = G.label(vs[i], vs[j])
            if m != 2:
                dia[(i, j)] = m
    return vs, dia


def diagram_to_graph(n: int, dia: Diagram, names: Iterable[str] | None = None) -> LabeledGraph:
    names = list(names) if names is not None else [f"s{i}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            key = (i, j)
            if key not in dia:
                edges.append((names[i], names[j], 2))
            elif dia[key] is not None:
                edges.append((names[i], names[j], dia[key]))
    return LabeledGraph(names, edges, "coxeter")


def gram_from_diagram(n: int, dia: Diagram) -> np.ndarray:
    B = np.eye(n)
    for (i, j), m in dia.items():
        B[i, j] = B[j, i] = -1.0 if m is None else -math.cos(math.pi / m)
    return B


def gram_matrix(sys: CoxeterSystem) -> np.ndarray:
    """``B(s, t) = -cos(pi / m_st)``, with ``-1`` for infinite labels."""
    vs, dia = graph_to_diagram(sys.graph, sys.subset)
    return gram_from_diagram(len(vs), dia)


def spectral_kind(B: np.ndarray, tol: float = SPECTRAL_TOL) -> str:
    """``spherical`` if positive definite, ``affine`` if positive semidefinite
    with one-dimensional kernel, else ``other``."""
    ev = np.linalg.eigvalsh(B)
    if ev[0] > tol:
        return "spherical"
    if ev[0] >= -tol and np.count_nonzero(np.abs(ev) <= tol) == 1:
        return "affine"
    return "other"


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True)
class IrreducibleClassification:
    kind: str  # "spherical" | "affine" | "other_infinite"
    family: str | None = None  # "A", "B", ..., "I2", "A~", ...
    rank: int | None = None  # index n of X_n (affine X~_n has n + 1 generators)
    param: int | None = None  # m for I2(m)

    @property
    def name(self) -> str:
        if self.kind == "other_infinite":
            return "other_infinite"
        if self.family == "I2":
            return f"I2({self.param})"
        if self.family in ("E", "F", "H", "E~", "F~", "G~"):
            return f"{self.family}{self.rank}"
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return self.name


OTHER = IrreducibleClassification("other_infinite")


def _path(n: int, labels=None) -> Diagram:
    labels = labels or [3] * (n - 1)
    return {(i, i + 1): m for i, m in enumerate(labels)}


def _branched(chain: int, attach: int) -> Diagram:
    """Path on ``chain`` vertices plus one extra vertex joined to ``attach``."""
    d = _path(chain)
    d[(attach, chain)] = 3
    return d


def spherical_diagram(family: str, n: int, m: int | None = None) -> Diagram:
    if family == "A":
        return _path(n)
    if family == "B":
        return _path(n, [3] * (n - 2) + [4])
    if family == "D":
        return _branched(n - 1, n - 3)
    if family == "E":
        return _branched(n - 1, 2)
    if family == "F":
        return _path(4, [3, 4, 3])
    if family == "H":
        return _path(n, [5] + [3] * (n - 2))
    if family == "I2":
        return {(0, 1): m}
    raise ValueError(family)


def affine_diagram(family: str, n: int) -> Diagram:
    """Diagram of the affine family ``X~_n`` on ``n + 1`` vertices."""
    if family == "A~":
        if n == 1:
            return {(0, 1): None}
        d = _path(n + 1)
        d[(0, n)] = 3
        return d
    if family == "B~":
        d = {(0, 2): 3, (1, 2): 3}
        for i in range(2, n - 1):
            d[(i, i + 1)] = 3
        d[(n - 1, n)] = 4
        return d
    if family == "C~":
        return _path(n + 1, [4] + [3] * (n - 2) + [4])
    if family == "D~":
        d = {(0, 2): 3, (1, 2): 3}
        for i in range(2, n - 2):
            d[(i, i + 1)] = 3
        d[(n - 2, n - 1)] = 3
        d[(n - 2, n)] = 3
        return d
    if family == "E~":
        if n == 6:
            return {(0, 1): 3, (1, 2): 3, (2, 3): 3, (3, 4): 3, (2, 5): 3, (5, 6): 3}
        if n == 7:
            return _branched(7, 3)
        if n == 8:
            return _branched(8, 2)
    if family == "F~":
        return _path(5, [3, 3, 4, 3])
    if family == "G~":
        return _path(3, [6, 3])
    raise ValueError(f"{family}{n}")


def spherical_entries(max_rank: int, max_dihedral: int = 12):
    """``(classification, n_vertices, diagram)`` for every encoded spherical diagram."""
    for n in range(1, max_rank + 1):
        if n != 2:
            yield IrreducibleClassification("spherical", "A", n), n, spherical_diagram("A", n)
        if n >= 3:
            yield IrreducibleClassification("spherical", "B", n), n, spherical_diagram("B", n)
        if n >= 4:
            yield IrreducibleClassification("spherical", "D", n), n, spherical_diagram("D", n)
        if n in (6, 7, 8):
            yield IrreducibleClassification("spherical", "E", n), n, spherical_diagram("E", n)
        if n == 4:
            yield IrreducibleClassification("spherical", "F", 4), 4, spherical_diagram("F", 4)
        if n in (3, 4):
            yield IrreducibleClassification("spherical", "H", n), n, spherical_diagram("H", n)
    if max_rank >= 2:
        for m in range(3, max_dihedral + 1):
            yield IrreducibleClassification("spherical", "I2", 2, m), 2, spherical_diagram("I2", 2, m)


def affine_entries(max_rank: int):
    """``(classification, n_vertices, diagram)`` for affine ``X~_n``, ``n <= max_rank``."""
    for n in range(1, max_rank + 1):
        fams = ["A~"]
        if n >= 2:
            fams.append("C~")
        if n >= 3:
            fams.append("B~")
        if n >= 4:
            fams.append("D~")
        if n in (6, 7, 8):
            fams.append("E~")
        if n == 4:
            fams.append("F~")
        if n == 2:
            fams.append("G~")
        for fam in fams:
            yield IrreducibleClassification("affine", fam, n), n + 1, affine_diagram(fam, n)


def _tree_canon(n: int, dia: Diagram) -> str:
    adj: dict[int, list[tuple[int, object]]] = {i: [] for i in range(n)}
    for (i, j), m in dia.items():
        adj[i].append((j, m))
        adj[j].append((i, m))
    # centers by leaf stripping
    degree = {i: len(adj[i]) for i in range(n)}
    layer = [i for i in range(n) if degree[i] <= 1]
    remaining = n
    removed = set()
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for leaf in layer:
            removed.add(leaf)
            for w, _ in adj[leaf]:
                if w not in removed:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        layer = nxt
    centers = [i for i in range(n) if i not in removed]

    def enc(v: int, parent: int) -> str:
        parts = sorted(f"{'inf' if m is None else m}{enc(w, v)}" for w, m in adj[v] if w != parent)
        return "(" + "".join(parts) + ")"

    return min(enc(c, -1) for c in centers)


@lru_cache(maxsize=None)
def _tree_table(n: int) -> dict[str, IrreducibleClassification]:
    table = {}
    entries = list(spherical_entries(n, 0)) + list(affine_entries(n - 1))
    for cls, size, dia in entries:
        if size == n and size >= 3 and len(dia) == size - 1:
            table[_tree_canon(size, dia)] = cls
    return table


def classify_diagram(n: int, dia: Diagram) -> IrreducibleClassification:
    """Classify a connected diagram on ``n`` vertices (``n >= 1``)."""
    if n == 1:
        return IrreducibleClassification("spherical", "A", 1)
    if n == 2:
        m = dia[(0, 1)]
        if m is None:
            return IrreducibleClassification("affine", "A~", 1)
        return IrreducibleClassification("spherical", "I2", 2, m)
    if any(m is None for m in dia.values()):
        return OTHER
    if len(dia) == n - 1:
        return _tree_table(n).get(_tree_canon(n, dia), OTHER)
    if len(dia) == n:
        deg = [0] * n
        for i, j in dia:
            deg[i] += 1
            deg[j] += 1
        if all(d == 2 for d in deg) and all(m == 3 for m in dia.values()):
            return IrreducibleClassification("affine", "A~", n - 1)
    return OTHER


# ---------------------------------------------------------------------------
# components and subset properties


def _noncommuting_masks(G: LabeledGraph, verts: tuple[str, ...]) -> list[int]:
    n = len(verts)
    nc = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and G.label(verts[i], verts[j]) != 2:
                nc[i] |= 1 << j
    return nc


def _perp_masks(G: LabeledGraph, verts: tuple[str, ...]) -> list[int]:
    n = len(verts)
    return [sum(1 << j for j in range(n) if j != i and G.label(verts[i], verts[j]) == 2)
            for i in range(n)]


def _mask_components(A: int, nc: list[int]) -> list[int]:
    comps = []
    rest = A
    while rest:
        low = rest & -rest
        comp = frontier = low
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            new = nc[b.bit_length() - 1] & A & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def _bits(mask: int, verts: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(v for i, v in enumerate(verts) if mask >> i & 1)


def _mask(subset: Iterable[str], verts: tuple[str, ...]) -> int:
    idx = {v: i for i, v in enumerate(verts)}
    return sum(1 << idx[v] for v in set(subset))


def irreducible_components(sys: CoxeterSystem) -> list[tuple[str, ...]]:
    """Irreducible components: connected pieces of the non-commuting relation."""
    verts = sys.subset
    nc = _noncommuting_masks(sys.graph, verts)
    comps = _mask_components((1 << len(verts)) - 1, nc)
    return sorted((_bits(c, verts) for c in comps), key=lambda c: c[0])


def classify_irreducible(sys: CoxeterSystem) -> IrreducibleClassification:
    if not sys.subset or len(irreducible_components(sys)) != 1:
        raise NotIrreducible(f"{list(sys.subset)} is not irreducible")
    vs, dia = graph_to_diagram(sys.graph, sys.subset)
    return classify_diagram(len(vs), dia)


@dataclass(frozen=True)
class SubsetProperties:
    spherical: bool
    affine_irreducible: bool
    amenable: bool
    minimal_nonspherical: bool
    perp: dict[str, tuple[str, ...]]
    components: tuple[tuple[str, ...], ...]
    classifications: tuple[IrreducibleClassification, ...]


def _component_kinds(sys: CoxeterSystem):
    comps = irreducible_components(sys)
    return comps, [classify_irreducible(sys.restrict(c)) for c in comps]


def is_spherical(G_or_sys, subset=None) -> bool:
    sys = _sys(G_or_sys, subset)
    return all(c.kind == "spherical" for c in _component_kinds(sys)[1])


def is_amenable(G_or_sys, subset=None) -> bool:
    sys = _sys(G_or_sys, subset)
    return all(c.kind in ("spherical", "affine") for c in _component_kinds(sys)[1])


def perp(G: LabeledGraph, s: str, within: Iterable[str]) -> tuple[str, ...]:
    """Generators of ``within`` other than ``s`` joined to ``s`` by a 2-edge."""
    return tuple(sorted(t for t in within if t != s and G.label(s, t) == 2))


def subset_properties(sys: CoxeterSystem) -> SubsetProperties:
    comps, kinds = _component_kinds(sys)
    spherical = all(k.kind == "spherical" for k in kinds)
    minimal = (not spherical) and all(
        is_spherical(sys.graph, [t for t in sys.subset if t != s]) for s in sys.subset)
    return SubsetProperties(
        spherical=spherical,
        affine_irreducible=len(kinds) == 1 and kinds[0].kind == "affine",
        amenable=all(k.kind in ("spherical", "affine") for k in kinds),
        minimal_nonspherical=minimal,
        perp={s: perp(sys.graph, s, sys.subset) for s in sys.subset},
        components=tuple(comps),
        classifications=tuple(kinds),
    )


# ---------------------------------------------------------------------------
# class T


@dataclass(frozen=True)
class TDerivation:
    """``base_affine`` / ``base_product`` / ``op2`` / ``op3`` node.

    ``op2``: ``children = (S0,)``, ``s`` added, ``witness = s-perp ∩ S0``.
    ``op3``: ``children = (S1, S2)``, ``witness = S1 ∩ S2``.
    ``base_product``: ``parts`` are the two irreducible components.
    """

    rule: str
    subset: tuple[str, ...]
    depth: int
    children: tuple["TDerivation", ...] = ()
    s: str | None = None
    witness: tuple[str, ...] = ()
    parts: tuple[tuple[str, ...], ...] = ()

    def to_dict(self) -> dict:
        d: dict = {"rule": self.rule, "subset": list(self.subset), "depth": self.depth}
        if self.s is not None:
            d["s"] = self.s
        if self.witness:
            d["witness"] = list(self.witness)
        if self.parts:
            d["parts"] = [list(p) for p in self.parts]
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d


@dataclass(frozen=True)
class TMembership:
    member: bool
    derivation: TDerivation | None = None


_RULES = {_kernels.RULE_BASE_AFFINE: "base_affine", _kernels.RULE_BASE_PRODUCT: "base_product",
          _kernels.RULE_OP2: "op2", _kernels.RULE_OP3: "op3"}


class TClosure:
    """Membership in class T for every full subset of a system (<= 16 generators)."""

    def __init__(self, sys: CoxeterSystem):
        verts = sys.subset
        n = len(verts)
        if n > MAX_T_VERTICES:
            raise TooLarge(f"{n} generators exceed the bound of {MAX_T_VERTICES}")
        self.sys = sys
        self.verts = verts
        self.n = n
        G = sys.graph
        self._nc = _noncommuting_masks(G, verts)
        self._perp = _perp_masks(G, verts)
        self._kind_cache: dict[int, IrreducibleClassification] = {}
        size = 1 << n
        nonsph = np.zeros(size, dtype=np.bool_)
        amen = np.zeros(size, dtype=np.bool_)
        base = np.zeros(size, dtype=np.int8)
        for A in range(1, size):
            comps = _mask_components(A, self._nc)
            kinds = [self._kind(c) for c in comps]
            nonsph[A] = any(k.kind != "spherical" for k in kinds)
            amen[A] = all(k.kind != "other_infinite" for k in kinds)
            if len(comps) == 1 and kinds[0].kind == "affine" and bin(A).count("1") >= 3:
                base[A] = _kernels.RULE_BASE_AFFINE
            elif len(comps) == 2 and all(k.kind != "spherical" for k in kinds):
                base[A] = _kernels.RULE_BASE_PRODUCT
        amen[0] = True
        self.nonspherical = nonsph
        self.amenable_table = amen
        perp_arr = np.array(self._perp, dtype=np.int64) if n else np.zeros(0, np.int64)
        self.depth, self.rule, self.arg1, self.arg2 = _kernels.t_closure(n, nonsph, base, perp_arr)

    def _kind(self, comp: int) -> IrreducibleClassification:
        k = self._kind_cache.get(comp)
        if k is None:
            vs, dia = graph_to_diagram(self.sys.graph, _bits(comp, self.verts))
            k = self._kind_cache[comp] = classify_diagram(len(vs), dia)
        return k

    def mask(self, subset: Iterable[str]) -> int:
        return _mask(subset, self.verts)

    def names(self, mask: int) -> tuple[str, ...]:
        return _bits(mask, self.verts)

    def components(self, mask: int) -> list[int]:
        return sorted(_mask_components(mask, self._nc), key=lambda c: c & -c)

    def is_member(self, subset: Iterable[str] | None = None) -> bool:
        A = (1 << self.n) - 1 if subset is None else self.mask(subset)
        return bool(self.depth[A] >= 0)

    def derivation(self, subset: Iterable[str] | None = None) -> TDerivation | None:
        A = (1 << self.n) - 1 if subset is None else self.mask(subset)
        return self._derive(A) if self.depth[A] >= 0 else None

    def _derive(self, A: int) -> TDerivation:
        rule = _RULES[int(self.rule[A])]
        depth = int(self.depth[A])
        names = self.names(A)
        if rule == "base_affine":
            return TDerivation(rule, names, depth)
        if rule == "base_product":
            parts = tuple(self.names(c) for c in self.components(A))
            return TDerivation(rule, names, depth, parts=parts)
        a1, a2 = int(self.arg1[A]), int(self.arg2[A])
        if rule == "op2":
            return TDerivation(rule, names, depth, (self._derive(a1),), s=self.verts[a2],
                               witness=self.names(self._perp[a2] & a1))
        return TDerivation(rule, names, depth, (self._derive(a1), self._derive(a2)),
                           witness=self.names(a1 & a2))

    def membership(self, subset: Iterable[str] | None = None) -> TMembership:
        d = self.derivation(subset)
        return TMembership(d is not None, d)


def t_membership(sys: CoxeterSystem, subset: Iterable[str] | None = None) -> TMembership:
    """Membership of ``sys`` (or of a full subset of it) in class T."""
    return TClosure(sys).membership(subset)


def check_derivation(G: LabeledGraph, d: TDerivation) -> list[str]:
    """Re-check every side condition of a T derivation; returns problems."""
    problems = []
    sub = set(d.subset)
    sys = CoxeterSystem.of(G, sub)
    if d.rule == "base_affine":
        props = subset_properties(sys)
        if not (props.affine_irreducible and len(sub) >= 3):
            problems.append(f"{sorted(sub)} is not irreducible affine of rank >= 3")
    elif d.rule == "base_product":
        comps = irreducible_components(sys)
        if len(comps) != 2 or any(is_spherical(G, c) for c in comps):
            problems.append(f"{sorted(sub)} is not a product of two irreducible non-spherical systems")
    elif d.rule == "op2":
        (c,) = d.children
        S0 = set(c.subset)
        if d.s in S0 or S0 | {d.s} != sub:
            problems.append(f"op2 at {sorted(sub)}: subsets do not match")
        w = set(perp(G, d.s, S0))
        if w != set(d.witness) or is_spherical(G, w):
            problems.append(f"op2 at {sorted(sub)}: {d.s}-perp in S0 is spherical or misrecorded")
        problems += check_derivation(G, c)
    elif d.rule == "op3":
        c1, c2 = d.children
        S1, S2 = set(c1.subset), set(c2.subset)
        if S1 | S2 != sub or S1 == sub or S2 == sub:
            problems.append(f"op3 at {sorted(sub)}: not a cover by proper subsets")
        if set(d.witness) != S1 & S2 or not S1 & S2 or is_spherical(G, S1 & S2):
            problems.append(f"op3 at {sorted(sub)}: intersection is spherical or misrecorded")
        problems += check_derivation(G, c1) + check_derivation(G, c2)
    else:
        problems.append(f"unknown rule {d.rule!r}")
    return problems


@dataclass(frozen=True)
class RelHypVerdict:
    not_relatively_hyperbolic: bool
    first_l2_betti_zero: bool


def relative_hyperbolicity_verdict(sys: CoxeterSystem) -> RelHypVerdict:
    member = t_membership(sys).member
    return RelHypVerdict(member, member)


# ---------------------------------------------------------------------------
# rigidity certificates


def _split(left: Iterable[str], right: Iterable[str]) -> ProductSplit:
    return ProductSplit(tuple(sorted(left)), tuple(sorted(right)))


def _product_of_components(parts) -> ProductSplit:
    a, b = sorted(parts, key=lambda p: (-len(p), p))
    return _split(a, b)


def coxeter_rigidity_certificate(sys: CoxeterSystem, closure: TClosure | None = None) -> Node:
    """Translate the T derivation of a nonamenable connected system into rules."""
    G = sys.graph
    sub = G.full_subgraph(sys.subset)
    if len(connected_components(sub)) != 1:
        raise Disconnected("defining graph of the system is not connected")
    closure = closure if closure is not None and closure.sys == sys else TClosure(sys)
    full = (1 << closure.n) - 1
    if closure.amenable_table[full]:
        raise Amenable(f"{list(sys.subset)} generates an amenable group")
    if closure.depth[full] < 0:
        raise NotInT(f"{list(sys.subset)} is not in class T (relatively hyperbolic)")
    return _cert(closure, full)


def _affine_component_meeting(closure: TClosure, S: int, other: int) -> int:
    """Irreducible component ``C`` of ``S`` with ``C ∩ other`` non-spherical."""
    for c in closure.components(S):
        if closure.nonspherical[c & other]:
            return c
    raise AssertionError("no component meets the witness in a non-spherical set")


def _cert(closure: TClosure, A: int) -> Node:
    rule = int(closure.rule[A])
    names = closure.names
    if rule == _kernels.RULE_BASE_PRODUCT:
        return _product_of_components([names(c) for c in closure.components(A)])
    if rule == _kernels.RULE_BASE_AFFINE:
        raise AssertionError("irreducible affine systems are amenable")
    a1, a2 = int(closure.arg1[A]), int(closure.arg2[A])
    if rule == _kernels.RULE_OP2:
        S0, s = a1, a2
        w = closure._perp[s] & S0
        if not closure.amenable_table[S0]:
            return WqNormalize(_cert(closure, S0), (closure.verts[s],),
                               (NormalizerWitness("perp", names(w)),))
        C = _affine_component_meeting(closure, S0, w)
        return _split(names(A & ~C), names(C))
    S1, S2 = a1, a2
    am1, am2 = bool(closure.amenable_table[S1]), bool(closure.amenable_table[S2])
    if not am1 and not am2:
        return Join(_cert(closure, S1), _cert(closure, S2),
                    InfiniteSubgroupWitness("non_spherical_subset", names(S1 & S2)))
    if am1 != am2:
        amen, rigid = (S1, S2) if am1 else (S2, S1)
        C = _affine_component_meeting(closure, amen, rigid)
        normalizers = names(amen)
        return WqNormalize(_cert(closure, rigid), normalizers,
                           tuple(NormalizerWitness("component", names(C)) for _ in normalizers))
    for c in closure.components(S1):
        for d in closure.components(S2):
            if closure.nonspherical[c & d]:
                assert c == d, "common affine component must coincide"
                return _split(names(A & ~c), names(c))
    raise AssertionError("amenable op3 without a common component")


def coxeter_theorem_report(G: LabeledGraph) -> dict:
    """Per-component amenability, T membership and certificates."""
    G = G.with_kind("coxeter")
    comps = []
    for comp in connected_components(G):
        sys = CoxeterSystem.of(G, comp)
        closure = TClosure(sys)
        full = (1 << closure.n) - 1
        amenable = bool(closure.amenable_table[full])
        in_T = bool(closure.depth[full] >= 0)
        entry: dict = {"vertices": list(comp), "amenable": amenable, "in_T": in_T, "rel_hyp": not in_T}
        if in_T:
            entry["derivation"] = closure.derivation().to_dict()
        if in_T and not amenable:
            cert = coxeter_rigidity_certificate(sys, closure)
            entry["certificate"] = cert.to_dict()
            entry["check"] = check_certificate(cert, G.full_subgraph(comp)).to_dict()
        comps.append(entry)
    applies = bool(comps) and all(c["in_T"] and not c["amenable"] for c in comps)
    return {"kind": "coxeter", "components": comps, "count": len(comps),
            "theorem_1_2_applies": applies, "invariant": len(comps)}

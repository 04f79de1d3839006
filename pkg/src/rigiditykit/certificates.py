"""Rigidity certificates: trees of the four inference rules, and their checker.

Rules (each certifies its ``scope``, a set of generators):

* ``ProductSplit`` - a nonamenable direct product of two infinite groups.
* ``InfiniteCenter`` - a nonamenable subgroup with infinite center.
* ``Join`` - generated by two certified pieces with infinite intersection.
* ``WqNormalize`` - a certified piece together with elements ``g`` for which
  ``g H g^-1 ∩ H`` is infinite.

The checker re-derives every combinatorial side condition from the graph.
The group-theoretic implications themselves are axioms and are only cited.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Union

from .artin import (
    ArtinSubgroupDescriptor,
    DeltaElement,
    NonamenabilityWitness,
    RigidChain,
    Word,
    as_element,
    chain_problems,
    membership_witness,
    nonamenable_vertex_witness,
    vertex_delta_group,
    witness_is_valid,
)
from .graph import LabeledGraph, connected_components


class BrokenLink(ValueError):
    pass


class CoverageError(ValueError):
    pass


AXIOMS = {
    "product_split": "a nonamenable direct product of two infinite groups is rigid",
    "infinite_center": "a nonamenable group with infinite center is rigid",
    "join": "two rigid subgroups with infinite intersection generate a rigid subgroup",
    "wq_normalize": "the wq-normalizer of a rigid subgroup is rigid",
    "parabolic": "full subgraphs give injective parabolic inclusions (generators have infinite order)",
    "dihedral_center": "a dihedral Artin group with label m >= 3 is nonamenable with center generated by Delta",
    "free_pairs": "the recorded witness pairs generate (or have powers generating) free groups",
}


@dataclass(frozen=True)
class InfiniteSubgroupWitness:
    """An infinite subgroup named by a non-spherical subset, a cyclic
    generator (a delta or word) or a vertex generator."""

    kind: str  # "non_spherical_subset" | "cyclic" | "vertex"
    value: Union[tuple[str, ...], DeltaElement, Word, str]

    @classmethod
    def of(cls, x) -> "InfiniteSubgroupWitness":
        x = as_element(x)
        if isinstance(x, str):
            return cls("vertex", x)
        if isinstance(x, (DeltaElement, Word)):
            return cls("cyclic", x)
        return cls("non_spherical_subset", tuple(sorted(x)))

    def to_dict(self) -> dict:
        if self.kind == "non_spherical_subset":
            return {"kind": self.kind, "subset": list(self.value)}
        if self.kind == "vertex":
            return {"kind": self.kind, "word": self.value}
        if isinstance(self.value, DeltaElement):
            return {"kind": self.kind, "edge": list(self.value.edge), "word": str(self.value)}
        return {"kind": self.kind, "word": str(self.value)}

    @classmethod
    def from_dict(cls, d: dict) -> "InfiniteSubgroupWitness":
        kind = d["kind"]
        if kind == "non_spherical_subset":
            return cls(kind, tuple(d["subset"]))
        if kind == "vertex":
            return cls(kind, d["word"])
        if "edge" in d:
            return cls(kind, DeltaElement(tuple(d["edge"])))
        return cls(kind, Word.parse(d["word"]))

    def __str__(self) -> str:
        if self.kind == "non_spherical_subset":
            return "{" + ",".join(self.value) + "}"
        return str(self.value)


@dataclass(frozen=True)
class NormalizerWitness:
    form: str  # "perp" (subset of g-perp) | "component" (g in it or commuting with it)
    subset: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"form": self.form, "subset": list(self.subset)}


@dataclass(frozen=True)
class ProductSplit:
    left: tuple[str, ...]
    right: tuple[str, ...]
    tag = "product_split"


@dataclass(frozen=True)
class InfiniteCenter:
    subgroup: ArtinSubgroupDescriptor
    center_witness: Word
    nonamenability: NonamenabilityWitness | None = None
    tag = "infinite_center"


@dataclass(frozen=True)
class Join:
    a: "Node"
    b: "Node"
    witness: InfiniteSubgroupWitness | None
    tag = "join"


@dataclass(frozen=True)
class WqNormalize:
    inner: "Node"
    normalizers: tuple[str, ...]
    witnesses: tuple[NormalizerWitness, ...]
    tag = "wq_normalize"


Node = Union[ProductSplit, InfiniteCenter, Join, WqNormalize]


def scope(node: Node) -> frozenset[str]:
    """Generator set of the group a node certifies."""
    if isinstance(node, ProductSplit):
        return frozenset(node.left) | frozenset(node.right)
    if isinstance(node, InfiniteCenter):
        return frozenset(str(w) for w in node.subgroup.generators)
    if isinstance(node, Join):
        return scope(node.a) | scope(node.b)
    return scope(node.inner) | frozenset(node.normalizers)


def scope_vertices(node: Node) -> frozenset[str]:
    return frozenset(x for g in scope(node) for x in Word.parse(g).support())


def walk_nodes(node: Node, path: str = "root") -> Iterator[tuple[str, Node]]:
    yield path, node
    if isinstance(node, Join):
        yield from walk_nodes(node.a, path + ".a")
        yield from walk_nodes(node.b, path + ".b")
    elif isinstance(node, WqNormalize):
        yield from walk_nodes(node.inner, path + ".inner")


def leaves(node: Node) -> Iterator[Node]:
    for _, n in walk_nodes(node):
        if isinstance(n, (ProductSplit, InfiniteCenter)):
            yield n


def to_dict(node: Node) -> dict:
    d: dict = {"node": node.tag, "scope": sorted(scope(node))}
    if isinstance(node, ProductSplit):
        d["left"] = list(node.left)
        d["right"] = list(node.right)
    elif isinstance(node, InfiniteCenter):
        d["subgroup"] = node.subgroup.to_dict()
        d["center_witness"] = str(node.center_witness)
        d["nonamenability"] = node.nonamenability.to_dict() if node.nonamenability else None
    elif isinstance(node, Join):
        d["a"] = to_dict(node.a)
        d["b"] = to_dict(node.b)
        d["intersection_witness"] = node.witness.to_dict() if node.witness else None
    else:
        d["inner"] = to_dict(node.inner)
        d["normalizers"] = list(node.normalizers)
        d["per_normalizer_witness"] = [w.to_dict() for w in node.witnesses]
    return d


def from_dict(d: dict, G: LabeledGraph | None = None) -> Node:
    tag = d["node"]
    if tag == "product_split":
        return ProductSplit(tuple(d["left"]), tuple(d["right"]))
    if tag == "infinite_center":
        nw = None
        if d.get("nonamenability"):
            raw = d["nonamenability"]
            nw = NonamenabilityWitness(raw["case"], raw["center"], raw["u"], raw["w"],
                                       tuple(raw["labels"]),
                                       tuple(_element_from_text(t) for t in raw["elements"]),
                                       raw.get("power"))
            if G is not None:
                try:
                    nw = NonamenabilityWitness.from_dict(raw, G)
                except (ValueError, KeyError):
                    pass
        return InfiniteCenter(ArtinSubgroupDescriptor.from_dict(d["subgroup"]),
                              Word.parse(d["center_witness"]), nw)
    if tag == "join":
        w = d.get("intersection_witness")
        return Join(from_dict(d["a"], G), from_dict(d["b"], G),
                    InfiniteSubgroupWitness.from_dict(w) if w else None)
    if tag == "wq_normalize":
        return WqNormalize(from_dict(d["inner"], G), tuple(d["normalizers"]),
                           tuple(NormalizerWitness(w["form"], tuple(w["subset"]))
                                 for w in d["per_normalizer_witness"]))
    raise ValueError(f"unknown certificate node {tag!r}")


def _element_from_text(text: str):
    w = Word.parse(text)
    return w.letters[0][0] if len(w) == 1 else w


def dumps(node: Node) -> str:
    return json.dumps(to_dict(node), indent=2)


# attach serializer as a method for convenience
for _cls in (ProductSplit, InfiniteCenter, Join, WqNormalize):
    _cls.to_dict = to_dict


# ---------------------------------------------------------------------------
# construction from chains


def _leaf(H: ArtinSubgroupDescriptor, G: LabeledGraph) -> Node:
    if H.kind == "vertex_set":
        center = H.center
        if center is None:
            center = next((v for v in H.vertices
                           if all(u == v or G.commute(u, v) for u in H.vertices)), None)
            if center is None:
                raise ValueError(f"{H.name} does not visibly split as a product")
        rest = tuple(v for v in H.vertices if v != center)
        return ProductSplit((center,), rest)
    if H.kind == "edge":
        return InfiniteCenter(H, DeltaElement(H.edge).word)
    return InfiniteCenter(H, Word.of(H.center), nonamenable_vertex_witness(G, H.center))


def chain_to_certificate(chain: RigidChain, G: LabeledGraph) -> Node:
    """Left fold of a rigid chain into nested ``Join`` nodes over leaf rules."""
    if not chain.entries:
        raise CoverageError("empty chain")
    for i, x in enumerate(chain.links):
        for H in chain.entries[i:i + 2]:
            if not membership_witness(x, H, G):
                raise BrokenLink(f"link {i} ({x}) is not shown to lie in {H.name}")
    uncovered = [p for p in chain_problems(chain, G) if "covered by no entry" in p]
    if uncovered:
        raise CoverageError("; ".join(uncovered))
    cert = _leaf(chain.entries[0], G)
    for x, H in zip(chain.links, chain.entries[1:]):
        cert = Join(cert, _leaf(H, G), InfiniteSubgroupWitness.of(x))
    return cert


# ---------------------------------------------------------------------------
# checking


@dataclass
class NodeCheck:
    path: str
    rule: str
    ok: bool
    reasons: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"path": self.path, "rule": self.rule, "ok": self.ok, "reasons": self.reasons}


@dataclass
class CertCheckReport:
    nodes: list[NodeCheck]
    coverage_ok: bool
    uncovered: list[str]
    axioms: list[str]

    @property
    def ok(self) -> bool:
        return self.coverage_ok and all(n.ok for n in self.nodes)

    @property
    def failed(self) -> list[str]:
        return [n.path for n in self.nodes if not n.ok]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "coverage_ok": self.coverage_ok, "uncovered": self.uncovered,
                "failed": self.failed, "nodes": [n.to_dict() for n in self.nodes],
                "axioms": self.axioms}


def _admits(node: Node, x, G: LabeledGraph) -> bool:
    """Sufficient test that element ``x`` lies in the group certified by ``node``."""
    x = as_element(x)
    if isinstance(node, ProductSplit):
        gens = set(node.left) | set(node.right)
        if isinstance(x, str):
            return x in gens
        if isinstance(x, DeltaElement):
            return x.endpoints() <= gens and G.label(*x.edge[:2]) == x.edge[2]
        return x.support() <= gens
    if isinstance(node, InfiniteCenter):
        return membership_witness(x, node.subgroup, G)
    if isinstance(node, Join):
        return _admits(node.a, x, G) or _admits(node.b, x, G)
    return _admits(node.inner, x, G) or (isinstance(x, str) and x in node.normalizers)


def _coxeter():
    from . import coxeter

    return coxeter


def _spherical(G: LabeledGraph, subset: Iterable[str]) -> bool:
    return _coxeter().is_spherical(G, subset)


def subgroup_infinite(witness: InfiniteSubgroupWitness, scope_obj, G: LabeledGraph) -> bool:
    """Whether ``witness`` names an infinite subgroup of ``scope_obj``.

    ``scope_obj`` is a certificate node, a subgroup descriptor, a set of
    generators, or None for the whole group of ``G``.  Non-spherical subsets are decided by the Coxeter classifier;
    vertex and cyclic generators are infinite by the parabolic-injectivity
    axiom as soon as the scope provably contains them.
    """
    if scope_obj is None:
        scope_obj = G.vertices
    if witness.kind == "non_spherical_subset":
        sub = set(witness.value)
        if not sub or not sub <= set(G.vertices):
            return False
        if isinstance(scope_obj, ArtinSubgroupDescriptor):
            ok = all(membership_witness(v, scope_obj, G) for v in sub)
        elif isinstance(scope_obj, (ProductSplit, InfiniteCenter, Join, WqNormalize)):
            ok = sub <= scope_vertices(scope_obj)
        else:
            ok = sub <= set(scope_obj)
        return ok and not _spherical(G, sub)
    x = witness.value
    if isinstance(x, str) and x not in G:
        return False
    if isinstance(scope_obj, ArtinSubgroupDescriptor):
        return membership_witness(x, scope_obj, G)
    if isinstance(scope_obj, (ProductSplit, InfiniteCenter, Join, WqNormalize)):
        return _admits(scope_obj, x, G)
    gens = set(scope_obj)
    x = as_element(x)
    if isinstance(x, str):
        return x in gens
    if isinstance(x, DeltaElement):
        return x.endpoints() <= gens and G.label(*x.edge[:2]) == x.edge[2]
    return bool(x.letters) and x.support() <= gens


def _check_product_split(node: ProductSplit, G: LabeledGraph) -> list[str]:
    reasons = []
    left, right = set(node.left), set(node.right)
    if not left or not right:
        reasons.append("empty factor")
    if left & right:
        reasons.append(f"factors overlap in {sorted(left & right)}")
    missing = sorted((left | right) - set(G.vertices))
    if missing:
        reasons.append(f"unknown generators {missing}")
        return reasons
    for u in sorted(left):
        for v in sorted(right):
            if u != v and G.label(u, v) != 2:
                m = G.label(u, v)
                reasons.append(f"cross pair {u}-{v} has label {'inf' if m is None else m}, not 2")
    if G.kind == "coxeter":
        for name, part in (("left", left), ("right", right)):
            if part and _spherical(G, part):
                reasons.append(f"{name} factor {sorted(part)} is spherical (finite)")
        if left and right and _coxeter().is_amenable(G, left | right):
            reasons.append("product is amenable")
    else:
        union = sorted(left | right)
        if not any(not G.commute(a, b) for i, a in enumerate(union) for b in union[i + 1:]):
            reasons.append("no non-commuting pair: product is abelian")
    return reasons


def _check_infinite_center(node: InfiniteCenter, G: LabeledGraph) -> list[str]:
    H = node.subgroup
    if G.kind != "artin":
        return ["infinite-center leaves are only used for Artin groups"]
    if H.kind == "edge":
        u, v, m = H.edge
        if u not in G or v not in G or G.label(u, v) != m:
            return [f"edge {u}-{v} with label {m} is not in the graph"]
        if m < 3:
            return [f"edge label {m} < 3: group is abelian"]
        if node.center_witness != DeltaElement(H.edge).word:
            return [f"center witness {node.center_witness} is not Delta of {u}{v}"]
        return []
    if H.kind == "vertex_delta":
        v = H.center
        if v not in G:
            return [f"unknown center {v!r}"]
        expected = vertex_delta_group(G, v)
        if expected.incident != tuple(tuple(e) for e in H.incident):
            return [f"H_{v} must use the deltas of all edges at {v}"]
        reasons = []
        if node.center_witness != Word.of(v):
            reasons.append(f"center witness {node.center_witness} is not {v}")
        if node.nonamenability is None or not witness_is_valid(G, node.nonamenability):
            reasons.append(f"no valid nonamenability witness for H_{v}")
        return reasons
    return [f"{H.kind} subgroups are not infinite-center leaves"]


def _check_join(node: Join, G: LabeledGraph) -> list[str]:
    w = node.witness
    if w is None:
        return ["missing intersection witness"]
    reasons = []
    for side, child in (("a", node.a), ("b", node.b)):
        if not subgroup_infinite(w, child, G):
            reasons.append(f"witness {w} not shown to be an infinite subgroup of side {side}")
    return reasons


def _check_wq(node: WqNormalize, G: LabeledGraph) -> list[str]:
    reasons = []
    if len(node.witnesses) != len(node.normalizers):
        return ["one witness per normalizer required"]
    inner = scope_vertices(node.inner)
    for g, wit in zip(node.normalizers, node.witnesses):
        sub = set(wit.subset)
        if g not in G:
            reasons.append(f"unknown normalizer {g!r}")
            continue
        if not sub or not sub <= inner:
            reasons.append(f"witness {sorted(sub)} for {g} is not inside the inner scope")
            continue
        if G.kind == "coxeter" and _spherical(G, sub):
            reasons.append(f"witness {sorted(sub)} for {g} is spherical (finite)")
            continue
        if wit.form == "perp":
            if g in sub or not all(G.commute(g, s) for s in sub):
                reasons.append(f"witness {sorted(sub)} is not inside {g}-perp")
        elif wit.form == "component":
            if g not in sub and not all(G.commute(g, s) for s in sub):
                reasons.append(f"{g} neither lies in nor commutes with {sorted(sub)}")
        else:
            reasons.append(f"unknown witness form {wit.form!r}")
    return reasons


_CHECKS = {ProductSplit: _check_product_split, InfiniteCenter: _check_infinite_center,
           Join: _check_join, WqNormalize: _check_wq}


def check_certificate(cert: Node, G: LabeledGraph) -> CertCheckReport:
    """Re-check every node and the coverage of the component."""
    nodes = []
    rules = set()
    for path, node in walk_nodes(cert):
        reasons = _CHECKS[type(node)](node, G)
        nodes.append(NodeCheck(path, node.tag, not reasons, reasons))
        rules.add(node.tag)
    verts = scope_vertices(cert) & set(G.vertices)
    uncovered: list[str] = []
    if not verts:
        uncovered = list(G.vertices) or ["<empty graph>"]
    else:
        comp = next(c for c in connected_components(G) if min(verts) in c)
        if G.kind == "coxeter":
            uncovered = sorted(set(comp) - scope_vertices(cert))
            extra = sorted(scope_vertices(cert) - set(comp))
            uncovered += [f"{x} (outside component)" for x in extra]
        else:
            uncovered = [v for v in comp if not _admits(cert, v, G)]
    axioms = [AXIOMS[r] for r in sorted(rules)] + [AXIOMS["parabolic"]]
    if G.kind == "artin":
        axioms += [AXIOMS["dihedral_center"], AXIOMS["free_pairs"]]
    return CertCheckReport(nodes, not uncovered, uncovered, axioms)


# ---------------------------------------------------------------------------
# mutation suite


@dataclass
class Mutation:
    name: str
    target: str
    cert: Node
    graph: LabeledGraph


def _replace_at(node: Node, path: str, new: Node, here: str = "root") -> Node:
    if here == path:
        return new
    if isinstance(node, Join):
        return replace(node, a=_replace_at(node.a, path, new, here + ".a"),
                       b=_replace_at(node.b, path, new, here + ".b"))
    if isinstance(node, WqNormalize):
        return replace(node, inner=_replace_at(node.inner, path, new, here + ".inner"))
    return node


def mutation_suite(cert: Node, G: LabeledGraph) -> list[Mutation]:
    """Single mutations that a sound checker must reject at ``target``.

    Applicable subset of: delete a ProductSplit cross edge, relabel it to 3,
    shrink a non-spherical witness to one generator (Coxeter only), delete a
    Join witness.
    """
    out = []
    nodes = list(walk_nodes(cert))
    split = next(((p, n) for p, n in nodes if isinstance(n, ProductSplit)), None)
    if split is not None:
        path, node = split
        u, v = sorted(node.left)[0], sorted(node.right)[0]
        out.append(Mutation(f"delete cross edge {u}-{v}", path, cert, G.with_label(u, v, None)))
        out.append(Mutation(f"relabel cross edge {u}-{v} to 3", path, cert, G.with_label(u, v, 3)))
    if G.kind == "coxeter":
        for path, node in nodes:
            if isinstance(node, ProductSplit):
                new = replace(node, right=node.right[:1])
            elif isinstance(node, Join) and node.witness and node.witness.kind == "non_spherical_subset":
                new = replace(node, witness=InfiniteSubgroupWitness("non_spherical_subset",
                                                                    node.witness.value[:1]))
            elif isinstance(node, WqNormalize):
                new = replace(node, witnesses=tuple(NormalizerWitness(w.form, w.subset[:1])
                                                    for w in node.witnesses))
            else:
                continue
            out.append(Mutation("shrink non-spherical witness to one generator", path,
                                _replace_at(cert, path, new), G))
            break
    join = next(((p, n) for p, n in nodes if isinstance(n, Join)), None)
    if join is not None:
        path, node = join
        out.append(Mutation("delete join witness", path,
                            _replace_at(cert, path, replace(node, witness=None)), G))
    return out

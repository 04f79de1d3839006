"""Artin-group side: alternating words, edge deltas, subgroup descriptors,
nonamenable vertex groups and rigid chains of subgroups.

All group-theoretic facts used here (injectivity of parabolic inclusions,
centers of dihedral Artin groups, freeness of the witness pairs) are taken as
axioms; the code only checks the combinatorial side conditions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .graph import (
    GraphError,
    LabeledGraph,
    components_and_shape,
    essential_and_maximal,
    is_complete_all_two,
    is_connected,
    star,
    star_chain_skeleton,
)


class ExcludedGraph(ValueError):
    """The graph falls outside the hypotheses of the rigid-chain construction."""


class NoWitness(ValueError):
    pass


class NoCenter(ValueError):
    pass


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, *names: str) -> "Word":
        return cls(tuple((n, 1) for n in names))

    @classmethod
    def parse(cls, text: str) -> "Word":
        letters = []
        for tok in text.split():
            if tok.endswith("^-1"):
                letters.append((tok[:-3], -1))
            else:
                letters.append((tok, 1))
        return cls(tuple(letters))

    @classmethod
    def alternating(cls, a: str, b: str, m: int) -> "Word":
        """``W(a, b, m)``: the alternating word ``abab...`` of length ``m``."""
        return cls(tuple(((a, b)[i % 2], 1) for i in range(m)))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((x, -e) for x, e in reversed(self.letters)))

    def free_reduce(self) -> "Word":
        out: list[tuple[str, int]] = []
        for x, e in self.letters:
            if out and out[-1][0] == x and out[-1][1] == -e:
                out.pop()
            else:
                out.append((x, e))
        return Word(tuple(out))

    def support(self) -> frozenset[str]:
        return frozenset(x for x, _ in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(x if e == 1 else f"{x}^-1" for x, e in self.letters)


@dataclass(frozen=True)
class DeltaElement:
    """``Delta_e``: ``W(u, v, m)`` for even ``m``, its square for odd ``m``."""

    edge: tuple[str, str, int]

    @property
    def word(self) -> Word:
        u, v, m = self.edge
        w = Word.alternating(u, v, m)
        return w if m % 2 == 0 else w * w

    def endpoints(self) -> frozenset[str]:
        return frozenset(self.edge[:2])

    def __str__(self) -> str:
        return str(self.word)


def delta(G: LabeledGraph, u: str, v: str) -> DeltaElement:
    m = G.label(u, v)
    if m is None:
        raise GraphError("unknown-edge", f"no edge between {u!r} and {v!r}")
    a, b = sorted((u, v))
    return DeltaElement((a, b, m))


@dataclass(frozen=True)
class EdgeWords:
    W_uv: Word
    W_vu: Word
    delta: DeltaElement


def edge_words(u: str, v: str, m: int) -> EdgeWords:
    if m < 2:
        raise ValueError(f"edge label must be at least 2, got {m}")
    return EdgeWords(Word.alternating(u, v, m), Word.alternating(v, u, m), DeltaElement((u, v, m)))


# ---------------------------------------------------------------------------
# subgroup descriptors

Element = Union[str, DeltaElement, Word]


@dataclass(frozen=True)
class ArtinSubgroupDescriptor:
    """Symbolic subgroup of ``A_Gamma``.

    ``kind`` is ``"vertex_set"`` (generated by ``vertices``; ``center`` is set
    for star groups), ``"edge"`` (generated by the two endpoints of ``edge``)
    or ``"vertex_delta"`` (generated by ``center`` and the deltas of every
    edge in ``incident``).
    """

    kind: str
    vertices: tuple[str, ...] = ()
    center: str | None = None
    edge: tuple[str, str, int] | None = None
    incident: tuple[tuple[str, str, int], ...] = ()

    @property
    def generators(self) -> list[Word]:
        if self.kind == "vertex_set":
            return [Word.of(v) for v in self.vertices]
        if self.kind == "edge":
            return [Word.of(self.edge[0]), Word.of(self.edge[1])]
        return [Word.of(self.center)] + [DeltaElement(e).word for e in self.incident]

    @property
    def name(self) -> str:
        if self.kind == "vertex_set":
            if self.center is not None:
                return f"H_st({self.center})"
            return "H_{" + ",".join(self.vertices) + "}"
        if self.kind == "edge":
            return f"H_{self.edge[0]}{self.edge[1]}"
        return f"H_{self.center}"

    def key(self) -> tuple:
        return (self.kind, self.vertices, self.center, self.edge)

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind, "name": self.name}
        if self.kind == "vertex_set":
            d["vertices"] = list(self.vertices)
            if self.center is not None:
                d["center"] = self.center
        elif self.kind == "edge":
            d["edge"] = list(self.edge)
        else:
            d["center"] = self.center
            d["incident"] = [list(e) for e in self.incident]
        d["generators"] = [str(w) for w in self.generators]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ArtinSubgroupDescriptor":
        kind = d["kind"]
        if kind == "vertex_set":
            return cls(kind, tuple(d["vertices"]), center=d.get("center"))
        if kind == "edge":
            return cls(kind, edge=tuple(d["edge"]))
        if kind == "vertex_delta":
            return cls(kind, center=d["center"], incident=tuple(tuple(e) for e in d["incident"]))
        raise ValueError(f"unknown descriptor kind {kind!r}")

    def __str__(self) -> str:
        return self.name


def vertex_set_group(vertices: Iterable[str], center: str | None = None) -> ArtinSubgroupDescriptor:
    return ArtinSubgroupDescriptor("vertex_set", tuple(sorted(vertices)), center=center)


def edge_group(G: LabeledGraph, u: str, v: str) -> ArtinSubgroupDescriptor:
    return ArtinSubgroupDescriptor("edge", edge=delta(G, u, v).edge)


def vertex_delta_group(G: LabeledGraph, v: str) -> ArtinSubgroupDescriptor:
    incident = tuple(delta(G, v, w).edge for w in sorted(G.neighbors(v)))
    return ArtinSubgroupDescriptor("vertex_delta", center=v, incident=incident)


def as_element(x: Element) -> str | DeltaElement | Word:
    """Normalize a single positive letter to its vertex name."""
    if isinstance(x, Word) and len(x) == 1 and x.letters[0][1] == 1:
        return x.letters[0][0]
    return x


def membership_witness(x: Element, H: ArtinSubgroupDescriptor, G: LabeledGraph) -> bool:
    """Sufficient-rule membership test; ``True`` means ``x`` provably lies in ``H``.

    Vertices: in a vertex-set group when listed; in an edge group when an
    endpoint; in ``H_u`` when equal to ``u`` or joined to ``u`` by a 2-edge
    (``v = Delta u^-1``).  Deltas: in the edge group of their own edge, in
    ``H_u`` for ``u`` an endpoint.  Any word over the generating vertices of a
    vertex-set or edge group lies in it.  A ``False`` answer proves nothing.
    """
    x = as_element(x)
    if isinstance(x, str):
        if H.kind == "vertex_set":
            return x in H.vertices
        if H.kind == "edge":
            return x in H.edge[:2]
        return x == H.center or G.label(x, H.center) == 2
    if isinstance(x, DeltaElement):
        u, v, m = x.edge
        if G.label(u, v) != m:
            return False
        if H.kind == "vertex_set":
            return u in H.vertices and v in H.vertices
        if H.kind == "edge":
            return frozenset(H.edge[:2]) == x.endpoints()
        return H.center in x.endpoints()
    if H.kind == "vertex_set":
        return x.support() <= set(H.vertices)
    if H.kind == "edge":
        return x.support() <= set(H.edge[:2])
    return all(membership_witness(Word(((a, 1),)), H, G) for a in x.support())


# ---------------------------------------------------------------------------
# nonamenable vertex groups

SPHERICAL_TRIPLES = frozenset({(2, 3, 3), (2, 3, 4), (2, 3, 5)})


def _inv(m: int | None) -> Fraction:
    return Fraction(0) if m is None else Fraction(1, m)


def classify_triple(m_uv: int, m_vw: int, m_uw: int | None) -> str:
    """Case of the witness for labels around ``v`` (``None`` is infinity).

    ``m_uw`` must be infinite or at least 3 (``u``, ``w`` do not commute).
    """
    total = _inv(m_uv) + _inv(m_vw) + _inv(m_uw)
    if total <= 1:
        return "two_dimensional"
    if m_uv == 2 and m_vw == 2:
        return "commuting_pair"
    return "spherical_triple"


@dataclass(frozen=True)
class NonamenabilityWitness:
    """Why ``H_v`` is nonamenable.

    ``two_dimensional``: ``elements`` are the deltas of ``vu`` and ``vw``.
    ``commuting_pair``: ``elements`` are ``u`` and ``w``.
    ``spherical_triple``: ``elements`` are the 2-neighbour ``u`` and the delta
    of the other edge at ``v``; some power ``k`` of each generates a free
    group, ``k`` left symbolic.
    """

    case: str
    center: str
    u: str
    w: str
    labels: tuple[int, int, int | None]  # (m_uv, m_vw, m_uw)
    elements: tuple[Element, ...]
    power: str | None = None

    def to_dict(self) -> dict:
        d = {"case": self.case, "center": self.center, "u": self.u, "w": self.w,
             "labels": list(self.labels), "elements": [str(e) for e in self.elements]}
        if self.power is not None:
            d["power"] = self.power
        return d

    @classmethod
    def from_dict(cls, d: dict, G: LabeledGraph) -> "NonamenabilityWitness":
        # elements are re-derived; the stored strings are informational
        w = _witness_for_pair(G, d["center"], d["u"], d["w"])
        return cls(d["case"], d["center"], d["u"], d["w"], tuple(d["labels"]), w.elements, d.get("power"))


def _witness_for_pair(G: LabeledGraph, v: str, u: str, w: str) -> NonamenabilityWitness:
    m_uv, m_vw, m_uw = G.label(u, v), G.label(v, w), G.label(u, w)
    case = classify_triple(m_uv, m_vw, m_uw)
    if case == "two_dimensional":
        elements = (delta(G, v, u), delta(G, v, w))
        return NonamenabilityWitness(case, v, u, w, (m_uv, m_vw, m_uw), elements)
    if case == "commuting_pair":
        return NonamenabilityWitness(case, v, u, w, (m_uv, m_vw, m_uw), (u, w))
    partner, other = (u, w) if m_uv == 2 else (w, u)
    return NonamenabilityWitness(case, v, u, w, (m_uv, m_vw, m_uw),
                                 (partner, delta(G, v, other)), power="k")


def nonamenable_vertex_witness(G: LabeledGraph, v: str) -> NonamenabilityWitness:
    """Least non-commuting pair ``(u, w)`` in the link of ``v`` and its case."""
    link = sorted(G.neighbors(v))
    for i, u in enumerate(link):
        for w in link[i + 1:]:
            if not G.commute(u, w):
                return _witness_for_pair(G, v, u, w)
    raise NoWitness(f"closed star of {v!r} has no non-commuting pair")


def witness_is_valid(G: LabeledGraph, wit: NonamenabilityWitness) -> bool:
    v, u, w = wit.center, wit.u, wit.w
    if v not in G or u not in G or w not in G or len({u, v, w}) < 3:
        return False
    if not (G.adjacent(v, u) and G.adjacent(v, w)) or G.commute(u, w):
        return False
    labels = (G.label(u, v), G.label(v, w), G.label(u, w))
    if tuple(wit.labels) != labels:
        return False
    expected = _witness_for_pair(G, v, u, w)
    return expected.case == wit.case and expected.elements == tuple(wit.elements)


def select_rigid_center(G: LabeledGraph, st: Iterable[str]) -> str:
    """Least essential vertex with star ``st`` whose vertex group has a witness."""
    st = frozenset(st)
    if len(st) < 3:
        raise NoCenter("star has fewer than three vertices")
    ess = essential_and_maximal(G)
    if st not in ess.representatives:
        raise NoCenter(f"{sorted(st)} is not a maximal star")
    for v in sorted(st):
        if v in ess.essential and star(G, v) == st:
            try:
                nonamenable_vertex_witness(G, v)
            except NoWitness:
                continue
            return v
    raise NoCenter(f"no center of {sorted(st)} admits a witness (complete all-2 component?)")


def _require_family_graph(G: LabeledGraph) -> None:
    if not is_connected(G):
        raise ExcludedGraph("graph is empty or disconnected; apply per component")
    if is_complete_all_two(G):
        raise ExcludedGraph("complete graph with all labels 2: amenable, no rigid family")


def build_generating_family(G: LabeledGraph) -> list[ArtinSubgroupDescriptor]:
    """Edge groups of all edges labeled >= 3, then one vertex-delta group per
    maximal star with at least three vertices."""
    _require_family_graph(G)
    family = [edge_group(G, u, v) for u, v, m in G.edges() if m >= 3]
    ess = essential_and_maximal(G)
    for st in ess.maximal_stars:
        if len(st) >= 3:
            family.append(vertex_delta_group(G, select_rigid_center(G, st)))
    return family


# ---------------------------------------------------------------------------
# rigid chains


@dataclass
class RigidChain:
    entries: list[ArtinSubgroupDescriptor]
    links: list[Element] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"entries": [e.to_dict() for e in self.entries],
                "links": [element_to_dict(x) for x in self.links]}

    @classmethod
    def from_dict(cls, d: dict) -> "RigidChain":
        return cls([ArtinSubgroupDescriptor.from_dict(e) for e in d["entries"]],
                   [element_from_dict(x) for x in d["links"]])

    def names(self) -> list[str]:
        return [e.name for e in self.entries]


def element_to_dict(x: Element) -> dict:
    x = as_element(x)
    if isinstance(x, str):
        return {"kind": "vertex", "word": x}
    if isinstance(x, DeltaElement):
        return {"kind": "delta", "edge": list(x.edge), "word": str(x.word)}
    return {"kind": "word", "word": str(x)}


def element_from_dict(d: dict) -> Element:
    if d["kind"] == "vertex":
        return d["word"]
    if d["kind"] == "delta":
        return DeltaElement(tuple(d["edge"]))
    return Word.parse(d["word"])


def chain_problems(chain: RigidChain, G: LabeledGraph) -> list[str]:
    """Everything wrong with ``chain`` as a rigid chain for connected ``G``."""
    problems = []
    if not chain.entries:
        problems.append("chain has no entries")
    if len(chain.links) != max(len(chain.entries) - 1, 0):
        problems.append("need exactly one link per consecutive pair")
    for i, x in enumerate(chain.links[: len(chain.entries) - 1]):
        for H in (chain.entries[i], chain.entries[i + 1]):
            if not membership_witness(x, H, G):
                problems.append(f"link {i}: {x} not shown to lie in {H.name}")
    for v in G.vertices:
        if not any(membership_witness(v, H, G) for H in chain.entries):
            problems.append(f"vertex {v} is covered by no entry")
    return problems


def raag_rigid_chain(G: LabeledGraph) -> RigidChain:
    """Chain of star groups along the star skeleton walk of an all-2 graph."""
    if any(m != 2 for _, _, m in G.edges()):
        raise ExcludedGraph("right-angled chain needs every label equal to 2")
    if not is_connected(G):
        raise ExcludedGraph("graph is empty or disconnected")
    if is_complete_all_two(G):
        raise ExcludedGraph("complete graph: abelian, no rigid family")
    walk = star_chain_skeleton(G).walk.vertices
    entries = [vertex_set_group(star(G, w), center=w) for w in walk]
    links = [min(star(G, a) & star(G, b)) for a, b in zip(walk, walk[1:])]
    return RigidChain(entries, links)


def _intersection_witness(G: LabeledGraph, a: str, b: str) -> Element | None:
    """Element provably in both ``H_a`` and ``H_b`` (vertex-delta groups)."""
    Ha, Hb = vertex_delta_group(G, a), vertex_delta_group(G, b)
    for v in sorted(star(G, a) & star(G, b)):
        if membership_witness(v, Ha, G) and membership_witness(v, Hb, G):
            return v
    if G.adjacent(a, b):
        return delta(G, a, b)
    return None


def artin_rigid_chain(G: LabeledGraph) -> RigidChain:
    """Rigid chain over the generating family, following the splice rules.

    1. Walk the star skeleton; each step ``H_a -> H_b`` gets a common element
       if one exists, otherwise the edge groups of ``e_i = (v, a)`` and/or
       ``e_{i+1} = (v, b)`` are spliced in between.
    2. Every edge group still missing is spliced at the first occurrence of a
       vertex-delta group ``H_w`` whose star contains one of its endpoints
       ``v``: ``(H_w, H_e)`` / ``(H_w, H_e, H_w)`` when ``v = w``, with
       ``Delta_e`` as the link, ``(H_w, H_e, H_w)`` when ``(v, w)`` has
       label 2, and ``(H_w, H_vw, H_e, H_vw, H_w)`` otherwise.
    """
    family = build_generating_family(G)
    edge_groups = [H for H in family if H.kind == "edge"]
    if len(family) == len(edge_groups):
        # every maximal star has two vertices: G is a single edge with label >= 3
        return RigidChain([edge_groups[0]], [])

    sk = star_chain_skeleton(G)
    centers = {r: select_rigid_center(G, sk.stars[r]) for r in sk.nodes}
    walk = [centers[r] for r in sk.walk.vertices]

    entries = [vertex_delta_group(G, walk[0])]
    links: list[Element] = []
    for a, b in zip(walk, walk[1:]):
        x = _intersection_witness(G, a, b)
        Hb = vertex_delta_group(G, b)
        if x is not None:
            links.append(x)
            entries.append(Hb)
            continue
        v = min(star(G, a) & star(G, b))
        m_a, m_b = G.label(v, a), G.label(v, b)
        e_a, e_b = edge_group(G, v, a), edge_group(G, v, b)
        if m_a >= 3 and m_b == 2:
            entries += [e_a, Hb]
            links += [delta(G, v, a), v]
        elif m_b >= 3 and m_a == 2:
            entries += [e_b, Hb]
            links += [v, delta(G, v, b)]
        else:
            entries += [e_a, e_b, Hb]
            links += [delta(G, v, a), v, delta(G, v, b)]

    for He in edge_groups:
        if any(E.key() == He.key() for E in entries):
            continue
        entries, links = _splice_edge_group(G, entries, links, He)
    return RigidChain(entries, links)


def _splice_edge_group(G, entries, links, He):
    u0, u1, _ = He.edge
    best = None
    for pos, H in enumerate(entries):
        if H.kind != "vertex_delta":
            continue
        w = H.center
        for v in (u0, u1):
            if v not in star(G, w):
                continue
            rank = 0 if v == w else (1 if G.label(v, w) == 2 else 2)
            if best is None or rank < best[0]:
                best = (rank, pos, v, w)
    if best is None:  # pragma: no cover - every vertex lies in a maximal star
        raise ExcludedGraph(f"no vertex-delta group meets {He.name}")
    rank, pos, v, w = best
    Hw = entries[pos]
    last = pos == len(entries) - 1
    if rank == 0:
        d = DeltaElement(He.edge)
        new_entries, new_links = ([Hw, He], [d]) if last else ([Hw, He, Hw], [d, d])
    elif rank == 1:
        new_entries, new_links = [Hw, He, Hw], [v, v]
    else:
        Hvw = edge_group(G, v, w)
        new_entries, new_links = [Hw, Hvw, He, Hvw, Hw], [w, v, v, w]
    entries = entries[:pos] + new_entries + entries[pos + 1:]
    links = links[:pos] + new_links + links[pos:]
    return entries, links


# ---------------------------------------------------------------------------
# report


def artin_theorem_report(G: LabeledGraph) -> dict:
    """Per-component rigidity certificates and the component-count invariant."""
    from .certificates import chain_to_certificate, check_certificate

    comps = []
    for shape in components_and_shape(G):
        C = shape.component.with_kind("artin")
        entry: dict = {"vertices": list(C.vertices), "complete_all_two": shape.complete_all_two}
        if not shape.complete_all_two:
            right_angled = all(m == 2 for _, _, m in C.edges())
            chain = raag_rigid_chain(C) if right_angled else artin_rigid_chain(C)
            cert = chain_to_certificate(chain, C)
            report = check_certificate(cert, C)
            entry["construction"] = "right_angled" if right_angled else "general"
            entry["chain"] = chain.to_dict()
            entry["certificate"] = cert.to_dict()
            entry["check"] = report.to_dict()
        comps.append(entry)
    applies = not any(c["complete_all_two"] for c in comps)
    caveat = None
    if not applies:
        caveat = ("a component is a complete graph with all labels 2 (amenable); "
                  "the component count is not certified as an invariant")
    return {"kind": "artin", "count": len(comps), "theorem_1_1_applies": applies,
            "invariant": len(comps), "caveat": caveat, "components": comps}

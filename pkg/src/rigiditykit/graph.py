"""Labeled defining graphs and their star combinatorics.

A defining graph is a finite simple graph whose edges carry integer labels
``m >= 2``.  A missing edge means ``m = infinity`` (no relation); infinity is
never stored.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

KINDS = ("artin", "coxeter")


class GraphError(ValueError):
    """Invalid graph document or graph query.

    ``code`` is a short machine-readable tag, ``location`` points into the
    input document (e.g. ``"edges[3]"``).
    """

    def __init__(self, code: str, message: str, location: str | None = None):
        self.code = code
        self.location = location
        where = f" at {location}" if location else ""
        super().__init__(f"{code}{where}: {message}")


def _pair(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u < v else (v, u)


class LabeledGraph:
    """Immutable labeled simple graph with canonically ordered vertices."""

    __slots__ = ("kind", "vertices", "_labels", "_adj", "_index")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str, int]] = (),
                 kind: str = "artin"):
        if kind not in KINDS:
            raise GraphError("schema", f"kind must be one of {KINDS}, got {kind!r}", "kind")
        verts = list(vertices)
        seen: set[str] = set()
        for i, v in enumerate(verts):
            if not isinstance(v, str) or not v or any(c.isspace() for c in v) or not v.isprintable():
                raise GraphError("bad-vertex", f"vertex names are nonempty printable tokens, got {v!r}",
                                 f"vertices[{i}]")
            if v in seen:
                raise GraphError("duplicate-vertex", f"vertex {v!r} declared twice", f"vertices[{i}]")
            seen.add(v)
        labels: dict[tuple[str, str], int] = {}
        for i, edge in enumerate(edges):
            loc = f"edges[{i}]"
            try:
                u, v, m = edge
            except (TypeError, ValueError):
                raise GraphError("schema", "edge must be [u, v, m]", loc) from None
            if not isinstance(m, int) or isinstance(m, bool):
                raise GraphError("schema", f"label must be an integer, got {m!r}", loc)
            if u not in seen or v not in seen:
                missing = u if u not in seen else v
                raise GraphError("unknown-endpoint", f"endpoint {missing!r} is not a declared vertex", loc)
            if u == v:
                raise GraphError("self-loop", f"edge joins {u!r} to itself", loc)
            if m < 2:
                raise GraphError("label-below-two", f"label {m} is below 2", loc)
            key = _pair(u, v)
            if key in labels:
                raise GraphError("duplicate-edge", f"second edge between {u!r} and {v!r}", loc)
            labels[key] = m
        self.kind = kind
        self.vertices: tuple[str, ...] = tuple(sorted(verts))
        self._labels = labels
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in labels:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._index = {v: i for i, v in enumerate(self.vertices)}

    # -- basic queries -------------------------------------------------

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (self.kind, self.vertices, self._labels) == (other.kind, other.vertices, other._labels)

    def __hash__(self) -> int:
        return hash((self.kind, self.vertices, frozenset(self._labels.items())))

    def __repr__(self) -> str:
        return f"LabeledGraph({self.kind}, vertices={list(self.vertices)}, edges={list(self.edges())})"

    def index(self, v: str) -> int:
        return self._index[v]

    def label(self, u: str, v: str) -> int | None:
        """Edge label between ``u`` and ``v``; ``None`` encodes infinity."""
        return self._labels.get(_pair(u, v))

    def adjacent(self, u: str, v: str) -> bool:
        return _pair(u, v) in self._labels

    def commute(self, u: str, v: str) -> bool:
        return self._labels.get(_pair(u, v)) == 2

    def neighbors(self, v: str) -> frozenset[str]:
        self._require(v)
        return self._adj[v]

    def edges(self) -> Iterator[tuple[str, str, int]]:
        """Edges as ``(u, v, m)`` with ``u < v``, in sorted order."""
        for (u, v) in sorted(self._labels):
            yield u, v, self._labels[(u, v)]

    def num_edges(self) -> int:
        return len(self._labels)

    def _require(self, v: str) -> None:
        if v not in self._adj:
            raise GraphError("unknown-vertex", f"{v!r} is not a vertex")

    # -- derived graphs ------------------------------------------------

    def full_subgraph(self, vertices: Iterable[str]) -> "LabeledGraph":
        vs = set(vertices)
        for v in vs:
            self._require(v)
        edges = [(u, v, m) for (u, v), m in self._labels.items() if u in vs and v in vs]
        return LabeledGraph(vs, edges, self.kind)

    def with_label(self, u: str, v: str, m: int | None) -> "LabeledGraph":
        """Copy with the label of ``{u, v}`` replaced; ``None`` deletes the edge."""
        labels = dict(self._labels)
        key = _pair(u, v)
        if m is None:
            labels.pop(key, None)
        else:
            labels[key] = m
        return LabeledGraph(self.vertices, [(a, b, k) for (a, b), k in labels.items()], self.kind)

    def with_kind(self, kind: str) -> "LabeledGraph":
        return LabeledGraph(self.vertices, self.edges(), kind)

    def relabel(self, mapping: Mapping[str, str]) -> "LabeledGraph":
        return LabeledGraph([mapping[v] for v in self.vertices],
                            [(mapping[u], mapping[v], m) for u, v, m in self.edges()], self.kind)

    def disjoint_union(self, other: "LabeledGraph") -> "LabeledGraph":
        if set(self.vertices) & set(other.vertices):
            raise GraphError("duplicate-vertex", "disjoint union needs disjoint vertex names")
        return LabeledGraph(self.vertices + other.vertices,
                            list(self.edges()) + list(other.edges()), self.kind)

    # -- documents -----------------------------------------------------

    def to_document(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices),
                "edges": [[u, v, m] for u, v, m in self.edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_document())


def validate_and_load(document: Mapping | str) -> LabeledGraph:
    """Validate a graph document (mapping or JSON text) and build the graph."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise GraphError("schema", f"malformed JSON: {exc.msg}", f"line {exc.lineno}") from None
    if not isinstance(document, Mapping):
        raise GraphError("schema", "graph document must be a JSON object")
    for key in ("kind", "vertices", "edges"):
        if key not in document:
            raise GraphError("schema", f"missing key {key!r}", key)
    extra = set(document) - {"kind", "vertices", "edges"}
    if extra:
        raise GraphError("schema", f"unexpected keys {sorted(extra)}")
    if not isinstance(document["vertices"], list):
        raise GraphError("schema", "vertices must be an array", "vertices")
    if not isinstance(document["edges"], list):
        raise GraphError("schema", "edges must be an array", "edges")
    for i, e in enumerate(document["edges"]):
        if not isinstance(e, list) or len(e) != 3:
            raise GraphError("schema", "edge must be [u, v, m]", f"edges[{i}]")
    return LabeledGraph(document["vertices"], [tuple(e) for e in document["edges"]],
                        document["kind"])


@dataclass(frozen=True)
class StarData:
    center: str
    link: frozenset[str]
    star: frozenset[str]
    closed_star: LabeledGraph


def star_data(G: LabeledGraph, v: str) -> StarData:
    link = G.neighbors(v)
    star = link | {v}
    return StarData(v, link, star, G.full_subgraph(star))


def star(G: LabeledGraph, v: str) -> frozenset[str]:
    return G.neighbors(v) | {v}


@dataclass(frozen=True)
class EssentialData:
    essential: frozenset[str]
    maximal_stars: tuple[frozenset[str], ...]  # ordered by representative
    representatives: dict[frozenset[str], str]


def essential_and_maximal(G: LabeledGraph) -> EssentialData:
    """Essential vertices, distinct maximal stars, and one center per star.

    Closed stars are full subgraphs of ``G``, so containment of closed stars
    reduces to containment of their vertex sets.
    """
    stars = {v: star(G, v) for v in G.vertices}
    essential = frozenset(v for v in G.vertices
                          if not any(w != v and stars[v] < stars[w] for w in G.vertices))
    reps: dict[frozenset[str], str] = {}
    for v in G.vertices:  # sorted, so the first hit is the least center
        if v in essential and stars[v] not in reps:
            reps[stars[v]] = v
    ordered = tuple(sorted(reps, key=lambda s: reps[s]))
    return EssentialData(essential, ordered, reps)


def connected_components(G: LabeledGraph) -> list[tuple[str, ...]]:
    """Vertex sets of connected components, ordered by least vertex."""
    seen: set[str] = set()
    out = []
    for v in G.vertices:
        if v in seen:
            continue
        comp = []
        queue = deque([v])
        seen.add(v)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w in G.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        out.append(tuple(sorted(comp)))
    return out


def is_connected(G: LabeledGraph) -> bool:
    return len(G) > 0 and len(connected_components(G)) == 1


def is_complete_all_two(G: LabeledGraph) -> bool:
    """Every pair of vertices is joined by an edge labeled 2 (vacuous for one vertex)."""
    vs = G.vertices
    return all(G.label(vs[i], vs[j]) == 2 for i in range(len(vs)) for j in range(i + 1, len(vs)))


@dataclass(frozen=True)
class ComponentShape:
    component: LabeledGraph
    complete_all_two: bool


def components_and_shape(G: LabeledGraph) -> list[ComponentShape]:
    out = []
    for comp in connected_components(G):
        sub = G.full_subgraph(comp)
        out.append(ComponentShape(sub, is_complete_all_two(sub)))
    return out


@dataclass(frozen=True)
class Path:
    vertices: tuple[str, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("a path has at least one vertex")

    @property
    def first(self) -> str:
        return self.vertices[0]

    @property
    def last(self) -> str:
        return self.vertices[-1]

    def then(self, other: "Path") -> "Path":
        """Concatenation ``self;other``; requires ``self.last == other.first``."""
        if self.last != other.first:
            raise ValueError(f"cannot concatenate: {self.last!r} != {other.first!r}")
        return Path(self.vertices + other.vertices[1:])

    def is_walk_in(self, adjacency: Mapping[str, Iterable[str]]) -> bool:
        return all(b in adjacency[a] for a, b in zip(self.vertices, self.vertices[1:]))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def bfs_path(adjacency: Mapping[str, Iterable[str]], source: str, target: str) -> Path:
    """Shortest path, ties broken toward lexicographically smaller vertices."""
    parent = {source: None}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u == target:
            break
        for w in sorted(adjacency[u]):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    if target not in parent:
        raise GraphError("disconnected", f"no path from {source!r} to {target!r}")
    out = [target]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return Path(tuple(reversed(out)))


@dataclass(frozen=True)
class Skeleton:
    """Star-intersection graph on star representatives, plus a covering walk."""

    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    walk: Path
    stars: dict[str, frozenset[str]]

    def adjacency(self) -> dict[str, set[str]]:
        adj = {v: set() for v in self.nodes}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def star_chain_skeleton(G: LabeledGraph) -> Skeleton:
    if not is_connected(G):
        raise GraphError("disconnected", "star_chain_skeleton needs a connected graph; apply per component")
    ess = essential_and_maximal(G)
    reps = sorted(ess.representatives.values())
    stars = {r: star(G, r) for r in reps}
    edges = frozenset((u, v) for i, u in enumerate(reps) for v in reps[i + 1:] if stars[u] & stars[v])
    sk = Skeleton(tuple(reps), edges, Path((reps[0],)), stars)
    adj = sk.adjacency()
    walk = Path((reps[0],))
    for a, b in zip(reps, reps[1:]):
        walk = walk.then(bfs_path(adj, a, b))
    return Skeleton(sk.nodes, edges, walk, stars)

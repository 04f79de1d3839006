"""Census of small connected labeled graphs up to relabeling.

Graphs are adjacency matrices with 0 for "no edge".  Canonical form is the
lexicographically least upper triangle (row-major) over all vertex
relabelings, found by brute force; this is why ``max_vertices`` is capped.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .artin import artin_theorem_report
from .coxeter import coxeter_theorem_report, irreducible_components, CoxeterSystem
from .graph import LabeledGraph

MAX_VERTICES = 6
ALLOWED_LABELS = frozenset({2, 3, 4, 5, 6})
NAMES = "abcdefg"


class LimitExceeded(ValueError):
    pass


@lru_cache(maxsize=None)
def _perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def canonical_code(mat: np.ndarray) -> tuple[tuple[int, ...], np.ndarray]:
    """``(code, perm)``: least code and a relabeling realizing it."""
    n = mat.shape[0]
    perms = _perms(n)
    code, idx = _kernels.canonical_code(np.ascontiguousarray(mat, dtype=np.int64), perms)
    return tuple(int(c) for c in code), perms[idx]


def code_string(n: int, code: tuple[int, ...]) -> str:
    return f"{n}:" + "".join(str(c) for c in code)


def matrix_from_code(n: int, code: tuple[int, ...]) -> np.ndarray:
    mat = np.zeros((n, n), dtype=np.int64)
    iu, ju = np.triu_indices(n, 1)
    mat[iu, ju] = code
    mat[ju, iu] = code
    return mat


def graph_from_matrix(mat: np.ndarray, kind: str) -> LabeledGraph:
    n = mat.shape[0]
    names = NAMES[:n]
    edges = [(names[i], names[j], int(mat[i, j])) for i in range(n) for j in range(i + 1, n) if mat[i, j]]
    return LabeledGraph(list(names), edges, kind)


def enumerate_connected(max_vertices: int, labels) -> list[tuple[int, tuple[int, ...]]]:
    """Canonical codes of connected graphs on 1..max_vertices vertices.

    Every connected graph arises from a connected graph on one vertex fewer
    by adding a vertex (drop a leaf of a spanning tree), so extension of the
    previous layer's representatives is complete.
    """
    labels = sorted(set(labels))
    out = [(1, ())]
    layer = [matrix_from_code(1, ())]
    for n in range(2, max_vertices + 1):
        seen = {}
        for base in layer:
            for row in itertools.product([0] + labels, repeat=n - 1):
                if not any(row):
                    continue
                mat = np.zeros((n, n), dtype=np.int64)
                mat[:-1, :-1] = base
                mat[-1, :-1] = row
                mat[:-1, -1] = row
                code, _ = canonical_code(mat)
                seen.setdefault(code, None)
        codes = sorted(seen)
        out += [(n, c) for c in codes]
        layer = [matrix_from_code(n, c) for c in codes]
    return out


@dataclass(frozen=True)
class CensusRow:
    graph: str
    vertices: int
    edges: list
    amenable: bool
    in_T: bool
    rel_hyp: bool
    artin_thm_ok: bool
    coxeter_thm_ok: bool
    components: int
    irreducible_components: int

    def to_dict(self) -> dict:
        return asdict(self)


def _checks_pass(report: dict) -> bool:
    return all(c["check"]["ok"] for c in report["components"] if "check" in c)


def classify_code(n: int, code: tuple[int, ...]) -> CensusRow:
    mat = matrix_from_code(n, code)
    cox = graph_from_matrix(mat, "coxeter")
    art = cox.with_kind("artin")
    crep = coxeter_theorem_report(cox)
    arep = artin_theorem_report(art)
    (comp,) = crep["components"]
    return CensusRow(
        graph=code_string(n, code),
        vertices=n,
        edges=[list(e) for e in cox.edges()],
        amenable=comp["amenable"],
        in_T=comp["in_T"],
        rel_hyp=comp["rel_hyp"],
        artin_thm_ok=arep["theorem_1_1_applies"] and _checks_pass(arep),
        coxeter_thm_ok=crep["theorem_1_2_applies"] and _checks_pass(crep),
        components=arep["count"],
        irreducible_components=len(irreducible_components(CoxeterSystem.of(cox))),
    )


def census(max_vertices: int, labels) -> list[CensusRow]:
    labels = set(labels)
    if not 1 <= max_vertices <= MAX_VERTICES:
        raise LimitExceeded(f"max_vertices must be between 1 and {MAX_VERTICES}")
    if not labels or not labels <= ALLOWED_LABELS:
        raise LimitExceeded(f"labels must be a nonempty subset of {sorted(ALLOWED_LABELS)}")
    rows = [classify_code(n, c) for n, c in enumerate_connected(max_vertices, labels)]
    return sorted(rows, key=lambda r: (r.vertices, r.graph))


def census_json(rows: list[CensusRow]) -> str:
    return json.dumps([r.to_dict() for r in rows], indent=1) + "\n"

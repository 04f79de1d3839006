"""l2-Betti numbers and commensurability witnesses for free products of
direct products of free groups, ``G = *_i (F_{a_i1} x ... x F_{a_ik_i})``.

The closed-form path is exact integer arithmetic.  ``build_and_verify_action``
realizes the index-N subgroup as a point stabilizer of an explicit permutation
action and recounts everything from the permutations themselves.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels

DEFAULT_MAX_VERIFY_POINTS = 10**6


class SpecError(ValueError):
    pass


class NotProportional(ValueError):
    pass


class CapExceeded(ValueError):
    pass


class VerifyMismatch(AssertionError):
    pass


class DivisibilityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class FreeProductSpec:
    """Factors stored with entries descending, factors ordered by (k, entries)."""

    factors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.factors:
            raise SpecError("a spec needs at least one factor")
        canon = []
        for f in self.factors:
            f = tuple(f)
            if len(f) < 2:
                raise SpecError(f"factor {list(f)} has fewer than two free groups")
            for a in f:
                if isinstance(a, bool) or not isinstance(a, int):
                    raise SpecError(f"factor {list(f)} has a non-integer rank")
                if a < 2:
                    raise SpecError(f"factor {list(f)} has a rank below 2")
            canon.append(tuple(sorted(f, reverse=True)))
        canon.sort(key=lambda f: (len(f), f))
        object.__setattr__(self, "factors", tuple(canon))

    @classmethod
    def of(cls, factors) -> "FreeProductSpec":
        if isinstance(factors, FreeProductSpec):
            return factors
        if isinstance(factors, dict):
            if set(factors) != {"factors"}:
                raise SpecError('spec document must be {"factors": [[...], ...]}')
            factors = factors["factors"]
        if not isinstance(factors, (list, tuple)) or not all(isinstance(f, (list, tuple)) for f in factors):
            raise SpecError("factors must be a list of integer lists")
        return cls(tuple(tuple(f) for f in factors))

    @classmethod
    def from_json(cls, text: str) -> "FreeProductSpec":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"malformed JSON: {exc}") from exc
        return cls.of(doc)

    @property
    def n(self) -> int:
        return len(self.factors)

    def to_dict(self) -> dict:
        return {"factors": [list(f) for f in self.factors]}

    def __str__(self) -> str:
        return " * ".join("(" + " x ".join(f"F_{a}" for a in f) + ")" for f in self.factors)


def _spec(s) -> FreeProductSpec:
    return FreeProductSpec.of(s)


def factor_betti(factor: tuple[int, ...]) -> int:
    """Top-degree l2-Betti number of a product of free groups."""
    return math.prod(a - 1 for a in factor)


def betti_vector(spec) -> dict[int, int]:
    """Degree -> b_m.  Degree 1 is always present, possibly zero."""
    spec = _spec(spec)
    b = {1: spec.n - 1}
    for f in spec.factors:
        b[len(f)] = b.get(len(f), 0) + factor_betti(f)
    return dict(sorted(b.items()))


def euler_characteristic(spec) -> int:
    """Independent of betti_vector: chi(F_a) = 1 - a, multiplicative on
    products, and chi(A * B) = chi(A) + chi(B) - 1."""
    spec = _spec(spec)
    return sum(math.prod(1 - a for a in f) for f in spec.factors) - (spec.n - 1)


def alternating_sum(b: dict[int, int]) -> int:
    return sum((-1) ** m * v for m, v in b.items())


def proportionality(s1, s2) -> Fraction | None:
    """``c`` with ``b(s1) = c * b(s2)`` in every degree, or None."""
    b1, b2 = betti_vector(s1), betti_vector(s2)
    c = None
    for m in sorted(set(b1) | set(b2)):
        u, v = b1.get(m, 0), b2.get(m, 0)
        if u == 0 and v == 0:
            continue
        if u == 0 or v == 0:
            return None
        r = Fraction(u, v)
        if c is None:
            c = r
        elif r != c:
            return None
    return c


@dataclass(frozen=True)
class WitnessParameters:
    x: int
    h1: tuple[int, ...]
    h2: tuple[int, ...]
    N1: int
    N2: int


def _h_list(spec: FreeProductSpec, x: int) -> tuple[int, ...]:
    out = []
    for f in spec.factors:
        num, den = (x - 1) ** len(f), factor_betti(f)
        if num % den:
            raise DivisibilityError(f"(x-1)^{len(f)} is not divisible by b({list(f)})")
        out.append(num // den)
    return tuple(out)


def witness_parameters(s1, s2) -> WitnessParameters:
    s1, s2 = _spec(s1), _spec(s2)
    if proportionality(s1, s2) is None:
        raise NotProportional(f"{s1} and {s2} have non-proportional l2-Betti numbers")
    x = math.lcm(*(a - 1 for s in (s1, s2) for f in s.factors for a in f)) + 1
    h1, h2 = _h_list(s1, x), _h_list(s2, x)
    L1, L2 = math.lcm(*h1), math.lcm(*h2)
    d1, d2 = s1.n - 1, s2.n - 1
    if d1 == 0 and d2 == 0:
        N1, N2 = L1, L2
    else:
        # proportionality makes both sides free products here
        M = math.lcm(L1 * d1, L2 * d2)
        N1, N2 = M // d1, M // d2
    return WitnessParameters(x, h1, h2, N1, N2)


@dataclass(frozen=True)
class KuroshDecomposition:
    """``H = *_m ((F_x)^m)^{*V[m]} * F_R``."""

    x: int
    V: tuple[tuple[int, int], ...]
    R: int

    @property
    def V_map(self) -> dict[int, int]:
        return dict(self.V)

    def euler_characteristic(self) -> int:
        vs = sum(c for _, c in self.V)
        return sum(c * (1 - self.x) ** m for m, c in self.V) + (1 - self.R) - vs

    def to_dict(self) -> dict:
        return {"V": {str(m): c for m, c in self.V}, "R": self.R}

    def __str__(self) -> str:
        x = self.x
        parts = []
        for m, c in self.V:
            base = "(" + " x ".join([f"F_{x}"] * m) + ")"
            parts.append(base if c == 1 else f"{base}^{{*{c}}}")
        if self.R:
            parts.append(f"F_{self.R}")
        return " * ".join(parts)


def kurosh_decomposition(spec, x: int, N: int) -> KuroshDecomposition:
    spec = _spec(spec)
    V = {}
    for m, bm in betti_vector(spec).items():
        if m == 1 or bm == 0:
            continue
        q = (x - 1) ** m
        if (N * bm) % q:
            raise DivisibilityError(f"N * b_{m} = {N * bm} is not divisible by (x-1)^{m} = {q}")
        V[m] = N * bm // q
    R = N * (spec.n - 1) - sum(V.values()) + 1
    if R < 0:
        raise DivisibilityError(f"negative free rank {R}")
    return KuroshDecomposition(x, tuple(sorted(V.items())), R)


@dataclass
class CommensurabilityWitness:
    spec1: FreeProductSpec
    spec2: FreeProductSpec
    c: Fraction
    x: int
    h1: tuple[int, ...]
    h2: tuple[int, ...]
    N1: int
    N2: int
    kurosh1: KuroshDecomposition
    kurosh2: KuroshDecomposition
    verified: dict | None = None

    @property
    def subgroup(self) -> str:
        return str(self.kurosh1)

    def to_dict(self) -> dict:
        return {
            "spec1": self.spec1.to_dict(),
            "spec2": self.spec2.to_dict(),
            "c": str(self.c),
            "x": self.x,
            "h1": list(self.h1),
            "h2": list(self.h2),
            "N1": self.N1,
            "N2": self.N2,
            "kurosh": {"side1": self.kurosh1.to_dict(), "side2": self.kurosh2.to_dict()},
            "H": self.subgroup,
            "verified": self.verified,
        }


@dataclass
class MEVerdict:
    proportional: bool
    c: Fraction | None
    witness: CommensurabilityWitness | None
    betti1: dict[int, int] = field(default_factory=dict)
    betti2: dict[int, int] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "commensurable" if self.proportional else "not measure equivalent"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "equivalent_statements": {
                "betti_proportional": self.proportional,
                "commensurable": self.proportional,
                "measure_equivalent": self.proportional,
            },
            "c": None if self.c is None else str(self.c),
            "betti1": {str(m): v for m, v in self.betti1.items()},
            "betti2": {str(m): v for m, v in self.betti2.items()},
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


def me_witness(s1, s2) -> MEVerdict:
    s1, s2 = _spec(s1), _spec(s2)
    b1, b2 = betti_vector(s1), betti_vector(s2)
    c = proportionality(s1, s2)
    if c is None:
        return MEVerdict(False, None, None, b1, b2)
    p = witness_parameters(s1, s2)
    k1 = kurosh_decomposition(s1, p.x, p.N1)
    k2 = kurosh_decomposition(s2, p.x, p.N2)
    if k1 != k2:
        raise VerifyMismatch(f"Kurosh decompositions differ: {k1} vs {k2}")
    w = CommensurabilityWitness(s1, s2, c, p.x, p.h1, p.h2, p.N1, p.N2, k1, k2)
    return MEVerdict(True, c, w, b1, b2)


# ---------------------------------------------------------------------------
# explicit actions


@dataclass(frozen=True)
class CyclicCover:
    """Action of F_a on k points: generator 1 is the k-cycle, the rest fix everything."""

    a: int
    k: int
    perms: tuple[tuple[int, ...], ...]  # 0-based images

    @property
    def stabilizer_rank(self) -> int:
        return 1 + self.k * (self.a - 1)

    def schreier_rank(self) -> int:
        """Rank of the point stabilizer read off the Schreier graph, E - V + 1."""
        src = np.repeat(np.arange(self.k), self.a)
        dst = np.array([p[i] for i in range(self.k) for p in self.perms], dtype=np.int64)
        if _kernels.count_components(self.k, src, dst) != 1:
            raise VerifyMismatch("cover is not connected")
        return self.a * self.k - self.k + 1


def nielsen_schreier_cover(a: int, k: int) -> CyclicCover:
    if a < 2 or k < 1:
        raise ValueError("need a >= 2 and k >= 1")
    cycle = tuple((i + 1) % k for i in range(k))
    ident = tuple(range(k))
    return CyclicCover(a, k, (cycle,) + (ident,) * (a - 1))


def max_verify_points() -> int:
    raw = os.environ.get("RIGIDITYKIT_MAX_VERIFY_POINTS")
    return int(raw) if raw else DEFAULT_MAX_VERIFY_POINTS


@dataclass
class PermutationAction:
    """``gens[i][j]`` lists the images (length N) of the generators of the
    j-th free group of factor i."""

    N: int
    spec: FreeProductSpec
    gens: list[list[list[np.ndarray]]]
    repairs: int = 0


def _block_action(factor: tuple[int, ...], x: int, N: int, h: int) -> list[list[np.ndarray]]:
    """Coset action of X_m inside the factor, on N/h blocks of h points."""
    radices = [(x - 1) // (a - 1) for a in factor]
    assert math.prod(radices) == h
    pts = np.arange(N, dtype=np.int64)
    block, local = np.divmod(pts, h)
    out = []
    stride = 1
    for a, k in zip(factor, radices):
        cover = nielsen_schreier_cover(a, k)
        coord = (local // stride) % k
        perms = []
        for img in cover.perms:
            img = np.asarray(img, dtype=np.int64)
            perms.append(block * h + local + (img[coord] - coord) * stride)
        out.append(perms)
        stride *= k
    return out


def _conjugate(perm: np.ndarray, sigma: np.ndarray, sigma_inv: np.ndarray) -> np.ndarray:
    # p -> sigma^-1(perm(sigma(p)))
    return sigma_inv[perm[sigma]]


def _factor_orbits(N: int, gens: list[list[np.ndarray]]) -> np.ndarray:
    pts = np.arange(N, dtype=np.int64)
    src = np.concatenate([pts for group in gens for _ in group])
    dst = np.concatenate([p for group in gens for p in group])
    return _kernels.component_labels(N, src, dst)


def _orbit_graph(N: int, labels: list[np.ndarray]):
    """Bipartite orbit graph; returns (vertex count, src, dst, orbit counts)."""
    pts = np.arange(N, dtype=np.int64)
    offset = N
    src, dst, counts = [], [], []
    for lab in labels:
        uniq, inv = np.unique(lab, return_inverse=True)
        src.append(pts)
        dst.append(offset + inv.astype(np.int64))
        counts.append(len(uniq))
        offset += len(uniq)
    return offset, np.concatenate(src), np.concatenate(dst), counts


def build_action(spec, x: int, N: int, h: tuple[int, ...], cyclic_offsets: bool = True) -> PermutationAction:
    """Replicated coset actions; factor i is rotated by i points unless
    ``cyclic_offsets`` is off, then components are merged by transpositions."""
    spec = _spec(spec)
    if N > max_verify_points():
        raise CapExceeded(f"N = {N} exceeds the verifier cap {max_verify_points()}")
    base = [_block_action(f, x, N, hi) for f, hi in zip(spec.factors, h)]
    pts = np.arange(N, dtype=np.int64)
    sigmas = [(pts + (i if cyclic_offsets else 0)) % N for i in range(spec.n)]

    def orbit_labels(i: int) -> np.ndarray:
        # orbit of p under the conjugated factor is the block of sigma(p)
        return sigmas[i] // h[i]

    repairs = 0
    while True:
        V, src, dst, _ = _orbit_graph(N, [orbit_labels(i) for i in range(spec.n)])
        comp = _kernels.component_labels(V, src, dst)[:N]
        roots = np.unique(comp)
        if len(roots) <= 1:
            break
        i = next((j for j, hj in enumerate(h) if hj >= 2), None)
        if i is None or spec.n < 2:
            raise VerifyMismatch("orbit graph cannot be made connected")
        p = int(np.flatnonzero(comp == roots[0])[0])
        q = int(np.flatnonzero(comp == roots[1])[0])
        s = sigmas[i]
        s[p], s[q] = s[q], s[p]
        repairs += 1
        V2, src2, dst2, _ = _orbit_graph(N, [orbit_labels(j) for j in range(spec.n)])
        after = len(np.unique(_kernels.component_labels(V2, src2, dst2)[:N]))
        if after >= len(roots):
            raise VerifyMismatch("transposition repair did not merge components")
    gens = []
    for i in range(spec.n):
        s = sigmas[i]
        s_inv = np.empty_like(s)
        s_inv[s] = pts
        gens.append([[_conjugate(p, s, s_inv) for p in group] for group in base[i]])
    return PermutationAction(N, spec, gens, repairs)


def _is_permutation(p: np.ndarray, N: int) -> bool:
    return p.shape == (N,) and np.array_equal(np.sort(p), np.arange(N))


def verify_action(action: PermutationAction, x: int, h: tuple[int, ...], kurosh: KuroshDecomposition) -> dict:
    """Recount orbits, the orbit graph and stabilizer ranks from the permutations."""
    N, spec = action.N, action.spec
    problems = []
    labels = []
    coord_ranks = []
    for i, (f, groups) in enumerate(zip(spec.factors, action.gens)):
        flat = [p for g in groups for p in g]
        if not all(_is_permutation(p, N) for p in flat):
            problems.append(f"factor {i}: a generator is not a permutation")
        for j in range(len(groups)):
            for jj in range(j + 1, len(groups)):
                for p in groups[j]:
                    for q in groups[jj]:
                        if not np.array_equal(p[q], q[p]):
                            problems.append(f"factor {i}: free groups {j} and {jj} do not commute")
        lab = _factor_orbits(N, groups)
        labels.append(lab)
        sizes = np.unique(lab, return_counts=True)[1]
        if not np.all(sizes == h[i]):
            problems.append(f"factor {i}: orbit sizes {sorted(set(sizes.tolist()))} != {h[i]}")
        ranks = []
        for a, group in zip(f, groups):
            sub = _factor_orbits(N, [group])
            k = (x - 1) // (a - 1)
            csize = np.unique(sub, return_counts=True)[1]
            if not np.all(csize == k):
                problems.append(f"factor {i}: F_{a} orbits are not of size {k}")
            ranks.append(a * k - k + 1)
        if any(r != x for r in ranks):
            problems.append(f"factor {i}: coordinate stabilizer ranks {ranks} != {x}")
        coord_ranks.append(ranks)
    V, src, dst, counts = _orbit_graph(N, labels)
    E = len(src)
    connected = _kernels.count_components(V, src, dst) == 1
    rank = E - V + 1
    groups = {}
    for f, c in zip(spec.factors, counts):
        groups[len(f)] = groups.get(len(f), 0) + c
    expected_counts = [N // hi for hi in h]
    chi_H = kurosh.euler_characteristic()
    chi_G = euler_characteristic(spec)
    checks = {
        "orbit counts": counts == expected_counts,
        "edge count": E == N * spec.n,
        "vertex count": V == N + sum(expected_counts),
        "connected": connected,
        "rank": rank == kurosh.R,
        "vertex groups": groups == kurosh.V_map,
        "euler characteristic": chi_H == N * chi_G,
    }
    problems += [f"{name} disagrees with the closed form" for name, ok in checks.items() if not ok]
    return {
        "N": N,
        "n": spec.n,
        "E": E,
        "V": V,
        "rank": rank,
        "R": kurosh.R,
        "orbit_counts": counts,
        "expected_orbit_counts": expected_counts,
        "vertex_groups": {str(m): c for m, c in sorted(groups.items())},
        "coordinate_stabilizer_ranks": coord_ranks,
        "connected": connected,
        "transitive": connected,
        "repairs": action.repairs,
        "chi_H": chi_H,
        "N_chi_G": N * chi_G,
        "mismatches": problems,
    }


def build_and_verify_action(s1, s2, witness: CommensurabilityWitness | None = None) -> dict:
    s1, s2 = _spec(s1), _spec(s2)
    if witness is None:
        verdict = me_witness(s1, s2)
        if verdict.witness is None:
            raise NotProportional(f"{s1} and {s2} have non-proportional l2-Betti numbers")
        witness = verdict.witness
    cap = max_verify_points()
    for N in (witness.N1, witness.N2):
        if N > cap:
            raise CapExceeded(f"N = {N} exceeds the verifier cap {cap}")
    sides = []
    for spec, N, h, k in ((s1, witness.N1, witness.h1, witness.kurosh1),
                          (s2, witness.N2, witness.h2, witness.kurosh2)):
        action = build_action(spec, witness.x, N, h)
        sides.append(verify_action(action, witness.x, h, k))
    bad = [f"side {i + 1}: {p}" for i, s in enumerate(sides) for p in s["mismatches"]]
    if bad:
        raise VerifyMismatch("; ".join(bad))
    report = {"side1": sides[0], "side2": sides[1], "ok": True}
    witness.verified = report
    return report

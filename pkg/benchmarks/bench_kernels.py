"""Time the numba kernels against the numpy/interpreter fallbacks.

    python benchmarks/bench_kernels.py [--repeat 3]

Both paths are imported side by side from ``rigiditykit._kernels`` and their
outputs are compared before timing, so a run is also a parity check.
"""

import argparse
import time

import numpy as np

from rigiditykit import _kernels as K
from rigiditykit.census import _perms
from rigiditykit.coxeter import CoxeterSystem, TClosure
from rigiditykit.graph import LabeledGraph


def closure_inputs(n):
    # mostly commuting random graph: many T members, deep closure
    rng = np.random.default_rng(1)
    names = [f"v{i}" for i in range(n)]
    edges = [(names[i], names[j], 2) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.6]
    G = LabeledGraph(names, edges, "coxeter")
    tc = TClosure(CoxeterSystem.of(G))
    base = np.zeros(1 << n, np.int8)
    base[tc.rule == K.RULE_BASE_PRODUCT] = K.RULE_BASE_PRODUCT
    base[tc.rule == K.RULE_BASE_AFFINE] = K.RULE_BASE_AFFINE
    return n, tc.nonspherical, base, np.array(tc._perp, np.int64)


def canon_inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, 4, size=(n, n))
    m = np.triu(m, 1)
    return m + m.T, _perms(n)


def uf_inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    return n, rng.integers(0, n, n // 2), rng.integers(0, n, n // 2)


def bench(fn, args, repeat):
    fn(*args)  # warm-up, includes jit compilation
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--closure-n", type=int, default=11)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    cases = [
        (f"t_closure (n={args.closure_n})", K.t_closure_jit, K.t_closure_py, closure_inputs(args.closure_n)),
        ("canonical_code (n=7)", K.canonical_code_jit, K.canonical_code_py, canon_inputs(7)),
        ("components (n=200000)", K.components_jit, K.components_py, uf_inputs(200_000)),
    ]
    print(f"{'kernel':28s} {'numba [s]':>10s} {'fallback [s]':>13s} {'speedup':>8s}")
    for name, jit, py, inp in cases:
        tj, oj = bench(jit, inp, args.repeat)
        tp, op = bench(py, inp, args.repeat)
        assert same(oj, op), f"{name}: paths disagree"
        print(f"{name:28s} {tj:10.4f} {tp:13.4f} {tp / tj:8.1f}x")


if __name__ == "__main__":
    main()

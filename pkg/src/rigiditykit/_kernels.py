"""Hot inner loops: subset closure, brute-force canonical codes, union-find.

Each kernel exists twice.  The ``*_jit`` variants are numba ``@njit``
compilations; the ``*_py`` variants are the interpreter fallback (plain loops
for the closure, vectorized numpy for the other two).  The public names bind
to the jit variant unless numba is missing or ``RIGIDITYKIT_DISABLE_JIT=1``.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_JIT = HAVE_NUMBA and os.environ.get("RIGIDITYKIT_DISABLE_JIT", "").lower() not in ("1", "true", "yes")

# rule codes written by t_closure
RULE_NONE = 0
RULE_BASE_AFFINE = 1
RULE_BASE_PRODUCT = 2
RULE_OP2 = 3
RULE_OP3 = 4


def _t_closure(n, nonsph, base, perp):
    """Layered fixpoint of the class-T closure over all subsets of ``n`` bits.

    ``nonsph[A]`` flags non-spherical subsets, ``base[A]`` is a RULE_BASE_*
    code or 0, ``perp[s]`` the bitmask of generators commuting with ``s``.
    Returns ``(depth, rule, arg1, arg2)``; depth is -1 for non-members.
    Op2 stores ``(S0, s)``, Op3 stores ``(S1, S2)`` with ``S1 < S2``.
    Subsets gained in one layer only become usable in the next one.
    """
    size = 1 << n
    depth = np.full(size, -1, np.int32)
    rule = np.zeros(size, np.int8)
    arg1 = np.zeros(size, np.int64)
    arg2 = np.zeros(size, np.int64)
    for A in range(size):
        if base[A] != 0:
            depth[A] = 0
            rule[A] = base[A]
    pending = np.empty(size, np.int64)
    layer = 0
    while True:
        npend = 0
        for A in range(size):
            if depth[A] >= 0 or not nonsph[A]:
                continue
            found = False
            for s in range(n):
                bit = 1 << s
                if A & bit:
                    S0 = A ^ bit
                    if depth[S0] >= 0 and nonsph[perp[s] & S0]:
                        rule[A] = 3
                        arg1[A] = S0
                        arg2[A] = s
                        found = True
                        break
            if not found:
                best_t = n + 1
                best_lo = 0
                best_hi = 0
                S1 = (A - 1) & A
                while S1 > 0:
                    if depth[S1] >= 0:
                        rest = A & ~S1
                        T = (S1 - 1) & S1
                        while T > 0:
                            if nonsph[T]:
                                S2 = rest | T
                                if depth[S2] >= 0:
                                    pc = 0
                                    t = T
                                    while t:
                                        t &= t - 1
                                        pc += 1
                                    lo = S1 if S1 < S2 else S2
                                    hi = S2 if S1 < S2 else S1
                                    if pc < best_t or (pc == best_t and (lo < best_lo or (lo == best_lo and hi < best_hi))):
                                        best_t = pc
                                        best_lo = lo
                                        best_hi = hi
                            T = (T - 1) & S1
                    S1 = (S1 - 1) & A
                if best_t <= n:
                    rule[A] = 4
                    arg1[A] = best_lo
                    arg2[A] = best_hi
                    found = True
            if found:
                pending[npend] = A
                npend += 1
        if npend == 0:
            break
        layer += 1
        for i in range(npend):
            depth[pending[i]] = layer
    return depth, rule, arg1, arg2


def _canonical_code_loop(mat, perms):
    """Lexicographically least upper-triangle code of ``mat`` under ``perms``.

    Entry ``(i, j)`` of the code for permutation ``p`` is
    ``mat[p[i], p[j]]``.  Returns ``(code, index_of_best_perm)``.
    """
    n = mat.shape[0]
    size = n * (n - 1) // 2
    best = np.empty(size, np.int64)
    cur = np.empty(size, np.int64)
    best_idx = -1
    for p in range(perms.shape[0]):
        state = 0 if best_idx >= 0 else -1
        k = 0
        for i in range(n):
            if state == 1:
                break
            for j in range(i + 1, n):
                val = mat[perms[p, i], perms[p, j]]
                cur[k] = val
                if state == 0:
                    if val < best[k]:
                        state = -1
                    elif val > best[k]:
                        state = 1
                        break
                k += 1
        if state == -1:
            for q in range(size):
                best[q] = cur[q]
            best_idx = p
    return best, best_idx


def _canonical_code_numpy(mat, perms):
    n = mat.shape[0]
    iu, ju = np.triu_indices(n, 1)
    codes = np.asarray(mat, dtype=np.int64)[perms[:, iu], perms[:, ju]]
    if codes.shape[1] == 0:
        return np.empty(0, np.int64), 0
    order = np.lexsort(codes.T[::-1])
    idx = int(order[0])
    return codes[idx].copy(), idx


def _components_uf(n, src, dst):
    """Component labels (least member index) of an undirected graph."""
    parent = np.arange(n)
    for e in range(src.shape[0]):
        a = src[e]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = dst[e]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a < b:
            parent[b] = a
        elif b < a:
            parent[a] = b
    for i in range(n):
        r = i
        while parent[r] != r:
            r = parent[r]
        parent[i] = r
    return parent


def _components_numpy(n, src, dst):
    labels = np.arange(n)
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    while True:
        new = labels.copy()
        np.minimum.at(new, src, labels[dst])
        np.minimum.at(new, dst, labels[src])
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


t_closure_py = _t_closure
canonical_code_py = _canonical_code_numpy
components_py = _components_numpy

if HAVE_NUMBA:
    t_closure_jit = njit(cache=True)(_t_closure)
    canonical_code_jit = njit(cache=True)(_canonical_code_loop)
    components_jit = njit(cache=True)(_components_uf)
else:  # pragma: no cover
    t_closure_jit = canonical_code_jit = components_jit = None

if USE_JIT:
    t_closure = t_closure_jit
    canonical_code = canonical_code_jit
    components = components_jit
else:
    t_closure = t_closure_py
    canonical_code = canonical_code_py
    components = components_py


def backend() -> str:
    return "numba" if USE_JIT else "numpy"


def component_labels(n: int, src, dst) -> np.ndarray:
    src = np.ascontiguousarray(src, dtype=np.int64)
    dst = np.ascontiguousarray(dst, dtype=np.int64)
    return components(n, src, dst)


def count_components(n: int, src, dst) -> int:
    if n == 0:
        return 0
    labels = component_labels(n, src, dst)
    return int(np.count_nonzero(labels == np.arange(n)))

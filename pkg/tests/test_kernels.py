import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rigiditykit import _kernels as K
from rigiditykit.census import _perms

needs_numba = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba not installed")


@st.composite
def symmetric(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    upper = draw(arrays(np.int64, (n, n), elements=st.integers(0, 4)))
    m = np.triu(upper, 1)
    return m + m.T


def brute_code(mat):
    n = mat.shape[0]
    return min(tuple(int(mat[p[i], p[j]]) for i in range(n) for j in range(i + 1, n))
               for p in itertools.permutations(range(n)))


@settings(deadline=None)
@given(symmetric())
def test_canonical_numpy_is_lexicographic_minimum(mat):
    code, idx = K.canonical_code_py(mat, _perms(mat.shape[0]))
    assert tuple(code.tolist()) == brute_code(mat)


@needs_numba
@settings(deadline=None)
@given(symmetric())
def test_canonical_paths_agree(mat):
    perms = _perms(mat.shape[0])
    a, ia = K.canonical_code_jit(mat, perms)
    b, ib = K.canonical_code_py(mat, perms)
    assert np.array_equal(a, b)
    # indices may differ under automorphisms; both must realize the code
    n = mat.shape[0]
    iu, ju = np.triu_indices(n, 1)
    for idx in (ia, ib):
        p = perms[idx]
        assert np.array_equal(mat[p[iu], p[ju]], a)


@settings(deadline=None)
@given(symmetric(), st.randoms(use_true_random=False))
def test_canonical_invariant_under_relabeling(mat, rnd):
    n = mat.shape[0]
    p = list(range(n))
    rnd.shuffle(p)
    relabeled = mat[np.ix_(p, p)]
    a, _ = K.canonical_code(mat, _perms(n))
    b, _ = K.canonical_code(relabeled, _perms(n))
    assert np.array_equal(a, b)


@st.composite
def edge_lists(draw):
    n = draw(st.integers(1, 60))
    m = draw(st.integers(0, 80))
    src = draw(arrays(np.int64, m, elements=st.integers(0, n - 1)))
    dst = draw(arrays(np.int64, m, elements=st.integers(0, n - 1)))
    return n, src, dst


def reference_labels(n, src, dst):
    adj = {i: set() for i in range(n)}
    for a, b in zip(src.tolist(), dst.tolist()):
        adj[a].add(b)
        adj[b].add(a)
    lab = [-1] * n
    for s in range(n):
        if lab[s] < 0:
            todo = [s]
            lab[s] = s
            while todo:
                u = todo.pop()
                for w in adj[u]:
                    if lab[w] < 0:
                        lab[w] = s
                        todo.append(w)
    return np.array(lab)


@settings(deadline=None)
@given(edge_lists())
def test_components_numpy_matches_reference(data):
    assert np.array_equal(K.components_py(*data), reference_labels(*data))


@needs_numba
@settings(deadline=None)
@given(edge_lists())
def test_components_paths_agree(data):
    assert np.array_equal(K.components_jit(*data), K.components_py(*data))


def test_count_components_empty():
    assert K.count_components(0, [], []) == 0
    assert K.count_components(3, [], []) == 3


def test_backend_flag_names_a_path():
    assert K.backend() in ("numba", "numpy")


def test_env_flag_selects_fallback(tmp_path):
    import subprocess
    import sys
    code = "from rigiditykit import _kernels as K; print(K.backend(), K.t_closure is K.t_closure_py)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True,
                         env={**__import__("os").environ, "RIGIDITYKIT_DISABLE_JIT": "1"})
    assert out.stdout.split() == ["numpy", "True"]

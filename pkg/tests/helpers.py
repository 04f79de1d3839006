"""Graph builders shared by the test modules."""

from rigiditykit._kernels import HAVE_NUMBA
from rigiditykit.graph import LabeledGraph


def graph(edges, vertices=None, kind="artin"):
    vs = set(vertices or ())
    for u, v, _ in edges:
        vs |= {u, v}
    return LabeledGraph(sorted(vs), edges, kind)


def cycle(n, label=2, kind="artin", prefix="v"):
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    return graph([(names[i], names[(i + 1) % n], label) for i in range(n)], names, kind)


def path(names, labels, kind="artin"):
    return graph([(names[i], names[i + 1], m) for i, m in enumerate(labels)], names, kind)


def triangle(mab, mac, mbc, kind="artin"):
    return graph([("a", "b", mab), ("a", "c", mac), ("b", "c", mbc)], kind=kind)


GRAPH_E_EDGES = [("a", "b", 2), ("a", "d", 2), ("c", "b", 2), ("c", "d", 2), ("e", "a", 2), ("e", "c", 2)]


def graph_e(kind="coxeter"):
    return graph(GRAPH_E_EDGES, kind=kind)


def graph_e_plus_f():
    return graph(GRAPH_E_EDGES + [("f", "a", 2), ("f", "c", 2)], kind="coxeter")


def op2_graph():
    """{p,q,r} x {s,t} with f commuting with p and q only."""
    edges = [(x, y, 2) for x in "pqr" for y in "st"] + [("f", "p", 2), ("f", "q", 2)]
    return graph(edges, kind="coxeter")


def renamed(G, suffix):
    return G.relabel({v: v + suffix for v in G.vertices})


KERNEL_PATHS = ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]


def join_graph():
    """Seven-generator system whose certificate glues two products with a Join."""
    pairs = ["ae", "af", "bc", "be", "bf", "bg", "cf", "cg", "de", "df", "dg"]
    return graph([(p[0], p[1], 2) for p in pairs], kind="coxeter")


def changed_edges(G, H):
    """Vertex pairs whose label differs between G and H (missing counts as None)."""
    a = {frozenset((u, v)): m for u, v, m in G.edges()}
    b = {frozenset((u, v)): m for u, v, m in H.edges()}
    return {e for e in a.keys() | b.keys() if a.get(e) != b.get(e)}


def predicted_failures(mutation, cert, G):
    """Nodes a mutation must break: the target, plus for graph mutations every
    ProductSplit that has a changed pair among its cross edges."""
    from rigiditykit.certificates import ProductSplit, walk_nodes

    if mutation.graph is G:
        return [mutation.target]
    changed = changed_edges(G, mutation.graph)
    out = []
    for p, node in walk_nodes(cert):
        if isinstance(node, ProductSplit):
            cross = {frozenset((u, v)) for u in node.left for v in node.right}
            if cross & changed:
                out.append(p)
    return out

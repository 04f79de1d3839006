"""Golden artifacts: name -> zero-argument producer of the exact file text.

Regenerate with ``python tests/golden_data.py``.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from rigiditykit.artin import artin_rigid_chain, raag_rigid_chain  # noqa: E402
from rigiditykit.census import census, census_json  # noqa: E402
from rigiditykit.certificates import chain_to_certificate, dumps  # noqa: E402
from rigiditykit.coxeter import CoxeterSystem, coxeter_rigidity_certificate  # noqa: E402
from rigiditykit.l2 import build_and_verify_action, me_witness  # noqa: E402

from helpers import cycle, graph_e, join_graph, op2_graph, path, triangle  # noqa: E402

GOLDEN_DIR = pathlib.Path(__file__).parent / "golden"
PAIR = ([[2, 2], [2, 2]], [[3, 2], [2, 2], [2, 2]])


def _artin(G, raag=False):
    chain = raag_rigid_chain(G) if raag else artin_rigid_chain(G)
    return dumps(chain_to_certificate(chain, G)) + "\n"


def _coxeter(G):
    return dumps(coxeter_rigidity_certificate(CoxeterSystem.of(G))) + "\n"


def _witness():
    v = me_witness(*PAIR)
    build_and_verify_action(*PAIR, v.witness)
    return json.dumps(v.to_dict(), indent=1, sort_keys=True) + "\n"


PRODUCERS = {
    "census_4_labels_2_3.json": lambda: census_json(census(4, {2, 3})),
    "cert_pentagon.json": lambda: _artin(cycle(5), raag=True),
    "cert_path_2_3.json": lambda: _artin(path("abc", [2, 3])),
    "cert_triangle_3_2_2.json": lambda: _artin(triangle(3, 2, 2)),
    "cert_graph_e.json": lambda: _coxeter(graph_e()),
    "cert_op2.json": lambda: _coxeter(op2_graph()),
    "cert_join.json": lambda: _coxeter(join_graph()),
    "witness_pair.json": _witness,
}


def regenerate():
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, make in PRODUCERS.items():
        (GOLDEN_DIR / name).write_text(make(), encoding="utf-8")
        print("wrote", name)


if __name__ == "__main__":
    regenerate()

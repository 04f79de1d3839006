import io
import json

import pytest

from rigiditykit.artin import artin_rigid_chain
from rigiditykit.certificates import ProductSplit, chain_to_certificate, dumps
from rigiditykit.cli import run_cli

from helpers import graph_e, triangle


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run_cli(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        p = tmp_path / name
        p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(p)
    return _write


def test_me_pair(write):
    a = write("a.json", {"factors": [[2, 2], [2, 2]]})
    b = write("b.json", {"factors": [[3, 2], [2, 2], [2, 2]]})
    status, out, _ = run("me", a, b, "--witness")
    doc = json.loads(out)
    assert status == 0
    assert (doc["witness"]["N1"], doc["witness"]["N2"]) == (8, 4)


def test_me_verify_action(write):
    a = write("a.json", {"factors": [[2, 2], [2, 2]]})
    b = write("b.json", {"factors": [[3, 2], [2, 2], [2, 2]]})
    status, out, _ = run("me", a, b, "--verify-action")
    assert status == 0
    verified = json.loads(out)["witness"]["verified"]
    assert verified["ok"] is True
    assert verified["side1"]["mismatches"] == [] and verified["side2"]["mismatches"] == []


def test_me_not_proportional(write):
    a = write("a.json", {"factors": [[2, 2]]})
    b = write("b.json", {"factors": [[2, 2], [2, 2]]})
    status, out, _ = run("me", a, b)
    assert status == 1
    assert json.loads(out)["verdict"] == "not measure equivalent"


def test_classify_complete_all_two(write):
    g = write("g.json", triangle(2, 2, 2).to_document())
    status, out, _ = run("classify", g)
    assert status == 0
    doc = json.loads(out)
    assert doc["components"][0]["complete_all_two"] is True
    assert doc["theorem_1_1_applies"] is False


def test_betti_malformed(write):
    status, _, err = run("betti", write("s.json", '{"factors": [[2, 2]'))
    assert status == 2 and "malformed" in err


def test_betti(write):
    status, out, _ = run("betti", write("s.json", {"factors": [[2, 2], [2, 2]]}))
    doc = json.loads(out)
    assert status == 0 and doc["betti"] == {"1": 1, "2": 2}


def test_usage_error():
    assert run("frobnicate")[0] == 2
    assert run("census", "--labels", "2")[0] == 2


def test_missing_file():
    assert run("classify", "/nonexistent/graph.json")[0] == 2


def test_census_limit():
    assert run("census", "--max-vertices", "9", "--labels", "2")[0] == 2


def test_census_pretty():
    status, out, _ = run("--pretty", "census", "--max-vertices", "2", "--labels", "2,3")
    assert status == 0
    assert out.splitlines()[0].split()[0] == "graph"
    assert len(out.splitlines()) == 4


def test_certify_graph_e(write):
    status, out, _ = run("certify", write("g.json", graph_e().to_document()))
    doc = json.loads(out)
    assert status == 0 and doc["certified"]


def test_check_cert_round_trip(write):
    G = graph_e()
    g = write("g.json", G.to_document())
    good = write("c.json", dumps(ProductSplit(("b", "d", "e"), ("a", "c"))))
    assert run("check-cert", good, g)[0] == 0
    bad = write("d.json", dumps(ProductSplit(("b", "d"), ("a", "c", "e"))))
    status, out, _ = run("check-cert", bad, g)
    assert status == 1 and json.loads(out)["ok"] is False


def test_check_cert_chain(write):
    G = triangle(3, 2, 2)
    g = write("g.json", G.to_document())
    chain = write("chain.json", artin_rigid_chain(G).to_dict())
    assert run("check-cert", chain, g)[0] == 0
    cert = write("cert.json", dumps(chain_to_certificate(artin_rigid_chain(G), G)))
    assert run("check-cert", cert, g)[0] == 0


def test_check_cert_garbage(write):
    g = write("g.json", graph_e().to_document())
    assert run("check-cert", write("c.json", "[1, 2]"), g)[0] == 2

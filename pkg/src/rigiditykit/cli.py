"""``rigiditykit`` command line.

Exit status: 0 success, 1 negative verdict, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import certificates as certs
from .artin import ExcludedGraph, RigidChain, artin_theorem_report
from .census import LimitExceeded, census
from .coxeter import TooLarge, coxeter_theorem_report
from .graph import GraphError, LabeledGraph, connected_components, validate_and_load
from .l2 import (
    CapExceeded,
    FreeProductSpec,
    SpecError,
    betti_vector,
    build_and_verify_action,
    euler_characteristic,
    me_witness,
)

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(INPUT_ERROR)


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON: {exc.msg} (line {exc.lineno})") from None


def _graph(path: str) -> LabeledGraph:
    try:
        return validate_and_load(_read(path))
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def _spec(path: str) -> FreeProductSpec:
    try:
        return FreeProductSpec.from_json(_read(path))
    except SpecError as exc:
        raise InputError(f"{path}: {exc}") from None


def _report(G: LabeledGraph) -> dict:
    return artin_theorem_report(G) if G.kind == "artin" else coxeter_theorem_report(G)


def cmd_classify(args):
    G = _graph(args.graph)
    return OK, _report(G)


def cmd_certify(args):
    G = _graph(args.graph)
    rep = _report(G)
    comps = [{k: c[k] for k in ("vertices", "certificate", "check") if k in c} for c in rep["components"]]
    certified = all("certificate" in c and c["check"]["ok"] for c in comps)
    doc = {"kind": G.kind, "certified": certified, "components": comps}
    return (OK if certified else NEGATIVE), doc


def cmd_check_cert(args):
    doc = _json(args.cert)
    G = _graph(args.graph)
    if not isinstance(doc, dict):
        raise InputError(f"{args.cert}: expected a certificate or chain object")
    try:
        if "entries" in doc:
            chain = RigidChain.from_dict(doc)
            sub = _component_of(G, {v for e in chain.entries for v in e.vertices})
            cert = certs.chain_to_certificate(chain, sub)
        else:
            cert = certs.from_dict(doc, G)
            sub = _component_of(G, certs.scope_vertices(cert))
    except (certs.BrokenLink, certs.CoverageError) as exc:
        return NEGATIVE, {"ok": False, "error": str(exc)}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.cert}: not a certificate: {exc}") from None
    report = certs.check_certificate(cert, sub)
    return (OK if report.ok else NEGATIVE), report.to_dict()


def _component_of(G: LabeledGraph, verts) -> LabeledGraph:
    unknown = set(verts) - set(G.vertices)
    if unknown:
        raise InputError(f"certificate mentions unknown vertices {sorted(unknown)}")
    for comp in connected_components(G):
        if set(verts) & set(comp):
            return G.full_subgraph(comp)
    return G


def cmd_betti(args):
    spec = _spec(args.spec)
    b = betti_vector(spec)
    return OK, {"spec": spec.to_dict(), "betti": {str(m): v for m, v in b.items()},
                "euler_characteristic": euler_characteristic(spec)}


def cmd_me(args):
    s1, s2 = _spec(args.spec1), _spec(args.spec2)
    verdict = me_witness(s1, s2)
    if verdict.witness is not None and args.verify_action:
        build_and_verify_action(s1, s2, verdict.witness)
    doc = verdict.to_dict()
    if not (args.witness or args.verify_action):
        doc.pop("witness")
    return (OK if verdict.proportional else NEGATIVE), doc


def _labels(text: str) -> set[int]:
    try:
        return {int(t) for t in text.replace(" ", "").split(",") if t}
    except ValueError:
        raise InputError(f"bad label list {text!r}") from None


def cmd_census(args):
    rows = census(args.max_vertices, _labels(args.labels))
    return OK, [r.to_dict() for r in rows]


def _pretty(command: str, doc) -> str:
    if command == "census":
        cols = ["graph", "amenable", "in_T", "rel_hyp", "artin_thm_ok", "coxeter_thm_ok", "irreducible_components"]
        width = [max(len(c), *(len(str(r[c])) for r in doc)) if doc else len(c) for c in cols]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, width))]
        lines += ["  ".join(str(r[c]).ljust(w) for c, w in zip(cols, width)) for r in doc]
        return "\n".join(lines)
    if command in ("classify", "certify") and isinstance(doc, dict) and "components" in doc:
        lines = [f"{k}: {v}" for k, v in doc.items() if k != "components"]
        for c in doc["components"]:
            flags = {k: v for k, v in c.items() if isinstance(v, bool)}
            lines.append(f"  {{{', '.join(c['vertices'])}}} " + " ".join(f"{k}={v}" for k, v in flags.items()))
        return "\n".join(lines)
    if isinstance(doc, dict):
        return "\n".join(f"{k}: {json.dumps(v)}" for k, v in doc.items())
    return json.dumps(doc, indent=2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rigiditykit", description="Rigidity certificates and l2-Betti witnesses.")
    p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", help="theorem report for a defining graph")
    s.add_argument("graph")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("certify", help="rigidity certificates per component")
    s.add_argument("graph")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("check-cert", help="check a certificate or rigid chain against a graph")
    s.add_argument("cert")
    s.add_argument("graph")
    s.set_defaults(func=cmd_check_cert)

    s = sub.add_parser("betti", help="l2-Betti vector of a free-product spec")
    s.add_argument("spec")
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("me", help="measure-equivalence verdict for two specs")
    s.add_argument("spec1")
    s.add_argument("spec2")
    s.add_argument("--witness", action="store_true", help="include the commensurability witness")
    s.add_argument("--verify-action", action="store_true", help="build and verify explicit actions")
    s.set_defaults(func=cmd_me)

    s = sub.add_parser("census", help="classify all small connected graphs")
    s.add_argument("--max-vertices", type=int, required=True)
    s.add_argument("--labels", required=True, help="comma-separated, e.g. 2,3")
    s.set_defaults(func=cmd_census)

    for name in ("classify", "certify", "check-cert", "betti", "me", "census"):
        sub.choices[name].add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    return p


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        status, doc = args.func(args)
    except (InputError, ExcludedGraph, TooLarge, LimitExceeded, CapExceeded) as exc:
        print(f"rigiditykit: error: {exc}", file=stderr)
        return INPUT_ERROR
    if args.pretty:
        stdout.write(_pretty(args.command, doc) + "\n")
    else:
        stdout.write(json.dumps(doc, indent=2) + "\n")
    return status


def main() -> None:
    raise SystemExit(run_cli())


if __name__ == "__main__":
    main()

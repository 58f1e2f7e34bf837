"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 resource limit, 3 a consistency
check failed (which points at a bug rather than at the input).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .census import CensusOptions, file_sha256, format_table, ingest, run_census
from .config import ENV_VAR
from .cosetgraph import (build_coset_graph, check_local_op, check_thompson_wielandt, is_arc_transitive,
                         local_pair, to_adjacency_text, to_edge_list_text)
from .criteria import verdict
from .errors import GrestrictError, InputError, InvariantViolation, ResourceLimitError
from .group import PermutationGroup
from .linear import linear_quotient
from .perm import parse_permutation
from .props import property_report
from .witness import amalgam_ball, build_setup, build_system, verify_all, verify_ball

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_INVARIANT = 0, 1, 2, 3
LABEL = re.compile(r"^\d+T\d+$")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors are input errors
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def load_group(spec: str, degree: int | None = None, data: str | None = None) -> PermutationGroup:
    """A group from a catalog label, a file of generators, or inline ``;``-separated text.

    A file holds one generator per line, or JSON-lines records (the first is used).
    """
    if LABEL.match(spec):
        for rec in ingest(data):
            if rec.label == spec:
                return rec.group
        raise InputError(f"no catalog entry {spec}")
    path = Path(spec)
    if path.is_file():
        lines = [ln.strip() for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip() and not ln.startswith("#")]
        if lines and lines[0].startswith("{"):
            rec = json.loads(lines[0])
            return PermutationGroup.from_text(rec["gens"], rec.get("degree", degree))
        return PermutationGroup.from_text(lines, degree)
    return PermutationGroup.from_text(spec, degree)


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True) if args.json else text, end="" if not args.json else "\n")


def _degrees(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2) or lo)
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty degree range {text!r}")
    return lo, hi


# ------------------------------------------------------------ subcommands

def cmd_props(args: argparse.Namespace) -> int:
    G = load_group(args.group, args.degree, args.data)
    rep = property_report(G)
    d = rep.to_dict()
    lines = [f"degree {rep.degree}, order {rep.order}"]
    for k in ("transitive", "regular", "semiregular", "primitive", "quasiprimitive", "biquasiprimitive",
              "semiprimitive", "two_transitive", "affine_type"):
        lines.append(f"  {k:<17} {d[k]}")
    for k, w in rep.witnesses.items():
        lines.append(f"  not {k}: {w}")
    _emit(args, d, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verdict(args: argparse.Namespace) -> int:
    G = load_group(args.group, args.degree, args.data)
    v = verdict(G)
    lines = [f"{v.overall.value}" + (f", c = {v.constant}" if v.constant is not None else "")
             + (f" (decided by {v.decided_by})" if v.decided_by else "")]
    for st in v.primes:
        lines.append(f"  p={st.prime}: {st.status.value}" + (f" via {st.rule}" if st.rule else "")
                     + (f", c_p = {st.constant}" if st.constant is not None else ""))
    lines.append("trace:")
    for t in v.trace:
        lines.append(f"  [{t.rule}] {t.outcome}  ({t.citation})")
    _emit(args, v.to_dict(), "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    records = ingest(args.data)
    opts = CensusOptions(degrees=args.degrees)
    sha = file_sha256(args.data) if args.data else None
    report = run_census(records, opts, jobs=args.jobs, data_sha256=sha)
    text = report.to_json() if args.format == "json" else format_table(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_witness(args: argparse.Namespace) -> int:
    L = load_group(args.group, args.degree, args.data)
    Kn = PermutationGroup.from_text(args.normal, L.degree)
    system = build_system(build_setup(L, Kn), args.m)
    checks = verify_all(system)
    s = system.summary()
    lines = [f"|A| = {s['order_A']}, |C| = {s['order_C']}, |M| = {s['order_M']}"]
    lines += [f"  [{'x' if c.ok else ' '}] {c.name}: {c.detail}" for c in checks]
    payload = dict(s, checks=[{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks])
    if args.radius is not None:
        ball = amalgam_ball(system, args.radius)
        bc = verify_ball(system, ball)
        checks.append(bc)
        lines.append(f"ball radius {ball.radius}: {len(ball.vertices)} vertices, valency {ball.valency}, "
                     f"kernel order {ball.kernel_order}")
        lines.append(f"  [{'x' if bc.ok else ' '}] {bc.name}: {bc.detail}")
        payload["ball"] = {"radius": ball.radius, "vertices": len(ball.vertices), "valency": ball.valency,
                           "kernel_order": ball.kernel_order, "stabilizer_orders": ball.stabilizer_orders}
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK if all(c.ok for c in checks) else EXIT_INVARIANT


def cmd_cosetgraph(args: argparse.Namespace) -> int:
    G = load_group(args.group, args.degree, args.data)
    A = PermutationGroup.from_text(args.subgroup, G.degree)
    b = parse_permutation(args.element, G.degree).array
    gr = build_coset_graph(G, A, b)
    if args.format == "adjacency":
        sys.stdout.write(to_adjacency_text(gr))
        return EXIT_OK
    if args.format == "edges":
        sys.stdout.write(to_edge_list_text(gr))
        return EXIT_OK
    la = local_pair(gr)
    tw, op = check_thompson_wielandt(gr, la), check_local_op(gr, la)
    arc = is_arc_transitive(gr) if 2 * len(gr.edges) <= 10_000 else None
    summary = dict(la.summary(), vertices=gr.order, edges=len(gr.edges), arc_transitive=arc,
                   checks=[tw.to_dict(), op.to_dict()])
    lines = [f"{gr.order} vertices, {len(gr.edges)} edges, valency {gr.valency}, arc-transitive {arc}"]
    lines += [f"  {k}: {v}" for k, v in la.summary().items()]
    lines += [f"  {c.name}: {c.status} ({c.detail})" for c in (tw, op)]
    _emit(args, summary, "\n".join(lines) + "\n")
    if arc is False:
        raise InvariantViolation("coset graph is not arc-transitive")
    return EXIT_OK if tw.ok and op.ok else EXIT_INVARIANT


def cmd_linear(args: argparse.Namespace) -> int:
    lq = linear_quotient(args.p, args.det_index, args.center)
    L = lq.group
    payload = {"p": lq.p, "det_index": lq.r, "center_order": lq.k, "degree": L.degree, "order": L.order(),
               "stabilizer_order": lq.stabilizer.order(), "generators": [str(g) for g in L.generators]}
    lines = [f"degree {L.degree}, order {L.order()}, point stabilizer C_{lq.p} : C_{lq.r} (order {lq.stabilizer.order()})",
             "generators: " + "; ".join(payload["generators"])]
    if args.verdict:
        v = verdict(L)
        payload["verdict"] = v.to_dict()
        lines.append(f"{v.overall.value}, c = {v.constant}, decided by {v.decided_by}")
        for st in v.primes:
            lines.append(f"  p={st.prime}: {st.rule}" + (f", c_p = {st.constant}" if st.constant else ""))
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="grestrict", description="Graph-restrictiveness tools for small permutation groups.",
                 epilog=f"The group-order ceiling defaults to 10^6; override it with {ENV_VAR}.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group_cmd(name: str, helptext: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("group", help="catalog label (e.g. 9T3), generator file, or '(1 2 3);(1 2)'")
        p.add_argument("--degree", type=int, help="degree when it exceeds the largest moved point")
        p.add_argument("--data", help="data file for catalog labels (default: bundled)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    group_cmd("props", "structural properties").set_defaults(func=cmd_props)
    group_cmd("verdict", "graph-restrictiveness verdict with rule trace").set_defaults(func=cmd_verdict)

    p = sub.add_parser("census", help="classify every catalog group in a degree range")
    p.add_argument("--degrees", type=_degrees, default=(2, 13), help="range A..B (default 2..13)")
    p.add_argument("--data", help="JSON-lines data file (default: bundled)")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_census)

    p = group_cmd("witness", "build the witness system for L and K and run its checks")
    p.add_argument("--normal", required=True, help="generators of the intransitive normal subgroup K")
    p.add_argument("--m", type=int, default=1, help="odd number of block copies")
    p.add_argument("--radius", type=int, help="also build and check the amalgam ball")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("cosetgraph", help="build Cos(G, A, b) and analyse its local structure")
    p.add_argument("--group", required=True)
    p.add_argument("--subgroup", required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--degree", type=int)
    p.add_argument("--data")
    p.add_argument("--format", choices=("summary", "adjacency", "edges"), default="summary")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cosetgraph)

    p = sub.add_parser("linear-quotient", help="a quotient of a 2x2 linear group acting on scalar classes")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--det-index", type=int, default=1)
    p.add_argument("--center", type=int, default=1)
    p.add_argument("--verdict", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_linear)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # --help, --version and usage errors
        return e.code if isinstance(e.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except InvariantViolation as e:
        print(f"error: consistency check failed: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except ResourceLimitError as e:
        print(f"error: {e} (raise it with {ENV_VAR})", file=sys.stderr)
        return EXIT_RESOURCE
    except (GrestrictError, ValueError, OSError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def cli(argv: Sequence[str] | None = None) -> int:
    return main(argv)

"""Command line front end.

Exit codes: 0 on success, 1 when a verification fails, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cocycle as cc
from .homology import flip_marked, mark, omega_of
from .ribbon import (FatgraphError, edge_label, flip, flippable_edges, incoming_cycle, is_plus, make_rng,
                     parse_fatgraph, random_walk, serialize_fatgraph, standard_spine,
                     theta_spine, to_dot)
from .tensor import is_in_S2

SUITES = ("coboundary", "pentagon", "commutativity", "identities")


class InputError(Exception):
    pass


def _read_graph(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        return parse_fatgraph(text)
    except FatgraphError as exc:
        raise InputError(str(exc)) from None


def _write(path: str | None, text: str, out):
    if path is None or path == "-":
        out.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def marking_dump(mfg) -> list[str]:
    fg = mfg.graph
    lines = []
    for e in fg.edges:
        for d in fg.edge_darts(e):
            sign = "+" if is_plus(fg, d) else "-"
            lines.append(f"edge {e} {sign} : [{', '.join(str(x) for x in mfg.mu(d))}]")
    lines.append("J:")
    lines += [" ".join(str(x) for x in row) for row in mfg.J]
    return lines


def cmd_gen(args, out) -> int:
    if args.genus < 1:
        raise InputError("genus must be at least 1")
    if args.kind == "theta":
        if args.genus != 1:
            raise InputError("the theta graph has genus 1")
        fg = theta_spine()
    else:
        fg = standard_spine(args.genus)
    _write(args.out, serialize_fatgraph(fg) + "\n", out)
    return 0


def cmd_info(args, out) -> int:
    fg = _read_graph(args.input)
    mfg = mark(fg)
    omega = omega_of(mfg.J)
    types = cc.vertex_types(mfg)
    lines = [
        f"genus: {mfg.genus}",
        f"vertices: {fg.num_vertices}",
        f"edges: {fg.num_edges}",
        "boundary word: " + " ".join(edge_label(fg, d) for d in fg.word.word),
    ]
    for v, t in enumerate(types):
        inc = " ".join(edge_label(fg, d) for d in incoming_cycle(fg, v))
        lines.append(f"vertex {v}: type {t} incoming ({inc}) eta {cc.eta(mfg, v).dump()}")
    lines.append(f"type 2 vertices: {types.count(2)}")
    lines += marking_dump(mfg)
    xi = cc.xi(mfg)
    xp, xt = cc.xi_prime(mfg), cc.xi_tilde(mfg)
    lines += [
        f"omega (form): {omega.dump()}",
        f"omega (vertices): {cc.omega_vertices(mfg).dump()}",
        f"xi: {xi.dump()}",
        f"xi in S2: {'yes' if is_in_S2(xi) else 'no'}",
        f"xi': {xp.dump()}",
        f"xi~: {xt.dump()}",
        f"zeta: {(xp - xt).dump()}",
    ]
    out.write("\n".join(lines) + "\n")
    return 0


def cmd_flip(args, out) -> int:
    fg = _read_graph(args.input)
    mfg = mark(fg)
    try:
        val = cc.s_flip(mfg, args.edge)
    except FatgraphError as exc:
        raise InputError(str(exc)) from None
    new, _ = flip(fg, args.edge)
    mv = val.move
    lines = [
        f"flip edge {args.edge}: " + " ".join(f"{k}={edge_label(fg, getattr(mv, k))}" for k in "abcd"),
        f"s: {val.s.dump()}",
        f"s': {val.s_prime.dump()}",
        f"s'': {val.s_dprime.dump()}",
    ]
    report = cc.verify_coboundary(mfg, args.edge)
    lines += report.lines()
    if args.out:
        _write(args.out, serialize_fatgraph(new) + "\n", out)
    else:
        lines.append("graph: " + serialize_fatgraph(new))
    out.write("\n".join(lines) + "\n")
    return 0 if report.passed else 1


def cmd_walk(args, out) -> int:
    fg = _read_graph(args.input)
    walk = random_walk(fg, args.steps, args.seed)
    current = mark(fg)
    failures = 0
    for step, mv in enumerate(walk.moves, 1):
        reports = []
        if args.checks in ("coboundary", "all"):
            reports.append(cc.verify_coboundary(current, mv.edge_id))
        current, _ = flip_marked(current, mv.edge_id)
        if args.checks in ("identities", "all"):
            reports.append(cc.verify_identities(current))
        for r in reports:
            if not r.passed:
                failures += 1
                out.write(f"step {step}:\n" + str(r) + "\n")
    if walk.stopped_early:
        out.write("walk stopped early: no flippable edge\n")
    out.write(f"steps={len(walk.moves)} failures={failures}\n")
    return 0 if failures == 0 else 1


def _suite_reports(mfg, which: str):
    fg = mfg.graph
    edges = fg.edges
    if which == "coboundary":
        return [cc.verify_coboundary(mfg, e) for e in flippable_edges(fg)]
    if which == "pentagon":
        return [cc.verify_pentagon(mfg, f, g) for f in edges for g in edges if f != g]
    if which == "commutativity":
        return [cc.verify_commutativity(mfg, e1, e2) for e1 in edges for e2 in edges if e1 < e2]
    return [cc.verify_identities(mfg)]


def cmd_verify(args, out) -> int:
    fg = _read_graph(args.input)
    suites = SUITES if args.which == "all" else (args.which,)
    instances = [("", mark(fg))]
    if args.trials:
        rng = make_rng(args.seed)
        current = fg
        for t in range(args.trials):
            walk = random_walk(current, 2 * fg.num_edges, int(rng.integers(2**63)))
            current = list(walk.graphs())[-1]
            instances.append((f"t{t + 1}:", mark(current)))
    counts = {cc.PASS: 0, cc.FAIL: 0, cc.NA: 0}
    for prefix, mfg in instances:
        for suite in suites:
            for r in _suite_reports(mfg, suite):
                for line in r.lines():
                    if line.startswith("CHECK "):
                        line = "CHECK " + prefix + line[len("CHECK "):]
                        counts[line.rsplit(" ", 1)[1]] += 1
                    out.write(line + "\n")
    out.write(f"summary: pass={counts[cc.PASS]} fail={counts[cc.FAIL]} skipped={counts[cc.NA]}\n")
    return 1 if counts[cc.FAIL] else 0


def cmd_export(args, out) -> int:
    fg = _read_graph(args.input)
    text = to_dot(fg) if args.format == "dot" else serialize_fatgraph(fg) + "\n"
    _write(args.out, text, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fatspine", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a standard spine as fatgraph-v1 JSON")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--kind", choices=("theta", "standard"), default="standard")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("info", help="markings, vertex types, and all cochains of a spine")
    p.add_argument("input")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("flip", help="flip one edge and report the cocycle values")
    p.add_argument("input")
    p.add_argument("--edge", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_flip)

    p = sub.add_parser("walk", help="seeded random flip walk with optional checks")
    p.add_argument("input")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--checks", choices=("none", "coboundary", "identities", "all"), default="coboundary")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("input")
    p.add_argument("--which", choices=SUITES + ("all",), default="all")
    p.add_argument("--trials", type=int, default=0,
                   help="also verify this many graphs reached by seeded random walks")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="export as DOT or JSON")
    p.add_argument("input")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "steps", 0) < 0 or getattr(args, "trials", 0) < 0:
        print("fatspine: error: counts must be non-negative", file=sys.stderr)
        return 2
    try:
        return args.func(args, out)
    except (InputError, FatgraphError) as exc:
        # FatgraphError here means the input graph lacks a property the command needs
        print(f"fatspine: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

"""``locc`` command-line front end.

Exit codes: 0 when the property holds, 1 when it fails (a witness is
printed), 2 on usage or input errors.  Graphs are read as newline-delimited
graph6 from a file or stdin, or as a single edge list with
``--input-format edgelist`` (``--format edgelist`` is accepted as a
shorthand).  Every JSON certificate is verified before it is printed.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Iterator, Sequence

from . import certificates as cert
from . import chordality as ch
from . import cover as cv
from . import cyclespace as cs
from . import separators as sp
from .errors import LoccError
from .generators import FAMILIES, GeneratorSpec, generate_stream
from .graph import Graph, emit_edge_list, emit_graph6, parse_edge_list, read_graph6_stream
from .verify import SUITES, verify_stream

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_r_range(text: str) -> list[int]:
    out: list[int] = []
    for chunk in text.split(","):
        lo, _, hi = chunk.partition("-")
        try:
            a = int(lo)
            b = int(hi) if hi else a
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad r range {text!r}") from None
        out.extend(range(a, b + 1))
    return out


def _read_graphs(args) -> Iterator[Graph]:
    fmt = args.input_format
    if args.format == "edgelist":
        fmt = "edgelist"
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="ascii") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from None
    if fmt == "edgelist":
        yield parse_edge_list(text)
    else:
        yield from read_graph6_stream(text.splitlines())


def _out(args, certificate: cert.Certificate, text: str | None = None) -> None:
    body = cert.emit(certificate)
    if args.format == "text" and text is not None:
        print(text)
    else:
        print(body)


def _describe(witness, center=None) -> str:
    if isinstance(witness, ch.WheelWitness):
        return f"wheel hub={witness.hub} rim={list(witness.rim.cycle)}"
    where = f" in ball around {center}" if center is not None else ""
    return f"hole {list(witness.cycle)}{where}"


# ---------------------------------------------------------------- subcommands


def cmd_check(args) -> int:
    status = EXIT_OK
    for G in _read_graphs(args):
        c = cert.local_chordality_certificate(G, args.r, args.strategy)
        holds = c.kind == "verdict"
        if holds:
            text = f"{emit_graph6(G)}: {args.r}-locally chordal"
        else:
            res = ch.is_r_locally_chordal(G, args.r, "holes-wheels")
            text = f"{emit_graph6(G)}: not {args.r}-locally chordal; {_describe(res.witness)}"
            status = EXIT_FAIL
        _out(args, c, text)
    return status


def cmd_holes(args) -> int:
    status = EXIT_OK
    for G in _read_graphs(args):
        hole = ch.least_hole(G) if args.r is None else ch.find_short_hole(G, args.r)
        prop = "chordal" if args.r is None else "r-chordal"
        if hole is None:
            _out(args, cert.verdict_certificate(G, prop, True, r=args.r), f"{emit_graph6(G)}: no hole")
        else:
            status = EXIT_FAIL
            _out(args, cert.witness_certificate(G, hole, r=args.r), f"{emit_graph6(G)}: {_describe(hole)}")
    return status


def cmd_wheels(args) -> int:
    status = EXIT_OK
    for G in _read_graphs(args):
        wheel = ch.find_induced_wheel(G)
        if wheel is None:
            _out(args, cert.verdict_certificate(G, "wheel-free", True), f"{emit_graph6(G)}: wheel-free")
        else:
            status = EXIT_FAIL
            _out(args, cert.witness_certificate(G, wheel), f"{emit_graph6(G)}: {_describe(wheel)}")
    return status


def cmd_cover(args) -> int:
    status = EXIT_OK
    for G in _read_graphs(args):
        cover = cv.truncated_local_cover(G, args.r, args.base, args.R, args.budget)
        report = cert.cover_checks(cover)
        certificate = cert.cover_certificate(cover, report)
        if report.verdict != "pass":
            status = EXIT_FAIL
        if args.format == "dot":
            cert.emit(certificate)
            sys.stdout.write(cv.cover_to_dot(cover))
        else:
            _out(args, certificate, cv.cover_to_text(cover).rstrip("\n"))
    return status


def cmd_seps(args) -> int:
    status = EXIT_OK
    for G in _read_graphs(args):
        if args.dirac:
            res = sp.dirac_check(G)
            if not res.holds:
                status = EXIT_FAIL
            c = cert.verdict_certificate(G, "minimal-separators-cliques", res.holds)
            text = f"{emit_graph6(G)}: minimal separators {'all cliques' if res.holds else 'include ' + str(sorted(res.witness))}"
            _out(args, c, text)
            continue
        if args.minimal:
            seps = sp.minimal_local_separators(G, args.r)
            if any(not sp.is_clique(G, s.X) for s in seps):
                status = EXIT_FAIL
            lines = [f"X={sorted(s.X)} u={s.u} w={s.w} v={s.v} clique={sp.is_clique(G, s.X)}" for s in seps]
            _out(args, cert.separator_certificate(G, args.r, seps, minimal=True), "\n".join(lines) or "none")
            continue
        res = sp.all_minimal_separators_cliques(G, args.r)
        if res.holds:
            c = cert.verdict_certificate(G, "minimal-local-separators-cliques", True, r=args.r)
            _out(args, c, f"{emit_graph6(G)}: every minimal {args.r}-local separator is a clique")
        else:
            status = EXIT_FAIL
            s = res.witness
            c = cert.separator_certificate(G, args.r, [s], minimal=True)
            _out(args, c, f"{emit_graph6(G)}: non-clique minimal separator X={sorted(s.X)} (u={s.u} w={s.w} v={s.v})")
    return status


def _parse_cycle(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad cycle {text!r}; expected comma-separated vertices") from None


def cmd_cyclespace(args) -> int:
    status = EXIT_OK
    for G in _read_graphs(args):
        if args.express_cycle:
            cyc = _parse_cycle(args.express_cycle)
            k = len(cyc)
            if k < 3 or len(set(cyc)) != k or not all(G.has_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k)):
                raise UsageError(f"{cyc} is not a cycle of the input graph")
            vec = cs.EdgeVector.from_cycle(G, cyc)
            tris = cs.express_in_triangles(G, vec)
            if tris is None:
                status = EXIT_FAIL
                c = cert.triangle_certificate(G, vec.edges(), None)
                _out(args, c, f"cycle {cyc} is not a sum of triangles")
            else:
                c = cert.triangle_certificate(G, vec.edges(), tris)
                _out(args, c, " + ".join("".join(map(str, t)) if G.n <= 10 else str(list(t)) for t in tris))
        elif args.chordal:
            holds = cs.chordal_via_cyclespace(G)
            status = max(status, EXIT_OK if holds else EXIT_FAIL)
            _out(args, cert.verdict_certificate(G, "chordal-via-cyclespace", holds), f"chordal: {holds}")
        else:
            res = cs.short_cycles_generated_by_triangles(G, args.r, args.method)
            c = cert.verdict_certificate(G, "short-cycles-generated", res.holds, r=args.r)
            if res.holds:
                text = f"every cycle of length <= {args.r} is a sum of triangles"
            else:
                status = EXIT_FAIL
                text = f"cycle {list(res.witness)} is not a sum of triangles"
                c.payload["witness"] = list(res.witness)
            _out(args, c, text)
    return status


def cmd_verify(args) -> int:
    suites = args.suites.split(",") if args.suites else list(SUITES)
    rs = args.r_range if args.r_range else [args.r]
    report = verify_stream(_read_graphs(args), rs, suites, jobs=args.jobs)
    d = report.to_dict()
    if args.format == "text":
        print(f"graphs: {d['graphs']}  disagreements: {d['disagreements']}")
        for name, t in d["suites"].items():
            print(f"  {name}: checked={t['checked']} skipped={t['skipped']} inconclusive={t['inconclusive']} "
                  f"disagreements={len(t['disagreements'])}")
    else:
        print(json.dumps(d, sort_keys=True))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_gen(args) -> int:
    params = {"n": args.n, "p": args.p, "k": args.k, "chords": args.chords}
    spec = GeneratorSpec(args.family, {k: v for k, v in params.items() if v is not None}, args.seed)
    for G in generate_stream(spec, args.count):
        if args.format == "edgelist":
            sys.stdout.write(f"# {emit_graph6(G)}\n")
            sys.stdout.write(emit_edge_list(G))
        else:
            print(emit_graph6(G))
    return EXIT_OK


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", default="-", help="graph6 file (default: stdin)")
    common.add_argument("--format", choices=("json", "text", "dot", "edgelist"), default="json")
    common.add_argument("--input-format", choices=("graph6", "edgelist"), default="graph6")

    p = _Parser(prog="locc", description="Local chordality toolkit with checkable certificates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", parents=[common], help="is every r/2-ball chordal?")
    s.add_argument("-r", type=int, default=3, help="locality parameter (default 3)")
    s.add_argument("--strategy", choices=("direct", "holes-wheels"), default="direct")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("holes", parents=[common], help="least hole (of length <= r if -r given)")
    s.add_argument("-r", type=int, default=None, help="only holes of length <= r")
    s.set_defaults(func=cmd_holes)

    s = sub.add_parser("wheels", parents=[common], help="find an induced wheel")
    s.add_argument("-r", type=int, default=3, help="locality parameter (default 3)")
    s.set_defaults(func=cmd_wheels)

    s = sub.add_parser("cover", parents=[common], help="truncated r-local cover with checks")
    s.add_argument("-r", type=int, default=3, help="locality parameter (default 3)")
    s.add_argument("-R", type=int, default=None, help="truncation depth (default r + 2)")
    s.add_argument("--budget", type=int, default=None, help="walk-length budget L (default 4R)")
    s.add_argument("--base", type=int, default=0)
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("seps", parents=[common], help="minimal r-local separators")
    s.add_argument("-r", type=int, default=3, help="locality parameter (default 3)")
    s.add_argument("--minimal", action="store_true", help="list every minimal r-local separator")
    s.add_argument("--dirac", action="store_true", help="check global minimal separators instead")
    s.set_defaults(func=cmd_seps)

    s = sub.add_parser("cyclespace", parents=[common], help="triangle span of the cycle space")
    s.add_argument("-r", type=int, default=3, help="locality parameter (default 3)")
    s.add_argument("--express-cycle", metavar="V0,V1,...", help="write this cycle as a sum of triangles")
    s.add_argument("--chordal", action="store_true", help="decide chordality through the cycle space")
    s.add_argument("--method", choices=("enumerate", "fast"), default="enumerate")
    s.set_defaults(func=cmd_cyclespace)

    s = sub.add_parser("verify", parents=[common], help="cross-check the equivalent characterizations")
    s.add_argument("-r", type=int, default=3, help="locality parameter (default 3)")
    s.add_argument("--suites", help=f"comma-separated subset of {','.join(SUITES)}")
    s.add_argument("--r-range", type=_parse_r_range, help="e.g. 3-5 or 3,5,7 (overrides -r)")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="generate graphs as graph6")
    s.add_argument("--family", choices=FAMILIES, required=True)
    s.add_argument("-n", type=int)
    s.add_argument("-p", type=float)
    s.add_argument("-k", type=int)
    s.add_argument("--chords", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "verify" and args.suites:
            bad = set(args.suites.split(",")) - set(SUITES)
            if bad:
                raise UsageError(f"unknown suites: {', '.join(sorted(bad))}")
        return args.func(args)
    except (UsageError, LoccError, ValueError) as exc:
        print(f"locc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line surface: generate, detect, break, verify, bench, serve.

Exit codes: 0 success, 2 parse error, 3 unsupported feature, 4 oracle budget
exceeded, 5 verification failure. Standard output carries only the artifact
(report or program); diagnostics go to stderr. Input "-" reads stdin.
"""

from __future__ import annotations

import argparse
import multiprocessing
import sys
import time
from pathlib import Path

from .errors import BudgetExceededError, NotTightError, ParseError, UnsupportedFeatureError
from .graph import build_graph, to_dimacs
from .instances import HouseSpec, PhpSpec, gen_house, gen_php, manifest_line
from .oracle import enumerate_models
from .pipeline import run_break, run_detect, run_verify
from .smodels import SmodelsDocument, parse, write


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _emit_program(doc: SmodelsDocument, output: str | None, spec=None) -> None:
    text = write(doc)
    if output is None or output == "-":
        sys.stdout.write(text)
        return
    Path(output).write_text(text)
    if spec is not None:
        Path(output + ".manifest").write_text(manifest_line(spec) + "\n")


def cmd_gen_php(args) -> int:
    spec = PhpSpec(pigeons=args.pigeons, holes=args.holes)
    _emit_program(SmodelsDocument(gen_php(spec)), args.output, spec)
    return 0


def cmd_gen_house(args) -> int:
    things = args.things if len(args.things) > 1 else args.things[0]
    spec = HouseSpec(
        persons=args.persons,
        things_per_person=things,
        cabinets=args.cabinets,
        capacity=args.capacity,
        cabinet_cost=args.cabinet_cost,
    )
    _emit_program(SmodelsDocument(gen_house(spec)), args.output, spec)
    return 0


def cmd_detect(args) -> int:
    doc = parse(_read_input(args.input))
    result = run_detect(doc.program, limit=args.limit, seed=args.seed)
    if args.dump_graph:
        Path(args.dump_graph).write_text(to_dimacs(result.graph))
    for i, (raw, symbolic) in enumerate(zip(result.raw_lines(), result.symbolic_lines()), 1):
        print(f"generator {i}: {raw}")
        print(f"  symbolic: {symbolic}")
    stats = result.generators.stats
    suffix = " (limit hit)" if stats.limit_hit else ""
    print(f"{len(result.generators)} generators{suffix}")
    print(f"nodes explored: {stats.nodes_explored}")
    print(f"graph: {result.graph.vertex_count} vertices, {result.graph.edge_count} edges")
    return 0


def cmd_break(args) -> int:
    doc = parse(_read_input(args.input))
    # detection always ignores minimize statements (they contribute nothing to
    # the graph); the flag is accepted for pipeline compatibility
    result = run_break(doc.program, limit=args.limit, seed=args.seed)
    _emit_program(SmodelsDocument(result.extended, doc.trailing), args.output)
    stats = result.detect.generators.stats
    print(
        f"{len(result.detect.generators)} generators, {result.rules_added} rules and "
        f"{result.fresh_atoms} atoms added",
        file=sys.stderr,
    )
    if args.verify:
        report = run_verify(doc.program, limit=args.limit, seed=args.seed, instance=args.input)
        for line in report.lines():
            print(line, file=sys.stderr)
        if not report.passed:
            return 5
    return 0


def cmd_verify(args) -> int:
    doc = parse(_read_input(args.input))
    report = run_verify(
        doc.program,
        limit=args.limit,
        seed=args.seed,
        atom_budget=args.atom_budget,
        closure_budget=args.closure_budget,
        instance=args.input,
    )
    for line in report.lines():
        print(line)
    return 0 if report.passed else 5


def _bench_cell(payload):
    """Worker for one instance x limit cell; runs in a child process."""
    params, limit, oracle_budget = payload
    spec = HouseSpec(**params)
    program = gen_house(spec)
    t0 = time.perf_counter()
    result = run_break(program, limit=limit)
    elapsed = time.perf_counter() - t0
    cell = {
        "time": elapsed,
        "generators": len(result.detect.generators),
        "vertices": result.detect.graph.vertex_count,
        "edges": result.detect.graph.edge_count,
    }
    try:
        before = enumerate_models(program, atom_budget=oracle_budget)
        after = enumerate_models(result.extended, atom_budget=oracle_budget)
        cell["models"] = (len(before), len(after))
    except BudgetExceededError:
        pass
    return cell


def _format_cell(cell) -> str:
    parts = [
        f"t={cell['time']:.3f}s",
        f"gens={cell['generators']}",
        f"v={cell['vertices']}",
        f"e={cell['edges']}",
    ]
    if "models" in cell:
        before, after = cell["models"]
        parts.append(f"m={before}->{after}")
    return " ".join(parts)


def cmd_bench(args) -> int:
    limits: list[int | None] = []
    for token in args.limits.split(","):
        token = token.strip()
        limits.append(None if token in ("default", "none") else int(token))
    # unlimited first, then ascending caps, mirroring the usual table layout
    limits = sorted(set(limits), key=lambda l: (l is not None, l or 0))

    header = ["instance", "atoms", "rules"]
    header += ["default" if l is None else f"limit={l}" for l in limits]
    print("\t".join(header))

    ctx = multiprocessing.get_context("fork")
    for persons in args.persons:
        params = dict(
            persons=persons,
            things_per_person=args.things,
            cabinets=-(-args.things // args.capacity) * persons,
            capacity=args.capacity,
        )
        spec = HouseSpec(**params)
        program = gen_house(spec)
        row = [spec.name(), str(program.max_atom), str(len(program.rules))]
        for limit in limits:
            with ctx.Pool(1) as pool:
                job = pool.apply_async(_bench_cell, ((params, limit, args.oracle_budget),))
                try:
                    cell = job.get(timeout=args.timeout)
                    row.append(_format_cell(cell))
                except multiprocessing.TimeoutError:
                    pool.terminate()
                    row.append("TO")
        print("\t".join(row))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symbreak",
        description="Detect and break permutational symmetries of grounded logic programs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-php", help="generate a pigeon-hole instance")
    p.add_argument("pigeons", type=int)
    p.add_argument("holes", type=int)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen_php)

    p = sub.add_parser("gen-house", help="generate a cabinet-configuration instance")
    p.add_argument("--persons", type=int, required=True)
    p.add_argument(
        "--things", type=int, nargs="+", required=True,
        help="things per person (one value, or one per person)",
    )
    p.add_argument("--cabinets", type=int, required=True)
    p.add_argument("--capacity", type=int, default=2)
    p.add_argument("--cabinet-cost", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen_house)

    p = sub.add_parser("detect", help="report symmetry generators")
    p.add_argument("input")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dump-graph", default=None, help="write the colored graph (DIMACS-like)")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("break", help="append symmetry-breaking constraints")
    p.add_argument("input")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ignore-minimize", action="store_true")
    p.add_argument("--verify", action="store_true", help="oracle-check the transformation")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_break)

    p = sub.add_parser("verify", help="oracle-check detection and breaking")
    p.add_argument("input")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--atom-budget", type=int, default=26)
    p.add_argument("--closure-budget", type=int, default=10**4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="preprocessing benchmark over the house family")
    p.add_argument("--persons", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--things", type=int, default=2, help="things per person")
    p.add_argument("--capacity", type=int, default=2)
    p.add_argument("--limits", default="default,5", help="comma list: default or integers")
    p.add_argument("--timeout", type=float, default=60.0, help="per-cell wall clock (seconds)")
    p.add_argument("--oracle-budget", type=int, default=16)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedFeatureError as exc:
        print(f"unsupported feature: {exc}", file=sys.stderr)
        return 3
    except (BudgetExceededError, NotTightError) as exc:
        print(f"oracle budget: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

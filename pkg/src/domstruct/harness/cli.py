"""Command-line entry point: ``domstruct <command> ...``.

Exit codes: 0 clean, 1 usage or I/O error, 2 a claim was REFUTED and
``--strict`` was given.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .. import families
from ..cycles import find_structures, is_domination_structure
from ..formats import FormatError, parse_edge_list, parse_graph6, read_graph6_lines, write_dot, write_graph6, write_report
from ..graph import Graph, GraphInputError
from ..labeling import enumerate_labelings
from ..oracle import enumerate_all_dsets, min_dominating_set_exact
from ..pipeline import minimum_labeled_sets, solve_cubic
from ..scheme_k import construct_K, parse_policy, trace_to_dict
from ..verdicts import BudgetExceeded, Verdict
from .corpus import corpus_json, load_source, run_corpus
from .figures import render_report_figures
from .generate import GenerationError, random_cubic
from .verify import RunConfig, verify_graph

EXIT_OK, EXIT_USAGE, EXIT_REFUTED = 0, 1, 2

NAMED = {
    "k4": lambda: families.complete_graph(4),
    "k33": lambda: families.complete_bipartite(3, 3),
    "prism": families.prism,
    "cube": families.cube,
    "petersen": families.petersen,
    "bowtie": families.bowtie,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _named(spec: str) -> Graph:
    key = spec.lower()
    if key in NAMED:
        return NAMED[key]()
    if key[:1] in "cpk" and key[1:].isdigit():
        n = int(key[1:])
        return {"c": families.cycle_graph, "p": families.path_graph, "k": families.complete_graph}[key[0]](n)
    raise UsageError(f"unknown named graph {spec!r}")


def read_graph(args: argparse.Namespace) -> tuple[Graph, str]:
    if args.graph6:
        return parse_graph6(args.graph6), "inline"
    if not args.input:
        raise UsageError("give --input PATH, --input named:NAME or --graph6 STRING")
    if args.input.startswith("named:"):
        return _named(args.input[6:]), "inline"
    data = sys.stdin.buffer.read() if args.input == "-" else Path(args.input).read_bytes()
    if args.format == "edgelist":
        return parse_edge_list(data.decode()), "edgelist"
    graphs = read_graph6_lines(data)
    if not graphs:
        raise UsageError("input holds no graphs")
    if not 0 <= args.index < len(graphs):
        raise UsageError(f"--index {args.index} out of range ({len(graphs)} graphs)")
    return graphs[args.index], "graph6"


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        oracle_budget=args.oracle_budget,
        policy=args.policy,
        all_Y=args.all_Y,
        max_iterations=args.max_iters,
        timings=getattr(args, "timings", False),
        strict=args.strict,
        jobs=getattr(args, "jobs", 1),
    )


def _emit_json(path: str | None, text: str) -> None:
    if not path:
        return
    if path == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n")


def _fmt(vs) -> str:
    return "{" + ",".join(map(str, sorted(vs))) + "}"


def cmd_construct(args: argparse.Namespace) -> int:
    g, _ = read_graph(args)
    trace = construct_K(g, parse_policy(args.policy), args.max_iters)
    for s in trace.steps:
        cyc = f" cycle={list(s.cycle.vertices)}" if s.cycle else ""
        print(f"k={s.k_before}\t{s.kind.value}\tat={s.chosen}{cyc}\tadded={[list(e) for e in s.added]}")
    print(f"terminated={trace.terminated}\tsteps={trace.iterations}\toutput={write_graph6(trace.output).decode()}")
    _emit_json(args.json, json.dumps(trace_to_dict(trace), indent=2))
    return EXIT_OK


def _structure_for(g: Graph, args: argparse.Namespace):
    kg = construct_K(g, parse_policy(args.policy), args.max_iters).output
    dom = [h for h in find_structures(kg) if is_domination_structure(kg, h)]
    return kg, (dom[0] if dom else None)


def cmd_labelings(args: argparse.Namespace) -> int:
    g, _ = read_graph(args)
    kg, h = _structure_for(g, args)
    if h is None:
        print("K(G) has no domination structure")
        return EXIT_OK
    enum = enumerate_labelings(kg, h)
    rows = []
    for lab in enum.labelings:
        print(f"start={lab.start_vertex}\t{lab.direction.value}\tconsistent={lab.consistent}"
              f"\tlabeled={_fmt(lab.labeled)}\tskipped={sorted(lab.skipped_cycles)}")
        rows.append({"start": lab.start_vertex, "direction": lab.direction.value,
                     "consistent": lab.consistent, "labeled": sorted(lab.labeled),
                     "skipped_cycles": sorted(lab.skipped_cycles), "tie_breaks": lab.tie_breaks})
    print(f"distinct={len(enum.labelings)}\tconflicts={enum.conflicts}\tattempts={enum.raw_attempts}")
    _emit_json(args.json, json.dumps({"labelings": rows, "conflicts": enum.conflicts}, indent=2))
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    g, _ = read_graph(args)
    res = solve_cubic(g, _config(args).solve_config())
    for r in res.levels:
        print(f"level={r.level}\tn={r.graph_before.n}\tY={_fmt(r.to_root[v] for v in r.Y_used)}"
              f"\t|W'|={len(r.W_prime)}\t|W''|={len(r.W_double_prime)}\tbranch={r.chosen_branch.value}"
              f"\tG''={r.structural_check.value}")
    print(f"candidate={_fmt(res.candidate)}\tsize={len(res.candidate)}\tgamma={res.oracle_gamma}"
          f"\tverdict={res.verdict.value}")
    for v in res.violations:
        print(f"violation: {v}")
    payload = {"candidate": sorted(res.candidate), "gamma": res.oracle_gamma,
               "verdict": res.verdict.value, "dominates": res.dominates, "violations": res.violations}
    _emit_json(args.json, json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    g, _ = read_graph(args)
    res = min_dominating_set_exact(g, args.oracle_budget)
    print(f"gamma={res.gamma}\twitness={_fmt(res.witness)}\tnodes={res.nodes_explored}\tbudget_hit={res.budget_hit}")
    payload = {"gamma": res.gamma, "witness": sorted(res.witness), "budget_hit": res.budget_hit}
    if args.all:
        enum = enumerate_all_dsets(g, args.oracle_budget)
        for s in enum.sets:
            print(_fmt(s))
        payload["dsets"] = [sorted(s) for s in enum.sets]
    _emit_json(args.json, json.dumps(payload, indent=2))
    return EXIT_OK


def _print_claims(doc) -> None:
    for c in doc.claims:
        print(f"{doc.graph_id}\t{c.name}\t{c.verdict.value}")


def cmd_verify(args: argparse.Namespace) -> int:
    g, fmt = read_graph(args)
    config = _config(args)
    doc = verify_graph(g, config, graph_id=args.id or write_graph6(g).decode(), input_format=fmt)
    _print_claims(doc)
    _emit_json(args.json, write_report(doc))
    refuted = any(c.verdict is Verdict.REFUTED for c in doc.claims)
    return EXIT_REFUTED if refuted and config.strict else EXIT_OK


def cmd_corpus(args: argparse.Namespace) -> int:
    if not args.input:
        raise UsageError("corpus needs --input (gen:..., catalog[:n], a graph6 file or a directory)")
    entries = load_source(args.input, args.format)
    config = _config(args)
    result = run_corpus(entries, config)
    for doc in result.reports:
        _print_claims(doc)
    for name, counts in result.summary["claims"].items():
        print("summary\t" + name + "\t" + " ".join(f"{k}={v}" for k, v in counts.items()))
    _emit_json(args.json, corpus_json(result, config, args.input))
    if args.figures:
        for p in render_report_figures(result.reports, args.figures):
            print(f"wrote {p}")
    return EXIT_REFUTED if result.refuted and config.strict else EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    lines = [write_graph6(random_cubic(args.n, args.seed + i)).decode() for i in range(args.count)]
    text = "\n".join(lines) + ("\n" if lines else "")
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> int:
    g, _ = read_graph(args)
    trace = construct_K(g, parse_policy(args.policy), args.max_iters)
    kg = trace.output
    dom = [h for h in find_structures(kg) if is_domination_structure(kg, h)]
    labeled = minimum_labeled_sets(kg, dom[0]) if dom else []
    text = write_dot(kg, trace.added_edges, labeled[0] if labeled else ())
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="graph file, '-' for stdin, or named:NAME (k4, k33, prism, cube, petersen, bowtie, cN, pN, kN)")
    common.add_argument("--graph6", help="inline graph6 string")
    common.add_argument("--format", choices=("graph6", "edgelist"), default=None)
    common.add_argument("--index", type=int, default=0, help="which graph of a multi-graph file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-iters", type=int, default=None, dest="max_iters")
    common.add_argument("--oracle-budget", type=int, default=10**8, dest="oracle_budget")
    common.add_argument("--policy", default="canonical", help="canonical, mod1-first, longest or random:SEED")
    common.add_argument("--all-Y", action="store_true", dest="all_Y")
    common.add_argument("--json", help="write JSON output to PATH ('-' for stdout)")
    common.add_argument("--strict", action="store_true")

    p = _Parser(prog="domstruct", description="Domination-structure construction and claim verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("construct", parents=[common], help="run scheme K and print the trace").set_defaults(func=cmd_construct)
    sub.add_parser("labelings", parents=[common], help="labelings of K(G)").set_defaults(func=cmd_labelings)
    sub.add_parser("solve", parents=[common], help="cubic cascade").set_defaults(func=cmd_solve)
    o = sub.add_parser("oracle", parents=[common], help="exact domination number")
    o.add_argument("--all", action="store_true", help="list every minimum dominating set")
    o.set_defaults(func=cmd_oracle)
    v = sub.add_parser("verify", parents=[common], help="check every claim on one graph")
    v.add_argument("--id", default=None)
    v.add_argument("--timings", action="store_true")
    v.set_defaults(func=cmd_verify)
    c = sub.add_parser("corpus", parents=[common], help="verify a corpus of graphs")
    c.add_argument("--figures", help="directory for summary.csv and PNG figures")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--timings", action="store_true")
    c.set_defaults(func=cmd_corpus)
    gen = sub.add_parser("gen", parents=[common], help="random connected cubic graphs as graph6")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--output")
    gen.set_defaults(func=cmd_gen)
    d = sub.add_parser("export-dot", parents=[common], help="DOT of K(G) with added edges marked")
    d.add_argument("--output")
    d.set_defaults(func=cmd_export_dot)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, GraphInputError, GenerationError, BudgetExceeded, ValueError) as exc:
        print(f"domstruct: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"domstruct: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

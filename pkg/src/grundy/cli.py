"""Command-line front end.

    grundy solve [FILE]                 gamma + witness per input graph (JSON lines)
    grundy batch [FILE]                 same as solve; meant for large files with --workers
    grundy verify GRAPH SEQ...          footprint log of one sequence
    grundy generate --family F --n N    a construction with its witness
    grundy check --suite S --corpus C   theorem checks, JSON-lines reports + CSV summary
    grundy search --target T            extremal search over single deletions

Inputs are graph6 or edge-list text ("n m" then m lines "u v"), detected
per record.  Verbosity comes from the GRUNDY_LOG environment variable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import constructions as cons
from . import harness
from .engine import TOTAL, SequenceError, Variant, validate_sequence
from .graph import Graph, GraphError, parse_graph6, read_graphs, to_graph6
from .solver import SolveOptions, WitnessError, solve

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MALFORMED = 3
EXIT_BUDGET = 4
EXIT_THEOREM_FAIL = 5
EXIT_WITNESS = 6

log = logging.getLogger("grundy")

SUITES = {
    "all": harness.ALL_CHECKS,
    "bounds": harness.BOUND_CHECKS,
    "removal": harness.REMOVAL_CHECKS,
    **{name: (name,) for name in harness.ALL_CHECKS},
}


@dataclass
class RunConfig:
    variant: str = "l"
    memo_cap: int = 24
    node_budget: int | None = None
    seed: int = harness.DEFAULT_SEED
    workers: int = 1
    fmt: str = "json"
    out: str | None = None
    one_indexed: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        return cls(ns.variant, ns.memo_cap, ns.node_budget, ns.seed, ns.workers, ns.format, ns.out, ns.one_indexed)

    def solve_options(self) -> SolveOptions:
        return SolveOptions(memo_cap=self.memo_cap, node_budget=self.node_budget)

    def to_flags(self) -> list[str]:
        flags = ["--variant", self.variant, "--memo-cap", str(self.memo_cap), "--seed", str(self.seed)]
        if self.node_budget is not None:
            flags += ["--node-budget", str(self.node_budget)]
        if self.one_indexed:
            flags.append("--one-indexed")
        return flags

    def as_dict(self) -> dict:
        return {
            "variant": self.variant,
            "memo_cap": self.memo_cap,
            "node_budget": self.node_budget,
            "seed": self.seed,
            "one_indexed": self.one_indexed,
        }


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--variant", default="l", choices=["classic", "total", "l"], help="Grundy flavor (default: l)")
    p.add_argument("--memo-cap", type=int, default=24, help="largest n that uses the subset memo (default: 24)")
    p.add_argument("--node-budget", type=int, default=None, help="search-node cap per solve (default: none)")
    p.add_argument("--seed", type=int, default=harness.DEFAULT_SEED, help="random seed (default: 42)")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default: 1)")
    p.add_argument("--format", default="json", choices=["json", "csv"], help="output format (default: json)")
    p.add_argument("--out", default=None, help="write output here instead of stdout")
    p.add_argument("--one-indexed", action="store_true", help="print vertices as 1..n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grundy", description="Exact Grundy-type domination sequences.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("solve", "batch"):
        p = sub.add_parser(name, help="compute gamma and a witness for each input graph")
        p.add_argument("input", nargs="?", default="-", help="graph file (default: stdin)")
        _common(p)

    p = sub.add_parser("verify", help="check one sequence and print its footprint log")
    p.add_argument("graph", help="graph6 string, or a file holding one graph")
    p.add_argument("sequence", nargs="+", help='vertices, e.g. 0 1 3 2 or "0 1 3 2"')
    _common(p)

    p = sub.add_parser("generate", help="emit a construction with its witness")
    p.add_argument("--family", required=True, choices=sorted(cons.FAMILIES) + ["leaf-augment", "saturate", "t-structure"])
    p.add_argument("--n", "--k", dest="size", type=int, default=None, help="family size parameter")
    p.add_argument("--graph", default=None, help="base graph (graph6) for leaf-augment / saturate")
    _common(p)

    p = sub.add_parser("check", help="run theorem checks over a corpus")
    p.add_argument("--suite", default="all", choices=sorted(SUITES))
    p.add_argument("--corpus", default="examples", help="exhaustive | random | examples | path to a graph file")
    p.add_argument("--n", dest="order", type=int, default=5, help="order for the exhaustive corpus (default: 5)")
    p.add_argument("--per-cell", type=int, default=100, help="random graphs per (n, p) cell (default: 100)")
    p.add_argument("--summary", default=None, help="summary CSV path (default: <out>.summary.csv or stderr)")
    p.add_argument("--figure", default=None, help="write a bar chart of the summary to this path")
    p.add_argument("--keep-going", action="store_true", help="do not stop at the first failure")
    _common(p)

    p = sub.add_parser("search", help="extremal search over single deletions")
    p.add_argument("--target", default="edge-deltas", choices=["edge-deltas", "vertex-deltas"])
    p.add_argument("--steps", type=int, default=5000)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--seed-graph", default=None, help="graph6 of the first starting point")
    p.add_argument("--no-stop", action="store_true", help="keep searching after every value is realized")
    p.add_argument("--figure", default=None, help="write a bar chart of observed deltas to this path")
    _common(p)
    return parser


def _open_out(cfg: RunConfig):
    return open(cfg.out, "w", newline="") if cfg.out else sys.stdout


def _command(name: str, cfg: RunConfig, extra: list[str] | None = None) -> str:
    return shlex.join(["grundy", name] + (extra or []) + cfg.to_flags())


def _load_one(text: str) -> Graph:
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    for _, g in read_graphs(text):
        if isinstance(g, GraphError):
            raise g
        return g
    raise GraphError("no graph found")


# -- solve ---------------------------------------------------------------------


def _solve_one(job):
    src, g, variant, opts = job
    if isinstance(g, GraphError):
        return {"input": src, "error": str(g)}
    try:
        r = solve(g, Variant.parse(variant), opts)
    except WitnessError as exc:
        return {"input": src, "error": str(exc), "kind": "witness"}
    except GraphError as exc:
        return {"input": src, "error": str(exc)}
    return {
        "graph6": to_graph6(g),
        "n": g.n,
        "variant": variant,
        "gamma": r.value,
        "witness": r.witness,
        "nodes_explored": r.nodes_explored,
        "memo_hits": r.memo_hits,
        "pruned": r.pruned,
        "elapsed_ms": round(r.elapsed * 1000, 3),
        "exact": r.exact,
    }


SOLVE_FIELDS = ["graph6", "n", "variant", "gamma", "witness", "nodes_explored", "elapsed_ms", "exact", "input", "error"]


def cmd_solve(ns: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(ns)
    text = sys.stdin.read() if ns.input == "-" else open(ns.input).read()
    opts = cfg.solve_options()
    jobs = [(src, g, cfg.variant, opts) for src, g in read_graphs(text)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            records = list(pool.map(_solve_one, jobs, chunksize=max(1, len(jobs) // (cfg.workers * 4))))
    else:
        records = [_solve_one(j) for j in jobs]
    shift = 1 if cfg.one_indexed else 0
    seen = set()
    out = _open_out(cfg)
    try:
        writer = None
        if cfg.fmt == "csv":
            writer = csv.DictWriter(out, SOLVE_FIELDS, extrasaction="ignore")
            writer.writeheader()
        for rec in records:
            if "error" in rec:
                seen.add(EXIT_WITNESS if rec.get("kind") == "witness" else EXIT_MALFORMED)
            else:
                rec["witness"] = [v + shift for v in rec["witness"]]
                if not rec["exact"]:
                    seen.add(EXIT_BUDGET)
            rec["command"] = _command("solve", cfg)
            if writer:
                row = dict(rec)
                if "witness" in row:
                    row["witness"] = " ".join(map(str, row["witness"]))
                writer.writerow(row)
            else:
                out.write(json.dumps(rec) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    for code in (EXIT_WITNESS, EXIT_MALFORMED, EXIT_BUDGET):
        if code in seen:
            return code
    return EXIT_OK


# -- verify --------------------------------------------------------------------


def cmd_verify(ns: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(ns)
    try:
        g = _load_one(ns.graph)
    except GraphError as exc:
        print(json.dumps({"input": ns.graph, "error": str(exc)}))
        return EXIT_MALFORMED
    shift = 1 if cfg.one_indexed else 0
    try:
        seq = [int(t) - shift for t in " ".join(ns.sequence).replace(",", " ").split()]
    except ValueError as exc:
        print(json.dumps({"input": ns.sequence, "error": f"bad sequence: {exc}"}))
        return EXIT_MALFORMED
    variant = Variant.parse(cfg.variant)
    rec = {"graph6": to_graph6(g), "variant": cfg.variant, "sequence": [v + shift for v in seq]}
    try:
        flog = validate_sequence(g, variant, seq)
    except SequenceError as exc:
        rec.update(valid=False, failed_index=exc.index, reason=exc.reason, message=str(exc))
        status = EXIT_INVALID
    else:
        rec.update(
            valid=True,
            length=len(flog),
            steps=[
                {"index": i, "vertex": v + shift, "newly": [u + shift for u in new]}
                for i, (v, new) in enumerate(zip(seq, flog.newly_sets()))
            ],
        )
        status = EXIT_OK
    rec["command"] = _command("verify", cfg, [ns.graph] + [str(v + shift) for v in seq])
    out = _open_out(cfg)
    try:
        out.write(json.dumps(rec) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return status


# -- generate ----------------------------------------------------------------------


def cmd_generate(ns: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(ns)
    fam = ns.family
    try:
        if fam in cons.FAMILIES:
            if ns.size is None:
                raise cons.ConstructionError(f"--n is required for {fam}")
            rec = cons.FAMILIES[fam](ns.size).as_dict(cfg.one_indexed)
        elif fam == "t-structure":
            if ns.size is None:
                raise cons.ConstructionError("--k is required for t-structure")
            g = cons.t_structure_instance(ns.size)
            w = cons.t_structure_witness(ns.size)
            validate_sequence(g, TOTAL, w)
            shift = 1 if cfg.one_indexed else 0
            rec = {
                "family": fam, "graph6": to_graph6(g), "n": g.n, "variant": "total",
                "witness": [v + shift for v in w], "expected_gamma": 2 * ns.size, "notes": [],
            }
        else:
            if ns.graph is None:
                raise cons.ConstructionError(f"--graph is required for {fam}")
            base = _load_one(ns.graph)
            out = cons.leaf_augment(base) if fam == "leaf-augment" else cons.saturate(base, solve(base).witness)
            rec = out.as_dict(cfg.one_indexed)
    except (cons.ConstructionError, GraphError) as exc:
        print(json.dumps({"family": fam, "error": str(exc)}))
        return EXIT_MALFORMED
    extra = ["--family", fam] + (["--n", str(ns.size)] if ns.size is not None else [])
    extra += ["--graph", ns.graph] if ns.graph else []
    rec["command"] = _command("generate", cfg, extra)
    out = _open_out(cfg)
    try:
        out.write(json.dumps(rec) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


# -- check -------------------------------------------------------------------------


def _corpus(ns: argparse.Namespace, cfg: RunConfig) -> list[Graph]:
    from .graph import enumerate_labeled_graphs

    if ns.corpus == "exhaustive":
        return list(enumerate_labeled_graphs(ns.order))
    if ns.corpus == "random":
        return list(harness.random_corpus(cfg.seed, ns.per_cell))
    if ns.corpus == "examples":
        return [g for _, g in harness.worked_examples()]
    with open(ns.corpus) as fh:
        graphs = []
        for src, g in read_graphs(fh.read()):
            if isinstance(g, GraphError):
                raise GraphError(f"{src!r}: {g}")
            graphs.append(g)
        return graphs


def cmd_check(ns: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(ns)
    if cfg.variant != "l":
        log.warning("theorem checks are about L-sequences; --variant %s ignored", cfg.variant)
    try:
        graphs = _corpus(ns, cfg)
    except (GraphError, OSError) as exc:
        print(json.dumps({"corpus": ns.corpus, "error": str(exc)}))
        return EXIT_MALFORMED
    scfg = harness.SweepConfig(SUITES[ns.suite], cfg.node_budget, cfg.seed, cfg.workers, not ns.keep_going)
    reports = []
    out = _open_out(cfg)
    try:
        for r in harness.run_checks(graphs, scfg):
            reports.append(r)
            out.write(json.dumps(r.as_dict()) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    rows = harness.summarize(reports)
    buf = io.StringIO()
    w = csv.DictWriter(buf, ["theorem_id", "graphs_checked", "passes", "fails", "inconclusive"], lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    summary_path = ns.summary or (cfg.out + ".summary.csv" if cfg.out else None)
    if summary_path:
        with open(summary_path, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stderr.write(buf.getvalue())
    if ns.figure:
        from .plotting import plot_check_summary

        plot_check_summary(rows, ns.figure, title=f"{ns.suite} on {ns.corpus}")
    if any(r["fails"] for r in rows):
        return EXIT_THEOREM_FAIL
    if any(r["inconclusive"] for r in rows):
        return EXIT_BUDGET
    return EXIT_OK


# -- search ---------------------------------------------------------------------------


def cmd_search(ns: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(ns)
    seed_graph = parse_graph6(ns.seed_graph) if ns.seed_graph else None
    extra = ["--target", ns.target, "--steps", str(ns.steps), "--restarts", str(ns.restarts),
             "--n-min", str(ns.n_min), "--n-max", str(ns.n_max)]
    if ns.seed_graph:
        extra += ["--seed-graph", ns.seed_graph]
    if ns.no_stop:
        extra.append("--no-stop")
    try:
        st = harness.extremal_search(
            ns.target, cfg.seed, ns.steps, (ns.n_min, ns.n_max), ns.restarts,
            seed_graph=seed_graph, stop_on_full=not ns.no_stop, node_budget=cfg.node_budget,
        )
    except harness.TheoremViolation as exc:
        print(json.dumps({"error": str(exc), "report": exc.report.as_dict()}))
        return EXIT_THEOREM_FAIL
    rec = st.as_dict()
    rec["command"] = _command("search", cfg, extra)
    out = _open_out(cfg)
    try:
        out.write(json.dumps(rec) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    if ns.figure:
        from .plotting import plot_delta_counts

        plot_delta_counts(rec, ns.figure)
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "batch": cmd_solve,
    "verify": cmd_verify,
    "generate": cmd_generate,
    "check": cmd_check,
    "search": cmd_search,
}


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("GRUNDY_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    ns = build_parser().parse_args(argv)
    return COMMANDS[ns.command](ns)


if __name__ == "__main__":
    sys.exit(main())

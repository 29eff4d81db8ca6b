"""Command line interface.

Every subcommand writes a directory of outputs plus a manifest.json
listing them; reruns with the same inputs and seed produce byte-identical
files. Exit codes: 0 success, 2 bad usage or arguments, 3 input data
errors, 4 unexpected failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import traceback
from pathlib import Path

from . import __version__, plots
from .analysis import g_core, path_centrality
from .compression import compress_lr, compress_via_dag, lexis_node_candidates, ngram_candidates
from .corpus import Corpus, load_corpus
from .dag import LexisDag
from .dag import from_json as dag_from_json
from .errors import InvalidArgument, LexisError
from .features import (
    class_count_matrix,
    extract_core_features,
    merge_feature_sets,
    ngram_features,
    write_labels,
    write_sparse_matrix,
)
from .glexis import (
    RandomizationReport,
    build,
    build_longest_repeat,
    dag_stats,
    run_randomized_trials,
)
from .significance import filter_significant, null_model_from_trials, significance_table


def _write_json(path: Path, obj) -> None:
    path.write_text(
        json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def _write_manifest(outdir: Path, args: argparse.Namespace) -> None:
    # outputs must depend only on semantic inputs: the output directory is
    # where the manifest already lives, and worker count affects nothing
    # downstream, so recording either would make identical runs differ
    arguments = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("command", "func", "out", "jobs") and v is not None
    }
    manifest = {
        "command": args.command,
        "arguments": arguments,
        "package": {"name": "lexis", "version": __version__},
        "outputs": sorted(p.name for p in outdir.iterdir() if p.name != "manifest.json"),
    }
    _write_json(outdir / "manifest.json", manifest)


def _outdir(args: argparse.Namespace) -> Path:
    out = Path(args.out) if args.out else Path(f"lexis_{args.command}")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load(args: argparse.Namespace) -> Corpus:
    return load_corpus(args.input, args.mode)


def _get_dag(args: argparse.Namespace) -> LexisDag:
    if args.dag:
        return dag_from_json(Path(args.dag).read_text(encoding="utf-8"))
    return build(_load(args)).dag


def _resolve_tau(args: argparse.Namespace) -> float:
    if args.coverage is not None:
        if not 0.0 <= args.coverage <= 1.0:
            raise InvalidArgument(f"coverage must be in [0, 1], got {args.coverage}")
        return 1.0 - args.coverage
    return args.tau


def _stats_dict(stats) -> dict:
    return {
        "targets": stats.targets,
        "total_length": stats.total_length,
        "alphabet_size": stats.alphabet_size,
        "edge_cost": stats.edge_cost,
        "concat_cost": stats.concat_cost,
        "intermediates": stats.intermediates,
        "depth": stats.depth,
    }


# -- subcommands -----------------------------------------------------------


def _cmd_build(args: argparse.Namespace) -> int:
    corpus = _load(args)
    builder = build if args.method == "glexis" else build_longest_repeat
    result = builder(corpus)
    dag = result.dag
    outdir = _outdir(args)

    (outdir / "dag.json").write_text(dag.dumps() + "\n", encoding="utf-8")
    (outdir / "dag.dot").write_text(dag.to_dot(), encoding="utf-8")
    with (outdir / "trace.csv").open("w", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(
            [
                "iteration",
                "node",
                "label",
                "members",
                "length",
                "count",
                "saved_cost",
                "replaced",
                "skips",
                "edge_cost",
                "concat_cost",
            ]
        )
        for r in result.trace.iterations:
            w.writerow(
                [
                    r.iteration,
                    r.node,
                    r.label,
                    r.members,
                    r.length,
                    r.count,
                    r.saved_cost,
                    r.replaced,
                    r.skips,
                    r.edge_cost,
                    r.concat_cost,
                ]
            )

    summary = {
        "method": args.method,
        "mode": args.mode,
        "objective": args.objective,
        "iterations": len(result.trace.iterations),
        "initial_edge_cost": result.trace.initial_edge_cost,
        "initial_concat_cost": result.trace.initial_concat_cost,
        **_stats_dict(dag_stats(dag)),
    }
    if args.baseline and args.method == "glexis":
        summary["baseline"] = {
            "method": "longest-repeat",
            **_stats_dict(dag_stats(build_longest_repeat(corpus).dag)),
        }
    _write_json(outdir / "summary.json", summary)
    _write_manifest(outdir, args)

    if args.objective == "edges":
        headline = f"edge cost {summary['edge_cost']}"
    else:
        headline = f"concatenation cost {summary['concat_cost']}"
    print(
        f"{args.method}: {summary['targets']} target(s), length {summary['total_length']}, "
        f"{summary['intermediates']} intermediates, {headline} "
        f"(edges {summary['edge_cost']}, concat {summary['concat_cost']}, depth {summary['depth']})"
    )
    if "baseline" in summary:
        b = summary["baseline"]
        print(
            f"longest-repeat baseline: edges {b['edge_cost']}, concat {b['concat_cost']}, "
            f"depth {b['depth']}"
        )
    print(f"outputs in {outdir}")
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    dag = _get_dag(args)
    report = path_centrality(dag)
    ranked = report.ranked()
    outdir = _outdir(args)

    with (outdir / "centrality.csv").open("w", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["node", "label", "length", "centrality", "from_sources", "to_targets"])
        for v in ranked:
            w.writerow(
                [
                    v,
                    dag.label(v),
                    len(dag.string_of(v)),
                    report.centrality[v],
                    report.from_source_paths[v],
                    report.to_target_paths[v],
                ]
            )
    top = ranked[: args.top]
    plots.save_centrality_bars(
        [(dag.label(v), report.centrality[v]) for v in top],
        str(outdir / "centrality.png"),
    )
    _write_manifest(outdir, args)

    print(f"{report.paths_total} source-to-target paths, {len(ranked)} intermediates")
    for v in top:
        print(f"  {report.centrality[v]:>10}  {dag.label(v)}")
    print(f"outputs in {outdir}")
    return 0


def _cmd_core(args: argparse.Namespace) -> int:
    dag = _get_dag(args)
    tau = _resolve_tau(args)
    result = g_core(dag, tau)
    outdir = _outdir(args)

    steps = [
        {
            "node": s.node,
            "label": dag.label(s.node),
            "length": len(dag.string_of(s.node)),
            "centrality": s.centrality,
            "paths_remaining": s.paths_remaining,
        }
        for s in result.steps
    ]
    _write_json(
        outdir / "core.json",
        {
            "tau": result.tau,
            "paths_total": result.paths_total,
            "paths_remaining": result.paths_remaining,
            "feasible": result.feasible,
            "core": steps,
        },
    )
    with (outdir / "core.csv").open("w", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["step", "node", "label", "length", "centrality", "paths_remaining"])
        for i, s in enumerate(steps, 1):
            w.writerow([i, s["node"], s["label"], s["length"], s["centrality"], s["paths_remaining"]])
    fractions = [1.0] + [s["paths_remaining"] / result.paths_total for s in steps]
    plots.save_core_curve(fractions, tau, str(outdir / "coverage.png"))
    _write_manifest(outdir, args)

    state = "" if result.feasible else " (threshold not reached: no removable node left)"
    print(
        f"core of {len(result.core)} node(s) at tau={tau:g}: "
        f"{result.paths_remaining}/{result.paths_total} paths remain{state}"
    )
    for s in steps:
        print(f"  {s['label']}  (centrality {s['centrality']})")
    print(f"outputs in {outdir}")
    return 0


def _cmd_compress(args: argparse.Namespace) -> int:
    corpus = _load(args)
    orders = _parse_orders(args.orders, minimum=2)
    methods = ["dag", "lr-lexis", "lr-ngrams"] if args.method == "all" else [args.method]
    dag = build(corpus).dag if {"dag", "lr-lexis"} & set(methods) else None
    results = []
    for m in methods:
        if m == "dag":
            results.append(compress_via_dag(dag))
        elif m == "lr-lexis":
            results.append(compress_lr(corpus, lexis_node_candidates(dag), method=m))
        else:
            results.append(compress_lr(corpus, ngram_candidates(corpus, orders), method=m))
    outdir = _outdir(args)

    with (outdir / "compression.csv").open("w", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["method", "original", "dictionary", "encoded", "compressed", "ratio"])
        for r in results:
            w.writerow(
                [
                    r.method,
                    r.original_size,
                    r.dictionary_size,
                    r.encoded_size,
                    r.compressed_size,
                    f"{r.ratio:.2f}",
                ]
            )
    _write_manifest(outdir, args)

    print(f"{'method':<12} {'original':>9} {'dict':>7} {'encoded':>8} {'total':>7} {'ratio':>7}")
    for r in results:
        print(
            f"{r.method:<12} {r.original_size:>9} {r.dictionary_size:>7} "
            f"{r.encoded_size:>8} {r.compressed_size:>7} {r.ratio:>6.2f}%"
        )
    print(f"outputs in {outdir}")
    return 0


def _cmd_features(args: argparse.Namespace) -> int:
    classes = {}
    for spec in args.classes:
        name, sep, path = spec.partition("=")
        if not sep or not name or not path:
            raise InvalidArgument(f"--class expects NAME=FILE, got {spec!r}")
        if name in classes:
            raise InvalidArgument(f"duplicate class name {name!r}")
        classes[name] = load_corpus(path, args.mode)

    if args.ngrams is not None:
        orders = _parse_orders(args.ngrams, minimum=1)
        feats = merge_feature_sets(
            [ngram_features(classes[c], orders, cls=c) for c in sorted(classes)]
        )
        how = {"ngrams": list(orders)}
    else:
        tau = _resolve_tau(args)
        feats = extract_core_features(classes, tau)
        how = {"tau": tau}

    matrix, rows = class_count_matrix(feats, classes)
    outdir = _outdir(args)
    _write_json(
        outdir / "features.json",
        {
            "mode": args.mode,
            **how,
            "classes": sorted(classes),
            "features": [
                {"label": f.label, "length": f.length, "classes": list(f.classes)}
                for f in feats.features
            ],
            "rows": [{"class": c, "target": i} for c, i in rows],
        },
    )
    with (outdir / "matrix.txt").open("w", encoding="utf-8") as fh:
        write_sparse_matrix(matrix, fh)
    with (outdir / "labels.txt").open("w", encoding="utf-8") as fh:
        write_labels(feats, fh)
    _write_manifest(outdir, args)

    print(
        f"{len(feats.features)} feature(s) over {len(classes)} class(es), "
        f"matrix {matrix.shape[0]} x {matrix.shape[1]} with {int((matrix > 0).sum())} nonzeros"
    )
    print(f"outputs in {outdir}")
    return 0


def _cmd_randomize(args: argparse.Namespace) -> int:
    corpus = _load(args)
    original = build(corpus)
    stats = dag_stats(original.dag)
    trials = run_randomized_trials(corpus, args.trials, args.seed, args.jobs)
    report = RandomizationReport(stats, tuple(t.stats for t in trials))
    model = null_model_from_trials(trials)
    table = significance_table(model, original.dag, path_centrality(original.dag))
    significant = {r.node for r in filter_significant(table, args.alpha)}
    outdir = _outdir(args)

    _write_json(
        outdir / "comparison.json",
        {
            "trials": args.trials,
            "seed": args.seed,
            "alpha": args.alpha,
            "original": _stats_dict(stats),
            "shuffled_mean": {
                "edge_cost": report.mean_edge_cost,
                "concat_cost": report.mean_concat_cost,
                "depth": report.mean_depth,
                "intermediates": report.mean_intermediates,
            },
            "significant_nodes": sorted(significant),
        },
    )
    with (outdir / "trials.csv").open("w", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["trial", "edge_cost", "concat_cost", "intermediates", "depth"])
        for i, t in enumerate(report.trials):
            w.writerow([i, t.edge_cost, t.concat_cost, t.intermediates, t.depth])
    with (outdir / "significance.csv").open("w", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["node", "label", "length", "reuse", "p", "significant"])
        for r in table:
            w.writerow([r.node, r.label, r.length, r.reuse, f"{r.p:.6f}", int(r.node in significant)])
    with (outdir / "null_pairs.csv").open("w", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["trial", "length", "reuse"])
        for i, t in enumerate(trials):
            for l, r in t.pairs:
                w.writerow([i, l, r])

    plots.save_cost_scatter(
        (stats.edge_cost, stats.concat_cost),
        [(t.edge_cost, t.concat_cost) for t in report.trials],
        str(outdir / "costs.png"),
    )
    plots.save_reuse_scatter(
        [(r.length, r.reuse, r.node in significant) for r in table],
        [pair for t in trials for pair in t.pairs],
        str(outdir / "significance.png"),
    )
    _write_manifest(outdir, args)

    print(
        f"original: edges {stats.edge_cost}, concat {stats.concat_cost}, depth {stats.depth}; "
        f"shuffled mean over {args.trials} trial(s): edges {report.mean_edge_cost:.1f}, "
        f"concat {report.mean_concat_cost:.1f}, depth {report.mean_depth:.2f}"
    )
    print(f"{len(significant)}/{len(table)} intermediates significant at alpha={args.alpha:g}")
    print(f"outputs in {outdir}")
    return 0


# -- parser ----------------------------------------------------------------


def _parse_orders(text: str, minimum: int) -> tuple[int, ...]:
    try:
        orders = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise InvalidArgument(f"orders must be comma-separated integers, got {text!r}")
    if not orders or any(k < minimum for k in orders):
        raise InvalidArgument(f"orders must be integers >= {minimum}, got {text!r}")
    return orders


def _add_corpus_opts(sp: argparse.ArgumentParser, required: bool = True) -> None:
    sp.add_argument("--input", required=required, help="corpus file, one target per line")
    sp.add_argument(
        "--mode",
        choices=("char", "token"),
        default="char",
        help="symbols are characters or whitespace-separated tokens (default char)",
    )


def _add_dag_source(sp: argparse.ArgumentParser) -> None:
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="corpus file to build from")
    src.add_argument("--dag", help="dag.json from a previous build")
    sp.add_argument(
        "--mode",
        choices=("char", "token"),
        default="char",
        help="symbols are characters or whitespace-separated tokens (default char)",
    )


def _add_out(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--out", help="output directory (default lexis_<command>)")


def _add_threshold(sp: argparse.ArgumentParser, required: bool) -> None:
    grp = sp.add_mutually_exclusive_group(required=required)
    grp.add_argument("--tau", type=float, help="fraction of paths that may remain")
    grp.add_argument(
        "--coverage", type=float, help="fraction of paths the core must cover (1 - tau)"
    )


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lexis",
        description="Hierarchical representations of sequential data: build, analyze, compress.",
    )
    p.add_argument("--version", action="version", version=f"lexis {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build", help="construct a DAG from a corpus")
    _add_corpus_opts(sp)
    sp.add_argument(
        "--method",
        choices=("glexis", "longest-repeat"),
        default="glexis",
        help="candidate ranking (default glexis)",
    )
    sp.add_argument(
        "--baseline",
        action="store_true",
        help="also build with longest-repeat and report its costs",
    )
    sp.add_argument(
        "--objective",
        choices=("edges", "concat"),
        default="edges",
        help="which cost to headline in the summary (default edges)",
    )
    _add_out(sp)
    sp.set_defaults(func=_cmd_build)

    sp = sub.add_parser("analyze", help="path centrality of every intermediate")
    _add_dag_source(sp)
    sp.add_argument("--top", type=int, default=20, help="nodes to plot and print (default 20)")
    _add_out(sp)
    sp.set_defaults(func=_cmd_analyze)

    sp = sub.add_parser("core", help="greedy core: remove central nodes until tau holds")
    _add_dag_source(sp)
    _add_threshold(sp, required=True)
    _add_out(sp)
    sp.set_defaults(func=_cmd_core)

    sp = sub.add_parser("compress", help="dictionary compression comparison")
    _add_corpus_opts(sp)
    sp.add_argument(
        "--method",
        choices=("dag", "lr-lexis", "lr-ngrams", "all"),
        default="all",
        help="compressor(s) to run (default all)",
    )
    sp.add_argument(
        "--orders", default="2,3", help="n-gram orders for lr-ngrams (default 2,3)"
    )
    _add_out(sp)
    sp.set_defaults(func=_cmd_compress)

    sp = sub.add_parser("features", help="feature strings and a target-by-feature count matrix")
    sp.add_argument(
        "--class",
        dest="classes",
        action="append",
        required=True,
        metavar="NAME=FILE",
        help="class corpus, repeatable",
    )
    sp.add_argument(
        "--mode",
        choices=("char", "token"),
        default="char",
        help="symbols are characters or whitespace-separated tokens (default char)",
    )
    _add_threshold(sp, required=False)
    sp.add_argument("--ngrams", help="comma-separated n-gram orders instead of core features")
    _add_out(sp)
    sp.set_defaults(func=_cmd_features)

    sp = sub.add_parser("randomize", help="shuffled rebuilds: cost comparison and significance")
    _add_corpus_opts(sp)
    sp.add_argument("--trials", type=int, default=100, help="shuffled rebuilds (default 100)")
    sp.add_argument("--seed", default="0", help="master seed (default 0)")
    sp.add_argument("--alpha", type=float, default=0.05, help="significance level (default 0.05)")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    _add_out(sp)
    sp.set_defaults(func=_cmd_randomize)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "features":
        if args.ngrams is not None and (args.tau is not None or args.coverage is not None):
            print("error: --ngrams cannot be combined with --tau/--coverage", file=sys.stderr)
            return 2
        if args.ngrams is None and args.tau is None and args.coverage is None:
            print("error: one of --tau, --coverage, or --ngrams is required", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except InvalidArgument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (LexisError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Exception:
        traceback.print_exc()
        return 4


if __name__ == "__main__":
    sys.exit(main())

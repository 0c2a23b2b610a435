"""Command-line surface: detect, compare, synth, bench.

Exit codes: 0 success, 1 any pipeline or input error, 2 a serial/parallel
cover mismatch (which signals a defect and should never happen).
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time

from .community_assoc import (CaOptions, ProbeCounter, affiliation_threshold,
                              extract_parallel, extract_serial, extract_transposed)
from .cover_io import compare_covers, read_cover, write_cover
from .errors import BigClamError
from .gradient_ascent import GaConfig, fit
from .graph import load_edge_list, write_edge_list
from .profiling import (STAGE_CA, STAGE_CT, STAGE_GA, DominanceResult, RunReport,
                        StageTimer, dominance_predicate, emit_report, r_of)
from .seeding import init_affiliations, locally_minimal_neighborhoods
from .synth import PlantSpec, generate_graph, plant_cover


def _add_detect_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="edge-list file (whitespace separated, # comments)")
    p.add_argument("--output-prefix", default="./", help="prefix for output files")
    p.add_argument("--communities", type=int, default=0,
                   help="number of communities; 0 uses the seed count")
    p.add_argument("--epochs", type=int, default=100)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--min-members", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", default=None, help="write the JSON run report here")
    p.add_argument("--ca-impl", choices=("faithful", "transposed"), default="faithful")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bigclam",
                                     description="Overlapping community detection pipeline")
    sub = parser.add_subparsers(dest="command", required=True)

    p_detect = sub.add_parser("detect", help="run the full pipeline on an edge list")
    _add_detect_flags(p_detect)
    p_detect.add_argument("--ca-mode", choices=("serial", "parallel", "both"), default="serial")

    p_compare = sub.add_parser("compare", help="compare two cover files up to ordering")
    p_compare.add_argument("cover_a")
    p_compare.add_argument("cover_b")

    p_synth = sub.add_parser("synth", help="emit a planted edge list and truth cover")
    p_synth.add_argument("--nodes", type=int, required=True)
    p_synth.add_argument("--communities", type=int, required=True)
    p_synth.add_argument("--membership-prob", type=float, required=True)
    p_synth.add_argument("--weight-range", type=float, nargs=2, default=(0.6, 1.0),
                         metavar=("LO", "HI"))
    p_synth.add_argument("--background-eps", type=float, default=0.0)
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--output-prefix", default="./")

    p_bench = sub.add_parser("bench", help="time serial vs parallel extraction")
    _add_detect_flags(p_bench)
    p_bench.add_argument("--workers-list", default="1,2,4,8",
                         help="comma-separated worker counts to benchmark")
    p_bench.add_argument("--delta", type=float, default=None,
                         help="override the membership threshold")
    return parser


def _fit_pipeline(args, timer: StageTimer):
    """Shared detect/bench front half: load, seed, fit.  Returns (g, m, c_count)."""
    g = load_edge_list(args.input)

    def conductance_stage():
        seeds = locally_minimal_neighborhoods(g, workers=args.workers)
        c_count = args.communities if args.communities > 0 else max(1, len(seeds))
        return c_count, init_affiliations(g, seeds, c_count, args.seed)

    (c_count, m0), _ = timer.time_stage(STAGE_CT, conductance_stage)
    cfg = GaConfig(epochs=args.epochs, workers=args.workers, rng_seed=args.seed)
    (m, _stats), _ = timer.time_stage(STAGE_GA, lambda: fit(g, cfg, c_count, init=m0))
    return g, m, c_count


def cmd_detect(args) -> int:
    timer = StageTimer()
    g, m, c_count = _fit_pipeline(args, timer)
    delta = affiliation_threshold(g.node_count, g.edge_count)
    opts = CaOptions(min_members=args.min_members, workers=args.workers)
    counters: dict[str, int] = {"ga_row_updates": args.epochs * g.node_count}
    extras: dict[str, float] = {}

    def run_extract(parallel: bool):
        counter = ProbeCounter()
        if args.ca_impl == "transposed":
            cover = extract_transposed(m, delta, opts, counter)
        elif parallel:
            cover = extract_parallel(m, delta, opts, counter)
        else:
            cover = extract_serial(m, delta, opts, counter)
        return cover, counter.probes

    if args.ca_mode == "serial":
        (cover, probes), _ = timer.time_stage(STAGE_CA, lambda: run_extract(False))
        counters["ca_probes_serial"] = probes
    elif args.ca_mode == "parallel":
        (cover, probes), _ = timer.time_stage(STAGE_CA, lambda: run_extract(True))
        counters["ca_probes_parallel"] = probes
    else:  # both: serial is the recorded CA stage, parallel timed alongside
        (cover, probes), serial_s = timer.time_stage(STAGE_CA, lambda: run_extract(False))
        counters["ca_probes_serial"] = probes
        t0 = time.perf_counter()
        par_cover, par_probes = run_extract(True)
        par_s = time.perf_counter() - t0
        counters["ca_probes_parallel"] = par_probes
        extras["ca_parallel_seconds"] = par_s
        if par_s > 0.0:
            extras["ca_realized_speedup"] = serial_s / par_s
        verdict = compare_covers(cover, par_cover)
        if not verdict.equal:
            print(f"serial/parallel cover mismatch: {verdict.first_diff}", file=sys.stderr)
            return 2

    cover_path = f"{args.output_prefix}cmtyvv.txt"
    write_cover(cover, cover_path, labels=g.labels)

    r_est = r_of(m)
    dominance: DominanceResult | None = None
    if r_est > 0.0:
        dominance = dominance_predicate(g.stats(), c_count, r_est,
                                        args.epochs, t_star=args.workers)
    report = RunReport(stats=g.stats(), timings=timer.timings(), c_count=c_count,
                       epochs=args.epochs, workers=args.workers, r_estimate=r_est,
                       dominance=dominance, counters=counters, extras=extras)
    if args.report:
        emit_report(report, args.report, format="json")
    else:
        emit_report(report, sys.stdout, format="text")
    print(f"wrote {len(cover)} communities to {cover_path}")
    return 0


def cmd_compare(args) -> int:
    a = read_cover(args.cover_a)
    b = read_cover(args.cover_b)
    verdict = compare_covers(a, b)
    if verdict.equal:
        print("covers are equal up to ordering")
        return 0
    print(f"covers differ: {verdict.first_diff}")
    return 1


def cmd_synth(args) -> int:
    spec = PlantSpec(
        node_count=args.nodes,
        community_count=args.communities,
        membership_prob=args.membership_prob,
        weight_range=tuple(args.weight_range),
        background_eps=args.background_eps,
        rng_seed=args.seed,
    )
    f_true, truth = plant_cover(spec)
    g = generate_graph(f_true, spec.background_eps, spec.rng_seed + 1)
    edges_path = f"{args.output_prefix}edges.txt"
    truth_path = f"{args.output_prefix}truth_cmtyvv.txt"
    write_edge_list(g, edges_path)
    write_cover(truth, truth_path)
    print(f"planted |V|={g.node_count} |E|={g.edge_count} "
          f"|C|={len(truth)} -> {edges_path}, {truth_path}")
    return 0


def cmd_bench(args) -> int:
    timer = StageTimer()
    g, m, c_count = _fit_pipeline(args, timer)
    delta = args.delta if args.delta is not None else affiliation_threshold(
        g.node_count, g.edge_count)
    opts = CaOptions(min_members=args.min_members)
    worker_counts = [int(tok) for tok in args.workers_list.split(",") if tok.strip()]

    t0 = time.perf_counter()
    base_cover = extract_serial(m, delta, opts)
    serial_s = time.perf_counter() - t0
    print(f"serial extraction: {serial_s:.4f}s over {c_count} communities")

    rows = []
    for w in worker_counts:
        par_opts = CaOptions(min_members=args.min_members, workers=w)
        t0 = time.perf_counter()
        cover = extract_parallel(m, delta, par_opts)
        elapsed = time.perf_counter() - t0
        verdict = compare_covers(base_cover, cover)
        if not verdict.equal:
            print(f"workers={w}: cover mismatch: {verdict.first_diff}", file=sys.stderr)
            return 2
        speedup = serial_s / elapsed if elapsed > 0.0 else float("inf")
        rows.append((w, elapsed, speedup))
        print(f"workers={w}: {elapsed:.4f}s speedup={speedup:.2f}x (covers equal)")

    csv_path = f"{args.output_prefix}bench.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["workers", "ca_seconds", "speedup"])
        for w, elapsed, speedup in rows:
            writer.writerow([w, f"{elapsed:.6f}", f"{speedup:.4f}"])
    print(f"wrote {csv_path}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "detect": cmd_detect,
        "compare": cmd_compare,
        "synth": cmd_synth,
        "bench": cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except BigClamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

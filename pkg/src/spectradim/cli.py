"""Command-line interface.

Subcommands: estimate, spectrum, oracle, gen, batch, correlate. Stdout
carries only machine-readable output (JSON, CSV, or plain eigenvalue
dumps); diagnostics go to stderr. Optional --figures renders matplotlib
figures to files alongside the delimited output.

Exit codes: 0 success, 2 parse/input error, 3 solver failure,
4 unusable low spectrum (too few fit points or zero-eigenvalue
contamination).
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .dimension import (
    DEFAULT_M,
    DEFAULT_S,
    estimate_dimension,
    interpolate_spectrum,
    return_probability_curve,
)
from .errors import (
    ContaminationError,
    InsufficientSpectrumError,
    ParseError,
    SolverError,
    SpectradimError,
)
from .graph import (
    connected_components,
    generate_complete,
    generate_cycle,
    generate_lattice,
    largest_connected_component,
    parse_edge_list,
    parse_matrix_market,
)
from .spectrum import (
    SpectrumConfig,
    full_spectrum_dense,
    partial_spectrum_iterative,
    spectrum,
)
from .stats import correlation_report, load_paired_csv

EXIT_PARSE = 2
EXIT_SOLVER = 3
EXIT_SPECTRUM = 4

BATCH_FIELDS = ["name", "n", "edges", "d_s", "slope", "r2", "solver", "error"]


def _err(msg):
    print(f"spectradim: error: {msg}", file=sys.stderr)


def _load_graph(path, fmt="auto", weighted=False):
    if not os.path.isfile(path):
        raise ParseError(f"no such file: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "auto":
        fmt = "mtx" if path.lower().endswith(".mtx") else None
        if fmt is None:
            for line in text.splitlines():
                if line.strip():
                    fmt = "mtx" if line.lower().startswith("%%matrixmarket") else "edgelist"
                    break
            else:
                raise ParseError("empty graph")
    if fmt == "mtx":
        return parse_matrix_market(text, weighted=weighted)
    return parse_edge_list(text, weighted=weighted)


def _make_config(args):
    kwargs = {}
    if getattr(args, "dense_threshold", None) is not None:
        kwargs["dense_threshold"] = args.dense_threshold
    if getattr(args, "seed", None) is not None:
        kwargs["seed"] = args.seed
    return SpectrumConfig(**kwargs)


def _fmt_ds(d_s):
    return "inf" if isinstance(d_s, float) and math.isinf(d_s) else d_s


def _run_pipeline(path, args):
    """Full estimation pipeline with per-stage timings; returns a RunReport dict."""
    cfg = _make_config(args)
    warnings = []
    t0 = time.perf_counter()
    g = _load_graph(path, args.format, args.weighted)
    t_parse = time.perf_counter()
    comp = connected_components(g)
    if g.diagnostics and (g.diagnostics.self_loops_dropped or g.diagnostics.duplicates_merged):
        warnings.append(
            f"canonicalization dropped {g.diagnostics.self_loops_dropped} self-loops, "
            f"merged {g.diagnostics.duplicates_merged} duplicate edges"
        )
    target = g
    if args.keep_disconnected:
        zeros_in_window = sum(1 for k in range(1, comp.count + 1) if k / g.n <= args.s)
        if zeros_in_window > 1:
            raise ContaminationError(
                f"zero-eigenvalue contamination: {comp.count} components put "
                f"{zeros_in_window} zero eigenvalues inside the fit window"
            )
        if comp.count > 1:
            warnings.append(f"graph has {comp.count} components, kept whole per request")
    elif comp.count > 1:
        target = largest_connected_component(g)
        warnings.append(
            f"extracted largest component ({target.n}/{g.n} vertices)"
        )
    spec = spectrum(target, cfg)
    t_solve = time.perf_counter()
    interp = interpolate_spectrum(spec, args.M)
    est = estimate_dimension(interp, args.s)
    t_fit = time.perf_counter()
    report = {
        "input": path,
        "n": g.n,
        "edges": g.num_edges,
        "components": comp.count,
        "lcc_size": int(comp.sizes[comp.largest]),
        "estimate": {**est.to_dict(), "n": target.n, "solver": spec.solver},
        "timings_ms": {
            "parse": (t_parse - t0) * 1e3,
            "solve": (t_solve - t_parse) * 1e3,
            "fit": (t_fit - t_solve) * 1e3,
        },
        "warnings": warnings,
    }
    return report, spec, interp, est


def _report_csv(report):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BATCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerow(_report_row(report))
    return buf.getvalue()


def _report_row(report, error=""):
    est = report.get("estimate") or {}
    return {
        "name": os.path.splitext(os.path.basename(report["input"]))[0],
        "n": report.get("n", ""),
        "edges": report.get("edges", ""),
        "d_s": est.get("d_s", ""),
        "slope": est.get("slope", ""),
        "r2": est.get("r_squared", ""),
        "solver": est.get("solver", ""),
        "error": error,
    }


def cmd_estimate(args):
    report, spec, interp, est = _run_pipeline(args.input, args)
    if args.figures:
        from . import plotting

        stem = os.path.splitext(os.path.basename(args.input))[0]
        plotting.spectrum_figure(spec, args.figures, stem)
        plotting.fit_figure(interp, est, args.figures, stem)
    if args.output == "csv":
        sys.stdout.write(_report_csv(report))
    else:
        print(json.dumps(report))
    for w in report["warnings"]:
        print(f"spectradim: warning: {w}", file=sys.stderr)
    return 0


def cmd_spectrum(args):
    g = _load_graph(args.input, args.format, args.weighted)
    cfg = _make_config(args)
    if args.smallest is not None:
        spec = partial_spectrum_iterative(g, args.smallest, cfg)
    else:
        spec = full_spectrum_dense(g, cfg)
    if args.figures:
        from . import plotting

        stem = os.path.splitext(os.path.basename(args.input))[0]
        plotting.spectrum_figure(spec, args.figures, stem)
    if args.output == "txt":
        sys.stdout.write(spec.to_text())
    else:
        print(spec.to_json())
    return 0


def cmd_oracle(args):
    g = _load_graph(args.input, args.format, args.weighted)
    cfg = _make_config(args)
    target = largest_connected_component(g)
    if target.n > cfg.dense_threshold:
        raise SolverError(
            f"oracle needs the full spectrum; n={target.n} exceeds the dense "
            f"threshold {cfg.dense_threshold}"
        )
    spec = full_spectrum_dense(target, cfg)
    curve = return_probability_curve(spec, points=args.points)
    interp = interpolate_spectrum(spec, args.M)
    est = estimate_dimension(interp, args.s)
    payload = {
        "input": args.input,
        "n": target.n,
        "times": curve.times.tolist(),
        "probabilities": curve.probabilities.tolist(),
        "fit_window": list(curve.fit_window),
        "fitted_dimension": curve.fitted_dimension,
        "weyl_d_s": _fmt_ds(est.d_s),
    }
    if args.figures:
        from . import plotting

        stem = os.path.splitext(os.path.basename(args.input))[0]
        plotting.oracle_figure(curve, est.d_s, args.figures, stem)
    print(json.dumps(payload))
    return 0


def cmd_gen(args):
    try:
        if args.kind == "lattice":
            g = generate_lattice(args.params, periodic=args.periodic)
            dim = len(args.params)
        elif args.kind == "cycle":
            (n,) = args.params
            g = generate_cycle(n)
            dim = 1
        else:
            (n,) = args.params
            g = generate_complete(n)
            dim = "inf"
    except ValueError as exc:
        raise ParseError(str(exc))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(g.to_edge_list_text())
    print(
        json.dumps(
            {"path": args.out, "n": g.n, "edges": g.num_edges, "dimension": dim}
        )
    )
    return 0


def _batch_inputs(path):
    if os.path.isdir(path):
        entries = sorted(os.listdir(path))
        return [os.path.join(path, e) for e in entries if os.path.isfile(os.path.join(path, e))]
    if os.path.isfile(path):
        base = os.path.dirname(os.path.abspath(path))
        inputs = []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                inputs.append(line if os.path.isabs(line) else os.path.join(base, line))
        return inputs
    raise ParseError(f"no such file or directory: {path}")


def cmd_batch(args):
    inputs = _batch_inputs(args.input)

    def one(path):
        try:
            report, _, _, _ = _run_pipeline(path, args)
            return _report_row(report)
        except SpectradimError as exc:
            return _report_row({"input": path}, error=str(exc))
        except Exception as exc:  # isolate unexpected per-graph failures too
            return _report_row({"input": path}, error=f"{type(exc).__name__}: {exc}")

    jobs = args.jobs or os.cpu_count() or 1
    if jobs == 1 or len(inputs) <= 1:
        rows = [one(p) for p in inputs]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(one, inputs))
    writer = csv.DictWriter(sys.stdout, fieldnames=BATCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.figures:
        from . import plotting

        plotting.batch_figure(rows, args.figures)
    return 0


def cmd_correlate(args):
    if not os.path.isfile(args.input):
        raise ParseError(f"no such file: {args.input}")
    with open(args.input, "r", encoding="utf-8", newline="") as fh:
        series = load_paired_csv(fh)
    print(json.dumps(correlation_report(series, args.bins)))
    return 0


def _add_graph_options(p):
    p.add_argument("input", help="graph file")
    p.add_argument(
        "--format", choices=["auto", "edgelist", "mtx"], default="auto",
        help="input format (auto sniffs by extension, then header)",
    )
    p.add_argument("--weighted", action="store_true", help="use the weight column")
    p.add_argument("--dense-threshold", type=int, default=None, dest="dense_threshold")
    p.add_argument("--seed", type=int, default=None,
                   help="iterative-solver seed (default: $SPECTRADIM_SEED or 42)")
    p.add_argument("--figures", metavar="DIR", default=None,
                   help="also render figures into DIR")


def _add_fit_options(p):
    p.add_argument("--M", type=int, default=DEFAULT_M, help="interpolation grid size")
    p.add_argument("--s", type=float, default=DEFAULT_S, help="low-spectrum cutoff")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spectradim",
        description="Estimate the spectral dimension of undirected graphs "
        "from normalized-Laplacian eigenvalue growth.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate the spectral dimension of one graph")
    _add_graph_options(p)
    _add_fit_options(p)
    p.add_argument("--keep-disconnected", action="store_true",
                   help="analyze the whole graph instead of its largest component")
    p.add_argument("--output", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("spectrum", help="dump normalized-Laplacian eigenvalues")
    _add_graph_options(p)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--full", action="store_true", help="full dense spectrum (default)")
    grp.add_argument("--smallest", type=int, metavar="M", default=None,
                     help="M smallest eigenvalues via the iterative solver")
    p.add_argument("--output", choices=["json", "txt"], default="json")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("oracle", help="heat-kernel return-probability cross-check")
    _add_graph_options(p)
    _add_fit_options(p)
    p.add_argument("--points", type=int, default=64, help="time-grid size")
    p.add_argument("--output", choices=["json"], default="json")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate analytic fixture graphs")
    p.add_argument("kind", choices=["lattice", "complete", "cycle"])
    p.add_argument("params", type=int, nargs="+",
                   help="lattice axis lengths, or the vertex count")
    p.add_argument("--periodic", action="store_true", help="wrap lattice axes (torus)")
    p.add_argument("--out", required=True, help="output edge-list path")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("batch", help="estimate a directory or manifest of graphs")
    p.add_argument("input", help="directory of graph files or newline-separated manifest")
    p.add_argument("--format", choices=["auto", "edgelist", "mtx"], default="auto")
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--dense-threshold", type=int, default=None, dest="dense_threshold")
    p.add_argument("--seed", type=int, default=None)
    _add_fit_options(p)
    p.add_argument("--keep-disconnected", action="store_true")
    p.add_argument("--jobs", type=int, default=None, help="worker pool size")
    p.add_argument("--output", choices=["csv"], default="csv")
    p.add_argument("--figures", metavar="DIR", default=None)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("correlate", help="Spearman + mutual information on a results CSV")
    p.add_argument("input", help='CSV with header "name,complexity,metric"')
    p.add_argument("--bins", type=int, default=None, help="histogram bins per axis")
    p.set_defaults(func=cmd_correlate)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _err(str(exc))
        return EXIT_PARSE
    except (InsufficientSpectrumError, ContaminationError) as exc:
        _err(str(exc))
        return EXIT_SPECTRUM
    except SolverError as exc:
        _err(str(exc))
        return EXIT_SOLVER
    except ValueError as exc:
        _err(str(exc))
        return EXIT_PARSE
    except OSError as exc:
        _err(str(exc))
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

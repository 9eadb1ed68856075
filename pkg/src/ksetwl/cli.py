"""Command-line interface: dataset info, feature export, gram matrices, and
sample-size calculators.

Subcommands: info | features | gram | sample-size.  Exit codes: 0 success,
1 usage error, 2 data/format error, 3 resource-cap error.  Every output file
gets a sibling ``<output>.manifest.json`` recording the full configuration,
seed, and wall times; identical config + seed + dataset bytes reproduce the
output files byte for byte, for any --threads value.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .errors import (FormatError, GraphError, KsetwlError, ParameterError,
                     ResourceLimitError)
from .features import cosine_normalize_gram, gram_matrix, l1_normalize
from .interner import LabelInterner
from .kwl import DEFAULT_MAX_SETS
from .parallel import DeterministicPool
from .pipeline import (exact_kset_run, exact_wl1_run,
                       features_from_colorings, features_from_label_arrays,
                       la_kset_run, la_wl1_run, sampled_dataset_run)
from .sampling import hoeffding_sample_size, hoeffding_sample_size_dataset
from .tu_io import (parse_tu_dataset, write_features_sparse, write_gram_csv,
                    write_gram_libsvm)

KERNELS = ("wl1", "kwl-local", "kwl-global")
MODES = ("exact", "linalg", "sampled", "adaptive")


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as ParameterError (exit 1)."""

    def error(self, message):
        raise ParameterError(message)


def _add_dataset_args(p):
    p.add_argument("--dataset", required=True, help="TU-format dataset directory")
    p.add_argument("--name", default=None,
                   help="dataset name prefix (default: directory basename)")


def _add_compute_args(p):
    p.add_argument("--kernel", choices=KERNELS, required=True)
    p.add_argument("--k", type=int, default=2,
                   help="k-set order (ignored for wl1)")
    p.add_argument("--h", type=int, default=None, help="refinement iterations")
    p.add_argument("--h-sweep", default=None, metavar="LO..HI",
                   help="emit one output per h in the range, e.g. 0..5")
    p.add_argument("--mode", choices=MODES, default="exact")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--gamma", type=int, default=None,
                   help="label-count bound for --mode sampled sizing")
    p.add_argument("--samples", type=int, default=None,
                   help="explicit sample count for --mode sampled")
    p.add_argument("--initial-samples", type=int, default=100)
    p.add_argument("--growth", type=float, default=2.0)
    p.add_argument("--strict-delta", action="store_true",
                   help="split delta geometrically across adaptive rounds")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--normalize", choices=("none", "l1-block", "l1-full"),
                   default="none")
    p.add_argument("--max-sets", type=int, default=DEFAULT_MAX_SETS,
                   help="refuse exact k-set runs beyond this many k-sets")
    p.add_argument("--max-samples", type=int, default=10_000_000)
    p.add_argument("--output", required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ksetwl", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p_info = sub.add_parser("info", help="print dataset statistics")
    _add_dataset_args(p_info)

    p_feat = sub.add_parser("features", help="write per-graph feature vectors")
    _add_dataset_args(p_feat)
    _add_compute_args(p_feat)
    p_feat.add_argument("--format", choices=("sparse-features",),
                        default="sparse-features")

    p_gram = sub.add_parser("gram", help="write the gram matrix")
    _add_dataset_args(p_gram)
    _add_compute_args(p_gram)
    p_gram.add_argument("--gram-normalize", action="store_true",
                        help="cosine-normalize the gram matrix")
    p_gram.add_argument("--format", choices=("libsvm", "csv"), default="libsvm")

    p_size = sub.add_parser("sample-size", help="evaluate sample-size bounds")
    p_size.add_argument("--gamma", type=int, required=True)
    p_size.add_argument("--delta", type=float, required=True)
    p_size.add_argument("--epsilon", type=float, required=True)
    p_size.add_argument("--dataset-size", type=int, default=None)
    return parser


def _parse_h_values(args) -> list[int]:
    if args.h_sweep is not None:
        if args.h is not None:
            raise ParameterError("give either --h or --h-sweep, not both")
        lo, sep, hi = args.h_sweep.partition("..")
        if not sep:
            raise ParameterError("--h-sweep expects LO..HI, e.g. 0..5")
        try:
            lo, hi = int(lo), int(hi)
        except ValueError as exc:
            raise ParameterError("--h-sweep expects integer bounds") from exc
        if lo < 0 or hi < lo:
            raise ParameterError("--h-sweep range is empty or negative")
        return list(range(lo, hi + 1))
    if args.h is None:
        raise ParameterError("--h is required (or use --h-sweep)")
    if args.h < 0:
        raise ParameterError("--h must be nonnegative")
    return [args.h]


def _validate_mode(args) -> None:
    if args.kernel != "wl1" and args.k < 2:
        raise ParameterError("--k must be at least 2 for k-set kernels")
    if args.mode in ("sampled", "adaptive") and args.kernel != "kwl-local":
        raise ParameterError(
            f"--mode {args.mode} estimates the local k-set kernel; "
            "use --kernel kwl-local")
    if args.mode == "sampled" and args.samples is None and args.gamma is None:
        raise ParameterError(
            "--mode sampled needs --samples, or --gamma to derive one")


def _compute_features(graphs, args, h: int, pool):
    """Feature vectors for one h, plus manifest extras."""
    extra: dict = {}
    if args.mode == "exact":
        interner = LabelInterner()
        if args.kernel == "wl1":
            runs = exact_wl1_run(graphs, h, interner, pool=pool)
        else:
            runs = exact_kset_run(graphs, args.k, h, interner,
                                  local=args.kernel == "kwl-local",
                                  pool=pool, max_sets=args.max_sets)
        features = features_from_colorings(runs)
        extra["label_space"] = len(interner)
    elif args.mode == "linalg":
        if args.kernel == "wl1":
            runs = la_wl1_run(graphs, h)
        else:
            runs = la_kset_run(graphs, args.k, h,
                               local=args.kernel == "kwl-local",
                               pool=pool, max_sets=args.max_sets)
        features = features_from_label_arrays(runs)
    else:
        interner = LabelInterner()
        sample_count = args.samples
        if args.mode == "sampled" and sample_count is None:
            sample_count = hoeffding_sample_size(args.epsilon, args.delta,
                                                 args.gamma)
            extra["derived_sample_count"] = sample_count
        estimates = sampled_dataset_run(
            graphs, args.k, h, seed=args.seed, interner=interner,
            mode=args.mode, sample_count=sample_count, epsilon=args.epsilon,
            delta=args.delta, initial_size=args.initial_samples,
            growth=args.growth, strict_delta=args.strict_delta,
            max_total_samples=args.max_samples, pool=pool)
        features = [est.to_feature_vector() for est in estimates]
        extra["label_space"] = len(interner)
        extra["sample_counts"] = [est.sample_count for est in estimates]
        undersized = [i for i, est in enumerate(estimates) if est.undersized]
        if undersized:
            extra["undersized_graphs"] = undersized
        if args.mode == "adaptive":
            extra["rounds"] = {str(i): est.rounds
                               for i, est in enumerate(estimates)}

    if args.normalize == "l1-block":
        features = [l1_normalize(fv, "per-block") for fv in features]
    elif args.normalize == "l1-full":
        features = [l1_normalize(fv, "whole-vector") for fv in features]
    return features, extra


def _manifest(args, path: str, timings: dict, extra: dict) -> None:
    payload = {
        "tool": {"name": "ksetwl", "version": __version__},
        "config": {key: value for key, value in sorted(vars(args).items())
                   if key != "command"},
        "command": args.command,
        "wall_times_sec": timings,
        **extra,
    }
    with open(path + ".manifest.json", "w") as f:
        json.dump(payload, f, indent=2, default=str)
        f.write("\n")


def _output_path(base: str, h: int, sweeping: bool) -> str:
    return f"{base}.h{h}" if sweeping else base


def _run_info(args) -> int:
    ds = parse_tu_dataset(args.dataset, args.name)
    stats = ds.stats()
    print(f"dataset: {stats['name']}")
    print(f"graphs: {stats['graphs']}")
    print(f"classes: {stats['classes']}")
    print(f"avg nodes: {stats['avg_nodes']:.1f}")
    print(f"avg edges: {stats['avg_edges']:.1f}")
    print(f"node labels: {'yes' if stats['node_labels'] else 'no'}")
    print(f"edge labels: {'yes' if stats['edge_labels'] else 'no'}")
    return 0


def _run_sample_size(args) -> int:
    if args.dataset_size is None:
        print(hoeffding_sample_size(args.epsilon, args.delta, args.gamma))
    else:
        print(hoeffding_sample_size_dataset(args.epsilon, args.delta,
                                            args.gamma, args.dataset_size))
    return 0


def _run_compute(args) -> int:
    h_values = _parse_h_values(args)
    _validate_mode(args)
    t0 = time.perf_counter()
    ds = parse_tu_dataset(args.dataset, args.name)
    t_load = time.perf_counter() - t0
    sweeping = len(h_values) > 1
    with DeterministicPool(args.threads) as pool:
        for h in h_values:
            t1 = time.perf_counter()
            features, extra = _compute_features(ds.graphs, args, h, pool)
            t_compute = time.perf_counter() - t1
            out = _output_path(args.output, h, sweeping)
            t2 = time.perf_counter()
            if args.command == "features":
                write_features_sparse(features, ds.class_labels, out)
            else:
                K = gram_matrix(features, pool=pool)
                if args.gram_normalize:
                    K = cosine_normalize_gram(K)
                if args.format == "libsvm":
                    write_gram_libsvm(K, ds.class_labels, out)
                else:
                    write_gram_csv(K, out)
            t_write = time.perf_counter() - t2
            _manifest(args, out,
                      {"load": t_load, "compute": t_compute, "write": t_write},
                      {**extra, "h": h})
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "info":
            return _run_info(args)
        if args.command == "sample-size":
            return _run_sample_size(args)
        return _run_compute(args)
    except ParameterError as exc:
        print(f"ksetwl: usage error: {exc}", file=sys.stderr)
        return 1
    except (FormatError, GraphError, OSError) as exc:
        print(f"ksetwl: data error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"ksetwl: resource limit: {exc}", file=sys.stderr)
        return 3
    except KsetwlError as exc:
        print(f"ksetwl: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

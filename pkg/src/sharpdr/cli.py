"""Command-line pipeline: generate -> sharpen -> project -> evaluate.

Every subcommand reads and writes the formats defined in ``dataio``; file
handoff keeps pipelines reproducible (same inputs and seeds give
bit-identical outputs).  The ``pipeline`` subcommand replays a JSON list
of stages for one-command experiment scripts.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import dataio, datasets, project, quality, synthetic
from .sharpen import LgcParams, lgc_sharpen


def _table_summary(table: dataio.DataTable) -> str:
    parts = [f"{table.n_rows} rows x {table.n_cols} cols"]
    if table.labels is not None:
        parts.append(f"{len(set(table.labels))} classes")
    return ", ".join(parts)


def cmd_generate(args) -> int:
    if bool(args.preset) == bool(args.kind):
        raise ValueError("choose exactly one of --preset or --kind")
    if args.preset:
        table = synthetic.gen_preset(args.preset, seed=args.seed,
                                     n_points=args.n_points)
    else:
        params = json.loads(args.params) if args.params else {}
        table = synthetic.gen_special(args.kind, params, seed=args.seed)
    dataio.write_table(table, args.output)
    print(f"wrote {args.output}: {_table_summary(table)}")
    return 0


def cmd_sharpen(args) -> int:
    table = dataio.read_table(args.input)
    params = LgcParams(ks=args.ks, iterations=args.iterations,
                       alpha=args.alpha, epsilon=args.epsilon)
    result = lgc_sharpen(table, params, normalize=not args.no_normalize,
                         workers=args.threads)
    dataio.write_table(result.sharpened, args.output)
    shifts = ", ".join(f"{v:.4f}" for v in result.trajectory_summary)
    print(f"wrote {args.output}: {_table_summary(result.sharpened)}")
    if shifts:
        print(f"mean shift per iteration: {shifts}")
    return 0


def cmd_project(args) -> int:
    table = dataio.read_table(args.input)
    attrs = dataio.read_table(args.attrs) if args.attrs else table
    if attrs.n_rows != table.n_rows:
        raise ValueError(
            f"attribute table has {attrs.n_rows} rows, input has "
            f"{table.n_rows}"
        )
    if args.import_coords:
        coords_table = dataio.read_table(args.import_coords)
        if coords_table.n_rows != table.n_rows:
            raise ValueError(
                f"imported embedding has {coords_table.n_rows} rows but the "
                f"table has {table.n_rows}"
            )
        embedding = dataio.Embedding.for_table(
            table, coords_table.points, "import",
            {"source": Path(args.import_coords).name})
    elif args.method == "rp":
        embedding = project.random_projection(table, s=2, seed=args.seed)
    elif args.method == "lmds":
        embedding = project.landmark_mds(table, s=2,
                                         landmark_ratio=args.ratio,
                                         seed=args.seed)
    elif args.method == "mds":
        coords = project.classical_mds(
            project.pairwise_distances(table.points), s=2)
        embedding = dataio.Embedding.for_table(table, coords, "mds", {})
    elif args.method == "pca":
        embedding = project.pca_transform(project.pca_fit(table), table, s=2)
    else:
        raise ValueError("--method is required unless --import is given")
    dataio.write_bundle(attrs, embedding, args.output)
    print(f"wrote {args.output}: method={embedding.method}, "
          f"{embedding.n_rows} points")
    return 0


def _resolve_k_grid(spec: str | None, m: int) -> list[int]:
    if spec:
        ks = sorted({int(tok) for tok in spec.replace(",", " ").split()})
    else:
        ks = list(quality.DEFAULT_K_GRID)
    usable = [k for k in ks if 1 <= k <= m - 1]
    dropped = sorted(set(ks) - set(usable))
    if dropped:
        print(f"warning: dropping k values outside [1, {m - 1}]: {dropped}",
              file=sys.stderr)
    if not usable:
        raise ValueError(f"no usable k values for m={m}")
    return usable


def cmd_evaluate(args) -> int:
    table = dataio.read_table(args.input)
    labels = table.labels
    coords = None
    bundle_labels = None
    if args.bundle:
        _, embedding, bundle_labels = dataio.read_bundle(args.bundle)
        if embedding.n_rows != table.n_rows:
            raise ValueError(
                f"bundle has {embedding.n_rows} rows but the table has "
                f"{table.n_rows}"
            )
        coords = embedding.coords
        if bundle_labels is not None:
            if None in bundle_labels:
                print("warning: bundle labels are partial and are ignored; "
                      "pass --labels to score a partial assignment",
                      file=sys.stderr)
            else:
                labels = bundle_labels
    data = table.points
    keep = None
    if args.labels:
        assignment = dataio.read_label_csv(args.labels)
        assignment.validate_for(table.n_rows)
        assigned = assignment.as_label_list(table.n_rows)
        keep = np.array([v is not None for v in assigned])
        if not keep.any():
            raise ValueError(f"{args.labels}: no assigned labels")
        if not keep.all():
            print(
                f"warning: {int((~keep).sum())} of {table.n_rows} rows are "
                "unlabeled; metrics are computed on the labeled subset",
                file=sys.stderr)
            data = data[keep]
            coords = coords[keep] if coords is not None else None
        labels = [v for v in assigned if v is not None]
    m = data.shape[0]
    k_grid = _resolve_k_grid(args.k, m)
    max_rank_k = quality.max_k_trustworthiness(m)
    if coords is not None and any(k > max_rank_k for k in k_grid):
        print(
            "warning: trustworthiness/continuity need k < m/2; values above "
            f"{max_rank_k} are reported empty for those metrics",
            file=sys.stderr)
    report = quality.metric_report(
        data if coords is not None else None,
        coords if coords is not None else data,
        labels,
        k_grid,
        metadata={"input": str(args.input),
                  "bundle": str(args.bundle) if args.bundle else None},
    )
    header = f"{'k':>6} {'Qt':>10} {'Qc':>10} {'Qj':>10} {'Qh':>10}"
    print(header)
    for k, qt, qc, qj, qh in report.rows():
        cells = [f"{k:>6}"]
        for v in (qt, qc, qj, qh):
            cells.append(f"{v:>10.6f}" if v is not None else f"{'-':>10}")
        print(" ".join(cells))
    if args.output:
        report.to_csv(args.output)
        print(f"wrote {args.output}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {args.json}")
    return 0


def cmd_traits(args) -> int:
    table = dataio.read_table(args.input)
    report = quality.data_traits(table)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        print(f"size:            {report.size_class} (N={report.n_rows})")
        print(f"dimensionality:  {report.dim_class} (n={report.n_cols})")
        print(f"intrinsic ratio: {report.idr_class} ({report.idr:.4f})")
        if report.class_count is not None:
            print(f"classes:         {report.class_count_class} "
                  f"(g={report.class_count})")
    return 0


def cmd_dataset(args) -> int:
    table = datasets.load_dataset(args.id, path=args.from_path)
    if args.output:
        dataio.write_table(table, args.output)
        print(f"wrote {args.output}: {_table_summary(table)}")
    else:
        print(f"{args.id}: {_table_summary(table)}")
    return 0


def cmd_pipeline(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        config = json.load(fh)
    stages = config.get("stages") if isinstance(config, dict) else config
    if not isinstance(stages, list) or not stages:
        raise ValueError(f"{args.config}: expected a non-empty 'stages' list")
    for i, stage in enumerate(stages, start=1):
        if isinstance(stage, dict):
            argv = stage.get("args")
            name = stage.get("name", f"stage {i}")
        else:
            argv = stage
            name = f"stage {i}"
        if not isinstance(argv, list) or not argv:
            raise ValueError(f"{args.config}: stage {i} has no argument list")
        argv = [str(a) for a in argv]
        print(f"[{name}] sharpdr {' '.join(argv)}")
        code = main(argv)
        if code != 0:
            print(f"error: pipeline {name} ({argv[0]}) failed", file=sys.stderr)
            return code
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sharpdr",
        description=("Sharpen high-dimensional clusters, project to 2D, and "
                     "score projection quality."),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic benchmark CSV")
    p.add_argument("--preset",
                   choices=synthetic.MIXTURE_PRESETS + (synthetic.NOISY_PRESET,))
    p.add_argument("--kind", choices=synthetic.SPECIAL_KINDS)
    p.add_argument("--params", help="JSON dict of generator parameters")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n-points", type=int, default=5000,
                   help="sample count for mixture presets (default 5000)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("sharpen", help="run density-gradient sharpening")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--ks", type=int, default=50)
    p.add_argument("-T", "--iterations", type=int, default=10)
    p.add_argument("--alpha", type=float, default=0.15)
    p.add_argument("--epsilon", type=float, default=1e-5)
    p.add_argument("--no-normalize", action="store_true",
                   help="skip per-column min-max normalization")
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap for neighbor queries (results identical)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_sharpen)

    p = sub.add_parser("project", help="project a table into a 2D bundle")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-m", "--method", choices=("rp", "lmds", "mds", "pca"))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--ratio", type=float, default=0.05,
                   help="landmark ratio for lmds (default 0.05)")
    p.add_argument("--attrs",
                   help="table whose columns become the bundle attributes "
                        "(default: the input table)")
    p.add_argument("--import", dest="import_coords",
                   help="wrap an externally computed 2D embedding CSV")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("evaluate", help="score a projection or labeled table")
    p.add_argument("-i", "--input", required=True,
                   help="data-space table CSV")
    p.add_argument("-b", "--bundle", help="projection bundle to score")
    p.add_argument("--labels", help="row_index,label CSV overriding labels")
    p.add_argument("--k", help="comma-separated neighborhood sizes")
    p.add_argument("-o", "--output", help="write the report as CSV")
    p.add_argument("--json", help="write the report as JSON")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("traits", help="classify data set traits")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_traits)

    p = sub.add_parser("dataset", help="materialize a vendored data set")
    p.add_argument("id", choices=datasets.dataset_ids())
    p.add_argument("--from", dest="from_path",
                   help="parse a user-supplied native-format file instead")
    p.add_argument("-o", "--output", help="write as table CSV")
    p.set_defaults(func=cmd_dataset)

    p = sub.add_parser("pipeline", help="run a JSON config of stages")
    p.add_argument("config")
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

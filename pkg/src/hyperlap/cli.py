"""Command line interface.

Two subcommands:

  hyperlap embed  - build (or load) a hypergraph and write spectral
                    embedding coordinates as CSV
  hyperlap eval   - run the variant x dimension x classifier grid on a
                    labeled dataset and write a JSON (and Markdown) report

Exit codes: 0 success, 1 input error, 2 numerical failure.  Every flag can
also be set in a TOML config file (--config); explicit command-line flags
take precedence over config values.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from .classify import SingularSystemError
from .construction import PointCloud, knn_hyperedges
from .harness import (
    CLASSIFIERS,
    load_csv,
    normalize_features,
    run_experiment,
    stratified_split,
)
from .hypergraph import hypergraph_from_json, hypergraph_to_json
from .spectral import NoConvergenceError, eigenmap, embedding_to_csv

_VARIANT_BY_FLAG = {"comb": "combinatorial", "rw": "random_walk", "sym": "symmetric"}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1 (input error)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_construction_flags(p: argparse.ArgumentParser):
    p.add_argument("--knn-hyperedge", type=int, default=5, metavar="K_H",
                   help="neighbors per hyperedge anchor (default 5)")
    p.add_argument("--edge-weight", choices=["unit", "gaussian"], default="unit",
                   help="hyperedge weighting scheme (default unit)")
    p.add_argument("--sigma", default="auto", metavar="FLOAT|auto",
                   help="gaussian weighting bandwidth (default auto: median rule)")
    p.add_argument("--normalize", choices=["none", "unit", "zscore"], default="none",
                   help="feature preprocessing (default none)")


def _build_parser():
    parser = _Parser(prog="hyperlap",
                     description="Hypergraph Laplacian eigenmap toolkit")
    sub = parser.add_subparsers(dest="command", metavar="{embed,eval}")

    embed = sub.add_parser("embed", help="write spectral embedding coordinates")
    embed.add_argument("--input", metavar="CSV", help="label-first CSV of samples")
    embed.add_argument("--hypergraph-in", metavar="JSON",
                       help="load this hypergraph instead of building one")
    embed.add_argument("--hypergraph-out", metavar="JSON",
                       help="also write the constructed hypergraph")
    embed.add_argument("--laplacian", choices=sorted(_VARIANT_BY_FLAG), default="comb",
                       help="Laplacian variant (default comb)")
    embed.add_argument("--dim", type=int, help="explicit embedding dimension")
    embed.add_argument("--auto", choices=["components", "gap-diff", "gap-ratio"],
                       help="dimension selection rule instead of --dim")
    _add_construction_flags(embed)
    embed.add_argument("--output", metavar="CSV", help="embedding destination")
    embed.add_argument("--config", metavar="TOML", help="config file with flag defaults")

    ev = sub.add_parser("eval", help="run the evaluation grid")
    ev.add_argument("--input", metavar="CSV", help="label-first CSV of samples")
    ev.add_argument("--train-per-class", type=int, default=8,
                    help="training samples per class (default 8)")
    ev.add_argument("--seed", type=int, default=42, help="split seed (default 42)")
    ev.add_argument("--grid-dims", default="20,30,40", metavar="D1,D2,...",
                    help="embedding dimensions (default 20,30,40)")
    ev.add_argument("--laplacians", default="comb,rw,sym", metavar="V1,V2,...",
                    help="Laplacian variants from {comb,rw,sym} (default all)")
    ev.add_argument("--classifier", default="knn", metavar="{knn,krr}[,...]",
                    help="classifier(s) for the grid (default knn)")
    ev.add_argument("--knn-k", type=int, default=1,
                    help="kNN classifier neighbor count (default 1)")
    ev.add_argument("--ridge", type=float, default=1e-3,
                    help="kernel ridge regularization (default 1e-3)")
    ev.add_argument("--bandwidth", default="auto", metavar="FLOAT|auto",
                    help="RBF kernel bandwidth (default auto: median rule)")
    _add_construction_flags(ev)
    ev.add_argument("--report", metavar="JSON", help="report destination")
    ev.add_argument("--markdown", metavar="MD", help="also write a Markdown table")
    ev.add_argument("--config", metavar="TOML", help="config file with flag defaults")

    return parser, {"embed": embed, "eval": ev}


def _apply_config(subparser: argparse.ArgumentParser, path: str):
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    allowed = {a.dest for a in subparser._actions} - {"help", "config"}
    unknown = set(data) - allowed
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    normalized = {
        key: ",".join(str(v) for v in value) if isinstance(value, list) else value
        for key, value in data.items()
    }
    subparser.set_defaults(**normalized)


def _float_or_auto(value) -> float | str:
    if value == "auto":
        return "auto"
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ValueError(f"expected a float or 'auto', got {value!r}") from None


def _split_list(value) -> list[str]:
    if isinstance(value, (list, tuple)):
        return [str(v) for v in value]
    return [part.strip() for part in str(value).split(",") if part.strip()]


def _require(parser, args, *names):
    for name in names:
        if getattr(args, name.replace("-", "_"), None) is None:
            parser.error(f"--{name} is required (flag or config)")


def _run_embed(parser, args):
    _require(parser, args, "output")
    if args.dim is not None and args.auto is not None:
        parser.error("--dim and --auto are mutually exclusive")
    if args.dim is None and args.auto is None:
        parser.error("one of --dim or --auto is required")

    if args.hypergraph_in is not None:
        graph = hypergraph_from_json(Path(args.hypergraph_in).read_text())
    else:
        _require(parser, args, "input")
        ds = load_csv(args.input)
        features = normalize_features(ds.samples, args.normalize)
        graph = knn_hyperedges(
            PointCloud(features),
            k_h=args.knn_hyperedge,
            weighting=args.edge_weight,
            sigma=_float_or_auto(args.sigma),
        )
    if args.hypergraph_out is not None:
        Path(args.hypergraph_out).write_text(hypergraph_to_json(graph))

    k = args.dim if args.dim is not None else args.auto
    emb = eigenmap(graph, _VARIANT_BY_FLAG[args.laplacian], k)
    Path(args.output).write_text(embedding_to_csv(emb))
    print(f"wrote {emb.coordinates.shape[0]} x {emb.k} embedding to {args.output}")


def _run_eval(parser, args):
    _require(parser, args, "input", "report")
    try:
        variants = [_VARIANT_BY_FLAG[v] for v in _split_list(args.laplacians)]
    except KeyError as exc:
        parser.error(f"unknown Laplacian {exc.args[0]!r}, expected comb, rw, or sym")
    classifiers = _split_list(args.classifier)
    for c in classifiers:
        if c not in CLASSIFIERS:
            parser.error(f"unknown classifier {c!r}, expected knn or krr")
    dims = [int(d) for d in _split_list(args.grid_dims)]

    ds = load_csv(args.input)
    split = stratified_split(ds, args.train_per_class, args.seed)
    report = run_experiment(
        split,
        variants=variants,
        dims=dims,
        classifiers=classifiers,
        knn_k=args.knn_k,
        ridge=args.ridge,
        bandwidth=_float_or_auto(args.bandwidth),
        k_h=args.knn_hyperedge,
        weighting=args.edge_weight,
        sigma=_float_or_auto(args.sigma),
        normalize=args.normalize,
    )
    Path(args.report).write_text(report.to_json())
    if args.markdown is not None:
        Path(args.markdown).write_text(report.to_markdown())
    print(report.to_markdown(), end="")


def main(argv=None) -> int:
    parser, subparsers = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.error("a subcommand is required")
        if getattr(args, "config", None):
            _apply_config(subparsers[args.command], args.config)
            args = parser.parse_args(argv)
        if args.command == "embed":
            _run_embed(subparsers["embed"], args)
        else:
            _run_eval(subparsers["eval"], args)
    except SystemExit as exc:  # argparse --help (0) or usage errors (1)
        return exc.code if isinstance(exc.code, int) else 1
    except (NoConvergenceError, SingularSystemError, np.linalg.LinAlgError) as exc:
        print(f"hyperlap: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"hyperlap: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

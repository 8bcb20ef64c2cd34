"""Command-line entry point: generate, extract, train, evaluate, classify, serve.

Exit codes: 0 success, 1 usage error, 2 data error. Every subcommand prints
its effective seed (or ``none`` for deterministic stages) to stderr so runs
can be replayed from logs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import CmstructError, MalformedInput
from .evaluation import (
    EvalProtocol,
    benchmark_all,
    cross_validate,
    dataset_from_rows,
    render_table,
)
from .features import extract_features, read_features_csv, write_features_csv
from .generate import (
    DEFAULT_HUBS,
    DEFAULT_NOISE,
    DEFAULT_SIZE_RANGE,
    GeneratorParams,
    default_params,
    generate_corpus,
    manifest_to_bytes,
)
from .graph import parse_map, scan_directory, serialize_map, validate
from .labels import LABELS, StructureLabel
from .models import MODEL_KINDS, ModelSpec, fit, load_model, predict, predict_scores, save_model


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; the CLI contract wants 1
    def error(self, message):
        raise UsageError(message)


def _note(text: str) -> None:
    print(text, file=sys.stderr)


def _build_parser() -> _Parser:
    parser = _Parser(prog="cmstruct", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write a synthetic labeled corpus")
    p.add_argument("--out", required=True, help="output directory for maps + manifest.json")
    p.add_argument("--per-class", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", type=float, default=DEFAULT_NOISE,
                   help="cross-edge probability; chain branch_prob is 2x this")
    p.add_argument("--size-min", type=int, default=DEFAULT_SIZE_RANGE[0])
    p.add_argument("--size-max", type=int, default=DEFAULT_SIZE_RANGE[1])
    p.add_argument("--hubs", type=int, default=DEFAULT_HUBS, help="hub count for spoke maps")

    p = sub.add_parser("extract", help="features CSV from a map directory")
    p.add_argument("--maps", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--ddof", type=int, choices=(0, 1), default=0)
    p.add_argument("--quantile-method", choices=("linear",), default="linear",
                   help="reserved for alternate quantile conventions")

    p = sub.add_parser("train", help="fit one model on a features CSV")
    p.add_argument("--features", required=True)
    p.add_argument("--model", required=True, choices=MODEL_KINDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--folds", type=int, default=5, help="CV folds for the printed summary; 0 skips")

    p = sub.add_parser("evaluate", help="full benchmark protocol + report")
    p.add_argument("--features", required=True)
    p.add_argument("--out", required=True, help="report JSON path")
    p.add_argument("--models", default=",".join(MODEL_KINDS),
                   help="comma-separated model kinds")
    p.add_argument("--per-class", type=int, default=100)
    p.add_argument("--test-fraction", type=float, default=0.2)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--repeats", type=int, default=5, help="permutation importance repeats")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-table", action="store_true", help="do not print the text table")

    p = sub.add_parser("classify", help="label maps with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--map", required=True, dest="map_path",
                   help="a map file or a directory of maps")

    p = sub.add_parser("serve", help="HTTP classification service")
    p.add_argument("--model", required=True)
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static", default=None, help="directory of UI assets served under /")

    return parser


def _cmd_generate(args) -> int:
    _note(f"# seed: {args.seed}")
    params = default_params(args.noise)
    size_range = (args.size_min, args.size_max)
    params = {
        label: GeneratorParams(
            kind=label,
            size_range=size_range,
            hubs=args.hubs if label is StructureLabel.SPOKE else 1,
            branch_prob=params[label].branch_prob,
            extra_edge_prob=params[label].extra_edge_prob,
        )
        for label in LABELS
    }
    corpus = generate_corpus(args.per_class, params, master_seed=args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for cm, _ in corpus.entries:
        (out / f"{cm.map_id}.json").write_bytes(serialize_map(cm))
    (out / "manifest.json").write_bytes(manifest_to_bytes(corpus.manifest))
    print(f"wrote {len(corpus.entries)} maps to {out}")
    return 0


def _infer_label(map_id: str) -> StructureLabel | None:
    prefix = map_id.split("-", 1)[0]
    try:
        return StructureLabel.from_name(prefix)
    except ValueError:
        return None


def _cmd_extract(args) -> int:
    _note("# seed: none (deterministic)")
    rows = []
    for path, cm in scan_directory(args.maps):
        fv = extract_features(validate(cm), ddof=args.ddof)
        rows.append((fv, _infer_label(cm.map_id)))
    write_features_csv(args.out, rows)
    print(f"wrote {len(rows)} feature rows to {args.out}")
    return 0


def _cmd_train(args) -> int:
    _note(f"# seed: {args.seed}")
    rows = read_features_csv(args.features)
    ds = dataset_from_rows(rows, provenance=str(args.features))
    skipped = len(rows) - len(ds)
    if skipped:
        _note(f"# skipped {skipped} unlabeled rows")
    if not len(ds):
        raise MalformedInput(f"no labeled rows in {args.features}")
    spec = ModelSpec(kind=args.model, seed=args.seed)
    if args.folds:
        cv = cross_validate(spec, ds, args.folds, args.seed)
        accs = ", ".join(f"{a:.3f}" for a in cv["fold_accuracies"])
        print(f"{args.folds}-fold CV accuracy: mean {cv['mean']:.3f} (folds: {accs})")
    X, y = ds.to_arrays()
    model = fit(spec, X, y)
    Path(args.out).write_bytes(save_model(model))
    print(f"wrote {args.model} model to {args.out}")
    return 0


def _cmd_evaluate(args) -> int:
    _note(f"# seed: {args.seed}")
    kinds = [k.strip() for k in args.models.split(",") if k.strip()]
    for kind in kinds:
        if kind not in MODEL_KINDS:
            raise UsageError(f"unknown model kind {kind!r}")
    ds = dataset_from_rows(read_features_csv(args.features), provenance=str(args.features))
    if not len(ds):
        raise MalformedInput(f"no labeled rows in {args.features}")
    protocol = EvalProtocol(
        per_class=args.per_class,
        test_fraction=args.test_fraction,
        folds=args.folds,
        importance_repeats=args.repeats,
        seed=args.seed,
    )
    specs = [ModelSpec(kind=kind, seed=args.seed) for kind in kinds]
    report = benchmark_all(ds, specs, protocol)
    Path(args.out).write_bytes(report.to_json())
    if not args.no_table:
        print(render_table(report), end="")
    _note(f"# report written to {args.out}")
    return 0


def _cmd_classify(args) -> int:
    _note("# seed: none (deterministic)")
    model = load_model(Path(args.model).read_bytes())
    target = Path(args.map_path)
    if target.is_dir():
        maps = [cm for _, cm in scan_directory(target)]
    else:
        fmt = target.suffix.lstrip(".")
        maps = [parse_map(target.read_bytes(), fmt, map_id=target.stem)]
    for cm in maps:
        fv = extract_features(validate(cm))
        label = predict(model, fv)
        score = float(predict_scores(model, fv).max())
        print(f"{cm.map_id}\t{label.wire_name}\t{score:.6f}")
    return 0


def _cmd_serve(args) -> int:
    _note("# seed: none (deterministic)")
    from .service import run_server  # deferred: keeps CLI import light

    run_server(args.model, host=args.host, port=args.port, static_dir=args.static)
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "extract": _cmd_extract,
    "train": _cmd_train,
    "evaluate": _cmd_evaluate,
    "classify": _cmd_classify,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except CmstructError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error[IO]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

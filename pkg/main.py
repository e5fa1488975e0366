"""Command-line experiments on automatic presentations of Cayley graphs.

    python main.py growth --preset z1 --N 50
    python main.py avglen --preset f2 --N 8 --format json
    python main.py drift --group lamplighter --gens S1 --n-grid 100,300,1000 --samples 2000

Exit codes: 0 success, 1 computation or domain failure, 2 configuration error.
"""

import argparse
import csv
import io
import json
import logging
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from characteristics import (
    FAMILIES,
    ImageGraph,
    avg_length_exact,
    avg_length_mc,
    ball_family,
    folner_exact,
    folner_upper,
    growth,
    interval_family,
    rectangle_family,
)
from config import get_settings
from errors import AlphabetMismatchError, BudgetExceededError, CayleyError, ConfigError, FormatError
from notify import publish_summary, run_summary
from oracles import ball, tape_counts
from presentations import fit_length_bounds, isomorphic_to_oracle, validate
from presets import DRIFT_GENERATORS, PRESETS, drift_group, get_preset, oracle, presentation, transducer
from series import classify_growth, fit_power, fit_recurrence
from storage import load_bundle, save_bundle, to_dot
from transducer import from_presentation, translate
from walks import walk_drift, walk_range

__version__ = "1.0.0"

logger = logging.getLogger("cayley")

DOCUMENT_COMMANDS = ("translate", "fit", "iso-check")


# output


def _rational(value):
    value = Fraction(value)
    return [value.numerator, value.denominator, float(value)]


def _metadata(args, settings, extra=None):
    skipped = {"handler", "format"} if args.command in DOCUMENT_COMMANDS else {"handler"}
    config = {k: v for k, v in vars(args).items() if k not in skipped and v is not None}
    meta = {
        "tool": "cayley-experiments",
        "version": __version__,
        "command": args.command,
        "seed": args.seed,
        "environment": settings.environment,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "config": {k: str(v) if isinstance(v, (Fraction, Path)) else v for k, v in config.items()},
    }
    meta.update(extra or {})
    return meta


def _destination(args, settings):
    if not args.output or args.output == "-":
        return None
    path = Path(args.output)
    if not path.is_absolute() and path.parent == Path("."):
        path = settings.output_dir / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def emit(args, settings, columns, rows, extra=None):
    meta = _metadata(args, settings, extra)
    if args.format == "json":
        text = json.dumps({"metadata": meta, "rows": [dict(zip(columns, row)) for row in rows]}, indent=2) + "\n"
    else:
        buffer = io.StringIO()
        for key, value in meta.items():
            buffer.write(f"# {key}: {json.dumps(value, ensure_ascii=False)}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
        text = buffer.getvalue()
    path = _destination(args, settings)
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)
        logger.info("wrote %s", path)
    return len(rows)


def emit_document(args, settings, document):
    document = {"metadata": _metadata(args, settings), **document}
    text = json.dumps(document, indent=2, ensure_ascii=False, default=str) + "\n"
    path = _destination(args, settings)
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)
    return 1


# sources


def _bundle(path):
    if not Path(path).is_dir():
        raise ConfigError(f"unknown bundle {path!r}: no such directory")
    return load_bundle(path)


def _presentation(args):
    if getattr(args, "bundle", None):
        return _bundle(args.bundle)
    return presentation(args.preset)


def _transducer(args):
    if getattr(args, "bundle", None):
        return from_presentation(_bundle(args.bundle))
    return transducer(args.preset)


def _name(args):
    return getattr(args, "bundle", None) or getattr(args, "preset", None) or getattr(args, "group", None)


# commands


def cmd_list(args, settings):
    rows = [[p.name, p.description] for p in PRESETS.values()]
    rows.append(["g2", "(ℤ₂ ≀ ℤ) ≀ ℤ, oracle only, generators Q ∪ Q⁻¹"])
    return emit(args, settings, ["name", "description"], rows, {"tape_counts": tape_counts(3)})


def cmd_export(args, settings):
    p = presentation(args.preset)
    save_bundle(p, args.dir)
    if args.dot:
        for j, edge in enumerate(p.edges):
            (Path(args.dir) / f"edge_{j}.dot").write_text(to_dot(edge, f"{p.title} {p.names[j]}"))
    return emit(args, settings, ["file"], [[str(f)] for f in sorted(Path(args.dir).iterdir())])


def cmd_validate(args, settings):
    p = _presentation(args)
    report = validate(p)
    rows = [[c.name, c.passed, "" if c.witness is None else json.dumps(c.witness)] for c in report.checks]
    emit(args, settings, ["check", "passed", "witness"], rows, {"valid": report.ok})
    return len(rows) if report.ok else -1


def cmd_translate(args, settings):
    t = _transducer(args)
    try:
        word = t.alphabet.parse(args.word)
    except AlphabetMismatchError as e:
        logger.warning("rejecting %r: %s", args.word, e)
        emit_document(args, settings, {"input": args.word, "outputs": [], "accepted": False})
        return 1
    result = translate(t, word)
    document = result.as_dict(t.alphabet)
    document["names"] = list(t.presentation.names)
    return emit_document(args, settings, document)


def _growth_rows(record):
    return [[n, b, w] for n, (b, w) in enumerate(zip(record.values, record.frontier_sizes))]


def cmd_growth(args, settings):
    columns = ["n", "b_n", "W_n"]
    try:
        record = growth(_transducer(args), args.N, max_words=settings.max_words)
    except BudgetExceededError as e:
        emit(args, settings, columns, _growth_rows(e.partial), {"partial": True, "note": str(e)})
        raise
    return emit(args, settings, columns, _growth_rows(record))


def cmd_folner(args, settings):
    t = _transducer(args)
    graph = ImageGraph(t)
    if args.mode == "exact":
        report = folner_exact(
            t,
            args.epsilon,
            args.max_size,
            args.radius,
            max_candidates=settings.max_candidates,
            graph=graph,
            max_words=settings.max_words,
        )
    else:
        if args.family == "balls":
            family = ball_family(t, args.radius, graph, settings.max_words)
        elif args.family == "intervals":
            family = interval_family(t, args.max_size, graph=graph)
        else:
            family = rectangle_family(t, args.radius)
        report = folner_upper(t, family, args.epsilon, graph, args.family)
    row = [report.size, len(report.boundary), *_rational(report.ratio), str(report.epsilon)]
    row += [report.family, report.exact]
    columns = ["size", "boundary", "ratio_num", "ratio_den", "ratio_float", "epsilon", "family", "exact"]
    return emit(args, settings, columns, [row])


def cmd_avglen(args, settings):
    t = _transducer(args)
    if args.mc:
        rows = []
        for n in args.n_grid or [args.N]:
            estimate = avg_length_mc(t, n, args.samples or settings.samples, args.seed, args.threads)
            rows.append([estimate.n, estimate.mean, estimate.stderr, estimate.samples])
        return emit(args, settings, ["n", "mean", "stderr", "samples"], rows)
    columns = ["n", "l_n_num", "l_n_den", "l_n_float", "distinct_words"]
    try:
        records = avg_length_exact(t, args.N, max_words=settings.max_words)
    except BudgetExceededError as e:
        rows = [[r.n, *_rational(r.value), r.distinct_words] for r in e.partial or []]
        emit(args, settings, columns, rows, {"partial": True, "note": str(e)})
        raise
    return emit(args, settings, columns, [[r.n, *_rational(r.value), r.distinct_words] for r in records])


def _walk_rows(args, settings, functional):
    group = drift_group(args.group, args.gens)
    samples = args.samples or settings.samples
    estimates = []
    for n in args.n_grid:
        if functional == "drift":
            estimates.append(walk_drift(group, n, samples, args.seed, args.threads, settings.length_cap))
        else:
            estimates.append(walk_range(group, n, samples, args.seed, args.threads))
    extra = {"generators": len(group.generators), "length_method": group.length_method}
    points = [(e.n, e.mean) for e in estimates if e.n > 0 and e.mean > 0]
    if len(points) >= 2:
        fit = fit_power([n for n, _ in points], [m for _, m in points], window=(0, len(points)))
        extra["exponent"] = fit.exponent
        extra["fit"] = fit.as_dict()
    rows = [[e.n, e.mean, e.stderr, e.samples, e.invalid] for e in estimates]
    return emit(args, settings, ["n", "mean", "stderr", "samples", "invalid"], rows, extra)


def cmd_drift(args, settings):
    return _walk_rows(args, settings, "drift")


def cmd_range(args, settings):
    return _walk_rows(args, settings, "range")


def _read_table(path):
    try:
        with open(path) as file:
            lines = [line for line in file if not line.startswith("#")]
    except FileNotFoundError as e:
        raise ConfigError(f"input file not found: {path}") from e
    rows = list(csv.DictReader(lines))
    if not rows:
        raise FormatError(f"{path} has no data rows")
    return rows


def cmd_fit(args, settings):
    rows = _read_table(args.input)
    columns = list(rows[0])
    column = args.column or columns[1]
    if column not in columns:
        raise ConfigError(f"column {column!r} not in {columns}")
    if args.mode == "power":
        xs = [float(r[columns[0]]) for r in rows]
        ys = [float(r[column]) for r in rows]
        window = tuple(int(x) for x in args.window.split(":")) if args.window else None
        return emit_document(args, settings, {"mode": "power", "fit": fit_power(xs, ys, window).as_dict()})
    values = [int(Fraction(r[column])) for r in rows]
    if args.mode == "classify":
        return emit_document(args, settings, {"mode": "classify", "growth": classify_growth(values).as_dict()})
    fit = fit_recurrence(values, args.max_order, args.holdout)
    return emit_document(args, settings, {"mode": "recurrence", "fit": fit.as_dict() if fit else None})


def cmd_ball(args, settings):
    group = drift_group(args.group, args.gens)
    try:
        _, spheres = ball(group, args.radius, limit=settings.max_words)
    except BudgetExceededError as e:
        spheres = e.partial or []
        emit(args, settings, ["r", "sphere", "ball"], _ball_rows(spheres), {"partial": True, "note": str(e)})
        raise
    return emit(args, settings, ["r", "sphere", "ball"], _ball_rows(spheres))


def _ball_rows(spheres):
    rows, total = [], 0
    for r, size in enumerate(spheres):
        total += size
        rows.append([r, size, total])
    return rows


def cmd_iso_check(args, settings):
    p = presentation(args.preset)
    preset = get_preset(args.preset)
    result = isomorphic_to_oracle(p, oracle(args.preset), args.radius)
    document = {"ok": result.ok, "vertices": len(result.mapping), "radius": args.radius}
    if result.conflict is not None:
        word, label, image, element = result.conflict
        document["conflict"] = {
            "word": p.render(word),
            "label": p.names[label],
            "image": None if image is None else p.render(image),
            "element": repr(element),
            "expected": p.render(preset.encode(element)),
        }
    if args.bounds:
        bounds = fit_length_bounds(p, args.radius)
        document["length_bounds"] = {k: str(v) for k, v in vars(bounds).items()}
    emit_document(args, settings, document)
    return 1 if result.ok else -1


# parser


def _grid(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad n-grid {text!r}") from e


def build_parser():
    parser = argparse.ArgumentParser(prog="main.py", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="config file (default: $CAYLEY_CONFIG or config.json)")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--version", action="version", version=__version__)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--output", help="output file; bare names go to the output directory")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=sorted(PRESETS))
    group.add_argument("--bundle", help="presentation bundle directory")

    walk = argparse.ArgumentParser(add_help=False)
    walk.add_argument("--group", required=True, choices=sorted(PRESETS) + ["g2"])
    walk.add_argument("--gens", choices=DRIFT_GENERATORS, default="standard")

    commands = parser.add_subparsers(dest="command", required=True)

    def command(name, handler, parents=(), **kwargs):
        sub = commands.add_parser(name, parents=[common, *parents], **kwargs)
        sub.set_defaults(handler=handler)
        return sub

    command("list", cmd_list, help="list built-in presets")

    sub = command("export", cmd_export, help="write a preset as a bundle directory")
    sub.add_argument("--preset", required=True, choices=sorted(PRESETS))
    sub.add_argument("--dir", required=True)
    sub.add_argument("--dot", action="store_true", help="also write DOT drawings of the edge relations")

    command("validate", cmd_validate, [source], help="check a presentation")

    sub = command("translate", cmd_translate, [source], help="translate one word")
    sub.add_argument("--word", required=True)

    sub = command("growth", cmd_growth, [source], help="growth function b_n")
    sub.add_argument("--N", type=int, required=True)

    sub = command("folner", cmd_folner, [source], help="Følner set search")
    sub.add_argument("--epsilon", type=Fraction, required=True)
    sub.add_argument("--mode", choices=["upper", "exact"], default="upper")
    sub.add_argument("--family", choices=FAMILIES, default="balls")
    sub.add_argument("--radius", type=int, default=8)
    sub.add_argument("--max-size", type=int, default=64)

    sub = command("avglen", cmd_avglen, [source], help="average length growth l_n")
    sub.add_argument("--N", type=int, required=True)
    sub.add_argument("--mc", action="store_true", help="Monte Carlo estimate instead of exact values")
    sub.add_argument("--n-grid", type=_grid)
    sub.add_argument("--samples", type=int)

    for name, handler in (("drift", cmd_drift), ("range", cmd_range)):
        sub = command(name, handler, [walk], help=f"random walk {name}")
        sub.add_argument("--n-grid", type=_grid, required=True)
        sub.add_argument("--samples", type=int)

    sub = command("fit", cmd_fit, help="fit a sequence from a CSV file")
    sub.add_argument("--input", required=True)
    sub.add_argument("--mode", choices=["recurrence", "power", "classify"], required=True)
    sub.add_argument("--column")
    sub.add_argument("--max-order", type=int, default=4)
    sub.add_argument("--holdout", type=int, default=10)
    sub.add_argument("--window", help="start:stop row indices for power fits")

    sub = command("ball", cmd_ball, [walk], help="ball sizes of an oracle group")
    sub.add_argument("--radius", type=int, required=True)

    sub = command("iso-check", cmd_iso_check, help="compare a preset with its oracle group")
    sub.add_argument("--preset", required=True, choices=sorted(PRESETS))
    sub.add_argument("--radius", type=int, default=8)
    sub.add_argument("--bounds", action="store_true", help="also fit linear length bounds")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = get_settings(args.config)
    except ConfigError as e:
        logging.basicConfig(level=logging.WARNING)
        logger.error("%s", e)
        return 2
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.seed is None:
        args.seed = settings.seed
    if args.threads is None:
        args.threads = settings.threads

    status, code, rows = "ok", 0, 0
    try:
        rows = args.handler(args, settings)
        if rows < 0:
            status, code = "failed", 1
    except ConfigError as e:
        logger.error("%s", e)
        status, code = "config-error", 2
    except BudgetExceededError as e:
        logger.error("budget exceeded: %s", e)
        status, code = "partial", 1
    except CayleyError as e:
        logger.error("%s", e)
        status, code = "error", 1
    if code != 2:
        publish_summary(settings, run_summary(args.command, _name(args), args.seed, rows, status, __version__))
    return code


if __name__ == "__main__":
    sys.exit(main())

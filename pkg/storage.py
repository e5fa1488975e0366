"""Text formats: .atm automata, DOT export and presentation bundle directories."""

import json
import logging
from pathlib import Path

from automata import PAD, Alphabet, SyncAutomaton
from errors import AutomatonError, FormatError, PresentationError
from presentations import GraphPresentation

logger = logging.getLogger(__name__)

BUNDLE_VERSION = 1


def dumps(automaton):
    a = automaton
    lines = [
        f"tapes {a.tapes}",
        "alphabet " + " ".join(a.alphabet.symbols),
        f"states {a.states}",
        "initial " + " ".join(str(s) for s in sorted(a.initial)),
        "accepting " + " ".join(str(s) for s in sorted(a.accepting)),
    ]
    if a.relaxed:
        lines.append("discipline relaxed")
    for src, letter, dst in a.transitions:
        lines.append(f"{src} ({','.join(letter)}) {dst}")
    return "\n".join(lines) + "\n"


def _numbers(fields, lineno):
    try:
        return [int(x) for x in fields]
    except ValueError as e:
        raise FormatError(f"line {lineno}: expected state numbers, got {' '.join(fields)}") from e


def loads(text):
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    header = {}
    keys = ["tapes", "alphabet", "states", "initial", "accepting"]
    for key, (lineno, line) in zip(keys, rows):
        name, _, rest = line.partition(" ")
        if name != key:
            raise FormatError(f"line {lineno}: expected '{key}', got '{name}'")
        header[key] = (lineno, rest.split())
    if len(header) < len(keys):
        raise FormatError("truncated header")
    body = rows[len(keys):]
    relaxed = False
    if body and body[0][1].split()[0] == "discipline":
        lineno, line = body.pop(0)
        if line.split()[1:] != ["relaxed"]:
            raise FormatError(f"line {lineno}: unknown discipline {line!r}")
        relaxed = True
    tapes = _numbers(header["tapes"][1], header["tapes"][0])
    states = _numbers(header["states"][1], header["states"][0])
    if len(tapes) != 1 or len(states) != 1:
        raise FormatError("'tapes' and 'states' take one number each")
    transitions = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) < 3 or not (parts[1].startswith("(") and parts[-2].endswith(")")):
            raise FormatError(f"line {lineno}: expected 'src (x1,...,xk) dst'")
        src, dst = _numbers([parts[0], parts[-1]], lineno)
        letter = tuple(s.strip() for s in "".join(parts[1:-1])[1:-1].split(","))
        transitions.append((src, letter, dst))
    try:
        return SyncAutomaton(
            tapes=tapes[0],
            alphabet=Alphabet(tuple(header["alphabet"][1])),
            states=states[0],
            initial=frozenset(_numbers(header["initial"][1], header["initial"][0])),
            accepting=frozenset(_numbers(header["accepting"][1], header["accepting"][0])),
            transitions=tuple(transitions),
            relaxed=relaxed,
        )
    except FormatError:
        raise
    except AutomatonError as e:
        raise FormatError(f"invalid automaton: {e}") from e


def save(automaton, path):
    Path(path).write_text(dumps(automaton))


def load(path):
    try:
        return loads(Path(path).read_text())
    except FileNotFoundError as e:
        raise FormatError(f"automaton file not found: {path}") from e


def to_dot(automaton, name="automaton"):
    a = automaton
    lines = [f"digraph {json.dumps(name, ensure_ascii=False)} {{", "  rankdir=LR;", '  start [shape=point, label=""];']
    for s in range(a.states):
        shape = "doublecircle" if s in a.accepting else "circle"
        lines.append(f"  {s} [shape={shape}];")
    for s in sorted(a.initial):
        lines.append(f"  start -> {s};")
    edges = {}
    for src, letter, dst in a.transitions:
        label = ",".join("◇" if x == PAD else x for x in letter)
        edges.setdefault((src, dst), []).append(f"({label})" if a.tapes > 1 else label)
    for (src, dst), labels in edges.items():
        lines.append(f"  {src} -> {dst} [label={json.dumps(' '.join(labels), ensure_ascii=False)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_bundle(presentation, directory):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    save(presentation.domain, directory / "domain.atm")
    for j, edge in enumerate(presentation.edges):
        save(edge, directory / f"edge_{j}.atm")
    meta = {
        "version": BUNDLE_VERSION,
        "title": presentation.title,
        "labels": presentation.labels,
        "inverse": list(presentation.inverse) if presentation.inverse is not None else None,
        "base": list(presentation.base),
        "names": list(presentation.names),
    }
    with open(directory / "meta.json", "w") as file:
        json.dump(meta, file, indent=2)
    logger.info("wrote bundle %s with %d edge relations", directory, presentation.labels)


def load_bundle(directory):
    directory = Path(directory)
    if not directory.is_dir():
        raise FormatError(f"bundle directory not found: {directory}")
    try:
        with open(directory / "meta.json") as file:
            meta = json.load(file)
    except FileNotFoundError as e:
        raise FormatError(f"bundle {directory} has no meta.json") from e
    except json.JSONDecodeError as e:
        raise FormatError(f"malformed meta.json in {directory}: {e}") from e
    labels = meta.get("labels")
    if not isinstance(labels, int) or labels < 1:
        raise FormatError(f"meta.json in {directory} needs a positive 'labels' count")
    domain = load(directory / "domain.atm")
    edges = [load(directory / f"edge_{j}.atm") for j in range(labels)]
    try:
        return GraphPresentation(
            domain,
            edges,
            meta.get("inverse"),
            tuple(meta.get("base", ())),
            tuple(meta.get("names", ())),
            meta.get("title", directory.name),
        )
    except PresentationError as e:
        raise FormatError(f"inconsistent bundle {directory}: {e}") from e

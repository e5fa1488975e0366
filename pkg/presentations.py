"""Automatic presentations of labeled Cayley graphs.

A presentation is a regular domain language plus one functional two-tape
relation per edge label. Built-ins cover ℤᵐ, free groups and the
lamplighter group; ``generator_products`` derives presentations for other
generating sets by composing edge relations.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from automata import (
    PAD,
    Alphabet,
    Runner,
    build,
    compose,
    deconvolve,
    difference,
    equivalent,
    functionality_violation,
    minimize,
    permute,
    project,
    shortest_accepted,
    unique_image,
)
from errors import DomainError, FunctionalityError, InvalidPresentationError, PresentationError
from oracles import WreathElement

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GraphPresentation:
    domain: object
    edges: tuple
    inverse: tuple = None
    base: tuple = ()
    names: tuple = ()
    title: str = ""

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "base", tuple(self.base))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{j}" for j in range(len(self.edges))))
        object.__setattr__(self, "names", tuple(self.names))
        if self.domain.tapes != 1:
            raise PresentationError("the domain must be a one-tape automaton")
        if not self.edges:
            raise PresentationError("a presentation needs at least one edge label")
        for edge in self.edges:
            if edge.tapes != 2 or edge.alphabet != self.domain.alphabet:
                raise PresentationError("edge relations must be two-tape automata over the domain alphabet")
        if len(self.names) != len(self.edges):
            raise PresentationError("one generator name per edge label is required")
        if self.inverse is not None:
            inverse = tuple(self.inverse)
            object.__setattr__(self, "inverse", inverse)
            k = len(self.edges)
            if len(inverse) != k or any(not 0 <= j < k or inverse[j] != i for i, j in enumerate(inverse)):
                raise PresentationError(f"inverse pairing {inverse} is not an involution on {k} labels")

    @property
    def labels(self):
        return len(self.edges)

    @property
    def alphabet(self):
        return self.domain.alphabet

    @cached_property
    def runner(self):
        return Runner(self.domain)

    def contains(self, word):
        return self.runner.accepts(tuple(word))

    def image(self, word, j):
        return unique_image(self.edges[j], word)

    def render(self, word):
        return self.alphabet.render(word)


# constructions


def guarded_relation(domain, moves, start, final):
    """Two-tape relation driven by a finite rewriting control, both tapes restricted to ``domain``.

    ``moves(control, a)`` yields ``(b, next_control)`` for the input symbol
    ``a`` (possibly the pad); ``final(control)`` marks completed rewrites.
    """
    alphabet = domain.alphabet
    runner = Runner(domain)

    def follow(key):
        control, dx, dy = key
        for a in alphabet.padded:
            nx = dx if a == PAD else runner.step(dx, a)
            if nx is None:
                continue
            for b, nxt in moves(control, a):
                if a == PAD and b == PAD:
                    continue
                ny = dy if b == PAD else runner.step(dy, b)
                if ny is not None:
                    yield (a, b), (nxt, nx, ny)

    def accept(key):
        control, dx, dy = key
        return final(control) and dx in runner.accepting and dy in runner.accepting

    relation = build(2, alphabet, [(start, runner.start, runner.start)], follow, accept)
    return minimize(relation)


def edit_relation(domain, insert=None, delete=None, *, at_end=False):
    """y is x with ``insert`` inserted, or with one ``delete`` removed (only at the end with ``at_end``)."""
    symbols = domain.alphabet.symbols

    def moves(control, a):
        phase, held = control
        if phase == "copy":
            if a != PAD:
                yield a, ("copy", None)
            if insert is not None:
                if a == PAD:
                    yield insert, ("end", None)
                elif not at_end:
                    yield insert, ("lag", a)
            if delete is not None and a == delete:
                yield PAD, ("end", None)
                if not at_end:
                    for b in symbols:
                        yield b, ("lead", b)
        elif phase == "lag":
            yield held, ("end", None) if a == PAD else ("lag", a)
        elif phase == "lead" and a == held:
            yield PAD, ("end", None)
            for b in symbols:
                yield b, ("lead", b)

    return guarded_relation(domain, moves, ("copy", None), lambda control: control[0] == "end")


def zm_alphabet(m):
    if m == 1:
        return Alphabet(("p", "n"))
    return Alphabet(tuple(f"p{c}" for c in range(1, m + 1)) + tuple(f"n{c}" for c in range(1, m + 1)))


def zm_presentation(m):
    """ℤᵐ with generators (+e1..+em, -e1..-em); a word is one signed unary block per coordinate."""
    if m < 1:
        raise PresentationError("ℤᵐ needs m >= 1")
    alphabet = zm_alphabet(m)
    positive, negative = alphabet.symbols[:m], alphabet.symbols[m:]
    block = {s: (c, +1) for c, s in enumerate(positive)} | {s: (c, -1) for c, s in enumerate(negative)}

    def follow(last):
        for symbol in alphabet:
            c, sign = block[symbol]
            if last is None or c > last[0] or (c, sign) == last:
                yield (symbol,), (c, sign)

    domain = minimize(build(1, alphabet, [None], follow, lambda _: True))
    edges = [edit_relation(domain, insert=positive[c], delete=negative[c]) for c in range(m)]
    edges += [edit_relation(domain, insert=negative[c], delete=positive[c]) for c in range(m)]
    names = [f"+e{c + 1}" for c in range(m)] + [f"-e{c + 1}" for c in range(m)]
    return GraphPresentation(
        domain, edges, [(j + m) % (2 * m) for j in range(2 * m)], (), names, "Z" if m == 1 else f"Z^{m}"
    )


def zm_encode(z):
    m = len(z)
    alphabet = zm_alphabet(m)
    word = []
    for c, x in enumerate(z):
        word += [alphabet.symbols[c] if x > 0 else alphabet.symbols[m + c]] * abs(x)
    return tuple(word)


def zm_decode(word, m):
    alphabet = zm_alphabet(m)
    z = [0] * m
    for symbol in word:
        i = alphabet.ranks[symbol]
        if i < m:
            z[i] += 1
        else:
            z[i - m] -= 1
    return tuple(z)


def free_alphabet(m):
    return Alphabet(tuple(f"s{i}" for i in range(1, m + 1)) + tuple(f"S{i}" for i in range(1, m + 1)))


def free_group_presentation(m):
    """Fₘ on reduced words; edge j appends generator j or cancels its inverse at the end."""
    if m < 1:
        raise PresentationError("Fₘ needs m >= 1")
    alphabet = free_alphabet(m)
    symbols = alphabet.symbols
    inverse_of = {s: symbols[(i + m) % (2 * m)] for i, s in enumerate(symbols)}

    def follow(last):
        for symbol in symbols:
            if last is None or inverse_of[last] != symbol:
                yield (symbol,), symbol

    domain = minimize(build(1, alphabet, [None], follow, lambda _: True))
    edges = [edit_relation(domain, insert=s, delete=inverse_of[s], at_end=True) for s in symbols]
    return GraphPresentation(domain, edges, [(j + m) % (2 * m) for j in range(2 * m)], (), symbols, f"F{m}")


def free_encode(element, m):
    alphabet = free_alphabet(m)
    return tuple(alphabet.symbols[x - 1] if x > 0 else alphabet.symbols[m - x - 1] for x in element)


def free_decode(word, m):
    alphabet = free_alphabet(m)
    element = []
    for symbol in word:
        i = alphabet.ranks[symbol]
        element.append(i + 1 if i < m else -(i - m + 1))
    return tuple(element)


# lamplighter: cell c carries the lamps at c and -c-1 and marks the head on either side

LAMPLIGHTER_SYMBOLS = tuple(f"{p}{n}{h}" for p in "01" for n in "01" for h in ".+-")
LAMPLIGHTER_BASE = ("00+",)
_BLANK = "00."
_FLIP = {".": ".", "+": "-", "-": "+"}


def _mirror(symbol):
    if symbol == PAD:
        return PAD
    return symbol[1] + symbol[0] + _FLIP[symbol[2]]


def _toggle(symbol):
    if symbol[2] == "+":
        return str(1 - int(symbol[0])) + symbol[1:]
    if symbol[2] == "-":
        return symbol[0] + str(1 - int(symbol[1])) + symbol[2]
    return symbol


def _lamplighter_domain(alphabet):
    def follow(state):
        seen_head, _ = state
        for symbol in alphabet:
            head = symbol[2] != "."
            if not (head and seen_head):
                yield (symbol,), (seen_head or head, symbol == _BLANK)

    return minimize(build(1, alphabet, [(False, None)], follow, lambda s: s[0] and s[1] is False))


def _move_right(control, a):
    """Rewriting control of t: the head moves from z to z + 1."""
    if control in ("start", "copy"):
        if a == PAD:
            return
        if a[2] == ".":
            yield a, "copy"
            yield a[:2] + "-", "behind"
        elif a[2] == "+":
            yield a[:2] + ".", "ahead"
        elif control == "start":
            yield a[:2] + "+", "rest"
    elif control == "ahead":
        if a == PAD:
            yield "00+", "end"
        elif a[2] == ".":
            yield a[:2] + "+", "rest"
    elif control == "behind":
        if a != PAD and a[2] == "-":
            left = a[:2] + "."
            yield left, "rest"
            if left == _BLANK:
                yield PAD, "end"
    elif control == "rest" and a != PAD:
        yield a, "rest"


def _move_left(control, a):
    for b, nxt in _move_right(control, _mirror(a)):
        yield _mirror(b), nxt


def _toggle_head(control, a):
    if a != PAD:
        yield _toggle(a), control


def _moved(control):
    return control in ("rest", "end")


def lamplighter_presentation():
    """ℤ₂ ≀ ℤ with S₁′ = (t, t⁻¹, h) over the folded cell encoding; w₀ = 00+."""
    alphabet = Alphabet(LAMPLIGHTER_SYMBOLS)
    domain = _lamplighter_domain(alphabet)
    right = guarded_relation(domain, _move_right, "start", _moved)
    left = guarded_relation(domain, _move_left, "start", _moved)
    toggle = guarded_relation(domain, _toggle_head, "scan", lambda _: True)
    return GraphPresentation(domain, (right, left, toggle), (1, 0, 2), LAMPLIGHTER_BASE, ("t", "T", "h"), "lamplighter")


def lamplighter_encode(element):
    lit = set(element.lit())
    points = [p for (p,) in lit] + [element.position[0]]
    cells = max([1] + [p + 1 if p >= 0 else -p for p in points])
    z = element.position[0]
    word = []
    for c in range(cells):
        head = "+" if z == c else "-" if z == -c - 1 else "."
        word.append(f"{int((c,) in lit)}{int((-c - 1,) in lit)}{head}")
    return tuple(word)


def lamplighter_decode(word):
    support, position = [], None
    for c, symbol in enumerate(word):
        if symbol[0] == "1":
            support.append(((c,), 1))
        if symbol[1] == "1":
            support.append(((-c - 1,), 1))
        if symbol[2] == "+":
            position = (c,)
        elif symbol[2] == "-":
            position = (-c - 1,)
    if position is None:
        raise DomainError(f"{word} has no head mark", word=tuple(word))
    return WreathElement(tuple(sorted(support)), position)


S1_PATHS = ((0,), (0, 2), (2, 0), (2, 0, 2), (1,), (2, 1), (1, 2), (2, 1, 2))
S1_NAMES = ("t", "th", "ht", "hth", "T", "hT", "Th", "hTh")


def generator_products(presentation, paths, names=None, inverse=None, title=None):
    """Presentation whose edge for the path j₁…j_r is E_{j₁} ∘ … ∘ E_{j_r}."""
    edges = []
    for path in paths:
        path = tuple(path)
        if not path:
            raise PresentationError("generator paths must be nonempty")
        for j in path:
            if not 0 <= j < presentation.labels:
                raise PresentationError(f"label {j} out of range 0..{presentation.labels - 1}")
        relation = presentation.edges[path[0]]
        for j in path[1:]:
            relation = minimize(compose(relation, presentation.edges[j]))
        edges.append(relation)
        logger.debug("edge for path %s: %d states", path, relation.states)
    if names is None:
        names = ["".join(presentation.names[j] for j in path) for path in paths]
    return GraphPresentation(
        presentation.domain,
        edges,
        inverse,
        presentation.base,
        names,
        title or presentation.title,
    )


def lamplighter_s1_presentation():
    return generator_products(
        lamplighter_presentation(), S1_PATHS, S1_NAMES, [(j + 4) % 8 for j in range(8)], "lamplighter-s1"
    )


# validation


@dataclass
class Check:
    name: str
    passed: bool
    witness: tuple = None
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, witness=None, detail=""):
        self.checks.append(Check(name, passed, witness, detail))

    def as_dict(self):
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "witness": c.witness, "detail": c.detail} for c in self.checks
            ],
        }


def validate(presentation):
    """Functionality, totality, closure, inverse pairing and base-word membership of every edge."""
    p = presentation
    report = ValidationReport()
    report.add("base word in domain", p.contains(p.base), None if p.contains(p.base) else p.base)
    for j, edge in enumerate(p.edges):
        name = p.names[j]
        violation = functionality_violation(edge, p.domain)
        if violation is None:
            report.add(f"total[{name}]", True)
            report.add(f"functional[{name}]", True)
        elif violation[0] == "totality":
            report.add(f"total[{name}]", False, violation[1], "input without an image")
            report.add(f"functional[{name}]", True, detail="not checked past a totality failure")
        else:
            report.add(f"total[{name}]", True)
            report.add(f"functional[{name}]", False, violation[1], "input with two images")
        escaped = shortest_accepted(difference(project(edge, (1,)), p.domain))
        report.add(f"closure[{name}]", escaped is None, None if escaped is None else deconvolve(escaped, 1))
    if p.inverse is not None:
        for j, i in enumerate(p.inverse):
            if i < j:
                continue
            swapped = permute(p.edges[i], (1, 0))
            mismatch = shortest_accepted(difference(p.edges[j], swapped)) or shortest_accepted(
                difference(swapped, p.edges[j])
            )
            report.add(
                f"inverse[{p.names[j]}~{p.names[i]}]",
                mismatch is None,
                None if mismatch is None else deconvolve(mismatch, 2),
            )
    for check in report.failures():
        logger.warning("validation failed: %s (witness %s)", check.name, check.witness)
    return report


def require_valid(presentation):
    report = validate(presentation)
    if not report.ok:
        names = ", ".join(c.name for c in report.failures())
        raise InvalidPresentationError(f"presentation {presentation.title!r} fails {names}", report)
    return report


def same_edges(a, b):
    """Language equivalence of two presentations with the same labels."""
    return a.labels == b.labels and equivalent(a.domain, b.domain) and all(
        equivalent(x, y) for x, y in zip(a.edges, b.edges)
    )


# traversal


def word_of(presentation, base, path):
    """Representative reached from ``base`` along the labels of ``path``."""
    word = tuple(base)
    if not presentation.contains(word):
        raise DomainError(f"{word} is not in the domain", word=word)
    for j in path:
        if not 0 <= j < presentation.labels:
            raise PresentationError(f"label {j} out of range")
        try:
            word = presentation.image(word, j)
        except (DomainError, FunctionalityError) as e:
            raise InvalidPresentationError(f"edge {presentation.names[j]} fails at {word}: {e}") from e
    return word


@dataclass
class IsomorphismResult:
    ok: bool
    mapping: dict
    conflict: tuple = None


def isomorphic_to_oracle(presentation, group, radius, base=None):
    """Parallel breadth-first traversal of the presentation and the group's Cayley graph."""
    p = presentation
    base = p.base if base is None else tuple(base)
    if len(group.generators) != p.labels:
        raise PresentationError(f"{p.labels} labels but {len(group.generators)} generators")
    words = {base: group.identity}
    elements = {group.identity: base}
    frontier = [base]
    for depth in range(radius):
        nxt = []
        for w in frontier:
            g = words[w]
            for j in range(p.labels):
                h = group.step(g, j)
                try:
                    v = p.image(w, j)
                except (DomainError, FunctionalityError):
                    return IsomorphismResult(False, words, (w, j, None, h))
                known, back = words.get(v), elements.get(h)
                if known is None and back is None:
                    words[v] = h
                    elements[h] = v
                    nxt.append(v)
                elif known != h or back != v:
                    logger.info("conflict at depth %d: %s --%s--> %s vs %s", depth, w, p.names[j], v, h)
                    return IsomorphismResult(False, words, (w, j, v, h))
        frontier = nxt
    return IsomorphismResult(True, words)


def distances(presentation, radius, base=None):
    """Breadth-first distance from the base word for every word within ``radius``."""
    base = presentation.base if base is None else tuple(base)
    depth = {base: 0}
    frontier = [base]
    for r in range(1, radius + 1):
        nxt = []
        for w in frontier:
            for j in range(presentation.labels):
                v = presentation.image(w, j)
                if v not in depth:
                    depth[v] = r
                    nxt.append(v)
        frontier = nxt
    return depth


@dataclass
class LengthBounds:
    lower_slope: Fraction
    lower_offset: Fraction
    upper_slope: Fraction
    upper_offset: Fraction

    def holds(self, length, word_length):
        return (
            self.lower_slope * length + self.lower_offset <= word_length
            <= self.upper_slope * length + self.upper_offset
        )


def fit_length_bounds(presentation, radius, base=None):
    """Constants with a·ℓ + b <= |w| <= A·ℓ + B on the ball, b = 0 and B = |w₀|."""
    depth = distances(presentation, radius, base)
    base = presentation.base if base is None else tuple(base)
    offset = Fraction(len(base))
    pairs = [(d, len(w)) for w, d in depth.items() if d > 0]
    if not pairs:
        return LengthBounds(Fraction(0), Fraction(0), Fraction(0), offset)
    lower = min(Fraction(n, d) for d, n in pairs)
    upper = max(max(Fraction(n - len(base), d) for d, n in pairs), Fraction(0))
    return LengthBounds(lower, Fraction(0), upper, offset)

"""Synchronous k-tape finite automata over padded alphabets.

A k-tape automaton reads the convolution of k words: a string of k-tuples
over the alphabet extended by the pad symbol ``_``, shorter words padded on
the right. Automata are immutable values. Every operation returns a new,
trimmed automaton whose states are numbered in breadth-first discovery
order (transitions scanned in alphabet order), so equal inputs always give
identical outputs.
"""

import itertools
import logging
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property

from errors import (
    AlphabetMismatchError,
    ArityMismatchError,
    AutomatonError,
    AutomatonMismatchError,
    DomainError,
    FunctionalityError,
    InvalidTapeIndexError,
    MalformedConvolutionError,
    NotBoundedError,
)

logger = logging.getLogger(__name__)

PAD = "_"
DONE = -1
TAIL = "tail"
_FORBIDDEN = set(" \t\r\n,()#")


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise AutomatonError("alphabet must contain at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise AutomatonError(f"duplicate symbols in alphabet {symbols}")
        for symbol in symbols:
            if not isinstance(symbol, str) or not symbol or symbol == PAD:
                raise AutomatonError(f"invalid symbol {symbol!r}")
            if _FORBIDDEN.intersection(symbol):
                raise AutomatonError(f"symbol {symbol!r} contains a reserved character")

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self.ranks and symbol != PAD

    @cached_property
    def ranks(self):
        ranks = {symbol: i for i, symbol in enumerate(self.symbols)}
        ranks[PAD] = len(self.symbols)
        return ranks

    @property
    def padded(self):
        return self.symbols + (PAD,)

    def letter_key(self, letter):
        return tuple(self.ranks[s] for s in letter)

    def word_key(self, word):
        """Length-lexicographic key of a word."""
        return (len(word), tuple(self.ranks[s] for s in word))

    def letters(self, tapes):
        """All tape vectors for ``tapes`` tapes in alphabet order, all-pad excluded."""
        blank = (PAD,) * tapes
        return [letter for letter in itertools.product(self.padded, repeat=tapes) if letter != blank]

    def check_word(self, word):
        for symbol in word:
            if symbol not in self:
                raise AlphabetMismatchError(f"symbol {symbol!r} is not in alphabet {self.symbols}")

    @property
    def compact(self):
        return all(len(s) == 1 for s in self.symbols)

    def render(self, word):
        return ("" if self.compact else " ").join(word)

    def parse(self, text):
        """Split ``text`` into symbols: on whitespace if present, else greedily."""
        text = text.strip()
        if not text:
            return ()
        if any(c.isspace() for c in text):
            word = tuple(text.split())
        else:
            by_length = sorted(self.symbols, key=len, reverse=True)
            word, i = [], 0
            while i < len(text):
                for symbol in by_length:
                    if text.startswith(symbol, i):
                        word.append(symbol)
                        i += len(symbol)
                        break
                else:
                    raise AlphabetMismatchError(f"cannot read {text[i:]!r} over {self.symbols}")
            word = tuple(word)
        self.check_word(word)
        return word


def convolve(words, alphabet=None, *, right=False):
    """Convolution of a tuple of words; ``right`` pads on the left instead."""
    words = tuple(tuple(w) for w in words)
    if not words:
        raise ArityMismatchError("cannot convolve zero words")
    for word in words:
        if PAD in word:
            raise MalformedConvolutionError(f"word {word} contains the pad symbol")
        if alphabet is not None:
            alphabet.check_word(word)
    length = max(len(w) for w in words)
    if right:
        padded = [(PAD,) * (length - len(w)) + w for w in words]
    else:
        padded = [w + (PAD,) * (length - len(w)) for w in words]
    return tuple(zip(*padded))


def deconvolve(string, tapes, *, right=False):
    string = [tuple(letter) for letter in string]
    words = [[] for _ in range(tapes)]
    stopped = [False] * tapes
    for letter in reversed(string) if right else string:
        if len(letter) != tapes:
            raise ArityMismatchError(f"letter {letter} does not have {tapes} entries")
        if all(s == PAD for s in letter):
            raise MalformedConvolutionError("all-pad letter in convolution")
        for i, symbol in enumerate(letter):
            if symbol == PAD:
                stopped[i] = True
            elif stopped[i]:
                raise MalformedConvolutionError(f"tape {i} reads {symbol!r} after a pad")
            else:
                words[i].append(symbol)
    if right:
        return tuple(tuple(reversed(w)) for w in words)
    return tuple(tuple(w) for w in words)


@dataclass(frozen=True)
class SyncAutomaton:
    """Nondeterministic synchronous automaton over ``tapes`` tapes.

    ``relaxed`` marks automata produced by reversal: they accept
    right-aligned convolutions (pads before symbols).
    """

    tapes: int
    alphabet: Alphabet
    states: int
    initial: frozenset
    accepting: frozenset
    transitions: tuple
    relaxed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        transitions = tuple((int(s), tuple(l), int(d)) for s, l, d in self.transitions)
        if self.tapes < 1:
            raise AutomatonError("an automaton needs at least one tape")
        for state in self.initial | self.accepting:
            if not 0 <= state < self.states:
                raise AutomatonError(f"state {state} out of range")
        blank = (PAD,) * self.tapes
        for src, letter, dst in transitions:
            if not (0 <= src < self.states and 0 <= dst < self.states):
                raise AutomatonError(f"transition {src} -> {dst} out of range")
            if len(letter) != self.tapes or letter == blank:
                raise AutomatonError(f"invalid letter {letter} for {self.tapes} tapes")
            for symbol in letter:
                if symbol not in self.alphabet.ranks:
                    raise AlphabetMismatchError(f"letter {letter} uses symbols outside the alphabet")
        rank = self.alphabet.letter_key
        object.__setattr__(
            self, "transitions", tuple(sorted(set(transitions), key=lambda t: (t[0], rank(t[1]), t[2])))
        )

    @classmethod
    def from_transitions(cls, tapes, alphabet, initial, accepting, transitions, *, relaxed=False):
        """Build from raw parts; enforces the padding discipline and trims."""
        delta = defaultdict(list)
        for src, letter, dst in transitions:
            delta[src].append((tuple(letter), dst))
        accepting = set(accepting)
        return build(
            tapes, alphabet, sorted(set(initial)), lambda s: delta.get(s, ()), accepting.__contains__, relaxed=relaxed
        )

    @cached_property
    def delta(self):
        table = {}
        for src, letter, dst in self.transitions:
            table.setdefault(src, {}).setdefault(letter, []).append(dst)
        return {s: {l: tuple(d) for l, d in row.items()} for s, row in table.items()}

    @cached_property
    def by_input(self):
        """state -> first-tape symbol -> [(rest of letter, destinations)]."""
        table = {}
        for src, row in self.delta.items():
            for letter, dsts in row.items():
                rest = letter[1] if self.tapes == 2 else letter[1:]
                table.setdefault(src, {}).setdefault(letter[0], []).append((rest, dsts))
        return table

    @cached_property
    def dfa(self):
        return determinize(self)

    @property
    def is_deterministic(self):
        return len(self.initial) <= 1 and all(len(d) == 1 for row in self.delta.values() for d in row.values())

    def out(self, state):
        return self.delta.get(state, {})

    def __repr__(self):
        return (
            f"SyncAutomaton(tapes={self.tapes}, states={self.states}, "
            f"transitions={len(self.transitions)}, relaxed={self.relaxed})"
        )


class Runner:
    """Deterministic stepping through a one-tape language."""

    def __init__(self, automaton):
        if automaton.tapes != 1:
            raise ArityMismatchError("a runner needs a one-tape automaton")
        dfa = determinize(automaton)
        self.start = min(dfa.initial) if dfa.initial else None
        self.accepting = dfa.accepting
        self.table = {src: {letter[0]: dsts[0] for letter, dsts in row.items()} for src, row in dfa.delta.items()}

    def step(self, state, symbol):
        if state is None:
            return None
        return self.table.get(state, {}).get(symbol)

    def run(self, word):
        state = self.start
        for symbol in word:
            state = self.step(state, symbol)
        return state

    def accepts(self, word):
        return self.run(word) in self.accepting


# construction


def _discipline(tapes, start, follow, final, relaxed):
    """Pair every control state with the set of tapes that have stopped (or started)."""

    def advance(mask, letter):
        for i, symbol in enumerate(letter):
            bit = 1 << i
            if relaxed:
                if mask & bit and symbol == PAD:
                    return None
                if symbol != PAD:
                    mask |= bit
            else:
                if mask & bit and symbol != PAD:
                    return None
                if symbol == PAD:
                    mask |= bit
        return mask

    blank = (PAD,) * tapes

    def tracked_follow(state):
        key, mask = state
        for letter, nxt in follow(key):
            letter = tuple(letter)
            if letter == blank:
                continue
            new_mask = advance(mask, letter)
            if new_mask is not None:
                yield letter, (nxt, new_mask)

    return [(key, 0) for key in start], tracked_follow, lambda state: final(state[0])


def build(tapes, alphabet, start, follow, final, *, relaxed=False, enforce=True):
    """Explore the finite control reachable from ``start``.

    ``follow(key)`` yields ``(letter, next_key)`` pairs and ``final(key)``
    tells whether a key accepts; keys only need to be hashable. With
    ``enforce`` the padding discipline is imposed on the result.
    """
    if enforce:
        start, follow, final = _discipline(tapes, start, follow, final, relaxed)
    ids = {}
    order = []
    queue = deque()
    initial = []
    for key in start:
        if key not in ids:
            ids[key] = len(order)
            order.append(key)
            queue.append(key)
        initial.append(ids[key])
    rank = alphabet.letter_key
    transitions = []
    while queue:
        key = queue.popleft()
        src = ids[key]
        for letter, nxt in sorted(follow(key), key=lambda move: rank(move[0])):
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            transitions.append((src, tuple(letter), ids[nxt]))
    accepting = [i for i, key in enumerate(order) if final(key)]
    logger.debug("explored %d control states, %d transitions", len(order), len(transitions))
    return _canonical(tapes, alphabet, len(order), initial, accepting, transitions, relaxed)


def _useful(states, initial, accepting, transitions):
    forward = defaultdict(set)
    backward = defaultdict(set)
    for src, _, dst in transitions:
        forward[src].add(dst)
        backward[dst].add(src)

    def closure(seeds, edges):
        seen = set(seeds)
        queue = deque(seen)
        while queue:
            state = queue.popleft()
            for nxt in edges[state]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return seen

    return closure(initial, forward) & closure(accepting, backward)


def _canonical(tapes, alphabet, states, initial, accepting, transitions, relaxed):
    """Trim and renumber in breadth-first discovery order."""
    transitions = list(transitions)
    useful = _useful(states, initial, accepting, transitions)
    rank = alphabet.letter_key
    outgoing = defaultdict(list)
    for src, letter, dst in transitions:
        if src in useful and dst in useful:
            outgoing[src].append((rank(letter), dst, letter))
    ids = {}
    queue = deque()
    for state in sorted(set(initial) & useful):
        ids[state] = len(ids)
        queue.append(state)
    new_transitions = []
    while queue:
        state = queue.popleft()
        for _, dst, letter in sorted(outgoing[state], key=lambda t: (t[0], t[1])):
            if dst not in ids:
                ids[dst] = len(ids)
                queue.append(dst)
            new_transitions.append((ids[state], letter, ids[dst]))
    return SyncAutomaton(
        tapes=tapes,
        alphabet=alphabet,
        states=len(ids),
        initial=frozenset(ids[s] for s in initial if s in ids),
        accepting=frozenset(ids[s] for s in accepting if s in ids),
        transitions=tuple(new_transitions),
        relaxed=relaxed,
    )


def empty(tapes, alphabet, *, relaxed=False):
    return SyncAutomaton(tapes, alphabet, 0, frozenset(), frozenset(), (), relaxed)


def universe(tapes, alphabet, *, relaxed=False):
    """All well-formed convolutions of ``tapes`` words."""
    letters = alphabet.letters(tapes)
    return build(tapes, alphabet, [0], lambda _: ((l, 0) for l in letters), lambda _: True, relaxed=relaxed)


def all_words(alphabet):
    return universe(1, alphabet)


def from_words(tuples, alphabet, tapes=None):
    """Finite language of the given word tuples (plain words when ``tapes`` is None)."""
    if tapes is None:
        tuples = [(tuple(w),) for w in tuples]
        tapes = 1
    strings = {convolve(t, alphabet) for t in tuples}
    if any(len(t) != tapes for t in tuples):
        raise ArityMismatchError(f"expected {tapes}-tuples")
    children = defaultdict(set)
    for string in strings:
        for i in range(len(string)):
            children[string[:i]].add(string[i])
    return build(
        tapes,
        alphabet,
        [()],
        lambda prefix: ((l, prefix + (l,)) for l in children.get(prefix, ())),
        strings.__contains__,
        enforce=False,
    )


def identity(alphabet, domain=None):
    """The relation {(w, w)}, restricted to ``domain`` when given."""
    runner = Runner(domain) if domain is not None else None
    start = runner.start if runner else 0
    if runner and start is None:
        return empty(2, alphabet)

    def follow(state):
        for symbol in alphabet:
            nxt = runner.step(state, symbol) if runner else 0
            if nxt is not None:
                yield (symbol, symbol), nxt

    return build(
        2, alphabet, [start], follow, (lambda s: s in runner.accepting) if runner else (lambda s: True), enforce=False
    )


# algebra


def _check_compatible(a, b):
    if a.tapes != b.tapes:
        raise AutomatonMismatchError(f"tape counts differ: {a.tapes} != {b.tapes}")
    if a.alphabet != b.alphabet:
        raise AutomatonMismatchError("alphabets differ")
    if a.relaxed != b.relaxed:
        raise AutomatonMismatchError("padding disciplines differ")


def determinize(automaton):
    a = automaton
    if not a.initial:
        return empty(a.tapes, a.alphabet, relaxed=a.relaxed)

    def follow(subset):
        moves = {}
        for state in sorted(subset):
            for letter, dsts in a.out(state).items():
                moves.setdefault(letter, set()).update(dsts)
        return [(letter, frozenset(dsts)) for letter, dsts in moves.items()]

    return build(
        a.tapes,
        a.alphabet,
        [frozenset(a.initial)],
        follow,
        lambda subset: not subset.isdisjoint(a.accepting),
        relaxed=a.relaxed,
        enforce=False,
    )


def minimize(automaton):
    """Unique minimal (partial) deterministic automaton of the language."""
    dfa = determinize(automaton)
    if dfa.states == 0:
        return dfa
    rank = dfa.alphabet.letter_key
    delta = [{letter: dsts[0] for letter, dsts in dfa.out(s).items()} for s in range(dfa.states)]
    block = [int(s in dfa.accepting) for s in range(dfa.states)]
    count = len(set(block))
    while True:
        signatures = {}
        refined = []
        for s in range(dfa.states):
            moves = tuple(sorted((rank(letter), block[dst]) for letter, dst in delta[s].items()))
            refined.append(signatures.setdefault((block[s], moves), len(signatures)))
        block = refined
        if len(signatures) == count:
            break
        count = len(signatures)
    representative = {}
    for s in range(dfa.states):
        representative.setdefault(block[s], s)

    def follow(b):
        for letter, dst in delta[representative[b]].items():
            yield letter, block[dst]

    return build(
        dfa.tapes,
        dfa.alphabet,
        [block[min(dfa.initial)]],
        follow,
        lambda b: representative[b] in dfa.accepting,
        relaxed=dfa.relaxed,
        enforce=False,
    )


def trim(automaton):
    a = automaton
    return _canonical(a.tapes, a.alphabet, a.states, a.initial, a.accepting, a.transitions, a.relaxed)


def intersect(a, b):
    _check_compatible(a, b)

    def follow(pair):
        p, q = pair
        row_p, row_q = a.out(p), b.out(q)
        if len(row_p) <= len(row_q):
            for letter, dps in row_p.items():
                for y in row_q.get(letter, ()):
                    for x in dps:
                        yield letter, (x, y)
        else:
            for letter, dqs in row_q.items():
                for x in row_p.get(letter, ()):
                    for y in dqs:
                        yield letter, (x, y)

    start = [(p, q) for p in sorted(a.initial) for q in sorted(b.initial)]
    return build(
        a.tapes,
        a.alphabet,
        start,
        follow,
        lambda pair: pair[0] in a.accepting and pair[1] in b.accepting,
        relaxed=a.relaxed,
        enforce=False,
    )


def union(a, b):
    _check_compatible(a, b)
    parts = {"a": a, "b": b}

    def follow(key):
        side, state = key
        for letter, dsts in parts[side].out(state).items():
            for dst in dsts:
                yield letter, (side, dst)

    start = [("a", s) for s in sorted(a.initial)] + [("b", s) for s in sorted(b.initial)]
    return build(
        a.tapes,
        a.alphabet,
        start,
        follow,
        lambda key: key[1] in parts[key[0]].accepting,
        relaxed=a.relaxed,
        enforce=False,
    )


def complement(automaton, universe_automaton=None):
    """Complement relative to the well-formed convolutions (or a given universe)."""
    a = automaton
    u = determinize(universe_automaton or universe(a.tapes, a.alphabet, relaxed=a.relaxed))
    _check_compatible(a, u)
    if not u.initial:
        return empty(a.tapes, a.alphabet, relaxed=a.relaxed)

    def follow(state):
        subset, us = state
        for letter, (ud,) in u.out(us).items():
            nxt = set()
            for s in subset:
                nxt.update(a.out(s).get(letter, ()))
            yield letter, (frozenset(nxt), ud)

    return build(
        a.tapes,
        a.alphabet,
        [(frozenset(a.initial), min(u.initial))],
        follow,
        lambda state: state[1] in u.accepting and state[0].isdisjoint(a.accepting),
        relaxed=a.relaxed,
        enforce=False,
    )


def difference(a, b):
    return intersect(a, complement(b))


def equivalent(a, b):
    return is_empty(difference(a, b)) and is_empty(difference(b, a))


def reverse(automaton):
    a = automaton
    flipped = [(dst, letter, src) for src, letter, dst in a.transitions]
    return _canonical(a.tapes, a.alphabet, a.states, a.accepting, a.initial, flipped, not a.relaxed)


def permute(automaton, order):
    """Reorder tapes: tape i of the result is tape ``order[i]`` of the input."""
    a = automaton
    if sorted(order) != list(range(a.tapes)):
        raise InvalidTapeIndexError(f"{order} is not a permutation of the tapes")
    moved = [(s, tuple(l[i] for i in order), d) for s, l, d in a.transitions]
    return _canonical(a.tapes, a.alphabet, a.states, a.initial, a.accepting, moved, a.relaxed)


def project(automaton, keep):
    """Existentially quantify the tapes not in ``keep``."""
    a = automaton
    keep = sorted(set(keep))
    if not keep or any(not 0 <= i < a.tapes for i in keep):
        raise InvalidTapeIndexError(f"cannot keep tapes {keep} of {a.tapes}")
    if a.relaxed:
        return reverse(project(reverse(a), keep))
    blank = (PAD,) * len(keep)
    silent = defaultdict(set)
    moves = []
    for src, letter, dst in a.transitions:
        cut = tuple(letter[i] for i in keep)
        if cut == blank:
            silent[dst].add(src)
        else:
            moves.append((src, cut, dst))
    # states finishing through steps that only move dropped tapes
    finishing = set(a.accepting)
    queue = deque(finishing)
    while queue:
        state = queue.popleft()
        for prev in silent[state]:
            if prev not in finishing:
                finishing.add(prev)
                queue.append(prev)
    return _canonical(len(keep), a.alphabet, a.states, a.initial, finishing, moves, False)


def cylindrify(automaton, position):
    """Insert an unconstrained tape at ``position``."""
    a = automaton
    if not 0 <= position <= a.tapes:
        raise InvalidTapeIndexError(f"cannot insert a tape at {position} into {a.tapes} tapes")
    if a.relaxed:
        return reverse(cylindrify(reverse(a), position))
    symbols = a.alphabet.symbols
    padded = a.alphabet.padded
    rest_blank = (PAD,) * a.tapes

    def insert(letter, symbol):
        return letter[:position] + (symbol,) + letter[position:]

    def follow(state):
        if state == TAIL:
            for symbol in symbols:
                yield insert(rest_blank, symbol), TAIL
            return
        q, stopped = state
        for letter, dsts in a.out(q).items():
            for symbol in (PAD,) if stopped else padded:
                for dst in dsts:
                    yield insert(letter, symbol), (dst, stopped or symbol == PAD)
        if not stopped and q in a.accepting:
            for symbol in symbols:
                yield insert(rest_blank, symbol), TAIL

    return build(
        a.tapes + 1,
        a.alphabet,
        [(q, False) for q in sorted(a.initial)],
        follow,
        lambda state: state == TAIL or state[0] in a.accepting,
        enforce=False,
    )


def compose(first, second):
    """{(x, z) | exists y: (x, y) in first and (y, z) in second}."""
    for relation in (first, second):
        if relation.tapes != 2:
            raise ArityMismatchError("compose needs two-tape relations")
    _check_compatible(first, second)
    joined = intersect(cylindrify(first, 2), cylindrify(second, 0))
    return project(joined, (0, 2))


def fan_out(relations, domain=None, *, distinct=None):
    """(k+1)-tape automaton of x ⊗ y_1 ⊗ ... ⊗ y_k with (x, y_j) in relations[j].

    The first tape is restricted to ``domain`` when given. With
    ``distinct=(i, j)`` only tuples with y_i != y_j are kept.
    """
    relations = tuple(relations)
    alphabet = relations[0].alphabet
    for relation in relations:
        if relation.tapes != 2:
            raise ArityMismatchError("fan_out needs two-tape relations")
        _check_compatible(relations[0], relation)
    runner = Runner(domain) if domain is not None else None
    if runner is not None and runner.start is None:
        return empty(len(relations) + 1, alphabet)

    def options(j, state, x):
        relation = relations[j]
        if state == DONE:
            return [(PAD, DONE)] if x == PAD else []
        found = [(y, dst) for y, dsts in relation.by_input.get(state, {}).get(x, ()) for dst in dsts]
        if x == PAD and state in relation.accepting:
            found.append((PAD, DONE))
        return found

    def follow(key):
        states, d, differ = key
        for x in alphabet.padded:
            nd = d if x == PAD or runner is None else runner.step(d, x)
            if nd is None:
                continue
            choices = [options(j, state, x) for j, state in enumerate(states)]
            if not all(choices):
                continue
            for combo in itertools.product(*choices):
                ys = tuple(y for y, _ in combo)
                if x == PAD and all(y == PAD for y in ys):
                    continue
                split = differ or (distinct is not None and ys[distinct[0]] != ys[distinct[1]])
                yield (x,) + ys, (tuple(dst for _, dst in combo), nd, split)

    def final(key):
        states, d, differ = key
        if runner is not None and d not in runner.accepting:
            return False
        if distinct is not None and not differ:
            return False
        return all(s == DONE or s in r.accepting for s, r in zip(states, relations))

    start = [
        (combo, runner.start if runner else 0, False)
        for combo in itertools.product(*(sorted(r.initial) for r in relations))
    ]
    return build(len(relations) + 1, alphabet, start, follow, final, enforce=False)


# acceptance, counting, enumeration


def accepts_string(automaton, string):
    current = set(automaton.initial)
    for letter in string:
        letter = tuple(letter)
        nxt = set()
        for state in current:
            nxt.update(automaton.out(state).get(letter, ()))
        if not nxt:
            return False
        current = nxt
    return not current.isdisjoint(automaton.accepting)


def accepts(automaton, words):
    words = tuple(tuple(w) for w in words)
    if len(words) != automaton.tapes:
        raise ArityMismatchError(f"expected {automaton.tapes} words, got {len(words)}")
    return accepts_string(automaton, convolve(words, right=automaton.relaxed))


def is_empty(automaton):
    a = automaton
    return not _useful(a.states, a.initial, a.accepting, a.transitions)


def count_by_length(automaton, n):
    """Exact number of accepted strings of length exactly ``n``."""
    return counts_up_to(automaton, n)[n]


def counts_up_to(automaton, n):
    if n < 0:
        raise ValueError("length must be nonnegative")
    dfa = automaton.dfa
    counts = {s: 1 for s in dfa.initial}
    result = []
    for length in range(n + 1):
        result.append(sum(c for s, c in counts.items() if s in dfa.accepting))
        if length == n:
            break
        nxt = defaultdict(int)
        for state, c in counts.items():
            for dsts in dfa.out(state).values():
                nxt[dsts[0]] += c
        counts = nxt
    return result


def enumerate_strings(automaton, max_len):
    """Accepted strings of length <= max_len in length-lexicographic order."""
    dfa = automaton.dfa
    rank = dfa.alphabet.letter_key
    layer = [((), s) for s in sorted(dfa.initial)]
    found = []
    for length in range(max_len + 1):
        found.extend(string for string, s in layer if s in dfa.accepting)
        if length == max_len:
            break
        nxt = []
        for string, state in layer:
            for letter, dsts in sorted(dfa.out(state).items(), key=lambda item: rank(item[0])):
                nxt.append((string + (letter,), dsts[0]))
        layer = nxt
    return found


def enumerate_words(automaton, max_len):
    return [deconvolve(s, automaton.tapes, right=automaton.relaxed) for s in enumerate_strings(automaton, max_len)]


def shortest_accepted(automaton):
    """First accepted string in length-lexicographic order, or None."""
    dfa = minimize(automaton)
    if not dfa.initial:
        return None
    rank = dfa.alphabet.letter_key
    parent = {min(dfa.initial): None}
    queue = deque(parent)
    while queue:
        state = queue.popleft()
        if state in dfa.accepting:
            string = []
            while parent[state] is not None:
                state, letter = parent[state]
                string.append(letter)
            return tuple(reversed(string))
        for letter, dsts in sorted(dfa.out(state).items(), key=lambda item: rank(item[0])):
            if dsts[0] not in parent:
                parent[dsts[0]] = (state, letter)
                queue.append(dsts[0])
    return None


# functional relations


def _check_relation(relation):
    if relation.tapes != 2:
        raise ArityMismatchError(f"expected a two-tape relation, got {relation.tapes} tapes")


def functionality_violation(relation, domain):
    """None when ``relation`` maps every word of ``domain`` to exactly one word.

    Otherwise ``("totality", (x,))`` or ``("functionality", (x, y1, y2))``.
    """
    _check_relation(relation)
    if domain.tapes != 1:
        raise ArityMismatchError("the domain must be a one-tape automaton")
    missing = difference(domain, project(relation, (0,)))
    witness = shortest_accepted(missing)
    if witness is not None:
        return "totality", deconvolve(witness, 1)
    doubled = fan_out((relation, relation), domain, distinct=(0, 1))
    witness = shortest_accepted(doubled)
    if witness is not None:
        return "functionality", deconvolve(witness, 3)
    return None


def check_functional(relation, domain):
    return functionality_violation(relation, domain) is None


def images(relation, word):
    """All y with (word, y) accepted, in length-lexicographic order."""
    _check_relation(relation)
    word = tuple(word)
    index = relation.by_input
    accepting = relation.accepting
    frontier = {(s, ()) for s in relation.initial}
    found = set()
    t, n = 0, len(word)
    while frontier:
        if t >= n:
            found.update(y for s, y in frontier if s in accepting)
            if t > n + relation.states:
                raise NotBoundedError("pad-reading cycle while extending the output")
        x = word[t] if t < n else PAD
        nxt = set()
        for state, y in frontier:
            for symbol, dsts in index.get(state, {}).get(x, ()):
                grown = y if symbol == PAD else y + (symbol,)
                for dst in dsts:
                    nxt.add((dst, grown))
        frontier = nxt
        t += 1
    return sorted(found, key=relation.alphabet.word_key)


def unique_image(relation, word):
    found = images(relation, word)
    if not found:
        raise DomainError(f"{tuple(word)} has no image", word=tuple(word))
    if len(found) > 1:
        raise FunctionalityError(f"{tuple(word)} has {len(found)} images: {found[:3]}")
    return found[0]


def length_difference_bound(relation):
    """Least c with |y| <= |x| + c over all accepted pairs."""
    _check_relation(relation)
    r = relation
    live = _useful(r.states, r.initial, r.accepting, r.transitions)
    pad_edges = defaultdict(set)
    reverse_edges = defaultdict(set)
    for src, letter, dst in r.transitions:
        if letter[0] == PAD and src in live and dst in live:
            pad_edges[src].add(dst)
            reverse_edges[dst].add(src)
    finishing = set(r.accepting) & live
    queue = deque(finishing)
    while queue:
        state = queue.popleft()
        for prev in reverse_edges[state]:
            if prev not in finishing:
                finishing.add(prev)
                queue.append(prev)
    longest = {}
    on_stack = set()
    for root in sorted(finishing):
        if root in longest:
            continue
        stack = [(root, iter(sorted(pad_edges[root] & finishing)))]
        on_stack.add(root)
        while stack:
            state, children = stack[-1]
            child = next(children, None)
            if child is None:
                stack.pop()
                on_stack.discard(state)
                best = 0 if state in r.accepting else None
                for nxt in pad_edges[state] & finishing:
                    if best is None or longest[nxt] + 1 > best:
                        best = longest[nxt] + 1
                longest[state] = best
            elif child in on_stack:
                raise NotBoundedError("the relation has a pad-reading cycle on its first tape")
            elif child not in longest:
                on_stack.add(child)
                stack.append((child, iter(sorted(pad_edges[child] & finishing))))
    return max(longest.values(), default=0)

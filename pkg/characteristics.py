"""Growth, Følner and average-length characteristics of a transducer.

All three are computed from the translation function alone: W₀ = {w₀},
W_{i+1} = T(W_i), the ball V_n is the union of W₀..W_n, and M_n is the
multiset of leaves of the kⁿ-leaf application tree.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from errors import BudgetExceededError, DomainError, EmptySetError, FolnerNotFoundError
from presentations import word_of
from transducer import translate
from walks import run_samples, summarize

logger = logging.getLogger(__name__)


class ImageGraph:
    """Memoized translation over interned words."""

    def __init__(self, transducer):
        self.transducer = transducer
        self.outputs_of = {}

    def outputs(self, word):
        outputs = self.outputs_of.get(word)
        if outputs is None:
            result = translate(self.transducer, word)
            if not result.accepted:
                raise DomainError(f"{word} is not in the domain", word=word)
            outputs = result.outputs
            self.outputs_of[word] = outputs
        return outputs

    def follow(self, word, path):
        for j in path:
            word = self.outputs(word)[j]
        return word


def _graph(transducer, graph):
    return graph if graph is not None else ImageGraph(transducer)


@dataclass
class GrowthRecord:
    base: tuple
    values: list = field(default_factory=list)
    frontier_sizes: list = field(default_factory=list)
    layers: list = field(default_factory=list)

    def ball(self, n):
        return [w for layer in self.layers[: n + 1] for w in layer]


def growth(transducer, n_max, base=None, graph=None, max_words=None):
    """b_n = #V_n and #W_n for n <= n_max.

    Raises BudgetExceededError carrying the rows so far once #V_n passes ``max_words``.
    """
    graph = _graph(transducer, graph)
    base = transducer.base if base is None else tuple(base)
    graph.outputs(base)
    key = transducer.alphabet.word_key
    seen = {base}
    current = {base}
    record = GrowthRecord(base, [1], [1], [[base]])
    for n in range(1, n_max + 1):
        current = {y for w in current for y in graph.outputs(w)}
        fresh = sorted(current - seen, key=key)
        if max_words is not None and len(seen) + len(fresh) > max_words:
            raise BudgetExceededError(f"V_{n} has more than {max_words} words", partial=record)
        seen.update(fresh)
        record.values.append(len(seen))
        record.frontier_sizes.append(len(current))
        record.layers.append(fresh)
        logger.info("growth n=%d: b_n=%d, #W_n=%d", n, len(seen), len(current))
    return record


def boundary(transducer, words, graph=None):
    """Words of W with at least one output outside W."""
    graph = _graph(transducer, graph)
    members = set(words)
    edge = [w for w in members if any(y not in members for y in graph.outputs(w))]
    return sorted(edge, key=transducer.alphabet.word_key)


def folner_ratio(transducer, words, graph=None):
    words = set(words)
    if not words:
        raise EmptySetError("the boundary ratio of an empty set is undefined")
    return Fraction(len(boundary(transducer, words, graph)), len(words))


@dataclass
class FolnerReport:
    words: list
    boundary: list
    ratio: Fraction
    epsilon: Fraction
    family: str
    exact: bool = False

    @property
    def size(self):
        return len(self.words)


# candidate families: each yields (description, word set) of increasing size


def ball_family(transducer, max_radius, graph=None, max_words=None):
    graph = _graph(transducer, graph)
    record = growth(transducer, max_radius, graph=graph, max_words=max_words)
    for r in range(max_radius + 1):
        yield f"ball r={r}", record.ball(r)


def interval_family(transducer, max_size, label=0, graph=None):
    """Words base, base·s, base·s², … along one label."""
    graph = _graph(transducer, graph)
    words = [transducer.base]
    for size in range(1, max_size + 1):
        if size > 1:
            words.append(graph.outputs(words[-1])[label])
        yield f"interval size={size}", list(words)


def rectangle_family(transducer, max_width, right=0, left=1, toggle=2):
    """Lamplighter rectangles {(S, z) : S ⊆ [0, r), z ∈ [0, r)} reached from the base word."""
    presentation = transducer.presentation
    for r in range(1, max_width + 1):
        words = []
        for mask in range(2**r):
            sweep = []
            for p in range(r):
                if mask >> p & 1:
                    sweep.append(toggle)
                if p < r - 1:
                    sweep.append(right)
            for z in range(r):
                words.append(word_of(presentation, transducer.base, sweep + [left] * (r - 1 - z)))
        yield f"rectangle r={r}", words


FAMILIES = ("balls", "intervals", "rectangles")


def folner_upper(transducer, family, epsilon, graph=None, name="family"):
    """First member of ``family`` with #∂W < ε·#W; its size bounds Føl(ε) from above."""
    graph = _graph(transducer, graph)
    epsilon = Fraction(epsilon)
    for description, words in family:
        edge = boundary(transducer, words, graph)
        ratio = Fraction(len(edge), len(words))
        logger.info("%s: #W=%d, #∂W=%d", description, len(words), len(edge))
        if ratio < epsilon:
            return FolnerReport(list(words), edge, ratio, epsilon, f"{name}: {description}")
    raise FolnerNotFoundError(f"no member of the {name} family has boundary ratio below {epsilon}")


def folner_exact(transducer, epsilon, size_budget, radius_budget, max_candidates=None, graph=None, max_words=None):
    """Smallest connected W inside V_radius with #∂W < ε·#W, by increasing size.

    A disconnected set always has a connected component with ratio no larger,
    so only connected sets are enumerated.
    """
    graph = _graph(transducer, graph)
    epsilon = Fraction(epsilon)
    universe = growth(transducer, radius_budget, graph=graph, max_words=max_words).ball(radius_budget)
    index = {w: i for i, w in enumerate(universe)}
    neighbours = defaultdict(set)
    escapes = []
    for i, w in enumerate(universe):
        outputs = graph.outputs(w)
        escapes.append(frozenset(index.get(y, -1) for y in outputs))
        for y in outputs:
            if y in index and index[y] != i:
                neighbours[i].add(index[y])
                neighbours[index[y]].add(i)

    def edge_count(members):
        return sum(1 for i in members if not escapes[i] <= members)

    level = {frozenset([i]) for i in range(len(universe))}
    examined = 0
    for size in range(1, size_budget + 1):
        if size > 1:
            grown = set()
            for members in level:
                for i in members:
                    for j in neighbours[i] - members:
                        grown.add(members | {j})
            level = grown
        examined += len(level)
        if max_candidates is not None and examined > max_candidates:
            raise BudgetExceededError(f"more than {max_candidates} candidate sets at size {size}")
        passing = sorted(sorted(m) for m in level if Fraction(edge_count(m), size) < epsilon)
        logger.info("exact Følner search size %d: %d candidates, %d passing", size, len(level), len(passing))
        if passing:
            words = [universe[i] for i in passing[0]]
            edge = boundary(transducer, words, graph)
            family = f"connected sets in V_{radius_budget}"
            return FolnerReport(words, edge, Fraction(len(edge), size), epsilon, family, exact=True)
    raise FolnerNotFoundError(
        f"no connected set of size <= {size_budget} in V_{radius_budget} has ratio below {epsilon}"
    )


@dataclass
class AvgLengthRecord:
    n: int
    value: Fraction
    distinct_words: int
    total_mass: int


def avg_length_exact(transducer, n_max, base=None, max_words=None, graph=None):
    """Exact ℓ_n for n <= n_max from the multiplicity map of M_n."""
    graph = _graph(transducer, graph)
    base = transducer.base if base is None else tuple(base)
    graph.outputs(base)
    k = transducer.labels
    counts = {base: 1}
    records = [AvgLengthRecord(0, Fraction(len(base)), 1, 1)]
    for n in range(1, n_max + 1):
        nxt = defaultdict(int)
        for w, c in counts.items():
            for y in graph.outputs(w):
                nxt[y] += c
        if max_words is not None and len(nxt) > max_words:
            raise BudgetExceededError(f"M_{n} has more than {max_words} distinct words", partial=records)
        counts = nxt
        mass = k**n
        total = sum(c * len(w) for w, c in counts.items())
        records.append(AvgLengthRecord(n, Fraction(total, mass), len(counts), mass))
        logger.info("avglen n=%d: %d distinct words", n, len(counts))
    return records


@dataclass(frozen=True)
class McEstimate:
    n: int
    samples: int
    mean: float
    stderr: float
    seed: int


def avg_length_mc(transducer, n, samples, seed, threads=1, base=None):
    """Mean |w| after n uniformly chosen labels, one random stream per sample."""
    base = transducer.base if base is None else tuple(base)
    k = transducer.labels
    graph = ImageGraph(transducer)
    graph.outputs(base)

    def sample(rng):
        return len(graph.follow(base, rng.integers(0, k, size=n)))

    mean, stderr = summarize(run_samples(sample, samples, seed, threads))
    return McEstimate(n, samples, mean, stderr, seed)

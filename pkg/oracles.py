"""Exact group arithmetic used as ground truth: ℤᵐ, free groups, cyclic lamps and wreath products.

Every group carries its generating list (with inverse pairing), a right
action by generators and, when known, a closed-form word length.
"""

import copy
import logging
from collections import deque
from dataclasses import dataclass

import numpy as np

from errors import BudgetExceededError, UnknownLengthError, UnsupportedGroupError, WrongOracleError

logger = logging.getLogger(__name__)


class OracleGroup:
    name = "group"

    def __init__(self, generators, names=None, inverse=None):
        self.generators = tuple(generators)
        self.names = tuple(names) if names else tuple(f"g{j}" for j in range(len(self.generators)))
        self.inverse = tuple(inverse) if inverse is not None else self._pair_inverses()
        self.length_rule = None
        self.length_method = "bfs"

    # arithmetic, supplied by subclasses

    @property
    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    # generators

    def step(self, element, j):
        return self.mul(element, self.generators[j])

    def evaluate(self, labels, start=None):
        element = self.identity if start is None else start
        for j in labels:
            element = self.step(element, j)
        return element

    def _pair_inverses(self):
        pairing = []
        for g in self.generators:
            target = self.inv(g)
            pairing.append(next((i for i, h in enumerate(self.generators) if h == target), None))
        return tuple(pairing)

    @property
    def symmetric(self):
        return all(j is not None for j in self.inverse)

    def with_generators(self, generators, names=None, inverse=None, length_rule=None, length_method="bfs"):
        """Same group with another generating list."""
        clone = copy.copy(self)
        OracleGroup.__init__(clone, generators, names, inverse)
        clone.length_rule = length_rule
        clone.length_method = length_method if length_rule else "bfs"
        return clone

    # walking

    def walker(self, start=None):
        return Walker(self, start)

    def endpoint(self, choices):
        walker = self.walker()
        for j in choices:
            walker.step(int(j))
        return walker.element()

    def range_size(self, choices):
        """Number of distinct elements visited by the walk."""
        walker = self.walker()
        seen = {walker.key()}
        for j in choices:
            walker.step(int(j))
            seen.add(walker.key())
        return len(seen)

    def __repr__(self):
        return f"{type(self).__name__}({self.name}, {len(self.generators)} generators)"


class Walker:
    """Walk state; subclasses keep mutable internals for speed."""

    def __init__(self, group, start=None):
        self.group = group
        self.current = group.identity if start is None else start

    def step(self, j):
        self.current = self.group.step(self.current, j)

    def element(self):
        return self.current

    def key(self):
        return self.current


class ZmGroup(OracleGroup):
    def __init__(self, m):
        if m < 1:
            raise UnsupportedGroupError("ℤᵐ needs m >= 1")
        self.m = m
        self.name = "Z" if m == 1 else f"Z^{m}"
        units = [tuple(int(i == c) for i in range(m)) for c in range(m)]
        generators = units + [tuple(-x for x in u) for u in units]
        names = [f"+e{c + 1}" for c in range(m)] + [f"-e{c + 1}" for c in range(m)]
        super().__init__(generators, names, [(j + m) % (2 * m) for j in range(2 * m)])
        self.length_rule = lambda z: sum(abs(x) for x in z)
        self.length_method = "closed"

    @property
    def identity(self):
        return (0,) * self.m

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def _displacements(self):
        return np.array(self.generators, dtype=np.int64)

    def endpoint(self, choices):
        steps = self._displacements()[np.asarray(choices, dtype=np.int64)]
        return tuple(int(x) for x in steps.sum(axis=0)) if len(steps) else self.identity

    def range_size(self, choices):
        steps = self._displacements()[np.asarray(choices, dtype=np.int64)]
        path = np.vstack([np.zeros((1, self.m), dtype=np.int64), np.cumsum(steps, axis=0)])
        return int(len(np.unique(path, axis=0)))


class FreeGroup(OracleGroup):
    """Reduced words as tuples of nonzero ints; -i is the inverse of i."""

    def __init__(self, m):
        if m < 1:
            raise UnsupportedGroupError("Fₘ needs m >= 1")
        self.m = m
        self.name = f"F{m}"
        generators = [(i,) for i in range(1, m + 1)] + [(-i,) for i in range(1, m + 1)]
        names = [f"s{i}" for i in range(1, m + 1)] + [f"S{i}" for i in range(1, m + 1)]
        super().__init__(generators, names, [(j + m) % (2 * m) for j in range(2 * m)])
        self.length_rule = len
        self.length_method = "closed"

    @property
    def identity(self):
        return ()

    def mul(self, a, b):
        a = list(a)
        for x in b:
            if a and a[-1] == -x:
                a.pop()
            else:
                a.append(x)
        return tuple(a)

    def inv(self, a):
        return tuple(-x for x in reversed(a))

    def walker(self, start=None):
        return FreeWalker(self, start)


class FreeWalker(Walker):
    def __init__(self, group, start=None):
        super().__init__(group, start)
        self.stack = list(self.current)

    def step(self, j):
        for x in self.group.generators[j]:
            if self.stack and self.stack[-1] == -x:
                self.stack.pop()
            else:
                self.stack.append(x)

    def element(self):
        return tuple(self.stack)

    def key(self):
        return tuple(self.stack)


class CyclicGroup(OracleGroup):
    def __init__(self, order=2):
        self.order = order
        self.name = f"Z{order}"
        if order == 2:
            super().__init__([1], ["h"], [0])
        else:
            super().__init__([1, order - 1], ["h", "H"], [1, 0])
        self.length_rule = lambda a: min(a, order - a)
        self.length_method = "closed"

    @property
    def identity(self):
        return 0

    def mul(self, a, b):
        return (a + b) % self.order

    def inv(self, a):
        return (-a) % self.order


@dataclass(frozen=True)
class WreathElement:
    """Finitely supported lamp function (sorted ``(point, value)`` pairs) and a base position."""

    support: tuple = ()
    position: tuple = (0,)

    def lit(self):
        return tuple(point for point, _ in self.support)


class WreathProduct(OracleGroup):
    """lamps ≀ base, with base ℤ or ℤ² and multiplication (f, b)(f', b') = (f · f'(· - b), b + b')."""

    def __init__(self, lamps, base):
        if not isinstance(base, ZmGroup) or base.m > 2:
            raise UnsupportedGroupError(f"wreath products are supported over ℤ and ℤ² only, not {base.name}")
        self.lamps = lamps
        self.base = base
        self.name = f"{lamps.name}wr{base.name}"
        moves = [WreathElement((), g) for g in base.generators]
        toggles = [self.lamp(a) for a in lamps.generators]
        names = [n.replace("+e", "t").replace("-e", "T") for n in base.names]
        if base.m == 1:
            names = ["t", "T"]
        super().__init__(moves + toggles, names + list(lamps.names))
        if isinstance(lamps, CyclicGroup) and lamps.order == 2 and base.m == 1:
            self.length_rule = _lamplighter_length
            self.length_method = "closed"

    def lamp(self, value, point=None):
        point = self.base.identity if point is None else point
        if value == self.lamps.identity:
            return WreathElement((), self.base.identity)
        return WreathElement(((point, value),), self.base.identity)

    @property
    def identity(self):
        return WreathElement((), self.base.identity)

    def mul(self, a, b):
        values = dict(a.support)
        for point, value in b.support:
            target = self.base.mul(a.position, point)
            merged = self.lamps.mul(values.get(target, self.lamps.identity), value)
            if merged == self.lamps.identity:
                values.pop(target, None)
            else:
                values[target] = merged
        return WreathElement(tuple(sorted(values.items())), self.base.mul(a.position, b.position))

    def inv(self, a):
        back = self.base.inv(a.position)
        support = tuple(sorted((self.base.mul(point, back), self.lamps.inv(value)) for point, value in a.support))
        return WreathElement(support, back)

    def walker(self, start=None):
        return WreathWalker(self, start)

    def _displacements(self):
        return np.array([g.position for g in self.generators], dtype=np.int64)

    def range_size(self, choices):
        """Distinct base positions visited (the walk projected to the base group)."""
        steps = self._displacements()[np.asarray(choices, dtype=np.int64)]
        path = np.vstack([np.zeros((1, self.base.m), dtype=np.int64), np.cumsum(steps, axis=0)])
        return int(len(np.unique(path, axis=0)))


class WreathWalker(Walker):
    def __init__(self, group, start=None):
        super().__init__(group, start)
        self.values = dict(self.current.support)
        self.position = self.current.position

    def step(self, j):
        group = self.group
        generator = group.generators[j]
        lamps = group.lamps
        for point, value in generator.support:
            target = group.base.mul(self.position, point)
            merged = lamps.mul(self.values.get(target, lamps.identity), value)
            if merged == lamps.identity:
                self.values.pop(target, None)
            else:
                self.values[target] = merged
        self.position = group.base.mul(self.position, generator.position)

    def element(self):
        return WreathElement(tuple(sorted(self.values.items())), self.position)

    def key(self):
        return self.element()


# word lengths


def travel(points, end):
    """Length of the shortest ±1 walk on ℤ from 0 that visits ``points`` and stops at ``end``."""
    lo = min([0, end, *points])
    hi = max([0, end, *points])
    return min(-lo + (hi - lo) + (hi - end), hi + (hi - lo) + (end - lo))


def _lamplighter_length(g):
    lit = [p for (p,), _ in g.support]
    return len(lit) + travel(lit, g.position[0])


def _lamplighter_s1_length(g):
    lit = [p for (p,), _ in g.support]
    walk = travel(lit, g.position[0])
    if walk == 0 and lit:
        return 2
    return walk


def _wreath_estimate(lamps):
    def estimate(g):
        points = [p for (p,), _ in g.support]
        return travel(points, g.position[0]) + sum(lamps.length_rule(v) for _, v in g.support)

    return estimate


def word_length(group, element, cap=None):
    """ℓ_S(element): closed form or estimate when the group has one, else BFS up to ``cap``."""
    if group.length_rule is not None:
        return group.length_rule(element)
    return bfs_length(group, element, cap)


def bfs_length(group, element, cap=None):
    """Bidirectional breadth-first distance from the identity."""
    if cap is None:
        cap = 12
    if not group.symmetric:
        raise UnknownLengthError("bidirectional search needs a symmetric generating set")
    if element == group.identity:
        return 0
    sides = [{group.identity: 0}, {element: 0}]
    frontiers = [[group.identity], [element]]
    depth = [0, 0]
    while depth[0] + depth[1] < cap:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        seen, other = sides[side], sides[1 - side]
        nxt = []
        best = None
        for x in frontiers[side]:
            for j in range(len(group.generators)):
                y = group.step(x, j)
                if y in seen:
                    continue
                if y in other:
                    met = depth[side] + 1 + other[y]
                    best = met if best is None else min(best, met)
                seen[y] = depth[side] + 1
                nxt.append(y)
        if best is not None:
            return best
        depth[side] += 1
        frontiers[side] = nxt
        if not nxt:
            break
    raise UnknownLengthError(f"no word of length <= {cap} reaches {element}")


def ball(group, radius, limit=None):
    """Elements of length <= radius in breadth-first order, and the sphere sizes."""
    order = [group.identity]
    seen = {group.identity}
    spheres = [1]
    frontier = [group.identity]
    for depth in range(radius):
        nxt = []
        for x in frontier:
            for j in range(len(group.generators)):
                y = group.step(x, j)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if limit is not None and len(seen) > limit:
            raise BudgetExceededError(f"ball of radius {depth + 1} exceeds {limit} elements", partial=spheres)
        order.extend(nxt)
        spheres.append(len(nxt))
        frontier = nxt
        logger.debug("ball radius %d: %d elements", depth + 1, len(order))
    return order, spheres


# factories


def oracle_zm(m):
    return ZmGroup(m)


def oracle_free(m):
    return FreeGroup(m)


def oracle_wreath_Z2_over(base):
    """ℤ₂ ≀ H for H = ℤ or ℤ², generators (base moves..., h)."""
    if not isinstance(base, ZmGroup):
        raise UnsupportedGroupError(f"ℤ₂ ≀ H needs H = ℤ or ℤ², got {base.name}")
    return WreathProduct(CyclicGroup(2), base)


def oracle_wreath_with_Z(lamps):
    """lamps ≀ ℤ with generators (t, T, lamp generators...)."""
    return WreathProduct(lamps, ZmGroup(1))


def _require_lamplighter(group):
    if not (
        isinstance(group, WreathProduct)
        and isinstance(group.lamps, CyclicGroup)
        and group.lamps.order == 2
        and group.base.m == 1
    ):
        raise WrongOracleError(f"expected the lamplighter group ℤ₂ ≀ ℤ, got {group.name}")


def lamplighter_S1_generators(group):
    """ℤ₂ ≀ ℤ with S₁ = {t, th, ht, hth} and their inverses (j pairs with j + 4)."""
    _require_lamplighter(group)
    t, h = group.generators[0], group.lamp(1)
    q = [t, group.mul(t, h), group.mul(h, t), group.mul(group.mul(h, t), h)]
    generators = q + [group.inv(g) for g in q]
    names = ["t", "th", "ht", "hth", "T", "hT", "Th", "hTh"]
    return group.with_generators(
        generators,
        names,
        [(j + 4) % 8 for j in range(8)],
        length_rule=_lamplighter_s1_length,
        length_method="closed",
    )


def wreath_over_Z_generators(group, lamp_generators=None, lamp_names=None):
    """Q ∪ Q⁻¹ with Q = {h_i^p t h_j^q : p, q in {-1, 0, 1}} on lamps ≀ ℤ.

    Duplicates are removed in index order before inverses are appended.
    """
    if not isinstance(group, WreathProduct) or group.base.m != 1:
        raise WrongOracleError(f"expected a wreath product over ℤ, got {group.name}")
    lamps = group.lamps
    if lamp_generators is None:
        lamp_generators, lamp_names = lamps.generators, lamps.names
    lamp_names = lamp_names or [f"h{i + 1}" for i in range(len(lamp_generators))]
    powers = {-1: lambda a: lamps.inv(a), 0: lambda a: lamps.identity, 1: lambda a: a}
    t = WreathElement((), (1,))
    q, names = [], []
    for i, hi in enumerate(lamp_generators):
        for j, hj in enumerate(lamp_generators):
            for p in (-1, 0, 1):
                for r in (-1, 0, 1):
                    g = group.mul(group.mul(group.lamp(powers[p](hi)), t), group.lamp(powers[r](hj)))
                    if g not in q:
                        q.append(g)
                        names.append(_power_name(lamp_names[i], p) + "t" + _power_name(lamp_names[j], r))
    generators = list(q)
    for g, name in zip(q, names):
        inverse = group.inv(g)
        if inverse not in generators:
            generators.append(inverse)
            names.append(f"({name})^-1")
    rule = _wreath_estimate(lamps) if lamps.length_rule is not None and group.base.m == 1 else None
    logger.info("wreath generating set: %d elements of Q, %d in total", len(q), len(generators))
    return group.with_generators(generators, names, length_rule=rule, length_method="estimate")


def _power_name(name, p):
    if p == 0:
        return ""
    return f"[{name}]" if p == 1 else f"[{name}^-1]"


def tape_counts(levels):
    """Generator counts k₁ = 8, k_{m+1} = 2(k_m + 1)² of the iterated constructions."""
    counts = [8]
    while len(counts) < levels:
        counts.append(2 * (counts[-1] + 1) ** 2)
    return counts[:levels]


def g2_group():
    """G₂ = (ℤ₂ ≀ ℤ) ≀ ℤ with the generators built from Q₁ = {t, th, ht, hth}."""
    g1 = lamplighter_S1_generators(oracle_wreath_Z2_over(ZmGroup(1)))
    g2 = oracle_wreath_with_Z(g1)
    return wreath_over_Z_generators(g2, g1.generators[:4], g1.names[:4])

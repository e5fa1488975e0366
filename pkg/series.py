"""Sequence analysis: exact linear recurrences, power-law exponents and growth classification."""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from errors import InsufficientDataError, NonPositiveValueError

logger = logging.getLogger(__name__)

HOLDOUT = 10
RATIO_TOLERANCE = 0.05
MIN_RATE = 1.05
MIN_TERMS = 8


@dataclass(frozen=True)
class RecurrenceFit:
    order: int
    coefficients: tuple
    prefix_length: int
    verified_length: int

    def predict(self, history):
        """Next term from the last ``order`` terms."""
        return sum(c * history[-i] for i, c in enumerate(self.coefficients, 1))

    def as_dict(self):
        return {
            "order": self.order,
            "coefficients": [str(c) for c in self.coefficients],
            "prefix_length": self.prefix_length,
            "verified_length": self.verified_length,
        }


def berlekamp_massey(seq):
    """Shortest linear recurrence of ``seq`` over the rationals.

    Returns ``(L, C)`` with C[0] = 1 and Σ C[i]·s[n-i] = 0 for n >= L.
    """
    s = [Fraction(x) for x in seq]
    current = [Fraction(1)]
    previous = [Fraction(1)]
    length, shift, last = 0, 1, Fraction(1)
    for n in range(len(s)):
        discrepancy = s[n] + sum(current[i] * s[n - i] for i in range(1, min(length, len(current) - 1) + 1))
        if discrepancy == 0:
            shift += 1
            continue
        saved = list(current)
        scale = discrepancy / last
        current += [Fraction(0)] * (len(previous) + shift - len(current))
        for i, p in enumerate(previous):
            current[i + shift] -= scale * p
        if 2 * length <= n:
            length = n + 1 - length
            previous, last, shift = saved, discrepancy, 1
        else:
            shift += 1
    current += [Fraction(0)] * (length + 1 - len(current))
    return length, current[: length + 1]


def fit_recurrence(seq, max_order, holdout=HOLDOUT):
    """Minimal exact recurrence fitted on all but ``holdout`` terms and verified on every term."""
    seq = [int(x) for x in seq]
    if len(seq) < 2 * max_order + holdout:
        raise InsufficientDataError(f"{len(seq)} terms; need {2 * max_order + holdout} for order {max_order}")
    prefix = seq[: len(seq) - holdout]
    order, connection = berlekamp_massey(prefix)
    if order > max_order:
        logger.info("no recurrence of order <= %d (linear complexity %d)", max_order, order)
        return None
    coefficients = tuple(-c for c in connection[1:])
    for n in range(order, len(seq)):
        if sum(c * seq[n - i] for i, c in enumerate(coefficients, 1)) != seq[n]:
            logger.info("order-%d recurrence fails at term %d", order, n)
            return None
    return RecurrenceFit(order, coefficients, len(prefix), len(seq))


@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    intercept: float
    window: tuple
    residual: float

    def as_dict(self):
        return {
            "exponent": self.exponent,
            "intercept": self.intercept,
            "window": list(self.window),
            "residual": self.residual,
        }


def default_window(count):
    return (count - 1) // 2, count


def fit_power(xs, ys, window=None):
    """Least-squares slope of log y against log x over ``window`` (default: upper half)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if len(xs) != len(ys):
        raise InsufficientDataError("xs and ys differ in length")
    start, stop = window if window is not None else default_window(len(xs))
    if stop - start < 2 or start < 0 or stop > len(xs):
        raise InsufficientDataError(f"window {start}:{stop} holds fewer than two points")
    xs, ys = xs[start:stop], ys[start:stop]
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise NonPositiveValueError("power-law fits need positive values inside the window")
    lx, ly = np.log(xs), np.log(ys)
    slope, intercept = np.polyfit(lx, ly, 1)
    residual = float(np.sqrt(np.mean((ly - (slope * lx + intercept)) ** 2)))
    return PowerLawFit(float(slope), float(intercept), (start, stop), residual)


@dataclass(frozen=True)
class GrowthClass:
    kind: str
    degree: int = None
    rate: float = None

    def __str__(self):
        if self.kind == "polynomial":
            return f"polynomial({self.degree})"
        if self.kind == "exponential":
            return f"exponential({self.rate:.4f})"
        return self.kind

    def as_dict(self):
        return {"kind": self.kind, "degree": self.degree, "rate": self.rate}


def _differences(seq):
    return [b - a for a, b in zip(seq, seq[1:])]


def classify_growth(seq):
    """polynomial(d) when the d-th differences are constant over the tail, else exponential or inconclusive."""
    seq = [int(x) for x in seq]
    if len(seq) < MIN_TERMS:
        raise InsufficientDataError(f"classification needs at least {MIN_TERMS} terms")
    tail = max(3, len(seq) // 4)
    diffs = seq
    for degree in range(len(seq) // 2 + 1):
        end = diffs[-tail:]
        if len(diffs) >= tail and len(set(end)) == 1 and (degree == 0 or end[0] != 0):
            return GrowthClass("polynomial", degree=degree)
        diffs = _differences(diffs)
    if all(x > 0 for x in seq):
        half = seq[len(seq) // 2 :]
        ratios = [b / a for a, b in zip(half, half[1:])]
        if max(ratios) - min(ratios) <= RATIO_TOLERANCE and ratios[-1] >= MIN_RATE:
            return GrowthClass("exponential", rate=ratios[-1])
    return GrowthClass("inconclusive")

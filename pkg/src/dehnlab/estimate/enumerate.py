"""Exact statistics of the uniform measure on loops of length n, by enumeration."""
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List

import numpy as np

from dehnlab.errors import BudgetExceededError
from dehnlab.group.catalog import GroupSpec, trace
from dehnlab.group.metric import word_metric
from dehnlab.group.words import LazyWord
from dehnlab.walk.samplers import eval_letter_rows, letter_array

DEFAULT_MAX_WORDS = 2_000_000

logger = logging.getLogger("estimate_logger")


@dataclass
class LoopEnumeration:
    spec: GroupSpec
    n: int
    word_count: int
    loops: List[LazyWord]

    @property
    def loop_count(self) -> int:
        return len(self.loops)

    @property
    def loop_probability(self) -> Fraction:
        """Probability of each loop under the normalized measure."""
        return Fraction(1, self.loop_count)

    @property
    def return_probability(self) -> Fraction:
        return Fraction(self.loop_count, self.word_count)

    def mean(self, fn: Callable[[LazyWord], int]) -> Fraction:
        if not self.loops:
            return Fraction(0)
        return Fraction(sum(fn(w) for w in self.loops), self.loop_count)

    def distribution(self, fn: Callable[[LazyWord], int]) -> Dict[int, Fraction]:
        counts = Counter(fn(w) for w in self.loops)
        return {k: Fraction(v, self.loop_count) for k, v in sorted(counts.items())}

    def distance_distribution(self, s: int, t: int) -> Dict[int, Fraction]:
        """Law of d(w(s), w(t))."""
        spec = self.spec

        def dist(w):
            tr = trace(spec, w)
            return word_metric(spec, tr[s], tr[t])

        return self.distribution(dist)

    def position_distribution(self, t: int) -> Dict[tuple, Fraction]:
        spec = self.spec
        return self.distribution(lambda w: trace(spec, w)[t])


def enumerate_loops(
    spec: GroupSpec, n: int, max_words: int = DEFAULT_MAX_WORDS
) -> LoopEnumeration:
    letters = letter_array(spec)
    word_count = len(letters) ** n
    if word_count > max_words:
        raise BudgetExceededError(
            f"{word_count} lazy words of length {n} on {spec.id}, over the budget of {max_words}"
        )
    if n == 0:
        return LoopEnumeration(spec, 0, 1, [()])
    idx = np.array(list(product(range(len(letters)), repeat=n)), dtype=np.int64)
    X = eval_letter_rows(spec, idx)
    hits = np.flatnonzero(~X.any(axis=1))
    loops = [tuple(int(x) for x in letters[idx[i]]) for i in hits]
    logger.debug(f"{spec.id}: {len(loops)} loops among {word_count} words of length {n}")
    return LoopEnumeration(spec, n, word_count, loops)


def exact_average(
    spec: GroupSpec, n: int, area_fn: Callable[[LazyWord], int], max_words: int = DEFAULT_MAX_WORDS
) -> Fraction:
    """Exact mean of ``area_fn`` over loops of length n."""
    return enumerate_loops(spec, n, max_words).mean(area_fn)

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np

from dehnlab.group.catalog import GroupSpec


@dataclass(frozen=True)
class StepMeasure:
    group_id: str
    letters: Tuple[int, ...]
    elements: Tuple[Tuple[int, ...], ...]
    probabilities: Tuple[Fraction, ...]

    @property
    def support(self):
        return list(zip(self.elements, self.probabilities))

    def element_rows(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64)

    def float_probabilities(self) -> np.ndarray:
        return np.array([float(p) for p in self.probabilities])

    def probability_of(self, g) -> Fraction:
        g = tuple(g)
        return sum(
            (p for e, p in zip(self.elements, self.probabilities) if e == g),
            Fraction(0),
        )


def step_measure(spec: GroupSpec) -> StepMeasure:
    """p(g) = 1/(2d+1) on {e, e_i^{+-1}}."""
    letters = tuple(spec.letters)
    p = Fraction(1, len(letters))
    return StepMeasure(
        group_id=spec.id,
        letters=letters,
        elements=tuple(spec.letter_element(x) for x in letters),
        probabilities=(p,) * len(letters),
    )

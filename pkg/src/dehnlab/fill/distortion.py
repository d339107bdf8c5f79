from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

import numpy as np

from dehnlab.errors import BudgetExceededError, UnsupportedGroupError
from dehnlab.fill.central import CentralExtensionEval, central_coordinates
from dehnlab.group.words import LazyWord, commutator, power

# word lengths beyond this are refused
MAX_WITNESS_LENGTH = 200_000


def _commutator_family(r: int) -> LazyWord:
    # [a^r, b^r]
    return commutator(power((1,), r), power((2,), r))


def _class3_family(r: int) -> LazyWord:
    # [a^r, [a^r, b^r]]
    return commutator(power((1,), r), commutator(power((1,), r), power((2,), r)))


def return_available_witnesses() -> Dict[str, Callable[[int], LazyWord]]:
    return {"FreeAbelian": _commutator_family, "Heisenberg3": _class3_family}


@dataclass
class DistortionProbe:
    extension: CentralExtensionEval
    rows: List[Tuple[int, int, int]] = field(default_factory=list)
    exponent: float = float("nan")

    @property
    def radii(self):
        return [r for r, _, _ in self.rows]

    @property
    def values(self):
        return [v for _, _, v in self.rows]


def distortion_probe(ext: CentralExtensionEval, R: int) -> DistortionProbe:
    """(r, word length, |l|) for the witness family of the base group, r = 0..R.

    The exponent is the log-log slope of |l| against r over r >= 1.
    """
    base = ext.base
    families = return_available_witnesses()
    try:
        family = families[base.family]
    except KeyError:
        raise UnsupportedGroupError(
            f"no distortion witness for {base.id}, available families: {list(families.keys())}"
        )
    if base.generator_count < 2:
        raise UnsupportedGroupError(f"{base.id} has no distorted central direction")
    probe = DistortionProbe(ext)
    for r in range(R + 1):
        w = family(r)
        if len(w) > MAX_WITNESS_LENGTH:
            raise BudgetExceededError(
                f"witness of radius {r} has length {len(w)}, over {MAX_WITNESS_LENGTH}"
            )
        ell = max((abs(c) for c in central_coordinates(ext, w)), default=0)
        probe.rows.append((r, len(w), ell))
    pts = [(r, v) for r, _, v in probe.rows if r >= 1 and v > 0]
    if len(pts) >= 2:
        x, y = np.log(np.array(pts, dtype=np.float64)).T
        probe.exponent = float(np.polyfit(x, y, 1)[0])
    return probe

"""Free-group bookkeeping for fillings.

A filling step (c, i, s) stands for the conjugate c^-1 r_i^s c of relator i.
"""
from typing import Optional, Sequence, Tuple

from dehnlab.group.words import LazyWord, cyclic_reduce, free_reduce, invert_word

Step = Tuple[LazyWord, int, int]


def free_equal(x: Sequence[int], y: Sequence[int]) -> bool:
    return free_reduce(x) == free_reduce(y)


def conjugate(c: Sequence[int], r: Sequence[int], sign: int) -> LazyWord:
    body = tuple(r) if sign > 0 else invert_word(r)
    return invert_word(c) + body + tuple(c)


def expand_steps(steps: Sequence[Step], relators: Sequence[LazyWord]) -> LazyWord:
    """Freely reduced product of the conjugated relators, in step order."""
    out: LazyWord = ()
    for c, idx, sign in steps:
        out = free_reduce(out + conjugate(c, relators[idx], sign))
    return out


def rotations(w: Sequence[int]):
    for j in range(len(w)):
        yield j, tuple(w[j:]) + tuple(w[:j])


def find_relator_conjugate(
    word: Sequence[int], relators: Sequence[LazyWord]
) -> Optional[Step]:
    """(c, i, s) with word == c^-1 r_i^s c in the free group, or None.

    Both sides are cyclically reduced; a match is a rotation of the reduced
    relator equal to the reduced word.
    """
    u, core = cyclic_reduce(word)
    if not core:
        return None
    for idx, r in enumerate(relators):
        for sign in (1, -1):
            rho = free_reduce(r if sign > 0 else invert_word(r))
            v, rho_core = cyclic_reduce(rho)
            if len(rho_core) != len(core):
                continue
            for j, rot in rotations(rho_core):
                if rot == core:
                    p = rho_core[:j]
                    return free_reduce(invert_word(v) + p + u), idx, sign
    return None

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from dehnlab.errors import UnsupportedGroupError
from dehnlab.group.law import Class2Law, FiliformLaw, FreeAbelianLaw, GroupLaw
from dehnlab.group.words import (
    LAZY,
    LazyWord,
    PathTrace,
    commutator,
    validate_word,
)

AVAILABLE_GROUPS = ["z1", "z2", "z3", "heis3", "fnil2-2", "fnil2-3", "filiform4"]


@dataclass(frozen=True)
class GroupSpec:
    id: str
    family: str
    generator_count: int
    relators: Tuple[LazyWord, ...]
    coordinate_arity: int
    growth_degree: int
    # exponent k of the Dehn function O(n^k), None when unknown to the catalog
    filling_degree: Optional[int]
    law: GroupLaw = field(compare=False, repr=False)

    def identity(self) -> Tuple[int, ...]:
        return self.law.identity()

    def multiply(self, x, y) -> Tuple[int, ...]:
        return self.law.multiply(x, y)

    def inverse(self, x) -> Tuple[int, ...]:
        return self.law.inverse(x)

    def letter_element(self, letter: int) -> Tuple[int, ...]:
        if letter == LAZY:
            return self.law.identity()
        g = self.law.generator(abs(letter))
        return g if letter > 0 else self.law.inverse(g)

    @property
    def letters(self) -> List[int]:
        # lazy letter first, then a, A, b, B, ...
        out = [LAZY]
        for i in range(1, self.generator_count + 1):
            out.extend([i, -i])
        return out


def _gen(i: int) -> LazyWord:
    return (i,)


def _free_abelian(d: int) -> GroupSpec:
    relators = tuple(
        commutator(_gen(i), _gen(j))
        for i in range(1, d + 1)
        for j in range(i + 1, d + 1)
    )
    return GroupSpec(
        id=f"z{d}",
        family="FreeAbelian",
        generator_count=d,
        relators=relators,
        coordinate_arity=d,
        growth_degree=d,
        filling_degree=2 if d >= 2 else 0,
        law=FreeAbelianLaw(d),
    )


def _class2(k: int, group_id: str, family: str) -> GroupSpec:
    relators = []
    for l in range(1, k + 1):
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                relators.append(commutator(_gen(l), commutator(_gen(i), _gen(j))))
    law = Class2Law(k)
    return GroupSpec(
        id=group_id,
        family=family,
        generator_count=k,
        relators=tuple(relators),
        coordinate_arity=law.arity,
        growth_degree=k + 2 * comb(k, 2),
        filling_degree=3 if k >= 2 else 0,
        law=law,
    )


def _filiform4() -> GroupSpec:
    t, s = _gen(1), _gen(2)
    ts = commutator(t, s)
    tts = commutator(t, ts)
    relators = (commutator(s, ts), commutator(t, tts), commutator(s, tts))
    return GroupSpec(
        id="filiform4",
        family="Filiform4",
        generator_count=2,
        relators=relators,
        coordinate_arity=4,
        growth_degree=7,
        filling_degree=None,
        law=FiliformLaw(),
    )


def return_available_groups() -> List[str]:
    return list(AVAILABLE_GROUPS)


@lru_cache(maxsize=None)
def get_group(group_id: str) -> GroupSpec:
    gid = group_id.strip().lower()
    m = re.fullmatch(r"z(\d+)", gid)
    if m and int(m.group(1)) >= 1:
        return _free_abelian(int(m.group(1)))
    if gid == "heis3":
        return _class2(2, "heis3", "Heisenberg3")
    m = re.fullmatch(r"fnil2-(\d+)", gid)
    if m and int(m.group(1)) >= 1:
        return _class2(int(m.group(1)), gid, "FreeNilpotentClass2")
    if gid == "filiform4":
        return _filiform4()
    raise UnsupportedGroupError(
        f"group {group_id} not available in options {return_available_groups()}"
    )


def abelianization(spec: GroupSpec) -> GroupSpec:
    """FreeAbelian(d) onto which the catalog group projects generator-wise."""
    return get_group(f"z{spec.generator_count}")


def eval_word(spec: GroupSpec, w: Sequence[int]) -> Tuple[int, ...]:
    w = validate_word(spec.generator_count, w)
    g = spec.identity()
    for letter in w:
        if letter != LAZY:
            g = spec.multiply(g, spec.letter_element(letter))
    return g


def trace(spec: GroupSpec, w: Sequence[int]) -> PathTrace:
    w = validate_word(spec.generator_count, w)
    g = spec.identity()
    prefixes = [g]
    for letter in w:
        if letter != LAZY:
            g = spec.multiply(g, spec.letter_element(letter))
        prefixes.append(g)
    return PathTrace(tuple(prefixes))


def is_loop(spec: GroupSpec, w: Sequence[int]) -> bool:
    return eval_word(spec, w) == spec.identity()


def letter_elements(spec: GroupSpec) -> Dict[int, Tuple[int, ...]]:
    return {letter: spec.letter_element(letter) for letter in spec.letters}

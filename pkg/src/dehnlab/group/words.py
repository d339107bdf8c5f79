from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from dehnlab.errors import InvalidWordError

# a letter is +i / -i for generator i (1-based), 0 is the lazy letter
LazyWord = Tuple[int, ...]
LAZY = 0
ALPHABET = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class PathTrace:
    prefixes: Tuple[Tuple[int, ...], ...]

    def __len__(self):
        return len(self.prefixes)

    def __getitem__(self, i):
        return self.prefixes[i]

    @property
    def endpoint(self):
        return self.prefixes[-1]


def letter_order(generator_count: int) -> List[int]:
    # a < A < b < B < ...
    order = []
    for i in range(1, generator_count + 1):
        order.extend([i, -i])
    return order


def validate_word(generator_count: int, w: Iterable[int]) -> LazyWord:
    w = tuple(int(x) for x in w)
    for x in w:
        if abs(x) > generator_count:
            raise InvalidWordError(
                f"letter {x} is out of range for a group with {generator_count} generators"
            )
    return w


def parse_word(text: str, generator_count: int = None) -> LazyWord:
    """Parse a letter string over ``a A b B ... .`` ('.' is the lazy letter)."""
    out = []
    for ch in text.strip():
        if ch in " \t":
            continue
        if ch == ".":
            out.append(LAZY)
            continue
        idx = ALPHABET.find(ch.lower())
        if idx < 0:
            raise InvalidWordError(f"'{ch}' is not a letter in word '{text}'")
        out.append(idx + 1 if ch.islower() else -(idx + 1))
    if generator_count is not None:
        return validate_word(generator_count, out)
    return tuple(out)


def format_word(w: Sequence[int]) -> str:
    out = []
    for x in w:
        if x == LAZY:
            out.append(".")
        elif x > 0:
            out.append(ALPHABET[x - 1])
        else:
            out.append(ALPHABET[-x - 1].upper())
    return "".join(out)


def strip_lazy(w: Sequence[int]) -> LazyWord:
    return tuple(x for x in w if x != LAZY)


def free_reduce(w: Sequence[int]) -> LazyWord:
    stack: List[int] = []
    for x in w:
        if x == LAZY:
            continue
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def invert_word(w: Sequence[int]) -> LazyWord:
    return tuple(-x for x in reversed(w))


def commutator(x: Sequence[int], y: Sequence[int]) -> LazyWord:
    """[x, y] = x y x^-1 y^-1."""
    return tuple(x) + tuple(y) + invert_word(x) + invert_word(y)


def power(x: Sequence[int], k: int) -> LazyWord:
    if k < 0:
        return tuple(invert_word(x)) * (-k)
    return tuple(x) * k


def cyclic_reduce(w: Sequence[int]) -> Tuple[LazyWord, LazyWord]:
    """Return (u, core) with free_reduce(w) == u^-1 core u and core cyclically reduced."""
    w = list(free_reduce(w))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    core = tuple(w[i : j + 1])
    u = tuple(w[j + 1 :])
    return u, core

"""Rewriting fillers.

A ``Rewriter`` holds a word made of letters and commutator tokens and applies
rules A -> B in place. Whenever B^-1 A is not trivial in the free group the
rule must be a single relator application; the matching conjugate is looked up
and recorded as a certificate step, so every rule is checked as it is used.

If the word before a rule is x A y, then x A y = (x L x^-1) (x B y) with
L = A B^-1, so the recorded steps multiply (in order) to the original word once
the rewritten word is freely trivial.
"""
import logging
from typing import List, Sequence, Tuple, Union

from dehnlab.errors import NotALoopError, UnsupportedGroupError
from dehnlab.fill.certificate import FillingCertificate
from dehnlab.fill.free import Step, find_relator_conjugate
from dehnlab.group.catalog import GroupSpec, is_loop
from dehnlab.group.words import (
    LAZY,
    LazyWord,
    format_word,
    free_reduce,
    invert_word,
)

# a token is a letter (int) or a commutator (i, j, e) standing for [e_i, e_j]^e, i < j
Token = Union[int, Tuple[int, int, int]]

logger = logging.getLogger("fill_logger")


def return_available_fillers():
    return {
        "FreeAbelian": sort_abelian,
        "Heisenberg3": collect_class2,
        "FreeNilpotentClass2": collect_class2,
    }


def _expand_token(t: Token) -> LazyWord:
    if isinstance(t, int):
        return (t,)
    i, j, e = t
    c = (i, j, -i, -j)
    return c if e > 0 else invert_word(c)


def _inverse_token(t: Token) -> Token:
    if isinstance(t, int):
        return -t
    i, j, e = t
    return (i, j, -e)


class Rewriter:
    def __init__(self, spec: GroupSpec, word: Sequence[int]):
        self.spec = spec
        self.target = tuple(word)
        self.tokens: List[Token] = [x for x in word if x != LAZY]
        self.steps: List[Step] = []

    @staticmethod
    def expand(tokens: Sequence[Token]) -> LazyWord:
        out = []
        for t in tokens:
            out.extend(_expand_token(t))
        return tuple(out)

    def rewrite(self, pos: int, length: int, replacement: Sequence[Token]):
        old = self.tokens[pos : pos + length]
        L = free_reduce(self.expand(old) + invert_word(self.expand(replacement)))
        if L:
            found = find_relator_conjugate(L, self.spec.relators)
            if found is None:
                raise RuntimeError(
                    f"rule {old} -> {list(replacement)} is not one relator application in {self.spec.id}"
                )
            q, idx, sign = found
            prefix = self.expand(self.tokens[:pos])
            self.steps.append((free_reduce(q + invert_word(prefix)), idx, sign))
        self.tokens[pos : pos + length] = list(replacement)

    def cancels(self, i: int) -> bool:
        """Freely cancel tokens i, i+1 if they are inverse to each other."""
        if self.tokens[i] == _inverse_token(self.tokens[i + 1]):
            self.rewrite(i, 2, ())
            return True
        return False

    def certificate(self) -> FillingCertificate:
        rest = free_reduce(self.expand(self.tokens))
        if rest:
            raise NotALoopError(
                f"{format_word(self.target)} leaves {format_word(rest)} after rewriting in {self.spec.id}"
            )
        return FillingCertificate(self.spec.id, self.target, tuple(self.steps))


def sort_abelian(spec: GroupSpec, word: Sequence[int]) -> FillingCertificate:
    """Transposition sort by generator index; each swap is one commutator relator."""
    rw = Rewriter(spec, word)
    t = rw.tokens
    i = 0
    while i < len(t) - 1:
        if rw.cancels(i):
            i = max(i - 1, 0)
        elif abs(t[i]) > abs(t[i + 1]):
            rw.rewrite(i, 2, (t[i + 1], t[i]))
            i = max(i - 1, 0)
        else:
            i += 1
    return rw.certificate()


def _key(t: Token, rank: int):
    if isinstance(t, int):
        return (abs(t), 0, 0)
    return (rank + 1, t[0], t[1])


def _swap_letters(rw: Rewriter, i: int):
    # y x with gen(y) = j > gen(x) = i
    y, x = rw.tokens[i], rw.tokens[i + 1]
    lo, hi = abs(x), abs(y)
    if y > 0 and x > 0:
        # y x = [y, x] x y and [e_j, e_i] is literally c^-1
        rw.rewrite(i, 2, ((lo, hi, -1), x, y))
    elif y < 0 and x < 0:
        # y x = x y [y^-1, x^-1]
        rw.rewrite(i, 2, (x, y, (lo, hi, -1)))
    else:
        # [y, x] is a conjugate of c by one letter, one relator to straighten
        rw.rewrite(i, 2, ((lo, hi, 1), x, y))


def _swap_tokens(rw: Rewriter, i: int):
    # move token i right past token i+1 by opening the latter into letters
    right = rw.tokens[i + 1]
    letters = _expand_token(right)
    rw.rewrite(i + 1, 1, letters)
    for m in range(len(letters)):
        rw.rewrite(i + m, 2, (rw.tokens[i + m + 1], rw.tokens[i + m]))
    rw.rewrite(i, len(letters), (right,))


def collect_class2(spec: GroupSpec, word: Sequence[int]) -> FillingCertificate:
    """Collect to the normal form e_1^* ... e_k^* c_12^* ... and cancel.

    Swapping two letters introduces a commutator token; tokens are pushed to
    the right past letters at one relator each.
    """
    rank = spec.generator_count
    rw = Rewriter(spec, word)
    t = rw.tokens
    i = 0
    while i < len(t) - 1:
        if rw.cancels(i):
            i = max(i - 1, 0)
            continue
        a, b = t[i], t[i + 1]
        if _key(a, rank) <= _key(b, rank):
            i += 1
            continue
        if isinstance(a, int):
            _swap_letters(rw, i)
        elif isinstance(b, int):
            rw.rewrite(i, 2, (b, a))
        else:
            _swap_tokens(rw, i)
        i = max(i - 1, 0)
    return rw.certificate()


def fill_word(spec: GroupSpec, word: Sequence[int]) -> FillingCertificate:
    """Certificate for a loop using the rewriting filler of its group family."""
    fillers = return_available_fillers()
    try:
        filler = fillers[spec.family]
    except KeyError:
        raise UnsupportedGroupError(
            f"no filler for {spec.id} ({spec.family}), available families: {list(fillers.keys())}"
        )
    if not is_loop(spec, word):
        raise NotALoopError(f"{format_word(word)} is not a loop in {spec.id}")
    cert = filler(spec, word)
    logger.debug(f"{spec.id}: filled {format_word(word)} with area {cert.area}")
    return cert

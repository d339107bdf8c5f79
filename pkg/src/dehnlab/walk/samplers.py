import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from dehnlab.errors import SamplerExhaustedError
from dehnlab.group.catalog import GroupSpec, get_group, trace
from dehnlab.group.words import LazyWord, PathTrace, format_word
from dehnlab.information.write_info import write_lines

DEFAULT_MAX_ATTEMPTS = 1_000_000
DEFAULT_CHUNK = 256

AVAILABLE_SAMPLERS = ["auto", "rejection", "bridge", "projected"]

logger = logging.getLogger("walk_logger")


@dataclass(frozen=True)
class LoopSample:
    word: LazyWord
    group_id: str
    method: str
    seed: Optional[int] = None
    index: Optional[int] = None
    attempts: int = 1

    @property
    def trace(self) -> PathTrace:
        return trace(get_group(self.group_id), self.word)

    def __len__(self):
        return len(self.word)


def return_available_samplers() -> List[str]:
    return list(AVAILABLE_SAMPLERS)


def letter_array(spec: GroupSpec) -> np.ndarray:
    return np.array(spec.letters, dtype=np.int64)


def element_array(spec: GroupSpec) -> np.ndarray:
    return np.array([spec.letter_element(x) for x in spec.letters], dtype=np.int64)


def eval_letter_rows(spec: GroupSpec, idx: np.ndarray) -> np.ndarray:
    """Endpoints of many words given as rows of indices into ``spec.letters``."""
    idx = np.asarray(idx)
    E = element_array(spec)
    X = spec.law.identity_rows(idx.shape[0])
    for t in range(idx.shape[1]):
        X = spec.law.multiply_rows(X, E[idx[:, t]])
    return X


def sample_lazy_word(spec: GroupSpec, n: int, rng: np.random.Generator) -> LazyWord:
    if n < 0:
        raise ValueError(f"word length must be non-negative, not {n}")
    letters = letter_array(spec)
    idx = rng.integers(0, len(letters), size=n)
    return tuple(int(x) for x in letters[idx])


def sample_loop_rejection(
    spec: GroupSpec,
    n: int,
    rng: np.random.Generator,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    chunk: int = DEFAULT_CHUNK,
    seed: Optional[int] = None,
    index: Optional[int] = None,
) -> LoopSample:
    """Draw i.i.d. lazy words until one is a loop.

    Words are drawn ``chunk`` at a time and evaluated together; the first loop
    in draw order is returned, so the result only depends on the generator.
    """
    letters = letter_array(spec)
    if n == 0:
        return LoopSample((), spec.id, "rejection", seed, index, 1)
    attempts = 0
    while attempts < max_attempts:
        size = min(chunk, max_attempts - attempts)
        idx = rng.integers(0, len(letters), size=(size, n))
        X = eval_letter_rows(spec, idx)
        hits = np.flatnonzero(~X.any(axis=1))
        if len(hits):
            first = int(hits[0])
            attempts += first + 1
            word = tuple(int(x) for x in letters[idx[first]])
            return LoopSample(word, spec.id, "rejection", seed, index, attempts)
        attempts += size
    logger.warning(f"rejection sampler on {spec.id} found no loop of length {n} in {attempts} attempts")
    raise SamplerExhaustedError(
        f"no loop of length {n} on {spec.id} after {attempts} attempts",
        attempts=attempts,
    )


def sample_loops_rejection(
    spec: GroupSpec,
    n: int,
    rngs: Sequence[np.random.Generator],
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    seed: Optional[int] = None,
    start_index: int = 0,
) -> List[LoopSample]:
    return [
        sample_loop_rejection(spec, n, rng, max_attempts, seed=seed, index=start_index + i)
        for i, rng in enumerate(rngs)
    ]


def words_to_text(samples: Sequence[LoopSample], path):
    return write_lines(path, (format_word(s.word) for s in samples))

from typing import List, Optional

import numpy as np


def substream(master_seed: int, index: int, scale: Optional[int] = None) -> np.random.Generator:
    """Philox generator for sample ``index`` (of the curve point ``scale``) under ``master_seed``.

    Substreams depend only on these keys, so samples can be drawn by any number
    of workers in any order and still reproduce bit for bit.
    """
    key = (int(index),) if scale is None else (int(scale), int(index))
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=key)
    return np.random.Generator(np.random.Philox(seq))


def substreams(
    master_seed: int, start: int, count: int, scale: Optional[int] = None
) -> List[np.random.Generator]:
    return [substream(master_seed, i, scale) for i in range(start, start + count)]

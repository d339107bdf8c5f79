"""Central extensions used as lower bounds for filling area.

A loop of the base group lifts to the extension, where it evaluates to a
central element; every relator application moves that element by a bounded
amount, so its size bounds the area from below.
"""
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from dehnlab.errors import NotALoopError, UnsupportedGroupError
from dehnlab.group.catalog import GroupSpec, eval_word, get_group, is_loop
from dehnlab.group.words import format_word


@dataclass(frozen=True)
class CentralExtensionEval:
    base_id: str
    extension_id: str
    # coordinates of the extension killed by the quotient back to the base
    central_indices: Tuple[int, ...]
    distortion_degree: int

    @property
    def base(self) -> GroupSpec:
        return get_group(self.base_id)

    @property
    def extension(self) -> GroupSpec:
        return get_group(self.extension_id)


def _free_abelian_extension(spec: GroupSpec) -> CentralExtensionEval:
    d = spec.generator_count
    ext = get_group(f"fnil2-{d}")
    return CentralExtensionEval(
        base_id=spec.id,
        extension_id=ext.id,
        central_indices=tuple(range(d, ext.coordinate_arity)),
        distortion_degree=2 if d >= 2 else 0,
    )


def _heisenberg_extension(spec: GroupSpec) -> CentralExtensionEval:
    # a -> t, b -> s; Filiform4 maps onto Heisenberg3 by (v1, v2, v3, m) -> (m, v3, v2)
    return CentralExtensionEval(
        base_id=spec.id,
        extension_id="filiform4",
        central_indices=(0,),
        distortion_degree=3,
    )


def return_available_extensions() -> Dict:
    return {
        "FreeAbelian": _free_abelian_extension,
        "Heisenberg3": _heisenberg_extension,
    }


def central_extension(spec: GroupSpec) -> CentralExtensionEval:
    options = return_available_extensions()
    try:
        return options[spec.family](spec)
    except KeyError:
        raise UnsupportedGroupError(
            f"no central extension registered for {spec.id} ({spec.family}), "
            f"available families: {list(options.keys())}"
        )


def lift(ext: CentralExtensionEval, w: Sequence[int]) -> Tuple[int, ...]:
    """Value in the extension of a word over the base generators."""
    return eval_word(ext.extension, w)


def central_coordinates(ext: CentralExtensionEval, w: Sequence[int]) -> Tuple[int, ...]:
    if not is_loop(ext.base, w):
        raise NotALoopError(f"{format_word(w)} is not a loop in {ext.base_id}")
    g = lift(ext, w)
    return tuple(g[i] for i in ext.central_indices)


def centralized_area(spec: GroupSpec, w: Sequence[int]) -> int:
    """Sum of |central coordinates| of the lifted loop.

    Exact for FreeAbelian(d). For Heisenberg3 it is a lower bound up to the
    constant by which the extension can stretch distances.
    """
    ext = central_extension(spec)
    return sum(abs(c) for c in central_coordinates(ext, w))

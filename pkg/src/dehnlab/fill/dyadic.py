"""Dyadic filling of a loop by geodesic triangles.

Level i of a loop w of length n has vertices w(floor(j n / 2^i)), j = 0..2^i,
for i = 0..L with L = floor(log2 n). The polygon of level i+1 is the polygon
of level i with each edge replaced by two, and the difference is a product of
conjugated triangles. The finest polygon is stitched to w itself along arcs of
at most two letters.

With pi_j the prefix of a polygon before its edge j, a layer of triangles T_j
gives  Gamma_{i+1} = (prod_j pi_j T_j pi_j^-1) Gamma_i  in the free group, so
the certificate of w is: stitching, then layers from the finest down.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Sequence

from dehnlab.errors import NotALoopError
from dehnlab.fill.certificate import (
    FillingCertificate,
    empty_certificate,
    verify_certificate,
)
from dehnlab.fill.triangle import triangle_fill
from dehnlab.group.catalog import GroupSpec, is_loop, trace
from dehnlab.group.metric import DEFAULT_RADIUS_CAP, geodesic
from dehnlab.group.words import LazyWord, format_word, free_reduce, invert_word, strip_lazy

logger = logging.getLogger("fill_logger")


@dataclass(frozen=True)
class LocalFill:
    # 1..L for the triangle layer refining level-1 into level, L+1 for stitching
    level: int
    index: int
    certificate: FillingCertificate


def dyadic_levels(n: int) -> List[List[int]]:
    if n < 1:
        return [[0]]
    L = n.bit_length() - 1
    return [[(j * n) >> i for j in range(2 ** i + 1)] for i in range(L + 1)]


def polygon_edges(spec: GroupSpec, w: Sequence[int], level: int, radius_cap: int = DEFAULT_RADIUS_CAP):
    tr = trace(spec, w)
    idx = dyadic_levels(len(w))[level]
    return [geodesic(spec, tr[a], tr[b], radius_cap) for a, b in zip(idx, idx[1:])]


def polygon_word(spec: GroupSpec, w: Sequence[int], level: int, radius_cap: int = DEFAULT_RADIUS_CAP) -> LazyWord:
    return tuple(x for e in polygon_edges(spec, w, level, radius_cap) for x in e)


def local_fills(spec: GroupSpec, w: Sequence[int], radius_cap: int = DEFAULT_RADIUS_CAP) -> Iterator[LocalFill]:
    w = tuple(w)
    if not is_loop(spec, w):
        raise NotALoopError(f"{format_word(w)} is not a loop in {spec.id}")
    if not w:
        return
    tr = trace(spec, w)
    levels = dyadic_levels(len(w))
    L = len(levels) - 1
    for i in range(L):
        coarse, fine = levels[i], levels[i + 1]
        for j in range(len(coarse) - 1):
            a, mid, b = coarse[j], fine[2 * j + 1], coarse[j + 1]
            yield LocalFill(i + 1, j, triangle_fill(spec, tr[a], tr[mid], tr[b], radius_cap))
    finest = levels[L]
    for j, (a, b) in enumerate(zip(finest, finest[1:])):
        arc = strip_lazy(w[a:b])
        if len(arc) < 2:
            # the arc is its own geodesic
            cert = empty_certificate(spec, arc + invert_word(arc))
        else:
            mid = spec.multiply(tr[a], spec.letter_element(arc[0]))
            cert = triangle_fill(spec, tr[a], mid, tr[b], radius_cap)
        yield LocalFill(L + 1, j, cert)


def _conjugated(cert: FillingCertificate, prefix: LazyWord):
    inv = invert_word(prefix)
    return [(free_reduce(c + inv), idx, sign) for c, idx, sign in cert.steps]


def dyadic_fill(
    spec: GroupSpec,
    w: Sequence[int],
    radius_cap: int = DEFAULT_RADIUS_CAP,
    verify: bool = True,
) -> FillingCertificate:
    w = tuple(w)
    by_level = {}
    for lf in local_fills(spec, w, radius_cap):
        by_level.setdefault(lf.level, []).append(lf.certificate)
    if not by_level:
        return empty_certificate(spec, w)
    L = max(by_level) - 1
    steps = []
    for level in range(L + 1, 0, -1):
        edges = polygon_edges(spec, w, level - 1, radius_cap)
        prefix: LazyWord = ()
        for cert, edge in zip(by_level[level], edges):
            steps.extend(_conjugated(cert, prefix))
            prefix = free_reduce(prefix + edge)
    cert = FillingCertificate(spec.id, w, tuple(steps))
    if verify and not verify_certificate(spec, cert):
        logger.error(f"dyadic certificate for {format_word(w)} in {spec.id} failed verification")
        raise RuntimeError(f"dyadic certificate for a loop of length {len(w)} in {spec.id} is invalid")
    return cert


def dyadic_area(
    spec: GroupSpec,
    w: Sequence[int],
    radius_cap: int = DEFAULT_RADIUS_CAP,
    verify: bool = True,
) -> int:
    """Area of dyadic_fill without assembling the global certificate."""
    area = 0
    for lf in local_fills(spec, w, radius_cap):
        if verify and not verify_certificate(spec, lf.certificate):
            logger.error(
                f"local certificate (level {lf.level}, index {lf.index}) failed in {spec.id}"
            )
            raise RuntimeError(f"local filling at level {lf.level}, index {lf.index} is invalid")
        area += lf.certificate.area
    return area

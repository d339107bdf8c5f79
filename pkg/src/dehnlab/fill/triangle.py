from dehnlab.fill.certificate import FillingCertificate, empty_certificate
from dehnlab.fill.collect import fill_word
from dehnlab.group.catalog import GroupSpec
from dehnlab.group.metric import DEFAULT_RADIUS_CAP, geodesic
from dehnlab.group.words import LazyWord


def triangle_word(spec: GroupSpec, x, y, z, radius_cap: int = DEFAULT_RADIUS_CAP) -> LazyWord:
    """The geodesic triangle loop gamma(x,y) gamma(y,z) gamma(z,x)."""
    return (
        geodesic(spec, x, y, radius_cap)
        + geodesic(spec, y, z, radius_cap)
        + geodesic(spec, z, x, radius_cap)
    )


def triangle_fill(spec: GroupSpec, x, y, z, radius_cap: int = DEFAULT_RADIUS_CAP) -> FillingCertificate:
    x, y, z = tuple(x), tuple(y), tuple(z)
    if x == y == z:
        return empty_certificate(spec)
    return fill_word(spec, triangle_word(spec, x, y, z, radius_cap))

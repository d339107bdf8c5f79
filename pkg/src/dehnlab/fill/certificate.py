import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from dehnlab.errors import CertificateParseError, InvalidWordError
from dehnlab.fill.free import Step, expand_steps
from dehnlab.group.catalog import GroupSpec
from dehnlab.group.words import LazyWord, format_word, free_reduce, parse_word
from dehnlab.information.write_info import write_lines

logger = logging.getLogger("fill_logger")


@dataclass(frozen=True)
class FillingCertificate:
    """target == prod_k c_k^-1 r_{i_k}^{s_k} c_k in the free group (lazy letters dropped)."""

    group_id: str
    target: LazyWord
    steps: Tuple[Step, ...] = field(default_factory=tuple)

    @property
    def area(self) -> int:
        return len(self.steps)

    def __add__(self, other: "FillingCertificate") -> "FillingCertificate":
        if other.group_id != self.group_id:
            raise ValueError(f"cannot join certificates of {self.group_id} and {other.group_id}")
        return FillingCertificate(
            self.group_id, free_reduce(self.target + other.target), self.steps + other.steps
        )


def empty_certificate(spec: GroupSpec, target: Sequence[int] = ()) -> FillingCertificate:
    return FillingCertificate(spec.id, tuple(target), ())


def verify_certificate(spec: GroupSpec, cert: FillingCertificate) -> bool:
    if cert.group_id != spec.id:
        return False
    for c, idx, sign in cert.steps:
        if not 0 <= idx < len(spec.relators) or sign not in (1, -1):
            return False
        if any(x == 0 or abs(x) > spec.generator_count for x in c):
            return False
    ok = expand_steps(cert.steps, spec.relators) == free_reduce(cert.target)
    if not ok:
        logger.warning(
            f"certificate of area {cert.area} does not fill {format_word(cert.target)} in {spec.id}"
        )
    return ok


def certificate_to_lines(cert: FillingCertificate) -> List[str]:
    return [f"{format_word(c)}\t{idx}\t{sign:+d}" for c, idx, sign in cert.steps]


def certificate_to_text(cert: FillingCertificate) -> str:
    return "".join(f"{l}\n" for l in certificate_to_lines(cert))


def write_certificate(cert: FillingCertificate, path):
    return write_lines(path, certificate_to_lines(cert))


def certificate_from_text(spec: GroupSpec, text: str, target: Sequence[int]) -> FillingCertificate:
    """Parse "conjugator TAB relator_index TAB sign" lines (relators indexed from 0)."""
    steps = []
    for n, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 3:
            raise CertificateParseError(f"line {n}: expected 3 tab-separated fields, found {len(parts)}")
        conj, idx, sign = parts
        try:
            c = parse_word(conj, spec.generator_count)
        except InvalidWordError as e:
            raise CertificateParseError(f"line {n}: {e}") from e
        if 0 in c:
            raise CertificateParseError(f"line {n}: conjugator may not contain lazy letters")
        try:
            idx, sign = int(idx), int(sign)
        except ValueError as e:
            raise CertificateParseError(f"line {n}: relator index and sign must be integers") from e
        if not 0 <= idx < len(spec.relators):
            raise CertificateParseError(
                f"line {n}: relator index {idx} outside 0..{len(spec.relators) - 1}"
            )
        if sign not in (1, -1):
            raise CertificateParseError(f"line {n}: sign must be +1 or -1, not {sign}")
        steps.append((c, idx, sign))
    return FillingCertificate(spec.id, tuple(target), tuple(steps))

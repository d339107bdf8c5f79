import logging
from pathlib import Path

from dehnlab.errors import CertificateParseError, InvalidWordError, UnsupportedGroupError
from dehnlab.fill.certificate import certificate_from_text, verify_certificate
from dehnlab.group.catalog import get_group
from dehnlab.group.words import parse_word
from dehnlab.run.run_experiment import EXIT_CONFIG, EXIT_FAILED, EXIT_OK

logger = logging.getLogger("run_logger")


def verify(certificate_file, group: str, word: str) -> int:
    """0 if the certificate fills ``word`` in ``group``, 1 if not, 2 if the inputs do not parse."""
    try:
        spec = get_group(group)
        w = parse_word(word, spec.generator_count)
        text = Path(certificate_file).read_text()
        cert = certificate_from_text(spec, text, w)
    except (UnsupportedGroupError, InvalidWordError, CertificateParseError, OSError) as e:
        logger.error(f"{certificate_file}: {e}")
        print(f"error: {e}")
        return EXIT_CONFIG
    if verify_certificate(spec, cert):
        print(f"ok: area {cert.area} certificate fills {word} in {spec.id}")
        return EXIT_OK
    print(f"failed: certificate does not fill {word} in {spec.id}")
    return EXIT_FAILED

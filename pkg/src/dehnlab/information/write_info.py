import csv
import io
import json
import logging
import os
import pathlib
import tempfile
from typing import Any, Dict, Iterable, Optional, Sequence

logger = logging.getLogger("run_logger")


def _atomic_write_text(path, text: str) -> pathlib.Path:
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.info(f"wrote {path}")
    return path


def write_json(path, data: Dict[str, Any]) -> pathlib.Path:
    return _atomic_write_text(path, json.dumps(data, indent=2, sort_keys=True, default=str) + "\n")


def write_csv(
    path, header: Sequence[str], rows: Iterable[Sequence[Any]], meta: Optional[Dict[str, Any]] = None
) -> pathlib.Path:
    """Rows under ``header``, preceded by one "# key: value" line per ``meta`` entry."""
    buf = io.StringIO()
    for k, v in (meta or {}).items():
        buf.write(f"# {k}: {v}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
    return _atomic_write_text(path, buf.getvalue())


def write_lines(path, lines: Iterable[str]) -> pathlib.Path:
    return _atomic_write_text(path, "".join(f"{l}\n" for l in lines))


def write_result_record(out_dir, record: Dict[str, Any]) -> pathlib.Path:
    return write_json(pathlib.Path(out_dir).joinpath("result.json"), record)

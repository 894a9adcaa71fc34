"""Canonical line-oriented record format.

Every durable file in the system (registry bootstrap, event log, snapshots,
command journal, exports) is UTF-8 text with one canonical JSON record per
line. Canonical means sorted keys and no whitespace, so identical data always
produces identical bytes. Checksummed files end with a ``#sha256=<hex>`` line
computed over every byte before it.

Timestamps are RFC-3339 UTC; periods are ``YYYY-MM`` (month) or ``YYYY``
(year); dates are ``YYYY-MM-DD``.
"""
from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
from datetime import date, datetime, timedelta, timezone
from pathlib import Path

from .errors import BadChecksum, BadPeriod

CHECKSUM_PREFIX = "#sha256="

_MONTH_RE = re.compile(r"^\d{4}-(0[1-9]|1[0-2])$")
_YEAR_RE = re.compile(r"^\d{4}$")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def canonical_line(obj) -> str:
    return canonical_json(obj) + "\n"


def dump_canonical(obj) -> bytes:
    """Canonical single-document serialization, used for exports and ETags."""
    return (canonical_json(obj) + "\n").encode("utf-8")


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


# -- timestamps --------------------------------------------------------------

def parse_timestamp(value: str) -> datetime:
    """Parse an RFC-3339 UTC timestamp. Raises ValueError on anything else."""
    if not isinstance(value, str):
        raise ValueError("timestamp must be a string")
    raw = value.strip()
    if raw.endswith("Z"):
        raw = raw[:-1] + "+00:00"
    dt = datetime.fromisoformat(raw)
    if dt.tzinfo is None:
        raise ValueError(f"timestamp {value!r} lacks a timezone")
    return dt.astimezone(timezone.utc)


def format_timestamp(dt: datetime) -> str:
    dt = dt.astimezone(timezone.utc)
    base = dt.strftime("%Y-%m-%dT%H:%M:%S")
    if dt.microsecond:
        base += ".%06d" % dt.microsecond
    return base + "Z"


def parse_date(value: str) -> date:
    return date.fromisoformat(value)


# -- periods -----------------------------------------------------------------

def is_month_period(period: str) -> bool:
    return bool(_MONTH_RE.match(period))


def is_year_period(period: str) -> bool:
    return bool(_YEAR_RE.match(period))


def validate_period(period: str) -> str:
    if not (is_month_period(period) or is_year_period(period)):
        raise BadPeriod(f"bad period {period!r}: expected YYYY-MM or YYYY")
    return period


def year_of_period(period: str) -> str:
    return period[:4]


def months_of_year(year: str) -> list[str]:
    return [f"{year}-{m:02d}" for m in range(1, 13)]


def period_start(period: str) -> date:
    if is_year_period(period):
        return date(int(period), 1, 1)
    if is_month_period(period):
        return date(int(period[:4]), int(period[5:7]), 1)
    raise BadPeriod(f"bad period {period!r}")


def period_end(period: str) -> date:
    """Last calendar day covered by the period."""
    if is_year_period(period):
        return date(int(period), 12, 31)
    if is_month_period(period):
        y, m = int(period[:4]), int(period[5:7])
        if m == 12:
            return date(y, 12, 31)
        return date(y, m + 1, 1) - timedelta(days=1)
    raise BadPeriod(f"bad period {period!r}")


def period_contains(period: str, when: datetime) -> bool:
    d = when.astimezone(timezone.utc).date()
    return period_start(period) <= d <= period_end(period)


def month_of(when: datetime) -> str:
    d = when.astimezone(timezone.utc).date()
    return f"{d.year:04d}-{d.month:02d}"


# -- checksummed files -------------------------------------------------------

def seal_lines(lines: list[str]) -> str:
    """Append the trailing checksum line to a list of record lines."""
    body = "".join(lines)
    digest = sha256_hex(body.encode("utf-8"))
    return body + CHECKSUM_PREFIX + digest + "\n"


def split_sealed(text: str) -> tuple[list[str], int]:
    """Verify the trailing checksum and return (record lines, checksum offset).

    Raises BadChecksum when the checksum line is missing or wrong.
    """
    lines = text.splitlines(keepends=True)
    if not lines or not lines[-1].startswith(CHECKSUM_PREFIX):
        raise BadChecksum("missing trailing checksum line")
    body = "".join(lines[:-1])
    offset = len(body.encode("utf-8"))
    expected = lines[-1][len(CHECKSUM_PREFIX):].strip()
    actual = sha256_hex(body.encode("utf-8"))
    if actual != expected:
        raise BadChecksum(f"checksum mismatch: file says {expected}, content is {actual}")
    return lines[:-1], offset


def write_atomic(path: Path, data: bytes) -> None:
    """Write via a temp file and rename, so a failed write leaves no partial file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name + ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def append_line(path: Path, line: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(line)
        fh.flush()


def read_lines(path: Path) -> list[str]:
    if not path.exists():
        return []
    return path.read_text(encoding="utf-8").splitlines()


def parse_record_line(line: str):
    return json.loads(line)

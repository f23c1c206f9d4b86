"""Access to the bundled golden data files.

Golden files hold independently tabulated values (residue lists, matrix
bit patterns, link-family coefficients) that the library is checked
against. The directory can be overridden with the OVA360_GOLDEN
environment variable or per call; the default is the packaged ``data/``
directory.
"""

from __future__ import annotations

import csv
import os
from importlib import resources
from pathlib import Path

from .errors import GoldenDataError

_ENV_VAR = "OVA360_GOLDEN"


def golden_dir(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get(_ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("ova360") / "data"))


def _read_text(name: str, override=None) -> str:
    path = golden_dir(override) / name
    try:
        return path.read_text()
    except OSError as exc:
        raise GoldenDataError(f"cannot read golden file {path}: {exc}") from exc


def load_int_lines(name: str, override=None) -> tuple[int, ...]:
    """Read one integer per line. Duplicates and order are preserved."""
    out = []
    for ln in _read_text(name, override).splitlines():
        ln = ln.strip()
        if not ln:
            continue
        try:
            out.append(int(ln))
        except ValueError as exc:
            raise GoldenDataError(f"{name}: bad line {ln!r}") from exc
    return tuple(out)


def load_bit_rows(name: str, override=None) -> tuple[tuple[int, ...], ...]:
    """Read a 0/1 matrix stored as one string of bits per line."""
    rows = []
    for ln in _read_text(name, override).splitlines():
        ln = ln.strip()
        if not ln:
            continue
        if set(ln) - {"0", "1"}:
            raise GoldenDataError(f"{name}: bad bit row {ln!r}")
        rows.append(tuple(int(c) for c in ln))
    if len({len(r) for r in rows}) > 1:
        raise GoldenDataError(f"{name}: ragged rows")
    return tuple(rows)


def load_pairs(name: str, override=None) -> tuple[tuple[int, int], ...]:
    """Read comma-separated integer pairs, one per line."""
    out = []
    for ln in _read_text(name, override).splitlines():
        ln = ln.strip()
        if not ln:
            continue
        try:
            a, b = ln.split(",")
            out.append((int(a), int(b)))
        except ValueError as exc:
            raise GoldenDataError(f"{name}: bad pair {ln!r}") from exc
    return tuple(out)


def load_csv_rows(name: str, override=None) -> list[dict[str, str]]:
    text = _read_text(name, override)
    return list(csv.DictReader(text.splitlines()))


def data_version(override=None) -> str:
    return _read_text("VERSION", override).strip()

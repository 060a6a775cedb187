"""Append-only JSON-lines persistence for memo tables.

Line 1 is a header carrying the convention fingerprint; every later line is
one memo entry.  A file written under different conventions is refused.
"""
from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Optional

from .errors import FingerprintMismatch
from .ratfield import from_json, to_json
from .recursion import DEFAULT_CONVENTIONS, Conventions, MemoTable
from .symmetric import Permutation, State, Theory

log = logging.getLogger(__name__)

ENV_VAR = "TORUSHOM_CACHE"
FORMAT = "torushom-memo"
VERSION = 1


def default_cache_path() -> Optional[Path]:
    value = os.environ.get(ENV_VAR)
    return Path(value) if value else None


def _header(conv: Conventions) -> dict:
    return {"format": FORMAT, "version": VERSION, "fingerprint": conv.fingerprint()}


def _check_header(line: str, conv: Conventions, path: Path) -> None:
    try:
        header = json.loads(line)
    except json.JSONDecodeError as exc:
        raise FingerprintMismatch(f"{path}: unreadable header line") from exc
    if not isinstance(header, dict) or header.get("format") != FORMAT:
        raise FingerprintMismatch(f"{path}: not a memo cache file")
    if header.get("version") != VERSION or header.get("fingerprint") != conv.fingerprint():
        raise FingerprintMismatch(
            f"{path}: written with fingerprint {header.get('fingerprint')!r}, "
            f"engine has {conv.fingerprint()!r}"
        )


def _record(key: tuple, value) -> str:
    theory, v, w, images = key
    return json.dumps({"theory": theory, "v": v, "w": w, "sigma": ",".join(map(str, images)),
                       "value": to_json(value)}, sort_keys=True)


def _parse_record(line: str):
    obj = json.loads(line)
    s = State(obj["v"], obj["w"], Permutation.parse(obj["sigma"]), Theory(obj["theory"]))
    return s.key(), from_json(obj["value"])


def cache_load(path, conventions: Conventions = DEFAULT_CONVENTIONS,
               memo: Optional[MemoTable] = None) -> MemoTable:
    """Read ``path`` into ``memo`` (a fresh table by default).

    A missing or empty file yields an empty table.  Corrupt entry lines are
    skipped with a warning.
    """
    path = Path(path)
    memo = memo if memo is not None else MemoTable(conventions)
    if not path.exists():
        return memo
    with path.open(encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].strip():
        return memo
    _check_header(lines[0], conventions, path)
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            key, value = _parse_record(line)
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("%s:%d: skipping corrupt cache entry (%s)", path, lineno, exc)
            continue
        memo.insert(key, value)
    return memo


def _existing_keys(path: Path) -> set:
    keys = set()
    with path.open(encoding="utf-8") as fh:
        next(fh, None)
        for line in fh:
            try:
                obj = json.loads(line)
                keys.add((obj["theory"], obj["v"], obj["w"],
                          Permutation.parse(obj["sigma"]).images))
            except (ValueError, KeyError, TypeError):
                continue
    return keys


def cache_store(memo: MemoTable, path) -> int:
    """Append entries of ``memo`` that the file lacks; returns how many were written."""
    path = Path(path)
    conv = memo.conventions
    fresh = not path.exists() or path.stat().st_size == 0
    if fresh:
        path.parent.mkdir(parents=True, exist_ok=True)
        known: set = set()
    else:
        with path.open(encoding="utf-8") as fh:
            _check_header(fh.readline(), conv, path)
        known = _existing_keys(path)
    written = 0
    with path.open("a", encoding="utf-8") as fh:
        if fresh:
            fh.write(json.dumps(_header(conv), sort_keys=True) + "\n")
        for key, value in sorted(memo.items(), key=lambda kv: kv[0]):
            if key in known:
                continue
            fh.write(_record(key, value) + "\n")
            written += 1
    return written


def cache_info(path) -> dict:
    path = Path(path)
    info = {"path": str(path), "exists": path.exists(), "entries": 0, "fingerprint": None,
            "engine_fingerprint": DEFAULT_CONVENTIONS.fingerprint()}
    if not path.exists():
        return info
    with path.open(encoding="utf-8") as fh:
        first = fh.readline()
        try:
            info["fingerprint"] = json.loads(first).get("fingerprint") if first.strip() else None
        except (json.JSONDecodeError, AttributeError):
            info["fingerprint"] = "unreadable"
        info["entries"] = sum(1 for line in fh if line.strip())
    info["compatible"] = info["fingerprint"] in (None, info["engine_fingerprint"])
    return info

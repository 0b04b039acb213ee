"""Atomic, lock-protected output files.

Writers take ``<path>.lock`` through filelock, write ``<path>.<pid>.tmp``,
fsync it and ``os.replace`` it over the target, so readers never see a
partial render or report.
"""
from typing import Any
import json
import logging
import os

from filelock import FileLock, Timeout

from .errors import OutputBusy

logger = logging.getLogger(__name__)

DEFAULT_LOCK_TIMEOUT = 10.0


def atomic_write_bytes(path: str, data: bytes, lock_timeout: float = DEFAULT_LOCK_TIMEOUT) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    lock_path = path + ".lock"
    tmp = f"{path}.{os.getpid()}.tmp"
    try:
        logger.debug("Acquiring filelock for write: %s", lock_path)
        with FileLock(lock_path, timeout=lock_timeout):
            with open(tmp, "wb") as f:
                f.write(data)
                f.flush()
                os.fsync(f.fileno())
            os.replace(tmp, path)
    except Timeout:
        logger.warning("Could not acquire file lock for writing %s", path)
        raise OutputBusy(path, retry_after=lock_timeout)
    finally:
        if os.path.exists(tmp):
            os.remove(tmp)


def atomic_write_text(path: str, text: str, lock_timeout: float = DEFAULT_LOCK_TIMEOUT) -> None:
    atomic_write_bytes(path, text.encode("utf-8"), lock_timeout)


def atomic_write_json(path: str, data: Any, lock_timeout: float = DEFAULT_LOCK_TIMEOUT) -> None:
    atomic_write_text(path, json.dumps(data, indent=2) + "\n", lock_timeout)


def read_json(path: str, lock_timeout: float = DEFAULT_LOCK_TIMEOUT) -> Any:
    try:
        with FileLock(path + ".lock", timeout=lock_timeout):
            with open(path, "r", encoding="utf-8") as f:
                return json.load(f)
    except Timeout:
        raise OutputBusy(path, retry_after=lock_timeout)

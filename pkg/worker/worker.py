"""Redis queue worker for classify/green/render/verify jobs.

Jobs are JSON ``{"id": ..., "payload": {"kind": ..., ...}}`` pushed onto the
``tasks`` list. Results land at ``job:<id>``. A job whose output file is
locked by another writer is parked in the ``delayed_jobs`` sorted set and
re-queued once its retry time has passed.
"""
from datetime import datetime, timezone
from typing import Any, Callable, Dict, Optional
import json
import logging
import os
import time

import redis

from matjul.classify import classify_matrix
from matjul.config import Settings, load_settings
from matjul.errors import OutputBusy
from matjul.green import green_direct, green_matrix
from matjul.matrix import Mat2
from matjul.render import render, write_render
from matjul.scalar import Polynomial
from matjul.slices import job_from_dict
from matjul.storage import atomic_write_text
from matjul.textio import matrix_from_json, parse_matrix, parse_poly, poly_from_json
from matjul.verify import verify

logger = logging.getLogger("matjul.worker")

DEFAULT_RETRY_AFTER = 60


def _now() -> str:
    return datetime.now(timezone.utc).isoformat().replace("+00:00", "Z")


def _poly(value: Any) -> Polynomial:
    return parse_poly(value) if isinstance(value, str) else poly_from_json(value)


def _matrix(value: Any) -> Mat2:
    return parse_matrix(value) if isinstance(value, str) else matrix_from_json(value)


def _classify(payload: Dict[str, Any], settings: Settings) -> Dict[str, Any]:
    return classify_matrix(_poly(payload["poly"]), _matrix(payload["matrix"]), settings.params).to_dict()


def _green(payload: Dict[str, Any], settings: Settings) -> Dict[str, Any]:
    p, m = _poly(payload["poly"]), _matrix(payload["matrix"])
    if payload.get("direct") is not None:
        return green_direct(p, m, int(payload["direct"])).to_dict()
    return green_matrix(p, m, int(payload.get("budget", settings.budget))).to_dict()


def _render(payload: Dict[str, Any], settings: Settings) -> Dict[str, Any]:
    spec = dict(payload.get("slice") or {})
    for key in ("poly", "quantity", "format", "budget", "out"):
        if key in payload:
            spec[key] = payload[key]
    job = job_from_dict(spec, params=settings.params)
    result = render(job, jobs=int(payload.get("jobs", settings.jobs)))
    path = write_render(job, result)
    return {"out": path, "shape": list(result.shape), "elapsed": result.elapsed}


def _verify(payload: Dict[str, Any], settings: Settings) -> Dict[str, Any]:
    suites = payload.get("suite", "all")
    if isinstance(suites, str):
        suites = [suites]
    polys = [_poly(payload["poly"])] if payload.get("poly") is not None else None
    report = verify(suites, seed=int(payload.get("seed", 0)),
                    count=int(payload.get("count", settings.verify_count)), polys=polys,
                    jobs=int(payload.get("jobs", settings.jobs)))
    if payload.get("out"):
        atomic_write_text(payload["out"], report.to_csv())
    return report.to_dict()


HANDLERS: Dict[str, Callable[[Dict[str, Any], Settings], Dict[str, Any]]] = {
    "classify": _classify,
    "green": _green,
    "render": _render,
    "verify": _verify,
}


def process_job(job: dict, settings: Optional[Settings] = None) -> dict:
    job_id = job.get("id")
    payload = job.get("payload", {})
    settings = settings or load_settings()
    try:
        kind = payload.get("kind")
        if kind not in HANDLERS:
            raise ValueError(f"unknown job kind {kind!r}")
        response = HANDLERS[kind](payload, settings)
        return {"id": job_id, "kind": kind, "response": response, "finished_at": _now()}
    except OutputBusy:
        # run_once defers the job
        raise
    except Exception as e:
        logger.exception("job %s failed", job_id)
        return {"id": job_id, "error": str(e), "finished_at": _now()}


def _connect() -> redis.Redis:
    host = os.getenv("REDIS_HOST", "redis")
    port = int(os.getenv("REDIS_PORT", 6379))
    return redis.Redis(host=host, port=port, db=0)


def promote_due(r: redis.Redis, now: Optional[float] = None) -> int:
    """Move delayed jobs whose retry time has passed back onto ``tasks``."""
    now = time.time() if now is None else now
    moved = 0
    try:
        for member in r.zrangebyscore("delayed_jobs", 0, now):
            if r.zrem("delayed_jobs", member):
                r.rpush("tasks", member)
                moved += 1
    except redis.RedisError:
        logger.warning("could not promote delayed jobs", exc_info=True)
    return moved


def run_once(r: Optional[redis.Redis] = None, blpop_timeout: int = 5, settings: Optional[Settings] = None,
             process_job_fn: Optional[Callable[[dict], dict]] = None) -> bool:
    """Run one iteration of the worker loop.

    Returns True if a job was processed or deferred, False if the queue was empty.
    """
    if r is None:
        r = _connect()
    promote_due(r)

    item = r.blpop("tasks", timeout=blpop_timeout)
    if not item:
        return False

    _, raw = item
    raw_decoded = raw.decode() if isinstance(raw, (bytes, bytearray)) else raw
    job = json.loads(raw_decoded)
    job_id = job.get("id")
    logger.info("processing job %s", job_id)
    try:
        if process_job_fn is not None:
            result = process_job_fn(job)
        else:
            result = process_job(job, settings)
        r.set(f"job:{job_id}", json.dumps(result))
        logger.info("job %s completed", job_id)
    except OutputBusy as busy:
        retry_after = busy.retry_after if (busy.retry_after and busy.retry_after > 0) else DEFAULT_RETRY_AFTER
        retry_at = time.time() + retry_after
        r.zadd("delayed_jobs", {raw_decoded: retry_at})
        r.set(f"job:{job_id}", json.dumps({"id": job_id, "deferred": True, "retry_after": retry_after,
                                           "scheduled_at": retry_at}))
        logger.warning("job %s deferred for %s seconds: %s is locked", job_id, retry_after, busy.path)
    return True


def main() -> None:
    settings = load_settings()
    logging.basicConfig(level=settings.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    r = _connect()
    logger.info("worker started, waiting for tasks")
    while True:
        run_once(r, settings=settings)


if __name__ == "__main__":
    main()

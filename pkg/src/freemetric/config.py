"""Safety limits and seed derivation.

Limits can be overridden through the ``FREEMETRIC_LIMITS`` environment
variable, e.g. ``FREEMETRIC_LIMITS="ball_radius=10,dp_length=1024"``.
"""
from __future__ import annotations

import dataclasses
import hashlib
import os

from .errors import LimitExceeded

ENV_VAR = "FREEMETRIC_LIMITS"


@dataclasses.dataclass(frozen=True)
class Limits:
    # ball_radius is measured for rank 2; other ranks are capped at the same ball size
    ball_radius: int = 12
    dp_length: int = 512
    oracle_length: int = 12
    walk_exact: int = 20

    def replace(self, **changes) -> "Limits":
        return dataclasses.replace(self, **changes)


def parse_limits(text: str, base: Limits | None = None) -> Limits:
    base = base or Limits()
    text = text.strip()
    if not text:
        return base
    names = {f.name for f in dataclasses.fields(Limits)}
    changes = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in names:
            raise LimitExceeded(f"bad limit specification {item!r}")
        try:
            changes[key] = int(value)
        except ValueError:
            raise LimitExceeded(f"limit {key} must be an integer, got {value!r}") from None
        if changes[key] < 0:
            raise LimitExceeded(f"limit {key} must be non-negative")
    return base.replace(**changes)


def limits_from_env(environ=None) -> Limits:
    environ = os.environ if environ is None else environ
    return parse_limits(environ.get(ENV_VAR, ""))


_limits = limits_from_env()


def get_limits() -> Limits:
    return _limits


def set_limits(limits: Limits) -> Limits:
    """Install new process-wide limits, returning the previous ones."""
    global _limits
    previous, _limits = _limits, limits
    return previous


def derive_seed(seed: int, *keys) -> int:
    """Counter-style child seed: a stable 64-bit hash of ``seed`` and ``keys``."""
    payload = ":".join([str(int(seed))] + [str(k) for k in keys]).encode()
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")

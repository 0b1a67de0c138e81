"""Global configuration, in the style of ``sklearn.set_config``.

``verify`` turns every assertion-style postcondition on exhaustively.  With
``verify`` off, postconditions are still checked on a small deterministic
sample (``sample_size`` members drawn with ``seed``) so that release runs
keep some self-checking at negligible cost.
"""

import random
import threading
from contextlib import contextmanager

_DEFAULTS = {
    "verify": False,
    "sample_size": 4,
    "seed": 0,
    "max_splits_brute": 24,
    "max_splits": 64,
    "max_path_delta": 10,
}

_local = threading.local()


def _config():
    if not hasattr(_local, "config"):
        _local.config = dict(_DEFAULTS)
    return _local.config


def get_config():
    """Return a copy of the current (thread-local) configuration."""
    return dict(_config())


def set_config(**kwargs):
    cfg = _config()
    for key, value in kwargs.items():
        if key not in _DEFAULTS:
            raise TypeError(f"unknown configuration key {key!r}")
        if value is not None:
            cfg[key] = value


@contextmanager
def config_context(**kwargs):
    """Temporarily change configuration, restoring it on exit."""
    old = get_config()
    set_config(**kwargs)
    try:
        yield
    finally:
        _config().clear()
        _config().update(old)


def checked(items):
    """Items a postcondition should be checked on under the current profile.

    All of them in verify mode, otherwise a reproducible sample.
    """
    items = list(items)
    cfg = _config()
    if cfg["verify"] or len(items) <= cfg["sample_size"]:
        return items
    rng = random.Random(cfg["seed"])
    return rng.sample(items, cfg["sample_size"])

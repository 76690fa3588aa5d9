"""Enumeration caps shared by the exponential routines."""

import os

DEFAULT_CAP = 10**6


def default_cap():
    """Return the enumeration cap, honouring ``ARRANGELAB_CAP`` when set."""
    raw = os.environ.get("ARRANGELAB_CAP")
    if raw is None or raw.strip() == "":
        return DEFAULT_CAP
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_CAP
    return value if value > 0 else DEFAULT_CAP

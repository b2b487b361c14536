import os

DEFAULT_THRESHOLD = 10**6
THRESHOLD_ENV = "MINCODES_THRESHOLD"


def default_threshold() -> int:
    """Enumeration cap, overridable through ``MINCODES_THRESHOLD``."""
    raw = os.environ.get(THRESHOLD_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_THRESHOLD
    value = int(raw)
    if value < 1:
        raise ValueError(f"{THRESHOLD_ENV} must be >= 1, got {value}")
    return value

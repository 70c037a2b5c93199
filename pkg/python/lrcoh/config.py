import os
from typing import Optional, Tuple

from dotenv import load_dotenv

load_dotenv()

# ============================================================
#  ENV DEFAULTS
# ============================================================

DEFAULT_WINDOW = os.getenv("LRCOH_WINDOW", "-10:10")
DEFAULT_MAX_N = int(os.getenv("LRCOH_MAX_N", "2"))
LOG_LEVEL = os.getenv("LRCOH_LOG_LEVEL", "WARNING")


def parse_window(text: str) -> Tuple[int, int]:
    """Parse ``LO:HI`` into an inclusive integer pair."""
    try:
        lo, hi = text.split(":")
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise ValueError(f"degree window must look like LO:HI, got {text!r}")
    if lo_i > hi_i:
        raise ValueError(f"empty degree window {text!r}")
    return lo_i, hi_i


def bound_override() -> Optional[int]:
    raw = os.getenv("LRCOH_BOUND")
    return int(raw) if raw else None


def default_bound(d: int, weights: Tuple[int, ...]) -> int:
    """2*d/min(d_i), counted in steps of min(d_i): 2*d degree units."""
    override = bound_override()
    if override is not None:
        return override
    steps = (2 * d) // min(weights)
    return steps * min(weights)

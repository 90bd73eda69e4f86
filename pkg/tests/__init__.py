from textwrap import dedent

import numpy as np


def dedent_text(s: str):
    return dedent(s).strip()


def max_diff(a, b) -> float:
    """Largest absolute componentwise difference of two array-likes."""
    return float(np.max(np.abs(np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64))))

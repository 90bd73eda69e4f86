import numpy as np


def bernoulli_geodesic(x: float, y: float):
    """Exact (v0, action) of the Fisher-Rao geodesic on (0, 1) with p = sin^2(theta)."""
    th0, th1 = np.arcsin(np.sqrt(x)), np.arcsin(np.sqrt(y))
    omega = th1 - th0
    return np.sin(2.0 * th0) * omega, 2.0 * omega**2

"""Polynomial extrapolation of sampled limits (Richardson/Neville style)."""

from __future__ import annotations

from typing import Sequence


def extrapolate_to_zero(
    samples: Sequence[tuple[float, complex]],
) -> tuple[complex, float]:
    """Extrapolate ``f(h) -> f(0)`` from samples ``(h, f(h))`` with distinct h > 0.

    Uses the Neville tableau evaluated at h = 0, which reduces to classical
    Richardson extrapolation when the nodes form a geometric ladder.  Returns
    the extrapolated value together with the magnitude of the last tableau
    correction, a crude error indicator.
    """
    if not samples:
        raise ValueError("extrapolation requires at least one sample")
    xs = [float(h) for h, _ in samples]
    vals: list[complex] = [complex(v) for _, v in samples]
    if len(set(xs)) != len(xs):
        raise ValueError("extrapolation nodes must be distinct")
    if len(vals) == 1:
        return vals[0], float("nan")
    previous = vals[0]
    n = len(vals)
    for k in range(1, n):
        previous = vals[0]
        for i in range(n - k):
            xi, xik = xs[i], xs[i + k]
            vals[i] = (-xik * vals[i] + xi * vals[i + 1]) / (xi - xik)
    return vals[0], abs(vals[0] - previous)

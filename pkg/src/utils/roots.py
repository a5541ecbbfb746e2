"""Bracketed bisection for monotone functions."""

from typing import Callable


def bisect_decreasing(
    f: Callable[[float], float],
    lo: float = 0.0,
    hi: float = 1.0,
    iterations: int = 64,
) -> float:
    """
    Root of a strictly decreasing function on [lo, hi].

    Assumes f(lo) >= 0 >= f(hi). Runs a fixed number of halvings so the
    result is reproducible bit for bit.
    """
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    # the endpoint with the smaller residual
    return lo if abs(f(lo)) <= abs(f(hi)) else hi

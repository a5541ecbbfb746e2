"""Lyapunov exponents and the cylinder ordering set B.

sigma is in B iff some p in the open simplex orders the exponents
chi_n(p) = -sum_i p_i log lambda_i^(n) strictly along sigma. Membership is
decided with a max-slack linear program and, when positive, re-proved with a
rational p at high precision.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np
from scipy.optimize import linprog

from ..core.sponge import Ordering, SpongeSystem, dominates, map_ordering
from ..errors import BorderlineOrdering, PreconditionViolated
from .certificates import CertificateKind, OrderingCertificate, strict_chain_holds

logger = logging.getLogger(__name__)

# limit_denominator bounds tried, coarsest first, when rationalising an LP point
DENOMINATOR_LADDER = tuple(10 ** k for k in range(1, 13))


@dataclass(frozen=True)
class LyapunovProfile:
    """chi_1(p), ..., chi_d(p) for a probability vector p."""
    weights: tuple
    chi: tuple

    def ordering(self) -> Optional[Ordering]:
        """The sigma with increasing chi along it, None on a tie."""
        if len(set(self.chi)) < len(self.chi):
            return None
        return Ordering(tuple(sorted(range(1, len(self.chi) + 1), key=lambda c: self.chi[c - 1])))


def lyapunov_profile(S: SpongeSystem, p) -> LyapunovProfile:
    p_arr = np.asarray([float(w) for w in p], dtype=float)
    chi = -(p_arr @ S.log_ratios)
    return LyapunovProfile(tuple(p), tuple(float(c) for c in chi))


def _chain_rows(S: SpongeSystem, sigma: Ordering) -> np.ndarray:
    """Row k holds chi_{sigma_{k+1}} - chi_{sigma_k} as a linear form in p."""
    coef = -S.log_ratios
    return np.array([coef[:, sigma[k + 1] - 1] - coef[:, sigma[k] - 1] for k in range(1, S.d)])


def _blocked_by_domination(S: SpongeSystem, sigma: Ordering) -> bool:
    """y dominating x forces chi_y <= chi_x, so x cannot come strictly before y."""
    for a in range(1, S.d):
        for b in range(a + 1, S.d + 1):
            if dominates(S, sigma[b], sigma[a]):
                return True
    return False


def _rational_witness(S: SpongeSystem, sigma: Ordering, rows: np.ndarray, p_star: np.ndarray,
                      slack: float, precision: int) -> Optional[tuple]:
    N = S.N
    uniform = np.full(N, 1.0 / N)
    uniform_worst = float(np.max(-(rows @ uniform)))
    # pull toward the centre so every coordinate is bounded away from 0
    spread = max(uniform_worst, 0.0)
    eta = 0.5 if spread == 0 else slack / (2 * (slack + spread))
    mixed = (1 - eta) * p_star + eta * uniform

    for q in DENOMINATOR_LADDER:
        approx = [Fraction(float(x)).limit_denominator(q) for x in mixed]
        approx = [f if f > 0 else Fraction(1, q) for f in approx]
        total = sum(approx)
        candidate = tuple(f / total for f in approx)
        if strict_chain_holds(S, sigma, candidate, precision):
            return candidate
    return None


def b_membership(S: SpongeSystem, sigma: Ordering, tau: float = 1e-9,
                 precision: int = 40) -> Optional[OrderingCertificate]:
    """
    Decide sigma in B.

    Returns:
        a cylinder-strict certificate with rational p, or None if sigma is not in B

    Raises:
        BorderlineOrdering: the optimal slack lies in [-tau, tau], or no
            rational point near the LP optimum survives exact verification
    """
    if len(sigma) != S.d:
        raise PreconditionViolated(f"ordering {sigma} has length {len(sigma)}, system has d={S.d}")

    if S.d == 1:
        uniform = tuple(Fraction(1, S.N) for _ in S.indices)
        return OrderingCertificate(sigma, CertificateKind.CYLINDER_STRICT, weights=uniform, slack=math.inf)

    if _blocked_by_domination(S, sigma):
        logger.debug(f"{sigma} excluded from B by domination")
        return None

    N = S.N
    rows = _chain_rows(S, sigma)
    # variables (p_1..p_N, t): maximise t subject to rows @ p >= t
    c = np.zeros(N + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-rows, np.ones((rows.shape[0], 1))])
    b_ub = np.zeros(rows.shape[0])
    A_eq = np.hstack([np.ones((1, N)), np.zeros((1, 1))])
    bounds = [(0.0, 1.0)] * N + [(None, None)]

    result = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0], bounds=bounds, method="highs")
    if not result.success:
        raise BorderlineOrdering(sigma, float("nan"))

    slack = -float(result.fun)
    logger.debug(f"LP slack for {sigma}: {slack:.6e}")
    if slack < -tau:
        return None
    if slack <= tau:
        raise BorderlineOrdering(sigma, slack)

    witness = _rational_witness(S, sigma, rows, np.asarray(result.x[:N]), slack, precision)
    if witness is None:
        logger.warning(f"LP says {sigma} is in B but no rational witness verified")
        raise BorderlineOrdering(sigma, slack)
    return OrderingCertificate(sigma, CertificateKind.CYLINDER_STRICT, weights=witness, slack=slack)


def b_interval_two_maps(S: SpongeSystem, sigma: Ordering) -> Optional[tuple]:
    """
    For N = 2, the open interval of p (the weight on map 0) realising sigma.

    Each chain inequality is linear in p, so the set is an interval; None if empty.
    """
    if S.N != 2:
        raise PreconditionViolated(f"b_interval_two_maps needs two maps, got {S.N}")
    a = -S.log_ratios[0]
    b = -S.log_ratios[1]
    lo, hi = 0.0, 1.0
    for k in range(1, S.d):
        x, y = sigma[k] - 1, sigma[k + 1] - 1
        slope = (a[y] - a[x]) - (b[y] - b[x])
        offset = b[y] - b[x]
        if slope == 0:
            if offset <= 0:
                return None
            continue
        root = -offset / slope
        if slope > 0:
            lo = max(lo, root)
        else:
            hi = min(hi, root)
    if lo >= hi:
        return None
    return lo, hi


@dataclass(frozen=True)
class TwoMapCondition:
    """Outcome of the closed-form test for d = 4, N = 2."""
    lhs: float
    rhs: float
    identity_in_b: bool  # (1,2,3,4)
    swapped_in_b: bool   # (2,1,4,3)
    lp_agrees: Optional[bool] = None

    def as_pair(self) -> tuple:
        return self.identity_in_b, self.swapped_in_b


def _log_ratio(a: Fraction, b: Fraction):
    q = a / b
    return mpmath.log(mpmath.mpf(q.numerator) / q.denominator)


def two_map_condition(S: SpongeSystem, precision: int = 50, band: float = 1e-30,
                      cross_check: bool = True, tau: float = 1e-9) -> TwoMapCondition:
    """
    Closed-form membership of (1,2,3,4) and (2,1,4,3) in B.

    Requires d = 4, N = 2, map 0 strictly (2,1,3,4)-ordered and map 1
    strictly (1,2,4,3)-ordered. Exactly one of the two orderings is in B;
    which one is decided by comparing two log-ratio quotients.
    """
    if S.d != 4 or S.N != 2:
        raise PreconditionViolated(f"needs d=4 and N=2, got d={S.d}, N={S.N}")
    if map_ordering(S, 0) != Ordering((2, 1, 3, 4)):
        raise PreconditionViolated(f"map 0 is not strictly (2,1,3,4)-ordered: {S.maps[0].ratios}")
    if map_ordering(S, 1) != Ordering((1, 2, 4, 3)):
        raise PreconditionViolated(f"map 1 is not strictly (1,2,4,3)-ordered: {S.maps[1].ratios}")

    first, second = S.maps[0].ratios, S.maps[1].ratios
    with mpmath.workdps(precision):
        lhs = _log_ratio(first[1], first[0]) / _log_ratio(first[2], first[3])
        rhs = _log_ratio(second[0], second[1]) / _log_ratio(second[3], second[2])
        if abs(lhs - rhs) <= band:
            raise BorderlineOrdering(Ordering((1, 2, 3, 4)), float(lhs - rhs))
        holds = bool(lhs < rhs)
        lhs_f, rhs_f = float(lhs), float(rhs)

    lp_agrees = None
    if cross_check:
        identity = b_membership(S, Ordering((1, 2, 3, 4)), tau) is not None
        swapped = b_membership(S, Ordering((2, 1, 4, 3)), tau) is not None
        lp_agrees = (identity, swapped) == (holds, not holds)
        if not lp_agrees:
            logger.warning(
                f"Closed form says ({holds}, {not holds}) but the LP says ({identity}, {swapped})"
            )

    logger.info(f"Two-map condition: {lhs_f:.6g} vs {rhs_f:.6g} -> (1,2,3,4) in B: {holds}")
    return TwoMapCondition(lhs_f, rhs_f, holds, not holds, lp_agrees)

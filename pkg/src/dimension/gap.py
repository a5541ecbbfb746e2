"""Minimising the Assouad exponent over Bernoulli weights, and the gap certificate."""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..config import SolverConfig
from ..core.projection import ProjectionAtlas
from ..core.sponge import Ordering, SpongeSystem, exact_overlap
from ..errors import NotApplicable, RootOutOfUnitInterval
from ..ordering.rules import domination_pairs
from ..utils.numbers import log_number
from .weights import similarity_dimension

logger = logging.getLogger(__name__)

BATCH = 4096


class AssouadObjective:
    """
    p -> max over the given orderings of S-bar(p, sigma), evaluated for a
    batch of probability vectors at once.
    """

    def __init__(self, S: SpongeSystem, orderings: Sequence[Ordering], atlas: Optional[ProjectionAtlas] = None):
        self.system = S
        self.orderings = tuple(orderings)
        atlas = atlas or ProjectionAtlas(S)
        self._plans = [self._plan(atlas[sigma]) for sigma in self.orderings]

    def _plan(self, P) -> list:
        S = self.system
        levels = []
        previous = None
        for n in range(1, S.d + 1):
            symbols = P.index_set(n)
            member = np.zeros((len(symbols), S.N))
            position = {i: k for k, i in enumerate(symbols)}
            for j in S.indices:
                member[position[P.project(n, j)], j] = 1.0
            parents = None
            if previous is not None:
                parents = np.array([previous[P.project(n - 1, i)] for i in symbols])
            logs = np.array([log_number(S.ratio(i, P.sigma[n])) for i in symbols])
            levels.append((member, parents, logs))
            previous = position
        return levels

    def __call__(self, p) -> np.ndarray:
        batch = np.atleast_2d(np.asarray(p, dtype=float))
        best = np.full(batch.shape[0], -np.inf)
        for plan in self._plans:
            total = np.zeros(batch.shape[0])
            parent_mass = None
            for member, parents, logs in plan:
                mass = batch @ member.T
                if parents is None:
                    cond = mass
                else:
                    cond = mass / parent_mass[:, parents]
                with np.errstate(divide="ignore"):
                    terms = np.where(cond >= 1.0, 0.0, np.log(cond) / logs)
                total += terms.max(axis=1)
                parent_mass = mass
            best = np.maximum(best, total)
        return best

    def value(self, p) -> float:
        return float(self(p)[0])


def _simplex_grid(N: int, resolution: int) -> np.ndarray:
    """Points k / resolution with every k_i >= 1."""
    if N == 1:
        return np.ones((1, 1))
    rows = []
    for head in itertools.product(range(1, resolution), repeat=N - 1):
        last = resolution - sum(head)
        if last >= 1:
            rows.append(head + (last,))
    return np.array(rows, dtype=float) / resolution


def _evaluate(objective: AssouadObjective, points: np.ndarray) -> np.ndarray:
    return np.concatenate([objective(points[k:k + BATCH]) for k in range(0, len(points), BATCH)])


def _refine(objective: AssouadObjective, p: np.ndarray, value: float, start_step: float,
            sweeps: int) -> tuple:
    """Move mass between coordinate pairs while it helps; halve the step when stuck."""
    N = len(p)
    if N == 1:
        return p, value
    pairs = list(itertools.permutations(range(N), 2))
    step = start_step
    for _ in range(sweeps):
        candidates = np.repeat(p[None, :], len(pairs), axis=0)
        for row, (a, b) in enumerate(pairs):
            candidates[row, a] += step
            candidates[row, b] -= step
        feasible = candidates.min(axis=1) > 0
        if feasible.any():
            scores = np.where(feasible, objective(np.clip(candidates, 1e-300, None)), np.inf)
            k = int(np.argmin(scores))
            if scores[k] < value:
                p, value = candidates[k], float(scores[k])
                continue
        step /= 2
        if step < 1e-10:
            break
    return p, value


def minimize_assouad_over_p(S: SpongeSystem, orderings: Sequence[Ordering], solver: Optional[SolverConfig] = None,
                            seed: int = 0, atlas: Optional[ProjectionAtlas] = None) -> tuple:
    """
    Coarse pass (grid for N <= 3, Dirichlet samples otherwise) followed by
    coordinate-pair refinement.

    Returns:
        (p_star as a tuple of floats, objective value)
    """
    solver = solver or SolverConfig()
    objective = AssouadObjective(S, orderings, atlas)
    if S.N <= 3:
        points = _simplex_grid(S.N, solver.gap_resolution)
    else:
        rng = np.random.default_rng(seed)
        points = np.vstack([np.full((1, S.N), 1.0 / S.N), rng.dirichlet(np.ones(S.N), size=solver.gap_samples)])

    scores = _evaluate(objective, points)
    k = int(np.argmin(scores))
    logger.debug(f"Coarse pass over {len(points)} points: best {scores[k]:.9f} at {points[k]}")

    p, value = _refine(objective, points[k].copy(), float(scores[k]), 1 / (2 * solver.gap_resolution),
                       solver.refine_iterations)
    logger.info(f"inf_p dim_A estimate {value:.6f} at p={np.round(p, 6).tolist()}")
    return tuple(float(x) for x in p), value


@dataclass(frozen=True)
class GapCertificate:
    s: float
    t: float
    swapped: bool  # axes exchanged so that t <= s
    epsilon: float
    ell: int
    first_term: float
    second_terms: tuple  # per map k; inf where the term does not apply
    delta_F: float
    p_star: tuple
    inf_estimate: float
    confirmed: bool


def gap_certificate(S: SpongeSystem, orderings: Sequence[Ordering], solver: Optional[SolverConfig] = None,
                    seed: int = 0, tolerance: float = 1e-9) -> GapCertificate:
    """
    Explicit positive lower bound delta_F on inf_p dim_A nu_p - dim_A F for a
    carpet whose maps overlap on neither axis.

    Raises:
        NotApplicable: d != 2, an axis has exact overlaps, or one axis dominates
    """
    if S.d != 2:
        raise NotApplicable(f"gap certificate needs a carpet (d=2), got d={S.d}")
    for sigma in (Ordering((1, 2)), Ordering((2, 1))):
        for i, j in itertools.combinations(S.indices, 2):
            if exact_overlap(S, i, j, sigma, 1):
                raise NotApplicable(f"maps {i} and {j} overlap exactly on axis {sigma[1]}")
    if domination_pairs(S):
        raise NotApplicable("one axis dominates the other (Lalley-Gatzouras carpet)")

    a = [S.ratio(i, 1) for i in S.indices]
    b = [S.ratio(i, 2) for i in S.indices]
    try:
        s = similarity_dimension(a)
        t = similarity_dimension(b)
    except RootOutOfUnitInterval as e:
        raise NotApplicable(f"axis projections are not separated: {e}") from e
    swapped = t > s
    if swapped:
        a, b, s, t = b, a, t, s

    slack = [float(b[i]) ** s - float(a[i]) ** s for i in S.indices]
    ell = int(np.argmax(slack))
    epsilon = slack[ell] / 2
    a_s = [float(x) ** s for x in a]
    first = math.log(a_s[ell] + epsilon) / log_number(b[ell]) - s

    share = epsilon / (S.N - 1)
    second = tuple(
        math.log(1 - share / a_s[k]) / log_number(a[k]) if a_s[k] > share else math.inf
        for k in S.indices
    )
    delta_F = min((first,) + second)

    p_star, inf_estimate = minimize_assouad_over_p(S, orderings, solver, seed)
    confirmed = inf_estimate >= s + delta_F - tolerance
    if not confirmed:
        logger.warning(f"Optimizer value {inf_estimate:.6f} is below s + delta_F = {s + delta_F:.6f}")
    logger.info(f"Gap certificate: s={s:.6f}, t={t:.6f}, delta_F={delta_F:.6f}, inf={inf_estimate:.6f}")
    return GapCertificate(s, t, swapped, epsilon, ell, first, second, delta_F, p_star, inf_estimate, confirmed)

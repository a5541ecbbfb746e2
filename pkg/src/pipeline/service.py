"""Analysis service: runs the library for one subcommand and builds its report."""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from ..config import Config
from ..core.projection import ProjectionAtlas
from ..core.separation import SeparationReport, check_separation
from ..core.sponge import Ordering, SpongeSpec, SpongeSystem, load_sponge_spec
from ..dimension.bounds import dimension_bounds
from ..dimension.gap import gap_certificate, minimize_assouad_over_p
from ..dimension.weights import (
    WeightSystem,
    fibre_dimensions,
    natural_measure,
    natural_measure_identity_check,
    uniform_weights,
)
from ..errors import (
    BorderlineOrdering,
    NotApplicable,
    PreconditionViolated,
    RootOutOfUnitInterval,
    SeparationNotVerified,
    SpecParseError,
    SpongeValidationError,
    UnsupportedDimension,
)
from ..oracle.sampler import exact_weights, sample_ratio_exponents
from ..oracle.sandwich import verify_same_ordering_bounds, verify_sandwich, verify_subdivision_bound
from ..ordering.lyapunov import b_interval_two_maps, two_map_condition
from ..ordering.rules import consistent_orderings
from ..ordering.sets import OrderingSets, classify_sponge, closure_check, compute_ordering_sets
from ..report.render import render_svg
from ..report.report import (
    RunReport,
    bounds_section,
    gap_section,
    orderings_section,
    sampler_section,
    separation_section,
    sigma_table,
    two_map_borderline_section,
    two_map_note,
    two_map_section,
    validation_section,
)
from ..utils.logging import log_stage
from .state_machine import State, StateMachine

logger = logging.getLogger(__name__)

MEASURES = ("given", "uniform", "natural")


class _Stop(Exception):
    """Run reached a terminal failure state."""


class AnalysisService:
    """
    One instance per process. Each command builds a RunReport whose status
    and exit code come from the pipeline state machine.
    """

    def __init__(self, config: Optional[Config] = None):
        self.config = config or Config()

    # -- plumbing ---------------------------------------------------------------

    def _run(self, command: str, body: Callable[[RunReport, StateMachine], None]) -> RunReport:
        report = RunReport(command)

        def on_change(old: State, new: State):
            report.status = new.name

        machine = StateMachine(on_state_change=on_change)
        try:
            body(report, machine)
        except _Stop:
            pass
        except SeparationNotVerified as e:
            machine.fail(State.NOT_SEPARATED, str(e))
        except (NotApplicable, UnsupportedDimension) as e:
            machine.fail(State.NOT_APPLICABLE, str(e))
        if not machine.is_terminal:
            machine.finish()
        if machine.error_message:
            report.add("error", machine.error_message)
        report.exit_code = machine.exit_code
        logger.info(f"{command} finished in {machine.state.name} (exit {report.exit_code})")
        return report

    def _load(self, path, report: RunReport, machine: StateMachine) -> SpongeSpec:
        try:
            spec = load_sponge_spec(path)
        except SpecParseError as e:
            machine.fail(State.PARSE_FAILED, str(e))
            raise _Stop from e
        except SpongeValidationError as e:
            machine.transition(State.PARSED)
            report.add("validation", validation_section(e.violations))
            machine.fail(State.INVALID, str(e))
            raise _Stop from e
        machine.transition(State.PARSED)
        machine.transition(State.VALIDATED)
        report.add("input", spec.to_dict())
        report.add("validation", validation_section([]))
        return spec

    def _ordering_sets(self, S: SpongeSystem, force_search: bool = False) -> OrderingSets:
        with log_stage(logger, "ordering sets"):
            return compute_ordering_sets(S, self.config.search, self.config.solver, force_search)

    @staticmethod
    def _separation(S: SpongeSystem, orderings) -> SeparationReport:
        orderings = tuple(orderings) or tuple(Ordering.all(S.d))
        return check_separation(S, orderings)

    def _two_map_notes(self, S: SpongeSystem, report: RunReport) -> None:
        if S.d != 4 or S.N != 2:
            return
        try:
            condition = two_map_condition(S, tau=self.config.solver.tau_b)
        except PreconditionViolated as e:
            logger.debug(f"Two-map condition does not apply: {e}")
            return
        except BorderlineOrdering as e:
            logger.warning(f"Two-map condition is undecided: {e}")
            report.add("two_map_condition", two_map_borderline_section(e.slack))
            report.note("the two log-ratio quotients are equal; neither (1,2,3,4) nor (2,1,4,3) is strictly in B")
            return
        sigma = Ordering((1, 2, 3, 4)) if condition.identity_in_b else Ordering((2, 1, 4, 3))
        interval = b_interval_two_maps(S, sigma)
        report.add("two_map_condition", two_map_section(condition, interval))
        report.note(two_map_note(condition, interval))

    def _weights(self, spec: SpongeSpec, measure: str, atlas: ProjectionAtlas, report: RunReport) -> tuple:
        """(label, p) for a --measure value."""
        S = spec.system
        kind, _, arg = measure.partition(":")
        if kind == "given":
            if spec.weights is None:
                report.note("no weights in the input; using the uniform measure")
                return "uniform", uniform_weights(S)
            return "given", spec.weights
        if kind == "uniform":
            return "uniform", uniform_weights(S)
        if kind == "natural":
            try:
                sigma = Ordering.parse(arg) if arg else Ordering.identity(S.d)
            except ValueError as e:
                raise NotApplicable(f"bad ordering in {measure!r}: {e}") from e
            if len(sigma) != S.d:
                raise NotApplicable(f"natural measure ordering {sigma} does not match d={S.d}")
            try:
                return f"natural:{sigma}", natural_measure(S, atlas[sigma])
            except RootOutOfUnitInterval as e:
                raise NotApplicable(f"natural measure for {sigma} is undefined: {e}") from e
        raise NotApplicable(f"unknown measure {measure!r}; expected one of {', '.join(MEASURES)}")

    # -- commands ---------------------------------------------------------------

    def validate(self, path) -> RunReport:
        def body(report: RunReport, machine: StateMachine):
            S = self._load(path, report, machine).system
            if S.d <= 3:
                orderings = self._ordering_sets(S).a_upper
            else:
                orderings = consistent_orderings(S)
            separation = self._separation(S, orderings)
            report.add("separation", separation_section(separation))
            machine.transition(State.SEPARATED)

        return self._run("validate", body)

    def orderings(self, path, force_search: bool = False) -> RunReport:
        def body(report: RunReport, machine: StateMachine):
            S = self._load(path, report, machine).system
            sets = self._ordering_sets(S, force_search)
            report.add("separation", separation_section(self._separation(S, sets.a_upper)))
            machine.transition(State.SEPARATED)
            report.add("orderings", orderings_section(S, sets, classify_sponge(S, sets),
                                                      self.config.solver.witness_precision))
            if S.d == 3:
                closure = closure_check(S, sets.a_upper)
                report.add("closure", {"holds": closure.holds, "violations": [list(v) for v in closure.violations]})
            self._two_map_notes(S, report)
            if sets.budget_exhausted:
                report.note("cube witness search budget exhausted; A is only bracketed")
            machine.transition(State.ORDERED)

        return self._run("orderings", body)

    def dims(self, path, measure: str = "given", formula_only: bool = False) -> RunReport:
        def body(report: RunReport, machine: StateMachine):
            spec = self._load(path, report, machine)
            S = spec.system
            atlas = ProjectionAtlas(S)
            sets = self._ordering_sets(S)
            separation = self._separation(S, sets.a_upper)
            report.add("separation", separation_section(separation))
            machine.transition(State.SEPARATED)
            if not separation.very_strong and not formula_only:
                raise SeparationNotVerified("very strong SPPC fails; rerun with --formula-only for formula values")

            report.add("orderings", orderings_section(S, sets, classify_sponge(S, sets),
                                                      self.config.solver.witness_precision))
            self._two_map_notes(S, report)
            machine.transition(State.ORDERED)

            label, p = self._weights(spec, measure, atlas, report)
            weights = WeightSystem(S, p, atlas)
            try:
                bounds = dimension_bounds(S, weights, sets, separation, formula_only, self.config.solver.equality_band)
            except PreconditionViolated as e:
                raise NotApplicable(str(e)) from e
            report.add("bounds", bounds_section(label, p, bounds))
            report.add("tables", self._tables(S, atlas, weights, sets))
            if not bounds.exact:
                report.note("A is only bracketed; dimension values are intervals")
            machine.transition(State.MEASURED)

            if self.config.oracle.enabled and separation.very_strong:
                report.add("oracle", self._oracle(S, p, sets, separation, bounds, atlas, report))

        return self._run("dims", body)

    def gap(self, path, formula_only: bool = False) -> RunReport:
        def body(report: RunReport, machine: StateMachine):
            S = self._load(path, report, machine).system
            if S.d != 2:
                raise NotApplicable(f"the dimension gap is computed for carpets (d=2), got d={S.d}")
            sets = self._ordering_sets(S)
            separation = self._separation(S, sets.a_upper)
            report.add("separation", separation_section(separation))
            machine.transition(State.SEPARATED)
            if not separation.very_strong and not formula_only:
                raise SeparationNotVerified("very strong SPPC fails; rerun with --formula-only")
            report.add("orderings", orderings_section(S, sets, classify_sponge(S, sets),
                                                      self.config.solver.witness_precision))
            machine.transition(State.ORDERED)

            seed = self.config.oracle.seed
            with log_stage(logger, "minimise over p"):
                p_star, value = minimize_assouad_over_p(S, sets.a_upper, self.config.solver, seed)
            try:
                certificate = gap_certificate(S, sets.a_upper, self.config.solver, seed)
            except NotApplicable as e:
                report.add("gap", gap_section(p_star, value, reason=str(e)))
                report.note(f"gap certificate not applicable: {e}")
            else:
                report.add("gap", gap_section(p_star, value, certificate))
            machine.transition(State.MEASURED)

        return self._run("gap", body)

    def render(self, path, depth: Optional[int] = None, out: Optional[Path] = None) -> tuple:
        """(report, svg text); the SVG is also written to `out` when given."""
        result = {}

        def body(report: RunReport, machine: StateMachine):
            S = self._load(path, report, machine).system
            k = depth or self.config.render.depth
            svg = render_svg(S, k, self.config.render.viewport)
            result["svg"] = svg
            if out is not None:
                Path(out).write_text(svg, encoding="utf-8")
                logger.info(f"Wrote {out}")
            report.add("render", {"depth": k, "cylinders": S.N ** k, "out": str(out) if out else None})

        report = self._run("render", body)
        return report, result.get("svg")

    # -- pieces -----------------------------------------------------------------

    def _tables(self, S: SpongeSystem, atlas: ProjectionAtlas, weights: WeightSystem, sets: OrderingSets) -> dict:
        tables = {}
        for sigma in sorted(set(sets.a_upper) | set(sets.b)):
            P = atlas[sigma]
            try:
                dims = fibre_dimensions(S, P, self.config.solver.bisection_iterations)
            except RootOutOfUnitInterval as e:
                logger.warning(f"No fibre dimensions for {sigma}: {e}")
                continue
            q = natural_measure(S, P, dims)
            table = sigma_table(S, weights[sigma], dims, q)
            table["natural_identity"] = natural_measure_identity_check(S, P, q, dims)
            tables[str(sigma)] = table
        return tables

    def _oracle(self, S: SpongeSystem, p, sets: OrderingSets, separation: SeparationReport, bounds,
                atlas: ProjectionAtlas, report: RunReport) -> dict:
        oracle = self.config.oracle
        exact_p = exact_weights(p)
        with log_stage(logger, "ratio sampler"):
            summary = sample_ratio_exponents(S, exact_p, sets, oracle, atlas=atlas)
        section = sampler_section(summary, bounds, oracle.tolerance)
        if not section["agrees"]:
            report.note(
                f"sampled exponents [{summary.inf_estimate:.4f}, {summary.sup_estimate:.4f}] leave the "
                f"formula brackets by more than {oracle.tolerance}"
            )

        sandwich = verify_sandwich(S, separation, trials=50, seed=oracle.seed, atlas=atlas)
        section["sandwich"] = {
            "holds": sandwich.holds,
            "cubes": sandwich.cubes,
            "max_spread": sandwich.max_spread,
            "min_gap": sandwich.min_gap,
            "violations": sandwich.violations[:10],
        }

        if oracle.mode == "full":
            section["same_ordering"] = {}
            for sigma in sets.a_lower:
                check = verify_same_ordering_bounds(S, exact_p, sigma, trials=100, seed=oracle.seed,
                                                    max_ratio=oracle.max_ratio, atlas=atlas)
                section["same_ordering"][str(sigma)] = {
                    "samples": check.samples,
                    "fitted_C": check.fitted_C,
                    "bound": check.bound,
                    "trend": check.trend,
                    "bounded": check.bounded,
                }
            epsilon = (1 - S.lambda_max) / 2
            sub = verify_subdivision_bound(S, exact_p, epsilon, trials=200, seed=oracle.seed, atlas=atlas)
            section["subdivision"] = {
                "epsilon": Fraction(epsilon),
                "max_ratio": sub.max_ratio,
                "bound": sub.bound,
                "trend": sub.trend,
                "bounded": sub.bounded,
            }
        return section

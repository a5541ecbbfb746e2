"""Configuration management with TOML support."""

import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)


@dataclass
class SearchConfig:
    """Witness search for the cube ordering set (d >= 4)."""
    max_prefix_len: int = 12
    cycle_depth: int = 32  # extra letters of the cycle beyond the prefix
    max_words: int = 20000
    scale_grid_size: int = 64  # scales tried per constant-ordering interval
    workers: int = 1


@dataclass
class SolverConfig:
    """Numerical tolerances and resolutions."""
    tau_b: float = 1e-9  # LP slack band for borderline orderings
    bisection_iterations: int = 64
    equality_band: float = 1e-9
    witness_precision: int = 40  # mpmath digits when re-checking certificates
    gap_resolution: int = 200  # simplex grid denominator for N <= 3
    gap_samples: int = 20000  # Dirichlet samples for N > 3
    refine_iterations: int = 400


@dataclass
class OracleConfig:
    """Symbolic oracle sampling."""
    mode: str = "quick"  # "quick", "full" or "off"
    seed: int = 0
    enumeration_cap: int = 14  # longest word brute force may enumerate
    enumeration_limit: int = 65536  # most words brute force may enumerate
    quick_max_samples: int = 10000
    quick_max_ratio: float = 1e5
    full_max_samples: int = 100000
    full_max_ratio: float = 1e6
    max_iterate: int = 3
    tolerance: float = 0.05

    @property
    def max_samples(self) -> int:
        return self.full_max_samples if self.mode == "full" else self.quick_max_samples

    @property
    def max_ratio(self) -> float:
        return self.full_max_ratio if self.mode == "full" else self.quick_max_ratio

    @property
    def enabled(self) -> bool:
        return self.mode != "off"


@dataclass
class RenderConfig:
    """SVG output."""
    depth: int = 1
    viewport: int = 1000


@dataclass
class LoggingConfig:
    """Logging configuration."""
    level: str = "INFO"
    file: str = ""  # Empty for stderr only


@dataclass
class Config:
    """Main configuration container."""
    search: SearchConfig = field(default_factory=SearchConfig)
    solver: SolverConfig = field(default_factory=SolverConfig)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    render: RenderConfig = field(default_factory=RenderConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    @classmethod
    def load(cls, path: Optional[Path] = None) -> "Config":
        """
        Load configuration from TOML file.

        Args:
            path: Path to config file. Uses default if None.

        Returns:
            Config object with loaded or default values
        """
        if path is None:
            path = DEFAULT_CONFIG_PATH
        path = Path(path)

        config = cls()

        if path.exists():
            logger.info(f"Loading configuration from {path}")
            try:
                with open(path, "rb") as f:
                    data = tomllib.load(f)
                config = cls._from_dict(data)
            except Exception as e:
                logger.warning(f"Failed to load config: {e}, using defaults")
        else:
            logger.info("No config file found, using defaults")

        return config

    @classmethod
    def _from_dict(cls, data: dict) -> "Config":
        """Create Config from dictionary."""
        config = cls()

        if "search" in data:
            s = data["search"]
            config.search = SearchConfig(
                max_prefix_len=s.get("max_prefix_len", config.search.max_prefix_len),
                cycle_depth=s.get("cycle_depth", config.search.cycle_depth),
                max_words=s.get("max_words", config.search.max_words),
                scale_grid_size=s.get("scale_grid_size", config.search.scale_grid_size),
                workers=s.get("workers", config.search.workers),
            )

        if "solver" in data:
            v = data["solver"]
            config.solver = SolverConfig(
                tau_b=v.get("tau_b", config.solver.tau_b),
                bisection_iterations=v.get("bisection_iterations", config.solver.bisection_iterations),
                equality_band=v.get("equality_band", config.solver.equality_band),
                witness_precision=v.get("witness_precision", config.solver.witness_precision),
                gap_resolution=v.get("gap_resolution", config.solver.gap_resolution),
                gap_samples=v.get("gap_samples", config.solver.gap_samples),
                refine_iterations=v.get("refine_iterations", config.solver.refine_iterations),
            )

        if "oracle" in data:
            o = data["oracle"]
            config.oracle = OracleConfig(
                mode=o.get("mode", config.oracle.mode),
                seed=o.get("seed", config.oracle.seed),
                enumeration_cap=o.get("enumeration_cap", config.oracle.enumeration_cap),
                enumeration_limit=o.get("enumeration_limit", config.oracle.enumeration_limit),
                quick_max_samples=o.get("quick_max_samples", config.oracle.quick_max_samples),
                quick_max_ratio=o.get("quick_max_ratio", config.oracle.quick_max_ratio),
                full_max_samples=o.get("full_max_samples", config.oracle.full_max_samples),
                full_max_ratio=o.get("full_max_ratio", config.oracle.full_max_ratio),
                max_iterate=o.get("max_iterate", config.oracle.max_iterate),
                tolerance=o.get("tolerance", config.oracle.tolerance),
            )

        if "render" in data:
            r = data["render"]
            config.render = RenderConfig(
                depth=r.get("depth", config.render.depth),
                viewport=r.get("viewport", config.render.viewport),
            )

        if "logging" in data:
            l = data["logging"]
            config.logging = LoggingConfig(
                level=l.get("level", config.logging.level),
                file=l.get("file", config.logging.file),
            )

        return config

    def print_config(self):
        """Print current configuration."""
        print("Current Configuration:")
        print("=" * 60)
        print(f"Search Prefix:     up to {self.search.max_prefix_len} letters")
        print(f"Search Cycle:      {self.search.cycle_depth} letters")
        print(f"Search Words:      {self.search.max_words}")
        print(f"Search Workers:    {self.search.workers}")
        print()
        print(f"LP Slack Band:     {self.solver.tau_b:g}")
        print(f"Bisection Steps:   {self.solver.bisection_iterations}")
        print(f"Witness Digits:    {self.solver.witness_precision}")
        print(f"Gap Grid:          1/{self.solver.gap_resolution}")
        print()
        print(f"Oracle Mode:       {self.oracle.mode}")
        print(f"Oracle Seed:       {self.oracle.seed}")
        print(f"Oracle Samples:    {self.oracle.max_samples}")
        print(f"Oracle Max Ratio:  {self.oracle.max_ratio:g}")
        print(f"Enumeration Cap:   {self.oracle.enumeration_cap}")
        print()
        print(f"Render Depth:      {self.render.depth}")
        print(f"Log Level:         {self.logging.level}")
        print("=" * 60)


# Default config path
DEFAULT_CONFIG_PATH = Path.home() / ".config" / "sponge-dim" / "config.toml"


if __name__ == "__main__":
    config = Config.load()
    config.print_config()

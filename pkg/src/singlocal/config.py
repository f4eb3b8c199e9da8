"""Runtime defaults shared by the library and the CLI."""

import os
from dataclasses import dataclass, field

from .rationals import Rational, parse_rational

ENV_PREFIX = "SINGLOCAL_"

DEFAULT_SAMPLES = (
    Rational(1, 101),
    Rational(1, 103),
    Rational(1, 107),
    Rational(1, 109),
    Rational(1, 113),
)


@dataclass
class Config:
    """Caps, seed and sample points; every cap must be >= 1."""

    method: str = "standard_basis"
    jet_cap: int = 24
    degree_cap: int = 64
    seed: int = 0
    samples: tuple = DEFAULT_SAMPLES
    cache_path: str = "jump_cache.jsonl"

    def __post_init__(self):
        if self.jet_cap < 1 or self.degree_cap < 1:
            raise ValueError("caps must be >= 1")

    @classmethod
    def from_env(cls, base=None):
        """Overrides from SINGLOCAL_* environment variables."""
        cfg = base or cls()
        kwargs = {}
        for name, cast in (
            ("method", str),
            ("jet_cap", int),
            ("degree_cap", int),
            ("seed", int),
            ("cache_path", str),
        ):
            raw = os.environ.get(ENV_PREFIX + name.upper())
            if raw is not None:
                kwargs[name] = cast(raw)
        raw = os.environ.get(ENV_PREFIX + "SAMPLES")
        if raw is not None:
            kwargs["samples"] = tuple(parse_rational(c) for c in raw.split(","))
        if not kwargs:
            return cfg
        return cls(
            method=kwargs.get("method", cfg.method),
            jet_cap=kwargs.get("jet_cap", cfg.jet_cap),
            degree_cap=kwargs.get("degree_cap", cfg.degree_cap),
            seed=kwargs.get("seed", cfg.seed),
            samples=kwargs.get("samples", cfg.samples),
            cache_path=kwargs.get("cache_path", cfg.cache_path),
        )


DEFAULTS = Config()

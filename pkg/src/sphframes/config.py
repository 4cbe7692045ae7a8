"""Run configuration for the command-line front-end.

Environment overrides:
    SPHFRAMES_VERIFY_TOL: pass threshold of ``verify`` (default 1e-10).
    SPHFRAMES_SEED: seed of the random round-trip probe (default 0).
"""

from __future__ import annotations

import argparse
import logging
import os
from dataclasses import dataclass
from typing import Optional
from typing import Tuple

from .errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_VERIFY_TOL = 1e-10
DEFAULT_SEED = 0
REPORT_FORMATS = ("json", "csv")


def env_float_or_default(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be a float, got: {raw!r}") from exc


def env_int_or_default(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be an integer, got: {raw!r}") from exc


def parse_cutoffs(text: str) -> Tuple[int, ...]:
    """Parse ``"1,2,4,8"`` into a strictly increasing tuple of positive ints."""
    try:
        cutoffs = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"cutoffs must be a comma list of integers, got {text!r}") from exc
    if not cutoffs:
        raise ConfigError("cutoffs list is empty")
    if cutoffs[0] < 1:
        raise ConfigError(f"cutoffs must be positive, got {text!r}")
    if any(a >= b for a, b in zip(cutoffs, cutoffs[1:])):
        raise ConfigError(f"cutoffs must be strictly increasing, got {text!r}")
    return cutoffs


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one CLI invocation."""

    command: str
    N: int
    max_degree: int
    cutoffs: Optional[Tuple[int, ...]] = None
    fn: Optional[str] = None
    in_path: Optional[str] = None
    out_path: Optional[str] = None
    fmt: str = "json"
    approximant_path: Optional[str] = None
    verify_tol: float = DEFAULT_VERIFY_TOL
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ConfigError(f"--N must be a positive integer, got {self.N}")
        if not 1 <= self.max_degree <= self.N:
            raise ConfigError(f"--m must satisfy 1 <= m <= N = {self.N}, got {self.max_degree}")
        if self.cutoffs is not None and self.cutoffs[-1] > self.N:
            raise ConfigError(f"cutoffs {list(self.cutoffs)} exceed N = {self.N}")
        if self.fmt not in REPORT_FORMATS:
            raise ConfigError(f"--format must be one of {', '.join(REPORT_FORMATS)}")
        if self.fn is not None and self.in_path is not None:
            raise ConfigError("--fn and --in are mutually exclusive")
        if self.verify_tol <= 0.0:
            raise ConfigError(f"SPHFRAMES_VERIFY_TOL must be positive, got {self.verify_tol}")

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "RunConfig":
        """Build from parsed arguments; ``--m`` defaults to N."""
        N = args.N
        m = getattr(args, "m", None)
        cutoffs_text = getattr(args, "cutoffs", None)
        config = cls(
            command=args.command,
            N=N,
            max_degree=N if m is None else m,
            cutoffs=parse_cutoffs(cutoffs_text) if cutoffs_text else None,
            fn=getattr(args, "fn", None),
            in_path=getattr(args, "in_path", None),
            out_path=getattr(args, "out", None),
            fmt=getattr(args, "format", "json"),
            approximant_path=getattr(args, "approximant", None),
            verify_tol=env_float_or_default("SPHFRAMES_VERIFY_TOL", DEFAULT_VERIFY_TOL),
            seed=env_int_or_default("SPHFRAMES_SEED", DEFAULT_SEED),
        )
        logger.debug("run config: %s", config)
        return config

#!/usr/bin/env python3
"""Command-line front-end.

Usage:
    sphframes grid --N 4 --out grid.csv
    sphframes quadrature --N 8
    sphframes verify --N 8 --m 8 [--cutoffs 1,2,4,8] [--format csv]
    sphframes analyze --N 4 --m 4 --fn Y:2:-1 --out coeffs.json
    sphframes synthesize --N 4 --in coeffs.json --out samples.csv
    sphframes fit --N 4 --m 3 --in samples.csv --out fit.json [--approximant f.csv]
    sphframes decompose --N 4 --cutoffs 1,2,4 --fn random:4 --out levels.json

Exit codes: 0 success, 1 verification failure, 2 usage or validation error,
3 I/O error.  Logs go to stderr; stdout carries only the artifact.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any
from typing import Callable
from typing import Dict
from typing import List
from typing import Optional

import numpy as np

from .config import REPORT_FORMATS
from .config import RunConfig
from .errors import ConfigError
from .errors import SphFramesError
from .formats import coeffs_payload
from .formats import dump_coeffs_json
from .formats import dump_decomposition_json
from .formats import dump_grid_csv
from .formats import dump_quadrature_csv
from .formats import dump_report
from .formats import dump_samples_csv
from .formats import load_coeffs_json
from .formats import load_samples_csv
from .frames import MultiresolutionLadder
from .frames import decompose
from .frames import frame_analyze
from .frames import mean_value_checks
from .frames import phi_mean
from .frames import tight_frame_check
from .frames import wavelet_analyze
from .frames import wavelet_frame_check
from .functions import get_function
from .grid import SphericalGrid
from .grid import build_grid
from .transform import CoeffVector
from .transform import SampleVector
from .transform import analyze
from .transform import best_approximant
from .transform import gram_residual
from .transform import roundtrip_error
from .transform import sample_on_grid
from .transform import synthesize_on_grid
from .transform import weighted_least_squares

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _setup_logging(level: int) -> None:
    """Attach one stderr handler to the package logger."""
    package_logger = logging.getLogger(__package__)
    package_logger.setLevel(level)
    if not package_logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("[%(levelname)s] %(name)s: %(message)s"))
        package_logger.addHandler(handler)
    package_logger.propagate = False


# ---------------------------------------------------------------------------
# I/O helpers
# ---------------------------------------------------------------------------


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    Path(out_path).write_text(text, encoding="utf-8")
    logger.info("wrote %s", out_path)


def _require_parent(out_path: Optional[str]) -> None:
    if out_path is None:
        return
    parent = Path(out_path).parent
    if not parent.is_dir():
        raise FileNotFoundError(f"directory {parent} does not exist")


def _load_samples(config: RunConfig, grid: SphericalGrid) -> SampleVector:
    if config.fn is not None:
        return sample_on_grid(grid, get_function(config.fn))
    if config.in_path is not None:
        return load_samples_csv(Path(config.in_path).read_text(encoding="utf-8"), grid.N)
    raise ConfigError(f"{config.command} needs --fn or --in")


def _relative(error: float, scale: float) -> float:
    return error / scale if scale > 0.0 else error


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_grid(config: RunConfig) -> int:
    grid = build_grid(config.N)
    _emit(dump_grid_csv(grid), config.out_path)
    return EXIT_OK


def cmd_quadrature(config: RunConfig) -> int:
    grid = build_grid(config.N)
    _emit(dump_quadrature_csv(grid.rule), config.out_path)
    return EXIT_OK


def _scaling_level_report(
    ladder: MultiresolutionLadder, j: int, grid: SphericalGrid, rng: np.random.Generator
) -> Dict[str, Any]:
    m_j = ladder.m(j)
    coeffs = CoeffVector.random(m_j, rng)
    samples = synthesize_on_grid(coeffs, grid)
    check = tight_frame_check(ladder, j, grid, coeffs)
    frame = frame_analyze(ladder, j, grid, samples)
    scale = float(np.max(np.abs(samples.values)))
    center = grid.node_point(0)
    return {
        "j": j,
        "kind": "scaling",
        "m_j": m_j,
        "tight_frame_gap": _relative(check.gap, check.lhs),
        "reproducing_error": _relative(float(np.max(np.abs(frame.values - samples.values))), scale),
        "mean_error": abs(phi_mean(ladder, j, grid, center) - 1.0),
    }


def _wavelet_level_report(
    ladder: MultiresolutionLadder, j: int, grid: SphericalGrid, rng: np.random.Generator
) -> Dict[str, Any]:
    m_j, m_next = ladder.m(j), ladder.m(j + 1)
    coeffs = CoeffVector.random(m_next, rng, min_degree=m_j)
    samples = synthesize_on_grid(coeffs, grid)
    check = wavelet_frame_check(ladder, j, grid, coeffs)
    frame = wavelet_analyze(ladder, j, grid, samples)
    scale = float(np.max(np.abs(samples.values)))
    mean_error = None
    if m_j > 1:
        mean_error = abs(mean_value_checks(ladder, j, grid, grid.node_point(0)).psi_mean)
    return {
        "j": j,
        "kind": "wavelet",
        "m_j": m_j,
        "m_next": m_next,
        "tight_frame_gap": _relative(check.gap, check.lhs),
        "reproducing_error": _relative(float(np.max(np.abs(frame.values - samples.values))), scale),
        "mean_error": mean_error,
    }


def cmd_verify(config: RunConfig) -> int:
    grid = build_grid(config.N)
    rng = np.random.default_rng(config.seed)
    residual = gram_residual(grid, config.max_degree)
    report: Dict[str, Any] = {
        "N": config.N,
        "m": config.max_degree,
        "gram_residual": residual,
        "roundtrip_error": roundtrip_error(grid, config.max_degree, rng),
        "tolerance": config.verify_tol,
    }
    failures = [residual >= config.verify_tol]

    if config.cutoffs is not None:
        ladder = MultiresolutionLadder(config.cutoffs, config.N)
        levels: List[Dict[str, Any]] = []
        for j in range(1, ladder.j0 + 1):
            levels.append(_scaling_level_report(ladder, j, grid, rng))
        for j in range(1, ladder.j0):
            levels.append(_wavelet_level_report(ladder, j, grid, rng))
        for level in levels:
            for key in ("tight_frame_gap", "reproducing_error", "mean_error"):
                if level[key] is not None:
                    failures.append(level[key] >= config.verify_tol)
        report["cutoffs"] = list(ladder.cutoffs)
        report["levels"] = levels

    passed = not any(failures)
    report["passed"] = passed
    _emit(dump_report(report, config.fmt), config.out_path)
    if passed:
        logger.info("verify N=%d m=%d passed (gram residual %.3e)", config.N, config.max_degree, residual)
        return EXIT_OK
    logger.error("verify N=%d m=%d failed (tolerance %.1e)", config.N, config.max_degree, config.verify_tol)
    return EXIT_VERIFY_FAILED


def cmd_analyze(config: RunConfig) -> int:
    grid = build_grid(config.N)
    samples = _load_samples(config, grid)
    coeffs = analyze(grid, samples, config.max_degree)
    _emit(dump_coeffs_json(coeffs), config.out_path)
    return EXIT_OK


def cmd_synthesize(config: RunConfig) -> int:
    if config.in_path is None:
        raise ConfigError("synthesize needs --in COEFFS.json")
    coeffs = load_coeffs_json(Path(config.in_path).read_text(encoding="utf-8"))
    grid = build_grid(config.N)
    samples = synthesize_on_grid(coeffs, grid)
    if coeffs.max_degree <= grid.N:
        back = analyze(grid, samples, coeffs.max_degree)
        error = float(np.max(np.abs(back.entries - coeffs.entries)))
        logger.info("round-trip max error %.3e", error)
    else:
        logger.warning(
            "max_degree %d exceeds N=%d; samples alias and cannot round-trip",
            coeffs.max_degree, grid.N,
        )
    _emit(dump_samples_csv(grid, samples), config.out_path)
    return EXIT_OK


def cmd_fit(config: RunConfig) -> int:
    _require_parent(config.out_path)
    _require_parent(config.approximant_path)
    grid = build_grid(config.N)
    samples = _load_samples(config, grid)
    fit = weighted_least_squares(grid, samples, config.max_degree)
    payload = coeffs_payload(fit.coeffs)
    payload["residual"] = fit.residual
    payload["residual_kind"] = "weighted"
    logger.info("fit N=%d m=%d weighted residual %.3e", config.N, config.max_degree, fit.residual)
    if config.approximant_path is not None:
        approximant = best_approximant(grid, samples, config.max_degree)
        _emit(dump_samples_csv(grid, approximant), config.approximant_path)
    _emit(dump_report(payload), config.out_path)
    return EXIT_OK


def cmd_decompose(config: RunConfig) -> int:
    grid = build_grid(config.N)
    if config.cutoffs is None:
        ladder = MultiresolutionLadder.dyadic(config.N)
    else:
        ladder = MultiresolutionLadder(config.cutoffs, config.N)
    samples = _load_samples(config, grid)
    decomposition = decompose(ladder, grid, samples)
    logger.info(
        "decomposed into %d levels, reconstruction error %.3e",
        ladder.j0, decomposition.reconstruction_error,
    )
    _emit(dump_decomposition_json(decomposition), config.out_path)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "grid": cmd_grid,
    "quadrature": cmd_quadrature,
    "verify": cmd_verify,
    "analyze": cmd_analyze,
    "synthesize": cmd_synthesize,
    "fit": cmd_fit,
    "decompose": cmd_decompose,
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, required=True, help="grid order N >= 1")
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")

    degree = argparse.ArgumentParser(add_help=False)
    degree.add_argument("--m", type=int, default=None, help="degree bound m <= N (default N)")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--fn", default=None, help="built-in function: const | Y:n:k | gauss-bump[:ax,ay,az] | random:m[:seed]")
    source.add_argument("--in", dest="in_path", default=None, help="sample CSV (k,j,re,im)")

    cutoffs = argparse.ArgumentParser(add_help=False)
    cutoffs.add_argument("--cutoffs", default=None, help="strictly increasing list, e.g. 1,2,4,8")

    parser = argparse.ArgumentParser(
        prog="sphframes",
        description="Discrete orthogonality, least squares and tight frames on a Gauss-Legendre sphere grid.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("grid", parents=[common], help="dump the nodal grid as CSV")
    sub.add_parser("quadrature", parents=[common], help="dump the Gauss-Legendre rule as CSV")
    verify = sub.add_parser("verify", parents=[common, degree, cutoffs], help="Gram identity and frame checks")
    verify.add_argument("--format", choices=REPORT_FORMATS, default="json")
    sub.add_parser("analyze", parents=[common, degree, source], help="samples -> coefficient JSON")
    synth = sub.add_parser("synthesize", parents=[common], help="coefficient JSON -> sample CSV")
    synth.add_argument("--in", dest="in_path", default=None, help="coefficient JSON")
    fit = sub.add_parser("fit", parents=[common, degree, source], help="weighted least-squares fit")
    fit.add_argument("--approximant", default=None, help="also write the weighted best approximant CSV")
    sub.add_parser("decompose", parents=[common, source, cutoffs], help="scaling + wavelet frame decomposition")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    if args.verbose:
        _setup_logging(logging.DEBUG)
    elif args.quiet:
        _setup_logging(logging.WARNING)
    else:
        _setup_logging(logging.INFO)

    try:
        config = RunConfig.from_namespace(args)
        return COMMANDS[config.command](config)
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        return EXIT_IO
    except SphFramesError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE if isinstance(exc, ValueError) else EXIT_VERIFY_FAILED


if __name__ == "__main__":
    sys.exit(main())

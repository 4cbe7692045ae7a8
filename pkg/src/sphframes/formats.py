"""Text formats of every external artifact.

CSV floats are written with ``%.17g`` and JSON floats with Python's shortest
round-trip repr, so writing the same data twice yields identical bytes.
Rows are always emitted in canonical order.

* grid CSV ``k,j,theta,phi,weight``
* quadrature CSV ``k,lambda,weight``
* sample CSV ``k,j,re,im`` (complete, each node exactly once)
* coefficient JSON ``{"max_degree": m, "entries": [[n, k, re, im], ...]}``
* report JSON / CSV (flat ``key,value``)
* decomposition JSON
"""

from __future__ import annotations

import csv
import io
import json
import logging
from typing import Any
from typing import Dict
from typing import List
from typing import Tuple

import numpy as np

from .errors import FormatError
from .frames import Decomposition
from .grid import SphericalGrid
from .harmonics import HarmonicIndex
from .legendre import QuadratureRule
from .transform import CoeffVector
from .transform import SampleVector

logger = logging.getLogger(__name__)

GRID_HEADER = ["k", "j", "theta", "phi", "weight"]
QUADRATURE_HEADER = ["k", "lambda", "weight"]
SAMPLE_HEADER = ["k", "j", "re", "im"]
REPORT_HEADER = ["key", "value"]


def format_float(value: float) -> str:
    return "%.17g" % float(value)


def _csv_text(header: List[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Grid / quadrature dumps
# ---------------------------------------------------------------------------


def dump_grid_csv(grid: SphericalGrid) -> str:
    rows = []
    for p in range(grid.size):
        k, j = grid.node_label(p)
        rows.append(
            [
                k,
                j,
                format_float(grid.thetas[k - 1]),
                format_float(grid.phis[j]),
                format_float(grid.node_weights[p]),
            ]
        )
    return _csv_text(GRID_HEADER, rows)


def dump_quadrature_csv(rule: QuadratureRule) -> str:
    rows = [
        [k, format_float(node), format_float(weight)]
        for k, (node, weight) in enumerate(zip(rule.nodes, rule.weights), start=1)
    ]
    return _csv_text(QUADRATURE_HEADER, rows)


# ---------------------------------------------------------------------------
# Samples
# ---------------------------------------------------------------------------


def dump_samples_csv(grid: SphericalGrid, samples: SampleVector) -> str:
    if samples.grid_N != grid.N:
        raise FormatError(f"samples of an order-{samples.grid_N} grid, not order {grid.N}")
    rows = []
    for p, value in enumerate(samples.values):
        k, j = grid.node_label(p)
        rows.append([k, j, format_float(value.real), format_float(value.imag)])
    return _csv_text(SAMPLE_HEADER, rows)


def _parse_sample_row(row: List[str], line: int) -> Tuple[int, int, complex]:
    if len(row) != 4:
        raise FormatError(f"line {line}: expected 4 columns, got {len(row)}")
    try:
        return int(row[0]), int(row[1]), complex(float(row[2]), float(row[3]))
    except ValueError as exc:
        raise FormatError(f"line {line}: cannot parse {row!r}") from exc


def load_samples_csv(text: str, N: int) -> SampleVector:
    """Parse a sample CSV for the order-N grid.

    Rows may come in any order, but every node (k, j) must appear exactly once.

    Raises:
        FormatError: on a bad header, malformed rows, labels outside the
            grid, duplicated or missing nodes.
    """
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != SAMPLE_HEADER:
        raise FormatError(f"sample CSV header must be {','.join(SAMPLE_HEADER)}, got {header!r}")
    n_phi = 2 * N + 1
    values = np.zeros(N * n_phi, dtype=complex)
    seen = np.zeros(N * n_phi, dtype=bool)
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        k, j, value = _parse_sample_row(row, line)
        if not (1 <= k <= N and 0 <= j < n_phi):
            raise FormatError(f"line {line}: node ({k}, {j}) outside the order-{N} grid")
        p = (k - 1) * n_phi + j
        if seen[p]:
            raise FormatError(f"line {line}: node ({k}, {j}) appears twice")
        seen[p] = True
        values[p] = value
    missing = int(np.count_nonzero(~seen))
    if missing:
        first = int(np.argmin(seen))
        raise FormatError(
            f"{missing} node(s) missing, first is ({first // n_phi + 1}, {first % n_phi})"
        )
    logger.debug("read %d samples for the order-%d grid", values.size, N)
    return SampleVector(N, values)


# ---------------------------------------------------------------------------
# Coefficients
# ---------------------------------------------------------------------------


def coeffs_payload(coeffs: CoeffVector) -> Dict[str, Any]:
    entries = []
    for position, value in enumerate(coeffs.entries):
        idx = HarmonicIndex.from_flat(position)
        entries.append([idx.n, idx.k, float(value.real), float(value.imag)])
    return {"max_degree": coeffs.max_degree, "entries": entries}


def dump_coeffs_json(coeffs: CoeffVector) -> str:
    return _json_text(coeffs_payload(coeffs))


def _is_integer(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def load_coeffs_json(text: str) -> CoeffVector:
    """Parse a coefficient file.

    Entries must be sorted by flat index n^2 + n + k and cover every (n, k)
    with n < max_degree exactly once.

    Raises:
        FormatError: on invalid JSON, duplicates, gaps or malformed entries.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"coefficient file is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "max_degree" not in payload or "entries" not in payload:
        raise FormatError('coefficient file needs "max_degree" and "entries"')
    m = payload["max_degree"]
    if not _is_integer(m) or m < 1:
        raise FormatError(f"max_degree must be a positive integer, got {m!r}")
    raw = payload["entries"]
    if not isinstance(raw, list):
        raise FormatError('"entries" must be a list')

    values = np.zeros(m * m, dtype=complex)
    expected = 0
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 4:
            raise FormatError(f"entry {entry!r} is not [n, k, re, im]")
        n, k, re, im = entry
        if not (_is_integer(n) and _is_integer(k)) or abs(k) > n or n < 0:
            raise FormatError(f"entry {entry!r} has an invalid index")
        if n >= m:
            raise FormatError(f"entry ({n}, {k}) exceeds max_degree {m}")
        position = n * n + n + k
        if position < expected:
            raise FormatError(f"entry ({n}, {k}) is duplicated or out of order")
        if position > expected:
            gap = HarmonicIndex.from_flat(expected)
            raise FormatError(f"entry ({gap.n}, {gap.k}) is missing")
        if not (_is_number(re) and _is_number(im)):
            raise FormatError(f"entry ({n}, {k}) has a non-numeric value")
        try:
            values[position] = complex(float(re), float(im))
        except OverflowError as exc:
            raise FormatError(f"entry ({n}, {k}) has a non-numeric value") from exc
        expected += 1
    if expected != m * m:
        gap = HarmonicIndex.from_flat(expected)
        raise FormatError(f"entry ({gap.n}, {gap.k}) is missing")
    return CoeffVector(m, values)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def _flatten(payload: Dict[str, Any], prefix: str = "") -> List[Tuple[str, Any]]:
    rows: List[Tuple[str, Any]] = []
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_flatten(value, name + "."))
        elif isinstance(value, list):
            for i, item in enumerate(value):
                if isinstance(item, dict):
                    rows.extend(_flatten(item, f"{name}.{i}."))
                else:
                    rows.append((f"{name}.{i}", item))
        else:
            rows.append((name, value))
    return rows


def _report_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def dump_report(report: Dict[str, Any], fmt: str = "json") -> str:
    """Serialize a verification report as JSON or as ``key,value`` CSV."""
    if fmt == "json":
        return _json_text(report)
    if fmt == "csv":
        return _csv_text(REPORT_HEADER, [[k, _report_value(v)] for k, v in _flatten(report)])
    raise FormatError(f"unknown report format {fmt!r}")


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------


def decomposition_payload(decomposition: Decomposition) -> Dict[str, Any]:
    grid = decomposition.grid
    ladder = decomposition.ladder
    levels = []
    for coeffs in decomposition.levels():
        rows = []
        for p, value in enumerate(coeffs.values):
            k, j = grid.node_label(p)
            rows.append([k, j, float(value.real), float(value.imag)])
        level = {"j": coeffs.level, "kind": coeffs.kind, "m_j": ladder.m(coeffs.level)}
        if coeffs.kind == "wavelet":
            level["m_next"] = ladder.m(coeffs.level + 1)
        level["frame_coeffs"] = rows
        levels.append(level)
    return {
        "N": grid.N,
        "cutoffs": list(ladder.cutoffs),
        "levels": levels,
        "reconstruction_error": decomposition.reconstruction_error,
        "residual_norm": decomposition.residual_norm,
    }


def dump_decomposition_json(decomposition: Decomposition) -> str:
    return _json_text(decomposition_payload(decomposition))

"""Strict loader for the JSON space-definition format.

    {
      "points":   ["0", "1", "2", "3", "4"],
      "metric":   [[0, 1, "2", ...], ...],      // integers or "p/q" strings
      "relation": [[0, 0], [1, 0], ...],
      "map":      [0, 0, 1, 0, 2]               // optional
    }

Unknown keys are rejected, metric entries are parsed as exact rationals
(decimals refused), and the metric axioms are validated on load so nothing
downstream ever sees a non-metric.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import InputError
from .rational import format_rational, parse_rational
from .space import FiniteSpace, SelfMap, validate_metric

_ALLOWED_KEYS = {"points", "metric", "relation", "map"}


def parse_space_data(data: dict) -> tuple[FiniteSpace, SelfMap | None]:
    """Parse an already-decoded space definition object."""
    if not isinstance(data, dict):
        raise InputError("space definition must be a JSON object")
    unknown = set(data) - _ALLOWED_KEYS
    if unknown:
        raise InputError(f"unknown keys in space definition: {sorted(unknown)}")
    for key in ("points", "metric", "relation"):
        if key not in data:
            raise InputError(f"space definition is missing required key {key!r}")

    points = data["points"]
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise InputError("'points' must be a list of string labels")
    n = len(points)

    metric_rows = data["metric"]
    if not isinstance(metric_rows, list) or len(metric_rows) != n:
        raise InputError(f"'metric' must have {n} rows")
    metric: list[list[Fraction]] = []
    for i, row in enumerate(metric_rows):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"metric row {i} must have {n} entries")
        parsed = []
        for j, entry in enumerate(row):
            try:
                parsed.append(parse_rational(entry))
            except InputError as exc:
                raise InputError(f"metric entry ({i}, {j}): {exc}") from None
        metric.append(parsed)

    relation = data["relation"]
    if not isinstance(relation, list):
        raise InputError("'relation' must be a list of index pairs")
    pairs = []
    for entry in relation:
        if not isinstance(entry, list) or len(entry) != 2 or not all(isinstance(v, int) for v in entry):
            raise InputError(f"relation entry {entry!r} must be a pair of indices")
        pairs.append((entry[0], entry[1]))

    space = FiniteSpace(points, metric, pairs)
    report = validate_metric(space)
    if not report.ok:
        first = report.violations[0]
        raise InputError(
            f"metric is not a metric: {first.axiom} violated at {first.witness} "
            f"(values {', '.join(first.values)})"
        )

    mapping = None
    if "map" in data:
        images = data["map"]
        if not isinstance(images, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in images):
            raise InputError("'map' must be a list of point indices")
        try:
            mapping = SelfMap(images, n)
        except InputError as exc:
            raise InputError(f"map: {exc}") from None
    return space, mapping


def load_space_file(path: str | Path) -> tuple[FiniteSpace, SelfMap | None]:
    """Load and validate a space-definition file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return parse_space_data(data)


def space_to_dict(space: FiniteSpace, mapping: SelfMap | None = None) -> dict:
    """Render an instance in the space-definition format (round-trips exactly)."""
    def entry(v):
        if isinstance(v, Fraction):
            return v.numerator if v.denominator == 1 else format_rational(v)
        return str(v)

    out = {
        "points": list(space.points),
        "metric": [[entry(v) for v in row] for row in space.metric],
        "relation": [list(p) for p in sorted(space.relation)],
    }
    if mapping is not None:
        out["map"] = list(mapping.images)
    return out

"""Orthogonality structure of a space: elements, sequences, preservation, orbits.

Terminology used below:

* a *strong* orthogonal element x0 is related to every point uniformly in
  one direction: (for all y: x0 _|_ y) or (for all y: y _|_ x0);
* a *weak* orthogonal element only needs, per point y, one of x0 _|_ y or
  y _|_ x0 (the direction may vary with y);
* every strong element is weak, so a space with a strong element is an
  orthogonal set, one with only weak elements is a weak orthogonal set.

Quantifiers range over all points including x0 itself, so a weak element
must in particular be related to itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import InputError
from .space import FiniteSpace, SelfMap


@dataclass(frozen=True)
class OrthoClassification:
    strong_elements: frozenset[int]
    weak_elements: frozenset[int]
    verdict: str  # "O-set" | "O_w-set-only" | "neither"

    def to_dict(self) -> dict:
        return {
            "strong_elements": sorted(self.strong_elements),
            "weak_elements": sorted(self.weak_elements),
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class PreservationReport:
    preserving: bool
    violations: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {"preserving": self.preserving, "violations": [list(v) for v in self.violations]}


class SequenceCheck(NamedTuple):
    ok: bool
    first_violation: int | None


@dataclass(frozen=True)
class OrbitInfo:
    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    @property
    def enters_fixed_point(self) -> bool:
        return len(self.cycle) == 1

    def term(self, k: int) -> int:
        """k-th iterate reproduced from prefix + repeated cycle."""
        if k < len(self.prefix):
            return self.prefix[k]
        return self.cycle[(k - len(self.prefix)) % len(self.cycle)]

    def to_dict(self) -> dict:
        return {
            "prefix": list(self.prefix),
            "cycle": list(self.cycle),
            "enters_fixed_point": self.enters_fixed_point,
        }


def strong_orthogonal_elements(space: FiniteSpace) -> frozenset[int]:
    """Points related to every point uniformly in one direction."""
    out = set()
    rel = space.relation
    for x in range(space.n):
        if all((x, y) in rel for y in range(space.n)) or all((y, x) in rel for y in range(space.n)):
            out.add(x)
    return frozenset(out)


def weak_orthogonal_elements(space: FiniteSpace) -> frozenset[int]:
    """Points related (in some direction, possibly varying) to every point."""
    return frozenset(
        x for x in range(space.n) if all(space.related(x, y) for y in range(space.n))
    )


def classify_orthogonality(space: FiniteSpace) -> OrthoClassification:
    strong = strong_orthogonal_elements(space)
    weak = weak_orthogonal_elements(space)
    if strong:
        verdict = "O-set"
    elif weak:
        verdict = "O_w-set-only"
    else:
        verdict = "neither"
    return OrthoClassification(strong, weak, verdict)


def is_ow_sequence(space: FiniteSpace, seq: Sequence[int]) -> SequenceCheck:
    """Check a finite window: every adjacent pair must be orthogonally related.

    Returns (True, None), or (False, n) for the least n whose pair
    (seq[n], seq[n+1]) is unrelated.
    """
    if len(seq) == 0:
        raise InputError("sequence must be non-empty")
    for idx in seq:
        if not (0 <= idx < space.n):
            raise InputError(f"sequence index {idx} out of range")
    for n in range(len(seq) - 1):
        if not space.related(seq[n], seq[n + 1]):
            return SequenceCheck(False, n)
    return SequenceCheck(True, None)


def is_ow_preserving(space: FiniteSpace, mapping: SelfMap) -> PreservationReport:
    """Does the map send orthogonally related pairs to orthogonally related pairs?

    Every related pair is scanned (the premise is the symmetric view: either
    orientation in the stored relation).  Violations are listed exhaustively,
    each reported in its stored orientation.
    """
    seen: set[frozenset[int]] = set()
    violations: list[tuple[int, int]] = []
    for (i, j) in sorted(space.relation):
        key = frozenset((i, j))
        if key in seen:
            continue
        seen.add(key)
        if not space.related(mapping(i), mapping(j)):
            violations.append((i, j))
    return PreservationReport(preserving=not violations, violations=tuple(violations))


def orbit(space: FiniteSpace, mapping: SelfMap, start: int) -> OrbitInfo:
    """Iterate the map from `start` and split the orbit into prefix + cycle.

    Finite spaces guarantee an eventual cycle; the first revisited point
    marks its entry.  Concatenating the prefix with the cycle repeated
    reproduces the full iterate sequence.
    """
    if not (0 <= start < space.n):
        raise InputError(f"start index {start} out of range")
    first_seen: dict[int, int] = {}
    walk: list[int] = []
    x = start
    while x not in first_seen:
        first_seen[x] = len(walk)
        walk.append(x)
        x = mapping(x)
    entry = first_seen[x]
    return OrbitInfo(prefix=tuple(walk[:entry]), cycle=tuple(walk[entry:]))

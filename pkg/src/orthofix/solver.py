"""Certified Picard iteration and hypothesis checking.

The fixed point scheme iterates x_{n+1} = T(x_n).  When the start is a weak
orthogonal element and the map preserves orthogonal relatedness, consecutive
iterates are always orthogonally related, and a contraction constant k that
covers *both orientations* of every related pair guarantees

    d(x_{n+1}, x_{n+2}) <= k * d(x_n, x_{n+1})          (step inequality)
    d(x_n, x_m)        <= k^n / (1 - k) * d(x_0, x_1)   (tail bound, n < m)

Such traces are *certified*: both inequalities are enforced at runtime in
exact arithmetic, and a violation aborts with CertificateError because it
falsifies the supplied k.  A trace started elsewhere (allow_any_start) still
records iterates and step distances but carries no bounds; the inequalities
simply are not theorems there.

On finite spaces the iteration always terminates: the orbit enters a cycle
within n steps, and under a valid certificate the cycle must be a single
fixed point (a longer cycle would keep step distances bounded away from
zero while the geometric bound forces them to zero).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .contraction import ContractionKind, ContractionReport, check_contraction
from .errors import CertificateError, InputError
from .relational import is_ow_preserving, orbit, weak_orthogonal_elements
from .space import FiniteSpace, SelfMap

MODE_ORBITAL_CONTINUITY = "orbital-continuity"
MODE_O1 = "O1"


def required_iterations(k: Fraction, d1: Fraction, eps: Fraction) -> int:
    """Smallest n with k^n / (1 - k) * d1 <= eps, by exact doubling + bisection.

    No logarithms anywhere: the bound is evaluated as an exact rational at
    each probed n.
    """
    k, d1, eps = Fraction(k), Fraction(d1), Fraction(eps)
    if not (0 <= k < 1):
        raise InputError(f"k must lie in [0, 1), got {k}")
    if d1 < 0:
        raise InputError(f"d1 must be non-negative, got {d1}")
    if eps <= 0:
        raise InputError(f"eps must be positive, got {eps}")
    if d1 == 0:
        return 0
    scale = d1 / (1 - k)

    def bound(n: int) -> Fraction:
        return k**n * scale

    if bound(0) <= eps:
        return 0
    if k == 0:
        return 1
    hi = 1
    while bound(hi) > eps:
        hi *= 2
    lo = hi // 2  # bound(lo) > eps, bound(hi) <= eps
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound(mid) <= eps:
            hi = mid
        else:
            lo = mid
    return hi


def certify_fixed_point(space: FiniteSpace, mapping: SelfMap, z: int) -> bool:
    """True iff z maps to itself (equivalently d(z, Tz) = 0)."""
    if not (0 <= z < space.n):
        raise InputError(f"index {z} out of range")
    return mapping(z) == z


@dataclass(frozen=True)
class PicardTrace:
    start: int
    iterates: tuple[int, ...]
    step_distances: tuple
    k: Fraction
    apriori_bounds: tuple | None   # k^n/(1-k) * d(x0, x1); only on certified traces
    converged: bool
    fixed_point: int | None
    certified: bool
    stop_reason: str               # "fixed_point" | "bound_below_eps" | "max_iter"

    @property
    def applications(self) -> int:
        return len(self.iterates) - 1

    def to_dict(self, space: FiniteSpace | None = None) -> dict:
        from .rational import format_rational

        def fmt(v):
            return format_rational(v) if isinstance(v, Fraction) else str(v)

        label = (lambda i: space.points[i]) if space is not None else (lambda i: i)
        return {
            "start": label(self.start),
            "iterates": [label(i) for i in self.iterates],
            "step_distances": [fmt(d) for d in self.step_distances],
            "k": fmt(self.k),
            "apriori_bounds": [fmt(b) for b in self.apriori_bounds] if self.apriori_bounds is not None else None,
            "converged": self.converged,
            "fixed_point": label(self.fixed_point) if self.fixed_point is not None else None,
            "certified": self.certified,
            "stop_reason": self.stop_reason,
            "applications": self.applications,
        }


def picard_solve(
    space: FiniteSpace,
    mapping: SelfMap,
    start: int,
    *,
    k: Fraction | None = None,
    eps: Fraction | None = None,
    max_iter: int = 1000,
    allow_any_start: bool = False,
    allow_inadmissible_k: bool = False,
) -> PicardTrace:
    """Run Picard iteration from `start` with runtime certificates.

    Preconditions (each overridable by the matching flag):
      * `start` must be a weak orthogonal element (`allow_any_start`);
      * an explicit `k` must be at least the scanned minimal generalized
        constant (`allow_inadmissible_k`).  `k` must always lie in [0, 1).

    Without an explicit `k` the certificate-grade constant is computed by
    scanning both orientations of every related pair; if that constant is
    not below 1 there is nothing to certify and the call refuses to run.

    Stops on the first of: exact zero step distance (converged at a fixed
    point), certified tail bound <= eps, or max_iter.
    """
    if not (0 <= start < space.n):
        raise InputError(f"start index {start} out of range")
    if max_iter < 0:
        raise InputError("max_iter must be non-negative")
    weak = weak_orthogonal_elements(space)
    if start not in weak and not allow_any_start:
        raise InputError(
            f"start {space.points[start]!r} is not a weak orthogonal element; "
            "pass allow_any_start to iterate anyway (the trace will be uncertified)"
        )
    if k is None:
        cert = check_contraction(ContractionKind.GENERALIZED_PERP, space, mapping, symmetric=True)
        if not cert.admissible:
            raise InputError(
                "no admissible generalized contraction constant exists for this map; "
                f"supply k explicitly (scan reported minimal_k={cert.minimal_k})"
            )
        k = cert.minimal_k
    else:
        k = Fraction(k)
        if not (0 <= k < 1):
            raise InputError(f"k must lie in [0, 1), got {k}")
        if not allow_inadmissible_k:
            rep = check_contraction(ContractionKind.GENERALIZED_PERP, space, mapping)
            if not rep.feasible or k < rep.minimal_k:
                raise InputError(
                    f"k={k} is below the scanned minimal generalized constant "
                    f"{rep.minimal_k}; pass allow_inadmissible_k to try anyway"
                )
    if eps is not None:
        eps = Fraction(eps)
        if eps <= 0:
            raise InputError("eps must be positive")

    certified = start in weak and is_ow_preserving(space, mapping).preserving

    iterates = [start]
    steps: list = []
    converged = False
    fixed_point: int | None = None
    stop_reason = "max_iter"
    d0 = None
    one_minus_k = 1 - k

    while True:
        x = iterates[-1]
        nxt = mapping(x)
        if nxt == x:
            converged = True
            fixed_point = x
            stop_reason = "fixed_point"
            break
        if len(iterates) > max_iter:
            break
        step = space.d(x, nxt)
        if certified and steps and not (step <= k * steps[-1]):
            raise CertificateError(
                f"step inequality violated at n={len(steps) - 1}: "
                f"d({space.points[x]}, {space.points[nxt]}) = {step} > k * {steps[-1]}; "
                f"k = {k} is not a valid contraction constant for this orbit"
            )
        iterates.append(nxt)
        steps.append(step)
        if d0 is None:
            d0 = step
        if eps is not None and certified:
            n = len(steps)
            if k**n / one_minus_k * d0 <= eps:
                stop_reason = "bound_below_eps"
                break

    bounds = None
    if certified:
        base = d0 if d0 is not None else Fraction(0)
        bounds = tuple(k**n / one_minus_k * base for n in range(len(iterates)))
        # Tail bound audited over every recorded pair: d(x_n, x_m) <= bound(n).
        for n in range(len(iterates)):
            for m in range(n + 1, len(iterates)):
                if not (space.d(iterates[n], iterates[m]) <= bounds[n]):
                    raise CertificateError(
                        f"tail bound violated: d(x_{n}, x_{m}) = "
                        f"{space.d(iterates[n], iterates[m])} > {bounds[n]} with k = {k}"
                    )

    return PicardTrace(
        start=start,
        iterates=tuple(iterates),
        step_distances=tuple(steps),
        k=k,
        apriori_bounds=bounds,
        converged=converged,
        fixed_point=fixed_point,
        certified=certified,
        stop_reason=stop_reason,
    )


@dataclass(frozen=True)
class HypothesisReport:
    mode: str
    has_weak_element: bool
    preserving: bool
    contraction_feasible: bool     # an admissible constant k in [0, 1) exists
    minimal_k: Fraction | None     # certificate-grade constant (both orientations)
    o1_mode_holds: bool
    all_hold: bool
    notes: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        from .rational import format_rational

        if self.minimal_k is None:
            k = None
        elif isinstance(self.minimal_k, Fraction):
            k = format_rational(self.minimal_k)
        else:
            k = str(self.minimal_k)
        return {
            "mode": self.mode,
            "has_weak_element": self.has_weak_element,
            "preserving": self.preserving,
            "contraction_feasible": self.contraction_feasible,
            "minimal_k": k,
            "o1_mode_holds": self.o1_mode_holds,
            "all_hold": self.all_hold,
            "notes": list(self.notes),
        }


def _hypotheses_hold(space: FiniteSpace, mapping: SelfMap, weak: frozenset[int] | None = None) -> bool:
    """Short-circuit form of ``hypothesis_check(...).all_hold`` (orbital mode).

    Used by instance filters that test thousands of candidate maps; checks
    the cheap conditions before the contraction scan.
    """
    if weak is None:
        weak = weak_orthogonal_elements(space)
    if not weak:
        return False
    if not is_ow_preserving(space, mapping).preserving:
        return False
    return check_contraction(ContractionKind.GENERALIZED_PERP, space, mapping, symmetric=True).admissible


def hypothesis_check(
    space: FiniteSpace,
    mapping: SelfMap,
    mode: str = MODE_ORBITAL_CONTINUITY,
) -> HypothesisReport:
    """Evaluate the fixed point theorem's hypotheses on a finite instance.

    Checked: a weak orthogonal element exists; the map preserves orthogonal
    relatedness; an admissible generalized contraction constant k in [0, 1)
    exists (scanned over both orientations of every related pair, which is
    what the convergence certificates require).

    Orbital completeness and, in mode "orbital-continuity", orbital
    continuity hold automatically on finite spaces (every Cauchy sequence is
    eventually constant) and are recorded as such.  Mode "O1" instead checks
    the finite reading of the subsequence condition: whenever the orbit of a
    weak element settles at a fixed point z, the constant tail must be
    orthogonally related to its limit, i.e. z related to z; orbits that do
    not settle impose nothing.
    """
    if mode not in (MODE_ORBITAL_CONTINUITY, MODE_O1):
        raise InputError(f"unknown mode {mode!r}")
    weak = weak_orthogonal_elements(space)
    preserving = is_ow_preserving(space, mapping).preserving
    rep: ContractionReport = check_contraction(
        ContractionKind.GENERALIZED_PERP, space, mapping, symmetric=True
    )
    contraction_ok = rep.admissible
    notes = ["orbital O_w-completeness: holds (finite space)"]
    if mode == MODE_ORBITAL_CONTINUITY:
        o1 = True
        notes.append("orbital O_w-continuity: holds (finite space)")
    else:
        o1 = True
        for w in sorted(weak):
            info = orbit(space, mapping, w)
            if info.enters_fixed_point:
                z = info.cycle[0]
                if not space.related(z, z):
                    o1 = False
                    notes.append(
                        f"(O1) fails from weak element {space.points[w]}: limit "
                        f"{space.points[z]} is not orthogonally related to itself"
                    )
        if o1:
            notes.append("(O1): orbit tails from weak elements are related to their limits")
    all_hold = bool(weak) and preserving and contraction_ok and o1
    return HypothesisReport(
        mode=mode,
        has_weak_element=bool(weak),
        preserving=preserving,
        contraction_feasible=contraction_ok,
        minimal_k=rep.minimal_k if rep.feasible else None,
        o1_mode_holds=o1,
        all_hold=all_hold,
        notes=tuple(notes),
    )

"""The compiled kernel, the rescaled pure scan and the generic scan must be
indistinguishable: same constants, same witnesses, same feasibility, on the
same pair order."""

from fractions import Fraction

import pytest

from orthofix import ContractionKind, FiniteSpace, InputError, SelfMap, check_contraction
from orthofix.contraction import compiled_kernel_loaded

needs_kernel = pytest.mark.skipif(not compiled_kernel_loaded(), reason="compiled kernel not built")

ENGINES = ["scaled", "generic"] + (["compiled"] if compiled_kernel_loaded() else [])


def _report_key(rep):
    return (rep.feasible, rep.minimal_k, rep.witness_max, rep.infeasible_witness, rep.admissible)


def test_engines_agree_on_generated_instances(accepted_instances):
    for space, mapping in accepted_instances:
        for kind in ContractionKind:
            for symmetric in (False, True):
                reports = [
                    check_contraction(kind, space, mapping, symmetric=symmetric, engine=eng)
                    for eng in ENGINES
                ]
                keys = {_report_key(rep) for rep in reports}
                assert len(keys) == 1, (kind, symmetric, reports)


def test_engines_agree_on_five_point(five_point):
    space, mapping = five_point
    for kind in ContractionKind:
        keys = {
            _report_key(check_contraction(kind, space, mapping, engine=eng)) for eng in ENGINES
        }
        assert len(keys) == 1


def test_engines_agree_on_arbitrary_maps():
    # Unfiltered random maps hit the infeasible and vacuous branches too.
    import random

    from orthofix import GenParams, generate_space

    rng = random.Random(99)
    for seed in range(15):
        space = generate_space(GenParams(seed=seed))
        mapping = SelfMap([rng.randrange(space.n) for _ in range(space.n)], space.n)
        for kind in ContractionKind:
            keys = {
                _report_key(check_contraction(kind, space, mapping, engine=eng))
                for eng in ENGINES
            }
            assert len(keys) == 1, (seed, kind)


def test_auto_path_handles_huge_rationals():
    # Entries far beyond int64 force the arbitrary-precision fallback.
    big = Fraction(10**30, 7)
    metric = [
        [Fraction(0), big, big],
        [big, Fraction(0), big],
        [big, big, Fraction(0)],
    ]
    space = FiniteSpace(["a", "b", "c"], metric, [(0, 0), (0, 1), (0, 2)])
    mapping = SelfMap([0, 0, 1], 3)
    auto = check_contraction(ContractionKind.GENERALIZED_PERP, space, mapping)
    generic = check_contraction(ContractionKind.GENERALIZED_PERP, space, mapping, engine="generic")
    assert _report_key(auto) == _report_key(generic)
    with pytest.raises(InputError):
        check_contraction(ContractionKind.GENERALIZED_PERP, space, mapping, engine="compiled")


@needs_kernel
def test_forced_compiled_matches_scaled(five_point):
    space, mapping = five_point
    a = check_contraction(ContractionKind.GENERALIZED_PERP, space, mapping, engine="compiled")
    b = check_contraction(ContractionKind.GENERALIZED_PERP, space, mapping, engine="scaled")
    assert _report_key(a) == _report_key(b)


@needs_kernel
def test_env_toggle_reports_backend(monkeypatch):
    from orthofix import backend_name

    assert backend_name() == "compiled"
    monkeypatch.setenv("ORTHOFIX_NO_EXT", "1")
    assert backend_name() == "pure"

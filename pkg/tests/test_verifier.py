import random

import pytest

from waringlab import factory, verifier
from waringlab.algebra import HomogeneousForm, power_of_linear
from waringlab.factory import Instance
from waringlab.points import CurveSpec, PointSet, ProjectivePoint
from waringlab.testing import examples


def checks_of(verdict):
    return {check["name"]: check["passed"] for check in verdict["checks"]}


def test_worked_instance_passes_case_a():
    report = verifier.classify(examples.worked_instance())
    assert report["overall"] == verifier.PASS
    assert report["passing_cases"] == ["a"]
    assert report["case_label"] == "a"
    assert report["rank_status"] == "constructed"
    (verdict,) = report["verdicts"]
    assert all(checks_of(verdict).values())
    assert verdict["lemma_c2"] == {"result": "Conclusion", "equal": True}
    assert verdict["intersections"]["P_l"]["agrees"]


def test_raw_triple():
    triple = Instance.from_triple(examples.WORKED_FORM, examples.WORKED_COMPLEX, examples.WORKED_REAL)
    report = verifier.classify(triple)
    assert report["rank_status"] == "assumed"
    assert report["expected_case"] is None
    assert report["overall"] == verifier.PASS


def test_hypotheses():
    hypotheses = verifier.check_hypotheses(examples.worked_instance())
    assert hypotheses["passed"]
    assert hypotheses["h1_total"] == 1
    assert [c["name"] for c in hypotheses["checks"]] == [
        "nonempty", "budget", "rank-inequality", "membership-complex", "membership-real", "h1-total",
    ]


def test_empty_sets_are_invalid_input():
    triple = Instance.from_triple(examples.WORKED_FORM, PointSet(2), examples.WORKED_REAL)
    report = verifier.classify(triple)
    assert report["overall"] == verifier.INVALID_INPUT
    assert report["verdicts"] == []


def test_equal_sets_are_outside_scope():
    triple = examples.general_position_triple(random.Random(0), 2, 3)
    report = verifier.classify(triple)
    assert report["overall"] == verifier.OUTSIDE_SCOPE
    failed = [c["name"] for c in report["hypotheses"]["checks"] if not c["passed"]]
    assert failed[0] == "rank-inequality"


def test_a_moved_real_point_breaks_membership():
    moved = factory.perturb_off_curve(examples.worked_instance(), seed=0)
    report = verifier.classify(moved)
    assert report["overall"] == verifier.OUTSIDE_SCOPE
    checks = {c["name"]: c["passed"] for c in report["hypotheses"]["checks"]}
    assert not checks["membership-real"]


def test_threshold_overrides_hide_the_line():
    report = verifier.classify(examples.worked_instance(), {"line": 6})
    assert report["overall"] == verifier.OUTSIDE_SCOPE
    assert verifier.OUTSIDE_SCOPE_NOTE in report["notes"]
    assert report["structure"]["lines"] == []


def test_detect_structure():
    structure = verifier.detect_structure(examples.worked_instance())
    assert len(structure.lines) == 1
    assert structure.lines[0].curve == examples.WORKED_LINE
    assert structure.lines[0].count == 5
    assert not structure.conics
    assert not structure.empty


@pytest.mark.parametrize(
    "case,m,d,reducible",
    [("a", 2, 3, False), ("b", 2, 3, False), ("b", 2, 5, True), ("c", 3, 5, False)],
)
def test_generated_instances_pass_their_case(case, m, d, reducible):
    instance = factory.generate(case, m, d, seed=0, reducible=reducible)
    report = verifier.classify(instance)
    assert report["overall"] == verifier.PASS
    assert report["passing_cases"] == [case]
    for verdict in report["verdicts"]:
        assert verdict["lemma_c2_coherent"]
        for record in verdict["intersections"].values():
            if record.get("agrees"):
                assert record["curve_span"]["real"]


def test_case_c_fails_case_a_on_each_line():
    instance = factory.generate("c", 3, 5, seed=0)
    report = verifier.classify(instance)
    line_verdicts = [v for v in report["verdicts"] if v["case"] == "a"]
    assert len(line_verdicts) == 2
    for verdict in line_verdicts:
        assert not checks_of(verdict)["a.i"]
    (pair_verdict,) = [v for v in report["verdicts"] if v["case"] == "c"]
    assert set(pair_verdict["intersections"]) == {"O_Gamma", "O_l", "O_r"}
    assert checks_of(pair_verdict)["evinces-line0-real"]


def test_reducible_conic_checks_each_branch():
    instance = factory.generate("b", 2, 5, seed=0, reducible=True)
    (verdict,) = [v for v in verifier.classify(instance)["verdicts"] if v["case"] == "b"]
    names = checks_of(verdict)
    assert names["b.iv"]
    assert names["b.ii-complex-branch0"] and names["b.ii-real-branch1"]


def test_verify_case_a_on_the_worked_line():
    verdict = verifier.verify_case_a(examples.worked_instance(), examples.WORKED_LINE)
    checks = checks_of(verdict)
    assert verdict["case"] == "a"
    assert checks["a.i"] and checks["a.iii"]
    assert all(checks.values())


@pytest.mark.parametrize(
    "case,m,d,verify",
    [("b", 2, 3, verifier.verify_case_b), ("c", 3, 5, verifier.verify_case_c)],
)
def test_verify_case_on_the_generated_curve(case, m, d, verify):
    instance = factory.generate(case, m, d, seed=0)
    verdict = verify(instance, instance.curve)
    assert verdict["case"] == case
    assert all(checks_of(verdict).values())


def power_sum(points, d):
    form = HomogeneousForm.zero(points.m + 1, d)
    for point in points:
        form = form + power_of_linear(point.linear_form(), d)
    return form


def test_case_b_needs_more_real_than_complex_points():
    instance = factory.generate("b", 2, 3, seed=0)
    swapped = Instance.from_triple(instance.form, instance.real_points, instance.complex_points)
    verdict = verifier.verify_case_b(swapped, instance.curve)
    checks = checks_of(verdict)
    assert checks["b.i"]
    assert not checks["b.iii"]
    assert not verdict["passed"]
    parameters = verdict["intersections"]["parameters"]
    assert len(parameters["complex"]) == len(instance.real_points)
    assert len(parameters["real"]) == len(instance.complex_points)


def test_case_b_parameters_land_on_the_conic():
    instance = factory.generate("b", 2, 3, seed=0)
    verdict = verifier.verify_case_b(instance, instance.curve)
    for key, points in (("complex", instance.complex_points), ("real", instance.real_points)):
        parameters = verdict["intersections"]["parameters"][key]
        on_conic = [p for p in points if instance.curve.contains(p)]
        assert len(parameters) == len(on_conic)
        assert all(len(parameter) == 2 for parameter in parameters)


def test_case_b_branch_with_exactly_d_points():
    P = ProjectivePoint.of
    d = 3
    conic = CurveSpec.line_pair(
        CurveSpec.line_through(P(0, 0, 1), P(0, 1, 0)), CurveSpec.line_through(P(0, 0, 1), P(1, 0, 0))
    )
    short = [P(0, 1, t) for t in (0, 1, -1)]
    full = [P(1, 0, t) for t in (0, 1, -1, 2)]
    real_points = PointSet(2, tuple(short + full))
    complex_points = PointSet(2, (short[0], full[0]))
    triple = Instance.from_triple(power_sum(real_points, d), complex_points, real_points)
    verdict = verifier.verify_case_b(triple, conic)
    (branches,) = [c for c in verdict["checks"] if c["name"] == "b.iv"]
    assert not branches["passed"]
    assert sorted(branches["detail"]["branches"]) == [d, d + 1]
    assert not verdict["passed"]


def test_disjoint_lines_with_d_plus_one_points_are_excluded():
    d = 3
    first = [ProjectivePoint.of(1, j, 0, 0) for j in range(d + 1)]
    second = [ProjectivePoint.of(0, 0, 1, j) for j in range(d + 1)]
    points = PointSet(3, tuple(first + second))
    triple = Instance.from_triple(power_sum(points, d), PointSet(3, points.points[:2]), points)
    structure = verifier.detect_structure(triple)
    assert structure.empty
    assert verifier.EXCLUDED_PAIR_NOTE in structure.notes
    assert verifier.OUTSIDE_SCOPE_NOTE in structure.notes

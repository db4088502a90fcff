import random

import pytest

from waringlab import binary, factory, files, spans
from waringlab.algebra import Scalar
from waringlab.binary import BinaryForm
from waringlab.points import CurveSpec, PointSet, ProjectivePoint
from waringlab.testing import examples

P = ProjectivePoint.of


def form(*coeffs):
    return BinaryForm(tuple(Scalar.coerce(c) for c in coeffs))


def certificate(instance, name):
    return next(c for c in instance.certificates if c["name"] == name)


def test_worked_instance():
    instance = examples.worked_instance()
    assert instance.form == examples.WORKED_FORM
    assert instance.complex_points == examples.WORKED_COMPLEX
    assert instance.real_points == examples.WORKED_REAL
    assert instance.case == "a"
    assert certificate(instance, "global-complex-rank")["status"] == factory.PASS
    assert certificate(instance, "h1-total")["detail"]["h1"] == 1
    assert all(c["status"] in (factory.PASS, factory.STRUCTURAL_ONLY) for c in instance.certificates)


def test_worked_instance_without_off_curve_points():
    instance = examples.worked_instance(PointSet(2))
    assert len(instance.complex_points) == 2
    assert len(instance.real_points) == 3


def test_coefficients_reproduce_the_form():
    coefficients = examples.worked_instance().coefficients()
    real = {tuple(c["re"] for c in row["point"]): row["coeff"]["re"] for row in coefficients["S_R"]}
    assert real[("1/1", "0/1", "0/1")] == "4/1"
    assert real[("0/1", "0/1", "1/1")] == "1/1"


def test_budget_violation():
    off_curve = PointSet(2, (P(0, 0, 1), P(1, 1, 1), P(1, 2, 3)))
    with pytest.raises(factory.ConstraintViolation) as raised:
        examples.worked_instance(off_curve)
    assert raised.value.certificate == "budget"


def test_line_threshold_violation():
    # x^3 + y^3 has real rank 2: too few points on the line
    with pytest.raises(factory.ConstraintViolation) as raised:
        factory.make_case_a(2, 3, form(1, 0, 0, 1), examples.WORKED_OFF_CURVE, examples.WORKED_LINE)
    assert raised.value.certificate == "a.iii"


def test_off_curve_point_on_the_line():
    with pytest.raises(factory.ConstraintViolation) as raised:
        examples.worked_instance(PointSet(2, (P(1, 2, 0),)))
    assert raised.value.certificate == "genericity"


def test_case_c_needs_two_disjoint_lines():
    gap = random_gap_of_degree(5)
    first = CurveSpec.line_through(P(1, 0, 0), P(0, 1, 0))
    with pytest.raises(factory.ConstraintViolation) as raised:
        factory.make_case_c(2, 5, gap, gap, PointSet(2), first, first)
    assert raised.value.certificate == "ambient-dimension"
    meeting = (
        CurveSpec.line_through(P(1, 0, 0, 0), P(0, 1, 0, 0)),
        CurveSpec.line_through(P(0, 1, 0, 0), P(0, 0, 1, 0)),
    )
    with pytest.raises(factory.ConstraintViolation) as raised:
        factory.make_case_c(3, 5, gap, gap, PointSet(3), *meeting)
    assert raised.value.certificate == "lines-not-disjoint"


def test_case_c_line_threshold():
    # 2 Re((u + iv)^5) has ranks (2, 5); x^5 + y^5 has ranks (2, 2)
    first = CurveSpec.line_through(P(1, 0, 0, 0), P(0, 1, 0, 0))
    second = CurveSpec.line_through(P(0, 0, 1, 0), P(0, 0, 0, 1))
    with pytest.raises(factory.ConstraintViolation) as raised:
        factory.make_case_c(3, 5, form(2, 0, -2, 0, 2, 0), form(1, 0, 0, 0, 0, 1), PointSet(3), first, second)
    assert raised.value.certificate == "c.ii"


def test_reducible_case_needs_concurrent_lines():
    gap = random_gap_of_degree(5)
    first = CurveSpec.line_through(P(1, 0, 0, 0), P(0, 1, 0, 0))
    second = CurveSpec.line_through(P(0, 0, 1, 0), P(0, 0, 0, 1))
    with pytest.raises(factory.ConstraintViolation) as raised:
        factory.make_case_b_reducible(3, 5, gap, gap, PointSet(3), first, second)
    assert raised.value.certificate == "lines-not-concurrent"


def random_gap_of_degree(degree):
    return factory.random_gap(random.Random(0), degree)


@pytest.mark.parametrize("degree", [3, 4, 6])
def test_random_gap_ranks(degree):
    gap = random_gap_of_degree(degree)
    assert gap.is_real
    assert binary.complex_rank(gap)[0] == 2
    assert binary.real_rank(gap)[0] == degree


def test_case_b_on_the_standard_conic():
    gap = random_gap_of_degree(6)
    instance = factory.make_case_b(2, 3, gap, PointSet(2))
    assert len(instance.complex_points) == 2
    assert len(instance.real_points) == 6
    assert all(instance.curve.contains(p) for p in instance.real_points)
    assert certificate(instance, "pullback")["status"] == factory.PASS


@pytest.mark.parametrize(
    "case,m,d,reducible",
    [("a", 2, 3, False), ("a", 3, 4, False), ("b", 2, 3, False), ("b", 3, 3, False), ("b", 2, 5, True), ("c", 3, 5, False)],
)
def test_generate(case, m, d, reducible):
    instance = factory.generate(case, m, d, seed=1, reducible=reducible)
    assert instance.case == case
    assert (instance.m, instance.d) == (m, d)
    assert len(instance.complex_points) < len(instance.real_points)
    assert len(instance.complex_points) + len(instance.real_points) <= 3 * d - 1
    assert instance.real_points.is_real
    assert spans.membership(instance.form, instance.real_points, d, spans.FIELD_REAL)
    assert instance.provenance["seed"] == 1


def test_generate_is_deterministic():
    first = factory.generate("a", 2, 4, seed=3, index=2)
    second = factory.generate("a", 2, 4, seed=3, index=2)
    assert first == second
    assert files.dumps(first.to_json()) == files.dumps(second.to_json())
    assert factory.generate("a", 2, 4, seed=3, index=3) != first


@pytest.mark.parametrize(
    "kwargs,expected",
    [
        (dict(case="a", m=2, d=2), "rank-gap"),
        (dict(case="c", m=2, d=5), "ambient-dimension"),
        (dict(case="c", m=3, d=3), "budget"),
        (dict(case="b", m=2, d=4, reducible=True), "budget"),
        (dict(case="a", m=2, d=3, off_curve_count=2), "budget"),
    ],
)
def test_generate_violations(kwargs, expected):
    with pytest.raises(factory.ConstraintViolation) as raised:
        factory.generate(seed=0, **kwargs)
    assert raised.value.certificate == expected
    assert str(raised.value).startswith(expected)


def test_generate_rejects_unknown_cases():
    with pytest.raises(ValueError):
        factory.generate("d", 2, 3, seed=0)


def test_instance_json():
    instance = examples.worked_instance()
    payload = instance.to_json()
    assert list(payload) == [
        "m", "d", "case", "curve", "P", "S_C", "S_R", "E", "coefficients", "certificates", "provenance",
    ]
    assert factory.Instance.from_json(payload) == instance
    raw = factory.Instance.from_json({"P": payload["P"], "S_C": payload["S_C"], "S_R": payload["S_R"]})
    assert raw.is_raw
    with pytest.raises(ValueError):
        factory.Instance.from_json({"P": payload["P"], "S_C": payload["S_C"]})
    with pytest.raises(ValueError):
        factory.Instance.from_json({**payload, "case": "z"})
    with pytest.raises(ValueError):
        factory.Instance.from_json([])


def test_perturb_off_curve():
    instance = examples.worked_instance()
    moved = factory.perturb_off_curve(instance, seed=0)
    assert moved.complex_points == instance.complex_points
    assert moved.real_points != instance.real_points
    assert "perturbed" in moved.provenance
    result = spans.lemma_c2_check(moved.complex_points, moved.real_points, moved.curve, moved.d)
    assert result == spans.Conclusion(False)
    with pytest.raises(ValueError):
        factory.perturb_off_curve(examples.worked_instance(PointSet(2)), seed=0)

"""Worked examples shared by the test-suite and the ``suite`` command."""
import random
import typing

from .. import common
from ..algebra import Scalar, HomogeneousForm, power_of_linear
from ..binary import BinaryForm
from ..factory import Instance, make_case_a
from ..points import ProjectivePoint, PointSet, CurveSpec, combine_points

# 2x^3 - 6xy^2: complex rank 2 via (x + iy)^3 + (x - iy)^3,
# real rank 3 via 4x^3 - (x + y)^3 - (x - y)^3
WORKED_GAP = BinaryForm(tuple(Scalar(c) for c in (2, 0, -2, 0)))
WORKED_LINE = CurveSpec.line_through(ProjectivePoint.of(1, 0, 0), ProjectivePoint.of(0, 1, 0))
WORKED_OFF_CURVE = PointSet(2, (ProjectivePoint.of(0, 0, 1),))
WORKED_FORM = HomogeneousForm.build(3, 3, {(3, 0, 0): 2, (1, 2, 0): -6, (0, 0, 3): 1})
WORKED_COMPLEX = PointSet(
    2, (ProjectivePoint.of(1, Scalar(0, 1), 0), ProjectivePoint.of(1, Scalar(0, -1), 0), ProjectivePoint.of(0, 0, 1))
)
WORKED_REAL = PointSet(
    2,
    (
        ProjectivePoint.of(1, 0, 0),
        ProjectivePoint.of(1, 1, 0),
        ProjectivePoint.of(1, -1, 0),
        ProjectivePoint.of(0, 0, 1),
    ),
)


def worked_instance(off_curve: typing.Optional[PointSet] = None) -> Instance:
    """2x^3 - 6xy^2 + z^3 on the line z = 0 with E = {[0:0:1]}."""
    return make_case_a(2, 3, WORKED_GAP, WORKED_OFF_CURVE if off_curve is None else off_curve, WORKED_LINE)


def monomial_form(a: int, b: int) -> BinaryForm:
    """x^a y^b as a binary form."""
    return BinaryForm.from_form(HomogeneousForm.build(2, a + b, {(a, b): 1}))


def collinear_points(rng: random.Random, m: int, count: int) -> PointSet:
    """``count`` distinct real points on a random real line of P^m."""
    b0, b1 = common.random_independent_points(rng, m, 2)
    parameters = rng.sample(range(-3 * count, 3 * count), count)
    return PointSet(m, tuple(combine_points([1, t], [b0, b1]) for t in parameters))


def general_position_triple(rng: random.Random, m: int, d: int) -> Instance:
    """A real form with S_C = S_R: equal sizes, so the rank inequality fails."""
    points = PointSet.unique((common.random_real_point(rng, m) for _ in range(d)), m)
    form = HomogeneousForm.zero(m + 1, d)
    for point in points:
        form = form + power_of_linear(point.linear_form(), d)
    return Instance.from_triple(form, points, points)

"""Veronese spans, Hilbert-function defects and span intersections."""
import typing
import logging
import functools
import dataclasses

from . import linalg
from .algebra import Scalar, HomogeneousForm, monomials, multinomial, evaluate_monomial, canonical_coords, ZERO
from .points import ProjectivePoint, PointSet, CurveSpec, split_on_curve

LOGGER = logging.getLogger(__name__)

FIELD_REAL = "R"
FIELD_COMPLEX = "C"

Vector = typing.List[Scalar]


@functools.lru_cache(maxsize=65536)
def _veronese_row(point: ProjectivePoint, degree: int) -> typing.Tuple[Scalar, ...]:
    return tuple(evaluate_monomial(exp, point.coords) for exp in monomials(len(point.coords), degree))


def veronese_row(point: ProjectivePoint, degree: int) -> Vector:
    """nu_d(p): the monomials of degree d evaluated at p, in monomial order."""
    return list(_veronese_row(point, degree))


def veronese_matrix(points: PointSet, degree: int) -> typing.List[Vector]:
    return [veronese_row(p, degree) for p in points]


def form_vector(form: HomogeneousForm) -> Vector:
    """Coordinates of a form in P^N, under which (p . x)^d is nu_d(p)."""
    d = form.degree
    coeffs = form.coeffs
    return [coeffs.get(exp, ZERO) / multinomial(d, exp) for exp in monomials(form.num_vars, d)]


def vector_form(vector: typing.Sequence[Scalar], num_vars: int, degree: int) -> HomogeneousForm:
    exps = monomials(num_vars, degree)
    if len(vector) != len(exps):
        raise ValueError(f"Expected {len(exps)} coordinates, got {len(vector)}.")
    return HomogeneousForm.build(num_vars, degree, {e: v * multinomial(degree, e) for e, v in zip(exps, vector)})


@dataclasses.dataclass(frozen=True)
class SpanReport:
    set_size: int
    span_dim: int
    h1: int
    independent: bool

    def to_json(self):
        return dataclasses.asdict(self)


def h1_ideal(points: PointSet, degree: int) -> SpanReport:
    """Failure of the points to impose independent conditions on forms of the given degree."""
    if not len(points):
        raise ValueError("h1 is only reported for nonempty point sets.")
    if degree < 0:
        raise ValueError(f"Degree must be nonnegative, got {degree}.")
    rank = linalg.rank(veronese_matrix(points, degree))
    h1 = len(points) - rank
    return SpanReport(set_size=len(points), span_dim=rank - 1, h1=h1, independent=h1 == 0)


def h1_or_zero(points: PointSet, degree: int) -> int:
    """h1 with the empty set (and negative degrees for a single point) counted as zero."""
    if not len(points):
        return 0
    if degree < 0:
        return len(points)
    return h1_ideal(points, degree).h1


def _target_vector(target: typing.Union[HomogeneousForm, typing.Sequence[Scalar]]) -> Vector:
    if isinstance(target, HomogeneousForm):
        return form_vector(target)
    return list(target)


def span_coefficients(
    target: typing.Union[HomogeneousForm, typing.Sequence[Scalar]], points: PointSet, degree: int
) -> typing.Optional[Vector]:
    """Coefficients c with target = sum_i c_i nu_d(p_i), or None."""
    vector = _target_vector(target)
    if not len(points):
        return [] if all(v.is_zero for v in vector) else None
    return linalg.solve_left(veronese_matrix(points, degree), vector)


def membership(form: HomogeneousForm, points: PointSet, degree: int, field: str) -> bool:
    """Whether the form lies in the span of nu_d(points) over the given field."""
    if field not in (FIELD_REAL, FIELD_COMPLEX):
        raise ValueError(f"Unknown field {field!r}.")
    if form.degree != degree:
        raise ValueError(f"Form of degree {form.degree} tested in degree {degree}.")
    if form.num_vars != points.m + 1:
        raise ValueError(f"Form in {form.num_vars} variables, points in P^{points.m}.")
    if field == FIELD_REAL and not (form.is_real and points.is_real):
        raise ValueError("Real membership needs a real form and a real point set.")
    # over R the real and imaginary parts separate, so the complex test suffices
    return span_coefficients(form, points, degree) is not None


@dataclasses.dataclass(frozen=True)
class IntersectionPoint:
    """A point of P^N, normalized so its first nonzero coordinate is one."""

    vector: typing.Tuple[Scalar, ...]

    @property
    def is_real(self) -> bool:
        return all(v.is_real for v in self.vector)

    def form(self, num_vars: int, degree: int) -> HomogeneousForm:
        return vector_form(self.vector, num_vars, degree)

    def to_json(self):
        return {"unique": True, "real": self.is_real, "vector": [v.to_json() for v in self.vector]}


@dataclasses.dataclass(frozen=True)
class NotUnique:
    """Projective dimension of an intersection that is not a single point (-1 when empty)."""

    dimension: int

    def to_json(self):
        return {"unique": False, "dimension": self.dimension}


def unique_intersection_point(
    target: typing.Union[HomogeneousForm, typing.Sequence[Scalar]],
    excluded: PointSet,
    curve_points: PointSet,
    degree: int,
) -> typing.Union[IntersectionPoint, NotUnique]:
    """The intersection <target, nu_d(excluded)> cap <nu_d(curve_points)> when it is a point."""
    upper = [_target_vector(target)] + veronese_matrix(excluded, degree)
    lower = veronese_matrix(curve_points, degree)
    if not lower:
        return NotUnique(-1)
    images = []
    for relation in linalg.left_nullspace(upper + lower):
        weights = relation[len(upper) :]
        image = [ZERO] * len(lower[0])
        for w, row in zip(weights, lower):
            if not w.is_zero:
                image = [a + w * b for a, b in zip(image, row)]
        if any(not v.is_zero for v in image):
            images.append(image)
    dimension = linalg.rank(images) - 1 if images else -1
    if dimension != 0:
        LOGGER.debug("Span intersection has dimension %s.", dimension)
        return NotUnique(dimension)
    return IntersectionPoint(canonical_coords(images[0]))


@dataclasses.dataclass(frozen=True)
class HypothesisFails:
    h1: int

    def to_json(self):
        return {"result": "HypothesisFails", "h1": self.h1}


@dataclasses.dataclass(frozen=True)
class Conclusion:
    equal: bool

    def to_json(self):
        return {"result": "Conclusion", "equal": self.equal}


def lemma_c2_check(
    first: PointSet, second: PointSet, curve: CurveSpec, degree: int
) -> typing.Union[HypothesisFails, Conclusion]:
    """Check that two sets evincing one form agree off a curve of degree t.

    Applies when the off-curve part of the union imposes independent
    conditions in degree d - t.
    """
    twist = curve.degree
    if degree <= twist:
        raise ValueError(f"Degree {degree} must exceed the curve degree {twist}.")
    _, first_off = split_on_curve(first, curve)
    _, second_off = split_on_curve(second, curve)
    h1 = h1_or_zero(first_off.union(second_off), degree - twist)
    if h1:
        return HypothesisFails(h1)
    return Conclusion(first_off == second_off)


def catalecticant_rank(form: HomogeneousForm, split: typing.Optional[int] = None) -> int:
    """Rank of the (a, d - a) flattening, a lower bound for the complex rank."""
    d = form.degree
    a = d // 2 if split is None else split
    if not 0 <= a <= d:
        raise ValueError(f"Flattening split {a} is outside 0..{d}.")
    coeffs = form.coeffs
    rows = []
    for beta in monomials(form.num_vars, a):
        row = []
        for gamma in monomials(form.num_vars, d - a):
            exp = tuple(b + g for b, g in zip(beta, gamma))
            row.append(coeffs.get(exp, ZERO) / multinomial(d, exp))
        rows.append(row)
    return linalg.rank(rows)


def spans_meet(first: typing.Sequence[Vector], second: typing.Sequence[Vector]) -> bool:
    """Whether two linear spans (given by spanning rows) intersect nontrivially."""
    return linalg.rank(list(first) + list(second)) < linalg.rank(list(first)) + linalg.rank(list(second))

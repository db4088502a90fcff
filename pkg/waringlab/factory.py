"""Ground-truth instances whose complex and real decompositions differ on a curve."""
import typing
import random
import logging
import dataclasses

from . import binary, common, spans
from .algebra import Scalar, LinearForm, HomogeneousForm, power_of_linear, ZERO
from .binary import BinaryForm, BinaryDecomposition, normalized_signs
from .points import (
    ProjectivePoint,
    PointSet,
    CurveSpec,
    ConicParametrization,
    DegenerateParametrization,
    conic_parametrization,
    standard_conic,
    LINE,
    SMOOTH_CONIC,
    REDUCIBLE_CONIC,
    TWO_DISJOINT_LINES,
)

LOGGER = logging.getLogger(__name__)

CASES = ("a", "b", "c")
PASS = "pass"
FAIL = "fail"
STRUCTURAL_ONLY = "structural-only"

MAX_ATTEMPTS = 50
MAX_OFF_CURVE_ATTEMPTS = 200
DEFAULT_OFF_CURVE_CAP = 2

Certificate = typing.TypedDict(
    "Certificate",
    {"name": str, "status": str, "detail": typing.Dict[str, typing.Any]},
)


class ConstraintViolation(ValueError):
    """Raised when a requested instance cannot satisfy one of its conditions."""

    def __init__(self, certificate: str, message: str):
        super().__init__(f"{certificate}: {message}")
        self.certificate = certificate


def _certificate(name: str, status: typing.Union[bool, str], **detail) -> Certificate:
    if isinstance(status, bool):
        status = PASS if status else FAIL
    return {"name": name, "status": status, "detail": detail}


@dataclasses.dataclass(frozen=True)
class Instance:
    """A real form P with a complex set S_C and a real set S_R that both span it.

    ``case`` and ``curve`` are None for raw triples that did not come from
    the factory.
    """

    m: int
    d: int
    form: HomogeneousForm
    complex_points: PointSet
    real_points: PointSet
    case: typing.Optional[str] = None
    curve: typing.Optional[CurveSpec] = None
    off_curve: typing.Optional[PointSet] = None
    certificates: typing.Tuple[Certificate, ...] = dataclasses.field(default=(), compare=False)
    provenance: typing.Optional[typing.Dict[str, typing.Any]] = dataclasses.field(default=None, compare=False)

    @classmethod
    def from_triple(cls, form: HomogeneousForm, complex_points: PointSet, real_points: PointSet) -> "Instance":
        if form.num_vars != complex_points.m + 1 or complex_points.m != real_points.m:
            raise ValueError("P, S_C and S_R must live in the same projective space.")
        return cls(m=complex_points.m, d=form.degree, form=form, complex_points=complex_points, real_points=real_points)

    @property
    def is_raw(self) -> bool:
        return self.case is None

    def coefficients(self) -> typing.Dict[str, typing.Any]:
        result = {}
        for key, points in (("S_C", self.complex_points), ("S_R", self.real_points)):
            coeffs = spans.span_coefficients(self.form, points, self.d)
            result[key] = None if coeffs is None else normalized_signs(points.points, coeffs, self.d)
        return result

    def to_json(self):
        return {
            "m": self.m,
            "d": self.d,
            "case": self.case,
            "curve": None if self.curve is None else self.curve.to_json(),
            "P": self.form.to_json(),
            "S_C": self.complex_points.to_json(),
            "S_R": self.real_points.to_json(),
            "E": None if self.off_curve is None else self.off_curve.to_json(),
            "coefficients": self.coefficients(),
            "certificates": list(self.certificates),
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data) -> "Instance":
        if not isinstance(data, dict):
            raise ValueError("An instance payload must be a JSON object.")
        try:
            form = HomogeneousForm.from_json(data["P"])
            complex_points = PointSet.from_json(data["S_C"])
            real_points = PointSet.from_json(data["S_R"])
        except KeyError as exception:
            raise ValueError(f"Instance payload is missing {exception}.") from exception
        case = data.get("case")
        if case is not None and case not in CASES:
            raise ValueError(f"Unknown case label {case!r}.")
        if form.num_vars != complex_points.m + 1 or complex_points.m != real_points.m:
            raise ValueError("P, S_C and S_R must live in the same projective space.")
        return cls(
            m=complex_points.m,
            d=form.degree,
            form=form,
            complex_points=complex_points,
            real_points=real_points,
            case=case,
            curve=CurveSpec.from_json(data["curve"]) if data.get("curve") else None,
            off_curve=PointSet.from_json(data["E"]) if data.get("E") else None,
            certificates=tuple(data.get("certificates") or ()),
            provenance=data.get("provenance"),
        )


# Binary building blocks


def _binary_ranks(gap: BinaryForm, label: str) -> typing.Tuple[BinaryDecomposition, BinaryDecomposition, Certificate]:
    if not gap.is_real:
        raise ValueError(f"The {label} gap form must be real.")
    r_c, complex_dec = binary.complex_rank(gap)
    r_r, real_dec = binary.real_rank(gap)
    status = STRUCTURAL_ONLY if real_dec.certificate == binary.SEARCH_BOUNDED else PASS
    if status == STRUCTURAL_ONLY:
        LOGGER.warning("Real rank of the %s gap form is only search-bounded.", label)
    certificate = _certificate(
        f"binary-ranks-{label}",
        status,
        degree=gap.degree,
        complex_rank=r_c,
        real_rank=r_r,
        real_certificate=real_dec.certificate,
    )
    return complex_dec, real_dec, certificate


def _require_exact(*decompositions: BinaryDecomposition):
    for decomposition in decompositions:
        if decomposition.mode != binary.EXACT:
            raise ConstraintViolation(
                "exact-points",
                f"a rank-{decomposition.rank} decomposition has points outside Q(i); "
                "instances need exact point sets",
            )


def _check_budget(d: int, size_c: int, size_r: int):
    if size_c + size_r > 3 * d - 1:
        raise ConstraintViolation("budget", f"{size_c} + {size_r} exceeds 3d-1 = {3 * d - 1}")


def _check_rank_gap(size_c: int, size_r: int):
    if size_c >= size_r:
        raise ConstraintViolation("rank-gap", f"#S_C = {size_c} is not smaller than #S_R = {size_r}")


def _check_off_curve(m: int, off_curve: PointSet):
    if off_curve.m != m:
        raise ValueError(f"Off-curve points live in P^{off_curve.m}, expected P^{m}.")
    if not off_curve.is_real:
        raise ValueError("Off-curve points must be real.")


def _check_shape(m: int, d: int):
    if m < 1:
        raise ValueError(f"Ambient dimension must be positive, got {m}.")
    if d < 2:
        raise ValueError(f"Degree must be at least 2, got {d}.")


# Off-curve genericity


def _genericity(
    off_curve: PointSet, samples: PointSet, curve_points: PointSet, curve: CurveSpec, d: int
) -> typing.List[Certificate]:
    """Exact checks that E sits generically with respect to the curve."""
    if any(curve.contains(e) for e in off_curve):
        raise ConstraintViolation("genericity", "an off-curve point lies on the curve")
    if any(e in curve_points for e in off_curve):
        raise ConstraintViolation("genericity", "an off-curve point repeats a decomposition point")
    excluded = spans.veronese_matrix(off_curve, d)
    curve_span = spans.veronese_matrix(samples, d)
    meets = spans.spans_meet(excluded, curve_span) if excluded else False
    joint = spans.h1_ideal(off_curve.union(samples), d).h1
    twist = spans.h1_or_zero(off_curve, d - curve.degree)
    if meets or joint:
        raise ConstraintViolation("genericity", f"<nu_d(E)> meets the span of the curve (h1 = {joint})")
    if twist:
        raise ConstraintViolation("genericity", f"h1(I_E(d-{curve.degree})) = {twist}")
    return [
        _certificate("span-disjoint", True, off_curve=len(off_curve), curve_samples=len(samples)),
        _certificate("genericity", True, h1=joint),
        _certificate("off-curve-independent", True, twist=curve.degree, h1=twist),
    ]


def _global_certificates(
    form: HomogeneousForm, complex_points: PointSet, real_points: PointSet, d: int
) -> typing.List[Certificate]:
    union = complex_points.union(real_points)
    h1_total = spans.h1_ideal(union, d).h1
    assert spans.membership(form, complex_points, d, spans.FIELD_COMPLEX), "P is not spanned by S_C"
    assert spans.membership(form, real_points, d, spans.FIELD_REAL), "P is not spanned by S_R"
    catalecticant = spans.catalecticant_rank(form)
    complex_status = PASS if catalecticant == len(complex_points) else STRUCTURAL_ONLY
    if complex_status == STRUCTURAL_ONLY:
        LOGGER.info(
            "Catalecticant bound %s does not reach #S_C = %s; complex rank is structural-only.",
            catalecticant,
            len(complex_points),
        )
    return [
        _certificate("membership-complex", True, size=len(complex_points)),
        _certificate("membership-real", True, size=len(real_points)),
        _certificate("independent-complex", spans.h1_ideal(complex_points, d).independent),
        _certificate("independent-real", spans.h1_ideal(real_points, d).independent),
        _certificate("budget", len(complex_points) + len(real_points) <= 3 * d - 1,
                     total=len(complex_points) + len(real_points), bound=3 * d - 1),
        _certificate("rank-gap", len(complex_points) < len(real_points),
                     complex=len(complex_points), real=len(real_points)),
        _certificate("h1-total", h1_total > 0, h1=h1_total),
        _certificate("global-complex-rank", complex_status, catalecticant=catalecticant, size=len(complex_points)),
        _certificate("global-real-rank", STRUCTURAL_ONLY, size=len(real_points)),
    ]


def _power_sum(points: typing.Sequence[ProjectivePoint], m: int, d: int) -> HomogeneousForm:
    result = HomogeneousForm.zero(m + 1, d)
    for point in points:
        result = result + power_of_linear(point.linear_form(), d)
    return result


def _assemble(
    case: str,
    m: int,
    d: int,
    curve_form: HomogeneousForm,
    curve: CurveSpec,
    complex_curve: PointSet,
    real_curve: PointSet,
    off_curve: PointSet,
    certificates: typing.List[Certificate],
    provenance: typing.Optional[typing.Dict[str, typing.Any]],
) -> Instance:
    form = curve_form + _power_sum(off_curve.points, m, d)
    complex_points = complex_curve.union(off_curve)
    real_points = real_curve.union(off_curve)
    certificates = certificates + _global_certificates(form, complex_points, real_points, d)
    LOGGER.info(
        "Built case (%s) instance in P^%s of degree %s with #S_C = %s, #S_R = %s.",
        case,
        m,
        d,
        len(complex_points),
        len(real_points),
    )
    return Instance(
        m=m,
        d=d,
        form=form,
        complex_points=complex_points,
        real_points=real_points,
        case=case,
        curve=curve,
        off_curve=off_curve,
        certificates=tuple(certificates),
        provenance=provenance,
    )


def _on_line(decomposition: BinaryDecomposition, line: CurveSpec) -> PointSet:
    return PointSet(line.m, tuple(binary.line_point(p, line) for p in decomposition.points))


def _line_union_certificate(label: str, complex_line: PointSet, real_line: PointSet, threshold: int) -> Certificate:
    return _certificate(
        label,
        len(complex_line.union(real_line)) >= threshold,
        union=len(complex_line.union(real_line)),
        threshold=threshold,
        complex=len(complex_line),
        real=len(real_line),
    )


def make_case_a(
    m: int,
    d: int,
    gap: BinaryForm,
    off_curve: PointSet,
    line: CurveSpec,
    provenance: typing.Optional[typing.Dict[str, typing.Any]] = None,
) -> Instance:
    """A real binary gap form on a real line plus pure powers of real points off it."""
    _check_shape(m, d)
    _check_off_curve(m, off_curve)
    if line.kind != LINE or line.m != m or not line.is_real:
        raise ValueError("Case (a) needs a real line in P^m.")
    if gap.degree != d:
        raise ValueError(f"The gap form has degree {gap.degree}, expected {d}.")
    complex_dec, real_dec, ranks = _binary_ranks(gap, "line")
    _check_budget(d, complex_dec.rank + len(off_curve), real_dec.rank + len(off_curve))
    _require_exact(complex_dec, real_dec)
    complex_line, real_line = _on_line(complex_dec, line), _on_line(real_dec, line)
    union = complex_line.union(real_line)
    if len(union) < d + 2 or len(complex_line) >= len(real_line):
        raise ConstraintViolation(
            "a.iii",
            f"{len(union)} points on the line (need {d + 2}) with "
            f"{len(complex_line)} complex and {len(real_line)} real",
        )
    _check_rank_gap(len(complex_line) + len(off_curve), len(real_line) + len(off_curve))
    samples = curve_samples(line, d)
    certificates = [ranks, _line_union_certificate("a.iii", complex_line, real_line, d + 2)]
    certificates += _genericity(off_curve, samples, union, line, d)
    return _assemble(
        "a", m, d, binary.embed(gap, line), line, complex_line, real_line, off_curve, certificates, provenance
    )


def _conic_form(decomposition: BinaryDecomposition, parametrization: ConicParametrization, d: int) -> HomogeneousForm:
    """Push sum c_i (s_i u + t_i v)^(2d) forward to sum c_i (p(s_i, t_i) . x)^d."""
    result = HomogeneousForm.zero(parametrization.curve.m + 1, d)
    for point, coeff in zip(decomposition.points, decomposition.coeffs):
        raw = parametrization.raw_coords(*point.coords)
        lead = next(c for c in raw if not c.is_zero)
        # LinearForm rescales to a leading one, so (raw . x)^d = lead^d (linear . x)^d
        result = result + power_of_linear(LinearForm(tuple(raw)), d).scale(coeff * lead**d)
    return result


def conic_samples(parametrization: ConicParametrization, d: int) -> PointSet:
    """2d+1 rational points of the conic; their Veronese images span <nu_d(C)>."""
    points = [parametrization.point(0, 1)] + [parametrization.point(1, j) for j in range(2 * d)]
    return PointSet(parametrization.curve.m, tuple(points))


def curve_samples(curve: CurveSpec, d: int, parametrization: typing.Optional[ConicParametrization] = None) -> PointSet:
    """Points of the curve whose Veronese images form a basis of <nu_d(curve)>."""
    if curve.kind == LINE:
        return PointSet(curve.m, tuple(curve.sample_points(d + 1)))
    if curve.kind == SMOOTH_CONIC:
        if parametrization is None:
            raise ValueError("Sampling a smooth conic needs its parametrization.")
        return conic_samples(parametrization, d)
    node = curve.node() if curve.kind == REDUCIBLE_CONIC else None
    points = [] if node is None else [node]
    for line in curve.components:
        own = [p for p in line.sample_points(d + 2) if p != node]
        points.extend(own[: d if node is not None else d + 1])
    return PointSet(curve.m, tuple(points))


def make_case_b(
    m: int,
    d: int,
    gap: BinaryForm,
    off_curve: PointSet,
    parametrization: typing.Optional[ConicParametrization] = None,
    provenance: typing.Optional[typing.Dict[str, typing.Any]] = None,
) -> Instance:
    """A degree-2d gap form carried onto a smooth real conic, plus off-conic powers.

    Without a parametrization the plane conic xz - y^2 is used (m = 2 only).
    """
    _check_shape(m, d)
    _check_off_curve(m, off_curve)
    if parametrization is None:
        if m != 2:
            raise ValueError("A conic parametrization is required outside P^2.")
        parametrization = standard_conic()
    conic = parametrization.curve
    if conic.kind != SMOOTH_CONIC or conic.m != m or not conic.is_real:
        raise ValueError("Case (b) needs a smooth real conic in P^m.")
    if gap.degree != 2 * d:
        raise ValueError(f"The gap form has degree {gap.degree}, expected 2d = {2 * d}.")
    complex_dec, real_dec, ranks = _binary_ranks(gap, "conic")
    _check_budget(d, complex_dec.rank + len(off_curve), real_dec.rank + len(off_curve))
    _require_exact(complex_dec, real_dec)
    complex_conic = PointSet(m, tuple(parametrization.point(*p.coords) for p in complex_dec.points))
    real_conic = PointSet(m, tuple(parametrization.point(*p.coords) for p in real_dec.points))
    union = complex_conic.union(real_conic)
    if len(union) < 2 * d + 2 or len(complex_conic) >= len(real_conic):
        raise ConstraintViolation(
            "b.iii",
            f"{len(union)} points on the conic (need {2 * d + 2}) with "
            f"{len(complex_conic)} complex and {len(real_conic)} real",
        )
    _check_rank_gap(len(complex_conic) + len(off_curve), len(real_conic) + len(off_curve))
    curve_form = _conic_form(complex_dec, parametrization, d)
    assert curve_form == _conic_form(real_dec, parametrization, d), "conic pushforwards disagree"
    try:
        pulled = binary.pullback_conic(curve_form, parametrization)
    except ValueError as exception:
        raise ConstraintViolation("degenerate-parametrization", str(exception)) from exception
    assert pulled == gap, "the pullback does not recover the gap form"
    certificates = [
        ranks,
        _line_union_certificate("b.iii", complex_conic, real_conic, 2 * d + 2),
        _certificate("pullback", True, degree=2 * d),
    ]
    certificates += _genericity(off_curve, conic_samples(parametrization, d), union, conic, d)
    return _assemble("b", m, d, curve_form, conic, complex_conic, real_conic, off_curve, certificates, provenance)


def make_case_b_reducible(
    m: int,
    d: int,
    first_gap: BinaryForm,
    second_gap: BinaryForm,
    off_curve: PointSet,
    first: CurveSpec,
    second: CurveSpec,
    provenance: typing.Optional[typing.Dict[str, typing.Any]] = None,
) -> Instance:
    """Gap forms on two concurrent real lines, forming a reducible conic."""
    _check_shape(m, d)
    _check_off_curve(m, off_curve)
    conic = CurveSpec.line_pair(first, second)
    if conic.kind != REDUCIBLE_CONIC:
        raise ConstraintViolation("lines-not-concurrent", "the two lines do not meet")
    if not conic.is_real:
        raise ValueError("Case (b) needs a real conic.")
    first_c, first_r, first_ranks = _binary_ranks(first_gap, "first-branch")
    second_c, second_r, second_ranks = _binary_ranks(second_gap, "second-branch")
    _check_budget(
        d,
        first_c.rank + second_c.rank + len(off_curve),
        first_r.rank + second_r.rank + len(off_curve),
    )
    _require_exact(first_c, first_r, second_c, second_r)
    node = conic.node()
    branches = []
    for line, complex_dec, real_dec in ((first, first_c, first_r), (second, second_c, second_r)):
        complex_line, real_line = _on_line(complex_dec, line), _on_line(real_dec, line)
        off_node = complex_line.union(real_line).filter(lambda p: p != node)
        if node in complex_line or node in real_line or len(off_node) < d + 1:
            raise ConstraintViolation(
                "b.iv", f"a branch carries {len(off_node)} points off the node (need {d + 1}, none on it)"
            )
        branches.append((complex_line, real_line))
    complex_conic = branches[0][0].union(branches[1][0])
    real_conic = branches[0][1].union(branches[1][1])
    union = complex_conic.union(real_conic)
    if len(union) < 2 * d + 2 or len(complex_conic) >= len(real_conic):
        raise ConstraintViolation(
            "b.iii",
            f"{len(union)} points on the conic (need {2 * d + 2}) with "
            f"{len(complex_conic)} complex and {len(real_conic)} real",
        )
    _check_rank_gap(len(complex_conic) + len(off_curve), len(real_conic) + len(off_curve))
    samples = curve_samples(conic, d)
    certificates = [
        first_ranks,
        second_ranks,
        _line_union_certificate("b.iii", complex_conic, real_conic, 2 * d + 2),
        _certificate(
            "b.iv", True, branches=[len(c.union(r)) for c, r in branches], threshold=d + 1
        ),
    ]
    certificates += _genericity(off_curve, samples, union, conic, d)
    curve_form = binary.embed(first_gap, first) + binary.embed(second_gap, second)
    return _assemble("b", m, d, curve_form, conic, complex_conic, real_conic, off_curve, certificates, provenance)


def make_case_c(
    m: int,
    d: int,
    first_gap: BinaryForm,
    second_gap: BinaryForm,
    off_curve: PointSet,
    first: CurveSpec,
    second: CurveSpec,
    provenance: typing.Optional[typing.Dict[str, typing.Any]] = None,
) -> Instance:
    """Gap forms on two disjoint real lines plus off-curve powers."""
    _check_shape(m, d)
    if m < 3:
        raise ConstraintViolation("ambient-dimension", f"two disjoint lines need m >= 3, got m = {m}")
    _check_off_curve(m, off_curve)
    pair = CurveSpec.line_pair(first, second)
    if pair.kind != TWO_DISJOINT_LINES:
        raise ConstraintViolation("lines-not-disjoint", "the two lines meet")
    if not pair.is_real:
        raise ValueError("Case (c) needs two real lines.")
    first_c, first_r, first_ranks = _binary_ranks(first_gap, "first-line")
    second_c, second_r, second_ranks = _binary_ranks(second_gap, "second-line")
    _check_budget(
        d,
        first_c.rank + second_c.rank + len(off_curve),
        first_r.rank + second_r.rank + len(off_curve),
    )
    _require_exact(first_c, first_r, second_c, second_r)
    lines = []
    for line, complex_dec, real_dec in ((first, first_c, first_r), (second, second_c, second_r)):
        complex_line, real_line = _on_line(complex_dec, line), _on_line(real_dec, line)
        if len(complex_line.union(real_line)) < d + 2:
            raise ConstraintViolation(
                "c.ii", f"a line carries {len(complex_line.union(real_line))} points (need {d + 2})"
            )
        lines.append((complex_line, real_line))
    complex_curve = lines[0][0].union(lines[1][0])
    real_curve = lines[0][1].union(lines[1][1])
    _check_rank_gap(len(complex_curve) + len(off_curve), len(real_curve) + len(off_curve))
    samples = curve_samples(pair, d)
    certificates = [
        first_ranks,
        second_ranks,
        _line_union_certificate("c.ii-first", lines[0][0], lines[0][1], d + 2),
        _line_union_certificate("c.ii-second", lines[1][0], lines[1][1], d + 2),
    ]
    certificates += _genericity(off_curve, samples, complex_curve.union(real_curve), pair, d)
    curve_form = binary.embed(first_gap, first) + binary.embed(second_gap, second)
    return _assemble("c", m, d, curve_form, pair, complex_curve, real_curve, off_curve, certificates, provenance)


# Seeded generation


def random_gap(rng: random.Random, degree: int) -> BinaryForm:
    """2 Re(lambda (u + z v)^k) for non-real z: complex rank 2, hyperbolic of real rank k."""
    lam = Scalar(common.random_rational(rng, nonzero=True), common.random_rational(rng))
    z = Scalar(common.random_rational(rng), common.random_rational(rng, nonzero=True))
    return BinaryForm(tuple(Scalar(2 * (lam * z**j).re) for j in range(degree + 1)))


def _random_line(rng: random.Random, m: int) -> CurveSpec:
    return CurveSpec.line_through(*common.random_independent_points(rng, m, 2))


def _sample_off_curve(
    rng: random.Random, m: int, d: int, count: int, curve: CurveSpec, samples: PointSet, taken: PointSet
) -> PointSet:
    """Rejection-sample ``count`` real points meeting every genericity check."""
    for attempt in range(MAX_OFF_CURVE_ATTEMPTS):
        candidate = PointSet.unique((common.random_real_point(rng, m) for _ in range(count)), m)
        if len(candidate) != count:
            continue
        try:
            _genericity(candidate, samples, taken, curve, d)
        except ConstraintViolation as violation:
            LOGGER.debug("Off-curve sample %s rejected (%s).", attempt, violation)
            continue
        return candidate
    raise ConstraintViolation("genericity", f"no generic off-curve set after {MAX_OFF_CURVE_ATTEMPTS} draws")


def _off_curve_budget(d: int, curve_size: int, requested: typing.Optional[int]) -> int:
    room = (3 * d - 1 - curve_size) // 2
    if room < 0:
        raise ConstraintViolation("budget", f"curve points alone exceed 3d-1 = {3 * d - 1}")
    if requested is None:
        return min(room, DEFAULT_OFF_CURVE_CAP)
    if requested < 0 or requested > room:
        raise ConstraintViolation("budget", f"{requested} off-curve points do not fit the room of {room}")
    return requested


def _decomposition_points(gap: BinaryForm) -> typing.List[ProjectivePoint]:
    return list(binary.complex_rank(gap)[1].points + binary.real_rank(gap)[1].points)


def _attempt(rng: random.Random, case: str, m: int, d: int, reducible: bool, count: int, provenance) -> Instance:
    if case == "a":
        line = _random_line(rng, m)
        gap = random_gap(rng, d)
        taken = PointSet.unique([binary.line_point(p, line) for p in _decomposition_points(gap)], m)
        off_curve = _sample_off_curve(rng, m, d, count, line, curve_samples(line, d), taken)
        return make_case_a(m, d, gap, off_curve, line, provenance)
    if case == "b" and not reducible:
        basis = common.random_independent_points(rng, m, 3)
        half = Scalar(1, 0) / 2
        conic = CurveSpec.conic_in_plane(basis, [[ZERO, ZERO, half], [ZERO, -Scalar(1), ZERO], [half, ZERO, ZERO]])
        try:
            parametrization = conic_parametrization(conic, basis[0])
        except DegenerateParametrization as exception:
            raise ConstraintViolation("degenerate-parametrization", str(exception)) from exception
        gap = random_gap(rng, 2 * d)
        taken = PointSet.unique([parametrization.point(*p.coords) for p in _decomposition_points(gap)], m)
        samples = curve_samples(conic, d, parametrization)
        off_curve = _sample_off_curve(rng, m, d, count, conic, samples, taken)
        return make_case_b(m, d, gap, off_curve, parametrization, provenance)
    if case == "b":
        node, p, q = common.random_independent_points(rng, m, 3)
        first, second = CurveSpec.line_through(node, p), CurveSpec.line_through(node, q)
        curve = CurveSpec.line_pair(first, second)
    else:
        a, b, c, e = common.random_independent_points(rng, m, 4)
        first, second = CurveSpec.line_through(a, b), CurveSpec.line_through(c, e)
        curve = CurveSpec.line_pair(first, second)
    gaps = (random_gap(rng, d), random_gap(rng, d))
    taken = PointSet.unique(
        [binary.line_point(p, line) for gap, line in zip(gaps, (first, second)) for p in _decomposition_points(gap)],
        m,
    )
    off_curve = _sample_off_curve(rng, m, d, count, curve, curve_samples(curve, d), taken)
    build = make_case_b_reducible if case == "b" else make_case_c
    return build(m, d, gaps[0], gaps[1], off_curve, first, second, provenance)


def generate(
    case: str,
    m: int,
    d: int,
    seed: int,
    index: int = 0,
    reducible: bool = False,
    off_curve_count: typing.Optional[int] = None,
) -> Instance:
    """A seeded instance of the given case; equal arguments always give equal instances."""
    if case not in CASES:
        raise ValueError(f"Unknown case {case!r}; expected one of {CASES}.")
    _check_shape(m, d)
    if d < 3:
        raise ConstraintViolation("rank-gap", "binary forms of degree below 3 have equal real and complex ranks")
    if case == "c" and m < 3:
        raise ConstraintViolation("ambient-dimension", f"two disjoint lines need m >= 3, got m = {m}")
    if case == "b" and m < 2:
        raise ValueError("A conic needs m >= 2.")
    two_lines = case == "c" or (case == "b" and reducible)
    curve_size = 2 * d + 4 if two_lines else (2 * d + 2 if case == "b" else d + 2)
    count = _off_curve_budget(d, curve_size, off_curve_count)
    derived = common.derive_seed("instance", case, m, d, seed, index, reducible, count)
    rng = random.Random(derived)
    provenance = {"seed": seed, "index": index, "derived_seed": derived, "reducible": reducible}
    for attempt in range(MAX_ATTEMPTS):
        try:
            instance = _attempt(rng, case, m, d, reducible, count, provenance)
        except ConstraintViolation as violation:
            LOGGER.debug("Attempt %s for case (%s) rejected: %s", attempt, case, violation)
            continue
        return dataclasses.replace(instance, provenance={**provenance, "attempts": attempt + 1})
    raise ConstraintViolation("genericity", f"no case ({case}) instance after {MAX_ATTEMPTS} attempts")


def perturb_off_curve(instance: Instance, seed: int) -> Instance:
    """Move one off-curve point of S_R to a fresh random real point (a negative control)."""
    if instance.curve is None or not instance.off_curve:
        raise ValueError("Only factory instances with off-curve points can be perturbed.")
    rng = random.Random(common.derive_seed("perturb", seed))
    moved = instance.off_curve.sorted().points[0]
    taken = instance.complex_points.union(instance.real_points)
    while True:
        fresh = common.random_real_point(rng, instance.m)
        if fresh not in taken and not instance.curve.contains(fresh):
            break
    real_points = PointSet(
        instance.m, tuple(fresh if p == moved else p for p in instance.real_points)
    )
    LOGGER.info("Moved off-curve point %s to %s.", moved, fresh)
    return dataclasses.replace(
        instance,
        real_points=real_points,
        certificates=(),
        provenance={**(instance.provenance or {}), "perturbed": str(moved)},
    )

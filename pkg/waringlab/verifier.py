"""Check the real/complex decomposition dichotomy on an instance and report every condition."""
import typing
import logging
import dataclasses

from . import binary, spans
from .algebra import ZERO
from .factory import Instance, curve_samples
from .points import (
    PointSet,
    CurveSpec,
    RichCurve,
    DegenerateParametrization,
    conic_parametrization,
    disjoint_line_pairs,
    find_rich_conics,
    find_rich_lines,
    split_on_curve,
    SMOOTH_CONIC,
    REDUCIBLE_CONIC,
)

LOGGER = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
OUTSIDE_SCOPE = "outside-scope"
INVALID_INPUT = "invalid-input"

OUTSIDE_SCOPE_NOTE = "dichotomy violated: input outside theorem scope"
EXCLUDED_PAIR_NOTE = (
    "two disjoint lines carry exactly d+1 points each; this configuration contributes nothing "
    "to h1 and no case applies"
)

Check = typing.TypedDict("Check", {"name": str, "passed": bool, "detail": typing.Dict[str, typing.Any]})
Verdict = typing.TypedDict(
    "Verdict",
    {
        "case": str,
        "curve": typing.Dict[str, typing.Any],
        "checks": typing.List[Check],
        "intersections": typing.Dict[str, typing.Any],
        "lemma_c2": typing.Dict[str, typing.Any],
        "lemma_c2_coherent": bool,
        "passed": bool,
    },
)


def _check(name: str, passed: bool, **detail) -> Check:
    return {"name": name, "passed": bool(passed), "detail": detail}


def check_hypotheses(inst: Instance) -> typing.Dict[str, typing.Any]:
    """Budget, rank inequality, both memberships and h1 > 0, recorded rather than raised."""
    d = inst.d
    size_c, size_r = len(inst.complex_points), len(inst.real_points)
    checks = [_check("nonempty", size_c > 0 and size_r > 0, complex=size_c, real=size_r)]
    if not checks[0]["passed"]:
        return {"checks": checks, "h1_total": None, "h1_previous_degree": None, "passed": False, "valid": False}
    checks.append(_check("budget", size_c + size_r <= 3 * d - 1, total=size_c + size_r, bound=3 * d - 1))
    checks.append(_check("rank-inequality", size_c < size_r, complex=size_c, real=size_r))
    checks.append(
        _check(
            "membership-complex",
            spans.membership(inst.form, inst.complex_points, d, spans.FIELD_COMPLEX),
        )
    )
    if inst.form.is_real and inst.real_points.is_real:
        checks.append(
            _check("membership-real", spans.membership(inst.form, inst.real_points, d, spans.FIELD_REAL))
        )
    else:
        checks.append(_check("membership-real", False, error="P and S_R must both be real"))
    union = inst.complex_points.union(inst.real_points)
    h1_total = spans.h1_ideal(union, d).h1
    checks.append(_check("h1-total", h1_total > 0, h1=h1_total))
    # which branch of the argument applies: independence in degree d-1 or not
    previous = spans.h1_ideal(union, d - 1).h1
    return {
        "checks": checks,
        "h1_total": h1_total,
        "h1_previous_degree": previous,
        "passed": all(c["passed"] for c in checks),
        "valid": True,
    }


@dataclasses.dataclass(frozen=True)
class Structure:
    lines: typing.Tuple[RichCurve, ...]
    conics: typing.Tuple[RichCurve, ...]
    pairs: typing.Tuple[typing.Tuple[RichCurve, RichCurve], ...]
    notes: typing.Tuple[str, ...] = ()

    @property
    def empty(self) -> bool:
        return not (self.lines or self.conics or self.pairs)

    def to_json(self):
        return {
            "lines": [rich.to_json() for rich in self.lines],
            "conics": [rich.to_json() for rich in self.conics],
            "pairs": [[first.to_json(), second.to_json()] for first, second in self.pairs],
            "notes": list(self.notes),
        }


def detect_structure(inst: Instance, thresholds: typing.Optional[typing.Dict[str, int]] = None) -> Structure:
    """Rich lines (d+2 points), rich conics (2d+2 points) and disjoint pairs of rich lines."""
    thresholds = thresholds or {}
    d = inst.d
    union = inst.complex_points.union(inst.real_points)
    lines = find_rich_lines(union, thresholds.get("line", d + 2))
    conics = find_rich_conics(union, max(5, thresholds.get("conic", 2 * d + 2))) if inst.m >= 2 else []
    pairs = disjoint_line_pairs(lines) if inst.m >= 3 else []
    notes = []
    if not (lines or conics):
        near = [rich for rich in find_rich_lines(union, max(2, d + 1)) if rich.count == d + 1]
        if inst.m >= 3 and disjoint_line_pairs(near):
            notes.append(EXCLUDED_PAIR_NOTE)
        notes.append(OUTSIDE_SCOPE_NOTE)
        LOGGER.warning("No rich line or conic among %s points.", len(union))
    LOGGER.info("Detected %s lines, %s conics and %s disjoint pairs.", len(lines), len(conics), len(pairs))
    return Structure(tuple(lines), tuple(conics), tuple(pairs), tuple(notes))


def _intersection_checks(
    label: str, inst: Instance, samples: PointSet, curve: CurveSpec
) -> typing.Tuple[typing.Optional[spans.IntersectionPoint], typing.Dict[str, typing.Any], typing.List[Check]]:
    """The point <P, nu_d(off-curve)> cap <nu_d(curve)>, computed three ways."""
    d = inst.d
    complex_on, complex_off = split_on_curve(inst.complex_points, curve)
    real_on, real_off = split_on_curve(inst.real_points, curve)
    via_curve = spans.unique_intersection_point(inst.form, complex_off, samples, d)
    via_complex = spans.unique_intersection_point(inst.form, complex_off, complex_on, d)
    via_real = spans.unique_intersection_point(inst.form, real_off, real_on, d)
    unique = isinstance(via_curve, spans.IntersectionPoint)
    agrees = unique and via_curve == via_complex and via_curve == via_real
    real = isinstance(via_curve, spans.IntersectionPoint) and via_curve.is_real
    if not unique:
        LOGGER.warning("%s is not a single point.", label)
    record = {
        "curve_span": via_curve.to_json(),
        "complex_span": via_complex.to_json(),
        "real_span": via_real.to_json(),
        "agrees": agrees,
    }
    checks = [
        _check(f"{label}-unique", unique),
        _check(f"{label}-agrees", agrees),
        _check(f"{label}-real", real),
    ]
    return (via_curve if unique else None), record, checks


def _rank_checks(
    names: typing.Tuple[str, str],
    restricted: binary.BinaryForm,
    target: typing.Sequence,
    complex_points: PointSet,
    real_points: PointSet,
    d: int,
) -> typing.List[Check]:
    """A set evinces the target's rank when its size is that rank and it spans the target."""
    complex_name, real_name = names
    try:
        r_c, _ = binary.complex_rank(restricted)
    except ValueError as exception:
        return [_check(complex_name, False, error=str(exception)), _check(real_name, False, error=str(exception))]
    spanned = spans.span_coefficients(target, complex_points, d) is not None
    checks = [
        _check(complex_name, r_c == len(complex_points) and spanned, rank=r_c, size=len(complex_points))
    ]
    if not (restricted.is_real and real_points.is_real):
        checks.append(_check(real_name, False, error="restricted form or point set is not real"))
        return checks
    r_r, decomposition = binary.real_rank(restricted)
    if decomposition.certificate == binary.SEARCH_BOUNDED:
        LOGGER.warning("Real rank %s is only search-bounded.", r_r)
    spanned = spans.span_coefficients(target, real_points, d) is not None
    checks.append(
        _check(
            real_name,
            r_r == len(real_points) and spanned,
            rank=r_r,
            size=len(real_points),
            certificate=decomposition.certificate,
        )
    )
    return checks


def _lemma(inst: Instance, curve: CurveSpec, off_equal: bool) -> typing.Tuple[typing.Dict[str, typing.Any], bool]:
    try:
        result = spans.lemma_c2_check(inst.complex_points, inst.real_points, curve, inst.d)
    except ValueError as exception:
        return {"result": "not-applicable", "reason": str(exception)}, True
    coherent = not (off_equal and isinstance(result, spans.Conclusion) and not result.equal)
    if not coherent:
        LOGGER.warning("Off-curve sets agree but the independence lemma concludes otherwise.")
    return result.to_json(), coherent


def _verdict(
    case: str,
    inst: Instance,
    curve: CurveSpec,
    checks: typing.List[Check],
    intersections: typing.Dict[str, typing.Any],
) -> Verdict:
    off_equal = next((c["passed"] for c in checks if c["name"].endswith(".i")), False)
    lemma, coherent = _lemma(inst, curve, off_equal)
    passed = all(c["passed"] for c in checks)
    LOGGER.info("Case (%s) on %s: %s.", case, curve.kind, PASS if passed else FAIL)
    return {
        "case": case,
        "curve": curve.to_json(),
        "checks": checks,
        "intersections": intersections,
        "lemma_c2": lemma,
        "lemma_c2_coherent": coherent,
        "passed": passed,
    }


def _off_equality(name: str, inst: Instance, curve: CurveSpec) -> typing.Tuple[PointSet, PointSet, Check]:
    complex_on, complex_off = split_on_curve(inst.complex_points, curve)
    real_on, real_off = split_on_curve(inst.real_points, curve)
    return complex_on, real_on, _check(name, complex_off == real_off, complex=len(complex_off), real=len(real_off))


def _counts(name: str, complex_on: PointSet, real_on: PointSet, threshold: int) -> Check:
    union = len(complex_on.union(real_on))
    return _check(
        name,
        union >= threshold and len(complex_on) < len(real_on),
        union=union,
        threshold=threshold,
        complex=len(complex_on),
        real=len(real_on),
    )


def verify_case_a(inst: Instance, line: CurveSpec) -> Verdict:
    d, m = inst.d, inst.m
    complex_on, real_on, off_check = _off_equality("a.i", inst, line)
    point, record, checks = _intersection_checks("P_l", inst, curve_samples(line, d), line)
    checks.insert(0, off_check)
    if point is None:
        checks.append(_check("a.ii", False, error="P_l is not a single point"))
        checks.append(_check("a.ii-real", False, error="P_l is not a single point"))
    else:
        restricted = binary.restrict_to_line(point.form(m + 1, d), line)
        checks += _rank_checks(("a.ii", "a.ii-real"), restricted, point.vector, complex_on, real_on, d)
    checks.append(_counts("a.iii", complex_on, real_on, d + 2))
    return _verdict("a", inst, line, checks, {"P_l": record})


def _branch_checks(
    inst: Instance, conic: CurveSpec, target: spans.IntersectionPoint, complex_on: PointSet, real_on: PointSet
) -> typing.List[Check]:
    """Split P_C along the two branches with each set's own coefficients and check each piece."""
    d, m = inst.d, inst.m
    node = conic.node()
    checks = []
    for key, on in (("complex", complex_on), ("real", real_on)):
        coeffs = spans.span_coefficients(target.vector, on, d)
        if coeffs is None:
            checks.append(_check(f"b.ii-{key}", False, error="the set does not span P_C"))
            continue
        for index, line in enumerate(conic.components):
            members = [(p, c) for p, c in zip(on, coeffs) if p != node and line.contains(p)]
            vector = [ZERO] * len(target.vector)
            for p, c in members:
                vector = [a + c * b for a, b in zip(vector, spans.veronese_row(p, d))]
            branch = PointSet(m, tuple(p for p, _ in members))
            if all(v.is_zero for v in vector):
                checks.append(_check(f"b.ii-{key}-branch{index}", not members, rank=0, size=len(members)))
                continue
            restricted = binary.restrict_to_line(spans.vector_form(vector, m + 1, d), line)
            names = (f"b.ii-{key}-branch{index}", f"b.ii-{key}-branch{index}")
            if key == "complex":
                checks.append(_rank_checks(names, restricted, vector, branch, PointSet(m), d)[0])
            else:
                checks.append(_rank_checks(names, restricted, vector, PointSet(m), branch, d)[-1])
    return checks


def verify_case_b(inst: Instance, conic: CurveSpec) -> Verdict:
    d, m = inst.d, inst.m
    complex_on, real_on, off_check = _off_equality("b.i", inst, conic)
    checks = [off_check]
    intersections: typing.Dict[str, typing.Any] = {}
    if conic.kind == SMOOTH_CONIC:
        bases = [p for p in real_on.sorted().points + complex_on.sorted().points if p.is_real]
        try:
            if not bases:
                raise DegenerateParametrization("no real point of the conic to parametrize from")
            parametrization = conic_parametrization(conic, bases[0])
        except DegenerateParametrization as exception:
            LOGGER.warning("Degenerate parametrization: %s", exception)
            checks.append(_check("parametrization", False, error=str(exception)))
            checks.append(_counts("b.iii", complex_on, real_on, 2 * d + 2))
            return _verdict("b", inst, conic, checks, intersections)
        intersections["parameters"] = {
            key: [parametrization.parameter_of(p).to_json() for p in on.sorted()]
            for key, on in (("complex", complex_on), ("real", real_on))
        }
        point, record, found = _intersection_checks("P_C", inst, curve_samples(conic, d, parametrization), conic)
        intersections["P_C"] = record
        checks += found
        if point is None:
            checks.append(_check("b.ii", False, error="P_C is not a single point"))
            checks.append(_check("b.ii-real", False, error="P_C is not a single point"))
        else:
            pulled = binary.pullback_conic(point.form(m + 1, d), parametrization)
            checks += _rank_checks(("b.ii", "b.ii-real"), pulled, point.vector, complex_on, real_on, d)
        checks.append(_counts("b.iii", complex_on, real_on, 2 * d + 2))
        return _verdict("b", inst, conic, checks, intersections)
    if conic.kind != REDUCIBLE_CONIC or len(conic.components) != 2 or conic.node() is None:
        checks.append(_check("branches", False, error="reducible conic without two concurrent branches"))
        return _verdict("b", inst, conic, checks, intersections)
    point, record, found = _intersection_checks("P_C", inst, curve_samples(conic, d), conic)
    intersections["P_C"] = record
    checks += found
    if point is None:
        checks.append(_check("b.ii", False, error="P_C is not a single point"))
    else:
        checks += _branch_checks(inst, conic, point, complex_on, real_on)
    checks.append(_counts("b.iii", complex_on, real_on, 2 * d + 2))
    node = conic.node()
    union = complex_on.union(real_on)
    branch_counts = [len(union.filter(lambda p, line=line: p != node and line.contains(p))) for line in conic.components]
    checks.append(_check("b.iv", all(c >= d + 1 for c in branch_counts), branches=branch_counts, threshold=d + 1))
    return _verdict("b", inst, conic, checks, intersections)


def verify_case_c(inst: Instance, pair: CurveSpec) -> Verdict:
    d, m = inst.d, inst.m
    checks = [_check("ambient-dimension", m >= 3, m=m)]
    complex_on, real_on, off_check = _off_equality("c.i", inst, pair)
    checks.append(off_check)
    first, second = pair.components
    per_line = []
    for line in (first, second):
        per_line.append((complex_on.filter(line.contains), real_on.filter(line.contains)))
    unions = [len(c.union(r)) for c, r in per_line]
    checks.append(_check("c.ii", all(u >= d + 2 for u in unions), unions=unions, threshold=d + 2))
    point, record, found = _intersection_checks("O_Gamma", inst, curve_samples(pair, d), pair)
    intersections: typing.Dict[str, typing.Any] = {"O_Gamma": record}
    checks += found
    checks.append(_check("c.iii", point is not None))
    if point is None:
        checks.append(_check("c.iv", False, error="O_Gamma is not a single point"))
        return _verdict("c", inst, pair, checks, intersections)
    samples = [curve_samples(first, d), curve_samples(second, d)]
    projections = [
        spans.unique_intersection_point(point.vector, samples[1], samples[0], d),
        spans.unique_intersection_point(point.vector, samples[0], samples[1], d),
    ]
    intersections["O_l"] = projections[0].to_json()
    intersections["O_r"] = projections[1].to_json()
    unique = all(isinstance(p, spans.IntersectionPoint) for p in projections)
    checks.append(_check("c.iv", unique, real=unique and all(p.is_real for p in projections)))
    if not unique:
        return _verdict("c", inst, pair, checks, intersections)
    for index, (line, projection, (complex_line, real_line)) in enumerate(zip((first, second), projections, per_line)):
        restricted = binary.restrict_to_line(projection.form(m + 1, d), line)
        names = (f"evinces-line{index}", f"evinces-line{index}-real")
        checks += _rank_checks(names, restricted, projection.vector, complex_line, real_line, d)
    return _verdict("c", inst, pair, checks, intersections)


def classify(inst: Instance, thresholds: typing.Optional[typing.Dict[str, int]] = None) -> typing.Dict[str, typing.Any]:
    """Run every applicable case on every detected curve, in a fixed order."""
    hypotheses = check_hypotheses(inst)
    report: typing.Dict[str, typing.Any] = {
        "m": inst.m,
        "d": inst.d,
        "expected_case": inst.case,
        "rank_status": "assumed" if inst.is_raw else "constructed",
        "hypotheses": hypotheses,
        "structure": None,
        "verdicts": [],
        "passing_cases": [],
        "case_label": None,
        "overall": None,
        "notes": [],
    }
    if not hypotheses["valid"]:
        report["overall"] = INVALID_INPUT
        report["notes"].append("S_C and S_R must both be nonempty")
        return report
    if not hypotheses["passed"]:
        report["overall"] = OUTSIDE_SCOPE
        report["notes"].append("hypotheses fail: input outside theorem scope")
        return report
    structure = detect_structure(inst, thresholds)
    report["structure"] = structure.to_json()
    report["notes"] += list(structure.notes)
    verdicts: typing.List[Verdict] = []
    verdicts += [verify_case_a(inst, rich.curve) for rich in structure.lines]
    verdicts += [verify_case_b(inst, rich.curve) for rich in structure.conics]
    verdicts += [verify_case_c(inst, CurveSpec.line_pair(first.curve, second.curve)) for first, second in structure.pairs]
    report["verdicts"] = verdicts
    report["passing_cases"] = sorted({v["case"] for v in verdicts if v["passed"]})
    report["case_label"] = next((v["case"] for v in verdicts if v["passed"]), None)
    if structure.empty:
        report["overall"] = OUTSIDE_SCOPE
    else:
        report["overall"] = PASS if report["case_label"] is not None else FAIL
    LOGGER.info("Overall verdict %s (case %s).", report["overall"], report["case_label"])
    return report

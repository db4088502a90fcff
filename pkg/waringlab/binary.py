"""Complex and real Waring rank of binary forms.

A binary form of degree d is written f = sum_k C(d,k) c_k x^(d-k) y^k and
handled through the Hankel matrices H_r[i][j] = c_(i+j). A kernel vector g
of H_r is read as G(a, b) = sum_j g_j a^(r-j) b^j; when G is square-free its
roots [a:b] are the points of a rank-r decomposition f = sum l_i (a_i x + b_i y)^d.
"""
import heapq
import random
import typing
import logging
import functools
import itertools
import dataclasses
from fractions import Fraction
from math import comb

import sympy

from . import linalg
from .algebra import Scalar, ScalarLike, HomogeneousForm, combine, ZERO, ONE
from .points import ProjectivePoint

LOGGER = logging.getLogger(__name__)

MAX_DEGREE = 16
DEFAULT_SEARCH_DEPTH = 12
GRID_STEPS = 4
PENCIL_BUDGET = 8
BOX_WIDTH = Fraction(1, 10**30)

FIELD_REAL = "R"
FIELD_COMPLEX = "C"

EXACT = "exact"
IMPLICIT = "implicit"

# Real rank certificates.
COMPLEX_LOWER_BOUND = "complex-lower-bound"
HYPERBOLIC = "hyperbolic"
EXACT_KERNEL = "exact-kernel"
SEARCH_BOUNDED = "search-bounded"

T = sympy.Symbol("t")


@dataclasses.dataclass(frozen=True)
class BinaryForm:
    """A binary form through its scaled coefficients c_0..c_d."""

    coeffs: typing.Tuple[Scalar, ...]

    def __post_init__(self):
        coeffs = tuple(Scalar.coerce(c) for c in self.coeffs)
        if len(coeffs) < 2:
            raise ValueError("Binary forms need degree at least one.")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    @property
    def is_real(self) -> bool:
        return all(c.is_real for c in self.coeffs)

    @classmethod
    def from_form(cls, form: HomogeneousForm) -> "BinaryForm":
        if form.num_vars != 2:
            raise ValueError(f"Expected a form in 2 variables, got {form.num_vars}.")
        d = form.degree
        return cls(tuple(form.coefficient((d - k, k)) / comb(d, k) for k in range(d + 1)))

    def to_form(self) -> HomogeneousForm:
        d = self.degree
        return HomogeneousForm.build(
            2, d, {(d - k, k): c * comb(d, k) for k, c in enumerate(self.coeffs)}
        )

    def to_json(self):
        return self.to_form().to_json()

    @classmethod
    def from_json(cls, data) -> "BinaryForm":
        return cls.from_form(HomogeneousForm.from_json(data))


def _check_degree(form: BinaryForm):
    if form.degree > MAX_DEGREE:
        raise ValueError(f"Degree {form.degree} exceeds the supported maximum of {MAX_DEGREE}.")
    if form.is_zero:
        raise ValueError("The zero form has no Waring decomposition.")


def hankel_matrix(form: BinaryForm, r: int) -> typing.List[typing.List[Scalar]]:
    d = form.degree
    if not 1 <= r <= d:
        raise ValueError(f"Hankel size r={r} must satisfy 1 <= r <= {d}.")
    return [[form.coeffs[i + j] for j in range(r + 1)] for i in range(d - r + 1)]


def hankel_kernel(form: BinaryForm, r: int) -> typing.List[HomogeneousForm]:
    """Basis of ker H_r as binary forms of degree r."""
    kernel = linalg.nullspace(hankel_matrix(form, r), ncols=r + 1)
    return [_kernel_form(vector) for vector in kernel]


def _kernel_form(vector: typing.Sequence[Scalar]) -> HomogeneousForm:
    r = len(vector) - 1
    return HomogeneousForm.build(2, r, {(r - j, j): g for j, g in enumerate(vector)})


def _kernel_coeffs(generator: HomogeneousForm) -> typing.List[Scalar]:
    r = generator.degree
    return [generator.coefficient((r - j, j)) for j in range(r + 1)]


def to_sympy(value: Scalar):
    real = sympy.Rational(value.re.numerator, value.re.denominator)
    if value.is_real:
        return real
    return real + sympy.I * sympy.Rational(value.im.numerator, value.im.denominator)


def from_sympy(value) -> Scalar:
    real, imag = sympy.Rational(sympy.re(value)), sympy.Rational(sympy.im(value))
    return Scalar(Fraction(int(real.p), int(real.q)), Fraction(int(imag.p), int(imag.q)))


def _poly(coeffs: typing.Sequence[Scalar]) -> sympy.Poly:
    """Affine polynomial in t from coefficients listed low to high; QQ when real, QQ_I otherwise."""
    domain = sympy.QQ if all(c.is_real for c in coeffs) else sympy.QQ_I
    return sympy.Poly([to_sympy(c) for c in reversed(coeffs)] or [0], T, domain=domain)


def _scalars(poly: sympy.Poly, length: int = 0) -> typing.List[Scalar]:
    """Coefficients of ``poly`` from low to high degree, zero padded to ``length``."""
    coeffs = [] if poly.is_zero else [from_sympy(c) for c in reversed(poly.all_coeffs())]
    return coeffs + [ZERO] * (length - len(coeffs))


def _dehomogenize(generator: HomogeneousForm) -> typing.Tuple[sympy.Poly, int]:
    """g(t) = G(1, t) and the multiplicity of the root at infinity."""
    poly = _poly(_kernel_coeffs(generator))
    at_infinity = generator.degree if poly.is_zero else generator.degree - poly.degree()
    return poly, at_infinity


def is_squarefree(generator: HomogeneousForm) -> bool:
    poly, at_infinity = _dehomogenize(generator)
    return not poly.is_zero and at_infinity <= 1 and poly.is_sqf


def real_root_count(generator: HomogeneousForm) -> int:
    """Distinct real roots of a real G on P^1, infinity included."""
    poly, at_infinity = _dehomogenize(generator)
    if poly.is_zero:
        return 0
    return poly.count_roots() + (1 if at_infinity else 0)


def is_real_rooted(generator: HomogeneousForm) -> bool:
    """True when G is real with deg G distinct real roots in P^1."""
    return generator.is_real and not generator.is_zero and real_root_count(generator) == generator.degree


def is_hyperbolic(form: BinaryForm) -> bool:
    """A real form with d distinct real roots has real rank d."""
    return is_real_rooted(form.to_form())


def split_roots(generator: HomogeneousForm) -> typing.Optional[typing.List[ProjectivePoint]]:
    """The roots of a square-free G if it splits into linear factors over Q(i)."""
    poly, at_infinity = _dehomogenize(generator)
    roots: typing.List[ProjectivePoint] = []
    if at_infinity:
        roots.append(ProjectivePoint.of(0, 1))
    if poly.degree() >= 1:
        _, factors = sympy.factor_list(poly.as_expr(), T, extension=sympy.I)
        for factor, _ in factors:
            factor = sympy.Poly(factor, T)
            if factor.degree() != 1:
                return None
            a, b = factor.all_coeffs()
            roots.append(ProjectivePoint((ONE, from_sympy(-b / a))))
    return sorted(roots, key=lambda p: p.sort_key())


@dataclasses.dataclass(frozen=True)
class BinaryDecomposition:
    """f = sum_i coeffs[i] * (points[i] . (x, y))^d, or its implicit counterpart.

    In implicit mode the points are the roots of ``generator`` and the
    coefficient at the root t_i (chart [1 - shift*t : t]) is residue(t_i).
    """

    rank: int
    field: str
    mode: str
    generator: HomogeneousForm
    points: typing.Tuple[ProjectivePoint, ...] = ()
    coeffs: typing.Tuple[Scalar, ...] = ()
    chart_shift: int = 0
    residue: typing.Tuple[Scalar, ...] = ()
    boxes: typing.Optional[typing.Tuple[typing.Tuple[Fraction, Fraction, Fraction, Fraction], ...]] = None
    certificate: str = ""

    def reconstruct(self, degree: int) -> HomogeneousForm:
        if self.mode != EXACT:
            raise ValueError("Only exact decompositions can be expanded.")
        return combine([(c, p.linear_form()) for c, p in zip(self.coeffs, self.points)], degree)

    def to_json(self):
        return {
            "rank": self.rank,
            "field": self.field,
            "mode": self.mode,
            "certificate": self.certificate,
            "generator": self.generator.to_json(),
            "points": [p.to_json() for p in self.points],
            "coeffs": [c.to_json() for c in self.coeffs],
            "chart_shift": self.chart_shift,
            "residue": [c.to_json() for c in self.residue],
            "boxes": None
            if self.boxes is None
            else [[f"{v.numerator}/{v.denominator}" for v in box] for box in self.boxes],
        }


def _exact_coefficients(form: BinaryForm, points: typing.Sequence[ProjectivePoint]):
    d = form.degree
    rows = [[p.coords[0] ** (d - k) * p.coords[1] ** k for k in range(d + 1)] for p in points]
    return linalg.solve_left(rows, list(form.coeffs))


def _chart_shift(generator: HomogeneousForm) -> int:
    for shift in itertools.chain([0], *([s, -s] for s in range(1, generator.degree + 2))):
        if not generator.evaluate([Scalar(-shift), ONE]).is_zero:
            return shift
    raise AssertionError("A nonzero binary form cannot vanish at every chart point.")


def _power_sums(monic: typing.Sequence[Scalar], count: int) -> typing.List[Scalar]:
    """Newton power sums p_0..p_(count-1) of the roots of a monic polynomial."""
    r = len(monic) - 1
    elementary = [monic[r - k] * (-1) ** k for k in range(r + 1)]
    sums = [Scalar(r)]
    for k in range(1, count):
        total = ZERO
        for i in range(1, min(k, r) + 1):
            sign = (-1) ** (i - 1)
            if i < k:
                total = total + elementary[i] * sums[k - i] * sign
            else:
                total = total + elementary[i] * i * sign
        sums.append(total)
    return sums


def _implicit(form: BinaryForm, generator: HomogeneousForm, field: str, certificate: str) -> BinaryDecomposition:
    d, r = form.degree, generator.degree
    shift = _chart_shift(generator)
    # chart [a:b] = [1 - shift*t : t], so f(x, y) = f'(x, y - shift*x)
    shifted_generator = generator.substitute([[ONE, -Scalar(shift)], [ZERO, ONE]])
    shifted_form = BinaryForm.from_form(form.to_form().substitute([[ONE, ZERO], [Scalar(shift), ONE]]))
    g_coeffs = _kernel_coeffs(shifted_generator)
    assert not g_coeffs[r].is_zero, "chart shift left a root at infinity"
    monic_coeffs = [c / g_coeffs[r] for c in g_coeffs]
    monic = _poly(monic_coeffs)
    moments = shifted_form.coeffs
    numerator = _poly(
        [sum((monic_coeffs[p + k + 1] * moments[k] for k in range(r - p)), ZERO) for p in range(r)]
    )
    residue = (numerator * monic.diff(T).invert(monic)).rem(monic)
    # Tr(R t^k) over Q(i)[t]/(g) must reproduce every moment.
    sums = _power_sums(monic_coeffs, r)
    power = residue
    for k in range(d + 1):
        trace = sum((c * sums[j] for j, c in enumerate(_scalars(power))), ZERO)
        if trace != moments[k]:
            raise AssertionError(f"Implicit decomposition fails the trace check at k={k}.")
        power = (power * sympy.Poly(T, T)).rem(monic)
    boxes = _isolating_boxes(monic) if monic.domain == sympy.QQ else None
    LOGGER.debug("Implicit rank-%s decomposition with chart shift %s.", r, shift)
    return BinaryDecomposition(
        rank=r,
        field=field,
        mode=IMPLICIT,
        generator=generator,
        chart_shift=shift,
        residue=tuple(_scalars(residue, r)),
        boxes=boxes,
        certificate=certificate,
    )


def _isolating_boxes(poly: sympy.Poly):
    """Boxes (re_low, re_high, im_low, im_high) around every root of a real polynomial."""
    eps = sympy.Rational(BOX_WIDTH.numerator, BOX_WIDTH.denominator)
    try:
        real_part, complex_part = poly.intervals(all=True, eps=eps)
    except (sympy.polys.polyerrors.PolynomialError, NotImplementedError) as exception:
        LOGGER.warning("Root isolation failed: %s", exception)
        return None
    boxes = []
    for (low, high), _ in real_part:
        boxes.append((from_sympy(low).re, from_sympy(high).re, Fraction(0), Fraction(0)))
    # complex corners come as sympy numbers low = a + b*I, high = c + d*I
    for (low, high), _ in complex_part:
        low, high = from_sympy(low), from_sympy(high)
        boxes.append((low.re, high.re, low.im, high.im))
    return tuple(boxes)


def decompose(form: BinaryForm, generator: HomogeneousForm, field: str, certificate: str = "") -> BinaryDecomposition:
    """Decomposition supported on the roots of the square-free kernel element ``generator``."""
    points = split_roots(generator)
    if points is None:
        return _implicit(form, generator, field, certificate)
    coeffs = _exact_coefficients(form, points)
    assert coeffs is not None, "generator roots do not span the form"
    kept = [(p, c) for p, c in zip(points, coeffs) if not c.is_zero]
    decomposition = BinaryDecomposition(
        rank=len(kept),
        field=field,
        mode=EXACT,
        generator=generator,
        points=tuple(p for p, _ in kept),
        coeffs=tuple(c for _, c in kept),
        certificate=certificate,
    )
    assert decomposition.reconstruct(form.degree) == form.to_form(), "exact reconstruction failed"
    return decomposition


def root_pool(size: int) -> typing.List[ProjectivePoint]:
    """Prescribable roots: 0, 1, -1, infinity, then rationals of growing height."""
    values: typing.List[Fraction] = [Fraction(0)]
    height = 1
    while len(values) < size:
        for numerator in range(1, height + 1):
            for denominator in range(1, height + 1):
                value = Fraction(numerator, denominator)
                if max(numerator, denominator) == height and value not in values:
                    values.extend([value, -value])
        height += 1
    pool = [ProjectivePoint((ONE, Scalar(v))) for v in values]
    pool.insert(min(3, len(pool)), ProjectivePoint.of(0, 1))
    return pool[:size]


def _member(kernel: typing.Sequence[HomogeneousForm], weights: typing.Sequence[ScalarLike]) -> HomogeneousForm:
    candidate = HomogeneousForm.zero(2, kernel[0].degree)
    for weight, g in zip(weights, kernel):
        candidate = candidate + g.scale(weight)
    return candidate


def _vanishing(
    kernel: typing.Sequence[HomogeneousForm], roots: typing.Sequence[ProjectivePoint]
) -> typing.List[typing.List[Scalar]]:
    """Weight vectors of the kernel members vanishing at ``roots``."""
    conditions = [[g.evaluate(root.coords) for g in kernel] for root in roots]
    return linalg.nullspace(conditions, ncols=len(kernel))


def _prescribed(
    kernel: typing.Sequence[HomogeneousForm], pool: typing.Sequence[ProjectivePoint]
) -> typing.Iterator[HomogeneousForm]:
    """Kernel members vanishing at len(kernel) - 1 prescribed pool roots."""
    for roots in itertools.combinations(pool, len(kernel) - 1):
        solutions = _vanishing(kernel, roots)
        if len(solutions) != 1:
            continue
        candidate = _member(kernel, solutions[0])
        if not candidate.is_zero:
            yield candidate


def _random_members(kernel: typing.Sequence[HomogeneousForm], seed: int) -> typing.Iterator[HomogeneousForm]:
    rng = random.Random(seed)
    while True:
        candidate = _member(kernel, [rng.randint(-5, 5) for _ in kernel])
        if not candidate.is_zero:
            yield candidate


def _common_factor_is_squarefree(kernel: typing.Sequence[HomogeneousForm]) -> bool:
    polys, at_infinity = zip(*(_dehomogenize(g) for g in kernel))
    if min(at_infinity) > 1:
        return False
    return functools.reduce(lambda a, b: a.gcd(b), polys).is_sqf


def _squarefree_member(kernel: typing.Sequence[HomogeneousForm], depth: int) -> typing.Optional[HomogeneousForm]:
    """A square-free kernel member, preferring one whose roots lie in Q(i)."""
    if len(kernel) == 1:
        return kernel[0] if is_squarefree(kernel[0]) else None
    if not _common_factor_is_squarefree(kernel):
        return None
    fallback = None
    structured = itertools.chain(
        itertools.islice(_prescribed(kernel, root_pool(max(depth, len(kernel)))), depth), kernel
    )
    for candidate in structured:
        if not is_squarefree(candidate):
            continue
        if split_roots(candidate) is not None:
            return candidate
        fallback = fallback or candidate
    if fallback is not None:
        return fallback
    # a generic member is square-free once the common factor is
    return next(g for g in _random_members(kernel, len(kernel)) if is_squarefree(g))


@functools.lru_cache(maxsize=256)
def complex_rank(form: BinaryForm, depth: int = DEFAULT_SEARCH_DEPTH) -> typing.Tuple[int, BinaryDecomposition]:
    """Smallest r whose Hankel kernel has a square-free member, with a decomposition."""
    _check_degree(form)
    for r in range(1, form.degree + 1):
        kernel = hankel_kernel(form, r)
        if not kernel:
            continue
        generator = _squarefree_member(kernel, depth)
        if generator is None:
            continue
        LOGGER.debug("Complex rank %s (kernel dimension %s).", r, len(kernel))
        return r, decompose(form, generator, FIELD_COMPLEX, "sylvester")
    raise AssertionError("H_d always has a square-free kernel member.")


def _usable(form: BinaryForm, candidate: HomogeneousForm) -> bool:
    """Real-rooted, and every split root carries a nonzero coefficient."""
    if not is_real_rooted(candidate):
        return False
    points = split_roots(candidate)
    if points is None:
        return True
    coeffs = _exact_coefficients(form, points)
    return coeffs is not None and not any(c.is_zero for c in coeffs)


def _circle_point(s: Fraction) -> typing.Tuple[Scalar, Scalar]:
    """[a:b] running once around P^1(R) as s runs over [-2, 2)."""
    s = (s + 2) % 4 - 2
    if s < -1:
        return Scalar(-(2 + s)), ONE
    if s > 1:
        return Scalar(2 - s), ONE
    return ONE, Scalar(s)


def _pencil_search(
    form: BinaryForm, first: HomogeneousForm, second: HomogeneousForm, depth: int
) -> typing.Optional[HomogeneousForm]:
    """A usable member of the real pencil a*first + b*second, if the search meets one.

    The pencil is sampled on a symmetric grid around P^1(R). Intervals are then
    bisected best first, ranked by the larger real root count at their ends,
    down to ``depth`` halvings and at most ``PENCIL_BUDGET * depth`` midpoints.
    """
    counts: typing.Dict[Fraction, int] = {}

    def visit(s: Fraction) -> typing.Optional[HomogeneousForm]:
        a, b = _circle_point(s)
        candidate = first.scale(a) + second.scale(b)
        counts[s] = real_root_count(candidate)
        return candidate if counts[s] == candidate.degree and _usable(form, candidate) else None

    # s = -2 and s = 2 both land on [0:1]
    grid = [Fraction(j, GRID_STEPS) for j in range(-2 * GRID_STEPS, 2 * GRID_STEPS + 1)]
    for s in grid:
        found = visit(s)
        if found is not None:
            return found
    heap = [(-max(counts[lo], counts[hi]), 0, lo, hi) for lo, hi in zip(grid, grid[1:])]
    heapq.heapify(heap)
    evaluations = 0
    while heap and evaluations < PENCIL_BUDGET * depth:
        _, level, lo, hi = heapq.heappop(heap)
        if level >= depth:
            continue
        mid = (lo + hi) / 2
        evaluations += 1
        found = visit(mid)
        if found is not None:
            LOGGER.debug("Pencil search succeeded at s=%s after %s midpoints.", mid, evaluations)
            return found
        heapq.heappush(heap, (-max(counts[lo], counts[mid]), level + 1, lo, mid))
        heapq.heappush(heap, (-max(counts[mid], counts[hi]), level + 1, mid, hi))
    return None


def _pencils(
    kernel: typing.Sequence[HomogeneousForm], depth: int
) -> typing.Iterator[typing.Tuple[HomogeneousForm, HomogeneousForm]]:
    """The kernel itself when it is a pencil, else the pencils through len(kernel) - 2 pool roots."""
    if len(kernel) == 2:
        yield kernel[0], kernel[1]
        return
    for roots in itertools.combinations(root_pool(max(depth, len(kernel))), len(kernel) - 2):
        solutions = _vanishing(kernel, roots)
        if len(solutions) == 2:
            yield _member(kernel, solutions[0]), _member(kernel, solutions[1])


def _real_generators(
    form: BinaryForm, kernel: typing.Sequence[HomogeneousForm], depth: int
) -> typing.Iterator[HomogeneousForm]:
    if len(kernel) == 1:
        if _usable(form, kernel[0]):
            yield kernel[0]
        return
    for candidate in _prescribed(kernel, root_pool(max(depth, len(kernel)))):
        if _usable(form, candidate):
            yield candidate
    for first, second in itertools.islice(_pencils(kernel, depth), depth):
        found = _pencil_search(form, first, second, depth)
        if found is not None:
            yield found


@functools.lru_cache(maxsize=256)
def real_rank(form: BinaryForm, depth: int = DEFAULT_SEARCH_DEPTH) -> typing.Tuple[int, BinaryDecomposition]:
    """Real Waring rank with a real decomposition and how its minimality is known.

    The certificate is ``hyperbolic`` (d distinct real roots force rank d),
    ``complex-lower-bound`` (the complex rank is attained), ``exact-kernel``
    (every smaller Hankel kernel was one-dimensional and tested exactly) or
    ``search-bounded`` (a larger kernel was searched through prescribed roots
    and pencil bisection down to ``depth`` without success).
    """
    _check_degree(form)
    if not form.is_real:
        raise ValueError("Real rank is only defined for real forms.")
    d = form.degree
    lower, _ = complex_rank(form, depth)
    hyperbolic = is_hyperbolic(form)
    searched = False
    for r in [d] if hyperbolic else range(lower, d + 1):
        kernel = hankel_kernel(form, r)
        if not kernel:
            continue
        generator = next(_real_generators(form, kernel, depth), None)
        if generator is None:
            searched = searched or len(kernel) > 1
            continue
        if hyperbolic:
            certificate = HYPERBOLIC
        elif r == lower:
            certificate = COMPLEX_LOWER_BOUND
        elif searched:
            certificate = SEARCH_BOUNDED
        else:
            certificate = EXACT_KERNEL
        LOGGER.debug("Real rank %s certified as %s.", r, certificate)
        return r, decompose(form, generator, FIELD_REAL, certificate)
    raise AssertionError("A real decomposition of length d always exists.")


def restrict(form: HomogeneousForm, basis_rows: typing.Sequence[typing.Sequence[Scalar]]) -> HomogeneousForm:
    """Carry a form in the span of powers of points y . basis_rows to the same powers of y."""
    return form.substitute(linalg.right_inverse(basis_rows))


def restrict_to_line(form: HomogeneousForm, line) -> BinaryForm:
    return BinaryForm.from_form(restrict(form, line.rows()))


def pullback_conic(form: HomogeneousForm, parametrization) -> BinaryForm:
    """Binary form of twice the degree with (p(s,t) . x)^d sent to (s u + t v)^(2d)."""
    curve = parametrization.curve
    if form.num_vars != curve.m + 1:
        raise ValueError(f"Form in {form.num_vars} variables, conic in P^{curve.m}.")
    restricted = restrict(form, curve.rows())
    return BinaryForm.from_form(restricted.compose(parametrization.dual_substitution()))


def embed(form: BinaryForm, line) -> HomogeneousForm:
    """Push a binary form onto a line: u -> b0 . x, v -> b1 . x."""
    num_vars = line.m + 1
    images = [
        HomogeneousForm.build(
            num_vars, 1, {tuple(1 if k == i else 0 for k in range(num_vars)): c for i, c in enumerate(b.coords)}
        )
        for b in line.basis
    ]
    return form.to_form().compose(images)


def line_point(point: ProjectivePoint, line) -> ProjectivePoint:
    """The image of [a:b] under the embedding of P^1 as ``line``."""
    b0, b1 = line.basis
    a, b = point.coords
    return ProjectivePoint(tuple(a * x + b * y for x, y in zip(b0.coords, b1.coords)))


def normalized_signs(
    points: typing.Sequence[ProjectivePoint], coeffs: typing.Sequence[Scalar], degree: int
) -> typing.List[typing.Dict[str, typing.Any]]:
    """For even degree split each real coefficient into a sign and a positive scale."""
    rows = []
    for point, coeff in zip(points, coeffs):
        entry: typing.Dict[str, typing.Any] = {"point": point.to_json(), "coeff": coeff.to_json()}
        if degree % 2 == 0 and coeff.is_real:
            entry["sign"] = 1 if coeff.re > 0 else -1
            entry["scale"] = f"{abs(coeff.re).numerator}/{abs(coeff.re).denominator}"
        rows.append(entry)
    return rows

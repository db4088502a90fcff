"""Projective points, point sets and the curves the classifier looks for."""
import typing
import logging
import itertools
import dataclasses

from . import linalg
from .algebra import Scalar, ScalarLike, LinearForm, HomogeneousForm, canonical_coords, ZERO, ONE

LOGGER = logging.getLogger(__name__)

LINE = "Line"
SMOOTH_CONIC = "SmoothConic"
REDUCIBLE_CONIC = "ReducibleConic"
TWO_DISJOINT_LINES = "TwoDisjointLines"
CURVE_KINDS = (LINE, SMOOTH_CONIC, REDUCIBLE_CONIC, TWO_DISJOINT_LINES)


class DegenerateParametrization(ValueError):
    """Raised when a conic cannot be rationally parametrized from the given data."""


@dataclasses.dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^m with canonical coordinates (first nonzero coordinate is one)."""

    coords: typing.Tuple[Scalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", canonical_coords(self.coords))

    @classmethod
    def of(cls, *coords: ScalarLike) -> "ProjectivePoint":
        return cls(tuple(Scalar.coerce(c) for c in coords))

    @property
    def m(self) -> int:
        return len(self.coords) - 1

    @property
    def is_real(self) -> bool:
        return all(c.is_real for c in self.coords)

    def conjugate(self) -> "ProjectivePoint":
        return ProjectivePoint(tuple(c.conjugate() for c in self.coords))

    def linear_form(self) -> LinearForm:
        return LinearForm(self.coords)

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords)

    def to_json(self):
        return [c.to_json() for c in self.coords]

    @classmethod
    def from_json(cls, data) -> "ProjectivePoint":
        if not isinstance(data, list):
            raise ValueError(f"A point is a list of coordinates, got {data!r}.")
        return cls(tuple(Scalar.from_json(c) for c in data))

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


def combine_points(coefficients: typing.Sequence[ScalarLike], basis: typing.Sequence[ProjectivePoint]) -> ProjectivePoint:
    """The point sum_j coefficients[j] * basis[j] (using canonical representatives)."""
    width = len(basis[0].coords)
    coords = [ZERO] * width
    for coeff, point in zip(coefficients, basis):
        coeff = Scalar.coerce(coeff)
        coords = [a + coeff * b for a, b in zip(coords, point.coords)]
    return ProjectivePoint(tuple(coords))


@dataclasses.dataclass(frozen=True)
class PointSet:
    """An ordered collection of distinct points of P^m; comparisons ignore order."""

    m: int
    points: typing.Tuple[ProjectivePoint, ...] = ()

    def __post_init__(self):
        points = tuple(self.points)
        for point in points:
            if point.m != self.m:
                raise ValueError(f"Point {point} is not in P^{self.m}.")
        if len(set(points)) != len(points):
            raise ValueError("Point sets may not contain duplicate points.")
        object.__setattr__(self, "points", points)

    @classmethod
    def of(cls, points: typing.Iterable[ProjectivePoint], m: typing.Optional[int] = None) -> "PointSet":
        points = tuple(points)
        if m is None:
            if not points:
                raise ValueError("The ambient dimension of an empty point set must be given.")
            m = points[0].m
        return cls(m, points)

    @classmethod
    def unique(cls, points: typing.Iterable[ProjectivePoint], m: int) -> "PointSet":
        """Build a set from points that may repeat, keeping first occurrences."""
        return cls(m, tuple(dict.fromkeys(points)))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, point):
        return point in self.points

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.m == other.m and set(self.points) == set(other.points)

    def __hash__(self):
        return hash((self.m, frozenset(self.points)))

    @property
    def is_real(self) -> bool:
        return all(p.is_real for p in self.points)

    @property
    def field_tag(self) -> str:
        return "R" if self.is_real else "C"

    def union(self, other: "PointSet") -> "PointSet":
        self._check_dim(other)
        return PointSet.unique(self.points + other.points, self.m)

    def difference(self, other: "PointSet") -> "PointSet":
        self._check_dim(other)
        return PointSet(self.m, tuple(p for p in self.points if p not in other.points))

    def intersection(self, other: "PointSet") -> "PointSet":
        self._check_dim(other)
        return PointSet(self.m, tuple(p for p in self.points if p in other.points))

    def filter(self, predicate: typing.Callable[[ProjectivePoint], bool]) -> "PointSet":
        return PointSet(self.m, tuple(p for p in self.points if predicate(p)))

    def conjugate(self) -> "PointSet":
        return PointSet(self.m, tuple(p.conjugate() for p in self.points))

    def sorted(self) -> "PointSet":
        return PointSet(self.m, tuple(sorted(self.points, key=lambda p: p.sort_key())))

    def rows(self) -> typing.List[typing.List[Scalar]]:
        return [list(p.coords) for p in self.points]

    def _check_dim(self, other: "PointSet"):
        if other.m != self.m:
            raise ValueError(f"Cannot combine point sets in P^{self.m} and P^{other.m}.")

    def to_json(self):
        return {"m": self.m, "field": self.field_tag, "points": [p.to_json() for p in self.points]}

    @classmethod
    def from_json(cls, data) -> "PointSet":
        try:
            return cls(int(data["m"]), tuple(ProjectivePoint.from_json(p) for p in data["points"]))
        except (KeyError, TypeError) as exception:
            raise ValueError(f"Malformed point set payload: {exception}") from exception


def conjugation_orbit(points: PointSet) -> PointSet:
    """The smallest conjugation-stable set containing ``points``."""
    return points.union(points.conjugate())


def _quadratic(matrix, y: typing.Sequence[Scalar]) -> Scalar:
    return sum(
        (matrix[i][j] * y[i] * y[j] for i in range(3) for j in range(3) if not matrix[i][j].is_zero),
        ZERO,
    )


def _bilinear(matrix, y: typing.Sequence[Scalar], z: typing.Sequence[Scalar]) -> Scalar:
    return sum(
        (matrix[i][j] * y[i] * z[j] for i in range(3) for j in range(3) if not matrix[i][j].is_zero),
        ZERO,
    )


def _normalize_matrix(matrix) -> typing.Tuple[typing.Tuple[Scalar, ...], ...]:
    flat = canonical_coords(entry for row in matrix for entry in row)
    return tuple(tuple(flat[3 * i : 3 * i + 3]) for i in range(3))


def _cross(a: typing.Sequence[Scalar], b: typing.Sequence[Scalar]) -> typing.List[Scalar]:
    return [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]


@dataclasses.dataclass(frozen=True)
class CurveSpec:
    """A line, a conic inside a plane, or a pair of lines.

    ``basis`` spans the linear hull (two points for a line, three for a
    conic). Conics carry a symmetric 3x3 ``matrix`` in the coordinates of
    that basis. Pairs and reducible conics list their lines in
    ``components``.
    """

    kind: str
    m: int
    basis: typing.Tuple[ProjectivePoint, ...]
    matrix: typing.Optional[typing.Tuple[typing.Tuple[Scalar, ...], ...]] = None
    components: typing.Tuple["CurveSpec", ...] = ()

    def __post_init__(self):
        if self.kind not in CURVE_KINDS:
            raise ValueError(f"Unknown curve kind {self.kind!r}.")

    @classmethod
    def line_through(cls, p: ProjectivePoint, q: ProjectivePoint) -> "CurveSpec":
        if p == q:
            raise ValueError("A line needs two distinct points.")
        if p.m != q.m:
            raise ValueError("Points live in different projective spaces.")
        basis = _canonical_basis([p, q])
        return cls(LINE, p.m, basis)

    @classmethod
    def conic_in_plane(
        cls,
        basis: typing.Sequence[ProjectivePoint],
        matrix: typing.Sequence[typing.Sequence[ScalarLike]],
        components: typing.Sequence["CurveSpec"] = (),
    ) -> "CurveSpec":
        """A conic y Q y^T = 0 in the coordinates y of the plane spanned by ``basis``."""
        if len(basis) != 3:
            raise ValueError("A plane is spanned by three points.")
        m = basis[0].m
        rows = [list(p.coords) for p in basis]
        if linalg.rank(rows) != 3:
            raise ValueError("Plane basis points are collinear.")
        canonical = _canonical_basis(basis)
        # Re-express Q in the canonical basis: new = T old, Q' = T Q T^T.
        change = [linalg.solve_left(rows, list(p.coords)) for p in canonical]
        q = [[Scalar.coerce(v) for v in row] for row in matrix]
        if any(q[i][j] != q[j][i] for i in range(3) for j in range(3)):
            raise ValueError("Conic matrices must be symmetric.")
        tq = [[sum((change[i][k] * q[k][j] for k in range(3)), ZERO) for j in range(3)] for i in range(3)]
        moved = [[sum((tq[i][k] * change[j][k] for k in range(3)), ZERO) for j in range(3)] for i in range(3)]
        if all(entry.is_zero for row in moved for entry in row):
            raise ValueError("The zero matrix does not define a conic.")
        kind = SMOOTH_CONIC if not linalg.determinant(moved).is_zero else REDUCIBLE_CONIC
        ordered = tuple(sorted(components, key=lambda c: c.sort_key()))
        return cls(kind, m, canonical, _normalize_matrix(moved), ordered)

    @classmethod
    def line_pair(cls, first: "CurveSpec", second: "CurveSpec") -> "CurveSpec":
        """Two lines: disjoint ones give TwoDisjointLines, concurrent ones a reducible conic."""
        for line in (first, second):
            if line.kind != LINE:
                raise ValueError("line_pair needs two lines.")
        if first.m != second.m:
            raise ValueError("Lines live in different projective spaces.")
        if first == second:
            raise ValueError("The two lines coincide.")
        stacked = [list(p.coords) for p in first.basis + second.basis]
        if linalg.rank(stacked) == 4:
            ordered = tuple(sorted((first, second), key=lambda c: c.sort_key()))
            return cls(TWO_DISJOINT_LINES, first.m, (), None, ordered)
        plane = [p for p in first.basis]
        plane.append(next(p for p in second.basis if linalg.rank([list(q.coords) for q in plane + [p]]) == 3))
        rows = [list(p.coords) for p in plane]
        normals = []
        for line in (first, second):
            local = [linalg.solve_left(rows, list(p.coords)) for p in line.basis]
            normals.append(_cross(local[0], local[1]))
        n1, n2 = normals
        half = Scalar(1, 0) / 2
        matrix = [[(n1[i] * n2[j] + n2[i] * n1[j]) * half for j in range(3)] for i in range(3)]
        return cls.conic_in_plane(plane, matrix, (first, second))

    @property
    def degree(self) -> int:
        return 1 if self.kind == LINE else 2

    def rows(self) -> typing.List[typing.List[Scalar]]:
        return [list(p.coords) for p in self.basis]

    def plane_coordinates(self, point: ProjectivePoint) -> typing.Optional[typing.List[Scalar]]:
        """Coordinates of ``point`` in the basis, or None if it is outside the linear hull."""
        return linalg.solve_left(self.rows(), list(point.coords))

    def contains(self, point: ProjectivePoint) -> bool:
        if point.m != self.m:
            raise ValueError(f"Point {point} is not in P^{self.m}.")
        if self.kind == TWO_DISJOINT_LINES:
            return any(line.contains(point) for line in self.components)
        y = self.plane_coordinates(point)
        if y is None:
            return False
        if self.kind == LINE:
            return True
        return _quadratic(self.matrix, y).is_zero

    @property
    def is_real(self) -> bool:
        return self == self.conjugate()

    def conjugate(self) -> "CurveSpec":
        if self.kind == TWO_DISJOINT_LINES:
            first, second = (line.conjugate() for line in self.components)
            return CurveSpec.line_pair(first, second)
        basis = tuple(p.conjugate() for p in self.basis)
        if self.kind == LINE:
            return CurveSpec(LINE, self.m, _canonical_basis(basis))
        matrix = [[entry.conjugate() for entry in row] for row in self.matrix]
        return CurveSpec.conic_in_plane(basis, matrix, tuple(c.conjugate() for c in self.components))

    def sort_key(self):
        if self.kind == TWO_DISJOINT_LINES:
            return (self.kind, tuple(c.sort_key() for c in self.components))
        matrix = () if self.matrix is None else tuple(e.sort_key() for row in self.matrix for e in row)
        return (self.kind, tuple(p.sort_key() for p in self.basis), matrix)

    def sample_points(self, count: int) -> typing.List[ProjectivePoint]:
        """Distinct points of a line (b0 + j*b1 and b1)."""
        if self.kind != LINE:
            raise ValueError("Sampling is only provided for lines.")
        b0, b1 = self.basis
        points = [b1] + [combine_points([ONE, Scalar(j)], [b0, b1]) for j in range(count - 1)]
        return points[:count]

    def node(self) -> typing.Optional[ProjectivePoint]:
        """Intersection point of the two components of a reducible conic."""
        if self.kind != REDUCIBLE_CONIC or len(self.components) != 2:
            return None
        first, second = self.components
        kernel = linalg.left_nullspace(first.rows() + second.rows())
        if len(kernel) != 1:
            return None
        return combine_points(kernel[0][:2], first.basis)

    def to_json(self):
        return {
            "kind": self.kind,
            "m": self.m,
            "basis": [p.to_json() for p in self.basis],
            "matrix": None
            if self.matrix is None
            else [[entry.to_json() for entry in row] for row in self.matrix],
            "components": [c.to_json() for c in self.components],
        }

    @classmethod
    def from_json(cls, data) -> "CurveSpec":
        try:
            kind = data["kind"]
            components = tuple(cls.from_json(c) for c in data.get("components", []))
            basis = [ProjectivePoint.from_json(p) for p in data.get("basis", [])]
            if kind == LINE:
                return cls.line_through(*basis)
            if kind == TWO_DISJOINT_LINES:
                return cls.line_pair(*components)
            matrix = [[Scalar.from_json(e) for e in row] for row in data["matrix"]]
            return cls.conic_in_plane(basis, matrix, components)
        except (KeyError, TypeError) as exception:
            raise ValueError(f"Malformed curve payload: {exception}") from exception


def _canonical_basis(points: typing.Sequence[ProjectivePoint]) -> typing.Tuple[ProjectivePoint, ...]:
    rows = linalg.rref([list(p.coords) for p in points])
    if len(rows) != len(points):
        raise ValueError("Basis points are linearly dependent.")
    return tuple(ProjectivePoint(tuple(row)) for row in rows)


def split_on_curve(points: PointSet, curve: CurveSpec) -> typing.Tuple[PointSet, PointSet]:
    """Partition into (points on the curve, points off the curve)."""
    if points.m != curve.m:
        raise ValueError(f"Point set in P^{points.m} and curve in P^{curve.m}.")
    on = tuple(p for p in points if curve.contains(p))
    off = tuple(p for p in points if p not in on)
    return PointSet(points.m, on), PointSet(points.m, off)


@dataclasses.dataclass(frozen=True)
class RichCurve:
    curve: CurveSpec
    count: int

    def to_json(self):
        return {"curve": self.curve.to_json(), "count": self.count}


def find_rich_lines(points: PointSet, threshold: int) -> typing.List[RichCurve]:
    """Every line holding at least ``threshold`` points, richest first."""
    if threshold < 2:
        raise ValueError(f"Line thresholds must be at least 2, got {threshold}.")
    seen = set()
    found = []
    for p, q in itertools.combinations(points.points, 2):
        line = CurveSpec.line_through(p, q)
        if line in seen:
            continue
        seen.add(line)
        count = sum(1 for r in points if line.contains(r))
        if count >= threshold:
            found.append(RichCurve(line, count))
    found.sort(key=lambda rich: (-rich.count, rich.curve.sort_key()))
    LOGGER.debug("Found %s lines with at least %s points.", len(found), threshold)
    return found


_QUADRATIC_MONOMIALS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


def _conic_through(coords: typing.Sequence[typing.Sequence[Scalar]]):
    rows = [[y[i] * y[j] for i, j in _QUADRATIC_MONOMIALS] for y in coords]
    kernel = linalg.nullspace(rows, ncols=6)
    if len(kernel) != 1:
        return None
    q = kernel[0]
    half = Scalar(1, 0) / 2
    return [
        [q[0], q[1] * half, q[2] * half],
        [q[1] * half, q[3], q[4] * half],
        [q[2] * half, q[4] * half, q[5]],
    ]


def _branch_lines(plane, matrix, coords, members) -> typing.List[CurveSpec]:
    """Lines contained in a reducible conic that pass through two member points."""
    lines: typing.List[CurveSpec] = []
    for i, j in itertools.combinations(members, 2):
        if not _bilinear(matrix, coords[i], coords[j]).is_zero:
            continue
        line = CurveSpec.line_through(
            combine_points(coords[i], plane), combine_points(coords[j], plane)
        )
        if line not in lines:
            lines.append(line)
    return lines


def _planes(points: PointSet):
    """Group indices of points by the plane they span, keeping planes in discovery order."""
    planes: typing.Dict[typing.Tuple, typing.Tuple[typing.List[ProjectivePoint], typing.List[int]]] = {}
    for triple in itertools.combinations(range(len(points)), 3):
        rows = [list(points.points[k].coords) for k in triple]
        if linalg.rank(rows) != 3:
            continue
        key = linalg.row_space_key(rows)
        if key in planes:
            continue
        basis = [ProjectivePoint(tuple(row)) for row in linalg.rref(rows)]
        members = [
            k
            for k, p in enumerate(points)
            if linalg.solve_left([list(b.coords) for b in basis], list(p.coords)) is not None
        ]
        planes[key] = (basis, members)
    return list(planes.values())


def find_rich_conics(points: PointSet, threshold: int) -> typing.List[RichCurve]:
    """Every smooth or reducible conic holding at least ``threshold`` points, richest first."""
    if threshold < 5:
        raise ValueError(f"Conic thresholds must be at least 5, got {threshold}.")
    found: typing.List[RichCurve] = []
    for basis, members in _planes(points):
        if len(members) < threshold:
            continue
        rows = [list(b.coords) for b in basis]
        coords = {k: linalg.solve_left(rows, list(points.points[k].coords)) for k in members}
        covered: typing.List[typing.FrozenSet[int]] = []
        for subset in itertools.combinations(members, 5):
            if any(set(subset) <= group for group in covered):
                continue
            matrix = _conic_through([coords[k] for k in subset])
            if matrix is None:
                continue
            incident = frozenset(k for k in members if _quadratic(matrix, coords[k]).is_zero)
            if len(incident) > 5:
                covered.append(incident)
            if len(incident) < threshold:
                continue
            components: typing.List[CurveSpec] = []
            if linalg.determinant(matrix).is_zero:
                components = _branch_lines(basis, matrix, coords, sorted(incident))
            curve = CurveSpec.conic_in_plane(basis, matrix, components)
            if all(rich.curve != curve for rich in found):
                found.append(RichCurve(curve, len(incident)))
    found.sort(key=lambda rich: (-rich.count, rich.curve.sort_key()))
    LOGGER.debug("Found %s conics with at least %s points.", len(found), threshold)
    return found


def disjoint_line_pairs(lines: typing.Sequence[RichCurve]) -> typing.List[typing.Tuple[RichCurve, RichCurve]]:
    pairs = []
    for first, second in itertools.combinations(lines, 2):
        stacked = first.curve.rows() + second.curve.rows()
        if linalg.rank(stacked) == 4:
            pairs.append((first, second))
    return pairs


@dataclasses.dataclass(frozen=True)
class ConicParametrization:
    """p(s, t) = basis^T M (s^2, st, t^2) for a smooth conic in a plane."""

    curve: CurveSpec
    matrix: typing.Tuple[typing.Tuple[Scalar, ...], ...]

    def plane_point(self, s: ScalarLike, t: ScalarLike) -> typing.List[Scalar]:
        s, t = Scalar.coerce(s), Scalar.coerce(t)
        monomial = (s * s, s * t, t * t)
        return [sum((self.matrix[i][k] * monomial[k] for k in range(3)), ZERO) for i in range(3)]

    def point(self, s: ScalarLike, t: ScalarLike) -> ProjectivePoint:
        return combine_points(self.plane_point(s, t), self.curve.basis)

    def raw_coords(self, s: ScalarLike, t: ScalarLike) -> typing.List[Scalar]:
        """Ambient coordinates of p(s, t) without rescaling."""
        coords = [ZERO] * (self.curve.m + 1)
        for y, b in zip(self.plane_point(s, t), self.curve.basis):
            coords = [a + y * c for a, c in zip(coords, b.coords)]
        return coords

    def parameter_of(self, point: ProjectivePoint) -> ProjectivePoint:
        y = self.curve.plane_coordinates(point)
        if y is None or not self.curve.contains(point):
            raise ValueError(f"{point} is not on the conic.")
        inverse = linalg.inverse(self.matrix)
        a, b, c = (sum((inverse[i][k] * y[k] for k in range(3)), ZERO) for i in range(3))
        if not a.is_zero:
            return ProjectivePoint((a, b))
        return ProjectivePoint((b, c))

    def dual_substitution(self) -> typing.List[HomogeneousForm]:
        """Plane variables as quadrics in (u, v): q = M^{-T} (u^2, 2uv, v^2)."""
        inverse = linalg.inverse(self.matrix)
        basis = ((2, 0), (1, 1), (0, 2))
        weights = (Scalar(1), Scalar(2), Scalar(1))
        return [
            HomogeneousForm.build(
                2, 2, {basis[k]: inverse[k][i] * weights[k] for k in range(3)}
            )
            for i in range(3)
        ]


def conic_parametrization(curve: CurveSpec, base: ProjectivePoint) -> ConicParametrization:
    """Parametrize ``curve`` by lines through the point ``base`` of the conic."""
    if curve.kind != SMOOTH_CONIC:
        raise DegenerateParametrization(f"{curve.kind} curves have no conic parametrization.")
    if not curve.contains(base):
        raise DegenerateParametrization(f"{base} is not on the conic.")
    p0 = curve.plane_coordinates(base)
    units = [[ONE if i == j else ZERO for j in range(3)] for i in range(3)]
    q1, q2 = [u for u in units if linalg.rank([p0, u]) == 2][:2]
    if linalg.rank([p0, q1, q2]) < 3:
        q2 = next(u for u in units if linalg.rank([p0, q1, u]) == 3)
    Q = curve.matrix
    q11, q12, q22 = _quadratic(Q, q1), _bilinear(Q, q1, q2), _quadratic(Q, q2)
    b1, b2 = _bilinear(Q, p0, q1), _bilinear(Q, p0, q2)
    columns = [
        [q11 * a - 2 * b1 * c for a, c in zip(p0, q1)],
        [2 * q12 * a - 2 * (b1 * c + b2 * e) for a, c, e in zip(p0, q2, q1)],
        [q22 * a - 2 * b2 * c for a, c in zip(p0, q2)],
    ]
    matrix = [[columns[k][i] for k in range(3)] for i in range(3)]
    if linalg.determinant(matrix).is_zero:
        raise DegenerateParametrization("The parametrization matrix is singular.")
    flat = canonical_coords(entry for row in matrix for entry in row)
    normalized = tuple(tuple(flat[3 * i : 3 * i + 3]) for i in range(3))
    return ConicParametrization(curve, normalized)


def standard_conic() -> ConicParametrization:
    """xz - y^2 in P^2 with p(s, t) = [s^2 : st : t^2]."""
    basis = [ProjectivePoint.of(*(1 if i == j else 0 for j in range(3))) for i in range(3)]
    half = Scalar(1, 0) / 2
    matrix = [[ZERO, ZERO, half], [ZERO, -ONE, ZERO], [half, ZERO, ZERO]]
    curve = CurveSpec.conic_in_plane(basis, matrix)
    identity = tuple(tuple(ONE if i == j else ZERO for j in range(3)) for i in range(3))
    return ConicParametrization(curve, identity)

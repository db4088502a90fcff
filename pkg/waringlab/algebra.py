"""Exact scalars, linear forms and homogeneous forms.

Everything here is an immutable value. Scalars are rationals or Gaussian
rationals built on :class:`fractions.Fraction`; forms store only nonzero
coefficients keyed by exponent vectors, ordered graded-lexicographically.
"""
import math
import typing
import logging
import functools
import dataclasses
from fractions import Fraction

LOGGER = logging.getLogger(__name__)

Exponent = typing.Tuple[int, ...]
RationalLike = typing.Union[int, Fraction, str]
ScalarLike = typing.Union["Scalar", int, Fraction, str]


def parse_rational(value: RationalLike) -> Fraction:
    """Convert an int, Fraction or "p/q" string into a Fraction."""
    if isinstance(value, bool):
        raise ValueError(f"Booleans are not rationals: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exception:
            raise ValueError(f"Malformed rational string: {value!r}") from exception
    raise ValueError(f"Cannot interpret {value!r} as a rational number.")


def rational2str(value: Fraction) -> str:
    """Canonical "p/q" representation (the denominator is always written)."""
    return f"{value.numerator}/{value.denominator}"


@dataclasses.dataclass(frozen=True, eq=False)
class Scalar:
    """An exact element of Q(i), stored as re + im*i."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", parse_rational(self.re))
        object.__setattr__(self, "im", parse_rational(self.im))

    @classmethod
    def coerce(cls, value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return cls(parse_rational(value))

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    @property
    def field_tag(self) -> str:
        return "Rational" if self.is_real else "GaussianRational"

    @property
    def denominator(self) -> int:
        """Least common denominator of both parts."""
        return math.lcm(self.re.denominator, self.im.denominator)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        norm = other.norm()
        if norm == 0:
            raise ZeroDivisionError("Division by the zero scalar.")
        return Scalar(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return ONE / (self**-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero

    def sort_key(self) -> typing.Tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def to_json(self) -> typing.Dict[str, str]:
        return {"re": rational2str(self.re), "im": rational2str(self.im)}

    @classmethod
    def from_json(cls, value) -> "Scalar":
        if isinstance(value, dict):
            return cls(parse_rational(value["re"]), parse_rational(value.get("im", 0)))
        return cls.coerce(value)

    def __str__(self):
        if self.is_real:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"

    def __repr__(self):
        return f"Scalar({self})"


ZERO = Scalar()
ONE = Scalar(1)
I = Scalar(0, 1)


def canonical_coords(coords: typing.Iterable[ScalarLike]) -> typing.Tuple[Scalar, ...]:
    """Rescale so that the first nonzero coordinate equals one."""
    values = tuple(Scalar.coerce(c) for c in coords)
    lead = next((c for c in values if not c.is_zero), None)
    if lead is None:
        raise ValueError("A projective object needs at least one nonzero coordinate.")
    if lead == 1:
        return values
    return tuple(c / lead for c in values)


@functools.lru_cache(maxsize=None)
def monomials(num_vars: int, degree: int) -> typing.Tuple[Exponent, ...]:
    """All exponent vectors of the given degree in graded lexicographic order."""
    if num_vars < 1 or degree < 0:
        raise ValueError(f"Invalid monomial request ({num_vars} variables, degree {degree}).")
    if num_vars == 1:
        return ((degree,),)
    return tuple(
        (head,) + tail
        for head in range(degree, -1, -1)
        for tail in monomials(num_vars - 1, degree - head)
    )


@functools.lru_cache(maxsize=None)
def monomial_index(num_vars: int, degree: int) -> typing.Dict[Exponent, int]:
    return {exp: idx for idx, exp in enumerate(monomials(num_vars, degree))}


@functools.lru_cache(maxsize=None)
def multinomial(degree: int, exponent: Exponent) -> int:
    assert sum(exponent) == degree, f"{exponent} does not sum to {degree}"
    result = math.factorial(degree)
    for e in exponent:
        result //= math.factorial(e)
    return result


def evaluate_monomial(exponent: Exponent, point: typing.Sequence[Scalar]) -> Scalar:
    value = ONE
    for coord, e in zip(point, exponent):
        if e:
            value = value * coord**e
    return value


@dataclasses.dataclass(frozen=True)
class LinearForm:
    """A linear form up to scale; stored with its first nonzero coefficient equal to one."""

    coeffs: typing.Tuple[Scalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", canonical_coords(self.coeffs))

    @property
    def num_vars(self) -> int:
        return len(self.coeffs)

    @property
    def is_real(self) -> bool:
        return all(c.is_real for c in self.coeffs)

    def conjugate(self) -> "LinearForm":
        return LinearForm(tuple(c.conjugate() for c in self.coeffs))

    def evaluate(self, point: typing.Sequence[ScalarLike]) -> Scalar:
        if len(point) != self.num_vars:
            raise ValueError("Point and linear form live in different dimensions.")
        return sum((c * Scalar.coerce(p) for c, p in zip(self.coeffs, point)), ZERO)


@dataclasses.dataclass(frozen=True)
class HomogeneousForm:
    """A homogeneous polynomial with exact coefficients.

    ``terms`` holds (exponent, coefficient) pairs in monomial order with the
    zero coefficients removed; use :meth:`build` to construct from a mapping.
    """

    num_vars: int
    degree: int
    terms: typing.Tuple[typing.Tuple[Exponent, Scalar], ...] = ()

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("A form needs at least one variable.")
        if self.degree < 0:
            raise ValueError("Degree must be nonnegative.")
        index = monomial_index(self.num_vars, self.degree)
        cleaned = {}
        for exp, coeff in self.terms:
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.num_vars or any(e < 0 for e in exp):
                raise ValueError(f"Exponent {exp} does not fit {self.num_vars} variables.")
            if sum(exp) != self.degree:
                raise ValueError(f"Exponent {exp} does not sum to degree {self.degree}.")
            coeff = Scalar.coerce(coeff)
            cleaned[exp] = cleaned.get(exp, ZERO) + coeff
        ordered = tuple(
            sorted(
                ((e, c) for e, c in cleaned.items() if not c.is_zero),
                key=lambda item: index[item[0]],
            )
        )
        object.__setattr__(self, "terms", ordered)

    @classmethod
    def build(
        cls, num_vars: int, degree: int, coeffs: typing.Mapping[Exponent, ScalarLike]
    ) -> "HomogeneousForm":
        return cls(num_vars, degree, tuple(coeffs.items()))

    @classmethod
    def zero(cls, num_vars: int, degree: int) -> "HomogeneousForm":
        return cls(num_vars, degree, ())

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "HomogeneousForm":
        exp = tuple(1 if i == index else 0 for i in range(num_vars))
        return cls(num_vars, 1, ((exp, ONE),))

    @property
    def coeffs(self) -> typing.Dict[Exponent, Scalar]:
        return dict(self.terms)

    @property
    def m(self) -> int:
        return self.num_vars - 1

    def coefficient(self, exponent: Exponent) -> Scalar:
        return self.coeffs.get(tuple(exponent), ZERO)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_real(self) -> bool:
        return all(c.is_real for _, c in self.terms)

    def _check_compatible(self, other: "HomogeneousForm"):
        if (self.num_vars, self.degree) != (other.num_vars, other.degree):
            raise ValueError(
                f"Incompatible forms: {self.num_vars} vars/degree {self.degree} "
                f"vs {other.num_vars} vars/degree {other.degree}."
            )

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        self._check_compatible(other)
        return HomogeneousForm(self.num_vars, self.degree, self.terms + other.terms)

    def __neg__(self) -> "HomogeneousForm":
        return self.scale(-ONE)

    def __sub__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        return self + (-other)

    def scale(self, factor: ScalarLike) -> "HomogeneousForm":
        factor = Scalar.coerce(factor)
        return HomogeneousForm(
            self.num_vars, self.degree, tuple((e, c * factor) for e, c in self.terms)
        )

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        if other.num_vars != self.num_vars:
            raise ValueError("Cannot multiply forms in different numbers of variables.")
        product: typing.Dict[Exponent, Scalar] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                exp = tuple(a + b for a, b in zip(e1, e2))
                product[exp] = product.get(exp, ZERO) + c1 * c2
        return HomogeneousForm.build(self.num_vars, self.degree + other.degree, product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "HomogeneousForm":
        if exponent < 0:
            raise ValueError("Forms only have nonnegative powers.")
        result = HomogeneousForm(self.num_vars, 0, ((tuple([0] * self.num_vars), ONE),))
        for _ in range(exponent):
            result = result * self
        return result

    def evaluate(self, point: typing.Sequence[ScalarLike]) -> Scalar:
        if len(point) != self.num_vars:
            raise ValueError("Point and form live in different dimensions.")
        values = [Scalar.coerce(p) for p in point]
        return sum((c * evaluate_monomial(e, values) for e, c in self.terms), ZERO)

    def conjugate(self) -> "HomogeneousForm":
        return HomogeneousForm(
            self.num_vars, self.degree, tuple((e, c.conjugate()) for e, c in self.terms)
        )

    def compose(self, images: typing.Sequence["HomogeneousForm"]) -> "HomogeneousForm":
        """Substitute x_i -> images[i]; all images share one degree and variable count."""
        if len(images) != self.num_vars:
            raise ValueError(f"Expected {self.num_vars} substitutions, got {len(images)}.")
        num_vars, degree = images[0].num_vars, images[0].degree
        if any((g.num_vars, g.degree) != (num_vars, degree) for g in images):
            raise ValueError("Substituted forms must share degree and variables.")
        powers: typing.Dict[typing.Tuple[int, int], HomogeneousForm] = {}

        def power(i: int, k: int) -> HomogeneousForm:
            if (i, k) not in powers:
                powers[(i, k)] = images[i] ** k
            return powers[(i, k)]

        result = HomogeneousForm.zero(num_vars, self.degree * degree)
        for exp, coeff in self.terms:
            term = HomogeneousForm(num_vars, 0, ((tuple([0] * num_vars), coeff),))
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def substitute(self, matrix: typing.Sequence[typing.Sequence[ScalarLike]]) -> "HomogeneousForm":
        """Linear change of variables x_i -> sum_j matrix[i][j] * y_j."""
        images = [
            HomogeneousForm(
                len(row),
                1,
                tuple(
                    (tuple(1 if k == j else 0 for k in range(len(row))), Scalar.coerce(v))
                    for j, v in enumerate(row)
                ),
            )
            for row in matrix
        ]
        return self.compose(images)

    @property
    def field_tag(self) -> str:
        return next((c.field_tag for _, c in self.terms if not c.is_real), ONE.field_tag)

    def to_json(self) -> typing.Dict[str, typing.Any]:
        return {
            "m": self.num_vars - 1,
            "d": self.degree,
            "field": self.field_tag,
            "terms": [{"exp": list(e), **c.to_json()} for e, c in self.terms],
        }

    @classmethod
    def from_json(cls, data: typing.Mapping[str, typing.Any]) -> "HomogeneousForm":
        try:
            num_vars, degree = int(data["m"]) + 1, int(data["d"])
            terms = tuple(
                (tuple(int(e) for e in term["exp"]), Scalar.from_json(term))
                for term in data["terms"]
            )
        except (KeyError, TypeError) as exception:
            raise ValueError(f"Malformed form payload: {exception}") from exception
        return cls(num_vars, degree, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exp, coeff in self.terms:
            monomial = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exp) if e
            )
            pieces.append(f"{coeff}*{monomial}" if monomial else str(coeff))
        return " + ".join(pieces)


def power_of_linear(linear: LinearForm, degree: int) -> HomogeneousForm:
    """Expand L^d with multinomial coefficients."""
    if degree < 1:
        raise ValueError(f"Powers of linear forms need degree >= 1, got {degree}.")
    coeffs = {}
    for exp in monomials(linear.num_vars, degree):
        value = evaluate_monomial(exp, linear.coeffs)
        if not value.is_zero:
            coeffs[exp] = value * multinomial(degree, exp)
    return HomogeneousForm.build(linear.num_vars, degree, coeffs)


def combine(
    terms: typing.Sequence[typing.Tuple[ScalarLike, LinearForm]], degree: int
) -> HomogeneousForm:
    """Sum of c_i * L_i^d."""
    if not terms:
        raise ValueError("combine needs at least one term.")
    num_vars = terms[0][1].num_vars
    if any(linear.num_vars != num_vars for _, linear in terms):
        raise ValueError("All linear forms must have the same number of variables.")
    result = HomogeneousForm.zero(num_vars, degree)
    for coeff, linear in terms:
        result = result + power_of_linear(linear, degree).scale(coeff)
    return result


def conjugate_form(form: HomogeneousForm) -> HomogeneousForm:
    return form.conjugate()

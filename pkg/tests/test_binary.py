import random
from fractions import Fraction

import pytest

from waringlab import binary
from waringlab.algebra import HomogeneousForm, Scalar, power_of_linear
from waringlab.binary import BinaryForm
from waringlab.points import CurveSpec, ProjectivePoint, standard_conic
from waringlab.testing import examples

P = ProjectivePoint.of


def form(*coeffs):
    return BinaryForm(tuple(Scalar.coerce(c) for c in coeffs))


def test_binary_form_conversions():
    assert examples.WORKED_GAP.to_form() == HomogeneousForm.build(2, 3, {(3, 0): 2, (1, 2): -6})
    assert BinaryForm.from_json(examples.WORKED_GAP.to_json()) == examples.WORKED_GAP
    with pytest.raises(ValueError):
        BinaryForm((Scalar(1),))
    with pytest.raises(ValueError):
        binary.complex_rank(form(0, 0, 0))
    with pytest.raises(ValueError):
        binary.complex_rank(BinaryForm(tuple(Scalar(1) for _ in range(binary.MAX_DEGREE + 2))))


def test_hankel_matrix():
    assert binary.hankel_matrix(examples.WORKED_GAP, 2) == [
        [Scalar(2), Scalar(0), Scalar(-2)],
        [Scalar(0), Scalar(-2), Scalar(0)],
    ]
    with pytest.raises(ValueError):
        binary.hankel_matrix(examples.WORKED_GAP, 4)


def test_hankel_kernel():
    (generator,) = binary.hankel_kernel(examples.WORKED_GAP, 2)
    assert generator.coefficient((1, 1)) == 0
    assert generator.coefficient((2, 0)) == generator.coefficient((0, 2)) != 0
    (apolar,) = binary.hankel_kernel(form(1, 0, 0, 0), 1)
    assert apolar.coefficient((1, 0)) == 0 and apolar.coefficient((0, 1)) != 0


def test_worked_gap_complex_rank():
    rank, decomposition = binary.complex_rank(examples.WORKED_GAP)
    assert rank == 2
    assert decomposition.mode == binary.EXACT
    assert set(decomposition.points) == {P(1, Scalar(0, 1)), P(1, Scalar(0, -1))}
    assert decomposition.coeffs == (Scalar(1), Scalar(1))
    assert decomposition.reconstruct(3) == examples.WORKED_GAP.to_form()


def test_worked_gap_real_rank():
    rank, decomposition = binary.real_rank(examples.WORKED_GAP)
    assert rank == 3
    assert decomposition.certificate == binary.HYPERBOLIC
    assert dict(zip(decomposition.points, decomposition.coeffs)) == {
        P(1, 0): Scalar(4),
        P(1, 1): Scalar(-1),
        P(1, -1): Scalar(-1),
    }


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2), (1, 4), (3, 2)])
def test_monomial_complex_rank(a, b):
    rank, decomposition = binary.complex_rank(examples.monomial_form(a, b))
    assert rank == max(a, b) + 1
    if decomposition.mode == binary.EXACT:
        assert decomposition.reconstruct(a + b) == examples.monomial_form(a, b).to_form()


def test_sums_of_two_powers():
    # x^5 + y^5
    rank, decomposition = binary.real_rank(form(1, 0, 0, 0, 0, 1))
    assert rank == 2
    assert decomposition.certificate == binary.COMPLEX_LOWER_BOUND
    assert set(decomposition.points) == {P(1, 0), P(0, 1)}


def test_implicit_decomposition():
    # moments of the points [1 : +-sqrt(2)]
    rank, decomposition = binary.complex_rank(form(2, 0, 4, 0))
    assert rank == 2
    assert decomposition.mode == binary.IMPLICIT
    assert len(decomposition.residue) == 2
    with pytest.raises(ValueError):
        decomposition.reconstruct(3)
    real_rank, real_decomposition = binary.real_rank(form(2, 0, 4, 0))
    assert real_rank == 2
    assert real_decomposition.certificate == binary.COMPLEX_LOWER_BOUND
    assert len(real_decomposition.boxes) == 2


def test_real_rank_needs_a_real_form():
    with pytest.raises(ValueError):
        binary.real_rank(form(1, Scalar(0, 1), 0))


def test_hyperbolicity():
    assert binary.is_hyperbolic(examples.WORKED_GAP)
    assert not binary.is_hyperbolic(form(1, 0, 0, 1))


def test_root_pool():
    assert binary.root_pool(5) == [P(1, 0), P(1, 1), P(1, -1), P(0, 1), P(1, "1/2")]


def test_restrict_and_embed():
    line = CurveSpec.line_through(P(1, 0, 1, 0), P(0, 1, 0, 1))
    embedded = binary.embed(examples.WORKED_GAP, line)
    assert embedded.num_vars == 4
    assert binary.restrict_to_line(embedded, line) == examples.WORKED_GAP
    assert binary.line_point(P(1, 1), line) == P(1, 1, 1, 1)


def test_pullback_to_the_standard_conic():
    z_cubed = HomogeneousForm.build(3, 3, {(0, 0, 3): 1})
    assert binary.pullback_conic(z_cubed, standard_conic()) == BinaryForm.from_form(
        HomogeneousForm.build(2, 6, {(0, 6): 1})
    )
    # powers of points on the conic pull back to powers of their parameters
    parametrization = standard_conic()
    cube = power_of_linear(parametrization.point(1, 2).linear_form(), 3)
    pulled = binary.pullback_conic(cube, parametrization)
    assert pulled == BinaryForm.from_form(power_of_linear(P(1, 2).linear_form(), 6))


def test_normalized_signs():
    rows = binary.normalized_signs([P(1, 0), P(1, 1)], [Scalar(-3), Scalar(2)], 2)
    assert rows[0]["sign"] == -1
    assert rows[0]["scale"] == "3/1"
    assert rows[1]["sign"] == 1
    assert "sign" not in binary.normalized_signs([P(1, 0)], [Scalar(-3)], 3)[0]


def test_complex_rank_with_irrational_complex_points():
    # 2x^3 - 12xy^2 = (x + i sqrt(2) y)^3 + (x - i sqrt(2) y)^3
    rank, decomposition = binary.complex_rank(form(2, 0, -4, 0))
    assert rank == 2
    assert decomposition.mode == binary.IMPLICIT
    assert decomposition.residue == (Scalar(1), Scalar(0))
    assert len(decomposition.boxes) == 2
    assert {box[2] + box[3] > 0 for box in decomposition.boxes} == {True, False}
    for re_low, re_high, _, _ in decomposition.boxes:
        assert re_low <= 0 <= re_high


def test_complex_rank_of_the_square_monomial():
    rank, decomposition = binary.complex_rank(examples.monomial_form(2, 2))
    assert rank == 3
    assert decomposition.mode == binary.IMPLICIT
    assert len(decomposition.boxes) == 3


def test_search_bounded_real_rank():
    # the kernel pencil at r=3 is spanned by a^3 and b^3, never real-rooted
    rank, decomposition = binary.real_rank(examples.monomial_form(2, 2))
    assert rank == 4
    assert decomposition.certificate == binary.SEARCH_BOUNDED
    assert decomposition.reconstruct(4) == examples.monomial_form(2, 2).to_form()


def test_real_rank_from_a_kernel_pencil():
    # x^4 + y^4 + (x + y)^4 is positive, and every member of its r=3 pencil is real-rooted
    quartic = form(2, 1, 1, 1, 2)
    assert not binary.is_hyperbolic(quartic)
    assert len(binary.hankel_kernel(quartic, 3)) == 2
    rank, decomposition = binary.real_rank(quartic)
    assert rank == 3
    assert decomposition.certificate == binary.COMPLEX_LOWER_BOUND
    assert set(decomposition.points) == {P(1, 0), P(0, 1), P(1, 1)}


def test_pencil_search_walks_around_the_real_line():
    assert binary._circle_point(Fraction(0)) == (Scalar(1), Scalar(0))
    assert binary._circle_point(Fraction(-2)) == (Scalar(0), Scalar(1))
    assert binary._circle_point(Fraction(2)) == binary._circle_point(Fraction(-2))
    assert binary._circle_point(Fraction(3, 2)) == (Scalar(Fraction(1, 2)), Scalar(1))
    # at [1:s] the member is (s - 1/10) a^2 + (s - 1/6) b^2, real-rooted only for 1/10 < s < 1/6
    first = HomogeneousForm.build(2, 2, {(2, 0): Fraction(-1, 10), (0, 2): Fraction(-1, 6)})
    second = HomogeneousForm.build(2, 2, {(2, 0): 1, (0, 2): 1})
    found = binary._pencil_search(form(1, 0, 1), first, second, 4)
    assert found == first + second.scale(Fraction(1, 8))
    assert binary.is_real_rooted(found)


@pytest.mark.parametrize(
    "original",
    [examples.WORKED_GAP, examples.monomial_form(2, 2), form(2, 1, 1, 1, 2), form(1, 0, 0, 0, 0, 1)],
)
def test_ranks_are_invariant_under_rational_substitutions(original):
    moved = BinaryForm.from_form(original.to_form().substitute([[2, 1], [1, -3]]))
    assert binary.complex_rank(moved)[0] == binary.complex_rank(original)[0]
    assert binary.real_rank(moved)[0] == binary.real_rank(original)[0]


@pytest.mark.parametrize("seed", range(6))
def test_rank_bounds_on_random_forms(seed):
    rng = random.Random(seed)
    d = 3 + seed % 3
    coeffs = [rng.randint(-3, 3) for _ in range(d + 1)]
    coeffs[0] = coeffs[0] or 1
    f = form(*coeffs)
    complex_rank, complex_decomposition = binary.complex_rank(f)
    real_rank, _ = binary.real_rank(f)
    assert complex_rank <= real_rank <= d
    # a real form has a real apolar generator, so its complex points are closed under conjugation
    assert complex_decomposition.generator.is_real
    if complex_decomposition.mode == binary.EXACT:
        points = set(complex_decomposition.points)
        assert {p.conjugate() for p in points} == points

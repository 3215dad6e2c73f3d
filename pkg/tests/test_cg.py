import random

import pytest

from cgva.cg import (CGAlgebra, build_cg, identity_suite, s_map, s_matrix,
                     star, star_via_squares, sym2_dim, sym2_index,
                     sym2_of_vectors, sym2_pairs, sym2_square)
from cgva.fields import PrimeField, QQ
from cgva.lie import abelian, algebra_from_name
from cgva.linalg import LinComb, Matrix


@pytest.fixture(scope="module")
def sl2():
    return algebra_from_name("sl2", QQ)


@pytest.fixture(scope="module")
def cg_sl2(sl2):
    return build_cg(sl2)


def _random_sym2(alg, rng, nterms=3):
    out = LinComb()
    pool = sym2_pairs(alg.dim)
    for _ in range(nterms):
        key = pool[rng.randrange(len(pool))]
        out = out + LinComb.term(key, alg.field.from_int(rng.randint(-4, 4)))
    return out


def test_sym2_indexing_round_trips():
    pairs = sym2_pairs(4)
    assert len(pairs) == sym2_dim(4) == 10
    for n, (i, j) in enumerate(pairs):
        assert i >= j
        assert sym2_index(i, j) == n
        assert sym2_index(j, i) == n


def test_sym2_of_vectors_is_symmetric_and_bilinear(sl2):
    e, h = sl2.basis_vector(0), sl2.basis_vector(1)
    assert sym2_of_vectors(e, h) == sym2_of_vectors(h, e)
    two = QQ.from_int(2)
    assert sym2_of_vectors(e.scale(two), h) == sym2_of_vectors(e, h).scale(two)
    assert sym2_square(e + h) == \
        sym2_square(e) + sym2_square(h) + sym2_of_vectors(e, h).scale(two)


def test_star_frozen_sl2_square_product(sl2):
    ee = sym2_square(sl2.basis_vector(0))
    ff = sym2_square(sl2.basis_vector(2))
    got = star(sl2, ee, ff)
    # hh - 2ef on the (i >= j) pair basis
    assert got == LinComb({(1, 1): QQ.one, (2, 0): QQ.from_int(-2)})


def test_star_is_commutative_on_random_elements(sl2):
    rng = random.Random(5)
    for _ in range(20):
        x = _random_sym2(sl2, rng)
        y = _random_sym2(sl2, rng)
        assert star(sl2, x, y) == star(sl2, y, x)


@pytest.mark.parametrize("name", ["sl2", "sl3"])
def test_star_matches_square_expansion_oracle(name):
    """The closed-form product equals the one computed by expanding both
    arguments into squares, an independent route through the definition."""
    alg = algebra_from_name(name, QQ)
    rng = random.Random(11)
    for _ in range(12):
        x = _random_sym2(alg, rng)
        y = _random_sym2(alg, rng)
        assert star(alg, x, y) == star_via_squares(alg, x, y)


def test_s_map_frozen_sl2_values(sl2):
    eye = Matrix.identity(3, QQ)
    e, h, f = (sl2.basis_vector(i) for i in range(3))
    assert s_map(sl2, sym2_square(e)) == Matrix.zero(3, 3, QQ)
    assert s_map(sl2, sym2_of_vectors(e, h)) == Matrix.zero(3, 3, QQ)
    assert s_map(sl2, sym2_of_vectors(e, f)) == eye.scale(QQ.from_int(2))
    assert s_map(sl2, sym2_square(h)) == eye.scale(QQ.from_int(4))


def test_s_map_output_is_form_symmetric(sl2):
    rng = random.Random(3)
    for _ in range(10):
        x = _random_sym2(sl2, rng)
        m = s_map(sl2, x)
        # <S(x)a, b> = <a, S(x)b>, i.e. form-adjoint symmetry
        km = sl2.form
        assert (km @ m) == (km @ m).transpose()


def test_s_matrix_shape(sl2):
    m = s_matrix(sl2)
    assert m.nrows == 9 and m.ncols == 6


@pytest.mark.parametrize("name,total,kernel,image", [
    ("sl2", 6, 5, 1),
    ("sl3", 36, 27, 9),
    ("so5", 55, 35, 20),
    ("sp4", 55, 35, 20),
])
def test_image_and_kernel_dimensions(name, total, kernel, image):
    alg = algebra_from_name(name, QQ)
    cga = build_cg(alg)
    assert sym2_dim(alg.dim) == total
    assert cga.kernel.dim == kernel
    assert cga.dim == image


def test_sl2_unit_is_quarter_of_hh(cg_sl2):
    unit = cg_sl2.unit()
    assert cg_sl2.im_monomials == [(1, 1)]
    assert unit == LinComb({0: QQ.parse("1/4")})
    # S at the unit is the identity operator
    assert cg_sl2.s_of_coords(unit) == Matrix.identity(3, QQ)


def test_unit_is_neutral_for_diamond(cg_sl2):
    rng = random.Random(7)
    unit = cg_sl2.unit()
    for _ in range(6):
        x = cg_sl2.reduce_to_im(_random_sym2(cg_sl2.algebra, rng))
        assert cg_sl2.diamond(unit, x) == x


def test_diamond_is_commutative_but_not_associative_in_general():
    alg = algebra_from_name("sl3", QQ)
    cga = build_cg(alg)
    rng = random.Random(19)
    saw_nonassoc = False
    for _ in range(12):
        x = cga.reduce_to_im(_random_sym2(alg, rng))
        y = cga.reduce_to_im(_random_sym2(alg, rng))
        z = cga.reduce_to_im(_random_sym2(alg, rng))
        assert cga.diamond(x, y) == cga.diamond(y, x)
        left = cga.diamond(cga.diamond(x, y), z)
        right = cga.diamond(x, cga.diamond(y, z))
        saw_nonassoc = saw_nonassoc or (left != right)
    assert saw_nonassoc


def test_reduce_and_lift_round_trip(cg_sl2):
    rng = random.Random(13)
    for _ in range(10):
        x = _random_sym2(cg_sl2.algebra, rng)
        coords = cg_sl2.reduce_to_im(x)
        lifted = cg_sl2.lift(coords)
        # x and its lift differ by a kernel element
        assert cg_sl2.in_kernel(x - lifted)
        assert cg_sl2.reduce_to_im(lifted) == coords


def test_kernel_vanishes_under_s(sl2, cg_sl2):
    for kv in cg_sl2.kernel.basis:
        x = LinComb({cg_sl2.pairs[c]: v for c, v in kv.items()})
        assert s_map(sl2, x) == Matrix.zero(3, 3, QQ)


def test_kernel_is_a_star_ideal(sl2, cg_sl2):
    rng = random.Random(23)
    for kv in cg_sl2.kernel.basis:
        x = LinComb({cg_sl2.pairs[c]: v for c, v in kv.items()})
        y = _random_sym2(sl2, rng)
        assert cg_sl2.in_kernel(star(sl2, x, y))


def test_tau_frozen_values_and_symmetry(cg_sl2):
    unit = cg_sl2.unit()
    assert cg_sl2.tau(unit, unit) == QQ.parse("1/4")
    assert cg_sl2.tau_matrix().is_symmetric()


def test_tau_associativity_with_diamond():
    alg = algebra_from_name("sl3", QQ)
    cga = build_cg(alg)
    rng = random.Random(29)
    for _ in range(8):
        x = cga.reduce_to_im(_random_sym2(alg, rng))
        y = cga.reduce_to_im(_random_sym2(alg, rng))
        z = cga.reduce_to_im(_random_sym2(alg, rng))
        assert cga.tau(cga.diamond(x, y), z) == cga.tau(x, cga.diamond(y, z))


def test_dimensions_are_stable_mod_7():
    alg = algebra_from_name("sl3", PrimeField(7))
    cga = build_cg(alg)
    assert cga.dim == 9
    assert cga.kernel.dim == 27
    assert cga.unit() is not None


def test_one_dimensional_abelian_is_unital():
    alg = abelian(1, QQ)
    cga = build_cg(alg)
    assert cga.dim == 1
    unit = cga.unit()
    assert unit is not None
    assert cga.s_of_coords(unit) == Matrix.identity(1, QQ)


def test_export_tables_shape(cg_sl2):
    tables = cg_sl2.export_tables()
    assert tables["dim"] == 1
    assert tables["im_monomials"] == [[1, 1]]
    assert len(tables["products"]) == 1
    assert len(tables["tau"]) == 1


@pytest.mark.parametrize("name", ["sl2", "sl3"])
def test_identity_suite_passes(name):
    alg = algebra_from_name(name, QQ)
    report = identity_suite(alg)
    assert report.passed, report.first_failure

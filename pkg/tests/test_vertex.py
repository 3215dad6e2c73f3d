import random

import pytest

from cgva.fields import PrimeField, QQ
from cgva.lie import algebra_from_name
from cgva.linalg import LinComb
from cgva.vertex import (VertexEngine, axiom_suite, binom, comp_lemma_suite,
                         format_state, mono_degree, parse_state, state_degree)


@pytest.fixture(scope="module")
def sl2():
    return algebra_from_name("sl2", QQ)


@pytest.fixture(scope="module")
def eng(sl2):
    return VertexEngine(sl2)


E, H, F = 0, 1, 2


def test_binom_on_negative_upper_index():
    assert binom(-2, 3) == -4
    assert binom(-1, 5) == -1
    assert binom(-3, 2) == 6


def test_binom_ordinary_cases():
    assert binom(5, 2) == 10
    assert binom(3, 5) == 0
    assert binom(-1, 0) == 1
    assert binom(0, 0) == 1


def test_degrees():
    assert mono_degree(((2, 1), (1, 0))) == 3
    assert state_degree(LinComb.term((), QQ.one)) == 0
    mixed = LinComb({((1, 0),): QQ.one, ((2, 0),): QQ.one})
    assert state_degree(mixed) is None


def test_annihilation_of_the_vacuum(eng):
    vac = eng.vacuum()
    for i in (E, H, F):
        for n in (0, 1, 5):
            assert eng.apply_mode(i, n, vac) == LinComb()


def test_frozen_sl2_mode_actions(eng, sl2):
    vac = eng.vacuum()
    f_state = eng.apply_mode(F, -1, vac)
    # e(1) f(-1)|0> = <e,f>|0>
    assert eng.apply_mode(E, 1, f_state) == vac
    # h(0) e(-1)|0> = [h,e](-1)|0> = 2 e(-1)|0>
    e_state = eng.apply_mode(E, -1, vac)
    assert eng.apply_mode(H, 0, e_state) == e_state.scale(QQ.from_int(2))
    # h(1) h(-1)|0> = <h,h>|0>
    h_state = eng.apply_mode(H, -1, vac)
    assert eng.apply_mode(H, 1, h_state) == vac.scale(QQ.from_int(2))


def test_straightening_produces_the_central_correction(eng):
    vac = eng.vacuum()
    # e(-1) f(-1)|0> reorders to f(-1) e(-1)|0> plus [e,f](-2)|0>
    lhs = eng.apply_mode(E, -1, eng.apply_mode(F, -1, vac))
    expected = LinComb({((1, F), (1, E)): QQ.one, ((2, H),): QQ.one})
    assert lhs == expected


def test_monomial_state_straightens_out_of_order_input(eng):
    direct = eng.monomial_state([(1, E), (1, F)])
    assert direct == eng.apply_mode(E, -1, eng.apply_mode(F, -1, eng.vacuum()))


def test_modes_of_a_general_vector_are_linear(eng, sl2):
    x = sl2.basis_vector(E) + sl2.basis_vector(H).scale(QQ.from_int(3))
    st = eng.monomial_state([(2, F)])
    combined = eng.apply_mode(x, 1, st)
    split = eng.apply_mode(E, 1, st) + eng.apply_mode(H, 1, st).scale(QQ.from_int(3))
    assert combined == split


def test_state_vector_round_trip(eng, sl2):
    x = sl2.basis_vector(E).scale(QQ.from_int(-2)) + sl2.basis_vector(F)
    assert eng.vector_of_state(eng.state_of_vector(x)) == x
    with pytest.raises(ValueError):
        eng.vector_of_state(eng.monomial_state([(2, E)]))


def test_translation_shifts_one_mode(eng):
    h1 = eng.monomial_state([(1, H)])
    assert eng.d_pow(1, h1) == eng.monomial_state([(2, H)])
    # divided powers: D^(2) of h(-1)|0> is h(-3)|0>
    assert eng.d_pow(2, h1) == eng.monomial_state([(3, H)])


def test_nth_product_against_mode_action(eng, sl2):
    # for u = a(-1)|0>, the n-th product is the mode a(n)
    u = eng.state_of_vector(sl2.basis_vector(H))
    v = eng.monomial_state([(1, E), (1, F)])
    for n in range(-2, 3):
        assert eng.nth_product(u, n, v) == eng.apply_mode(H, n, v)


def test_truncation(eng):
    v = eng.monomial_state([(2, H), (1, E)])
    assert eng.nth_product(eng.state_of_vector(eng.algebra.basis_vector(F)),
                           9, v) == LinComb()


def test_prime_field_results_are_reductions_of_rational_results(sl2):
    """No division happens inside the engine, so every F_p computation must
    equal the mod-p image of the corresponding rational one.  This guards
    against coefficients that are nonzero as ints but zero mod p sneaking
    into state dictionaries (binomials such as C(-2, 6) = 7)."""
    p = 7
    fp = PrimeField(p)
    mod = algebra_from_name("sl2", fp)
    eng_q = VertexEngine(sl2)
    eng_p = VertexEngine(mod)

    def reduce_state(state):
        out = {}
        for k, v in state.items():
            w = fp.from_fraction(v)
            if w:
                out[k] = w
        return LinComb(out)

    rng = random.Random(99)
    for _ in range(40):
        u = eng_q.random_homogeneous_state(rng, 4)
        v = eng_q.random_homogeneous_state(rng, 4)
        n = rng.randint(-3, 6)
        up, vp = reduce_state(u), reduce_state(v)
        got = eng_p.nth_product(up, n, vp)
        want = reduce_state(eng_q.nth_product(u, n, v))
        assert got == want, (n, dict(u.items()), dict(v.items()))
        # and no stored zeros on either side
        assert all(got.terms.values())


def test_no_explicit_zeros_in_deep_mod_p_states():
    # h(-1)^7 |0> over F_7 exercises binomial coefficients divisible by 7
    fp = PrimeField(7)
    eng = VertexEngine(algebra_from_name("sl2", fp))
    st = eng.vacuum()
    for _ in range(7):
        st = eng.apply_mode(H, -1, st)
    out = eng.nth_product(st, 6, st)
    assert all(out.terms.values())
    for mono, c in out.items():
        assert c.val != 0


def test_format_state_examples(eng, sl2):
    assert format_state(sl2, eng.vacuum()) == "1 |0>"
    assert format_state(sl2, LinComb()) == "0"
    st = eng.monomial_state([(1, E)]).scale(QQ.from_int(2))
    assert format_state(sl2, st) == "2 e(-1) |0>"
    neg = eng.monomial_state([(2, H)]).scale(QQ.parse("-1/3"))
    assert format_state(sl2, neg) == "-1/3 h(-2) |0>"


def test_parse_state_accepts_stars_and_signs(eng, sl2):
    st = parse_state(sl2, eng, "2 * e(-1) * f(-1) |0> - h(-2) |0>")
    byhand = eng.monomial_state([(1, E), (1, F)]).scale(QQ.from_int(2)) \
        - eng.monomial_state([(2, H)])
    assert st == byhand


def test_parse_applies_annihilation_modes(eng, sl2):
    assert parse_state(sl2, eng, "e(1) f(-1) |0>") == eng.vacuum()
    assert parse_state(sl2, eng, "e(0) |0>") == LinComb()


def test_format_parse_round_trip(eng, sl2):
    rng = random.Random(4)
    for _ in range(15):
        st = eng.random_homogeneous_state(rng, 4, max_terms=3)
        assert parse_state(sl2, eng, format_state(sl2, st)) == st


def test_parse_rejects_malformed_input(eng, sl2):
    for bad in ["e(-1)", "q(-1) |0>", "e(-1) 2 |0>", "", "e |0>"]:
        with pytest.raises(ValueError):
            parse_state(sl2, eng, bad)


def test_axiom_suite_small_run_passes(sl2):
    report = axiom_suite(sl2, samples=25, seed=3, max_degree=3)
    assert report.passed, report.first_failure
    names = [c.name for c in report.checks]
    assert "borcherds" in names


def test_axiom_suite_passes_mod_11():
    alg = algebra_from_name("sl2", PrimeField(11))
    report = axiom_suite(alg, samples=15, seed=5, max_degree=3)
    assert report.passed, report.first_failure


def test_comp_lemma_suite_passes(sl2):
    report = comp_lemma_suite(sl2)
    assert report.passed, report.first_failure
    assert len(report.checks) >= 13

import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wiener_dirichlet._linalg import det
from wiener_dirichlet.errors import DimensionMismatch, SupNormExceedsOne, ValidationError
from wiener_dirichlet.torus import (GeneralSymbol, MonomialSymbol, TorusPolynomial, astar_apply,
                                   automorphism_check, blaschke_coefficients,
                                   blaschke_power_norms, blaschke_tail_bound, general_compose,
                                   isometry_check_general, isometry_check_monomial,
                                   log_on_circle_t2, loglog_slope, monomial_compose,
                                   multi_indices_upto, newman_boundedness_probe, sumset_spectrum,
                                   symbol_power, tpoly_mul)

T = TorusPolynomial


def poly(dim, degree, rng, terms=8):
    keys = list(multi_indices_upto(dim, degree))
    return T(dim, {rng.choice(keys): complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(terms)})


def polys(dim, degree):
    keys = list(multi_indices_upto(dim, degree))
    c = st.builds(complex, st.floats(-5, 5), st.floats(-5, 5))
    return st.dictionaries(st.sampled_from(keys), c, max_size=10).map(lambda t: T(dim, t))


# polynomials

def test_polynomial_canonical_order_and_validation():
    f = T(2, {(0, 1): 1, (1, 0): 2, (0, 0): 0})
    assert list(f.terms) == [(0, 1), (1, 0)]
    with pytest.raises(DimensionMismatch):
        T(2, {(1,): 1})
    with pytest.raises(ValidationError):
        T(1, {(-1,): 1})
    with pytest.raises(ValidationError):
        T(1, {(2**31,): 1})
    assert T.from_json(f.to_json()) == f


def test_tpoly_mul_examples():
    z1, z2 = T.variable(0, 2), T.variable(1, 2)
    assert tpoly_mul(z1, z2) == T(2, {(1, 1): 1})
    s = z1 + z2
    assert tpoly_mul(s, s) == T(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert tpoly_mul(s, s, degree_cap=1) == T(2, {})
    with pytest.raises(DimensionMismatch):
        tpoly_mul(z1, T.variable(0, 3))


@given(polys(3, 4), polys(3, 4), st.integers(0, 8))
def test_tpoly_mul_matches_double_loop(f, g, cap):
    ref = {}
    for a, x in f:
        for b, y in g:
            key = tuple(i + j for i, j in zip(a, b))
            if sum(key) <= cap:
                ref[key] = ref.get(key, 0) + x * y
    got = tpoly_mul(f, g, cap)
    for k in set(ref) | set(got.terms):
        assert abs(got[k] - ref.get(k, 0)) <= 1e-12 * (1 + abs(ref.get(k, 0)))


# monomial symbols

def test_astar_examples():
    assert astar_apply(MonomialSymbol([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), (3, 1, 4)) == (3, 1, 4)
    assert astar_apply(MonomialSymbol([[1, 1], [0, 1]]), (1, 1)) == (1, 2)
    ones = MonomialSymbol([[1, 1], [1, 1]])
    assert astar_apply(ones, (1, 0)) == astar_apply(ones, (0, 1)) == (1, 1)
    with pytest.raises(DimensionMismatch):
        astar_apply(ones, (1, 0, 0))


def test_monomial_symbol_validation():
    with pytest.raises(ValidationError):
        MonomialSymbol([[1, -1]])
    with pytest.raises(ValidationError):
        MonomialSymbol([[1]], [1.1])
    with pytest.raises(DimensionMismatch):
        MonomialSymbol([[1, 0], [1]])
    s = MonomialSymbol([[0, 1], [1, 0]], [1j, -1])
    assert MonomialSymbol.from_json(s.to_json()).matrix == s.matrix


def test_monomial_compose_examples():
    swap = MonomialSymbol([[0, 1], [1, 0]])
    assert monomial_compose(swap, T.variable(0, 2)) == T.variable(1, 2)
    ones = MonomialSymbol([[1, 1], [1, 1]])
    f = T(2, {(1, 0): 1, (0, 1): -1})
    assert f.norm() == 2
    assert monomial_compose(ones, f) == T(2, {}) and monomial_compose(ones, f).norm() == 0


@given(st.lists(st.integers(0, 3), min_size=4, max_size=4),
       st.lists(st.integers(0, 3), min_size=2, max_size=2), st.integers(0, 5))
def test_monomial_compose_single_term(entries, alpha, d):
    sym = MonomialSymbol([entries[:2], entries[2:]], [1j, np.exp(0.3j)])
    out = monomial_compose(sym, T(2, {tuple(alpha): 1.0}))
    assert len(out) == 1
    (key, c), = out.terms.items()
    assert key == astar_apply(sym, alpha)
    assert c == pytest.approx(sym.signs[0] ** alpha[0] * sym.signs[1] ** alpha[1])


square2 = st.lists(st.integers(0, 4), min_size=4, max_size=4).map(lambda e: [e[:2], e[2:]])


@given(square2, polys(2, 8))
def test_nonsingular_monomial_symbols_preserve_norm(matrix, f):
    if det(matrix) == 0:
        return
    sym = MonomialSymbol(matrix, [1j, -1])
    g = monomial_compose(sym, f)
    assert sorted(abs(a) for _, a in g) == sorted(abs(a) for _, a in f)
    assert g.norm() == pytest.approx(f.norm(), rel=1e-15)


def test_isometry_check_examples():
    r = isometry_check_monomial(MonomialSymbol([[1, 1], [0, 1]]), 6)
    assert r.is_isometry and r.witness is None and r.determinant == 1
    r = isometry_check_monomial(MonomialSymbol([[1, 1], [1, 1]]), 6)
    assert not r.is_isometry and r.witness == ((1, 0), (0, 1))
    diag = MonomialSymbol([[2, 0], [0, 3]])
    assert isometry_check_monomial(diag, 6).is_isometry
    rng = random.Random(7)
    for _ in range(100):
        f = poly(2, 6, rng)
        assert monomial_compose(diag, f).norm() == f.norm()


def _assert_collision(sym, witness):
    a, b = witness
    assert a != b and astar_apply(sym, a) == astar_apply(sym, b)


@given(square2)
def test_collision_search_complete_in_two_variables(matrix):
    if det(matrix) != 0:
        return
    bound = 2 * max(max(r) for r in matrix) or 2
    r = isometry_check_monomial(MonomialSymbol(matrix), max(bound, 1))
    assert r.witness_source == "search"
    _assert_collision(MonomialSymbol(matrix), r.witness)


def test_degree_bound_k_times_max_entry_can_be_too_small():
    sym = MonomialSymbol([[3, 4, 3], [4, 1, 4], [3, 5, 3]])
    assert det(sym.matrix) == 0
    bound = 3 * 5
    found = {}
    for alpha in multi_indices_upto(3, bound):
        key = astar_apply(sym, alpha)
        assert key not in found
        found[key] = alpha
    r = isometry_check_monomial(sym, bound)
    assert not r.is_isometry and r.witness_source == "kernel"
    _assert_collision(sym, r.witness)


@given(st.integers(2, 4), st.integers(1, 3), st.randoms(use_true_random=False))
def test_singular_matrices_always_get_a_witness(k, E, rnd):
    rows = [[rnd.randint(0, E) for _ in range(k)] for _ in range(k - 1)]
    rows.append([a + b for a, b in zip(rows[0], rows[-1])] if k > 2 else list(rows[0]))
    sym = MonomialSymbol(rows)
    r = isometry_check_monomial(sym, 2)
    assert not r.is_isometry
    _assert_collision(sym, r.witness)


def test_non_square_rank():
    # three outputs, two variables: the transpose cannot be injective
    r = isometry_check_monomial(MonomialSymbol([[1, 0], [0, 1], [1, 1]]), 3)
    assert not r.is_isometry and r.determinant is None
    _assert_collision(MonomialSymbol([[1, 0], [0, 1], [1, 1]]), r.witness)
    assert isometry_check_monomial(MonomialSymbol([[1, 0, 2], [0, 1, 1]]), 4).is_isometry


def test_automorphism_examples():
    assert automorphism_check(MonomialSymbol([[0, 1], [1, 0]], [1j, -1]))
    assert not automorphism_check(MonomialSymbol([[1, 1], [0, 1]]))
    assert not automorphism_check(MonomialSymbol([[2]]))
    assert automorphism_check(MonomialSymbol([[1]]))
    assert not automorphism_check(MonomialSymbol([[1, 0]]))


# general symbols

def half_sum(dim, i, j):
    e = [0] * dim
    a, b = list(e), list(e)
    a[i] = b[j] = 1
    return T(dim, {tuple(a): 0.5, tuple(b): 0.5})


def test_general_isometry_product_of_averages():
    sym = GeneralSymbol([half_sum(4, 0, 1), half_sum(4, 2, 3)])
    r = isometry_check_general(sym, 6)
    assert r.conditions_a and r.conditions_b and r.witness is None
    assert r.to_json()["certified_degree"] == 6


def test_general_isometry_violation_found_by_search():
    sym = GeneralSymbol([half_sum(2, 0, 1), T.variable(0, 2)])
    r = isometry_check_general(sym, 6)
    assert r.conditions_a and not r.conditions_b
    a, b = r.witness
    assert r.witness_source == "search"
    assert symbol_power(sym, a).spectrum & symbol_power(sym, b).spectrum


def test_general_isometry_relation_fallback():
    sym = GeneralSymbol([half_sum(2, 0, 1), T.variable(0, 2)])
    r = isometry_check_general(sym, 0)
    assert not r.conditions_b and r.witness_source == "integer relation"
    a, b = r.witness
    assert a != b
    assert symbol_power(sym, a).spectrum & symbol_power(sym, b).spectrum


def test_general_identity_coordinates():
    sym = GeneralSymbol([T.variable(0, 3), T.variable(1, 3), T.variable(2, 3)])
    r = isometry_check_general(sym, 6)
    assert r.conditions_a and r.conditions_b


def test_general_symbol_sup_check():
    with pytest.raises(SupNormExceedsOne):
        GeneralSymbol([T(1, {(0,): 0.6, (1,): 0.6})])
    with pytest.raises(DimensionMismatch):
        GeneralSymbol([T.variable(0, 1), T.variable(0, 2)])


def test_general_symbol_json_round_trip():
    sym = GeneralSymbol([half_sum(2, 0, 1), T.variable(1, 2, 1j)])
    back = GeneralSymbol.from_json(sym.to_json())
    assert back.components == sym.components


def one_variable_battery():
    bl = blaschke_coefficients(0.5, 60)
    return [
        (T(1, {(1,): 1}), True),
        (T(1, {(2,): 1j}), True),
        (T(1, {(1,): 0.5, (2,): 0.5}), False),
        (T(1, {(1,): 0.9}), False),
        (T(1, [((j,), c) for j, c in enumerate(bl)]), False),
        (T(1, {(3,): np.exp(2.1j)}), True),
        (T(1, {(0,): 1}), False),
    ]


def test_one_variable_battery():
    for p, expected in one_variable_battery():
        assert isometry_check_general(GeneralSymbol([p]), 6).is_isometry is expected, p


@given(st.integers(0, 5), st.floats(0, 2 * math.pi), st.floats(0.05, 1.0))
def test_one_variable_isometries_are_unimodular_monomials(d, arg, mod):
    p = T(1, {(d,): mod * complex(math.cos(arg), math.sin(arg))})
    r = isometry_check_general(GeneralSymbol([p]), 6)
    assert r.is_isometry == (d >= 1 and abs(mod - 1) <= 1e-12)


@given(st.randoms(use_true_random=False))
def test_certified_isometries_preserve_norms(rnd):
    candidates = [
        GeneralSymbol([half_sum(4, 0, 1), half_sum(4, 2, 3)]),
        GeneralSymbol([T.variable(1, 2, 1j), T(2, {(2, 0): -1})]),
        GeneralSymbol([T(3, {(1, 0, 0): 0.25, (0, 1, 0): 0.75}), T.variable(2, 3)]),
        GeneralSymbol([half_sum(2, 0, 1), T.variable(0, 2)]),
    ]
    d = 4
    for sym in candidates:
        r = isometry_check_general(sym, d)
        if not r.is_isometry:
            continue
        f = poly(sym.dim_out, d, rnd, terms=6)
        assert general_compose(sym, f).norm() == pytest.approx(f.norm(), rel=1e-12)


def test_sumset_spectrum():
    s = [frozenset({(1, 0), (0, 1)})]
    assert sumset_spectrum(s, (2,), 2) == {(2, 0), (1, 1), (0, 2)}


# growth probes

def test_blaschke_zero_parameter():
    assert all(v == 1 for _, v in blaschke_power_norms(0, 50))


def test_blaschke_first_power():
    a = 0.5
    L = 64
    (n, v), = blaschke_power_norms(a, 1, taylor_len=L)
    assert n == 1
    ref = a + (1 - a * a) * math.fsum(a**j for j in range(L - 1))
    assert v == pytest.approx(ref, rel=1e-15)
    assert v == pytest.approx(2.0, rel=1e-15)


def test_blaschke_coefficients_match_series_division():
    a = 0.3 + 0.4j
    c = blaschke_coefficients(a, 30)
    # (1 - conj(a) z) * phi(z) = z - a
    prod = np.convolve([1, -a.conjugate()], c)[:30]
    expected = np.zeros(30, dtype=complex)
    expected[0], expected[1] = -a, 1
    assert np.allclose(prod, expected, atol=1e-15)


def test_blaschke_powers_match_direct_convolution():
    a = 0.4 - 0.2j
    L = 400
    c = blaschke_coefficients(a, L)
    power = np.array([1.0 + 0j])
    out = blaschke_power_norms(a, 12, taylor_len=L)
    for n in range(1, 13):
        power = np.convolve(power, c)[:L]
        assert out[n - 1][1] == pytest.approx(np.abs(power).sum(), rel=1e-12)


def test_blaschke_truncation_checked():
    with pytest.raises(ValidationError):
        blaschke_power_norms(0.5, 100, taylor_len=32)
    with pytest.raises(ValidationError):
        blaschke_power_norms(1.0, 3)


def test_blaschke_tail_bound_is_sound():
    a, n = 0.5, 40
    short = blaschke_power_norms(a, n, taylor_len=256)[-1][1]
    long = blaschke_power_norms(a, n, taylor_len=4096)[-1][1]
    assert long - short <= blaschke_tail_bound(a, n, 256) + 1e-12


def test_blaschke_slope():
    pairs = blaschke_power_norms(0.5, 1024)
    assert 0.4 <= loglog_slope(pairs, 64, 1024) <= 0.6


def test_newman_examples():
    assert all(v == 1 for _, v in newman_boundedness_probe(T(1, {(1,): 1}), 30))
    p = T(1, {(0,): 5**-0.5, (1,): 5**-0.5, (2,): -(5**-0.5)})
    seq = dict(newman_boundedness_probe(p, 512))
    assert max(seq[n] for n in range(256, 513)) <= 1.05 * max(seq[n] for n in range(1, 256))


def test_newman_average_of_one_and_z():
    # binomial coefficients over 2^n: norms are exactly one
    seq = newman_boundedness_probe(T(1, {(0,): 0.5, (1,): 0.5}), 200)
    assert all(v == pytest.approx(1.0, abs=1e-12) for _, v in seq)
    t2 = log_on_circle_t2(T(1, {(0,): 0.5, (1,): 0.5}), 0.0)
    assert t2 == pytest.approx(-0.125) and t2.imag == 0


def test_newman_rejects_large_sup():
    with pytest.raises(SupNormExceedsOne):
        newman_boundedness_probe(T(1, {(0,): 0.7, (1,): 0.7}), 5)

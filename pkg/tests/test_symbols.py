import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wiener_dirichlet.dirichlet import DirichletSeries, a_plus_norm_partial
from wiener_dirichlet.errors import ConstantSymbol, IndexOverflow, NotIndependent, ValidationError
from wiener_dirichlet.symbols import (CompositionSymbol, Verdict, dirichlet_isometry_check,
                                      image_basis, kronecker_inf, multiplicative_independence,
                                      norm_sequence, re_phi_on_line, spectra_disjointness_probe,
                                      sufficient_condition)


def expansion_oracle(phi, n, cutoff):
    """n^{-phi} by multinomial expansion over tail exponents, independent of exp_neg_log."""
    tail = sorted(phi.tail.items())
    L = math.log(n)
    shift = n ** phi.c0
    out = {}

    def rec(i, index, coeff, total):
        if i == len(tail):
            m = index * shift
            if m <= cutoff:
                out[m] = out.get(m, 0) + coeff * (-L) ** total
            return
        q, c = tail[i]
        k = 0
        idx = index
        term = 1.0 + 0j
        while idx * shift <= cutoff:
            rec(i + 1, idx, coeff * term, total + k)
            k += 1
            idx *= q
            term = term * c / k
    rec(0, 1, 1.0 + 0j, 0)
    scale = cmath.exp(-phi.c1 * L)
    return {m: scale * v for m, v in out.items()}


def test_symbol_validation():
    with pytest.raises(ConstantSymbol):
        CompositionSymbol(0, {1: 2.0})
    with pytest.raises(ValidationError):
        CompositionSymbol(-1, {2: 1})
    with pytest.raises(ValidationError):
        CompositionSymbol(1.5, {})
    phi = CompositionSymbol(1, {1: 1j, 3: 0.5})
    assert phi.c1 == 1j and phi.tail == {3: 0.5}
    assert CompositionSymbol.from_json(phi.to_json()).to_json() == phi.to_json()
    assert phi(2) == pytest.approx(2 + 1j + 0.5 / 9)


def test_image_basis_at_one():
    assert image_basis(CompositionSymbol(2, {2: 3}), 1, 100) == DirichletSeries.unit(100)


def test_image_basis_vertical_translation():
    tau = 1.7
    f = image_basis(CompositionSymbol(2, {1: 1j * tau}), 3, 10**6)
    assert f.support == {9}
    assert f[9] == pytest.approx(cmath.exp(-1j * tau * math.log(3)))
    assert a_plus_norm_partial(f) == 1.0


def test_image_basis_half_tail():
    phi = CompositionSymbol(1, {1: 1, 2: 0.5})
    f = image_basis(phi, 2, 2**40)
    L = math.log(2)
    for k in range(39):
        assert f[2 * 2**k] == pytest.approx(0.5 * (-0.5 * L) ** k / math.factorial(k), rel=1e-13)
    assert a_plus_norm_partial(f) == pytest.approx(2**-0.5, rel=1e-14)


def test_image_basis_overflow():
    with pytest.raises(IndexOverflow):
        image_basis(CompositionSymbol(70, {}), 2, 2**64 - 1)


def _symbol(c0, c1, tail):
    tail = {n: c for n, c in tail.items() if c != 0}
    return CompositionSymbol(c0 if (c0 or tail) else 1, {1: c1, **tail})


symbols = st.builds(
    _symbol,
    st.integers(0, 2),
    st.builds(complex, st.floats(-1, 2), st.floats(-2, 2)),
    st.dictionaries(st.integers(2, 12), st.builds(complex, st.floats(-0.6, 0.6), st.floats(-0.6, 0.6)),
                    max_size=3))


@given(symbols, st.integers(2, 12))
def test_image_basis_matches_expansion_oracle(phi, n):
    cutoff = 5000
    got = image_basis(phi, n, cutoff)
    ref = expansion_oracle(phi, n, cutoff)
    scale = n ** (sum(abs(c) for c in phi.tail.values()) - phi.c1.real)
    for m in set(got.support) | set(ref):
        assert abs(got[m] - ref.get(m, 0)) <= 1e-12 * max(scale, 1.0)


@given(symbols, st.integers(2, 30), st.integers(1, 3000), st.integers(1, 3000))
def test_partial_norm_monotone_and_bounded(phi, n, N1, N2):
    lo, hi = sorted((N1, N2))
    a = a_plus_norm_partial(image_basis(phi, n, lo))
    b = a_plus_norm_partial(image_basis(phi, n, hi))
    assert a <= b * (1 + 1e-12)
    total = math.fsum(abs(c) for c in phi.coeffs.values())
    bound = n ** (math.fsum(abs(c) for c in phi.tail.values()) - phi.c1.real)
    assert b <= bound * (1 + 1e-9)
    assert bound <= n ** total * (1 + 1e-12)


@given(symbols, st.integers(2, 20), st.integers(1, 3))
def test_norms_do_not_depend_on_c0(phi, n, c0):
    base = phi.with_c0(0) if phi.tail else None
    if base is None:
        return
    N = 2000
    a = a_plus_norm_partial(image_basis(base, n, N))
    b = a_plus_norm_partial(image_basis(phi.with_c0(c0), n, N * n**c0))
    assert a == b


def test_norm_sequence_vertical_translation():
    seq = norm_sequence(CompositionSymbol(1, {1: 2.5j}), 20, 2**20)
    assert [n for n, _ in seq] == list(range(1, 21))
    assert all(v == 1.0 for _, v in seq)


@pytest.mark.parametrize("c", [0.5, -0.25j, 1.0])
def test_norm_sequence_monomial_tail(c):
    phi = CompositionSymbol(0, {3: c})
    for n, v in norm_sequence(phi, 10, 3**40):
        assert v == pytest.approx(n ** abs(c), rel=1e-12)


def test_norm_sequence_matches_oracle_and_parallel():
    phi = CompositionSymbol(1, {1: 0.8, 2: 0.3, 5: -0.2j})
    seq = norm_sequence(phi, 16, 10**5)
    for n, v in seq:
        ref = math.fsum(abs(x) for x in expansion_oracle(phi, n, 10**5).values())
        assert v == pytest.approx(ref, rel=1e-12)
    assert norm_sequence(phi, 16, 10**5, workers=2) == seq


def test_norm_sequence_validates():
    with pytest.raises(ValidationError):
        norm_sequence(CompositionSymbol(1, {}), 1, 10)


def test_sufficient_condition_contraction_boundary():
    d = sufficient_condition(CompositionSymbol(1, {1: 0.8, 2: 0.4, 3: 0.4}))
    assert d.verdict is Verdict.BOUNDED_CONTRACTION
    assert "snapped" in d.evidence and d.rule


def test_sufficient_condition_example_symbol_with_unit_constant():
    # c1 = 1 exceeds 0.4 + 0.4 strictly
    assert sufficient_condition(CompositionSymbol(1, {1: 1, 2: 0.4, 3: 0.4})).verdict is Verdict.COMPACT


def test_sufficient_condition_compact_and_inconclusive():
    assert sufficient_condition(CompositionSymbol(1, {1: 1, 2: 0.3})).verdict is Verdict.COMPACT
    assert sufficient_condition(CompositionSymbol(1, {1: 0.1, 2: 1})).verdict is Verdict.INCONCLUSIVE


def test_compact_verdict_norms_decrease():
    for phi in (CompositionSymbol(1, {1: 1, 2: 0.3}), CompositionSymbol(0, {1: 1.5, 3: 0.5j})):
        assert sufficient_condition(phi).verdict is Verdict.COMPACT
        vals = [v for _, v in norm_sequence(phi, 64, 2**30)]
        assert all(b < a for a, b in zip(vals[1:], vals[2:]))
        assert vals[-1] < 0.5 * vals[1]


@pytest.mark.parametrize("qs,expected", [((2, 6, 30), True), ((2, 4), False),
                                         ((6, 10, 15), True), ((6, 10, 15, 2), False),
                                         ((2, 3, 5, 7), True),
                                         ((12, 12), False), ((), True)])
def test_multiplicative_independence(qs, expected):
    assert multiplicative_independence(qs) is expected


def test_six_ten_fifteen_exponent_determinant():
    # rows (1,1,0), (1,0,1), (0,1,1): determinant -2, so no integer relation exists
    from wiener_dirichlet._linalg import det
    assert det([[1, 1, 0], [1, 0, 1], [0, 1, 1]]) == -2


def test_independence_rejects_small():
    with pytest.raises(ValidationError):
        multiplicative_independence([1, 2])


def test_kronecker_examples():
    assert kronecker_inf(CompositionSymbol(1, {}), 0.5) == 0.5
    phi = CompositionSymbol(1, {1: 1, 2: 0.5, 6: 0.25})
    assert kronecker_inf(phi, 1) == pytest.approx(1 + 1 - 0.25 - 0.25 / 6)
    with pytest.raises(NotIndependent):
        kronecker_inf(CompositionSymbol(1, {2: 1, 4: 1}), 1)


def test_kronecker_grid_oracle():
    phi = CompositionSymbol(1, {1: 1, 2: 0.5, 6: 0.25})
    t = np.arange(0, 2000, 0.01)
    for sigma in (0.25, 1.0):
        grid = re_phi_on_line(phi, sigma, t).min()
        exact = kronecker_inf(phi, sigma)
        assert exact - 1e-9 <= grid < exact + 1e-2


def test_kronecker_negative_limit_signals_unboundedness():
    phi = CompositionSymbol(1, {1: 0.5, 2: 0.4, 3: 0.4})
    vals = [kronecker_inf(phi, s) - s for s in (1e-3, 1e-5, 1e-7)]
    assert vals[-1] == pytest.approx(0.5 - 0.8, abs=1e-5)
    assert all(v < 0 for v in vals)


def test_isometry_check():
    assert dirichlet_isometry_check(CompositionSymbol(3, {1: 2.5j}))
    assert not dirichlet_isometry_check(CompositionSymbol(1, {1: 1}))
    phi = CompositionSymbol(1, {1: 1j, 2: 0.1})
    assert not dirichlet_isometry_check(phi)
    assert any(v != 1.0 for _, v in norm_sequence(phi, 8, 2**20))


def test_spectra_probe_examples():
    assert spectra_disjointness_probe(CompositionSymbol(2, {1: 1j}), 64, 2**20) is None
    assert spectra_disjointness_probe(CompositionSymbol(0, {1: 1, 2: 1}), 8, 2**20) == (1, 2)
    m, n = spectra_disjointness_probe(CompositionSymbol(1, {1: 1, 2: 1}), 8, 2**20)
    assert (m, n) == (2, 4)
    a = image_basis(CompositionSymbol(1, {1: 1, 2: 1}), 2, 2**20).support
    b = image_basis(CompositionSymbol(1, {1: 1, 2: 1}), 4, 2**20).support
    assert a & b


@given(st.integers(1, 3), st.floats(-5, 5))
def test_isometry_implies_unit_norms_and_disjoint_spectra(c0, tau):
    phi = CompositionSymbol(c0, {1: 1j * tau} if tau else {})
    assert dirichlet_isometry_check(phi)
    assert all(v == 1.0 for _, v in norm_sequence(phi, 24, 2**40))
    assert spectra_disjointness_probe(phi, 24, 2**40) is None

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarmult.errors import NonIntegerCoefficient, Unstable
from polarmult.graded import polynomial_ring
from polarmult.hilbert import (
    HilbertTable,
    WindowOptions,
    fit_bivariate,
    fit_univariate,
    hilbert_table,
    mixed_coefficients,
    univariate_multiplicity,
)


def table_from(fn, v0=4, n0=4, width=8, margin=3):
    t = HilbertTable("closed form", v0, n0, width, margin)
    for v in range(v0, v0 + width + margin):
        for n in range(n0, n0 + width + margin):
            t.values[(v, n)] = fn(v, n)
    return t


def test_tables_of_polynomial_rings():
    t = hilbert_table(polynomial_ring(["u"], ["x"]), 0, 0, 4, 1)
    assert all(val == n + 1 for (v, n), val in t.values.items())
    t = hilbert_table(polynomial_ring(["u"], ["x", "y"]), 0, 0, 4, 1)
    assert all(val == (v + 1) * (n + 1) for (v, n), val in t.values.items())
    t = hilbert_table(polynomial_ring([], ["x"]), 0, 0, 4, 1)
    assert set(t.values.values()) == {1}


def test_closed_form_fits():
    f = fit_bivariate(table_from(lambda v, n: n + 1))
    assert f.degree == 1 and mixed_coefficients(f) == {(0, 1): 1, (1, 0): 0}
    f = fit_bivariate(table_from(lambda v, n: (v + 1) * (n + 1)))
    assert mixed_coefficients(f) == {(2, 0): 0, (1, 1): 1, (0, 2): 0}
    f = fit_bivariate(table_from(lambda v, n: (n + 1) * v + (n + 1) * (n + 2) // 2))
    assert mixed_coefficients(f) == {(2, 0): 0, (1, 1): 1, (0, 2): 1}
    f = fit_bivariate(table_from(lambda v, n: 2 * v + 3))
    assert mixed_coefficients(f) == {(1, 0): 2, (0, 1): 0}


def test_empty_table():
    f = fit_bivariate(table_from(lambda v, n: 0))
    assert f.empty and f.e(0, 0) == 0


def test_non_polynomial_data_is_unstable():
    with pytest.raises(Unstable) as exc:
        fit_bivariate(table_from(lambda v, n: 2 ** min(v, 12)))
    assert exc.value.suggestion
    with pytest.raises(Unstable):
        # polynomial on the window but not on the margin band
        fit_bivariate(table_from(lambda v, n: n + 1 if v < 12 else n + 2))


def test_negative_top_coefficient_rejected():
    with pytest.raises(NonIntegerCoefficient):
        fit_bivariate(table_from(lambda v, n: 100 - v))


def test_hilbert_counts_are_monotone_in_n():
    t = hilbert_table(polynomial_ring(["u1", "u2"], ["x"], ["u1*x"]), 2, 0, 4, 2)
    for v in range(2, 8):
        row = [t.values[(v, n)] for n in range(0, 6)]
        assert row == sorted(row)


coeff = st.integers(0, 4)


@settings(max_examples=40, deadline=None)
@given(coeff, coeff, coeff, coeff, st.integers(-3, 3), st.integers(0, 5), st.integers(0, 5))
def test_top_coefficients_do_not_depend_on_window(a, b, c, d, e, dv, dn):
    # H = a C(v,2) + b v n + c C(n,2) + d v + e n + const, nonnegative top part
    def H(v, n):
        return a * v * (v - 1) // 2 + b * v * n + c * n * (n - 1) // 2 + d * v + e * n + 50

    f1 = fit_bivariate(table_from(H))
    f2 = fit_bivariate(table_from(H, v0=4 + dv, n0=4 + dn))
    assert mixed_coefficients(f1) == mixed_coefficients(f2)
    # exact interpolation: zero residual everywhere on the window
    assert all(f1(v, n) == H(v, n) for v in range(0, 20) for n in range(0, 20))


def test_univariate_multiplicities():
    assert univariate_multiplicity(lambda n: n + 1, 1) == 1
    assert univariate_multiplicity(lambda n: 5, 1) == 0
    assert univariate_multiplicity(lambda n: (n + 1) * (n + 2) // 2, 2) == 1
    assert univariate_multiplicity([(n + 1) * (n + 2) // 2 for n in range(12)], 2) == 1
    with pytest.raises(Unstable):
        univariate_multiplicity(lambda n: n * n, 1)


def test_univariate_growth_needs_a_cap():
    opts = WindowOptions(vmax=4)
    with pytest.raises(Unstable):
        fit_univariate(lambda k: 2 ** k, opts)


def test_window_origins_are_capped_per_axis():
    assert WindowOptions(vmax=12, nmax=6).origins() == [(4, 4), (8, 6), (12, 6)]
    assert WindowOptions().origins(observed_degree=10) == [(12, 12)]

import pytest
from hypothesis import given
from hypothesis import strategies as st

from convdyn.cylinder import coefficient_functional, embed, essential_dimension, restrict
from convdyn.errors import DimensionTooSmall
from convdyn.series import MultiIndex, TruncatedEntireFunction, constant, gap_series, linear_combine, monomial

z = {j: monomial({j: 1}) for j in range(1, 6)}

multi_indices = st.dictionaries(st.integers(1, 5), st.integers(1, 3), max_size=3).map(MultiIndex)
polynomials = st.dictionaries(
    multi_indices, st.complex_numbers(max_magnitude=5, allow_nan=False), max_size=8
).map(TruncatedEntireFunction)


def test_essential_dimension_examples():
    assert essential_dimension(monomial({3: 2}) + z[1]) == 3
    assert essential_dimension(constant(5)) == 0
    assert essential_dimension(gap_series(variable=2)) == 2


def test_embed_examples():
    f = z[1] + z[2]
    assert embed(f, 2) == f
    assert embed(z[1], 5) == z[1]
    with pytest.raises(DimensionTooSmall):
        embed(z[3], 2)


def test_restrict_examples():
    assert restrict(z[1] + z[3], 2) == z[1]
    f = z[1] * z[2] + 4
    assert restrict(f, 2) is f
    assert dict(restrict(z[1] * z[3] + 7, 1).terms) == {MultiIndex(): 7}


def test_coefficient_functional_examples():
    f = z[2] + monomial({1: 2}, 3)
    assert coefficient_functional(f, {2: 1}) == 1
    assert coefficient_functional(monomial({1: 2, 2: 1}, 5), {1: 2, 2: 1}) == 5
    assert coefficient_functional(f, {3: 1}) == 0


def test_cylinder_index_must_be_positive():
    with pytest.raises(ValueError):
        restrict(z[1], 0)
    with pytest.raises(ValueError):
        embed(z[1], 0)


@given(polynomials, st.integers(0, 3))
def test_restrict_after_embed_is_identity(f, extra):
    n = max(f.essential_dimension(), 1) + extra
    assert restrict(embed(f, n), n) == f


@given(polynomials, st.integers(0, 3), st.integers(0, 3))
def test_inclusion_chain(f, a, b):
    n = max(f.essential_dimension(), 1) + a
    m = n + b
    assert embed(embed(f, n), m) == embed(f, m)


@given(polynomials, polynomials, st.complex_numbers(max_magnitude=3), st.complex_numbers(max_magnitude=3))
def test_linear_combination_stays_in_cylinder(f, g, a, b):
    h = linear_combine([(a, f), (b, g)])
    assert h.essential_dimension() <= max(f.essential_dimension(), g.essential_dimension())


@given(polynomials)
def test_restrict_fixes_exactly_from_essential_dimension(f):
    d = f.essential_dimension()
    for n in range(1, d + 3):
        assert (restrict(f, n) == f) == (n >= d)


@given(polynomials)
def test_next_variable_functional_separates(f):
    n = max(f.essential_dimension(), 1)
    alpha = MultiIndex.unit(n + 1)
    assert coefficient_functional(embed(f, n), alpha) == 0
    assert coefficient_functional(monomial(alpha), alpha) == 1


@given(polynomials, polynomials, st.complex_numbers(max_magnitude=3), multi_indices)
def test_coefficient_functional_is_linear(f, g, a, alpha):
    h = linear_combine([(a, f), (1, g)])
    lhs = coefficient_functional(h, alpha)
    rhs = a * coefficient_functional(f, alpha) + coefficient_functional(g, alpha)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))

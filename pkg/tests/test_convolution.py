import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from convdyn.convolution import (
    ConvolutionSymbol,
    apply,
    associated_operator,
    derivative,
    eigen_residual,
    find_dichotomy_points,
    identity,
    is_trivial,
    iterate_apply,
    symbol_from_dict,
    symbol_tail_bound,
    symbol_to_dict,
    symbol_value,
    translate,
    translate_via_symbol,
    translation_symbol,
)
from convdyn.cylinder import embed, restrict
from convdyn.errors import NotFound, TrivialOperator
from convdyn.series import MultiIndex, TruncatedEntireFunction, exp_function, monomial
from convdyn.suites import random_function, random_symbol, table_distance

z = {j: monomial({j: 1}) for j in range(1, 5)}
d1, d2, d3 = derivative(1), derivative(2), derivative(3)


def symbol(**terms):
    """symbol(id=2, d1=1, d1_2=3) -> 2*Id + d1 + 3*d1^2."""
    out = {}
    for name, c in terms.items():
        if name == "id":
            out[MultiIndex()] = c
            continue
        exps = {}
        for part in name.split("_and_"):
            var, _, power = part[1:].partition("_")
            exps[int(var)] = int(power or 1)
        out[MultiIndex(exps)] = c
    return ConvolutionSymbol(out)


@st.composite
def random_pairs(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return random_symbol(rng), random_function(rng), rng


# -- apply ------------------------------------------------------------------

def test_apply_examples():
    assert dict(apply(d1, monomial({1: 3})).terms) == {MultiIndex({1: 2}): 3}
    assert apply(symbol(id=1, d1=1), z[1]) == TruncatedEntireFunction({MultiIndex({1: 1}): 1, (): 1}, 1)
    assert apply(d2, monomial({1: 4})).is_zero()


def test_apply_against_sympy():
    xs = sympy.symbols("x1:4")
    L = symbol(id=0.5, d1=2, d1_2_and_d3=1, d2_3=-1)
    f = TruncatedEntireFunction({
        MultiIndex({1: 3, 3: 2}): 1.5,
        MultiIndex({2: 4}): -2,
        MultiIndex({1: 1, 2: 1}): 1,
    })
    F = sum(c.real * sympy.Mul(*[xs[v - 1] ** e for v, e in k]) for k, c in f.items())
    expected = (
        sympy.Rational(1, 2) * F
        + 2 * sympy.diff(F, xs[0])
        + sympy.diff(F, xs[0], 2, xs[2], 1)
        - sympy.diff(F, xs[1], 3)
    )
    got = sum(c.real * sympy.Mul(*[xs[v - 1] ** e for v, e in k]) for k, c in apply(L, f).items())
    assert sympy.simplify(sympy.expand(got - expected)) == 0


@given(random_pairs())
@settings(max_examples=50)
def test_apply_never_raises_dimension_or_degree(data):
    L, f, _ = data
    g = apply(L, f)
    assert g.essential_dimension() <= f.essential_dimension()
    assert g.degree() <= f.degree()


# -- translate --------------------------------------------------------------

def test_translate_examples():
    f = translate(monomial({1: 2}), [1])
    assert dict(f.terms) == {MultiIndex({1: 2}): 1, MultiIndex({1: 1}): -2, MultiIndex(): 1}
    g = z[1] * z[2] + monomial({1: 3})
    assert dict(translate(g, [0, 0, 1]).terms) == dict(g.terms)


def test_translate_against_symbolic_expansion():
    x1, x2 = sympy.symbols("x1 x2")
    expected = sympy.Poly(sympy.expand((x1 - 1) * (x2 - 1)), x1, x2)
    got = translate(z[1] * z[2], [1, 1])
    assert dict(got.terms) == {
        MultiIndex({1: m[0], 2: m[1]}): complex(c) for m, c in expected.terms()
    }


@given(random_pairs())
@settings(max_examples=60)
def test_translation_paths_agree(data):
    _, f, rng = data
    xi = [complex(*rng.uniform(-1, 1, 2)) for _ in range(int(rng.integers(1, 4)))]
    assert table_distance(translate(f, xi), translate_via_symbol(f, xi)) <= 1e-12


@given(random_pairs())
@settings(max_examples=60)
def test_translation_is_evaluation_shift(data):
    _, f, rng = data
    xi = [complex(*rng.uniform(-1, 1, 2)) for _ in range(3)]
    x = [complex(*rng.uniform(-1, 1, 2)) for _ in range(4)]
    shifted = [a - (xi[i] if i < 3 else 0) for i, a in enumerate(x)]
    assert abs(translate(f, xi)(x) - f(shifted)) <= 1e-10


@given(random_pairs())
@settings(max_examples=100)
def test_convolution_property(data):
    L, f, rng = data
    xi = [complex(*rng.uniform(0, 1, 2)) for _ in range(int(rng.integers(1, 4)))]
    left = apply(L, translate(f, xi))
    right = translate_via_symbol(apply(L, f), xi)
    assert table_distance(left, right) <= 1e-9


# -- associated operators ---------------------------------------------------

def test_associated_operator_examples():
    L = ConvolutionSymbol({MultiIndex({1: 1}): 1, MultiIndex({3: 1}): 1})
    assert associated_operator(L, 2).same_symbol(d1)
    xi = [0.5, -1.0, 2.0]
    T1 = associated_operator(translation_symbol(xi, 12), 1)
    assert T1.same_symbol(translation_symbol(xi[:1], 12))
    assert associated_operator(identity(3), 4).same_symbol(identity(3))


@given(random_pairs())
@settings(max_examples=80)
def test_associated_operator_factorization(data):
    L, f, _ = data
    n = max(f.essential_dimension(), 1)
    lhs = apply(L, embed(f, n))
    rhs = embed(apply(associated_operator(L, n), f), n)
    assert dict(lhs.terms) == dict(rhs.terms)
    # and via the definition J_n^* L pi_n^*
    assert dict(apply(associated_operator(L, n), f).terms) == dict(restrict(apply(L, embed(f, n)), n).terms)


@given(random_pairs())
@settings(max_examples=40)
def test_associated_operator_idempotent(data):
    L, _, _ = data
    span = L.variable_span()
    for n in range(max(span, 1), span + 3):
        assert associated_operator(L, n).same_symbol(L)
        assert associated_operator(associated_operator(L, n), n).same_symbol(associated_operator(L, n))


# -- triviality -------------------------------------------------------------

def test_is_trivial_examples():
    assert is_trivial(identity(3))
    assert not is_trivial(d1)
    assert not is_trivial(symbol(id=1, d1=1e-15))


@given(random_pairs())
@settings(max_examples=80)
def test_triviality_dichotomy(data):
    L, _, _ = data
    span = L.variable_span()
    assoc = [is_trivial(associated_operator(L, n)) for n in range(1, span + 2)]
    assert is_trivial(L) == all(assoc)
    if is_trivial(L):
        assert all(assoc)


# -- symbol values ----------------------------------------------------------

def test_symbol_value_examples():
    assert symbol_value(d1, [2]) == 2
    assert symbol_value(identity(), [5, 6j]) == 1
    T = translation_symbol([1], 60)
    assert symbol_value(T, [1]) == pytest.approx(math.exp(-1), rel=1e-14)
    assert symbol_tail_bound(T, [1]) < 1e-80


def test_symbol_value_is_eigenvalue_on_exponential():
    L = symbol(id=2, d1=1j, d1_and_d2=-0.5)
    lam = [0.3 + 0.1j, -0.7]
    e = exp_function(lam, 40)
    phi = symbol_value(L, lam)
    x = [0.2, 0.4j]
    assert apply(L, e)(x) == pytest.approx(phi * e(x), rel=1e-12)


@pytest.mark.parametrize(
    "L",
    [derivative(1), symbol(id=2, d1=1), translation_symbol([1], 60), symbol(d1_and_d2=1, id=0.5)],
)
@pytest.mark.parametrize("lam", [[1.0], [0.5, -1j]])
def test_eigen_residual_bound_holds_and_shrinks(L, lam):
    r10, b10 = eigen_residual(L, lam, 10)
    r20, b20 = eigen_residual(L, lam, 20)
    # bound is exact arithmetic; allow float round-off near 1e-16
    assert r10 <= b10 * (1 + 1e-12) + 1e-14
    assert r20 <= b20 * (1 + 1e-12) + 1e-14
    assert r20 < r10 or r10 == 0


def test_eigen_residual_for_derivative_is_last_term():
    value, bound = eigen_residual(derivative(1), [1.0], 10)
    assert value == pytest.approx(1 / math.factorial(10), rel=1e-13)
    assert bound == pytest.approx(1 / math.factorial(10), rel=1e-13)


# -- dichotomy search -------------------------------------------------------

@pytest.mark.parametrize(
    "L", [derivative(1), symbol(id=2, d1=1), translation_symbol([1], 60), symbol(d1_and_d2=1), symbol(d2=1, id=-0.5)]
)
def test_dichotomy_points(L):
    res = find_dichotomy_points(L)
    assert abs(symbol_value(L, res.small)) < 0.99
    assert abs(symbol_value(L, res.big)) > 1.01
    if res.boundary is not None:
        assert abs(symbol_value(L, res.boundary)) == pytest.approx(1, abs=1e-9)


def test_dichotomy_examples_from_hand():
    # phi = lam, 2 + lam, exp(-lam)
    assert abs(symbol_value(d1, [0.5])) < 1 < abs(symbol_value(d1, [2]))
    L = symbol(id=2, d1=1)
    assert abs(symbol_value(L, [-2])) < 1 < abs(symbol_value(L, [0]))
    T = translation_symbol([1], 60)
    assert abs(symbol_value(T, [1])) < 1 < abs(symbol_value(T, [-1]))


def test_dichotomy_rejects_trivial():
    with pytest.raises(TrivialOperator):
        find_dichotomy_points(identity(2))


def test_dichotomy_not_found_keeps_log():
    # phi = 5 + lam never drops below 1 for |lam| <= 2
    with pytest.raises(NotFound) as info:
        find_dichotomy_points(symbol(id=5, d1=1), t_max=2.0, directions=8, samples=8)
    assert len(info.value.log) == 8 * 9


# -- iterate ----------------------------------------------------------------

def test_iterate_examples():
    assert iterate_apply(d1, monomial({1: 3}), 3) == TruncatedEntireFunction({(): 6}, 3)
    f = z[1] * z[2]
    assert iterate_apply(d1, f, 0) is f
    L = symbol(d1=1, d2=1)
    assert dict(iterate_apply(L, f, 2).terms) == {MultiIndex(): 2}


@given(random_pairs(), st.integers(0, 6))
@settings(max_examples=50)
def test_iterate_factorizes(data, k):
    L, f, _ = data
    n = max(f.essential_dimension(), 1)
    full = iterate_apply(L, f, k)
    via = embed(iterate_apply(associated_operator(L, n), restrict(f, n), k), n)
    assert dict(full.terms) == dict(via.terms)
    assert full.essential_dimension() <= f.essential_dimension()


# -- JSON -------------------------------------------------------------------

def test_symbol_json_round_trip():
    for L in (symbol(id=2, d1=1j, d2_3=-0.25), translation_symbol([1, 0.5j], 8)):
        data = symbol_to_dict(L)
        assert set(data) >= {"label", "symbol"}
        back = symbol_from_dict(data)
        assert back == L
        assert back.tail == L.tail

from __future__ import annotations

import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadres.fields import QQ, FieldMismatchError, PrimeField, parse_field
from quadres.ring import (
    InvalidSpecError,
    Monomial,
    RingElement,
    RingSpec,
    enumerate_basis,
    hilbert_function,
    is_admissible,
    load_spec,
    multiply,
    normalize_spec,
    reduce_monomial,
    times_variable,
)


def mono(*exps):
    return Monomial(exps)


# -- brute-force reference ---------------------------------------------------


def brute_basis(spec, d):
    """All degree-d monomials, filtered by direct divisibility checks."""
    n = spec.num_vars
    out = []
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for k in combo:
            e[k] += 1
        divisible = any(
            (e[i - 1] >= 2) if i == j else (e[i - 1] >= 1 and e[j - 1] >= 1)
            for i, j in spec.generators
        )
        if not divisible:
            out.append(tuple(e))
    return sorted(out, reverse=True)


specs = st.integers(1, 4).flatmap(
    lambda n: st.lists(
        st.tuples(st.integers(1, n), st.integers(1, n)), max_size=6
    ).map(lambda pairs: normalize_spec(pairs, n))
)


def elements(spec, field=QQ, max_terms=4, max_deg=3):
    monos = [m for d in range(max_deg + 1) for m in enumerate_basis(spec, d)]
    return st.dictionaries(
        st.sampled_from(monos), st.integers(-5, 5), max_size=max_terms
    ).map(lambda terms: RingElement(spec, terms, field))


# -- normalize / load --------------------------------------------------------


def test_normalize_two_generator_ring():
    assert normalize_spec([(2, 1), (1, 3)], 3).generators == ((1, 2), (1, 3))


def test_normalize_empty():
    assert normalize_spec([], 2).generators == ()


def test_normalize_dedup():
    spec = normalize_spec([(1, 1), (1, 2), (2, 2), (1, 2)], 2)
    assert spec.generators == ((1, 1), (1, 2), (2, 2))


@pytest.mark.parametrize("pairs,n", [([(0, 1)], 2), ([(1, 3)], 2), ([(4, 4)], 3)])
def test_normalize_out_of_range(pairs, n):
    with pytest.raises(InvalidSpecError):
        normalize_spec(pairs, n)


def test_ringspec_rejects_unnormalized():
    with pytest.raises(InvalidSpecError):
        RingSpec(2, ((2, 1),))
    with pytest.raises(InvalidSpecError):
        RingSpec(0, ())


def test_load_spec_roundtrip(tmp_path, ex31):
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"variables": 3, "generators": [[3, 1], [2, 1], [1, 2]]}))
    assert load_spec(path) == ex31
    assert RingSpec.from_json(ex31.to_json()) == ex31


def test_load_spec_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"variables": 2}')
    with pytest.raises(InvalidSpecError):
        load_spec(path)


# -- reduction and products --------------------------------------------------


def test_reduce_examples(ex31):
    assert reduce_monomial(ex31, mono(1, 1, 0)) is None
    assert reduce_monomial(ex31, mono(0, 1, 1)) == mono(0, 1, 1)
    assert reduce_monomial(ex31, mono(2, 0, 0)) == mono(2, 0, 0)


def test_times_variable_agrees_with_reduce(ex31):
    for d in range(4):
        for m in enumerate_basis(ex31, d):
            for l in range(1, 4):
                expected = reduce_monomial(ex31, m.times(Monomial.var(3, l)))
                assert times_variable(ex31, l, m) == expected


def test_multiply_examples(ex31):
    x1, x2, x3 = (RingElement.var(ex31, i) for i in (1, 2, 3))
    assert multiply(ex31, x1, x2).is_zero()
    one = RingElement.one(ex31)
    r = x2 + x3 + x1 * x1
    assert multiply(ex31, one, r) == r
    prod = multiply(ex31, x2 + x3, x2)
    assert prod == RingElement(ex31, {mono(0, 2, 0): 1, mono(0, 1, 1): 1})


def test_zero_is_empty_map(ex31):
    x1 = RingElement.var(ex31, 1)
    assert (x1 - x1).terms == {}
    assert RingElement(ex31, {mono(1, 1, 0): 3}).terms == {}


def test_field_mismatch(ex31):
    a = RingElement.var(ex31, 1, QQ)
    b = RingElement.var(ex31, 1, PrimeField(7))
    with pytest.raises(FieldMismatchError):
        multiply(ex31, a, b)
    with pytest.raises(FieldMismatchError):
        a + b


def test_prime_field_coefficients_reduced():
    spec = normalize_spec([(1, 1)], 1)
    f = PrimeField(5)
    r = RingElement(spec, {mono(1): 7, mono(0): -1}, f)
    assert r.terms == {mono(1): 2, mono(0): 4}
    assert RingElement(spec, {mono(0): Fraction(1, 2)}, f).terms == {mono(0): 3}


def test_prime_two_warns():
    with pytest.warns(UserWarning, match="signs"):
        PrimeField(2)


@pytest.mark.parametrize("text", ["fp:4", "fp:x", "reals", "fp:1"])
def test_parse_field_rejects(text):
    with pytest.raises(ValueError):
        parse_field(text)


def test_parse_field():
    assert parse_field("q") is QQ
    assert parse_field("fp:32003").p == 32003


# -- basis and Hilbert function ----------------------------------------------


def test_basis_examples(ex31, ex32):
    assert enumerate_basis(ex31, 0) == (mono(0, 0, 0),)
    assert enumerate_basis(ex31, 2) == (mono(2, 0, 0), mono(0, 2, 0), mono(0, 1, 1), mono(0, 0, 2))
    assert enumerate_basis(ex32, 2) == ()


def test_hilbert_examples(ex31, ex32):
    assert hilbert_function(ex32, 4) == [1, 2, 0, 0, 0]
    assert hilbert_function(normalize_spec([], 1), 5) == [1] * 6
    # brute force: x1^d plus the d+1 monomials of k[x2, x3]
    oracle = [len(brute_basis(ex31, d)) for d in range(8)]
    assert oracle == [1, 3, 4, 5, 6, 7, 8, 9]
    assert hilbert_function(ex31, 7) == oracle


@settings(max_examples=60, deadline=None)
@given(specs, st.integers(0, 5))
def test_basis_matches_brute_force(spec, d):
    got = enumerate_basis(spec, d)
    assert [tuple(m) for m in got] == brute_basis(spec, d)
    assert all(m.degree == d and is_admissible(spec, m) for m in got)


@settings(max_examples=60, deadline=None)
@given(specs, st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_reduce_idempotent(spec, exps):
    m = Monomial(exps[: spec.num_vars])
    once = reduce_monomial(spec, m)
    if once is not None:
        assert reduce_monomial(spec, once) == once


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_multiply_associative_commutative(data):
    spec = data.draw(specs)
    field = data.draw(st.sampled_from([QQ, PrimeField(32003)]))
    a, b, c = (data.draw(elements(spec, field)) for _ in range(3))
    assert multiply(spec, a, multiply(spec, b, c)) == multiply(spec, multiply(spec, a, b), c)
    assert multiply(spec, a, b) == multiply(spec, b, a)
    assert multiply(spec, a, b + c) == multiply(spec, a, b) + multiply(spec, a, c)

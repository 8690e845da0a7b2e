"""Smoke tests for the Python module."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import rbdecomp as rb

SIGMA = "(1001,1100,0101)(1110,0110,0111,1111)(1010,0010,0011,1011)"


def test_perm_basics():
    p = rb.Perm.from_cycles("(0000,0001)(0010,0011)")
    assert p.n == 4 and len(p) == 16
    assert p(0) == 1 and p(2) == 3
    assert p.is_even() and (p * p).is_identity()
    assert p.pattern() == {1: 12, 2: 2}
    assert rb.Perm(4, p.images) == p
    assert p.inverse() == p
    assert rb.Perm.from_cycles(p.cycle_string(), 4) == p
    with pytest.raises(rb.ContractError):
        rb.Perm(2, [0, 1, 1, 3])
    with pytest.raises(rb.ParseError):
        rb.parse_perm("2\n0 1 1 3\n")
    with pytest.raises(ValueError):
        rb.Perm.from_cycles("(00,01)(01,10)")


def test_worked_instance():
    s = rb.Perm.from_cycles(SIGMA)
    assert rb.pair_counts(s, 1, 2) == ([1, 0, 1, 2], [1, 0, 1, 2])
    assert rb.case_label(s, 1, 2) == "Good1"
    d = rb.decompose7(s)
    assert len(d) <= 7
    assert d.product() == s
    assert rb.verify(s, d)["ok"]
    assert rb.oracle_taxonomy()["holds"]


def test_decompose7_and_json_round_trip():
    s = rb.random_even_perm(9, seed=3)
    d = rb.decompose7(s)
    assert d.mode == "block7" and len(d) <= 7
    for b in d.blocks:
        assert rb.is_concurrent(b.lifted(), b.dim)
    back = rb.Decomposition.from_json(d.to_json())
    assert back.product() == s
    assert json.loads(back.to_json()) == json.loads(d.to_json())
    with pytest.raises(rb.ParseError):
        rb.Decomposition.from_json("{")


def test_decompose10():
    s = rb.random_even_perm(10, seed=4)
    d = rb.decompose10(s)
    assert len(d) <= 10
    assert all(b.inner.is_even() for b in d.blocks)
    assert rb.verify(s, d)["ok"]
    with pytest.raises(rb.ContractError, match="n < 10"):
        rb.decompose10(rb.random_even_perm(8, seed=1))
    with pytest.raises(rb.ContractError, match="odd permutation"):
        rb.decompose7(rb.Perm.from_cycles("(000000,000001)"))


def test_pattern_synthesis():
    pi, tau = rb.synthesize_pattern({4: 1, 2: 1, 1: 2}, 1, 2, 3)
    assert rb.is_concurrent(pi, 1) and rb.is_concurrent(tau, 2)
    assert (pi * tau).pattern() == {4: 1, 2: 1, 1: 2}
    pi, tau = rb.synthesize_pattern({2: 12, 1: 232}, 1, 2, 8, even=True)
    assert rb.is_concurrently_even(pi, 1) and rb.is_concurrently_even(tau, 2)
    assert (pi * tau).pattern() == {2: 12, 1: 232}


def test_odd_block():
    pi, parts = rb.odd_block_from_even(3, 1, 2, 3)
    assert pi == rb.Perm.from_cycles("(001,011)(101,111)")
    assert parts[0] * parts[1] * parts[2] * parts[3] == pi
    assert not rb.is_concurrently_even(pi, 1)


def test_text_formats_round_trip():
    p = rb.random_perm(6, seed=9)
    for fmt in ("images", "cycles"):
        text = rb.emit_perm(p, fmt)
        assert rb.parse_perm(text, fmt) == p
        assert rb.emit_perm(rb.parse_perm(text, fmt), fmt) == text


@settings(max_examples=40, deadline=None)
@given(n=st.integers(min_value=6, max_value=9), seed=st.integers(min_value=0, max_value=2**63))
def test_decompose7_property(n, seed):
    s = rb.random_even_perm(n, seed)
    d = rb.decompose7(s, r1=1 + seed % n)
    assert len(d) <= 7
    assert d.product() == s


@settings(max_examples=40, deadline=None)
@given(n=st.integers(min_value=2, max_value=8), seed=st.integers(min_value=0, max_value=2**63), dim=st.integers(1, 8))
def test_lift_restrict_property(n, seed, dim):
    dim = 1 + (dim - 1) % n
    inner = rb.random_perm(n - 1, seed)
    up = rb.lift(inner, dim)
    assert rb.is_concurrent(up, dim)
    assert rb.restrict(up, dim) == inner
    assert rb.is_concurrently_even(up, dim) == inner.is_even()


@settings(max_examples=40, deadline=None)
@given(n=st.integers(min_value=5, max_value=9), seed=st.integers(min_value=0, max_value=2**63))
def test_eliminate_35_property(n, seed):
    s = rb.random_even_perm(n, seed)
    r1 = 1 + seed % n
    pi = rb.eliminate_35(s, r1)
    assert rb.is_concurrent(pi, r1)
    pat = (s * pi).pattern()
    assert 3 not in pat and 5 not in pat

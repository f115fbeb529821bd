from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from pdres.errors import PreconditionError, SpecError
from pdres.field import QQ, GF
from pdres.fixtures import ADE, ade_spec
from pdres.reconstruct import (
    RestrictedGradedLie,
    parse_lie,
    reconstruct,
    roundtrip_verify,
    validate_lie,
)
from pdres.yoneda import homotopy_lie

A1_TEXT = "field = QQ\nn = 3\nk = 1\nbracket 1 2 3 = 1\nq 1 1 = 1\n"


def random_lie(rng, field, n, k):
    off = {(p, i, j): rng.randint(-2, 2) for p in range(k) for i in range(n) for j in range(i + 1, n)}
    q = {(p, i): rng.randint(-2, 2) for p in range(k) for i in range(n)}
    return RestrictedGradedLie.from_constants(field, n, k, off, q)


def test_parse_lie_fills_diagonal_brackets():
    L = parse_lie(A1_TEXT)
    assert L.bracket(0, 0, 0) == 2
    assert L.bracket(0, 2, 1) == 1
    assert L.q_value(0, 0) == 1
    assert parse_lie(L.to_text()).same_constants(L)


def test_reconstruct_a1():
    res = reconstruct(parse_lie(A1_TEXT))
    assert [str(r) for r in res.spec.relations] == ["x1^3 + x1^2 + x2*x3"]
    assert res.groebner_certificate["status"] == "pass"
    assert res.regularity_certificate["status"] == "pass"
    assert res.roundtrip_ok


def test_reconstruct_abelian():
    res = reconstruct(RestrictedGradedLie(QQ, 2, 1))
    assert [str(r) for r in res.spec.relations] == ["x1^3"]
    assert res.roundtrip_ok


@pytest.mark.parametrize("name", sorted(ADE))
def test_reconstruct_from_simple_singularity(name):
    L = RestrictedGradedLie.from_homotopy_lie(homotopy_lie(ade_spec(name)))
    res = reconstruct(L)
    assert res.roundtrip_ok


def test_invalid_diagonal_bracket_is_reported():
    L = RestrictedGradedLie(QQ, 2, 1, [{(0, 0): 1}], [{0: 1}])
    rep = validate_lie(L)
    assert not rep["valid"]
    failed = [k for k, v in rep["axioms"].items() if v["status"] == "fail"]
    assert failed
    assert all("witness" in rep["axioms"][k] for k in failed)
    with pytest.raises(PreconditionError):
        reconstruct(L)


def test_valid_in_characteristic_two():
    L = RestrictedGradedLie(GF(2), 2, 1, [{(0, 1): 1}], [{0: 1}])
    assert validate_lie(L)["valid"]
    assert reconstruct(L).roundtrip_ok


def test_too_many_even_generators():
    with pytest.raises(PreconditionError):
        reconstruct(RestrictedGradedLie(QQ, 1, 2))


@pytest.mark.parametrize(
    "text, line",
    [
        ("field = QQ\nn = 2\nk = 1\nbracket 1 3 1 = 1\n", 4),
        ("field = QQ\nn = 2\nk = 1\nq 1 1 = x\n", 4),
        ("field = QQ\nn = 2\nfoo = 1\n", 3),
        ("field = QQ\nn = 2\nk = 1\nbracket 1 1 2 = 1\nbracket 1 2 1 = 2\n", 5),
    ],
)
def test_parse_lie_errors_have_locations(text, line):
    with pytest.raises(SpecError) as e:
        parse_lie(text)
    assert e.value.line == line


def test_parse_lie_needs_dimensions():
    with pytest.raises(SpecError):
        parse_lie("field = QQ\nn = 2\n")


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([0, 3, 5]), st.integers(1, 3), st.integers(1, 2))
def test_random_roundtrip(seed, p, n, k):
    if k > n:
        return
    rng = random.Random(seed)
    L = random_lie(rng, GF(p) if p else QQ, n, k)
    assert validate_lie(L)["valid"]
    res = reconstruct(L, verify=False)
    assert roundtrip_verify(L, res)
    assert res.mismatch is None

from __future__ import annotations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pdres.errors import SpecError
from pdres.field import Field, QQ, GF
from pdres.ring import (
    PolyRing,
    QuotientRing,
    buchberger,
    colon_ideal,
    find_grading,
    is_regular_sequence,
    module_syzygies,
    quadratic_part,
    regularity_witness,
    s_polynomial,
    satisfies_buchberger_criterion,
)

X, Y, Z = sympy.symbols("x y z")
NAMES = ["x", "y", "z"]


def to_sympy(f):
    return sympy.sympify(str(f).replace("^", "**"), locals={"x": X, "y": Y, "z": Z})


def from_sympy(ring, e):
    return ring.parse(str(sympy.expand(e)).replace("**", "^"))


terms = st.lists(
    st.tuples(st.integers(-3, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
    min_size=0,
    max_size=4,
)


def poly_of(ring, ts):
    out = ring.zero()
    for c, a, b, d in ts:
        out = out + ring.monomial((a, b, d), c)
    return out


def test_parse_and_print_canonical():
    R = PolyRing(QQ, NAMES)
    f = R.parse("z^2 + 3*x*y - x^3 + 1/2")
    assert str(f) == "-x^3 + 3*x*y + z^2 + 1/2"
    assert R.parse(str(f)) == f
    assert R.parse("(x+y)^2") == R.parse("x^2 + 2*x*y + y^2")


def test_parse_errors_carry_columns():
    R = PolyRing(QQ, NAMES)
    with pytest.raises(SpecError) as e:
        R.parse("x + w")
    assert e.value.column == 5
    with pytest.raises(SpecError):
        R.parse("x^")


def test_coefficients_mod_p():
    R = PolyRing(GF(5), NAMES)
    assert R.parse("6*x + 5*y") == R.parse("x")
    assert str(R.parse("-x")) == "4*x"


@settings(max_examples=60, deadline=None)
@given(terms, terms)
def test_arithmetic_matches_sympy(a, b):
    R = PolyRing(QQ, NAMES)
    f, g = poly_of(R, a), poly_of(R, b)
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0
    assert sympy.expand(to_sympy(f + g) - to_sympy(f) - to_sympy(g)) == 0


@settings(max_examples=40, deadline=None)
@given(terms, terms)
def test_grlex_leading_monomial_matches_sympy(a, b):
    R = PolyRing(QQ, NAMES)
    f = poly_of(R, a) + poly_of(R, b)
    if f.is_zero():
        return
    lm = sympy.Poly(to_sympy(f), X, Y, Z).monoms(order="grlex")[0]
    assert f.lm() == tuple(lm)


GB_CASES = [
    ["x*y + x^3", "x^2 + y^3"],
    ["x^2 + y*z", "x*y"],
    ["x^2 - y", "x^3 - z"],
    ["x*y - z^2", "y^2 - x*z", "x^2 - y*z"],
    ["x^3 + y*z", "y^3 + x*z", "z^3 + x*y"],
]


@pytest.mark.parametrize("gens", GB_CASES)
@pytest.mark.parametrize("p", [0, 5])
def test_reduced_groebner_basis_matches_sympy(gens, p):
    field = Field(p)
    R = PolyRing(field, NAMES)
    ours = {str(g) for g in buchberger([R.parse(s) for s in gens])}
    kw = {"modulus": p} if p else {}
    theirs = sympy.groebner([sympy.sympify(s.replace("^", "**")) for s in gens], X, Y, Z, order="grlex", **kw)
    assert ours == {str(from_sympy(R, e).monic()) for e in theirs.exprs}


def test_reconstruction_family_is_its_own_groebner_basis():
    R = PolyRing(QQ, NAMES)
    gens = [R.parse("x*y + x^3"), R.parse("x^2 + y^3")]
    assert satisfies_buchberger_criterion(gens)
    assert sorted(g.lm() for g in buchberger(gens)) == sorted(g.lm() for g in gens)
    assert is_regular_sequence(gens, shortcut=False)


def test_s_polynomial_cancels_leading_terms():
    R = PolyRing(QQ, NAMES)
    f, g = R.parse("x^2 + y"), R.parse("x*y + z")
    s = s_polynomial(f, g)
    assert s == R.parse("y^2 - x*z")


def test_colon_ideal():
    R = PolyRing(QQ, NAMES)
    assert [str(g) for g in colon_ideal([R.parse("x^2")], R.parse("x*y"))] == ["x"]
    assert [str(g) for g in colon_ideal([R.parse("x*y")], R.parse("z"))] == ["x*y"]


def test_regular_sequences():
    R = PolyRing(QQ, NAMES)
    assert regularity_witness([R.parse("x^2 + y*z")]) is None
    assert regularity_witness([R.parse("x^2"), R.parse("x*y")]) == 1
    assert not is_regular_sequence([R.parse("x^2"), R.parse("x^2*y")], shortcut=False)
    assert is_regular_sequence([R.parse("x*y + z^2"), R.parse("x^2 + y^2")], shortcut=False)


def test_quotient_normal_forms_and_standard_monomials():
    R = PolyRing(QQ, NAMES)
    Q = QuotientRing(R, [R.parse("x^2 + y*z")])
    assert Q.nf(R.parse("x^3")) == R.parse("-x*y*z")
    assert len(Q.standard_monomials(2)) == 5
    assert not Q.is_artinian()
    assert QuotientRing(R, [R.parse("x^2"), R.parse("y^2"), R.parse("z^2")]).is_artinian()


def test_module_syzygies_of_a_row():
    R = PolyRing(QQ, ["x", "y"])
    x, y = R.gens()
    syz = module_syzygies([[x, y]], ring=R)
    assert len(syz) == 1
    a, b = syz[0]
    assert (a * x + b * y).is_zero()
    assert {str(a), str(b)} == {"y", "-x"} or {str(a), str(b)} == {"-y", "x"}


def test_module_syzygies_over_a_quotient():
    R = PolyRing(QQ, ["x", "y"])
    Q = QuotientRing(R, [R.parse("x^2"), R.parse("x*y")])
    x, _ = R.gens()
    syz = module_syzygies([[x]], quotient=Q)
    assert {str(s[0]) for s in syz} == {"x", "y"}


def test_quadratic_part_and_grading():
    R = PolyRing(QQ, NAMES)
    assert quadratic_part(R.parse("x^2 + y*z + x^3")) == {(0, 0): 1, (1, 2): 1}
    assert quadratic_part(R.parse("x^4 + y^3 + z^2")) == {(2, 2): 1}
    assert find_grading(R, [R.parse("x^5 + y^3 + z^2")]) == (6, 10, 15)
    assert find_grading(R, [R.parse("x^2 + y*z + x^3")]) is None

from __future__ import annotations

import itertools

import pytest

from pdres import yoneda as Y
from pdres.errors import PreconditionError
from pdres.field import QQ, GF
from pdres.fixtures import ADE, ade_spec, other_spec
from pdres.tate import GradedPieces, RingSpec, build, closed_form


@pytest.fixture(scope="module")
def a1():
    return closed_form(ade_spec("A1"), 6)


def test_lifts_on_a1(a1):
    alg = a1.alg
    Dx, Dy, Dz = (Y.lift_dual(alg.generator(n), a1) for n in ("T_x", "T_y", "T_z"))
    S = alg.gen("S_1")
    assert Dx(S) == -alg.gen("T_x")
    assert Dy(S) == -alg.gen("T_z")
    assert Dz(S).is_zero()
    for D in (Dx, Dy, Dz):
        assert Y.is_cocycle(D)
        assert Y.pd_rule_holds(D, 4)


def test_lift_of_beta_is_divided_power_derivation(a1):
    alg = a1.alg
    D = Y.lift_dual(alg.generator("S_1"), a1)
    assert D(alg.divided("S_1", 3)) == alg.divided("S_1", 2)


def test_brackets_and_squares_on_a1(a1):
    alg = a1.alg
    Dx, Dy, Dz = (Y.lift_dual(alg.generator(n), a1) for n in ("T_x", "T_y", "T_z"))
    beta = Y.generator_dual(a1, "S_1")
    assert Y.ext_bracket(Dx, Dx, a1) == beta.scale(2)
    assert Y.ext_bracket(Dy, Dz, a1) == beta
    assert Y.ext_bracket(Dx, Dy, a1).is_zero()
    assert Y.ext_square(Dx, a1) == beta
    assert Y.ext_square(Dy, a1).is_zero()


def test_bracket_of_derivations_matches_operator_commutator(a1):
    alg = a1.alg
    Dx = Y.lift_dual(alg.generator("T_x"), a1)
    Dy = Y.lift_dual(alg.generator("T_y"), a1)
    B = Y.bracket(Dx, Dy)
    assert Y.operator_matches_rule(B, lambda v: Dx(Dy(v)) + Dy(Dx(v)), 4)


@pytest.mark.parametrize("name", sorted(ADE))
def test_homotopy_lie_both_paths(name):
    spec = ade_spec(name)
    assert Y.closed_form_constants(spec) == Y.lift_constants(spec)
    H = Y.homotopy_lie(spec)
    assert H.method == "closed-form+lift (agree)"


def test_product_routes_agree_and_associate():
    for name in ["A1", "D4", "E7"]:
        res = closed_form(ade_spec(name), 6)
        gens = [Y.generator_dual(res, g) for g in res.generators]
        for a, b in itertools.product(gens, repeat=2):
            assert Y.yoneda_product(a, b) == Y.yoneda_product_chain(a, b)
        for a, b, c in itertools.product(gens, repeat=3):
            if a.hdeg + b.hdeg + c.hdeg > 6:
                continue
            left = Y.yoneda_product_chain(Y.yoneda_product_chain(a, b), c)
            right = Y.yoneda_product_chain(a, Y.yoneda_product_chain(b, c))
            assert left == right


def test_product_routes_agree_without_complete_intersection():
    res = build(other_spec("x2-xy"), 6)
    gp = GradedPieces(res)
    gens = [Y.generator_dual(res, g) for g in res.generators if g.hdeg <= 3]
    for a, b in itertools.product(gens, repeat=2):
        if a.hdeg + b.hdeg <= 5:
            assert Y.yoneda_product(a, b) == Y.yoneda_product_chain(a, b, gp)


def test_presentation_of_a1():
    pres = Y.ext_presentation(ade_spec("A1"))
    rels = {r["lhs"]: r["rhs"] for r in pres.relations}
    assert rels["alpha_x^2"] == {"beta_1": 1}
    assert rels["alpha_y*alpha_z + alpha_z*alpha_y"] == {"beta_1": 1}
    assert rels["alpha_y^2"] == {}
    assert not pres.strictly_graded_commutative
    assert pres.generator_count == 3


def test_strictly_graded_commutative_iff_no_quadratic_part():
    assert Y.ext_presentation(other_spec("cubics")).strictly_graded_commutative
    assert Y.generator_count(other_spec("cubics")) == 4


def test_generator_count_uses_rank():
    spec = RingSpec.parse("QQ", "x, y", ["x^2", "y^2"])
    assert Y.generator_count(spec) == 2
    spec = RingSpec.parse("QQ", "x, y", ["x^2 + x*y", "y^3"])
    assert Y.generator_count(spec) == 3


def test_non_complete_intersection_rejected():
    with pytest.raises(PreconditionError) as e:
        Y.homotopy_lie(other_spec("x2-xy"))
    assert "complete intersection" in str(e.value)


def test_ext_dimension_matches_betti_numbers():
    for spec in [ade_spec("E6"), other_spec("two-quadrics"), other_spec("dual-numbers")]:
        res = closed_form(spec, 8)
        assert [Y.ext_dimension(spec, m) for m in range(9)] == res.betti_table(8)


def test_primitives_on_simple_singularities():
    for name in ADE:
        res = closed_form(ade_spec(name, GF(5)), 4)
        alg = res.alg
        gens = {((g.index, 1),) for g in res.generators}
        for m in range(1, 5):
            assert set(Y.primitive_basis(res, m)) == {w for w in gens if alg.hdeg(w) == m}
        tt = Y.dual(res, ((0, 1), (1, 1)))
        assert not Y.primitivity_check(tt)
        assert Y.primitivity_check(Y.generator_dual(res, "S_1"))


def test_extra_primitive_in_characteristic_two():
    res = closed_form(ade_spec("A1", GF(2)), 4)
    s2 = ((res.alg.generator("S_1").index, 2),)
    assert Y.primitivity_check(Y.dual(res, s2))
    assert s2 in Y.primitive_basis(res, 4)


def test_nonpositive_derivations_are_coboundaries(a1):
    rep = Y.negative_derivation_check(a1, 3)
    assert rep["status"] == "pass"
    assert rep["details"]


def test_delta_of_a_non_cocycle_is_nonzero(a1):
    alg = a1.alg
    D = Y.Derivation(alg, 1, {"T_x": alg.one()})
    assert not Y.is_cocycle(D)
    assert Y.is_cocycle(Y.lift_dual(alg.generator("T_x"), a1))

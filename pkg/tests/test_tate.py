from __future__ import annotations

import pytest
import sympy

from pdres.errors import PreconditionError, ResourceCapError, SpecError
from pdres.field import QQ, GF
from pdres.fixtures import ADE, ade_spec, other_spec
from pdres.tate import (
    GradedPieces,
    RingSpec,
    betti_oracle_ci,
    build,
    check_d_squared,
    closed_form,
    homology_generators,
    koszul_init,
    verify_exactness,
)


def series(expr, n):
    t = sympy.Symbol("t")
    s = sympy.series(expr(t), t, 0, n + 1).removeO()
    return [int(s.coeff(t, i)) for i in range(n + 1)]


def test_ring_spec_validation():
    with pytest.raises(SpecError):
        RingSpec.parse("QQ", "x, y", ["x + y^2"])
    with pytest.raises(SpecError):
        RingSpec.parse("QQ", "x, y", ["x^2 + 1"])
    with pytest.raises(SpecError):
        RingSpec.parse("QQ", "x, y", ["0"])
    spec = RingSpec.parse("Fp 5", "x, y", ["x^2 + 6*y^3"])
    assert spec.to_text() == "field = Fp 5\nvars = x, y\nrel = y^3 + x^2\n"


@pytest.mark.parametrize("name", ["A1", "E6", "E7"])
def test_closed_form_simple_singularities(name):
    spec = ade_spec(name)
    res = closed_form(spec, 4)
    assert [g.name for g in res.generators] == ["T_x", "T_y", "T_z", "S_1"]
    assert res.minimal and res.closed_form
    assert check_d_squared(res, 4)
    # d(S) expands the relation in the T's
    dS = res.differential("S_1")
    ring = spec.ring
    total = ring.zero()
    for i, T in enumerate(res.generators[:3]):
        total = total + dS.coefficient(((T.index, 1),)) * ring.gen(i)
    assert spec.quotient.nf(total - spec.relations[0]).is_zero()


def test_e6_differential():
    res = closed_form(ade_spec("E6"))
    assert str(res.differential("S_1")) == "x^3*T_x + y^2*T_y + z*T_z"


def test_build_marks_complete_intersections_closed_form():
    res = build(ade_spec("A2"), 4)
    assert res.closed_form
    assert res.certificates[0]["kind"] == "regular-sequence"
    assert res.certificates[1]["degrees"][3]["status"] == "zero"


def test_non_complete_intersection_adjoins_degree_three_generator():
    spec = other_spec("x2-xy")
    assert not spec.is_complete_intersection()
    res = build(spec, 5)
    assert not res.closed_form and res.minimal
    assert [g.name for g in res.generators_of_degree(3)] == ["U_1"]
    assert str(res.differential("U_1")) == "x*S_2"
    # Golod ring: P(t) = (1 + t)^2 / (1 - 2 t^2 - t^3)
    assert res.betti_table(5) == series(lambda t: (1 + t) ** 2 / (1 - 2 * t**2 - t**3), 5)
    cert = res.certificates[-1]
    assert all(d["status"] == "zero" for d in cert["degrees"].values())


def test_koszul_homology_of_golod_example():
    res = koszul_init(other_spec("x2-xy"))
    gp = GradedPieces(res)
    h1 = sum(gp.homology_dim(1, j) for j in range(6))
    h2 = sum(gp.homology_dim(2, j) for j in range(6))
    assert (h1, h2) == (2, 1)


def test_homology_generators_are_nonzero_classes():
    res = koszul_init(RingSpec.parse("QQ", "x, y, z", ["x^2 + y*z"]))
    cyc = homology_generators(res, 1)
    assert [str(c) for c in cyc] == ["x*T_x + y*T_z"]
    for c in cyc:
        assert res.alg.d(c).is_zero()
    gp = GradedPieces(res)
    assert gp.homology_dim(1, 2) == 1


def test_dual_numbers_betti_constant():
    res = build(other_spec("dual-numbers"), 7)
    assert res.betti_table(7) == [1] * 8
    assert res.certificates[-1]["method"] == "certified-exact"


def test_koszul_complex_of_polynomial_ring():
    res = build(other_spec("koszul-xy", GF(5)), 4)
    assert res.betti_table(4) == [1, 2, 1, 0, 0]


def test_betti_numbers_match_counting_oracle():
    for name in ["A1", "D4"]:
        res = closed_form(ade_spec(name), 8)
        assert res.betti_table(8) == [betti_oracle_ci(3, 1, m) for m in range(9)]
    res = closed_form(other_spec("two-quadrics"), 6)
    assert res.betti_table(6) == [betti_oracle_ci(4, 2, m) for m in range(7)]


def test_inhomogeneous_complete_intersection():
    spec = RingSpec.parse("QQ", "x, y, z", ["x^2 + y*z + x^3"])
    assert spec.weights is None
    res = build(spec, 4)
    assert res.closed_form and res.minimal


def test_inhomogeneous_non_ci_is_rejected():
    spec = RingSpec.parse("QQ", "x, y", ["x^2 + x^3", "x*y"])
    with pytest.raises(PreconditionError):
        build(spec, 3)


def test_internal_degree_cap():
    with pytest.raises(ResourceCapError) as e:
        build(other_spec("x2-xy"), 4, internal_cap=1)
    assert e.value.degree == 1


def test_verify_exactness_report_shape():
    res = build(ade_spec("A1"), 4, verify=False)
    rep = verify_exactness(res, 3)
    assert rep["kind"] == "graded-homology"
    assert rep["method"].startswith("certified-to-degree-")
    assert set(rep["degrees"]) == {0, 1, 2, 3}

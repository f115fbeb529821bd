"""Ext_R(k, k) from a minimal resolution: lifts, products, brackets.

Sign dictionary (homological degrees, derivations lower degree by ``s``):

* a derivation D of shift s satisfies D(ab) = D(a) b + (-1)^{s|a|} a D(b)
  and D(b^(k)) = D(b) b^(k-1);
* it is a cocycle when d D = (-1)^s D d;
* the Yoneda product of functionals with lifts is
  (psi . phi)(e) = (-1)^{|phi||psi|} eps(psi~(phi~(e)));
* the Ext bracket is [a, b] = ab - (-1)^{|a||b|} ba, which equals
  (-1)^{|a||b|} eps o [D_a, D_b], and the quadratic operator is
  q(a) = a . a = -eps o D_a^2 for odd a.

Structure constants of the homotopy Lie algebra are these Ext-level values
in the dual bases alpha_i = T_i^v, beta_p = S_p^v.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement, product
from math import comb
from typing import Mapping, Sequence

from .errors import ConsistencyError, ContextError, PreconditionError
from . import linalg
from .pdalg import Generator, Mono, PDAlgebra, PDElement
from .ring import Poly, quadratic_part, regularity_witness
from .tate import GradedPieces, RingSpec, TruncatedResolution, closed_form


# ---------------------------------------------------------------- Ext elements

class ExtElement:
    """A k-valued functional on the PBW basis of P_m."""

    __slots__ = ("res", "hdeg", "values")

    def __init__(self, res: TruncatedResolution, hdeg: int, values: Mapping[Mono, object] | None = None):
        self.res = res
        self.hdeg = hdeg
        f = res.ring.field
        self.values = {}
        for m, v in (values or {}).items():
            v = f(v)
            if v != 0:
                if res.alg.hdeg(m) != hdeg:
                    raise PreconditionError("functional value on a monomial of the wrong degree")
                self.values[tuple(m)] = v

    def __call__(self, x) -> object:
        """Evaluate on a monomial or on an element of P_m (coefficients mod m)."""
        f = self.res.ring.field
        if isinstance(x, PDElement):
            total = 0
            for m, c in x.terms.items():
                v = self.values.get(m)
                if v is not None:
                    total = f.add(total, f.mul(v, c.constant_term()))
            return total
        return self.values.get(tuple(x), 0)

    def __add__(self, other: "ExtElement") -> "ExtElement":
        if other.hdeg != self.hdeg:
            raise PreconditionError("adding Ext elements of different degrees")
        f = self.res.ring.field
        out = dict(self.values)
        for m, v in other.values.items():
            out[m] = f.add(out.get(m, 0), v)
        return ExtElement(self.res, self.hdeg, out)

    def scale(self, c) -> "ExtElement":
        f = self.res.ring.field
        c = f(c)
        return ExtElement(self.res, self.hdeg, {m: f.mul(v, c) for m, v in self.values.items()})

    def __neg__(self) -> "ExtElement":
        return self.scale(-1)

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.hdeg == other.hdeg and self.values == other.values

    def __hash__(self):
        return hash((self.hdeg, frozenset(self.values.items())))

    def is_zero(self) -> bool:
        return not self.values

    def __repr__(self) -> str:
        alg = self.res.alg
        f = self.res.ring.field
        parts = [f"{f.to_str(v)}*({alg.format_mono(m)})^v" for m, v in sorted(self.values.items())]
        return f"ExtElement[{self.hdeg}](" + " + ".join(parts) + ")"


def dual(res: TruncatedResolution, m: Mono) -> ExtElement:
    m = tuple(m)
    return ExtElement(res, res.alg.hdeg(m), {m: 1})


def generator_dual(res: TruncatedResolution, g: Generator | str) -> ExtElement:
    if isinstance(g, str):
        g = res.alg.generator(g)
    return dual(res, ((g.index, 1),))


def unit(res: TruncatedResolution) -> ExtElement:
    return ExtElement(res, 0, {(): 1})


# ---------------------------------------------------------------- derivations

class Derivation:
    """An R-linear pd derivation of P lowering degree by ``shift``.

    It is determined by its values on generators; generators without a value
    are sent to zero.
    """

    def __init__(self, alg: PDAlgebra, shift: int, values: Mapping | None = None):
        self.alg = alg
        self.shift = shift
        vals: dict[int, PDElement] = {}
        for key, v in (values or {}).items():
            if isinstance(key, str):
                g = alg.generator(key)
            elif isinstance(key, Generator):
                g = key
            else:
                g = alg.generators[key]
            v = alg.coerce(v)
            if v.is_zero():
                continue
            if v.hdeg() != g.hdeg - shift:
                raise PreconditionError(f"value on {g.name} must have degree {g.hdeg - shift}")
            vals[g.index] = v
        self.values = vals
        self._cache: dict = {}

    @property
    def parity(self) -> int:
        return self.shift % 2

    def value(self, g: Generator | int) -> PDElement:
        idx = g if isinstance(g, int) else g.index
        return self.values.get(idx, self.alg.zero())

    def apply_mono(self, m: Mono) -> PDElement:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        alg = self.alg
        gens = alg.generators
        total = alg.zero()
        before = 0
        for k, (i, e) in enumerate(m):
            Db = self.values.get(i)
            if Db is not None:
                core = Db * alg.monomial(((i, e - 1),)) if e > 1 else Db
                term = alg.monomial(m[:k]) * core * alg.monomial(m[k + 1:])
                if (self.shift * before) % 2:
                    total = total - term
                else:
                    total = total + term
            before += e * gens[i].hdeg
        self._cache[m] = total
        return total

    def __call__(self, x: PDElement) -> PDElement:
        x = self.alg.coerce(x) if not isinstance(x, PDElement) else x
        out = self.alg.zero()
        for m, c in x.terms.items():
            dm = self.apply_mono(m)
            if not dm.is_zero():
                out = out + dm.scale(c)
        return out

    def is_zero(self) -> bool:
        return not self.values

    def __add__(self, other: "Derivation") -> "Derivation":
        if other.shift != self.shift:
            raise PreconditionError("adding derivations of different degrees")
        keys = set(self.values) | set(other.values)
        return Derivation(self.alg, self.shift, {k: self.value(k) + other.value(k) for k in keys})

    def scale(self, c) -> "Derivation":
        return Derivation(self.alg, self.shift, {k: v.scale(c) for k, v in self.values.items()})

    def __neg__(self) -> "Derivation":
        return self.scale(-1)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.shift == other.shift and self.values == other.values

    def __repr__(self) -> str:
        gens = self.alg.generators
        parts = [f"{gens[i].name} -> {v}" for i, v in sorted(self.values.items())]
        return f"Derivation[{self.shift}](" + "; ".join(parts) + ")"


DerivationLift = Derivation


def differential_derivation(alg: PDAlgebra) -> Derivation:
    """The differential d viewed as a derivation of shift 1."""
    return Derivation(alg, 1, {g.index: alg.differential_of(g) for g in alg.generators})


def compose_apply(D1: Derivation, D2: Derivation, x: PDElement) -> PDElement:
    return D1(D2(x))


def bracket(D1: Derivation, D2: Derivation) -> Derivation:
    """Super-commutator D1 D2 - (-1)^{|D1||D2|} D2 D1, given on generators."""
    if not (D1.alg.is_prefix_of(D2.alg) or D2.alg.is_prefix_of(D1.alg)):
        raise ContextError("derivations of different resolutions")
    alg = D1.alg if D2.alg.is_prefix_of(D1.alg) else D2.alg
    sign = -1 if (D1.shift * D2.shift) % 2 else 1
    vals = {}
    for g in alg.generators:
        b = alg.gen(g.index)
        v = D1(D2(b))
        w = D2(D1(b))
        vals[g.index] = v - w if sign == 1 else v + w
    return Derivation(alg, D1.shift + D2.shift, vals)


def derivation_square(D: Derivation) -> Derivation:
    """D o D for odd D, again a pd derivation (of shift 2s)."""
    if D.shift % 2 == 0:
        raise PreconditionError("derivation_square needs an odd derivation")
    alg = D.alg
    return Derivation(alg, 2 * D.shift, {g.index: D(D(alg.gen(g.index))) for g in alg.generators})


def delta(D: Derivation) -> Derivation:
    """delta(D) = [d, D] = d D - (-1)^s D d."""
    return bracket(differential_derivation(D.alg), D)


def is_cocycle(D: Derivation) -> bool:
    return delta(D).is_zero()


def operator_matches_rule(D: Derivation, operator, upto: int) -> bool:
    """Compare a derivation given by generator values with an operator
    (a callable on elements) on every PBW monomial of degree <= upto."""
    alg = D.alg
    for h in range(upto + 1):
        for m in alg.basis(h):
            x = alg.monomial(m)
            if D(x) != operator(x):
                return False
    return True


def pd_rule_holds(D: Derivation, upto: int) -> bool:
    """D(b^(k)) = D(b) b^(k-1) for even generators and the signed Leibniz rule
    on all products of basis monomials up to degree ``upto``."""
    alg = D.alg
    for g in alg.generators:
        if g.parity == 0:
            b = alg.gen(g.index)
            for k in range(2, max(2, upto // g.hdeg) + 1):
                lhs = D(alg.divided_power(b, k))
                rhs = D(b) * alg.divided_power(b, k - 1)
                if lhs != rhs:
                    return False
    for h1 in range(1, upto):
        for h2 in range(1, upto - h1 + 1):
            for m1 in alg.basis(h1):
                for m2 in alg.basis(h2):
                    a, b = alg.monomial(m1), alg.monomial(m2)
                    lhs = D(a * b)
                    sgn = -1 if (D.shift * h1) % 2 else 1
                    rhs = D(a) * b + (a * D(b)).scale(sgn)
                    if lhs != rhs:
                        return False
    return True


# ---------------------------------------------------------------- solving d y = w

def integrate(res: TruncatedResolution, w: PDElement) -> PDElement:
    """y in P_1 with d y = w for w in m P_0: each monomial goes to the T of
    its smallest variable."""
    alg = res.alg
    nv = res.ring.nvars
    c = w.coefficient(())
    if any(m != () for m in w.terms):
        raise PreconditionError("integrate expects an element of P_0")
    if c.constant_term() != 0:
        raise PreconditionError("lift incomplete at degree 1: value is not in the maximal ideal")
    out = alg.zero()
    ring = res.ring.ring
    for u, a in c.terms.items():
        i = next(k for k, e in enumerate(u) if e)
        uu = list(u)
        uu[i] -= 1
        out = out + alg.gen(i).scale(Poly(ring, {tuple(uu): a}))
    # the first n generators are the Koszul T's with d(T_i) = x_i
    if alg.d(out) != w:
        raise PreconditionError("lift incomplete at degree 1")
    return out


def solve_boundary(res: TruncatedResolution, w: PDElement, target: int, pieces: GradedPieces | None = None) -> PDElement:
    """Some y in P_target with d y = w (w a cycle of degree target - 1)."""
    alg = res.alg
    if w.is_zero():
        return alg.zero()
    if target == 1:
        return integrate(res, w)
    if res.weights is None:
        raise PreconditionError(f"lift incomplete at degree {target}: solving needs a grading")
    gp = pieces or GradedPieces(res)
    comps: dict[int, dict] = {}
    w_ = res.weights
    for m, c in w.terms.items():
        base = alg.weight(m)
        for u, a in c.terms.items():
            j = base + sum(x * y for x, y in zip(w_, u))
            comps.setdefault(j, {}).setdefault(m, {})[u] = a
    out = alg.zero()
    ring = res.ring.ring
    for j, terms in sorted(comps.items()):
        part = PDElement(alg, {m: Poly(ring, t) for m, t in terms.items()})
        rows = gp.d_matrix(target, j)
        ncols = len(gp.basis(target, j))
        rhs = gp.to_vector(part, target - 1, j)
        # reversed columns: free variables are the largest basis elements,
        # so the particular solution sits on the smallest ones
        rrows = [list(reversed(r)) for r in rows]
        sol = linalg.solve(rrows, rhs, ncols, res.ring.field) if rows else None
        if sol is None:
            raise PreconditionError(f"lift incomplete at degree {target}")
        out = out + gp.from_vector(list(reversed(sol)), target, j)
    return out


# ---------------------------------------------------------------- lifts

def lift_dual(b: Generator | str, res: TruncatedResolution, upto: int | None = None,
              pieces: GradedPieces | None = None) -> Derivation:
    """Cocycle pd derivation D of shift |b| with D(b) = 1, zero on the other
    generators of degree <= |b|, and D on higher generators solved from
    d D(Z) = (-1)^s D(dZ)."""
    alg = res.alg
    if isinstance(b, str):
        b = alg.generator(b)
    s = b.hdeg
    if not res.closed_form and upto is not None and s + upto > res.frontier + 1:
        raise PreconditionError(f"lift incomplete at degree {s + upto}: truncation too small")
    D = Derivation(alg, s, {b.index: alg.one()})
    for Z in alg.generators:
        if Z.hdeg <= s:
            continue
        t = Z.hdeg - s
        if upto is not None and t > upto:
            break
        w = D(alg.differential_of(Z))
        if s % 2:
            w = -w
        y = solve_boundary(res, w, t, pieces)
        D.values[Z.index] = y
        D._cache.clear()
    return D


def lift_ext(z: ExtElement, pieces: GradedPieces | None = None, upto: int | None = None) -> Derivation:
    """Derivation lift of a linear combination of generator duals."""
    res = z.res
    alg = res.alg
    total = None
    for m, v in z.values.items():
        if len(m) != 1 or m[0][1] != 1:
            raise PreconditionError("derivation lifts exist only for combinations of generator duals")
        D = lift_dual(alg.generators[m[0][0]], res, upto, pieces).scale(v)
        total = D if total is None else total + D
    if total is None:
        total = Derivation(alg, z.hdeg, {})
    return total


def epsilon(x: PDElement):
    return x.augmentation()


def yoneda_product(psi, phi, res: TruncatedResolution | None = None) -> ExtElement:
    """psi . phi = (-1)^{|phi||psi|} eps o psi~ o phi~ on the basis of P_{|phi|+|psi|}.

    ``phi`` is a derivation lift or a combination of generator duals (lifted
    here).  On P_{|psi|}, eps o psi~ is psi itself, so ``psi`` may be any
    functional.
    """
    if isinstance(phi, ExtElement):
        res = phi.res
        if phi.hdeg == 0:
            c = phi(())
            return (psi if isinstance(psi, ExtElement) else _ext_of(psi, res)).scale(c)
        phi = lift_ext(phi)
    if res is None:
        res = psi.res if isinstance(psi, ExtElement) else None
    if res is None:
        raise PreconditionError("yoneda_product needs the resolution")
    if isinstance(psi, ExtElement):
        value, spsi = psi, psi.hdeg
    else:
        value, spsi = epsilon, psi.shift
    alg = res.alg
    m = spsi + phi.shift
    sign = -1 if (spsi * phi.shift) % 2 else 1
    vals = {}
    for e in alg.basis(m):
        y = phi(alg.monomial(e))
        v = epsilon(psi(y)) if value is epsilon else value(y)
        if v != 0:
            vals[e] = v * sign
    return ExtElement(res, m, vals)


def _ext_of(D: Derivation, res: TruncatedResolution) -> ExtElement:
    """eps o D on P_shift: the functional a lift represents."""
    alg = res.alg
    vals = {}
    for e in alg.basis(D.shift):
        v = epsilon(D(alg.monomial(e)))
        if v != 0:
            vals[e] = v
    return ExtElement(res, D.shift, vals)


def ext_of(D: Derivation, res: TruncatedResolution) -> ExtElement:
    return _ext_of(D, res)


def ext_bracket(D1: Derivation, D2: Derivation, res: TruncatedResolution) -> ExtElement:
    """[a, b] = (-1)^{|a||b|} eps o [D_a, D_b]."""
    e = _ext_of(bracket(D1, D2), res)
    return -e if (D1.shift * D2.shift) % 2 else e


def ext_square(D: Derivation, res: TruncatedResolution) -> ExtElement:
    """q(a) = a . a = -eps o D_a^2 for odd a."""
    return -_ext_of(derivation_square(D), res)


# ---------------------------------------------------------------- chain-map lifts

class ChainLift:
    """Chain map F: P_{m+i} -> P_i with d F = F d lifting a functional z on P_m."""

    def __init__(self, z: ExtElement, upto: int, pieces: GradedPieces | None = None):
        self.z = z
        res = z.res
        self.res = res
        alg = res.alg
        self.m = z.hdeg
        self.components: list[dict] = []
        comp0 = {}
        for e in alg.basis(self.m):
            comp0[e] = alg.scalar(z(e))
        self.components.append(comp0)
        for i in range(1, upto + 1):
            comp = {}
            prev = self.components[-1]
            for e in alg.basis(self.m + i):
                de = alg.d_mono(e)
                w = alg.zero()
                for mm, c in de.terms.items():
                    w = w + prev[mm].scale(c)
                comp[e] = solve_boundary(res, w, i, pieces)
            self.components.append(comp)

    def apply(self, i: int, x: PDElement) -> PDElement:
        comp = self.components[i]
        out = self.res.alg.zero()
        for mm, c in x.terms.items():
            out = out + comp[mm].scale(c)
        return out


def yoneda_product_chain(psi: ExtElement, phi: ExtElement, pieces: GradedPieces | None = None) -> ExtElement:
    """psi . phi = psi o F^phi_{|psi|} using plain chain-map lifts."""
    res = phi.res
    alg = res.alg
    F = ChainLift(phi, psi.hdeg, pieces)
    vals = {}
    for e, y in F.components[psi.hdeg].items():
        v = psi(y)
        if v != 0:
            vals[e] = v
    return ExtElement(res, psi.hdeg + phi.hdeg, vals)


# ---------------------------------------------------------------- homotopy Lie algebra

@dataclass
class HomotopyLieAlgebra:
    field: object
    n: int
    k: int
    brackets: list  # brackets[p][(i, j)] for i <= j, nonzero entries only
    q: list  # q[p][i], nonzero entries only
    alpha_names: list = dc_field(default_factory=list)
    beta_names: list = dc_field(default_factory=list)
    method: str = ""

    def bracket(self, i: int, j: int) -> list:
        if i > j:
            i, j = j, i
        return [self.brackets[p].get((i, j), 0) for p in range(self.k)]

    def q_of(self, i: int) -> list:
        return [self.q[p].get(i, 0) for p in range(self.k)]

    def same_constants(self, other: "HomotopyLieAlgebra") -> bool:
        return (
            self.n == other.n and self.k == other.k
            and self.brackets == other.brackets and self.q == other.q
        )

    def to_json(self) -> dict:
        f = self.field
        out = {"n": self.n, "k": self.k, "alpha": self.alpha_names, "beta": self.beta_names,
               "brackets": [], "q": [], "method": self.method}
        for p in range(self.k):
            for (i, j), v in sorted(self.brackets[p].items()):
                out["brackets"].append({"p": p + 1, "i": i + 1, "j": j + 1, "value": f.to_json(v)})
            for i, v in sorted(self.q[p].items()):
                out["q"].append({"p": p + 1, "i": i + 1, "value": f.to_json(v)})
        return out


def require_ci(spec: RingSpec) -> None:
    if not spec.is_complete_intersection():
        s = spec.regularity_witness()
        raise PreconditionError(
            "presentation requires complete intersection: relation "
            f"{(s or 0) + 1} ({spec.relations[s or 0]}) is a zero divisor modulo the previous ones"
        )


def closed_form_constants(spec: RingSpec) -> tuple[list, list]:
    f = spec.field
    brackets, qs = [], []
    for c in spec.relations:
        qp = quadratic_part(c)
        b, q = {}, {}
        for (i, j), v in qp.items():
            if i == j:
                b[(i, i)] = f.mul(2, v)
                q[i] = v
            else:
                b[(i, j)] = v
        brackets.append({key: v for key, v in b.items() if v != 0})
        qs.append({key: v for key, v in q.items() if v != 0})
    return brackets, qs


def lift_constants(spec: RingSpec, res: TruncatedResolution | None = None) -> tuple[list, list]:
    """Brackets and squares of the alpha's via derivation lifts."""
    res = res or closed_form(spec)
    alg = res.alg
    n, k = spec.nvars, len(spec.relations)
    lifts = [lift_dual(alg.generators[i], res) for i in range(n)]
    S = [alg.generator(f"S_{p + 1}") for p in range(k)]
    brackets = [dict() for _ in range(k)]
    qs = [dict() for _ in range(k)]
    for i in range(n):
        for j in range(i, n):
            e = ext_bracket(lifts[i], lifts[j], res)
            for mono, v in e.values.items():
                if len(mono) != 1 or mono[0][1] != 1 or alg.generators[mono[0][0]].hdeg != 2:
                    raise ConsistencyError("bracket of alphas has a component outside span(beta)")
            for p in range(k):
                v = e(((S[p].index, 1),))
                if v != 0:
                    brackets[p][(i, j)] = v
        e = ext_square(lifts[i], res)
        for mono in e.values:
            if len(mono) != 1 or alg.generators[mono[0][0]].hdeg != 2:
                raise ConsistencyError("square of an alpha has a component outside span(beta)")
        for p in range(k):
            v = e(((S[p].index, 1),))
            if v != 0:
                qs[p][i] = v
    return brackets, qs


def homotopy_lie(spec: RingSpec) -> HomotopyLieAlgebra:
    """Structure constants of pi^1 + pi^2 for a complete intersection.

    Computed twice, from the quadratic parts and through derivation lifts;
    a disagreement raises ConsistencyError.
    """
    require_ci(spec)
    b1, q1 = closed_form_constants(spec)
    b2, q2 = lift_constants(spec)
    if b1 != b2 or q1 != q2:
        raise ConsistencyError(
            f"closed-form and lift-based structure constants disagree: {b1} {q1} vs {b2} {q2}"
        )
    k = len(spec.relations)
    return HomotopyLieAlgebra(
        spec.field, spec.nvars, k, b1, q1,
        alpha_names=[f"alpha_{nm}" for nm in spec.names],
        beta_names=[f"beta_{p + 1}" for p in range(k)],
        method="closed-form+lift (agree)",
    )


# ---------------------------------------------------------------- presentation

@dataclass
class ExtPresentation:
    generators: list  # (symbol, degree)
    relations: list  # dicts
    strictly_graded_commutative: bool
    generator_count: int

    def to_json(self) -> dict:
        return {
            "generators": [{"symbol": s, "degree": d} for s, d in self.generators],
            "relations": self.relations,
            "strictly_graded_commutative": self.strictly_graded_commutative,
            "generator_count": self.generator_count,
        }


def ext_presentation(spec: RingSpec) -> ExtPresentation:
    require_ci(spec)
    f = spec.field
    n, k = spec.nvars, len(spec.relations)
    brackets, qs = closed_form_constants(spec)
    alphas = [f"alpha_{nm}" for nm in spec.names]
    betas = [f"beta_{p + 1}" for p in range(k)]
    rels = []
    for i in range(n):
        for j in range(i + 1, n):
            rhs = {betas[p]: f.to_json(brackets[p][(i, j)]) for p in range(k) if (i, j) in brackets[p]}
            rels.append({"lhs": f"{alphas[i]}*{alphas[j]} + {alphas[j]}*{alphas[i]}", "rhs": rhs})
    for i in range(n):
        rhs = {betas[p]: f.to_json(qs[p][i]) for p in range(k) if i in qs[p]}
        rels.append({"lhs": f"{alphas[i]}^2", "rhs": rhs})
    strict = all(not quadratic_part(c) for c in spec.relations)
    gens = [(a, 1) for a in alphas] + [(b, 2) for b in betas]
    return ExtPresentation(gens, rels, strict, generator_count(spec))


def quadratic_matrix(spec: RingSpec) -> list[list]:
    """C(n+1, 2) x k matrix: rows (i <= j), entries n_ij + n_ji or n_ii."""
    n = spec.nvars
    rows = []
    qps = [quadratic_part(c) for c in spec.relations]
    for i in range(n):
        for j in range(i, n):
            rows.append([qp.get((i, j), 0) for qp in qps])
    return rows


def generator_count(spec: RingSpec) -> int:
    require_ci(spec)
    M = quadratic_matrix(spec)
    k = len(spec.relations)
    r = linalg.rank(M, spec.field, k) if M and k else 0
    return spec.nvars + k - r


def ext_dimension(spec: RingSpec, m: int) -> int:
    """sum over a + 2b = m of C(n, a) * C(b + k - 1, k - 1)."""
    require_ci(spec)
    n, k = spec.nvars, len(spec.relations)
    total = 0
    for a in range(0, min(n, m) + 1):
        rest = m - a
        if rest % 2:
            continue
        b = rest // 2
        if k == 0:
            total += comb(n, a) if b == 0 else 0
        else:
            total += comb(n, a) * comb(b + k - 1, k - 1)
    return total


# ---------------------------------------------------------------- primitivity

def decomposable_monomials(res: TruncatedResolution, m: int) -> set:
    """Monomials w of degree m with u * v = c w, c != 0 in k, for some
    basis monomials u, v of positive degree."""
    alg = res.alg
    f = res.ring.field
    out = set()
    for a in range(1, m):
        for u in alg.basis(a):
            for v in alg.basis(m - a):
                r = alg.mono_mul(u, v)
                if r is not None and f(r[0]) != 0:
                    out.add(r[1])
    return out


def primitivity_check(z: ExtElement, res: TruncatedResolution | None = None) -> bool:
    """Delta(z) = z (x) 1 + 1 (x) z, with Delta dual to the product mod m."""
    res = res or z.res
    alg = res.alg
    f = res.ring.field
    m = z.hdeg
    for a in range(1, m):
        for u in alg.basis(a):
            for v in alg.basis(m - a):
                r = alg.mono_mul(u, v)
                if r is None:
                    continue
                if f.mul(f(r[0]), z(r[1])) != 0:
                    return False
    return True


def primitive_basis(res: TruncatedResolution, m: int) -> list[Mono]:
    """Monomials whose duals span the primitives of degree m."""
    dec = decomposable_monomials(res, m)
    return [w for w in res.alg.basis(m) if w not in dec]


# ---------------------------------------------------------------- negative derivations

def _derivation_basis(res: TruncatedResolution, gp: GradedPieces, shift: int, iota: int) -> list[Derivation]:
    alg = res.alg
    out = []
    for g in alg.generators:
        h = g.hdeg - shift
        for vec_index, (m, u) in enumerate(gp.basis(h, g.weight + iota) if h >= 0 else []):
            val = alg.monomial(m, Poly(res.ring.ring, {u: 1}))
            out.append(Derivation(alg, shift, {g.index: val}))
    return out


def _derivation_vector(D: Derivation, gp: GradedPieces, iota: int) -> list:
    alg = D.alg
    vec = []
    for g in alg.generators:
        h = g.hdeg - D.shift
        if h < 0:
            continue
        n = len(gp.basis(h, g.weight + iota))
        val = D.value(g)
        vec.extend(gp.to_vector(val, h, g.weight + iota) if not val.is_zero() else [0] * n)
    return vec


def negative_derivation_check(res: TruncatedResolution, upto: int, shifts: Sequence[int] = (0, -1)) -> dict:
    """Every cocycle derivation of shift s <= 0 is a coboundary, checked on
    internal degrees iota in [-max weight, upto]."""
    if res.weights is None:
        raise PreconditionError("negative_derivation_check needs a graded resolution")
    if not res.generators:
        return {"status": "pass", "vacuous": True, "shifts": list(shifts), "range": None}
    gp = GradedPieces(res)
    field = res.ring.field
    wmax = max(g.weight for g in res.generators)
    lo = -wmax
    details = {}
    ok = True
    for s in shifts:
        for iota in range(lo, upto + 1):
            Zb = _derivation_basis(res, gp, s, iota)
            if not Zb:
                continue
            # cocycle condition: linear map D -> delta(D)
            cols = [_derivation_vector(delta(D), gp, iota) for D in Zb]
            nrows = len(cols[0]) if cols else 0
            rows = [[cols[c][r] for c in range(len(cols))] for r in range(nrows)]
            dimZ = len(Zb) - (linalg.rank(rows, field, len(Zb)) if rows else 0)
            if dimZ == 0:
                continue
            Eb = _derivation_basis(res, gp, s - 1, iota)
            bvecs = [_derivation_vector(delta(E), gp, iota) for E in Eb]
            rankB = linalg.rank(bvecs, field, len(Zb)) if bvecs else 0
            details[f"{s}:{iota}"] = {"cocycles": dimZ, "coboundaries": rankB}
            if rankB != dimZ:
                ok = False
    return {
        "status": "pass" if ok else "fail",
        "shifts": list(shifts),
        "range": [lo, upto],
        "method": f"certified-to-degree-{upto}",
        "details": details,
    }

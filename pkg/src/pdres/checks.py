"""Randomized property suites behind ``pdres verify``.

Each suite returns a list of ``{"property", "status", "trials"}`` records,
with a ``counterexample`` entry on failure.  Results depend only on the seed.
"""

from __future__ import annotations

import random
from math import comb, factorial
from typing import Callable

from . import shuffle
from .field import Field
from .pdalg import PDAlgebra, PDElement, mono_poldeg, oracle_compare, oracle_compare_gamma
from .ring import Poly, QuotientRing, PolyRing
from .fixtures import ade_spec, other_spec
from .tate import build, closed_form
from . import yoneda as Y

SUITES = ("pd-axioms", "shuffle", "lifts", "appendix-c")


class _Recorder:
    def __init__(self):
        self.results: list[dict] = []

    def run(self, name: str, trials: int, body: Callable[[int], object]) -> None:
        """``body(t)`` returns None on success or a counterexample."""
        for t in range(trials):
            bad = body(t)
            if bad is not None:
                self.results.append({"property": name, "status": "fail", "trials": t + 1,
                                     "counterexample": str(bad)})
                return
        self.results.append({"property": name, "status": "pass", "trials": trials})


# ---------------------------------------------------------------- random data

def random_scalar(rng: random.Random, field: Field, lo: int = -3, hi: int = 3):
    return field(rng.randint(lo, hi))


def random_poly(rng: random.Random, ring: PolyRing, max_deg: int = 1, terms: int = 2) -> Poly:
    out = ring.zero()
    n = ring.nvars
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(0, max_deg) if n else 0
        e = [0] * n
        for _ in range(d):
            e[rng.randrange(n)] += 1
        out = out + ring.monomial(e, rng.randint(-2, 2))
    return out


def random_element(rng: random.Random, alg: PDAlgebra, hdegs, max_poldeg: int = 4,
                   terms: int = 3, poly_deg: int = 1) -> PDElement:
    """Random element with monomials of the given degrees and PBW length <= max_poldeg."""
    out = alg.zero()
    ring = alg.base.ring
    hdegs = list(hdegs)
    if not hdegs:
        return out
    for _ in range(rng.randint(1, terms)):
        h = rng.choice(hdegs)
        choices = [m for m in alg.basis(h) if mono_poldeg(m) <= max_poldeg]
        if not choices:
            continue
        m = rng.choice(choices)
        out = out + alg.monomial(m, random_poly(rng, ring, poly_deg))
    return out


def random_even(rng: random.Random, alg: PDAlgebra, max_h: int = 4, **kw) -> PDElement:
    hs = [h for h in range(2, max_h + 1, 2) if alg.basis(h)]
    return random_element(rng, alg, hs, **kw)


def random_pd_even(rng: random.Random, alg: PDAlgebra, **kw) -> PDElement:
    """Random even element that usually has nonzero higher divided powers:
    one term is a divided power of an even generator with a unit coefficient."""
    x = random_even(rng, alg, **kw)
    evens = [g for g in alg.generators if g.parity == 0]
    if evens:
        g = rng.choice(evens)
        e = rng.randint(1, max(1, 4 // g.hdeg))
        x = x + alg.monomial(((g.index, e),), rng.choice([1, 2, -1]))
    return x


def random_odd(rng: random.Random, alg: PDAlgebra, max_h: int = 3, **kw) -> PDElement:
    hs = [h for h in range(1, max_h + 1, 2) if alg.basis(h)]
    return random_element(rng, alg, hs, **kw)


def sample_algebras(field: Field, rng: random.Random) -> list[PDAlgebra]:
    """Small pd dg algebras with at most five generators."""
    algs = [closed_form(ade_spec("A1", field)).alg]
    algs.append(build(other_spec("x2-xy", field), 3, verify=False).alg)
    base = QuotientRing(PolyRing(field, []))
    degs = sorted(rng.choice([1, 2, 2, 3, 4]) for _ in range(5))
    algs.append(PDAlgebra(base, [(f"G{i + 1}", d) for i, d in enumerate(degs)]))
    return algs


# ---------------------------------------------------------------- pd axioms

def pd_axiom_failures(alg: PDAlgebra, x: PDElement, y: PDElement, a: PDElement,
                      u: PDElement, v: PDElement, nmax: int = 4) -> str | None:
    """Check axioms (1)-(8) on even x, y (augmentation ideal), even a and odd u, v."""
    g = alg.divided_power
    if g(x, 0) != alg.one() or g(x, 1) != x:
        return f"(1) x = {x}"
    gx = [g(x, n) for n in range(nmax + 1)]
    for n in range(nmax + 1):
        for m in range(nmax + 1 - n):
            if gx[n] * gx[m] != gx[n + m].scale(comb(n + m, m)):
                return f"(2) n={n} m={m} x = {x}"
    ax = a * x
    apow = alg.one()
    for n in range(nmax + 1):
        if g(ax, n) != apow * gx[n]:
            return f"(3) n={n} a = {a}, x = {x}"
        apow = apow * a
    for n in range(nmax + 1):
        rhs = alg.zero()
        for i in range(n + 1):
            rhs = rhs + gx[i] * g(y, n - i)
        if g(x + y, n) != rhs:
            return f"(4) n={n} x = {x}, y = {y}"
    for p in range(nmax + 1):
        for q in range(nmax + 1):
            if q == 0 or p * q > nmax:
                continue
            c = factorial(p * q) // (factorial(p) * factorial(q) ** p)
            if g(gx[q], p) != gx[p * q].scale(c):
                return f"(5) p={p} q={q} x = {x}"
    for n in range(1, nmax + 1):
        if not x.is_zero() and x.is_homogeneous():
            r = x.hdeg()
            if not gx[n].is_zero() and gx[n].hdegs() != {r * n}:
                return f"(6) n={n} x = {x}"
    uv = u * v
    if not uv.is_zero() and uv.is_homogeneous():
        for n in range(2, nmax + 1):
            if not g(uv, n).is_zero():
                return f"(7) n={n} u = {u}, v = {v}"
    for n in range(1, nmax + 1):
        if alg.d(gx[n]) != gx[n - 1] * alg.d(x):
            return f"(8) n={n} x = {x}"
    return None


def _homogeneous_part(x: PDElement, h: int) -> PDElement:
    return PDElement(x.alg, {m: c for m, c in x.terms.items() if x.alg.hdeg(m) == h})


def suite_pd_axioms(seed: int = 0, trials: int = 60, fields=("QQ", "Fp 2", "Fp 3"), nmax: int = 4) -> list[dict]:
    rec = _Recorder()
    for ftag in fields:
        field = Field.parse(ftag)
        rng = random.Random(f"{seed}:{ftag}")
        algs = sample_algebras(field, rng)

        def body(t: int, algs=algs, rng=rng):
            alg = algs[t % len(algs)]
            x = random_pd_even(rng, alg, max_poldeg=4, terms=2)
            if rng.random() < 0.5 and not x.is_zero():
                x = _homogeneous_part(x, rng.choice(sorted(x.hdegs())))
            y = random_pd_even(rng, alg, max_poldeg=4, terms=2)
            a = random_even(rng, alg, max_poldeg=2, terms=1) + alg.scalar(random_poly(rng, alg.base.ring, 1))
            u = random_odd(rng, alg, max_h=3, max_poldeg=1, terms=1)
            v = random_odd(rng, alg, max_h=3, max_poldeg=2, terms=1)
            return pd_axiom_failures(alg, x, y, a, u, v, nmax)

        rec.run(f"pd axioms (1)-(8) over {ftag}", trials, body)
    return rec.results


# ---------------------------------------------------------------- shuffle

def suite_shuffle(seed: int = 0, trials: int = 30) -> list[dict]:
    rec = _Recorder()
    pairs = [(m, n) for m in range(9) for n in range(9 - m)]
    rec.run("|Sh(m,n)| = C(m+n, m)", len(pairs),
            lambda t: None if len(shuffle.shuffles(*pairs[t])) == comb(sum(pairs[t]), pairs[t][0]) else pairs[t])
    blocks = [(n, p) for n in range(1, 9) for p in range(1, 9) if n * p <= 8]
    rec.run("|K'(n,p)| = (np)!/(p!(n!)^p)", len(blocks),
            lambda t: None if len(shuffle.kprime(*blocks[t])) == shuffle.kprime_count(*blocks[t]) else blocks[t])
    rec.run("Sh(n,n) = K' u K'c", 4, lambda t: None if shuffle.sh_partition_check(t + 1) else t + 1)

    rng = random.Random(f"{seed}:shuffle")
    field = Field(0)

    def word(length):
        return tuple((f"e{rng.randrange(3)}", rng.randint(1, 3)) for _ in range(length))

    def assoc(t):
        a, b, c = (shuffle.TensorElement.word(field, word(rng.randint(0, 2))) for _ in range(3))
        lhs = shuffle.star(shuffle.star(a, b), c)
        rhs = shuffle.star(a, shuffle.star(b, c))
        return None if lhs == rhs else (a, b, c)

    def commut(t):
        a = shuffle.TensorElement.word(field, word(rng.randint(1, 3)))
        b = shuffle.TensorElement.word(field, word(rng.randint(1, 3)))
        da, db = a.degree(), b.degree()
        lhs = shuffle.star(a, b)
        rhs = shuffle.star(b, a).scale(-1 if da * db % 2 else 1)
        return None if lhs == rhs else (a, b)

    def odd_square(t):
        a = shuffle.TensorElement.word(field, word(rng.randint(1, 3)))
        if a.degree() % 2 == 0:
            return None
        return None if shuffle.star(a, a).is_zero() else a

    def symmetric(t):
        a = shuffle.TensorElement.word(field, word(rng.randint(1, 2)))
        b = shuffle.TensorElement.word(field, word(rng.randint(1, 2)))
        return None if shuffle.is_symmetric(shuffle.star(shuffle.symmetrize(a), shuffle.symmetrize(b))) else (a, b)

    def gamma_power(t):
        w = word(rng.randint(1, 2))
        if shuffle.word_degree(w) % 2:
            return None
        n = rng.randint(1, 8 // len(w))
        u = shuffle.TensorElement.word(field, w)
        power = shuffle.TensorElement.one(field)
        for _ in range(n):
            power = shuffle.star(power, u)
        return None if power == shuffle.gamma(u, n).scale(factorial(n)) else (w, n)

    rec.run("shuffle product associative", trials, assoc)
    rec.run("shuffle product graded commutative", trials, commut)
    rec.run("odd elements square to zero", trials, odd_square)
    rec.run("product of symmetric tensors is symmetric", trials, symmetric)
    rec.run("n! gamma_n(u) = u^n", trials, gamma_power)
    return rec.results


# ---------------------------------------------------------------- lifts

def suite_lifts(seed: int = 0, fields=("QQ", "Fp 5")) -> list[dict]:
    from .fixtures import ADE, ADE_TABLE
    rec = _Recorder()
    for ftag in fields:
        field = Field.parse(ftag)
        names = list(ADE)

        def table(t, field=field):
            name = names[t]
            spec = ade_spec(name, field)
            H = Y.homotopy_lie(spec)
            br, qs = ADE_TABLE[name]
            idx = {v: i for i, v in enumerate(spec.names)}
            want_b = {(idx[a], idx[b]): field(v) for (a, b), v in br.items()}
            want_q = {idx[a]: field(v) for a, v in qs.items()}
            if H.brackets[0] != want_b or H.q[0] != want_q:
                return f"{name}: got {H.to_json()}"
            return None

        rec.run(f"simple-singularity table over {ftag}", len(names), table)

        def cocycles(t, field=field):
            spec = ade_spec(names[t], field)
            res = closed_form(spec, 4)
            for g in res.generators:
                D = Y.lift_dual(g, res)
                if not Y.is_cocycle(D) or not Y.pd_rule_holds(D, 3):
                    return f"{names[t]}: lift of {g.name}"
            return None

        rec.run(f"lifts are pd cocycles over {ftag}", len(names), cocycles)

    def routes(t):
        spec = ade_spec(["A1", "D4", "E6"][t])
        res = closed_form(spec, 4)
        duals = [Y.generator_dual(res, g) for g in res.generators]
        for a in duals:
            for b in duals:
                if a.hdeg + b.hdeg > 4:
                    continue
                if Y.yoneda_product(a, b) != Y.yoneda_product_chain(a, b):
                    return f"{a} . {b}"
        return None

    rec.run("derivation and chain-map Yoneda products agree", 3, routes)
    return rec.results


# ---------------------------------------------------------------- appendix C

def random_derivation(rng: random.Random, alg: PDAlgebra, shift: int) -> Y.Derivation:
    vals = {}
    for g in alg.generators:
        h = g.hdeg - shift
        if h < 0 or not alg.basis(h):
            continue
        if rng.random() < 0.3:
            continue
        vals[g.index] = random_element(rng, alg, [h], max_poldeg=3, terms=2)
    return Y.Derivation(alg, shift, vals)


def appendix_c_failures(D: Y.Derivation, Dp: Y.Derivation, upto: int) -> str | None:
    alg = D.alg
    D2 = Y.derivation_square(D)
    if not Y.operator_matches_rule(D2, lambda x: D(D(x)), upto):
        return "D o D differs from the derivation with values D(D(b))"
    if not Y.pd_rule_holds(D2, upto):
        return "D^2 violates the pd derivation rule"
    if Y.is_cocycle(D) and not Y.is_cocycle(D2):
        return "delta(D) = 0 but delta(D^2) != 0"
    lhs = Y.bracket(D2, Dp)
    rhs = Y.bracket(D, Y.bracket(D, Dp))
    if lhs != rhs:
        return f"[D^2, D'] != [D, [D, D']] for D' of shift {Dp.shift}"
    sp = Dp.shift

    def op_lhs(x):
        return D2(Dp(x)) - Dp(D2(x))

    def inner(x):
        # [D, D'] with D odd
        a = D(Dp(x))
        b = Dp(D(x))
        return a + b if sp % 2 else a - b

    def op_rhs(x):
        # [D, E] with E = [D, D'] of shift 1 + sp
        a = D(inner(x))
        b = inner(D(x))
        return a - b if sp % 2 else a + b

    for h in range(upto + 1):
        for m in alg.basis(h):
            x = alg.monomial(m)
            if op_lhs(x) != op_rhs(x):
                return f"operator identity fails on {alg.format_mono(m)}"
    return None


def suite_appendix_c(seed: int = 0, trials: int = 100, upto: int = 4, field: Field | str = "QQ") -> list[dict]:
    if isinstance(field, str):
        field = Field.parse(field)
    rng = random.Random(f"{seed}:appendix-c")
    res = closed_form(ade_spec("A1", field), upto)
    alg = res.alg
    lifts = [Y.lift_dual(g, res) for g in res.generators if g.hdeg == 1]
    rec = _Recorder()

    def body(t):
        D = None
        for L in lifts:
            c = rng.randint(-2, 2)
            if c:
                D = L.scale(c) if D is None else D + L.scale(c)
        if D is None:
            D = lifts[0]
        Dp = random_derivation(rng, alg, rng.choice([-1, 0, 1, 2]))
        return appendix_c_failures(D, Dp, upto)

    rec.run("D^2 rule, cocycle, [D^2,D'] = [D,[D,D']]", trials, body)
    return rec.results


def run_suite(name: str, seed: int = 0) -> list[dict]:
    if name == "pd-axioms":
        return suite_pd_axioms(seed)
    if name == "shuffle":
        return suite_shuffle(seed)
    if name == "lifts":
        return suite_lifts(seed)
    if name == "appendix-c":
        return suite_appendix_c(seed, trials=30)
    raise ValueError(f"unknown suite {name}")

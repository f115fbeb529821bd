"""Sparse multivariate polynomials, Groebner bases and quotient rings.

Polynomials live in a :class:`PolyRing` (field plus ordered variable names)
and are stored as ``{exponent tuple: coefficient}``.  The monomial order is
graded lex with x_1 > x_2 > ... > x_n.  Internally the Groebner engine takes
an arbitrary key function so that block (elimination) orders can be used for
colon ideals.
"""

from __future__ import annotations

import heapq
import itertools
import re
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from .errors import ContextError, PreconditionError, SpecError
from .field import Field
from . import linalg

Monomial = tuple  # tuple[int, ...]
Key = Callable[[Monomial], tuple]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


# ---------------------------------------------------------------- monomials

def grlex_key(m: Monomial) -> tuple:
    """Sort key: larger key means larger monomial in grlex."""
    return (sum(m),) + tuple(m)


def elim_key(m: Monomial) -> tuple:
    """Block order on k[t, x]: t-degree first, then grlex on the x part."""
    return (m[0], sum(m) - m[0]) + tuple(m[1:])


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------------------------------------------------------------- rings

class PolyRing:
    """k[x_1..x_n] with a fixed variable order."""

    __slots__ = ("field", "names", "nvars", "_index", "_hash")

    def __init__(self, field: Field, names: Sequence[str]):
        names = tuple(names)
        for nm in names:
            if not _NAME_RE.match(nm):
                raise SpecError(f"invalid variable name {nm!r}")
        if len(set(names)) != len(names):
            raise SpecError("duplicate variable names")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self._index = {nm: i for i, nm in enumerate(names)}
        self._hash = hash((field, names))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyRing) and self.field == other.field and self.names == other.names

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"PolyRing({self.field!r}, {list(self.names)})"

    # constructors
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {(0,) * self.nvars: c} if c != 0 else {})

    def gen(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def var(self, name: str) -> "Poly":
        if name not in self._index:
            raise SpecError(f"unknown variable {name!r}")
        return self.gen(self._index[name])

    def gens(self) -> list["Poly"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coef=1) -> "Poly":
        c = self.field(coef)
        return Poly(self, {tuple(exps): c} if c != 0 else {})

    def from_dict(self, terms: dict) -> "Poly":
        f = self.field
        out = {}
        for m, c in terms.items():
            c = f(c)
            if c != 0:
                out[tuple(m)] = c
        return Poly(self, out)

    def index(self, name: str) -> int:
        return self._index[name]

    def parse(self, text: str) -> "Poly":
        return _Parser(self, text).parse()


class Poly:
    """Immutable sparse polynomial.  Do not mutate ``terms``."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # coercion
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ContextError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if p:
                v %= p
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        return Poly(self.ring, {m: ((-c) % p if p else -c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if p:
                    v %= p
                out[m] = v
        return Poly(self.ring, {m: c for m, c in out.items() if c != 0})

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = self.ring.field(c)
        if c == 0:
            return self.ring.zero()
        p = self.ring.field.p
        if p:
            return Poly(self.ring, {m: v * c % p for m, v in self.terms.items()})
        return Poly(self.ring, {m: v * c for m, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # order related
    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def lm(self) -> Monomial:
        if not self.terms:
            raise PreconditionError("zero polynomial has no leading term")
        return max(self.terms, key=grlex_key)

    def lc(self):
        return self.terms[self.lm()]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(m) for m in self.terms), default=-1)

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        return {sum(w * e for w, e in zip(weights, m)) for m in self.terms}

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        if weights is None:
            weights = (1,) * self.ring.nvars
        return len(self.weighted_degrees(weights)) <= 1

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def monic(self) -> "Poly":
        return self.scale(self.ring.field.inv(self.lc()))

    def homogeneous_components(self, weights: Sequence[int]) -> dict[int, "Poly"]:
        comps: dict[int, dict] = {}
        for m, c in self.terms.items():
            d = sum(w * e for w, e in zip(weights, m))
            comps.setdefault(d, {})[m] = c
        return {d: Poly(self.ring, t) for d, t in comps.items()}

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


# ---------------------------------------------------------------- printing

def _format_monomial(names: Sequence[str], m: Monomial) -> str:
    parts = []
    for nm, e in zip(names, m):
        if e == 1:
            parts.append(nm)
        elif e > 1:
            parts.append(f"{nm}^{e}")
    return "*".join(parts)


def format_term(field: Field, names: Sequence[str], m: Monomial, c) -> str:
    mono = _format_monomial(names, m)
    cs = field.to_str(c)
    if not mono:
        return cs
    if cs == "1":
        return mono
    if cs == "-1":
        return "-" + mono
    return f"{cs}*{mono}"


def format_poly(f: Poly) -> str:
    """Canonical text: descending grlex, coefficient 1 suppressed."""
    if not f.terms:
        return "0"
    out = ""
    for i, (m, c) in enumerate(f.sorted_terms()):
        t = format_term(f.ring.field, f.ring.names, m, c)
        if i == 0:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


# ---------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            mt = _TOKEN_RE.match(text, pos)
            if mt is None or mt.end() == pos:
                break
            if mt.group(1) is not None:
                self.toks.append(("num", mt.group(1), mt.start(1) + 1))
            elif mt.group(2) is not None:
                self.toks.append(("name", mt.group(2), mt.start(2) + 1))
            elif mt.group(3) is not None:
                ch = mt.group(3)
                if ch not in "+-*^/()":
                    raise SpecError(f"unexpected character {ch!r}", column=mt.start(3) + 1)
                self.toks.append(("op", ch, mt.start(3) + 1))
            pos = mt.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise SpecError("unexpected end of polynomial", column=len(self.text) + 1)
        self.i += 1
        return t

    def expect(self, op: str):
        t = self.next()
        if t[0] != "op" or t[1] != op:
            raise SpecError(f"expected {op!r}, found {t[1]!r}", column=t[2])

    def parse(self) -> Poly:
        if not self.toks:
            raise SpecError("empty polynomial", column=1)
        f = self.expr()
        t = self.peek()
        if t is not None:
            raise SpecError(f"unexpected token {t[1]!r}", column=t[2])
        return f

    def expr(self) -> Poly:
        sign = 1
        t = self.peek()
        if t is not None and t[0] == "op" and t[1] in "+-":
            self.next()
            sign = -1 if t[1] == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            t = self.peek()
            if t is None or t[0] != "op" or t[1] not in "+-":
                return f
            self.next()
            g = self.term()
            f = f + g if t[1] == "+" else f - g

    def term(self) -> Poly:
        f = self.factor()
        while True:
            t = self.peek()
            if t is None or t[0] != "op" or t[1] != "*":
                return f
            self.next()
            f = f * self.factor()

    def factor(self) -> Poly:
        f = self.atom()
        t = self.peek()
        if t is not None and t[0] == "op" and t[1] == "^":
            self.next()
            e = self.next()
            if e[0] != "num":
                raise SpecError("exponent must be a non-negative integer", column=e[2])
            f = f ** int(e[1])
        return f

    def atom(self) -> Poly:
        t = self.next()
        kind, val, col = t
        if kind == "num":
            num = int(val)
            nt = self.peek()
            if nt is not None and nt[0] == "op" and nt[1] == "/":
                self.next()
                d = self.next()
                if d[0] != "num" or int(d[1]) == 0:
                    raise SpecError("bad rational literal", column=d[2])
                try:
                    return self.ring.const(Fraction(num, int(d[1])))
                except ZeroDivisionError:
                    raise SpecError("denominator vanishes in the field", column=d[2]) from None
            return self.ring.const(num)
        if kind == "name":
            if val not in self.ring._index:
                raise SpecError(f"unknown variable {val!r}", column=col)
            return self.ring.var(val)
        if val == "(":
            f = self.expr()
            self.expect(")")
            return f
        if val == "-":
            return -self.factor()
        raise SpecError(f"unexpected token {val!r}", column=col)


# ---------------------------------------------------------------- Groebner engine
# Internal polynomials are plain dicts; basis elements are monic.

def _negkey(key: Key) -> Callable[[Monomial], tuple]:
    return lambda m: tuple(-x for x in key(m))


def _lead(terms: dict, key: Key) -> Monomial:
    return max(terms, key=key)


def _make_monic(terms: dict, lm: Monomial, field: Field) -> dict:
    c = terms[lm]
    if c == 1:
        return terms
    inv = field.inv(c)
    p = field.p
    if p:
        return {m: v * inv % p for m, v in terms.items()}
    return {m: v * inv for m, v in terms.items()}


def _reduce(f: dict, basis: list, key: Key, field: Field, full: bool = True) -> dict:
    """Division of ``f`` by monic ``basis`` (list of (lm, terms)).

    With ``full`` every term is reduced; otherwise only the leading term
    (top reduction) until it becomes irreducible.
    """
    if not f:
        return {}
    p = field.p
    nk = _negkey(key)
    f = dict(f)
    heap = [(nk(m), m) for m in f]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, None)
        if c is None or c == 0:
            continue
        # skip duplicates that may remain on the heap
        for lm, g in basis:
            if all(x <= y for x, y in zip(lm, m)):
                q = tuple(y - x for x, y in zip(lm, m))
                for gm, gc in g.items():
                    if gm == lm:
                        continue
                    mm = tuple(a + b for a, b in zip(gm, q))
                    old = f.get(mm)
                    v = (0 if old is None else old) - c * gc
                    if p:
                        v %= p
                    if v == 0:
                        if old is not None:
                            del f[mm]
                    else:
                        if old is None:
                            heapq.heappush(heap, (nk(mm), mm))
                        f[mm] = v
                break
        else:
            rem[m] = c
            if not full:
                rem.update(f)
                return rem
    return rem


def _spoly(f: dict, lf: Monomial, g: dict, lg: Monomial, field: Field) -> dict:
    p = field.p
    L = mono_lcm(lf, lg)
    qf = mono_div(L, lf)
    qg = mono_div(L, lg)
    out: dict = {}
    for m, c in f.items():
        mm = mono_mul(m, qf)
        out[mm] = c
    for m, c in g.items():
        mm = mono_mul(m, qg)
        v = out.get(mm, 0) - c
        if p:
            v %= p
        out[mm] = v
    return {m: c for m, c in out.items() if c != 0}


def _groebner(polys: Iterable[dict], key: Key, field: Field) -> list[dict]:
    """Reduced monic Groebner basis of the ideal generated by ``polys``."""
    basis: list[tuple[Monomial, dict]] = []
    pending: list[dict] = [dict(f) for f in polys if f]
    pairs: set[tuple[int, int]] = set()
    lms: list[Monomial] = []

    def add(h: dict):
        lm = _lead(h, key)
        h = _make_monic(h, lm, field)
        idx = len(basis)
        basis.append((lm, h))
        lms.append(lm)
        for j in range(idx):
            pairs.add((j, idx))

    for f in pending:
        r = _reduce(f, basis, key, field)
        if r:
            add(r)

    done: set[tuple[int, int]] = set()
    while pairs:
        # normal selection strategy: smallest lcm first
        i, j = min(pairs, key=lambda ij: (key(mono_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        done.add((i, j))
        li, lj = lms[i], lms[j]
        if mono_coprime(li, lj):
            continue
        L = mono_lcm(li, lj)
        chain = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if mono_divides(lms[k], L):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    chain = True
                    break
        if chain:
            continue
        s = _spoly(basis[i][1], li, basis[j][1], lj, field)
        r = _reduce(s, basis, key, field)
        if r:
            add(r)

    # minimise
    keep = []
    for i, (lm, g) in enumerate(basis):
        redundant = False
        for j, (lm2, _) in enumerate(basis):
            if j == i:
                continue
            if mono_divides(lm2, lm) and (lm2 != lm or j < i):
                redundant = True
                break
        if not redundant:
            keep.append((lm, g))
    # interreduce
    out = []
    for i, (lm, g) in enumerate(keep):
        others = [b for j, b in enumerate(keep) if j != i]
        tail = {m: c for m, c in g.items() if m != lm}
        r = _reduce(tail, others, key, field)
        r[lm] = 1
        out.append(r)
    out.sort(key=lambda h: key(_lead(h, key)), reverse=True)
    return out


# ---------------------------------------------------------------- public GB API

class GroebnerBasis:
    """A Groebner basis in grlex order."""

    __slots__ = ("ring", "gens", "reduced", "_basis")

    def __init__(self, ring: PolyRing, gens: Sequence[Poly], reduced: bool):
        self.ring = ring
        self.gens = tuple(gens)
        self.reduced = reduced
        self._basis = [(g.lm(), _make_monic(g.terms, g.lm(), ring.field)) for g in self.gens]

    order = "grlex"

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def leading_monomials(self) -> list[Monomial]:
        return [lm for lm, _ in self._basis]

    def reduce(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise ContextError("polynomial and Groebner basis live in different rings")
        return Poly(self.ring, _reduce(f.terms, self._basis, grlex_key, self.ring.field))

    def contains(self, f: Poly) -> bool:
        return self.reduce(f).is_zero()

    def is_standard(self, m: Monomial) -> bool:
        return not any(mono_divides(lm, m) for lm, _ in self._basis)


def normal_form(f: Poly, gb: GroebnerBasis) -> Poly:
    """Fully reduced remainder of ``f`` modulo ``gb``."""
    return gb.reduce(f)


def buchberger(gens: Sequence[Poly], order: str = "grlex") -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    if order != "grlex":
        raise PreconditionError("only the grlex order is supported")
    gens = list(gens)
    if not gens:
        raise PreconditionError("buchberger needs a nonempty generator list")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ContextError("generators from different rings")
    out = _groebner([g.terms for g in gens], grlex_key, ring.field)
    return GroebnerBasis(ring, [Poly(ring, h) for h in out], reduced=True)


def s_polynomial(f: Poly, g: Poly) -> Poly:
    field = f.ring.field
    lf, lg = f.lm(), g.lm()
    fm = _make_monic(f.terms, lf, field)
    gm = _make_monic(g.terms, lg, field)
    return Poly(f.ring, _spoly(fm, lf, gm, lg, field))


def satisfies_buchberger_criterion(gens: Sequence[Poly]) -> bool:
    """Every S-polynomial of a pair reduces to zero modulo ``gens``."""
    gens = [g for g in gens if g]
    if not gens:
        return True
    ring = gens[0].ring
    basis = [(g.lm(), _make_monic(g.terms, g.lm(), ring.field)) for g in gens]
    for (i, (li, fi)), (j, (lj, fj)) in itertools.combinations(enumerate(basis), 2):
        s = _spoly(fi, li, fj, lj, ring.field)
        if _reduce(s, basis, grlex_key, ring.field):
            return False
    return True


def exact_divide(f: Poly, g: Poly) -> Poly:
    """f / g, raising PreconditionError if the division is not exact."""
    ring = f.ring
    field = ring.field
    lg = g.lm()
    inv = field.inv(g.terms[lg])
    rem = dict(f.terms)
    quo: dict = {}
    p = field.p
    while rem:
        m = max(rem, key=grlex_key)
        if not mono_divides(lg, m):
            raise PreconditionError("division is not exact")
        q = mono_div(m, lg)
        c = field.mul(rem[m], inv)
        quo[q] = c
        for gm, gc in g.terms.items():
            mm = mono_mul(gm, q)
            v = rem.get(mm, 0) - c * gc
            if p:
                v %= p
            if v == 0:
                rem.pop(mm, None)
            else:
                rem[mm] = v
    return Poly(ring, quo)


def colon_ideal(gens: Sequence[Poly], g: Poly, ring: PolyRing | None = None) -> list[Poly]:
    """Generators of (gens) : g, via elimination of t from t*I + (1-t)*g."""
    if ring is None:
        ring = g.ring
    gens = [h for h in gens if h]
    if not gens:
        return []
    if g.is_zero():
        return [ring.one()]
    field = ring.field
    p = field.p

    def lift(h: Poly, texp: int, scale=1) -> dict:
        return {(texp,) + m: (c * scale % p if p else c * scale) for m, c in h.terms.items()}

    polys = [lift(h, 1) for h in gens]
    gt = lift(g, 0)
    for m, c in lift(g, 1, -1).items():
        gt[m] = c
    polys.append(gt)
    gb = _groebner(polys, elim_key, field)
    out = []
    for h in gb:
        if all(m[0] == 0 for m in h):
            hp = Poly(ring, {m[1:]: c for m, c in h.items()})
            out.append(exact_divide(hp, g))
    return out


def is_regular_sequence(gens: Sequence[Poly], shortcut: bool = True) -> bool:
    """Exact regular-sequence test via colon ideals.

    With ``shortcut`` the pairwise-coprime leading monomial criterion is tried
    first; it is only sufficient, so a negative answer falls through to the
    colon ideal computation.
    """
    gens = list(gens)
    if not gens:
        return True
    ring = gens[0].ring
    if any(g.is_zero() for g in gens):
        return False
    if shortcut:
        lms = [g.lm() for g in gens]
        if all(sum(m) > 0 for m in lms) and all(
            mono_coprime(a, b) for a, b in itertools.combinations(lms, 2)
        ):
            return True
    return regularity_witness(gens) is None


def regularity_witness(gens: Sequence[Poly]) -> int | None:
    """Index s (0-based) of the first g_s that is a zero divisor modulo its
    predecessors (or makes the ideal improper), or None if the sequence is
    regular."""
    gens = list(gens)
    for s, g in enumerate(gens):
        if g.is_zero():
            return s
        prev = gens[:s]
        if prev:
            gb = buchberger(prev)
            for h in colon_ideal(prev, g):
                if not gb.contains(h):
                    return s
        # the quotient must stay nonzero
        gb_s = buchberger(gens[: s + 1])
        if gb_s.contains(g.ring.one()):
            return s
    return None


# ---------------------------------------------------------------- quotient rings

class QuotientRing:
    """k[x]/I with a cached reduced Groebner basis of I."""

    def __init__(self, ring: PolyRing, relations: Sequence[Poly] = ()):
        self.ring = ring
        self.field = ring.field
        rels = []
        for r in relations:
            if r.ring != ring:
                raise ContextError("relation from a different ring")
            if r:
                rels.append(r)
        self.relations = tuple(rels)
        self.gb = buchberger(rels) if rels else GroebnerBasis(ring, [], reduced=True)
        self._trivial = not rels
        self._nf_cache: dict[Monomial, dict] = {}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, QuotientRing)
            and self.ring == other.ring
            and self.gb.gens == other.gb.gens
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.gb.gens))

    def __repr__(self) -> str:
        rels = ", ".join(str(r) for r in self.relations)
        return f"QuotientRing({self.ring!r}, [{rels}])"

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def _nf_mono(self, m: Monomial) -> dict:
        r = self._nf_cache.get(m)
        if r is None:
            r = _reduce({m: 1}, self.gb._basis, grlex_key, self.field)
            self._nf_cache[m] = r
        return r

    def nf(self, f: Poly) -> Poly:
        if self._trivial:
            return f
        if f.ring != self.ring:
            raise ContextError("polynomial from a different ring")
        p = self.field.p
        out: dict = {}
        for m, c in f.terms.items():
            if self.gb.is_standard(m):
                v = out.get(m, 0) + c
                if p:
                    v %= p
                out[m] = v
                continue
            for mm, cc in self._nf_mono(m).items():
                v = out.get(mm, 0) + c * cc
                if p:
                    v %= p
                out[mm] = v
        return Poly(self.ring, {m: c for m, c in out.items() if c != 0})

    def mul(self, a: Poly, b: Poly) -> Poly:
        return self.nf(a * b)

    def is_zero(self, f: Poly) -> bool:
        return self.nf(f).is_zero()

    def standard_monomials(self, degree: int, weights: Sequence[int] | None = None) -> list[Monomial]:
        """Monomials of (weighted) degree ``degree`` outside the leading ideal,
        in descending grlex order."""
        if weights is None:
            weights = (1,) * self.nvars
        out = [m for m in monomials_of_degree(weights, degree) if self.gb.is_standard(m)]
        out.sort(key=grlex_key, reverse=True)
        return out

    def is_artinian(self) -> bool:
        """True iff every variable has a pure power among the leading monomials."""
        lms = self.gb.leading_monomials()
        for i in range(self.nvars):
            if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
                return False
        return True


_MONO_CACHE: dict = {}


def monomials_of_degree(weights: Sequence[int], degree: int) -> list[Monomial]:
    """All exponent vectors with sum(w_i e_i) == degree (weights positive)."""
    weights = tuple(weights)
    key = (weights, degree)
    hit = _MONO_CACHE.get(key)
    if hit is not None:
        return hit
    n = len(weights)
    out: list[Monomial] = []
    if degree < 0:
        pass
    elif n == 0:
        if degree == 0:
            out.append(())
    else:
        def rec(i: int, left: int, acc: list):
            if i == n - 1:
                w = weights[i]
                if left % w == 0:
                    out.append(tuple(acc) + (left // w,))
                return
            w = weights[i]
            for e in range(left // w, -1, -1):
                acc.append(e)
                rec(i + 1, left - e * w, acc)
                acc.pop()

        rec(0, degree, [])
    _MONO_CACHE[key] = out
    return out


# ---------------------------------------------------------------- module syzygies

def module_syzygies(matrix: Sequence[Sequence[Poly]], ring: PolyRing | None = None,
                    quotient: QuotientRing | None = None, ncols: int | None = None) -> list[tuple[Poly, ...]]:
    """Generators of the kernel of the map R^c -> R^r given by ``matrix``.

    ``matrix`` is a list of r rows of length c.  Over a quotient ring the
    relation columns g*e_i are adjoined, the syzygy module is computed in the
    polynomial ring from a position-over-term module Groebner basis of the
    graph (column_j ; e_j), and the tails are projected back to R.
    """
    rows = [list(r) for r in matrix]
    if ring is None:
        if quotient is not None:
            ring = quotient.ring
        else:
            for r in rows:
                for e in r:
                    ring = e.ring
                    break
                if ring is not None:
                    break
    if ring is None:
        raise PreconditionError("cannot infer the ring of an empty matrix")
    for r in rows:
        for e in r:
            if e.ring != ring:
                raise ContextError("matrix entries from different rings")
    if quotient is not None and quotient.ring != ring:
        raise ContextError("quotient ring does not match the matrix ring")
    nr = len(rows)
    nc = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    field = ring.field
    zero_m = (0,) * ring.nvars

    gens: list[dict] = []
    for j in range(nc):
        v = {}
        for i in range(nr):
            for m, c in rows[i][j].terms.items():
                v[(i, m)] = c
        v[(nr + j, zero_m)] = 1
        gens.append(v)
    if quotient is not None:
        for g in quotient.gb.gens:
            for i in range(nr):
                gens.append({(i, m): c for m, c in g.terms.items()})

    gb = _module_groebner(gens, field)
    out = []
    seen = set()
    for v in gb:
        lead = _mlead(v)
        if lead[0] < nr:
            continue
        comps = [dict() for _ in range(nc)]
        for (pos, m), c in v.items():
            comps[pos - nr][m] = c
        vec = tuple(Poly(ring, t) for t in comps)
        if quotient is not None:
            vec = tuple(quotient.nf(x) for x in vec)
        if all(x.is_zero() for x in vec):
            continue
        key = tuple(frozenset(x.terms.items()) for x in vec)
        if key in seen:
            continue
        seen.add(key)
        out.append(vec)
    return out


def _mkey(t) -> tuple:
    pos, m = t
    return (-pos, sum(m)) + tuple(m)


def _mlead(v: dict):
    return max(v, key=_mkey)


def _mreduce(f: dict, basis_by_pos: dict, field: Field) -> dict:
    p = field.p
    f = dict(f)
    nk = lambda t: tuple(-x for x in _mkey(t))
    heap = [(nk(t), t) for t in f]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = f.pop(t, None)
        if c is None or c == 0:
            continue
        pos, m = t
        for lm, g in basis_by_pos.get(pos, ()):
            if all(x <= y for x, y in zip(lm, m)):
                q = tuple(y - x for x, y in zip(lm, m))
                for (gp, gm), gc in g.items():
                    if gp == pos and gm == lm:
                        continue
                    tt = (gp, tuple(a + b for a, b in zip(gm, q)))
                    old = f.get(tt)
                    v = (0 if old is None else old) - c * gc
                    if p:
                        v %= p
                    if v == 0:
                        if old is not None:
                            del f[tt]
                    else:
                        if old is None:
                            heapq.heappush(heap, (nk(tt), tt))
                        f[tt] = v
                break
        else:
            rem[t] = c
    return rem


def _module_groebner(gens: list[dict], field: Field) -> list[dict]:
    basis: list[tuple[tuple, dict]] = []
    by_pos: dict[int, list] = {}
    pairs: set[tuple[int, int]] = set()

    def add(h: dict):
        pos, lm = _mlead(h)
        c = h[(pos, lm)]
        if c != 1:
            inv = field.inv(c)
            h = {t: field.mul(v, inv) for t, v in h.items()}
        idx = len(basis)
        for j, ((pj, _), _) in enumerate(basis):
            if pj == pos:
                pairs.add((j, idx))
        basis.append(((pos, lm), h))
        by_pos.setdefault(pos, []).append((lm, h))

    # process generators from small to large so the graph tails reduce early
    for g in sorted(gens, key=lambda v: _mkey(_mlead(v)) if v else ()):
        r = _mreduce(g, by_pos, field)
        if r:
            add(r)

    while pairs:
        i, j = min(
            pairs,
            key=lambda ij: (sum(mono_lcm(basis[ij[0]][0][1], basis[ij[1]][0][1])), ij),
        )
        pairs.discard((i, j))
        (pos, li), fi = basis[i]
        (_, lj), fj = basis[j]
        L = mono_lcm(li, lj)
        chain = False
        for k, ((pk, lk), _) in enumerate(basis):
            if k in (i, j) or pk != pos:
                continue
            if mono_divides(lk, L):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    chain = True
                    break
        if chain:
            continue
        qi, qj = mono_div(L, li), mono_div(L, lj)
        s: dict = {}
        p = field.p
        for (gp, gm), c in fi.items():
            s[(gp, mono_mul(gm, qi))] = c
        for (gp, gm), c in fj.items():
            t = (gp, mono_mul(gm, qj))
            v = s.get(t, 0) - c
            if p:
                v %= p
            s[t] = v
        s = {t: c for t, c in s.items() if c != 0}
        r = _mreduce(s, by_pos, field)
        if r:
            add(r)
    return [h for _, h in basis]


# ---------------------------------------------------------------- misc

def quadratic_part(c: Poly) -> dict[tuple[int, int], object]:
    """Nonzero coefficients q_ij (i <= j) of x_i x_j in ``c``."""
    if c.is_zero():
        raise PreconditionError("relation below quadratic order")
    if c.min_degree() < 2:
        raise PreconditionError("relation below quadratic order")
    out = {}
    for m, v in c.terms.items():
        if sum(m) == 2:
            idx = [i for i, e in enumerate(m) for _ in range(e)]
            out[(idx[0], idx[1])] = v
    return out


def find_grading(ring: PolyRing, polys: Sequence[Poly], search: int = 6) -> tuple[int, ...] | None:
    """A positive integer weight vector making every poly homogeneous.

    Tries the standard grading first, then the kernel of the homogeneity
    conditions over QQ: a one-dimensional kernel is decided exactly, larger
    kernels by a bounded search over small integer combinations of a basis.
    Returns None when no positive grading is found.
    """
    n = ring.nvars
    if n == 0:
        return ()
    if all(f.is_homogeneous() for f in polys):
        return (1,) * n
    rows = []
    for f in polys:
        ms = list(f.terms)
        for m in ms[1:]:
            rows.append([a - b for a, b in zip(m, ms[0])])
    Q = Field(0)
    ker = linalg.nullspace(rows, n, Q) if rows else [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    if not ker:
        return None
    ints = [_primitive(v) for v in ker]
    best = None
    if len(ints) == 1:
        cands = [ints[0], [-x for x in ints[0]]]
    else:
        cands = (
            [sum(c * v[i] for c, v in zip(coefs, ints)) for i in range(n)]
            for coefs in itertools.product(range(-search, search + 1), repeat=len(ints))
        )
    for w in cands:
        if all(x > 0 for x in w):
            w = _primitive(w)
            key = (sum(w), max(w), tuple(w))
            if best is None or key < best[0]:
                best = (key, tuple(w))
    return None if best is None else best[1]


def _primitive(v: Sequence) -> list[int]:
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // gcd(den, x.denominator)
    w = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, abs(x))
    return [x // g for x in w] if g else w

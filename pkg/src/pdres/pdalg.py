"""Free strictly graded-commutative divided-power dg algebras.

An algebra is an ordered set of generators over a base ring R (a
:class:`~pdres.ring.QuotientRing`).  Its R-basis consists of PBW monomials
``x^(f) = prod b^(f(b))`` with odd exponents at most 1.  A monomial is stored
as a sorted tuple of ``(generator index, exponent)`` pairs; an element is a
dict from monomials to nonzero coefficients in normal form.

Degrees are homological and positive: generators have ``hdeg >= 1`` and the
differential lowers ``hdeg`` by one.  Divided-power coefficients are
computed in the integers and only then mapped into the field.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Callable, Iterable, Mapping, Sequence

from .errors import ContextError, PreconditionError
from .ring import Poly, QuotientRing
from . import shuffle

Mono = tuple  # tuple[tuple[int, int], ...]
ONE: Mono = ()


@dataclass(frozen=True)
class Generator:
    name: str
    hdeg: int
    weight: int = 0
    index: int = 0

    @property
    def parity(self) -> int:
        return self.hdeg % 2


def mono_hdeg(m: Mono, gens: Sequence[Generator]) -> int:
    return sum(gens[i].hdeg * e for i, e in m)


def mono_poldeg(m: Mono) -> int:
    return sum(e for _, e in m)


def mono_weight(m: Mono, gens: Sequence[Generator]) -> int:
    return sum(gens[i].weight * e for i, e in m)


class PDAlgebra:
    """Free pd dg algebra on ordered generators over ``base``.

    Generators are ordered by homological degree, then by declaration.
    Extensions may only append generators of degree >= the current maximum,
    so monomials and elements of an algebra remain valid in its extensions.
    """

    def __init__(self, base: QuotientRing, generators: Sequence[tuple] = (),
                 differentials: Sequence["PDElement | None"] | None = None, _parent=None):
        self.base = base
        self.field = base.field
        self._parent = _parent
        gens: list[Generator] = [] if _parent is None else list(_parent.generators)
        diffs: list = [] if _parent is None else list(_parent._diffs)
        specs = list(generators)
        if differentials is None:
            differentials = [None] * len(specs)
        if len(differentials) != len(specs):
            raise PreconditionError("one differential per generator is required")
        order = sorted(range(len(specs)), key=lambda i: (specs[i][1], i))
        top = gens[-1].hdeg if gens else 0
        names = {g.name for g in gens}
        pending = []
        for i in order:
            spec = specs[i]
            name, hdeg = spec[0], int(spec[1])
            weight = int(spec[2]) if len(spec) > 2 else 0
            if hdeg < 1:
                raise PreconditionError(f"generator {name} must have positive degree")
            if hdeg < top:
                raise PreconditionError("extensions must not insert generators below existing ones")
            if name in names:
                raise PreconditionError(f"duplicate generator name {name}")
            names.add(name)
            g = Generator(name, hdeg, weight, len(gens))
            gens.append(g)
            diffs.append(None)
            pending.append((g.index, differentials[i]))
        self.generators: tuple[Generator, ...] = tuple(gens)
        self._diffs = diffs
        self._by_name = {g.name: g for g in gens}
        self._mul_cache: dict = {} if _parent is None else _parent._mul_cache
        self._d_cache: dict = {} if _parent is None else dict(_parent._d_cache)
        self._basis_cache: dict = {}
        for idx, dval in pending:
            if dval is None:
                dval = self.zero()
            dval = self.coerce(dval)
            g = self.generators[idx]
            if not dval.is_zero() and dval.hdeg() != g.hdeg - 1:
                raise PreconditionError(f"d({g.name}) must have degree {g.hdeg - 1}")
            self._diffs[idx] = dval
        for idx, _ in pending:
            if not self.d(self._diffs[idx]).is_zero():
                raise PreconditionError(f"d(d({self.generators[idx].name})) is not zero")

    # ------------------------------------------------------------ structure
    def extend(self, generators: Sequence[tuple], differentials: Sequence["PDElement | None"]) -> "PDAlgebra":
        return PDAlgebra(self.base, generators, differentials, _parent=self)

    def is_prefix_of(self, other: "PDAlgebra") -> bool:
        if self is other:
            return True
        return (
            self.base is other.base or self.base == other.base
        ) and other.generators[: len(self.generators)] == self.generators

    def generator(self, name: str) -> Generator:
        return self._by_name[name]

    def gen(self, name_or_index) -> "PDElement":
        g = self._by_name[name_or_index] if isinstance(name_or_index, str) else self.generators[name_or_index]
        return PDElement(self, {((g.index, 1),): self.base.ring.one()})

    def differential_of(self, g: Generator | str) -> "PDElement":
        if isinstance(g, str):
            g = self._by_name[g]
        return self._diffs[g.index]

    def zero(self) -> "PDElement":
        return PDElement(self, {})

    def one(self) -> "PDElement":
        return PDElement(self, {ONE: self.base.ring.one()})

    def scalar(self, c) -> "PDElement":
        if not isinstance(c, Poly):
            c = self.base.ring.const(c)
        c = self.base.nf(c)
        return PDElement(self, {ONE: c} if c else {})

    def monomial(self, m: Mono, coef=None) -> "PDElement":
        if coef is None:
            coef = self.base.ring.one()
        elif not isinstance(coef, Poly):
            coef = self.base.ring.const(coef)
        coef = self.base.nf(coef)
        return PDElement(self, {tuple(m): coef} if coef else {})

    def divided(self, name: str, e: int) -> "PDElement":
        g = self._by_name[name]
        if g.parity and e > 1:
            return self.zero()
        if e == 0:
            return self.one()
        return self.monomial(((g.index, e),))

    def coerce(self, x) -> "PDElement":
        if isinstance(x, PDElement):
            if x.alg is self:
                return x
            if x.alg.is_prefix_of(self):
                return PDElement(self, x.terms)
            raise ContextError("element from an incompatible algebra")
        if isinstance(x, Poly):
            return self.scalar(x)
        return self.scalar(x)

    def hdeg(self, m: Mono) -> int:
        return mono_hdeg(m, self.generators)

    def weight(self, m: Mono) -> int:
        return mono_weight(m, self.generators)

    def basis(self, h: int, gens_upto: int | None = None) -> list[Mono]:
        """PBW monomials of homological degree ``h``."""
        key = (h, gens_upto)
        hit = self._basis_cache.get(key)
        if hit is not None:
            return hit
        gens = self.generators if gens_upto is None else self.generators[:gens_upto]
        out: list[Mono] = []
        n = len(gens)

        def rec(i: int, left: int, acc: list):
            if left == 0:
                out.append(tuple(acc))
                return
            if i == n:
                return
            g = gens[i]
            top = 1 if g.parity else left // g.hdeg
            for e in range(min(top, left // g.hdeg), 0, -1):
                acc.append((i, e))
                rec(i + 1, left - e * g.hdeg, acc)
                acc.pop()
            rec(i + 1, left, acc)

        if h >= 0:
            rec(0, h, [])
        self._basis_cache[key] = out
        return out

    def format_mono(self, m: Mono) -> str:
        if not m:
            return "1"
        parts = []
        for i, e in m:
            nm = self.generators[i].name
            parts.append(nm if e == 1 else f"{nm}^({e})")
        return "*".join(parts)

    # ------------------------------------------------------------ products
    def mono_mul(self, m1: Mono, m2: Mono):
        """(integer coefficient, monomial) of m1 * m2, or None if zero."""
        if not m1:
            return 1, m2
        if not m2:
            return 1, m1
        key = (m1, m2)
        hit = self._mul_cache.get(key, False)
        if hit is not False:
            return hit
        gens = self.generators
        out = []
        coef = 1
        swaps = 0
        i = j = 0
        # number of odd blocks of m1 not yet consumed
        odd_left = sum(1 for a, _ in m1 if gens[a].hdeg % 2)
        res = None
        while i < len(m1) or j < len(m2):
            if j == len(m2) or (i < len(m1) and m1[i][0] < m2[j][0]):
                a, e = m1[i]
                if gens[a].hdeg % 2:
                    odd_left -= 1
                out.append((a, e))
                i += 1
            elif i == len(m1) or m2[j][0] < m1[i][0]:
                b, e = m2[j]
                if gens[b].hdeg % 2:
                    swaps += odd_left
                out.append((b, e))
                j += 1
            else:
                a, e1 = m1[i]
                _, e2 = m2[j]
                if gens[a].hdeg % 2:
                    self._mul_cache[key] = None
                    return None
                coef *= comb(e1 + e2, e1)
                out.append((a, e1 + e2))
                i += 1
                j += 1
        res = (-coef if swaps % 2 else coef, tuple(out))
        self._mul_cache[key] = res
        return res

    def star_mul(self, a: "PDElement", b: "PDElement") -> "PDElement":
        A = _join(a.alg, b.alg)
        base = A.base
        field = A.field
        ring = base.ring
        acc: dict = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                r = A.mono_mul(m1, m2)
                if r is None:
                    continue
                k, m = r
                k = field(k)
                if k == 0:
                    continue
                c = c1 * c2
                if k != 1:
                    c = c.scale(k)
                prev = acc.get(m)
                acc[m] = c if prev is None else prev + c
        out = {}
        for m, c in acc.items():
            c = base.nf(c)
            if c:
                out[m] = c
        return PDElement(A, out)

    # ------------------------------------------------------------ differential
    def d_mono(self, m: Mono) -> "PDElement":
        hit = self._d_cache.get(m)
        if hit is not None:
            return PDElement(self, hit.terms) if hit.alg is not self else hit
        gens = self.generators
        total = self.zero()
        sgn = 0
        for k, (i, e) in enumerate(m):
            db = self._diffs[i]
            if db is not None and not db.is_zero():
                prefix = self.monomial(m[:k])
                suffix = self.monomial(m[k + 1:])
                core = self.monomial(((i, e - 1),) if e > 1 else ()) * db
                term = prefix * core * suffix
                total = total - term if sgn % 2 else total + term
            sgn += e * gens[i].hdeg
        self._d_cache[m] = total
        return total

    def d(self, a: "PDElement") -> "PDElement":
        a = self.coerce(a)
        acc: dict = {}
        for m, c in a.terms.items():
            dm = self.d_mono(m)
            for mm, cc in dm.terms.items():
                prev = acc.get(mm)
                v = c * cc
                acc[mm] = v if prev is None else prev + v
        out = {}
        for m, c in acc.items():
            c = self.base.nf(c)
            if c:
                out[m] = c
        return PDElement(self, out)

    # ------------------------------------------------------------ divided powers
    def _gamma_mono(self, m: Mono, k: int):
        """(integer coefficient, monomial) of gamma_k(m) or None."""
        if k == 0:
            return 1, ONE
        if k == 1:
            return 1, m
        gens = self.generators
        if any(gens[i].hdeg % 2 for i, _ in m):
            return None
        coef = 1
        # peel blocks from the largest index: each contributes (ke)!/(e!)^k,
        # the last remaining block contributes (ke)!/(k!(e!)^k)
        for pos, (i, e) in enumerate(reversed(m)):
            c = factorial(k * e) // factorial(e) ** k
            if pos == len(m) - 1:
                c //= factorial(k)
            coef *= c
        return coef, tuple((i, k * e) for i, e in m)

    def divided_power(self, a: "PDElement", n: int) -> "PDElement":
        a = self.coerce(a)
        if n < 0:
            raise PreconditionError("negative divided power")
        for m in a.terms:
            if not m:
                raise PreconditionError("divided power needs an element of the augmentation ideal (degree-0 term)")
            if self.hdeg(m) % 2:
                raise PreconditionError("divided power undefined on odd degree")
        if n == 0:
            return self.one()
        field = self.field
        acc = [self.one()] + [self.zero()] * n
        for m, c in a.terms.items():
            powers = [self.one()]
            cpow = self.base.ring.one()
            for k in range(1, n + 1):
                cpow = self.base.nf(cpow * c)
                r = self._gamma_mono(m, k)
                if r is None or field(r[0]) == 0 or not cpow:
                    powers.append(self.zero())
                else:
                    powers.append(self.monomial(r[1], cpow.scale(r[0])))
            new = []
            for k in range(n + 1):
                s = self.zero()
                for i in range(k + 1):
                    if acc[i].is_zero() or powers[k - i].is_zero():
                        continue
                    s = s + acc[i] * powers[k - i]
                new.append(s)
            acc = new
        return acc[n]


def _join(A: PDAlgebra, B: PDAlgebra) -> PDAlgebra:
    if A is B:
        return A
    if A.is_prefix_of(B):
        return B
    if B.is_prefix_of(A):
        return A
    raise ContextError("elements from incompatible pd algebras")


class PDElement:
    """R-linear combination of PBW monomials.  Immutable."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: PDAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def _other(self, other):
        if isinstance(other, PDElement):
            return other
        return self.alg.coerce(other)

    def __add__(self, other):
        other = self._other(other)
        A = _join(self.alg, other.alg)
        out = dict(self.terms)
        for m, c in other.terms.items():
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                s = prev + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return PDElement(A, out)

    __radd__ = __add__

    def __neg__(self):
        return PDElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, PDElement):
            return self.alg.star_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "PDElement":
        base = self.alg.base
        if isinstance(c, Poly):
            out = {}
            for m, v in self.terms.items():
                w = base.nf(v * c)
                if w:
                    out[m] = w
            return PDElement(self.alg, out)
        c = self.alg.field(c)
        if c == 0:
            return PDElement(self.alg, {})
        return PDElement(self.alg, {m: v.scale(c) for m, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, PDElement):
            try:
                other = self.alg.coerce(other)
            except Exception:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def hdegs(self) -> set[int]:
        return {self.alg.hdeg(m) for m in self.terms}

    def hdeg(self) -> int:
        ds = self.hdegs()
        if len(ds) != 1:
            raise PreconditionError("element is not homogeneous")
        return ds.pop()

    def is_homogeneous(self) -> bool:
        return len(self.hdegs()) <= 1

    def coefficient(self, m: Mono) -> Poly:
        return self.terms.get(tuple(m), self.alg.base.ring.zero())

    def augmentation(self):
        """Constant term of the coefficient of the empty monomial."""
        c = self.terms.get(ONE)
        return 0 if c is None else c.constant_term()

    def d(self) -> "PDElement":
        return self.alg.d(self)

    def gamma(self, n: int) -> "PDElement":
        return self.alg.divided_power(self, n)

    def sorted_terms(self) -> list:
        A = self.alg
        return sorted(self.terms.items(), key=lambda t: (A.hdeg(t[0]), t[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for m, c in self.sorted_terms():
            ms = self.alg.format_mono(m)
            cs = str(c)
            if not m:
                t = cs if len(c.terms) == 1 else f"({cs})"
            elif cs == "1":
                t = ms
            elif cs == "-1":
                t = "-" + ms
            elif len(c.terms) == 1:
                t = f"{cs}*{ms}"
            else:
                t = f"({cs})*{ms}"
            if not out:
                out = t
            elif t.startswith("-"):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out

    def __repr__(self) -> str:
        return f"PDElement({self})"


# ---------------------------------------------------------------- free functions

def star_mul(a: PDElement, b: PDElement) -> PDElement:
    return a.alg.star_mul(a, b)


def divided_power(a: PDElement, n: int) -> PDElement:
    return a.alg.divided_power(a, n)


def differential(a: PDElement, alg: PDAlgebra | None = None) -> PDElement:
    return (alg or a.alg).d(a)


class PDMorphism:
    """The unique pd algebra map extending given generator images."""

    def __init__(self, source: PDAlgebra, target: PDAlgebra, images: Mapping):
        self.source = source
        self.target = target
        if source.base != target.base:
            raise ContextError("pd morphisms must be linear over the same base ring")
        imgs: dict[int, PDElement] = {}
        for key, val in images.items():
            g = source.generator(key) if isinstance(key, str) else key
            if not isinstance(g, Generator) or source.generators[g.index] != g:
                raise ContextError(f"{key!r} is not a generator of the source algebra")
            v = target.coerce(val)
            if not v.is_zero():
                if not v.is_homogeneous():
                    raise PreconditionError(f"image of {g.name} is not homogeneous")
                if v.hdeg() != g.hdeg:
                    raise PreconditionError(f"image of {g.name} has the wrong degree")
            imgs[g.index] = v
        self.images = imgs
        self._cache: dict = {}

    def image(self, g: Generator) -> PDElement:
        return self.images.get(g.index, self.target.zero())

    def on_mono(self, m: Mono) -> PDElement:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        out = self.target.one()
        for i, e in m:
            img = self.images.get(i)
            if img is None or img.is_zero():
                out = self.target.zero()
                break
            g = self.source.generators[i]
            factor = img if g.parity else self.target.divided_power(img, e)
            out = out * factor
            if out.is_zero():
                break
        self._cache[m] = out
        return out

    def __call__(self, x: PDElement) -> PDElement:
        x = self.source.coerce(x)
        out = self.target.zero()
        for m, c in x.terms.items():
            out = out + self.on_mono(m).scale(c)
        return out


def extend_pd_morphism(images: Mapping, source: PDAlgebra, target: PDAlgebra | None = None) -> PDMorphism:
    return PDMorphism(source, target or source, images)


# ---------------------------------------------------------------- tensor oracle

def to_tensor(a: PDElement) -> shuffle.TensorElement:
    """Symmetric tensor image of a PBW expansion (field-coefficient algebras only)."""
    A = a.alg
    if A.base.nvars:
        raise PreconditionError("the tensor oracle needs an algebra over the bare field")
    field = A.field
    out = shuffle.TensorElement(field)
    for m, c in a.terms.items():
        img = shuffle.TensorElement.one(field)
        for i, e in m:
            g = A.generators[i]
            letter = (g.name, g.hdeg)
            if g.parity:
                factor = shuffle.TensorElement.word(field, [letter])
            else:
                factor = shuffle.gamma([letter], e, field)
            img = shuffle.star(img, factor)
        out = out + img.scale(c.constant_term())
    return out


def _max_poldeg(a: PDElement) -> int:
    return max((mono_poldeg(m) for m in a.terms), default=0)


def oracle_compare(a: PDElement, b: PDElement) -> bool:
    """star_mul(a, b) agrees with the shuffle product of tensor images."""
    if _max_poldeg(a) + _max_poldeg(b) > shuffle.MAX_LENGTH:
        raise PreconditionError("tensor length cap exceeded")
    return to_tensor(a * b) == shuffle.star(to_tensor(a), to_tensor(b))


def oracle_compare_gamma(a: PDElement, n: int) -> bool:
    """divided_power(a, n) agrees with the coset-sum divided power of the image."""
    if _max_poldeg(a) * n > shuffle.MAX_LENGTH:
        raise PreconditionError("tensor length cap exceeded")
    return to_tensor(a.alg.divided_power(a, n)) == shuffle.gamma(to_tensor(a), n)

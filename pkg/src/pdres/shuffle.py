"""Brute-force symmetric tensors: permutations, Koszul signs, shuffles.

This module is the slow trusted reference for :mod:`pdres.pdalg`.  Every
operation is a literal sum over an explicit set of permutations, so it is
only usable for short words (length <= 8).

Conventions: a permutation is the tuple of images ``(s(1), ..., s(n))``;
composition ``compose(s, t)`` is ``s o t`` (apply ``t`` first); a letter is
``(name, degree)`` with homological degree; a word is a tuple of letters.
"""

from __future__ import annotations

import itertools
from math import factorial
from typing import Callable, Iterable, Sequence

from .errors import PreconditionError
from .field import Field

Permutation = tuple
Letter = tuple  # (name, degree)
Word = tuple

MAX_LENGTH = 8


# ---------------------------------------------------------------- permutations

def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def compose(s: Permutation, t: Permutation) -> Permutation:
    """(s o t)(i) = s(t(i))."""
    return tuple(s[t[i] - 1] for i in range(len(t)))


def inverse(s: Permutation) -> Permutation:
    inv = [0] * len(s)
    for i, v in enumerate(s, start=1):
        inv[v - 1] = i
    return tuple(inv)


def inversions(s: Permutation) -> list[tuple[int, int]]:
    """Inv(s) = {(i, j) : i < j, s(i) > s(j)}, 1-based."""
    n = len(s)
    return [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if s[i] > s[j]]


def koszul_sign(sigma: Permutation, degrees: Sequence[int]) -> int:
    """(-1)^l, l summing |x||y| over the pairs of letters that sigma swaps.

    The pairs are indexed by Inv(sigma^-1) on output positions: positions
    i < j with sigma^-1(i) > sigma^-1(j) hold the letters x_{sigma^-1(i)} and
    x_{sigma^-1(j)}.  This is the sign generated by the braiding, so the
    action is a group action.
    """
    if len(sigma) != len(degrees):
        raise PreconditionError("permutation and degree list have different lengths")
    inv = inverse(sigma)
    ell = 0
    for i, j in inversions(inv):
        ell += degrees[inv[i - 1] - 1] * degrees[inv[j - 1] - 1]
    return -1 if ell % 2 else 1


def act(sigma: Permutation, word: Word) -> tuple[int, Word]:
    """sigma(x_1 ... x_n) = sign * x_{sigma^-1(1)} ... x_{sigma^-1(n)}."""
    inv = inverse(sigma)
    sign = koszul_sign(sigma, [l[1] for l in word])
    return sign, tuple(word[inv[i] - 1] for i in range(len(word)))


def shuffles(m: int, n: int) -> list[Permutation]:
    """(m, n)-shuffles: increasing on 1..m and on m+1..m+n."""
    if m < 0 or n < 0:
        raise PreconditionError("shuffle sizes must be non-negative")
    out = []
    for first in itertools.combinations(range(1, m + n + 1), m):
        rest = [i for i in range(1, m + n + 1) if i not in first]
        out.append(tuple(first) + tuple(rest))
    return out


def kprime(n: int, p: int) -> list[Permutation]:
    """Coset representatives for p blocks of size n.

    sigma preserves the relative order inside each block and
    sigma(n) < sigma(2n) < ... < sigma(pn).
    """
    if n < 1 or p < 1:
        raise PreconditionError("block size and block count must be positive")
    total = n * p
    out: list[Permutation] = []

    def rec(remaining: list[int], blocks: list[tuple[int, ...]]):
        if not remaining:
            sigma = [0] * total
            for b, block in enumerate(reversed(blocks)):
                for r, v in enumerate(block):
                    sigma[b * n + r] = v
            out.append(tuple(sigma))
            return
        top = remaining[-1]
        rest = remaining[:-1]
        for others in itertools.combinations(rest, n - 1):
            block = tuple(sorted(others + (top,)))
            left = [x for x in rest if x not in others]
            rec(left, blocks + [block])

    rec(list(range(1, total + 1)), [])
    out.sort()
    return out


def block_swap(n: int) -> Permutation:
    """c: i -> i + n for i <= n, i -> i - n otherwise."""
    return tuple(i + n if i <= n else i - n for i in range(1, 2 * n + 1))


def sh_partition_check(n: int) -> bool:
    """Sh(n, n) is the disjoint union of K' and K' c (two blocks of size n)."""
    if n < 1:
        raise PreconditionError("n must be positive")
    sh = set(shuffles(n, n))
    kp = set(kprime(n, 2))
    c = block_swap(n)
    kpc = {compose(s, c) for s in kp}
    return not (kp & kpc) and (kp | kpc) == sh and len(kp) + len(kpc) == len(sh)


# ---------------------------------------------------------------- tensors

def word_degree(w: Word) -> int:
    return sum(l[1] for l in w)


class TensorElement:
    """Finite linear combination of words with coefficients in a field."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict | None = None):
        self.field = field
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = field(c)
                if c != 0:
                    self.terms[tuple(w)] = c

    @classmethod
    def word(cls, field: Field, w: Iterable[Letter], coef=1) -> "TensorElement":
        return cls(field, {tuple(w): coef})

    @classmethod
    def one(cls, field: Field) -> "TensorElement":
        return cls(field, {(): 1})

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        f = self.field
        for w, c in other.terms.items():
            out[w] = f.add(out.get(w, 0), c)
        return TensorElement(f, out)

    def __neg__(self) -> "TensorElement":
        return self.scale(-1)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = self.field(c)
        return TensorElement(self.field, {w: self.field.mul(v, c) for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {word_degree(w) for w in self.terms}

    def lengths(self) -> set[int]:
        return {len(w) for w in self.terms}

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise PreconditionError("element is not homogeneous")
        return ds.pop()

    def length_components(self) -> dict[int, "TensorElement"]:
        comps: dict[int, dict] = {}
        for w, c in self.terms.items():
            comps.setdefault(len(w), {})[w] = c
        return {n: TensorElement(self.field, t) for n, t in comps.items()}

    def __repr__(self) -> str:
        parts = []
        for w, c in sorted(self.terms.items()):
            ws = "(x)".join(l[0] for l in w) or "1"
            parts.append(f"{self.field.to_str(c)}*{ws}")
        return "TensorElement(" + " + ".join(parts) + ")"


def apply_permutation(sigma: Permutation, u: TensorElement) -> TensorElement:
    out: dict = {}
    f = u.field
    for w, c in u.terms.items():
        if len(w) != len(sigma):
            raise PreconditionError("permutation length does not match word length")
        s, w2 = act(sigma, w)
        out[w2] = f.add(out.get(w2, 0), f.mul(c, s))
    return TensorElement(f, out)


def concat(u: TensorElement, v: TensorElement) -> TensorElement:
    """Plain tensor (concatenation) product."""
    f = u.field
    out: dict = {}
    for w1, c1 in u.terms.items():
        for w2, c2 in v.terms.items():
            w = w1 + w2
            out[w] = f.add(out.get(w, 0), f.mul(c1, c2))
    return TensorElement(f, out)


def star(u: TensorElement, v: TensorElement) -> TensorElement:
    """Shuffle product: sum over (m, n)-shuffles of sigma(f (x) g)."""
    f = u.field
    out: dict = {}
    for w1, c1 in u.terms.items():
        for w2, c2 in v.terms.items():
            c = f.mul(c1, c2)
            w = w1 + w2
            if len(w) > MAX_LENGTH:
                raise PreconditionError("tensor length cap exceeded")
            for sigma in shuffles(len(w1), len(w2)):
                s, w3 = act(sigma, w)
                out[w3] = f.add(out.get(w3, 0), f.mul(c, s))
    return TensorElement(f, out)


def tensor_power(u: TensorElement, n: int) -> TensorElement:
    out = TensorElement.one(u.field)
    for _ in range(n):
        out = concat(out, u)
    return out


def _gamma_homogeneous(z: TensorElement, n: int) -> TensorElement:
    p = z.lengths().pop()
    zn = tensor_power(z, n)
    out = TensorElement(z.field)
    for sigma in kprime(p, n):
        out = out + apply_permutation(sigma, zn)
    return out


def gamma(u, n: int, field: Field | None = None) -> TensorElement:
    """Divided power as the (K')-coset sum of sigma(z^{(x) n}).

    ``u`` may be a word (with ``field``) or a TensorElement whose words all
    have even degree.  Components of different lengths are combined with
    gamma_n(x + y) = sum gamma_i(x) * gamma_{n-i}(y).
    """
    if not isinstance(u, TensorElement):
        if field is None:
            raise PreconditionError("a field is needed to build a tensor from a word")
        u = TensorElement.word(field, u)
    if n < 0:
        raise PreconditionError("negative divided power")
    if any(word_degree(w) % 2 for w in u.terms):
        raise PreconditionError("divided power undefined on odd degree")
    if n == 0:
        return TensorElement.one(u.field)
    if u.is_zero():
        return TensorElement(u.field)
    if () in u.terms:
        raise PreconditionError("divided power needs an element without constant term")
    comps = u.length_components()
    for ln in comps:
        if ln * n > MAX_LENGTH:
            raise PreconditionError("tensor length cap exceeded")
    result = None
    for ln in sorted(comps):
        z = comps[ln]
        powers = [TensorElement.one(u.field)] + [_gamma_homogeneous(z, k) for k in range(1, n + 1)]
        if result is None:
            result = powers
        else:
            result = [
                _sum((star(result[i], powers[k - i]) for i in range(k + 1)), u.field)
                for k in range(n + 1)
            ]
    return result[n]


def _sum(items: Iterable[TensorElement], field: Field) -> TensorElement:
    out = TensorElement(field)
    for x in items:
        out = out + x
    return out


def tensor_differential(u: TensorElement, d: Callable[[Letter], TensorElement] | dict) -> TensorElement:
    """Signed Leibniz sum: sum_i (-1)^{|x_1|+...+|x_{i-1}|} x_1 .. d(x_i) .. x_n."""
    get = d.get if isinstance(d, dict) else d
    f = u.field
    out: dict = {}
    for w, c in u.terms.items():
        sgn_deg = 0
        for i, letter in enumerate(w):
            dx = get(letter)
            if dx is not None and not dx.is_zero():
                pre, post = w[:i], w[i + 1:]
                cc = f.mul(c, -1 if sgn_deg % 2 else 1)
                for mid, mc in dx.terms.items():
                    ww = pre + mid + post
                    out[ww] = f.add(out.get(ww, 0), f.mul(cc, mc))
            sgn_deg += letter[1]
    return TensorElement(f, out)


def symmetrize(u: TensorElement) -> TensorElement:
    """sum over the full symmetric group of sigma(u), per length."""
    out = TensorElement(u.field)
    for ln, comp in u.length_components().items():
        for sigma in itertools.permutations(range(1, ln + 1)):
            out = out + apply_permutation(tuple(sigma), comp)
    return out


def is_symmetric(u: TensorElement) -> bool:
    """True iff sigma(u) = u for every permutation (checked on generators)."""
    for ln, comp in u.length_components().items():
        for i in range(1, ln):
            t = list(range(1, ln + 1))
            t[i - 1], t[i] = t[i], t[i - 1]
            if apply_permutation(tuple(t), comp) != comp:
                return False
    return True


def kprime_count(n: int, p: int) -> int:
    return factorial(n * p) // (factorial(p) * factorial(n) ** p)

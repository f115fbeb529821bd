"""Exact coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

from fractions import Fraction

from .errors import SpecError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """QQ when ``p == 0``, otherwise the prime field F_p.

    Elements of QQ are Python ints or Fractions (always in lowest terms);
    elements of F_p are ints in ``range(p)``.
    """

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p != 0 and not _is_prime(p):
            raise SpecError(f"field characteristic {p} is not prime")
        self.p = p

    # identity
    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"

    @property
    def char(self) -> int:
        return self.p

    def tag(self) -> str:
        return "QQ" if self.p == 0 else f"Fp {self.p}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        parts = text.split()
        if parts == ["QQ"] or parts == ["Q"]:
            return cls(0)
        if len(parts) == 2 and parts[0] in ("Fp", "GF"):
            try:
                p = int(parts[1])
            except ValueError:
                raise SpecError(f"bad field descriptor {text!r}") from None
            return cls(p)
        raise SpecError(f"bad field descriptor {text!r}")

    # element construction
    def __call__(self, x) -> int | Fraction:
        p = self.p
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return x % p if p else x
        if isinstance(x, Fraction):
            if p:
                num, den = x.numerator % p, x.denominator % p
                if den == 0:
                    raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {p}")
                return num * pow(den, -1, p) % p
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, str):
            return self(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        r = Fraction(1) / a
        return r.numerator if r.denominator == 1 else r

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if self.p:
            return pow(a, n, self.p)
        return a**n

    def elements(self):
        """All elements of a prime field (not available for QQ)."""
        if not self.p:
            raise ValueError("QQ is infinite")
        return range(self.p)

    def to_str(self, a) -> str:
        if isinstance(a, Fraction):
            if a.denominator == 1:
                return str(a.numerator)
            return f"{a.numerator}/{a.denominator}"
        return str(a)

    def to_json(self, a):
        """JSON-friendly form: int, or "a/b" string for proper fractions."""
        if isinstance(a, Fraction):
            if a.denominator == 1:
                return a.numerator
            return f"{a.numerator}/{a.denominator}"
        return int(a)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)

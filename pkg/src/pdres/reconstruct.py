"""Restricted graded Lie algebras in degrees 1 and 2, and the complete
intersections realizing them.

Given constants b^p_ij = beta_p-coordinate of [alpha_i, alpha_j] and
q^p_i = beta_p-coordinate of q(alpha_i), the ring is
k[x_1..x_n]/(c_1..c_k) with

    c_p = sum_{i<j} b^p_ij x_i x_j + sum_i q^p_i x_i^2 + x_p^3.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError, SpecError
from .field import Field
from .ring import PolyRing, buchberger, regularity_witness, satisfies_buchberger_criterion
from .tate import RingSpec
from .yoneda import HomotopyLieAlgebra, homotopy_lie


@dataclass
class RestrictedGradedLie:
    """pi^1 = span(alpha_1..alpha_n) odd, pi^2 = span(beta_1..beta_k) even.

    ``brackets[p]`` maps (i, j) with i <= j (0-based) to b^p_ij and ``q[p]``
    maps i to q^p_i; missing entries are zero.
    """

    field: Field
    n: int
    k: int
    brackets: list = dc_field(default_factory=list)
    q: list = dc_field(default_factory=list)

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise SpecError("dimensions must be non-negative")
        f = self.field
        bs = [dict() for _ in range(self.k)]
        qs = [dict() for _ in range(self.k)]
        for p, table in enumerate(self.brackets or []):
            if p >= self.k:
                raise SpecError(f"bracket table for beta_{p + 1} but k = {self.k}")
            for (i, j), v in table.items():
                self._check_index(i)
                self._check_index(j)
                key = (min(i, j), max(i, j))
                v = f(v)
                if key in bs[p] and bs[p][key] != v:
                    raise SpecError(f"conflicting values for bracket {p + 1} {i + 1} {j + 1}")
                if v != 0:
                    bs[p][key] = v
        for p, table in enumerate(self.q or []):
            if p >= self.k:
                raise SpecError(f"q table for beta_{p + 1} but k = {self.k}")
            for i, v in table.items():
                self._check_index(i)
                v = f(v)
                if v != 0:
                    qs[p][i] = v
        self.brackets = bs
        self.q = qs

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise SpecError(f"alpha index {i + 1} out of range 1..{self.n}")

    @classmethod
    def from_constants(cls, field: Field, n: int, k: int, offdiag: dict, q: dict) -> "RestrictedGradedLie":
        """Build from b^p_ij (i < j) and q^p_i, setting b^p_ii = 2 q^p_i.

        ``offdiag`` maps (p, i, j) to a value, ``q`` maps (p, i) to a value.
        """
        bs = [dict() for _ in range(k)]
        qs = [dict() for _ in range(k)]
        for (p, i, j), v in offdiag.items():
            if i == j:
                raise SpecError("diagonal brackets are determined by q")
            bs[p][(i, j)] = v
        for (p, i), v in q.items():
            qs[p][i] = v
            bs[p][(i, i)] = field.mul(2, v)
        return cls(field, n, k, bs, qs)

    @classmethod
    def from_homotopy_lie(cls, L: HomotopyLieAlgebra) -> "RestrictedGradedLie":
        return cls(L.field, L.n, L.k, [dict(b) for b in L.brackets], [dict(q) for q in L.q])

    def bracket(self, p: int, i: int, j: int):
        return self.brackets[p].get((min(i, j), max(i, j)), 0)

    def q_value(self, p: int, i: int):
        return self.q[p].get(i, 0)

    def quadratic_form(self, p: int, coeffs: Sequence) -> object:
        """beta_p-coordinate of q(sum c_i alpha_i)."""
        f = self.field
        total = 0
        for i in range(self.n):
            total = f.add(total, f.mul(self.q_value(p, i), f.mul(coeffs[i], coeffs[i])))
            for j in range(i + 1, self.n):
                total = f.add(total, f.mul(self.bracket(p, i, j), f.mul(coeffs[i], coeffs[j])))
        return total

    def bracket_of(self, p: int, a: Sequence, b: Sequence) -> object:
        """beta_p-coordinate of [sum a_i alpha_i, sum b_j alpha_j]."""
        f = self.field
        total = 0
        for i in range(self.n):
            for j in range(self.n):
                total = f.add(total, f.mul(self.bracket(p, i, j), f.mul(a[i], b[j])))
        return total

    def to_text(self) -> str:
        f = self.field
        lines = [f"field = {f.tag()}", f"n = {self.n}", f"k = {self.k}"]
        for p in range(self.k):
            for (i, j), v in sorted(self.brackets[p].items()):
                lines.append(f"bracket {p + 1} {i + 1} {j + 1} = {f.to_str(v)}")
            for i, v in sorted(self.q[p].items()):
                lines.append(f"q {p + 1} {i + 1} = {f.to_str(v)}")
        return "\n".join(lines) + "\n"

    def same_constants(self, other) -> bool:
        return (self.n, self.k, self.brackets, self.q) == (other.n, other.k, other.brackets, other.q)


# ---------------------------------------------------------------- validation

def _sample_vectors(L: RestrictedGradedLie) -> list[list]:
    """Unit vectors, pairwise sums and a few fixed mixed vectors."""
    n = L.n
    f = L.field
    out = []
    for i in range(n):
        out.append([1 if t == i else 0 for t in range(n)])
    for i in range(n):
        for j in range(i + 1, n):
            out.append([1 if t in (i, j) else 0 for t in range(n)])
    out.append([f(t + 1) for t in range(n)])
    out.append([f(2 * t - 1) for t in range(n)])
    return out


def validate_lie(L: RestrictedGradedLie) -> dict:
    """Check each axiom instantiable in degrees 1 and 2; report-style."""
    f = L.field
    axioms: dict[str, dict] = {}

    def record(name: str, witness=None):
        axioms[name] = {"status": "pass" if witness is None else "fail"}
        if witness is not None:
            axioms[name]["witness"] = witness

    # (1) antisymmetry: [a_i, a_j] = [a_j, a_i] for odd a's.  The table stores
    # one value per unordered pair, so this holds by construction; it is
    # re-checked on the bilinear extension.
    vecs = _sample_vectors(L)
    wit = None
    for p in range(L.k):
        for a in vecs:
            for b in vecs:
                if L.bracket_of(p, a, b) != L.bracket_of(p, b, a):
                    wit = {"p": p + 1, "a": [f.to_json(x) for x in a], "b": [f.to_json(x) for x in b]}
                    break
            if wit:
                break
        if wit:
            break
    record("(1) antisymmetry", wit)
    # (1 1/2) [b, b] = 0 for even b: brackets out of degree 2 land in degree 4 = 0
    record("(1 1/2) even self-bracket")
    # (2) Jacobi and (2 1/3) [a,[a,a]] = 0: every double bracket lands in degree >= 3
    record("(2) Jacobi")
    record("(2 1/3) odd triple bracket")
    # (3) q(c a) = c^2 q(a)
    wit = None
    scalars = [f(2), f(3), f(-1)]
    for p in range(L.k):
        for a in vecs:
            for c in scalars:
                ca = [f.mul(c, x) for x in a]
                if L.quadratic_form(p, ca) != f.mul(f.mul(c, c), L.quadratic_form(p, a)):
                    wit = {"p": p + 1, "a": [f.to_json(x) for x in a], "c": f.to_json(c)}
                    break
            if wit:
                break
        if wit:
            break
    record("(3) q quadratic", wit)
    # (4) [a, b] = q(a + b) - q(a) - q(b), in particular [a_i, a_i] = 2 q(a_i)
    wit = None
    for p in range(L.k):
        for i in range(L.n):
            if L.bracket(p, i, i) != f.mul(2, L.q_value(p, i)):
                wit = {"p": p + 1, "i": i + 1, "bracket": f.to_json(L.bracket(p, i, i)),
                       "2q": f.to_json(f.mul(2, L.q_value(p, i)))}
                break
        if wit:
            break
        for a in vecs:
            for b in vecs:
                s = [f.add(x, y) for x, y in zip(a, b)]
                rhs = f.sub(f.sub(L.quadratic_form(p, s), L.quadratic_form(p, a)), L.quadratic_form(p, b))
                if L.bracket_of(p, a, b) != rhs:
                    wit = {"p": p + 1, "a": [f.to_json(x) for x in a], "b": [f.to_json(x) for x in b]}
                    break
            if wit:
                break
        if wit:
            break
    record("(4) polarization", wit)
    # (5) [a,[a,b]] = [q(a), b]: both sides live in degree >= 4
    record("(5) q and double bracket")
    valid = all(v["status"] == "pass" for v in axioms.values())
    return {"valid": valid, "axioms": axioms, "characteristic": f.char}


def require_valid(L: RestrictedGradedLie) -> None:
    rep = validate_lie(L)
    if not rep["valid"]:
        bad = [(k, v.get("witness")) for k, v in rep["axioms"].items() if v["status"] == "fail"]
        raise PreconditionError(f"invalid restricted Lie data: {bad}")


# ---------------------------------------------------------------- reconstruction

@dataclass
class ReconstructionResult:
    lie: RestrictedGradedLie
    spec: RingSpec
    groebner_certificate: dict
    regularity_certificate: dict
    roundtrip: HomotopyLieAlgebra | None = None
    roundtrip_ok: bool | None = None
    mismatch: dict | None = None

    def to_json(self) -> dict:
        out = {
            "ring": {
                "field": self.spec.field.tag(),
                "vars": list(self.spec.names),
                "relations": [str(r) for r in self.spec.relations],
            },
            "groebner_certificate": self.groebner_certificate,
            "regularity_certificate": self.regularity_certificate,
            "roundtrip": self.roundtrip_ok,
        }
        if self.mismatch is not None:
            out["mismatch"] = self.mismatch
        return out


def default_names(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)]


def relations_for(L: RestrictedGradedLie, ring: PolyRing) -> list:
    rels = []
    for p in range(L.k):
        c = ring.zero()
        for (i, j), v in L.brackets[p].items():
            if i < j:
                e = [0] * L.n
                e[i] += 1
                e[j] += 1
                c = c + ring.monomial(e, v)
        for i, v in L.q[p].items():
            e = [0] * L.n
            e[i] = 2
            c = c + ring.monomial(e, v)
        e = [0] * L.n
        e[p] = 3
        rels.append(c + ring.monomial(e, 1))
    return rels


def reconstruct(L: RestrictedGradedLie, names: Sequence[str] | None = None, verify: bool = True) -> ReconstructionResult:
    """Emit the ring and certify its relations.

    Both certificates are computed: the Buchberger S-pair check and a
    colon-ideal regularity test without the coprime-leading-term shortcut.
    """
    if L.k > L.n:
        raise PreconditionError(f"reconstruction needs dim g1 >= dim g2, got n = {L.n}, k = {L.k}")
    require_valid(L)
    names = list(names) if names is not None else default_names(L.n)
    if len(names) != L.n:
        raise SpecError("wrong number of variable names")
    ring = PolyRing(L.field, names)
    rels = relations_for(L, ring)
    spec = RingSpec(L.field, names, rels)
    gb_ok = satisfies_buchberger_criterion(rels)
    gb = buchberger(rels)
    same = sorted(gb.leading_monomials()) == sorted(r.lm() for r in rels)
    groebner = {"status": "pass" if gb_ok and same else "fail",
                "method": "S-polynomial reduction",
                "leading_monomials": [str(ring.monomial(m)) for m in sorted(r.lm() for r in rels)]}
    wit = regularity_witness(rels)
    regular = {"status": "pass" if wit is None else "fail", "method": "colon ideals"}
    if wit is not None:
        regular["witness"] = wit + 1
    result = ReconstructionResult(L, spec, groebner, regular)
    if verify:
        roundtrip_verify(L, result)
    return result


def roundtrip_verify(L: RestrictedGradedLie, result: ReconstructionResult | None = None) -> bool:
    """Run homotopy_lie on the emitted ring and compare constants exactly."""
    if result is None:
        result = reconstruct(L, verify=False)
    if result.groebner_certificate["status"] != "pass" or result.regularity_certificate["status"] != "pass":
        result.roundtrip_ok = False
        result.mismatch = {"reason": "certificates failed"}
        return False
    H = homotopy_lie(result.spec)
    result.roundtrip = H
    got = RestrictedGradedLie.from_homotopy_lie(H)
    ok = got.same_constants(L)
    result.roundtrip_ok = ok
    if not ok:
        result.mismatch = _first_difference(L, got)
    return ok


def _first_difference(a: RestrictedGradedLie, b: RestrictedGradedLie) -> dict:
    f = a.field
    for p in range(a.k):
        for i in range(a.n):
            for j in range(i, a.n):
                if a.bracket(p, i, j) != b.bracket(p, i, j):
                    return {"kind": "bracket", "p": p + 1, "i": i + 1, "j": j + 1,
                            "expected": f.to_json(a.bracket(p, i, j)), "got": f.to_json(b.bracket(p, i, j))}
            if a.q_value(p, i) != b.q_value(p, i):
                return {"kind": "q", "p": p + 1, "i": i + 1,
                        "expected": f.to_json(a.q_value(p, i)), "got": f.to_json(b.q_value(p, i))}
    return {"kind": "shape"}


def parse_lie(text: str) -> RestrictedGradedLie:
    """Lie file: `field = QQ`, `n = 3`, `k = 1`, `bracket p i j = c`, `q p i = c`."""
    field = None
    n = k = None
    entries_b: list = []
    entries_q: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecError("expected `key = value`", line=lineno, column=1)
        lhs, rhs = (s.strip() for s in line.split("=", 1))
        col = raw.index("=") + 2
        words = lhs.split()
        key = words[0] if words else ""
        try:
            if key == "field" and len(words) == 1:
                field = Field.parse(rhs)
            elif key == "n" and len(words) == 1:
                n = int(rhs)
            elif key == "k" and len(words) == 1:
                k = int(rhs)
            elif key == "bracket" and len(words) == 4:
                entries_b.append((lineno, [int(w) for w in words[1:]], rhs))
            elif key == "q" and len(words) == 3:
                entries_q.append((lineno, [int(w) for w in words[1:]], rhs))
            else:
                raise SpecError(f"unknown key `{lhs}`", line=lineno, column=1)
        except SpecError as e:
            if e.line is None:
                raise SpecError(str(e), line=lineno, column=col) from None
            raise
        except ValueError:
            raise SpecError(f"malformed entry `{line}`", line=lineno, column=1) from None
    field = field or Field(0)
    if n is None or k is None:
        raise SpecError("Lie file needs `n = ...` and `k = ...`")
    bs = [dict() for _ in range(k)]
    qs = [dict() for _ in range(k)]

    def coef(lineno, s):
        try:
            return field(_parse_scalar(s))
        except (ValueError, ZeroDivisionError):
            raise SpecError(f"bad coefficient `{s}`", line=lineno) from None

    for lineno, (p, i, j), v in entries_b:
        if not (1 <= p <= k and 1 <= i <= n and 1 <= j <= n):
            raise SpecError("bracket index out of range", line=lineno, column=1)
        key = (min(i, j) - 1, max(i, j) - 1)
        val = coef(lineno, v)
        if key in bs[p - 1] and bs[p - 1][key] != val:
            raise SpecError("conflicting bracket entries", line=lineno, column=1)
        bs[p - 1][key] = val
    for lineno, (p, i), v in entries_q:
        if not (1 <= p <= k and 1 <= i <= n):
            raise SpecError("q index out of range", line=lineno, column=1)
        qs[p - 1][i - 1] = coef(lineno, v)
    # an omitted diagonal bracket defaults to the value polarization forces
    for p in range(k):
        for i, v in qs[p].items():
            bs[p].setdefault((i, i), field.mul(2, v))
    return RestrictedGradedLie(field, n, k, bs, qs)


def _parse_scalar(s: str) -> Fraction:
    return Fraction(s.strip())

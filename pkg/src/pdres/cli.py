"""Command line front end.

    pdres resolve SPEC [--max-degree N] [--internal-cap J] [--json]
    pdres ext SPEC [--max-degree M] [--json]
    pdres reconstruct LIE [--json]
    pdres verify --suite {pd-axioms,shuffle,lifts,appendix-c} [--seed S] [--json]

Exit codes: 0 success, 2 spec error, 3 precondition failure, 4 resource cap.
Human-readable output is rendered from the same JSON report.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import PdresError, PreconditionError, ResourceCapError, SpecError
from .field import Field
from .tate import RingSpec, build, check_d_squared
from . import checks
from .reconstruct import parse_lie, reconstruct as reconstruct_lie, validate_lie
from . import yoneda as Y

SCHEMA = 1


# ---------------------------------------------------------------- spec files

@dataclass
class SpecFile:
    field: Field
    names: list
    relations: list = dc_field(default_factory=list)
    max_degree: int | None = None
    internal_cap: int | None = None

    def ring_spec(self) -> RingSpec:
        return RingSpec(self.field, self.names, self.relations)

    def to_text(self) -> str:
        spec = self.ring_spec()
        lines = [f"field = {self.field.tag()}", "vars = " + ", ".join(self.names)]
        lines += [f"rel = {r}" for r in spec.relations]
        if self.max_degree is not None:
            lines.append(f"max_degree = {self.max_degree}")
        if self.internal_cap is not None:
            lines.append(f"internal_cap = {self.internal_cap}")
        return "\n".join(lines) + "\n"


def parse_spec(text: str) -> SpecFile:
    """Key-value spec: `field`, `vars`, repeatable `rel`, optional
    `max_degree` and `internal_cap`.  Errors carry line and column."""
    field = Field(0)
    names = None
    rels: list[tuple[int, int, str]] = []
    max_degree = internal_cap = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            col = len(line) - len(line.lstrip()) + 1
            raise SpecError("expected `key = value`", line=lineno, column=col)
        key, value = line.split("=", 1)
        key = key.strip()
        vstart = line.index("=") + 1
        vstart += len(value) - len(value.lstrip())
        value = value.strip()
        col = vstart + 1
        if key == "field":
            try:
                field = Field.parse(value)
            except SpecError as e:
                raise SpecError(str(e), line=lineno, column=col) from None
        elif key == "vars":
            names = [s.strip() for s in value.split(",")]
            if not value or any(not s for s in names):
                raise SpecError("empty variable name", line=lineno, column=col)
        elif key == "rel":
            rels.append((lineno, col, value))
        elif key in ("max_degree", "internal_cap"):
            try:
                n = int(value)
            except ValueError:
                raise SpecError(f"{key} must be an integer", line=lineno, column=col) from None
            if key == "max_degree":
                max_degree = n
            else:
                internal_cap = n
        else:
            raise SpecError(f"unknown key `{key}`", line=lineno, column=len(line) - len(line.lstrip()) + 1)
    if names is None:
        raise SpecError("missing `vars = ...`")
    try:
        spec = RingSpec(field, names, [])
    except SpecError as e:
        raise SpecError(str(e)) from None
    polys = []
    for lineno, col, value in rels:
        try:
            polys.append(spec.ring.parse(value))
        except SpecError as e:
            c = col + (e.column - 1 if e.column is not None else 0)
            msg = str(e).split(": ", 1)[1] if e.column is not None else str(e)
            raise SpecError(msg, line=lineno, column=c) from None
    out = SpecFile(field, names, polys, max_degree, internal_cap)
    for (lineno, col, _), p in zip(rels, polys):
        try:
            RingSpec(field, names, [p])
        except SpecError as e:
            raise SpecError(str(e).replace("relation 1", "relation"), line=lineno, column=col) from None
    return out


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise SpecError(f"cannot read {path}: {e.strerror}") from None


# ---------------------------------------------------------------- commands

def _ring_json(spec: RingSpec) -> dict:
    return {"field": spec.field.tag(), "vars": list(spec.names), "relations": [str(r) for r in spec.relations]}


def cmd_resolve(path: str, max_degree: int | None = None, internal_cap: int | None = None) -> dict:
    sf = parse_spec(_read(path))
    spec = sf.ring_spec()
    N = max_degree if max_degree is not None else (sf.max_degree or 6)
    cap = internal_cap if internal_cap is not None else sf.internal_cap
    res = build(spec, N, internal_cap=cap)
    alg = res.alg
    gens = [{"name": g.name, "degree": g.hdeg, "weight": g.weight, "differential": str(alg.differential_of(g))}
            for g in alg.generators]
    betti_method = "certified-exact" if res.closed_form else f"certified-to-degree-{res.frontier}"
    payload = {
        "ring": _ring_json(spec),
        "truncation": N,
        "closed_form": res.closed_form,
        "complete_intersection": spec.is_complete_intersection(),
        "grading": list(res.weights) if res.weights is not None else None,
        "generators": gens,
        "generator_count": len(gens),
        "frontier": None if res.closed_form else res.frontier,
        "frontier_generators": [] if res.closed_form else [g["name"] for g in gens if g["degree"] == res.frontier],
        "betti": {"values": res.betti_table(N), "method": betti_method},
        "minimal": res.minimal,
        "d_squared_zero": check_d_squared(res, N),
        "certificates": res.certificates,
    }
    return {"resolution": payload}


def cmd_ext(path: str, max_degree: int | None = None) -> dict:
    sf = parse_spec(_read(path))
    spec = sf.ring_spec()
    M = max_degree if max_degree is not None else (sf.max_degree or 6)
    Y.require_ci(spec)
    H = Y.homotopy_lie(spec)
    pres = Y.ext_presentation(spec)
    res = build(spec, max(M, 2), verify=False)
    dims = [Y.ext_dimension(spec, m) for m in range(M + 1)]
    betti = res.betti_table(M)
    if dims != betti:
        raise PdresError(f"dimension formula {dims} disagrees with the resolution {betti}")
    prim = {}
    for m in range(1, min(M, 4) + 1):
        prim[m] = [res.alg.format_mono(w) for w in Y.primitive_basis(res, m)]
    payload = {
        "ring": _ring_json(spec),
        "presentation": pres.to_json(),
        "homotopy_lie": H.to_json(),
        "dimensions": {"values": dims, "method": "certified-exact"},
        "generator_count": pres.generator_count,
        "strictly_graded_commutative": pres.strictly_graded_commutative,
        "primitives": {"degrees": prim, "method": "certified-to-degree-%d" % min(M, 4)},
    }
    return {"ext": payload}


def cmd_reconstruct(path: str) -> dict:
    L = parse_lie(_read(path))
    report = validate_lie(L)
    if not report["valid"]:
        bad = {k: v for k, v in report["axioms"].items() if v["status"] == "fail"}
        raise PreconditionError(f"invalid restricted Lie data: {json.dumps(bad, sort_keys=True)}")
    result = reconstruct_lie(L)
    payload = {"validation": report, **result.to_json()}
    if result.roundtrip is not None:
        payload["roundtrip_constants"] = result.roundtrip.to_json()
    return {"reconstruction": payload}


def cmd_verify(suite: str, seed: int = 0) -> dict:
    results = checks.run_suite(suite, seed)
    ok = all(r["status"] == "pass" for r in results)
    return {"verification": {"suite": suite, "seed": seed, "status": "pass" if ok else "fail", "results": results}}


# ---------------------------------------------------------------- rendering

def render_text(report: dict) -> str:
    out = []
    if "resolution" in report:
        r = report["resolution"]
        out.append(f"ring: {r['ring']['field']}[{', '.join(r['ring']['vars'])}] / ({', '.join(r['ring']['relations'])})")
        out.append(f"closed form: {r['closed_form']}   minimal: {r['minimal']}   d^2 = 0: {r['d_squared_zero']}")
        out.append("generators:")
        for g in r["generators"]:
            out.append(f"  {g['name']:<8} deg {g['degree']}  d = {g['differential']}")
        out.append(f"betti ({r['betti']['method']}): " + " ".join(str(b) for b in r["betti"]["values"]))
        if r["frontier_generators"]:
            out.append("frontier generators: " + ", ".join(r["frontier_generators"]))
        for c in r["certificates"]:
            out.append(f"certificate {c['kind']}: {c['method']}")
    if "ext" in report:
        e = report["ext"]
        p = e["presentation"]
        out.append("generators: " + ", ".join(f"{g['symbol']} (deg {g['degree']})" for g in p["generators"]))
        out.append("relations:")
        for rel in p["relations"]:
            rhs = " + ".join(k if v == 1 else f"{v}*{k}" for k, v in sorted(rel["rhs"].items())) or "0"
            out.append(f"  {rel['lhs']} = {rhs}")
        out.append(f"generator count: {e['generator_count']}")
        out.append(f"strictly graded commutative: {e['strictly_graded_commutative']}")
        out.append(f"dimensions ({e['dimensions']['method']}): " + " ".join(str(d) for d in e["dimensions"]["values"]))
        for m, basis in sorted(e["primitives"]["degrees"].items()):
            out.append(f"primitives in degree {m}: " + (", ".join(f"({b})^v" for b in basis) or "none"))
    if "reconstruction" in report:
        r = report["reconstruction"]
        out.append(f"ring: {r['ring']['field']}[{', '.join(r['ring']['vars'])}] / ({', '.join(r['ring']['relations'])})")
        out.append(f"groebner certificate: {r['groebner_certificate']['status']}")
        out.append(f"regularity certificate: {r['regularity_certificate']['status']}")
        out.append(f"round trip: {r['roundtrip']}")
    if "verification" in report:
        v = report["verification"]
        out.append(f"suite {v['suite']} (seed {v['seed']}): {v['status']}")
        for r in v["results"]:
            line = f"  [{r['status']}] {r['property']} ({r['trials']} trials)"
            if "counterexample" in r:
                line += f": {r['counterexample']}"
            out.append(line)
    if "error" in report:
        out.append(f"error ({report['error']['kind']}): {report['error']['message']}")
    return "\n".join(out)


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdres", description="pd dg resolutions, Ext and homotopy Lie algebras")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("resolve", help="build a truncated minimal resolution of k")
    p.add_argument("spec")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--internal-cap", type=int)
    p.add_argument("--json", action="store_true")
    p = sub.add_parser("ext", help="presentation and dimensions of Ext_R(k, k)")
    p.add_argument("spec")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--json", action="store_true")
    p = sub.add_parser("reconstruct", help="ring realizing a restricted Lie algebra")
    p.add_argument("lie")
    p.add_argument("--json", action="store_true")
    p = sub.add_parser("verify", help="run a randomized property suite")
    p.add_argument("--suite", required=True, choices=checks.SUITES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    return parser


EXIT_CODES = ((SpecError, 2), (PreconditionError, 3), (ResourceCapError, 4))


def run(argv: Sequence[str] | None = None) -> tuple[int, dict]:
    args = build_parser().parse_args(argv)
    echo = {k: v for k, v in sorted(vars(args).items()) if k != "json"}
    report: dict = {"schema": SCHEMA, "command": echo}
    code = 0
    try:
        if args.command == "resolve":
            report.update(cmd_resolve(args.spec, args.max_degree, args.internal_cap))
        elif args.command == "ext":
            report.update(cmd_ext(args.spec, args.max_degree))
        elif args.command == "reconstruct":
            report.update(cmd_reconstruct(args.lie))
        else:
            report.update(cmd_verify(args.suite, args.seed))
            if report["verification"]["status"] != "pass":
                code = 1
    except PdresError as e:
        code = next((c for cls, c in EXIT_CODES if isinstance(e, cls)), 1)
        err = {"kind": type(e).__name__, "message": str(e)}
        if isinstance(e, SpecError):
            err.update(line=e.line, column=e.column)
        if isinstance(e, ResourceCapError):
            err["degree"] = e.degree
        report["error"] = err
    return code, report


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    code, report = run(argv)
    if "--json" in argv:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        stream = sys.stderr if "error" in report else sys.stdout
        stream.write(render_text(report) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``torusrat {decide,resolve,cohomology,census}``.

Exit codes: 0 success, 1 parse error, 2 validation error, 3 internal
consistency failure (route disagreement, census oracle mismatch).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from . import __version__
from .cohomology import ExactnessError, class_order, tate
from .formats import ParseError, ValidationError, load_torus
from .groups import (GroupOrderError, catalog, is_cyclic, order_cap, subgroup_representatives,
                     sylow)
from .intmat import prime_factors
from .lattices import GLattice, LatticeError
from .resolutions import ConsistencyError, coflasque_cover, flasque_resolution
from .tori import (Torus, Verdict, norm_one_torus, sylow_verdict, torus_bad_primes,
                   verdict_via_sylow)

EXIT_PARSE, EXIT_VALIDATION, EXIT_CONSISTENCY = 1, 2, 3


@dataclass
class Report:
    """Machine-readable record of one command; ``timing`` is the only nondeterministic field."""

    command: str
    input_digest: str
    result: dict
    verdict: Verdict | None = None
    routes: dict = field(default_factory=dict)
    timing: float = 0.0
    version: str = __version__

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.to_dict() if self.verdict else None
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        v = d.get("verdict")
        return cls(d["command"], d["input_digest"], d["result"],
                   Verdict.from_dict(v) if v else None, d.get("routes", {}),
                   d.get("timing", 0.0), d.get("version", __version__))

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def canonical(self) -> dict:
        d = self.to_dict()
        d.pop("timing")
        return d


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def _fmt_primes(ps) -> str:
    return "{" + ", ".join(map(str, sorted(ps))) + "}"


def _is_prime(p: int) -> bool:
    return p > 1 and prime_factors(p) == [p]


# ---------------------------------------------------------------------------
# commands


def cmd_decide(source: str, prime: int | None = None, route: str = "class-order") -> Report:
    t0 = time.perf_counter()
    T, text = load_torus(source)
    G = T.group
    primes = sorted(set(prime_factors(G.order)) | ({prime} if prime else set()))
    routes: dict = {}
    verdict = None
    if route in ("class-order", "both"):
        verdict = torus_bad_primes(T)
        routes["class-order"] = {str(p): p not in verdict.bad_primes for p in primes}
    if route in ("sylow", "both"):
        sv = sylow_verdict(T)
        routes["sylow"] = {str(p): verdict_via_sylow(T, p) for p in primes}
        if verdict is None:
            verdict = sv
        elif sv.bad_primes != verdict.bad_primes or routes["sylow"] != routes["class-order"]:
            raise ConsistencyError(
                f"class-order route gives {_fmt_primes(verdict.bad_primes)}, "
                f"sylow route gives {_fmt_primes(sv.bad_primes)}")
    result = {"label": T.label, "group_order": G.order, "dimension": T.dimension,
              "primes": primes}
    if prime:
        result["prime"] = prime
        result["p_retract_rational"] = prime not in verdict.bad_primes
    return Report("decide", digest(text), result, verdict, routes,
                  time.perf_counter() - t0)


def _permutation_blocks(M: GLattice) -> list[dict]:
    if M.permutation is None:
        return []
    return [{"subgroup_order": H.order, "subgroup": list(H.elements), "multiplicity": m}
            for H, m in M.permutation.blocks]


def _lattice_dict(M: GLattice) -> dict:
    return M.to_dict() if M.rank else {"rank": 0, "generator_actions": []}


def cmd_resolve(source: str, kind: str = "flasque") -> Report:
    t0 = time.perf_counter()
    T, text = load_torus(source)
    M = T.character_lattice
    if kind == "flasque":
        res = flasque_resolution(M)
        t, order = res.triple, res.class_order
        names = ("M", "P", "F")
    elif kind == "coflasque":
        t = coflasque_cover(M).triple
        order = class_order(t).order
        names = ("C", "P", "M")
    else:
        raise ParseError(f"unknown resolution kind {kind!r}")
    t.check()
    result = {"kind": kind,
              "terms": {n: _lattice_dict(L) for n, L in zip(names, (t.A, t.B, t.C))},
              "permutation_blocks": _permutation_blocks(t.B),
              "inject": t.inject.tolist(),
              "project": t.project.tolist(),
              "class_order": order}
    return Report("resolve", digest(text), result, None, {}, time.perf_counter() - t0)


def select_subgroup(G, selector: str):
    if selector == "full":
        return G.whole
    if selector == "trivial":
        return G.trivial_subgroup
    kind, _, arg = selector.partition(":")
    try:
        n = int(arg)
    except ValueError:
        raise ParseError(f"bad subgroup selector {selector!r}") from None
    if kind == "rep":
        reps = subgroup_representatives(G)
        if not 0 <= n < len(reps):
            raise ValidationError(f"subgroup representative {n} out of range 0..{len(reps) - 1}")
        return reps[n]
    if kind == "sylow":
        if not _is_prime(n):
            raise ValidationError(f"{n} is not prime")
        return sylow(G, n)
    raise ParseError(f"bad subgroup selector {selector!r}")


def cmd_cohomology(source: str, selector: str = "full", degree: int = 0) -> Report:
    t0 = time.perf_counter()
    if degree not in (-1, 0, 1):
        raise ValidationError("degree must be -1, 0 or 1")
    T, text = load_torus(source)
    H = select_subgroup(T.group, selector)
    A = tate(T.character_lattice, H, degree)
    result = {"subgroup": selector, "subgroup_order": H.order, "degree": degree,
              "invariant_factors": list(A.invariant_factors), "free_rank": A.free_rank,
              "group": str(A)}
    return Report("cohomology", digest(text), result, None, {}, time.perf_counter() - t0)


def cmd_census(max_order: int = 12, primes=(2, 3, 5, 7, 11), include_stretch: bool = False
               ) -> tuple[Report, bool]:
    t0 = time.perf_counter()
    cap = order_cap()
    if max_order > cap:
        raise ValidationError(f"max order {max_order} exceeds the order cap {cap}")
    rows = []
    ok = True
    for G in catalog(max_order, include_stretch):
        divisors = prime_factors(G.order)
        oracle = sorted(p for p in divisors if not is_cyclic(sylow(G, p)))
        bad = sorted(torus_bad_primes(norm_one_torus(G)).bad_primes)
        match = bad == oracle
        ok &= match
        rows.append({"group": G.name, "order": G.order,
                     "sylow_cyclic": {str(p): is_cyclic(sylow(G, p)) for p in primes
                                      if G.order % p == 0},
                     "bad_primes": bad, "oracle": oracle, "match": match})
    text = json.dumps({"max_order": max_order, "primes": list(primes),
                       "include_stretch": include_stretch}, sort_keys=True)
    report = Report("census", digest(text), {"rows": rows, "all_match": ok}, None, {},
                    time.perf_counter() - t0)
    return report, ok


# ---------------------------------------------------------------------------
# rendering


def render_decide(r: Report) -> str:
    res = r.result
    v = r.verdict
    lines = [f"torus {res['label'] or '?'}: |G| = {res['group_order']}, dimension {res['dimension']}",
             f"bad primes: {_fmt_primes(v.bad_primes)}"]
    for route, answers in r.routes.items():
        cells = "  ".join(f"p={p}: {'yes' if a else 'no'}" for p, a in answers.items())
        lines.append(f"{route:>11} p-retract rational  {cells}")
    if "prime" in res:
        p = res["prime"]
        lines.append(f"{p}-retract rational: {'yes' if res['p_retract_rational'] else 'no'}")
    lines.append(f"retract rational: {'yes' if v.retract_rational else 'no'}")
    return "\n".join(lines)


def render_resolve(r: Report) -> str:
    res = r.result
    names = list(res["terms"])
    ranks = [res["terms"][n]["rank"] for n in names]
    lines = [f"{res['kind']} resolution: 0 -> {names[0]} ({ranks[0]}) -> {names[1]} ({ranks[1]})"
             f" -> {names[2]} ({ranks[2]}) -> 0"]
    blocks = ", ".join(f"Z[G/H]^{b['multiplicity']} (|H| = {b['subgroup_order']})"
                       for b in res["permutation_blocks"]) or "0"
    lines.append(f"permutation blocks: {blocks}")
    lines.append(f"inject:  {res['inject']}")
    lines.append(f"project: {res['project']}")
    lines.append(f"class order: {res['class_order']}")
    return "\n".join(lines)


def render_cohomology(r: Report) -> str:
    res = r.result
    return (f"H^{res['degree']}(H, M) for {res['subgroup']} (|H| = {res['subgroup_order']}): "
            f"{res['group']}\ninvariant factors: {res['invariant_factors']}  "
            f"free rank: {res['free_rank']}")


def render_census(r: Report) -> str:
    head = f"{'group':<12}{'|G|':>5}  {'Sylow cyclic':<22}{'bad primes':<12}{'oracle':<12}match"
    lines = [head, "-" * len(head)]
    for row in r.result["rows"]:
        cyc = " ".join(f"{p}:{'y' if c else 'n'}" for p, c in row["sylow_cyclic"].items())
        lines.append(f"{row['group']:<12}{row['order']:>5}  {cyc:<22}"
                     f"{_fmt_primes(row['bad_primes']):<12}{_fmt_primes(row['oracle']):<12}"
                     f"{'ok' if row['match'] else 'MISMATCH'}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="torusrat",
        description="Retract rationality of algebraic tori from character lattices.",
        epilog="Inputs are JSON torus records, '-' for stdin, or built-in names "
               "norm_one:<group>, split:<group>, theorem13:{2,3}, circle. "
               "The group order cap is read from TORUSRAT_ORDER_CAP.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit the machine-readable report")

    p = sub.add_parser("decide", help="bad primes and per-prime verdicts of a torus")
    p.add_argument("input")
    p.add_argument("--prime", type=int)
    p.add_argument("--route", choices=["class-order", "sylow", "both"], default="class-order")
    add_json(p)

    p = sub.add_parser("resolve", help="flasque resolution or coflasque cover of the character lattice")
    p.add_argument("input")
    p.add_argument("--kind", choices=["flasque", "coflasque"], default="flasque")
    add_json(p)

    p = sub.add_parser("cohomology", help="Tate cohomology of the character lattice")
    p.add_argument("input")
    p.add_argument("--subgroup", default="full", help="full, trivial, rep:<i> or sylow:<p>")
    p.add_argument("--degree", type=int, choices=[-1, 0, 1], default=0)
    add_json(p)

    p = sub.add_parser("census", help="norm-one tori over the built-in catalog")
    p.add_argument("--max-order", type=int, default=12)
    p.add_argument("--primes", default="2,3,5,7,11")
    p.add_argument("--include-stretch", action="store_true")
    add_json(p)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "decide":
            if args.prime is not None and not _is_prime(args.prime):
                raise ValidationError(f"--prime {args.prime} is not prime")
            report = cmd_decide(args.input, args.prime, args.route)
            text = render_decide(report)
            status = 0
        elif args.command == "resolve":
            report = cmd_resolve(args.input, args.kind)
            text = render_resolve(report)
            status = 0
        elif args.command == "cohomology":
            report = cmd_cohomology(args.input, args.subgroup, args.degree)
            text = render_cohomology(report)
            status = 0
        else:
            try:
                primes = tuple(int(p) for p in args.primes.split(",") if p.strip())
            except ValueError:
                raise ParseError(f"bad prime list {args.primes!r}") from None
            report, ok = cmd_census(args.max_order, primes, args.include_stretch)
            text = render_census(report)
            status = 0 if ok else EXIT_CONSISTENCY
        print(report.to_json() if args.json else text, file=out)
        return status
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, LatticeError, GroupOrderError) as e:
        print(f"validation error: {e}", file=sys.stderr)
        rep = getattr(e, "report", None)
        if rep is not None:
            print(f"  violation: {rep.kind} at {rep.pair}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConsistencyError, ExactnessError) as e:
        print(f"consistency failure: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())

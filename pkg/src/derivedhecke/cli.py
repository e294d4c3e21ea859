"""Command line entry point.

Subcommands: rootdata, hecke, ext, dims, finite, audit. Every subcommand
builds an :class:`AuditReport`, prints its canonical JSON, and writes JSON,
Markdown and a timings sidecar under ``--out`` when an output directory is
given (or set through ``DERIVEDHECKE_OUT``).

Exit codes: 0 all checks passed, 1 some check failed, 2 usage or IO error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from importlib import resources
from math import comb, gcd
from pathlib import Path

import jsonschema

from . import finitegroup as fg
from . import galdim, heckecomb
from .linalg import parse_field
from .localalg import koszul
from .localalg.poly import PolyRing
from .reports import AuditReport, Report, emit_report
from .rootdata import (
    RootDatum,
    UnramifiedCharacter,
    build_preset,
    deg_coweight,
    discriminant,
    is_dominant,
    is_strongly_regular,
    pairing,
    weyl_group,
)

OUT_ENV = "DERIVEDHECKE_OUT"


class UsageError(Exception):
    pass


def load_schema(name):
    return json.loads(resources.files("derivedhecke").joinpath("schemas", f"{name}.json").read_text())


def validate(doc, schema_name):
    try:
        jsonschema.validate(doc, load_schema(schema_name))
    except jsonschema.ValidationError as exc:
        raise UsageError(f"invalid {schema_name} document: {exc.message}") from None


def load_json_arg(text):
    """Inline JSON, or a path to a JSON file."""
    path = Path(text)
    try:
        if path.exists():
            return json.loads(path.read_text())
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {text!r}: {exc}") from None


def parse_vector(text):
    text = text.strip()
    try:
        if text.startswith("["):
            vals = json.loads(text)
        else:
            vals = [int(x) for x in text.replace("(", "").replace(")", "").split(",") if x.strip()]
        return tuple(int(x) for x in vals)
    except (ValueError, json.JSONDecodeError):
        raise UsageError(f"cannot parse integer vector {text!r}") from None


def get_datum(args) -> RootDatum:
    if getattr(args, "datum", None):
        doc = load_json_arg(args.datum)
        validate(doc, "rootdatum")
        try:
            return RootDatum.from_json(doc)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        return build_preset(args.preset)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _timed(audit, name, inputs, fn):
    """Run ``fn`` and record it; exceptions from the check itself become failures."""
    t = time.perf_counter()
    try:
        out = fn()
    except (ValueError, AssertionError, ZeroDivisionError) as exc:
        return audit.add(name, inputs, False, time.perf_counter() - t, witness=f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - t
    if isinstance(out, Report) or out is None or isinstance(out, bool):
        return audit.add(name, inputs, out, elapsed)
    ok, details = out
    return audit.add(name, inputs, ok, elapsed, details=details)


# ------------------------------------------------------------------ rootdata

def rootdata_checks(d: RootDatum, audit: AuditReport, rng: random.Random, samples: int = 100):
    base = {"datum": d.to_json()}
    W = weyl_group(d)
    audit.add("weyl_group", base, True, details={"order": len(W), "positive_roots": d.positive_roots})
    _timed(audit, "pairing_is_two", base, lambda: all(pairing(c, a) == 2 for a, c in zip(d.roots, d.coroots)))

    def equivariance():
        for _ in range(samples):
            lam = tuple(rng.randint(-5, 5) for _ in range(d.rank))
            mu = tuple(rng.randint(-5, 5) for _ in range(d.rank))
            for w in W:
                if pairing(w.act_coweight(lam), w.act_weight(mu)) != pairing(lam, mu):
                    return Report("weyl_equivariance", False, {}, {"lambda": lam, "mu": mu, "word": w.word})
        return Report("weyl_equivariance", True, {"samples": samples, "weyl_order": len(W)})

    _timed(audit, "weyl_equivariance", {**base, "samples": samples}, equivariance)
    f = discriminant(d)
    _timed(audit, "discriminant_invariance", base,
           lambda: (all(f.act(w) == f for w in W), {"discriminant": [[list(k), v] for k, v in f.sorted_terms()]}))

    dominant = [v for v in _box(d.rank, 3) if is_dominant(d, v)]

    def additivity():
        for _ in range(50):
            a, b = rng.choice(dominant), rng.choice(dominant)
            s = tuple(x + y for x, y in zip(a, b))
            if deg_coweight(d, s) != deg_coweight(d, a) + deg_coweight(d, b):
                return Report("deg_additivity", False, {}, {"lambda": a, "lambda_prime": b})
        return Report("deg_additivity", True, {"pairs": 50})

    _timed(audit, "deg_additivity", base, additivity)

    def regularity():
        values = [-2, -1, 2, 3]
        disagreements = []
        count = 0
        for vals in _product(values, d.rank):
            chi = UnramifiedCharacter(vals)
            rep = is_strongly_regular(chi, d)
            count += 1
            if not rep.agree:
                disagreements.append(list(vals))
        return Report("strong_regularity_agreement", not disagreements,
                      {"characters": count, "values": values}, disagreements or None)

    _timed(audit, "strong_regularity_agreement", base, regularity)


def _product(values, k):
    from itertools import product

    return list(product(values, repeat=k))


def _box(n, bound):
    return _product(range(-bound, bound + 1), n)


def cmd_rootdata(args, audit):
    d = get_datum(args)
    rng = random.Random(args.seed)
    rootdata_checks(d, audit, rng)
    if args.chi:
        chi = UnramifiedCharacter(tuple(load_json_arg(args.chi)))
        rep = is_strongly_regular(chi, d)
        audit.add("strong_regularity", {"chi": [str(x) for x in chi.values]}, rep.to_report())


# ------------------------------------------------------------------ hecke

def _finite_oracle(d: RootDatum, p: int, kind: str = "central"):
    if not d.name.startswith("GL") or d.rank > 3:
        return None
    spec = fg.CongSubgroup(d.rank, p, 1, 1, kind=kind)
    return lambda lam: fg.double_coset_count(spec, lam)


def cmd_hecke(args, audit):
    d = get_datum(args)
    lam = parse_vector(args.lam)
    if len(lam) != d.rank:
        raise UsageError(f"lambda has length {len(lam)}, datum has rank {d.rank}")
    if not is_dominant(d, lam):
        raise UsageError(f"{lam} is not dominant")
    inputs = {"datum": d.name, "lambda": list(lam), "prime": args.prime}
    oracle = _finite_oracle(d, args.prime) if args.oracle else None
    t = time.perf_counter()
    rep = heckecomb.coset_count_report(d, lam, args.prime, oracle)
    audit.add("coset_count", inputs, rep.match, time.perf_counter() - t, details=rep.to_dict())
    if args.emit_reps:
        reps = heckecomb.coset_representatives(d, lam, args.prime)
        audit.add("coset_representatives", inputs, len(reps) == rep.predicted, details=reps.to_dict())


# ------------------------------------------------------------------ ext

def parse_gens(text, ring):
    doc = load_json_arg(text)
    validate(doc, "gens")
    try:
        return [ring.parse(g) for g in doc]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_ext(args, audit):
    try:
        field = parse_field(args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ring = PolyRing(args.vars, field)
    gens = parse_gens(args.gens, ring)
    try:
        seq = koszul.LocalSequence(ring, gens)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    inputs = {"vars": args.vars, "field": field.name, "gens": [g.to_struct() for g in seq.gens]}
    t = time.perf_counter()
    rep = koszul.generation_verdict(seq)
    audit.add("generation_verdict", inputs, rep.generated_over_bottom, time.perf_counter() - t,
              details=rep.to_dict(),
              witness=None if rep.generated_over_bottom else {"failing_degree": rep.failing_degree})
    if seq.n <= seq.r:
        audit.add("regular_system_agreement", inputs,
                  koszul.is_part_of_regular_system(seq) == rep.generated_over_bottom)
    if args.l0 is not None:
        if args.l0 != seq.n:
            raise UsageError(f"--l0 {args.l0} must equal the number of generators {seq.n}")
        table = koszul.cohomology_degree_map(args.l0, args.q0 or 0, rep.dims)
        audit.add("cohomology_degree_map", {**inputs, "l0": args.l0, "q0": args.q0 or 0},
                  table.pattern_ok, details=table.to_dict())


# ------------------------------------------------------------------ dims

def cmd_dims(args, audit):
    doc = load_json_arg(args.ledger)
    validate(doc, "ledger")
    try:
        ledger = galdim.ledger_from_json(doc)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    audit.header = galdim.HEADER
    galdim.audit_ledger(ledger, audit)


# ------------------------------------------------------------------ finite

def cmd_finite(args, audit):
    lam = parse_vector(args.lam) if args.lam else (0,) * args.n
    if len(lam) != args.n:
        raise UsageError("lambda length must equal --n")
    try:
        spec = fg.CongSubgroup(args.n, args.p, args.b, args.c, args.N, args.kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    inputs = {"n": args.n, "p": args.p, "b": args.b, "c": args.c, "N": spec.N, "kind": args.kind,
              "lambda": list(lam), "check": args.check}
    d = build_preset("GL", args.n)
    check = args.check
    if check == "cosets":
        def run():
            count = fg.double_coset_count(spec, lam)
            predicted = heckecomb.coset_count(d, lam, args.p)
            return count == predicted, {"oracle_count": count, "predicted": predicted}
        _timed(audit, "double_coset_count", inputs, run)
    elif check == "reps":
        _timed(audit, "verify_rep_formula", inputs, lambda: fg.verify_rep_formula(spec, lam))
    elif check == "upfact":
        _timed(audit, "verify_up_factorization", inputs,
               lambda: fg.verify_up_factorization(args.n, args.b, args.c, lam, args.p, args.kind))
    elif check == "diamond":
        q = fg.DiamondQuotient(args.n, args.p, args.c)
        for h in fg.hom_group(q, args.m):
            _timed(audit, "diamond_conjugation", {**inputs, "hom": list(h.values), "m": args.m},
                   lambda h=h: fg.diamond_conjugation_check(spec, lam, fg.InflatedCharacter(h)))
    elif check == "homs":
        q = fg.DiamondQuotient(args.n, args.p, args.c)
        homs = fg.hom_group(q, args.m)
        expected = 1
        for _, _, o in q.cyclic_factors():
            expected *= gcd(o, args.p**args.m)
        audit.add("hom_group", {**inputs, "m": args.m}, len(homs) == expected,
                  details={"count": len(homs), "expected": expected,
                           "factors": [[i, g, o] for i, g, o in q.cyclic_factors()]})


# ------------------------------------------------------------------ audit

def _random_poly(ring, rng, max_terms=2, max_deg=2):
    r = ring.num_vars
    mons = [e for e in _product(range(max_deg + 1), r) if 1 <= sum(e) <= max_deg]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.choice(mons)] = rng.randint(-3, 3)
    return ring.parse([[c, list(e)] for e, c in sorted(terms.items())])


def localalg_checks(audit, rng, field, samples=40):
    disagreements = []
    for _ in range(samples):
        r = rng.randint(1, 3)
        n = rng.randint(1, r)
        ring = PolyRing(r, field)
        seq = koszul.LocalSequence(ring, [_random_poly(ring, rng) for _ in range(n)])
        rep = koszul.generation_verdict(seq)
        if rep.generated_over_bottom != koszul.is_part_of_regular_system(seq):
            disagreements.append([g.to_struct() for g in seq.gens])
        if rep.dims != [comb(n, i) for i in range(n + 1)]:
            disagreements.append({"dims": rep.dims})
        eta = [rng.randint(-2, 2) for _ in range(r)]
        k = rng.randint(0, n - 1)
        cls = {S: rng.randint(-2, 2) for S in koszul.subsets(n, k)}
        koszul.yoneda_action(seq, eta, cls, rng=rng)
    audit.add("generation_equivalence", {"field": field.name, "samples": samples, "seed_stream": "audit"},
              not disagreements, witness=disagreements or None)


def cmd_audit(args, audit):
    d = get_datum(args)
    rng = random.Random(args.seed)
    p = args.p
    l0 = args.l0
    if l0 < 0 or l0 > d.torus_rank:
        raise UsageError(f"--l0 must lie in [0, {d.torus_rank}]")
    rootdata_checks(d, audit, rng)
    # heckecomb
    dominant = sorted({v for v in _box(d.rank, 3) if is_dominant(d, v) and deg_coweight(d, v) <= args.max_deg})
    for lam in dominant:
        reps = heckecomb.coset_representatives(d, lam, p)
        audit.add("coset_representatives", {"datum": d.name, "lambda": list(lam), "prime": p},
                  len(reps) == heckecomb.coset_count(d, lam, p), details={"count": len(reps)})
    for _ in range(10):
        a, b = rng.choice(dominant), rng.choice(dominant)
        audit.add("product_identity", {"lambda": list(a), "lambda_prime": list(b), "prime": p},
                  heckecomb.product_identity_check(d, a, b, p))
    # finitegroup
    gl = d.name.startswith("GL") and d.rank <= 3
    if gl and p in (2, 3):
        n = d.rank
        spec = fg.CongSubgroup(n, p, 1, 1)
        grid = heckecomb.dominant_coweights(d, args.max_deg)
        for lam in grid:
            inputs = {"n": n, "p": p, "lambda": list(lam), "subgroup": "I(1,1)"}

            def count(lam=lam):
                c = fg.double_coset_count(spec, lam)
                return c == heckecomb.coset_count(d, lam, p), {"oracle_count": c}

            _timed(audit, "double_coset_count", inputs, count)
            _timed(audit, "verify_rep_formula", inputs, lambda lam=lam: fg.verify_rep_formula(spec, lam))
        if n == 2:
            up = (1,) + (0,) * (n - 1)
            _timed(audit, "verify_up_factorization", {"n": n, "p": p, "b": 1, "c": 2, "lambda": list(up)},
                   lambda: fg.verify_up_factorization(n, 1, 2, up, p))
            spec12 = fg.CongSubgroup(n, p, 1, 2)
            for h in fg.hom_group(fg.DiamondQuotient(n, p, 2), 1):
                _timed(audit, "diamond_conjugation", {"n": n, "p": p, "hom": list(h.values)},
                       lambda h=h: fg.diamond_conjugation_check(spec12, up, fg.InflatedCharacter(h)))
        else:
            audit.add("finite_level_diamond", {"n": n, "p": p}, None,
                      details={"reason": "I(1,2) for GL3 exceeds the enumeration guard"})
    else:
        audit.add("finite_level", {"datum": d.name, "p": p}, None,
                  details={"reason": "finite model exists only for GL_n, n <= 3, p in {2, 3}"})
    # localalg
    try:
        field = parse_field(f"Fp:{p}")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    localalg_checks(audit, rng, field)
    localalg_checks(audit, rng, parse_field("Q"))
    if l0 > 0:
        ring = PolyRing(max(l0, 1))
        seq = koszul.LocalSequence(ring, [ring.var(i) + ring.var(i) * ring.var(i) for i in range(l0)])
        rep = koszul.generation_verdict(seq)
        table = koszul.cohomology_degree_map(l0, 0, rep.dims)
        audit.add("cohomology_degree_map", {"l0": l0}, table.pattern_ok and rep.generated_over_bottom,
                  details=table.to_dict())
    # galdim
    galdim.audit_ledger(galdim.crystalline_ledger(d, l0, selmer=0), audit)
    _timed(audit, "greenberg_wiles_ordinary", {"datum": d.name, "l0": l0},
           lambda: (galdim.greenberg_wiles(galdim.ordinary_ledger(d, l0)) == d.torus_rank - l0, {}))
    audit.add("leopoldt_h1", {"r2": 0, "defect": 0}, galdim.leopoldt_h1(0, 0) == 1)


# ------------------------------------------------------------------ parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--out", default=None, help=f"output directory (default: ${OUT_ENV})")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    parser = _Parser(prog="derivedhecke", description=__doc__.split("\n")[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("rootdata", parents=[common], help="validate a root datum and its invariants")
    p.add_argument("--preset", default="GL2")
    p.add_argument("--datum", help="root datum JSON (file or inline)")
    p.add_argument("--chi", help="JSON list of character values on the X_* basis")

    p = sub.add_parser("hecke", parents=[common], help="coset counts and representatives")
    p.add_argument("--preset", default="GL2")
    p.add_argument("--datum")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--emit-reps", action="store_true")
    p.add_argument("--oracle", action="store_true", help="cross-check with finite enumeration (GL_n)")

    p = sub.add_parser("ext", parents=[common], help="Koszul Ext and generation verdict")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--field", default="Q")
    p.add_argument("--gens", required=True, help="JSON list of polynomials (file or inline)")
    p.add_argument("--l0", type=int)
    p.add_argument("--q0", type=int)

    p = sub.add_parser("dims", parents=[common], help="dimension ledger audit")
    p.add_argument("--ledger", required=True)

    p = sub.add_parser("finite", parents=[common], help="finite-level group checks")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--N", type=int)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--m", type=int, default=1, help="target Z/p^m for homomorphisms")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--kind", choices=["central", "iwahori"], default="central")
    p.add_argument("--check", choices=["cosets", "reps", "upfact", "diamond", "homs"], required=True)

    p = sub.add_parser("audit", parents=[common], help="cross-module audit")
    p.add_argument("--preset", default="GL2")
    p.add_argument("--datum")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--l0", type=int, default=0)
    p.add_argument("--max-deg", type=int, default=2)
    return parser


COMMANDS = {
    "rootdata": cmd_rootdata,
    "hecke": cmd_hecke,
    "ext": cmd_ext,
    "dims": cmd_dims,
    "finite": cmd_finite,
    "audit": cmd_audit,
}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        audit = AuditReport()
        COMMANDS[args.command](args, audit)
        out = args.out or os.environ.get(OUT_ENV)
        if out:
            try:
                emit_report(audit, Path(out) / f"{args.command}.json")
            except OSError as exc:
                raise UsageError(f"cannot write report: {exc}") from None
        stdout.write(audit.to_json())
    except UsageError as exc:
        print(f"derivedhecke: error: {exc}", file=sys.stderr)
        return 2
    return 0 if audit.status == "pass" else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

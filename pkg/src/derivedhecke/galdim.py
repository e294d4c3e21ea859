"""Dimension bookkeeping for Selmer groups of the adjoint representation.

All cohomology dimensions here are abstract nonnegative integers, supplied
by the caller or derived by the rules below. Nothing computes actual Galois
cohomology: the module checks the arithmetic that links the dimensions
(local Euler characteristics, Greenberg-Wiles, Poitou-Tate, oddness).

Conventions for the local terms of the Greenberg-Wiles sum
``h0_V - h0_Vdual1 + sum_q (t_q - h0_q)``:

* at p, crystalline: ``t_p = dim H^1_f = h0_p + [F:Q_p] * #negative weights``;
  ordinary: ``t_p = dim Lie B + h0_p``;
* at infinity: ``t = 0`` and oddness fixes ``h0 = dim Lie U + l0``;
* at generic q != p: ``h2 = 0`` so ``h1 = h0`` and the unrestricted
  condition has ``t_q = h0_q``, contributing 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product

from .reports import AuditReport, Report
from .rootdata import RootDatum, build_preset, is_strictly_dominant, pairing

HEADER = ("Dimensions are abstract integers supplied or derived by rule; "
          "no Galois cohomology is computed.")


class LedgerInconsistency(ValueError):
    pass


def _nonneg(**kw):
    for k, v in kw.items():
        if v is None or v < 0:
            raise ValueError(f"{k} must be a nonnegative integer, got {v}")


def local_euler_h1(h0: int, h2: int, degF: int, dimV: int) -> int:
    _nonneg(h0=h0, h2=h2, degF=degF, dimV=dimV)
    return h2 + degF * dimV + h0


def h1f_dim(h0: int, degF: int, neg_weights: int) -> int:
    _nonneg(h0=h0, degF=degF, neg_weights=neg_weights)
    return h0 + degF * neg_weights


@dataclass
class HTProfile:
    weights: Counter

    @property
    def total(self):
        return sum(self.weights.values())

    @property
    def num_negative(self):
        return sum(m for w, m in self.weights.items() if w < 0)

    def to_dict(self):
        return {str(w): m for w, m in sorted(self.weights.items())}


def ht_profile(d: RootDatum, chi) -> HTProfile:
    """Weights of the adjoint representation for a regular cocharacter.

    The torus contributes weight 0 with multiplicity r; each positive root
    contributes ``-<chi, alpha>`` on the upper unipotent and ``+<chi, alpha>``
    on the opposite one (so chi sits in the negative cone).
    """
    if not is_strictly_dominant(d, chi):
        raise ValueError(f"{tuple(chi)} is not regular dominant")
    w = Counter({0: d.torus_rank})
    for i in d.positive_indices:
        v = pairing(chi, d.roots[i])
        w[-v] += d.dims[i]
        w[v] += d.dims[i]
    prof = HTProfile(w)
    assert prof.total == d.dim_lie_g
    assert prof.num_negative == d.dim_lie_u
    return prof


def regular_coweight(d: RootDatum, box: int = 3):
    """A strictly dominant coweight of small norm (deterministic)."""
    cands = sorted(product(range(-box, box + 1), repeat=d.rank), key=lambda v: (sum(x * x for x in v), v))
    for v in cands:
        if is_strictly_dominant(d, v):
            return v
    raise ValueError("no strictly dominant coweight in search box")


def borel_quotient_rank(d: RootDatum, degF: int = 1) -> int:
    """``dim H^1 / H^1_f`` for Lie B at p, via Euler characteristic: equals ``r [F:Q_p]``."""
    prof = ht_profile(d, regular_coweight(d))
    neg = prof.num_negative
    results = set()
    for h0 in (0, 1, d.torus_rank):
        h1 = local_euler_h1(h0, 0, degF, d.dim_lie_b)
        results.add(h1 - h1f_dim(h0, degF, neg))
    if results != {d.torus_rank * degF}:
        raise AssertionError(f"Euler route gives {results}, expected {d.torus_rank * degF}")
    return d.torus_rank * degF


@dataclass
class LocalDatum:
    place: str
    kind: str = "finite"
    h0: int | None = None
    h1: int | None = None
    h2: int | None = None
    t: int | None = None
    dimV: int | None = None
    degF: int = 1

    def __post_init__(self):
        if self.kind not in ("p", "finite", "inf"):
            raise ValueError(f"unknown place kind {self.kind!r}")
        for name in ("h0", "h1", "h2", "t", "dimV"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name} must be nonnegative at {self.place}")
        if self.kind != "inf" and None not in (self.h0, self.h1, self.h2):
            expected = self.h2 + self.h0 + (self.degF * self.dimV if self.kind == "p" else 0)
            if self.kind == "p" and self.dimV is None:
                raise ValueError(f"dimV needed for the Euler check at {self.place}")
            if self.h1 != expected:
                raise ValueError(f"local Euler characteristic fails at {self.place}: h1={self.h1}, expected {expected}")

    @property
    def contribution(self):
        if self.t is None or self.h0 is None:
            raise ValueError(f"place {self.place} needs t and h0")
        return self.t - self.h0

    def to_dict(self):
        return {k: getattr(self, k) for k in ("place", "kind", "h0", "h1", "h2", "t", "dimV", "degF")}


@dataclass
class DimLedger:
    l0: int
    datum: RootDatum
    locals: list = field(default_factory=list)
    globals: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.l0 < 0:
            raise ValueError("l0 must be nonnegative")
        assert self.dim_LieB == self.dim_LieT + self.dim_LieU
        assert self.dim_LieG == self.dim_LieB + self.dim_LieU
        if "d" in self.globals and self.globals["d"] is not None:
            if (self.globals["d"] - self.l0) % 2:
                raise ValueError("q0 = (d - l0)/2 is not an integer")
            self.globals.setdefault("q0", (self.globals["d"] - self.l0) // 2)

    @property
    def r(self):
        return self.datum.torus_rank

    @property
    def dim_LieT(self):
        return self.datum.dim_lie_t

    @property
    def dim_LieU(self):
        return self.datum.dim_lie_u

    @property
    def dim_LieB(self):
        return self.datum.dim_lie_b

    @property
    def dim_LieG(self):
        return self.datum.dim_lie_g

    def to_dict(self):
        return {
            "l0": self.l0,
            "r": self.r,
            "dim_LieG": self.dim_LieG,
            "dim_LieB": self.dim_LieB,
            "dim_LieU": self.dim_LieU,
            "dim_LieT": self.dim_LieT,
            "locals": [loc.to_dict() for loc in self.locals],
            "globals": dict(sorted(self.globals.items())),
        }


def greenberg_wiles(ledger: DimLedger) -> int:
    """``h0_V - h0_Vdual1 + sum_q (t_q - h0_q)``; checked against selmer - dual_selmer if given."""
    g = ledger.globals
    for key in ("h0_V", "h0_Vdual1"):
        if g.get(key) is None:
            raise ValueError(f"ledger is missing global {key}")
    value = g["h0_V"] - g["h0_Vdual1"] + sum(loc.contribution for loc in ledger.locals)
    if g.get("selmer") is not None and g.get("dual_selmer") is not None:
        if g["selmer"] - g["dual_selmer"] != value:
            raise LedgerInconsistency(
                f"selmer - dual_selmer = {g['selmer'] - g['dual_selmer']} but Greenberg-Wiles gives {value}")
    return value


def _infinity(d: RootDatum, l0: int) -> LocalDatum:
    return LocalDatum("inf", "inf", h0=d.dim_lie_u + l0, t=0, dimV=d.dim_lie_g)


def generic_place(d: RootDatum, label: str, h0: int = 0) -> LocalDatum:
    return LocalDatum(label, "finite", h0=h0, h1=h0, h2=0, t=h0, dimV=d.dim_lie_g)


def crystalline_ledger(d: RootDatum, l0: int, h0_p: int = 0, generic=("q",), selmer=None,
                       degF: int = 1) -> DimLedger:
    neg = ht_profile(d, regular_coweight(d)).num_negative
    at_p = LocalDatum("p", "p", h0=h0_p, t=h1f_dim(h0_p, degF, neg), dimV=d.dim_lie_g, degF=degF)
    locs = [at_p, _infinity(d, l0)] + [generic_place(d, q) for q in generic]
    glob = {"h0_V": 0, "h0_Vdual1": 0}
    if selmer is not None:
        glob["selmer"] = selmer
        glob["dual_selmer"] = selmer + l0
    return DimLedger(l0, d, locs, glob)


def ordinary_ledger(d: RootDatum, l0: int, h0_p: int = 0, generic=("q",), smooth: bool = True) -> DimLedger:
    at_p = LocalDatum("p", "p", h0=h0_p, t=ordinary_tangent_dim(d, h0_p), dimV=d.dim_lie_g)
    locs = [at_p, _infinity(d, l0)] + [generic_place(d, q) for q in generic]
    glob = {"h0_V": 0, "h0_Vdual1": 0}
    if smooth:
        glob["dual_selmer"] = 0
        glob["selmer"] = d.torus_rank - l0
    return DimLedger(l0, d, locs, glob)


def dual_selmer_offset(d: RootDatum, l0: int) -> int:
    """``dim dual Selmer - dim H^1_f``, recomputed as minus the Greenberg-Wiles sum."""
    if l0 < 0:
        raise ValueError("l0 must be nonnegative")
    ledger = crystalline_ledger(d, l0)
    p_loc = next(loc for loc in ledger.locals if loc.kind == "p")
    inf_loc = next(loc for loc in ledger.locals if loc.kind == "inf")
    assert p_loc.contribution == d.dim_lie_u
    assert inf_loc.contribution == -(d.dim_lie_u + l0)
    return -greenberg_wiles(ledger)


def ordinary_tangent_dim(d: RootDatum, h0_LieG_at_p: int) -> int:
    _nonneg(h0=h0_LieG_at_p)
    return d.dim_lie_b + h0_LieG_at_p


def smoothness_dim(d: RootDatum, l0: int) -> int:
    """Number of variables of the smooth ordinary deformation ring: ``r - l0``."""
    if l0 < 0 or l0 > d.torus_rank:
        raise ValueError(f"need 0 <= l0 <= r = {d.torus_rank}")
    lie = d.dim_lie_b - d.dim_lie_u - l0
    if lie != d.torus_rank - l0:
        raise AssertionError("Lie algebra route disagrees with r - l0")
    gw = greenberg_wiles(ordinary_ledger(d, l0, smooth=False))
    if gw != lie:
        raise AssertionError(f"Greenberg-Wiles route gives {gw}, expected {lie}")
    return lie


def smooth_case_tuple(r: int, l0: int):
    """Dimensions entering the Poitou-Tate sequence when the ordinary problem is smooth."""
    if not 0 <= l0 <= r:
        raise ValueError("need 0 <= l0 <= r")
    return (0, l0, r, r - l0, 0)


def poitou_tate_consistency(dims) -> Report:
    a, b, r, d, e = dims
    total = a - b + r - d + e
    names = ["h1_ordperp_dual", "h1f_dual", "middle_local", "h1_ord", "h1f"]
    return Report("poitou_tate", total == 0 and min(dims) >= 0,
                  {"dims": dict(zip(names, dims)), "alternating_sum": total})


def coker_psi_dim(t_Lambda: int, h1_ord: int, ker_psi: int) -> int:
    _nonneg(t_Lambda=t_Lambda, h1_ord=h1_ord, ker_psi=ker_psi)
    if ker_psi > h1_ord:
        raise ValueError("kernel larger than source")
    out = t_Lambda - (h1_ord - ker_psi)
    if out < 0:
        raise LedgerInconsistency(f"negative cokernel dimension {out}")
    return out


def leopoldt_h1(r2: int, defect: int) -> int:
    _nonneg(r2=r2, defect=defect)
    return 1 + r2 + defect


# ------------------------------------------------------------------ audits

def ledger_from_json(doc: dict) -> DimLedger:
    if "datum" in doc:
        d = RootDatum.from_json(doc["datum"])
    else:
        d = build_preset(doc["preset"])
    l0 = doc["l0"]
    condition = doc.get("condition")
    if condition == "crystalline":
        ledger = crystalline_ledger(d, l0, h0_p=doc.get("h0_p", 0), selmer=doc.get("selmer"))
    elif condition == "ordinary":
        ledger = ordinary_ledger(d, l0, h0_p=doc.get("h0_p", 0), smooth=doc.get("smooth", True))
    else:
        ledger = DimLedger(l0, d)
    for loc in doc.get("locals", []):
        ledger.locals.append(LocalDatum(**loc))
    ledger.globals.update(doc.get("global", {}))
    if doc.get("d") is not None:
        ledger.globals["d"] = doc["d"]
    return DimLedger(ledger.l0, ledger.datum, ledger.locals, ledger.globals)


def audit_ledger(ledger: DimLedger, audit: AuditReport | None = None) -> AuditReport:
    """Run every identity the ledger supports and record pass/fail."""
    audit = audit or AuditReport(header=HEADER)
    d, l0 = ledger.datum, ledger.l0
    r = d.torus_rank
    base = {"datum": d.name, "l0": l0}

    def run(name, inputs, fn):
        try:
            out = fn()
        except (ValueError, AssertionError) as exc:
            audit.add(name, inputs, False, witness=str(exc))
            return
        if isinstance(out, Report):
            audit.add(name, inputs, out)
        else:
            ok, details = out
            audit.add(name, inputs, ok, details=details)

    run("lie_dimensions", base, lambda: (
        ledger.dim_LieG == r + 2 * ledger.dim_LieU,
        {"dim_LieG": ledger.dim_LieG, "dim_LieB": ledger.dim_LieB, "dim_LieU": ledger.dim_LieU}))
    chi = regular_coweight(d)
    run("ht_profile", {**base, "chi": list(chi)}, lambda: (
        ht_profile(d, chi).num_negative == d.dim_lie_u, {"weights": ht_profile(d, chi).to_dict()}))
    run("borel_quotient_rank", base, lambda: (borel_quotient_rank(d) == r, {"value": borel_quotient_rank(d)}))
    if ledger.locals:
        run("greenberg_wiles", {**base, "ledger": ledger.to_dict()},
            lambda: (True, {"value": greenberg_wiles(ledger)}))
    if l0 <= r:
        run("dual_selmer_offset", base, lambda: (dual_selmer_offset(d, l0) == l0,
                                                 {"value": dual_selmer_offset(d, l0)}))
        run("smoothness_dim", base, lambda: (smoothness_dim(d, l0) == r - l0, {"value": smoothness_dim(d, l0)}))
        tup = smooth_case_tuple(r, l0)
        run("poitou_tate_smooth", {**base, "dims": list(tup)}, lambda: poitou_tate_consistency(tup))
        run("coker_psi", base, lambda: (coker_psi_dim(r, r - l0, 0) == l0, {"value": coker_psi_dim(r, r - l0, 0)}))
    else:
        audit.add("l0_range", base, False, witness=f"l0 = {l0} exceeds r = {r}")
    if ledger.globals.get("q0") is not None:
        run("q0", {**base, "d": ledger.globals.get("d")}, lambda: (True, {"q0": ledger.globals["q0"]}))
    return audit

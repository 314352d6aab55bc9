"""Machine-checkable theorem cases run over a corpus of small rings.

Each case states an implication between registered predicates, radical
formulas, or construction transforms, and reports PASS or FAIL with the
first counterexample.  Failures are data, never exceptions; proved claims
that fail are build-breaking results for the caller to surface.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import (
    ARMENDARIZ_CAP, LATTICE_CAP, QUANTIFIER_CAP, SIZE_CAP, TOOL_VERSION,
    CharacterizationMismatch, CrossCheckMismatch, FiniteRing, RinglabError,
    SizeCap, bool_from_mask, idempotents_mask, mask_iter, nilpotents_mask,
    double_commutant_mask, units_mask, is_central, mask_of)
from .constructions import (
    construct, corner_ring, decode_digits, direct_product, enumerate_unital_rings,
    formal_triangular, hst_ring, ks_ring, lst_ring, make_zn, matrix_ring,
    quotient_ring, trivial_morita, upper_triangular_ring)
from .ideals import (
    all_right_ideal_masks, assert_radical_agreement, delta_sharp_mask,
    is_semiprime_ideal, jacobson_radical_mask, socle, socle_mask,
    zhou_radical_mask)
from .predicates import evaluate_predicate

CORPUS_VERSION = "default-v1"


@dataclass(frozen=True)
class CorpusMember:
    name: str
    ring: FiniteRing
    kind: str
    bases: tuple[FiniteRing, ...] = ()
    params: dict = field(default_factory=dict)


def central_unit_pairs(R: FiniteRing) -> list[tuple[int, int]]:
    cu = [u for u in mask_iter(units_mask(R)) if is_central(R, u)]
    return [(s, t) for s in cu for t in cu]


def default_corpus(size_cap: int = SIZE_CAP) -> list[CorpusMember]:
    """The versioned default preset, in deterministic order."""
    members: list[CorpusMember] = []

    def add(name, ring, kind, bases=(), **params):
        members.append(CorpusMember(name, ring, kind, tuple(bases), params))

    zn = {k: make_zn(k) for k in range(1, 10)}
    for k in range(1, 10):
        add(f"Z{k}", zn[k], "zn")
    for order in range(1, 9):
        for ring in enumerate_unital_rings(order, up_to_iso=True):
            add(ring.name, ring, "enumerated")
    for k in (2, 3, 4):
        add(f"M2(Z{k})", matrix_ring(2, zn[k], size_cap), "matrix", [zn[k]], n=2)
    for k in (2, 3, 4):
        add(f"T2(Z{k})", upper_triangular_ring(2, zn[k], size_cap), "triangular",
            [zn[k]], n=2)
    for k in (2, 3, 4):
        add(f"K0(Z{k})", ks_ring(zn[k], zn[k].zero, size_cap), "ks", [zn[k]], s=zn[k].zero)
    for k in (2, 3, 4):
        for (s, t) in central_unit_pairs(zn[k]):
            add(f"H({s},{t})(Z{k})", hst_ring(zn[k], s, t, size_cap), "hst",
                [zn[k]], s=s, t=t)
    for k in (2, 3, 4):
        for (s, t) in central_unit_pairs(zn[k]):
            add(f"L({s},{t})(Z{k})", lst_ring(zn[k], s, t, size_cap), "lst",
                [zn[k]], s=s, t=t)
    add("Z2xZ4", direct_product([zn[2], zn[4]], size_cap), "product", [zn[2], zn[4]])

    for parent in list(members):
        for e in mask_iter(idempotents_mask(parent.ring)):
            corner = corner_ring(parent.ring, e, size_cap)
            add(f"e{e}.{parent.name}.e{e}", corner.ring, "corner", [parent.ring],
                e=e, embed=list(corner.embed), parent=parent.name)

    for k in (2, 3):
        add(f"Tri(Z{k},Z{k})", formal_triangular(zn[k], zn[k], size_cap=size_cap),
            "formal_triangular", [zn[k], zn[k]])
        add(f"Morita(Z{k},Z{k})", trivial_morita(zn[k], zn[k], size_cap=size_cap),
            "trivial_morita", [zn[k], zn[k]])
    return members


def build_corpus(spec: str = "default", size_cap: int = SIZE_CAP) -> tuple[str, list[CorpusMember]]:
    """Resolve a corpus spec: the 'default' preset, '@file' with one ring
    expression per line, or a semicolon-separated list of ring expressions."""
    if spec == "default":
        return f"default ({CORPUS_VERSION})", default_corpus(size_cap)
    if spec.startswith("@"):
        with open(spec[1:], "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
        exprs = lines
    else:
        exprs = [part.strip() for part in spec.split(";") if part.strip()]
    members = []
    for text in exprs:
        ring = construct(text, size_cap)
        members.append(CorpusMember(ring.name, ring, ring.meta.get("kind", "expr"),
                                    (), {"expr": text}))
    return spec, members


# ---------------------------------------------------------------------------
# suite context

@dataclass
class SuiteContext:
    members: list[CorpusMember]
    lattice_cap: int = LATTICE_CAP
    quantifier_cap: int = QUANTIFIER_CAP
    armendariz_cap: int = ARMENDARIZ_CAP
    errors: dict = field(default_factory=dict)

    def pred(self, R: FiniteRing, name: str) -> bool:
        return evaluate_predicate(R, name, self.lattice_cap, self.armendariz_cap).verdict

    def pred_result(self, R: FiniteRing, name: str):
        return evaluate_predicate(R, name, self.lattice_cap, self.armendariz_cap)

    def delta(self, R: FiniteRing) -> int:
        return zhou_radical_mask(R, self.lattice_cap)


@dataclass
class CaseResult:
    id: str
    statement: str
    kind: str                      # "proved" or "observation"
    verdict: str                   # "PASS" or "FAIL"
    checked: int = 0
    counterexample: Optional[dict] = None
    observation: Optional[dict] = None

    def to_json_dict(self) -> dict:
        d = {"id": self.id, "statement": self.statement, "kind": self.kind,
             "verdict": self.verdict, "checked": self.checked}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.observation is not None:
            d["observation"] = self.observation
        return d


def _fail(member: CorpusMember, detail: str, witness=None) -> dict:
    d = {"ring": member.name, "detail": detail}
    if witness is not None:
        d["witness"] = [int(w) for w in witness]
    return d


def _implication_case(ctx: SuiteContext, case_id: str, statement: str,
                      hypothesis: Callable[[FiniteRing], bool],
                      conclusion: Callable[[FiniteRing], "object"],
                      scope: Callable[[CorpusMember], bool] = lambda m: True,
                      kind: str = "proved") -> CaseResult:
    checked = 0
    for m in ctx.members:
        if not scope(m):
            continue
        try:
            if not hypothesis(m.ring):
                continue
        except SizeCap:
            continue
        checked += 1
        try:
            res = conclusion(m.ring)
        except SizeCap:
            checked -= 1
            continue
        if res is True:
            continue
        witness = None
        if hasattr(res, "verdict"):
            if res.verdict:
                continue
            witness = res.witness
        return CaseResult(case_id, statement, kind, "FAIL", checked,
                          _fail(m, "conclusion fails", witness))
    return CaseResult(case_id, statement, kind, "PASS", checked)


# ---------------------------------------------------------------------------
# decode helpers for radical-formula checks

def _shape_mask(member: CorpusMember, ctx: SuiteContext) -> Optional[tuple[int, str]]:
    """The claimed shape of delta for a composite member, as (mask, relation)
    where relation is 'eq' or 'subset'(delta contained in the shape)."""
    R = member.ring
    kind = member.kind
    if kind == "product":
        dims = [B.order for B in member.bases]
        dmasks = [ctx.delta(B) for B in member.bases]
        m = mask_of(i for i in range(R.order)
                    if all((dm >> d) & 1 for dm, d in zip(dmasks, decode_digits(i, dims))))
        return m, "eq"
    if kind == "matrix":
        base = member.bases[0]
        dims = [base.order] * (member.params["n"] ** 2)
        dmask = ctx.delta(base)
        m = mask_of(i for i in range(R.order)
                    if all((dmask >> d) & 1 for d in decode_digits(i, dims)))
        return m, "eq"
    if kind == "triangular":
        base = member.bases[0]
        n = member.params["n"]
        positions = R.meta["positions"]
        dims = [base.order] * len(positions)
        dmask = ctx.delta(base)
        diag = [s for s, (i, j) in enumerate(positions) if i == j]
        m = mask_of(p for p in range(R.order)
                    if all((dmask >> decode_digits(p, dims)[s]) & 1 for s in diag))
        return m, "subset"
    if kind == "hst":
        base = member.bases[0]
        s, t = member.params["s"], member.params["t"]
        dims = [base.order] * 3
        dmask = ctx.delta(base)
        def ok(p):
            c, d, e = decode_digits(p, dims)
            a = base.add[d][base.mul[s][c]]
            f = base.sub(d, base.mul[t][e])
            return ((dmask >> a) & 1) and ((dmask >> d) & 1) and ((dmask >> f) & 1)
        return mask_of(p for p in range(R.order) if ok(p)), "eq"
    if kind == "lst":
        base = member.bases[0]
        dims = [base.order] * 5
        dmask = ctx.delta(base)
        m = mask_of(p for p in range(R.order)
                    if all((dmask >> decode_digits(p, dims)[s]) & 1 for s in (0, 2, 4)))
        return m, "eq"
    if kind == "ks" and member.params.get("s") == member.bases[0].zero:
        base = member.bases[0]
        dims = [base.order] * 4
        dmask = ctx.delta(base)
        m = mask_of(p for p in range(R.order)
                    if all((dmask >> decode_digits(p, dims)[s]) & 1 for s in (0, 3)))
        return m, "eq"
    if kind == "formal_triangular":
        S, T = member.bases
        dims = R.meta["dims"]
        dS, dT = ctx.delta(S), ctx.delta(T)
        m = mask_of(p for p in range(R.order)
                    if ((dS >> decode_digits(p, dims)[0]) & 1)
                    and ((dT >> decode_digits(p, dims)[2]) & 1))
        return m, "subset"
    if kind == "trivial_morita":
        A, B = member.bases
        dims = R.meta["dims"]
        dA, dB = ctx.delta(A), ctx.delta(B)
        m = mask_of(p for p in range(R.order)
                    if ((dA >> decode_digits(p, dims)[0]) & 1)
                    and ((dB >> decode_digits(p, dims)[3]) & 1))
        return m, "subset"
    if kind == "corner":
        parent = member.bases[0]
        e = member.params["e"]
        embed = member.params["embed"]
        dparent = ctx.delta(parent)
        expected_parent_side = {parent.mul[parent.mul[e][x]][e]
                                for x in mask_iter(dparent)}
        m = mask_of(i for i, p in enumerate(embed) if p in expected_parent_side)
        return m, "eq"
    return None


def _formula_case(ctx: SuiteContext, case_id: str, statement: str,
                  kinds: tuple[str, ...], kind: str = "proved") -> CaseResult:
    checked = 0
    for m in ctx.members:
        if m.kind not in kinds:
            continue
        if m.kind == "ks" and m.params.get("s") != m.bases[0].zero:
            continue
        shape = _shape_mask(m, ctx)
        if shape is None:
            continue
        checked += 1
        want, relation = shape
        got = ctx.delta(m.ring)
        ok = (got == want) if relation == "eq" else ((got | want) == want)
        if not ok:
            sym = "=" if relation == "eq" else "subset of"
            diff = (got & ~want) or (want & ~got)
            witness = sorted(mask_iter(diff))[:4]
            return CaseResult(case_id, statement, kind, "FAIL", checked,
                              _fail(m, f"delta is not {sym} the claimed shape "
                                       f"(|delta|={got.bit_count()}, |shape|={want.bit_count()})",
                                    witness))
    return CaseResult(case_id, statement, kind, "PASS", checked)


# ---------------------------------------------------------------------------
# the theorem registry

def _two_sided_masks(R: FiniteRing, lattice_cap: int) -> list[int]:
    cache = R.cache
    if "two_sided" not in cache:
        M = R.np_mul
        out = []
        for m in all_right_ideal_masks(R, lattice_cap):
            arr = np.fromiter(mask_iter(m), dtype=np.int64, count=m.bit_count())
            inm = bool_from_mask(m, R.order)
            if bool(inm[M[:, arr]].all()):
                out.append(m)
        cache["two_sided"] = out
    return cache["two_sided"]


def _case_t1(ctx: SuiteContext) -> CaseResult:
    statement = ("The five characterizations of delta(R) agree: essential-maximal "
                 "intersection, socle-quotient pullback, the summand-forcing set, "
                 "the complement-in-socle set, and (on small rings) the largest "
                 "delta-small right ideal and the annihilator-of-singular-simple "
                 "intersection.")
    checked = 0
    for m in ctx.members:
        checked += 1
        try:
            assert_radical_agreement(m.ring, ctx.lattice_cap, ctx.quantifier_cap)
        except CrossCheckMismatch as exc:
            return CaseResult("T1", statement, "proved", "FAIL", checked,
                              _fail(m, str(exc)))
    return CaseResult("T1", statement, "proved", "PASS", checked)


def _case_t2(ctx: SuiteContext) -> CaseResult:
    statement = "delta(R) is a semiprime ideal."
    checked = 0
    for m in ctx.members:
        checked += 1
        if not is_semiprime_ideal(m.ring, ctx.delta(m.ring)):
            return CaseResult("T2", statement, "proved", "FAIL", checked,
                              _fail(m, "aRa inside delta but a outside delta"))
    return CaseResult("T2", statement, "proved", "PASS", checked)


def _case_t5(ctx: SuiteContext) -> CaseResult:
    statement = "If R/socle(R) is J-reversible then R is delta-reversible."
    checked = 0
    for m in ctx.members:
        R = m.ring
        q = quotient_ring(R, socle(R, ctx.lattice_cap))
        if not ctx.pred(q.ring, "j-reversible"):
            continue
        checked += 1
        res = ctx.pred_result(R, "delta-reversible")
        if not res.verdict:
            return CaseResult("T5", statement, "proved", "FAIL", checked,
                              _fail(m, "quotient J-reversible but R not delta-reversible",
                                    res.witness))
    return CaseResult("T5", statement, "proved", "PASS", checked)


def _case_t9(ctx: SuiteContext) -> CaseResult:
    statement = ("If R is delta-reversible then within every two-sided ideal I, "
                 "ab = 0 with a, b in I forces ba into I intersect delta(R).")
    checked = 0
    for m in ctx.members:
        R = m.ring
        if not ctx.pred(R, "delta-reversible"):
            continue
        inter_ok = bool_from_mask(ctx.delta(R), R.order)
        M = R.np_mul
        for I in _two_sided_masks(R, ctx.lattice_cap):
            checked += 1
            arr = np.fromiter(mask_iter(I), dtype=np.int64, count=I.bit_count())
            sub = M[np.ix_(arr, arr)]
            in_I = bool_from_mask(I, R.order)
            bad = (sub == R.zero) & ~(inter_ok[sub.T] & in_I[sub.T])
            if bool(bad.any()):
                i, j = np.argwhere(bad)[0]
                return CaseResult("T9", statement, "proved", "FAIL", checked,
                                  _fail(m, "product escapes I intersect delta",
                                        (int(arr[i]), int(arr[j]))))
    return CaseResult("T9", statement, "proved", "PASS", checked)


def _case_t10(ctx: SuiteContext) -> CaseResult:
    statement = ("A finite direct product is delta-reversible iff every factor is, "
                 "and delta of the product is the product of the deltas.")
    bases = [m for m in ctx.members if m.kind in ("zn", "enumerated") and m.ring.order <= 8]
    checked = 0
    for i, ma in enumerate(bases):
        for mb in bases[i:]:
            if ma.ring.order * mb.ring.order > 64:
                continue
            checked += 1
            P = direct_product([ma.ring, mb.ring])
            want = ctx.pred(ma.ring, "delta-reversible") and ctx.pred(mb.ring, "delta-reversible")
            got = ctx.pred(P, "delta-reversible")
            if want != got:
                return CaseResult("T10", statement, "proved", "FAIL", checked,
                                  _fail(CorpusMember(P.name, P, "product"),
                                        f"factors say {want}, product says {got}"))
            dims = [ma.ring.order, mb.ring.order]
            da, db = ctx.delta(ma.ring), ctx.delta(mb.ring)
            shape = mask_of(p for p in range(P.order)
                            if ((da >> decode_digits(p, dims)[0]) & 1)
                            and ((db >> decode_digits(p, dims)[1]) & 1))
            if ctx.delta(P) != shape:
                return CaseResult("T10", statement, "proved", "FAIL", checked,
                                  _fail(CorpusMember(P.name, P, "product"),
                                        "delta(product) differs from product of deltas"))
    return CaseResult("T10", statement, "proved", "PASS", checked)


def _case_t11(ctx: SuiteContext) -> CaseResult:
    statement = "R is delta-reversible iff eRe is delta-reversible for every idempotent e."
    corners: dict[str, list[CorpusMember]] = {}
    for m in ctx.members:
        if m.kind == "corner":
            corners.setdefault(m.params["parent"], []).append(m)
    by_name = {m.name: m for m in ctx.members}
    checked = 0
    for parent_name, corner_members in corners.items():
        parent = by_name[parent_name]
        checked += 1
        want = ctx.pred(parent.ring, "delta-reversible")
        for cm in corner_members:
            got = ctx.pred(cm.ring, "delta-reversible")
            if want and not got:
                return CaseResult("T11", statement, "proved", "FAIL", checked,
                                  _fail(cm, "parent delta-reversible, corner not"))
        if not want and all(ctx.pred(cm.ring, "delta-reversible") for cm in corner_members):
            return CaseResult("T11", statement, "proved", "FAIL", checked,
                              _fail(parent, "all corners delta-reversible, parent not "
                                            "(e = 1 corner included)"))
    return CaseResult("T11", statement, "proved", "PASS", checked)


def _case_t17(ctx: SuiteContext) -> CaseResult:
    statement = ("Every delta-quasipolar ring (as-used definition) is delta-reversible; "
                 "for nilpotent a the associated idempotent lies in delta(R).")
    checked = 0
    for m in ctx.members:
        R = m.ring
        if ctx.pred(R, "delta-quasipolar"):
            checked += 1
            res = ctx.pred_result(R, "delta-reversible")
            if not res.verdict:
                return CaseResult("T17", statement, "proved", "FAIL", checked,
                                  _fail(m, "delta-quasipolar but not delta-reversible",
                                        res.witness))
        d = ctx.delta(R)
        in_d = bool_from_mask(d, R.order)
        idem = list(mask_iter(idempotents_mask(R)))
        for a in mask_iter(nilpotents_mask(R)):
            cands = [p for p in idem if in_d[R.add[a][p]]]
            if not cands:
                continue
            dc = double_commutant_mask(R, a)
            for p in cands:
                if (dc >> p) & 1 and not in_d[p]:
                    return CaseResult("T17", statement, "proved", "FAIL", checked,
                                      _fail(m, "spectral idempotent of nilpotent escapes delta",
                                            (a, p)))
    return CaseResult("T17", statement, "proved", "PASS", checked)


def _case_t18(ctx: SuiteContext) -> CaseResult:
    statement = ("For trivial Morita contexts and formal triangular rings, delta is "
                 "contained in the block shape with delta of the diagonal components, "
                 "and delta-reversibility passes to the components.")
    checked = 0
    for m in ctx.members:
        if m.kind not in ("trivial_morita", "formal_triangular"):
            continue
        checked += 1
        want, relation = _shape_mask(m, ctx)
        got = ctx.delta(m.ring)
        if (got | want) != want:
            return CaseResult("T18", statement, "proved", "FAIL", checked,
                              _fail(m, "delta escapes the block containment shape"))
        if ctx.pred(m.ring, "delta-reversible"):
            for base in m.bases:
                if not ctx.pred(base, "delta-reversible"):
                    return CaseResult("T18", statement, "proved", "FAIL", checked,
                                      _fail(m, "ring delta-reversible but a component is not"))
    return CaseResult("T18", statement, "proved", "PASS", checked)


def _case_t19(ctx: SuiteContext) -> CaseResult:
    statement = ("If the upper triangular matrix ring over R is delta-reversible then "
                 "so is R; the converse is tested empirically and reported.")
    pairs: list[tuple[FiniteRing, FiniteRing, str]] = []
    for m in ctx.members:
        if m.kind == "triangular":
            pairs.append((m.bases[0], m.ring, m.name))
    z2 = make_zn(2)
    pairs.append((z2, upper_triangular_ring(3, z2), "T3(Z2)"))
    checked = 0
    for base, tri, name in pairs:
        checked += 1
        if ctx.pred(tri, "delta-reversible") and not ctx.pred(base, "delta-reversible"):
            return CaseResult("T19", statement, "proved", "FAIL", checked,
                              _fail(CorpusMember(name, tri, "triangular"),
                                    "triangular ring delta-reversible but base is not"))
    conv_fail = None
    for base, tri, name in pairs:
        if ctx.pred(base, "delta-reversible") and not ctx.pred(tri, "delta-reversible"):
            conv_fail = {"ring": name, "detail": "base delta-reversible, triangular ring not"}
            break
    observation = {
        "claim": "converse: R delta-reversible implies the triangular ring is",
        "verdict": "PASS" if conv_fail is None else "FAIL",
    }
    if conv_fail is not None:
        observation["counterexample"] = conv_fail
    return CaseResult("T19", statement, "proved", "PASS", checked, None, observation)


def _case_t20(ctx: SuiteContext) -> CaseResult:
    statement = ("Full matrix rings need not inherit delta-reversibility: some corpus "
                 "matrix ring has a delta-reversible base but is not delta-reversible.")
    candidates = [m for m in ctx.members if m.kind == "matrix"]
    exhibits = [m.name for m in candidates
                if ctx.pred(m.bases[0], "delta-reversible")
                and not ctx.pred(m.ring, "delta-reversible")]
    if exhibits:
        return CaseResult("T20", statement, "proved", "PASS", len(exhibits),
                          observation={"exhibits": exhibits})
    if not candidates:
        return CaseResult("T20", statement, "proved", "PASS", 0,
                          observation={"exhibits": [], "note": "no matrix members in corpus"})
    return CaseResult("T20", statement, "proved", "FAIL", len(candidates),
                      {"ring": candidates[0].name,
                       "detail": "no separating matrix ring found in corpus"})


def _iff_case(ctx: SuiteContext, case_id: str, statement: str, member_kind: str,
              extra=lambda m: True) -> CaseResult:
    checked = 0
    for m in ctx.members:
        if m.kind != member_kind or not extra(m):
            continue
        checked += 1
        base = m.bases[0]
        want = ctx.pred(base, "delta-reversible")
        got = ctx.pred(m.ring, "delta-reversible")
        if want != got:
            return CaseResult(case_id, statement, "proved", "FAIL", checked,
                              _fail(m, f"base delta-reversible={want} but extension={got}"))
    return CaseResult(case_id, statement, "proved", "PASS", checked)


def run_theorem_suite(members: list[CorpusMember],
                      corpus_spec: str = "default",
                      jobs: int = 1,
                      lattice_cap: int = LATTICE_CAP,
                      quantifier_cap: int = QUANTIFIER_CAP,
                      armendariz_cap: int = ARMENDARIZ_CAP) -> "SuiteReport":
    ctx = SuiteContext(members, lattice_cap, quantifier_cap, armendariz_cap)
    _warm(ctx, jobs)

    def scope_small(m: CorpusMember) -> bool:
        return m.ring.order <= armendariz_cap

    cases = [
        _case_t1(ctx),
        _case_t2(ctx),
        _implication_case(ctx, "T3", "Every J-reversible ring is delta-reversible.",
                          lambda R: ctx.pred(R, "j-reversible"),
                          lambda R: ctx.pred_result(R, "delta-reversible")),
        _implication_case(ctx, "T4",
                          "If the socle lies in J(R), delta-reversible iff J-reversible.",
                          lambda R: (socle_mask(R, ctx.lattice_cap)
                                     | jacobson_radical_mask(R, ctx.lattice_cap))
                          == jacobson_radical_mask(R, ctx.lattice_cap),
                          lambda R: ctx.pred(R, "delta-reversible")
                          == ctx.pred(R, "j-reversible")),
        _case_t5(ctx),
        _implication_case(ctx, "T6",
                          "Delta-reversible with idempotents lifting modulo delta(R) "
                          "forces R/delta(R) abelian.",
                          lambda R: ctx.pred(R, "delta-reversible")
                          and ctx.pred(R, "idempotents-lift-mod-delta"),
                          lambda R: ctx.pred_result(R, "quotient-abelian")),
        _implication_case(ctx, "T7",
                          "Delta-reversible forces eR(1-e) + (1-e)Re inside delta(R) "
                          "for every idempotent e.",
                          lambda R: ctx.pred(R, "delta-reversible"),
                          lambda R: ctx.pred_result(R, "corner-containment")),
        _case_t8(ctx),
        _case_t9(ctx),
        _case_t10(ctx),
        _case_t11(ctx),
        _implication_case(ctx, "T12",
                          "In a local ring, delta-sharp(R) = delta(R).",
                          lambda R: ctx.pred(R, "local"),
                          lambda R: delta_sharp_mask(R, ctx.lattice_cap) == ctx.delta(R)),
        _implication_case(ctx, "T13",
                          "delta-sharp(R) = delta(R) forces delta-reversibility.",
                          lambda R: delta_sharp_mask(R, ctx.lattice_cap) == ctx.delta(R),
                          lambda R: ctx.pred_result(R, "delta-reversible")),
        _implication_case(ctx, "T14",
                          "If R/delta(R) is reduced then R is delta-reversible.",
                          lambda R: ctx.pred(R, "quotient-reduced"),
                          lambda R: ctx.pred_result(R, "delta-reversible")),
        _implication_case(ctx, "T15",
                          "Every delta-reversible ring is delta-linear Armendariz.",
                          lambda R: ctx.pred(R, "delta-reversible"),
                          lambda R: ctx.pred_result(R, "delta-linear-armendariz"),
                          scope=scope_small),
        _implication_case(ctx, "T16",
                          "Every delta-clean ring is delta-reversible.",
                          lambda R: ctx.pred(R, "delta-clean"),
                          lambda R: ctx.pred_result(R, "delta-reversible")),
        _case_t17(ctx),
        _case_t18(ctx),
        _case_t19(ctx),
        _case_t20(ctx),
        _iff_case(ctx, "T21",
                  "R is delta-reversible iff H_(s,t)(R) is; delta of H_(s,t)(R) is the "
                  "set with diagonal entries in delta(R).", "hst"),
        _iff_case(ctx, "T22", "R is delta-reversible iff L_(s,t)(R) is.", "lst"),
        _iff_case(ctx, "T23",
                  "R is delta-reversible iff K_0(R) is; delta of K_0(R) is the set "
                  "with diagonal entries in delta(R).", "ks",
                  extra=lambda m: m.params.get("s") == m.bases[0].zero),
    ]
    # radical-shape sub-checks bundled into T21/T23 per the registry
    shape21 = _formula_case(ctx, "T21", cases[-3].statement, ("hst",))
    if cases[-3].verdict == "PASS" and shape21.verdict == "FAIL":
        cases[-3] = shape21
    shape23 = _formula_case(ctx, "T23", cases[-1].statement, ("ks",))
    if cases[-1].verdict == "PASS" and shape23.verdict == "FAIL":
        cases[-1] = shape23

    formulas = [
        _formula_case(ctx, "F-product", "delta of a direct product is the product "
                      "of the component deltas.", ("product",)),
        _formula_case(ctx, "F-corner", "delta(eRe) equals e delta(R) e at every "
                      "idempotent of every corpus ring.", ("corner",)),
        _formula_case(ctx, "F-matrix", "delta of a full matrix ring is the matrix "
                      "set over delta of the base.", ("matrix",)),
        _formula_case(ctx, "F-triangular", "delta of an upper triangular matrix ring "
                      "is contained in the triangular shape with diagonal in delta.",
                      ("triangular",)),
        _formula_case(ctx, "F-h-shape", "delta of H_(s,t)(R) equals the subset with "
                      "a, d, f in delta(R).", ("hst",)),
        _formula_case(ctx, "F-l-shape", "delta of L_(s,t)(R) equals the subset with "
                      "a, d, f in delta(R).", ("lst",)),
        _formula_case(ctx, "F-k0-shape", "delta of K_0(R) equals the subset with "
                      "both diagonal entries in delta(R).", ("ks",)),
        _formula_case(ctx, "F-blocks", "delta of trivial Morita contexts and formal "
                      "triangular rings lies in the block-diagonal delta shape.",
                      ("trivial_morita", "formal_triangular")),
    ]
    cases.extend(formulas)
    # job count deliberately left out: reports must be identical across --jobs
    return SuiteReport(corpus_spec, members, cases,
                       {"lattice_cap": lattice_cap, "quantifier_cap": quantifier_cap,
                        "armendariz_cap": armendariz_cap})


def _case_t8(ctx: SuiteContext) -> CaseResult:
    statement = ("The three delta-reversibility routes (definition, square-zero, "
                 "annihilator) agree on every corpus ring.")
    checked = 0
    for m in ctx.members:
        checked += 1
        try:
            ctx.pred(m.ring, "delta-reversible")
        except CharacterizationMismatch as exc:
            return CaseResult("T8", statement, "proved", "FAIL", checked,
                              _fail(m, str(exc)))
    return CaseResult("T8", statement, "proved", "PASS", checked)


def _warm(ctx: SuiteContext, jobs: int) -> None:
    """Precompute radicals and standard predicates, one worker per distinct table."""
    standard = ["reversible", "j-reversible", "delta-reversible", "abelian", "reduced",
                "semisimple", "local", "delta-clean", "delta-quasipolar",
                "idempotents-lift-mod-delta", "corner-containment",
                "quotient-abelian", "quotient-reduced"]

    seen: dict[str, FiniteRing] = {}
    for m in ctx.members:
        seen.setdefault(m.ring.digest, m.ring)

    def work(R: FiniteRing) -> None:
        zhou_radical_mask(R, ctx.lattice_cap)
        jacobson_radical_mask(R, ctx.lattice_cap)
        socle_mask(R, ctx.lattice_cap)
        delta_sharp_mask(R, ctx.lattice_cap)
        for name in standard:
            evaluate_predicate(R, name, ctx.lattice_cap, ctx.armendariz_cap)
        if R.order <= ctx.armendariz_cap:
            evaluate_predicate(R, "delta-linear-armendariz", ctx.lattice_cap,
                               ctx.armendariz_cap)

    rings = list(seen.values())
    if jobs <= 1:
        for R in rings:
            work(R)
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            list(pool.map(work, rings))


# ---------------------------------------------------------------------------
# reports

@dataclass
class SuiteReport:
    corpus_spec: str
    members: list[CorpusMember]
    cases: list[CaseResult]
    caps: dict

    @property
    def failed_proved(self) -> list[CaseResult]:
        return [c for c in self.cases if c.kind == "proved" and c.verdict == "FAIL"]

    def to_json_dict(self) -> dict:
        return {
            "tool_version": TOOL_VERSION,
            "corpus": self.corpus_spec,
            "corpus_version": CORPUS_VERSION,
            "corpus_size": len(self.members),
            "caps": self.caps,
            "members": [m.name for m in self.members],
            "cases": [c.to_json_dict() for c in self.cases],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=1) + "\n"

    def to_markdown(self) -> str:
        d = self.to_json_dict()
        lines = [
            "# Theorem suite report",
            "",
            f"- tool version: {d['tool_version']}",
            f"- corpus: {d['corpus']}",
            f"- corpus version: {d['corpus_version']}",
            f"- corpus size: {d['corpus_size']}",
            f"- caps: {json.dumps(d['caps'])}",
            "",
            "| id | verdict | checked | statement |",
            "|----|---------|---------|-----------|",
        ]
        for c in d["cases"]:
            lines.append(f"| {c['id']} | {c['verdict']} | {c['checked']} | {c['statement']} |")
        lines.append("")
        for c in d["cases"]:
            if "counterexample" in c:
                lines.append(f"- {c['id']} counterexample: {json.dumps(c['counterexample'])}")
            if "observation" in c:
                lines.append(f"- {c['id']} observation: {json.dumps(c['observation'])}")
        lines.append("")
        lines.append("## corpus members")
        lines.append("")
        for name in d["members"]:
            lines.append(f"- {name}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# counterexample hunting

@dataclass(frozen=True)
class HuntQuery:
    antecedent: str
    consequent: str
    stop_at_first: bool = True


@dataclass
class HuntFinding:
    ring: str
    witness: Optional[tuple[int, ...]]
    detail: str

    def to_json_dict(self) -> dict:
        d = {"ring": self.ring, "detail": self.detail}
        if self.witness is not None:
            d["witness"] = list(self.witness)
        return d


def hunt_counterexample(query: HuntQuery, members: list[CorpusMember],
                        lattice_cap: int = LATTICE_CAP,
                        armendariz_cap: int = ARMENDARIZ_CAP) -> list[HuntFinding]:
    """Corpus rings satisfying the antecedent but not the consequent, in corpus order."""
    findings: list[HuntFinding] = []
    for m in members:
        try:
            if not evaluate_predicate(m.ring, query.antecedent, lattice_cap,
                                      armendariz_cap).verdict:
                continue
            res = evaluate_predicate(m.ring, query.consequent, lattice_cap,
                                     armendariz_cap)
        except SizeCap:
            continue
        if res.verdict:
            continue
        findings.append(HuntFinding(m.name, res.witness,
                                    f"{query.antecedent} holds but {query.consequent} fails"))
        if query.stop_at_first:
            break
    return findings

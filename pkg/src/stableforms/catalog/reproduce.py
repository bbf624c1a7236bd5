"""Reproduction drivers: run the designated pipeline for every catalog row.

Failures are data: every check yields a :class:`ReproductionRow` with
status PASS, FAIL or INFO (computed value reported, nothing asserted).
Rows come out in catalog order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence

import numpy as np

from ..exterior import KForm, format_form, parse_form
from ..halfflat import (
    IdentityFails,
    lambda_sign_analysis,
    obstruction_certificate,
    refined_metric_obstruction,
    verify_half_flat,
)
from ..lie import abelian, cohomology_dims, direct_sum, structural_invariants
from ..scalars import format_scalar

if TYPE_CHECKING:  # pragma: no cover
    from . import Catalog, CatalogRow, ExamplePair

SCOPES = ("examples", "cohomology", "prop-3.3", "theorem-4d", "theorem-5d", "prop-4.1", "prop-4.2", "soundness")

# hf subcases whose examples live on the B family (isomorphic for suitable beta)
VIA_B = ("A4.2/alpha=-2", "A4.5/beta=-alpha-1", "A4.6/beta=-alpha/2")
HF_R2_EXTRA = ("A4.9/alpha=-1/2", "A4.12/all")
HF_R2_EXCLUDED = ("A4.5/alpha=beta=-1/2",)

R2 = abelian(2, "R2")
R1 = abelian(1, "R")


@dataclass
class ReproductionRow:
    scope: str
    id: str
    check: str
    status: str
    expected: str
    computed: str
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "FAIL"

    def to_json(self) -> dict:
        out = {"scope": self.scope, "id": self.id, "check": self.check, "status": self.status,
               "expected": self.expected, "computed": self.computed}
        if self.note:
            out["note"] = self.note
        return out


def _pf(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _bind(params) -> str:
    return ",".join(f"{k}={format_scalar(v)}" for k, v in sorted(params.items()))


def _sid(row: "CatalogRow", params) -> str:
    b = _bind(params)
    return f"{row.id}[{b}]" if b else row.id


def _one_form(text: str, rootd: Optional[int] = None) -> KForm:
    return parse_form(text, 6, 1, rootd=rootd)


def _four_d_rows(cat: "Catalog") -> List["CatalogRow"]:
    return [r for r in cat.rows if not r.derived and r.family.startswith("A4.")]


def _five_d_rows(cat: "Catalog") -> List["CatalogRow"]:
    return [r for r in cat.rows if r.derived and r.family.startswith("A5.")]


def _r2(cat: "Catalog"):
    return cat.presentation("r2")


# -- examples -----------------------------------------------------------------

def pair_report(cat: "Catalog", pair: "ExamplePair", name: str, params):
    """(entry, verification report, Gram equals printed metric)."""
    entry = cat.instantiate(name, params)
    rep = verify_half_flat(entry.presentation, pair.omega(), pair.rho())
    expected = pair.expected_gram()
    gram_ok = rep.gram is not None and all(
        rep.gram[i][j] == expected[i][j] for i in range(6) for j in range(6))
    return entry, rep, gram_ok


def verify_pair(cat: "Catalog", pair: "ExamplePair", name: str, params) -> ReproductionRow:
    entry, rep, gram_ok = pair_report(cat, pair, name, params)
    bad = [k for k, v in rep.flags.items() if not v]
    parts = ["all flags true" if not bad else "failed: " + ",".join(bad)]
    if gram_ok:
        parts.append("Gram matches printed metric")
    elif rep.gram is not None:
        expected = pair.expected_gram()
        diff = [f"g{i + 1}{j + 1}={format_scalar(rep.gram[i][j])} (printed {format_scalar(expected[i][j])})"
                for i in range(6) for j in range(i, 6) if rep.gram[i][j] != expected[i][j]]
        parts.append("Gram differs from printed metric: " + ", ".join(diff))
    note = ""
    if pair.rho_scale != 1:
        note = f"rho rescaled by {format_scalar(pair.rho_scale)} before verification"
    return ReproductionRow("examples", f"{pair.name}:{entry.presentation.name}", "verify_half_flat",
                           _pf(rep.verdict and gram_ok), "half-flat, printed metric",
                           "; ".join(parts + rep.errors), note)


def run_examples(cat: "Catalog", **_) -> List[ReproductionRow]:
    return [verify_pair(cat, pair, name, params) for pair in cat.examples for name, params in pair.algebras]


# -- cohomology ---------------------------------------------------------------

def run_cohomology(cat: "Catalog", **_) -> List[ReproductionRow]:
    out = []
    for row in _four_d_rows(cat):
        exp = row.expected
        for params in row.sample_dicts:
            g = cat.presentation(row.family, params)
            h = cohomology_dims(g)
            inv = structural_invariants(g)
            problems, notes = [], []
            if list(h) != list(exp["h"]):
                problems.append("h")
            if inv.unimodular != exp["unimodular"] or inv.unimodular != (h[-1] == 1):
                problems.append("unimodular")
            if cat.match_row(row.family, params) is not row:
                problems.append("subcase condition")
            if inv.center_dim != exp.get("center_dim", inv.center_dim):
                if "center_dim" in row.known_discrepancies:
                    notes.append(f"center_dim computed {inv.center_dim}, annotated {exp['center_dim']}: "
                                 + row.known_discrepancies["center_dim"])
                else:
                    problems.append("center_dim")
            out.append(ReproductionRow(
                "cohomology", _sid(row, params), "cohomology_dims", _pf(not problems),
                f"h={tuple(exp['h'])} z={exp.get('center_dim')}",
                f"h={h} z={inv.center_dim} unimodular={inv.unimodular}"
                + (f"; mismatch: {','.join(problems)}" if problems else ""),
                "; ".join(notes)))
    return out


# -- obstruction (4d) -----------------------------------------------------------

def _cert_row(scope, rid, g, alpha_text, expect_zero: bool, check: str) -> ReproductionRow:
    cert = obstruction_certificate(g, _one_form(alpha_text))
    computed = f"{cert.verdict} (dimZ3={cert.dim_z3}, dimZ4={cert.dim_z4})"
    if cert.witness:
        computed += f" witness {cert.witness[1]}*{cert.witness[0]}"
    return ReproductionRow(scope, rid, check, _pf(cert.identically_zero == expect_zero),
                           "identically-zero" if expect_zero else "non-zero", computed)


def _refined_row(scope, rid, g, spec) -> ReproductionRow:
    rootd = spec.get("rootd")
    pairs = [(_one_form(a, rootd), _one_form(b, rootd)) for a, b in spec["pairs"]]
    target = _one_form(spec["target"], rootd)
    try:
        rep = refined_metric_obstruction(g, pairs, target)
        return ReproductionRow(scope, rid, "refined_metric_obstruction", "PASS", "identities hold",
                               f"identities hold; {rep.conclusion}")
    except IdentityFails as exc:
        return ReproductionRow(scope, rid, "refined_metric_obstruction", "FAIL", "identities hold", str(exc))


def _prop33_case_ii(row: "CatalogRow") -> bool:
    return not row.expected["unimodular"] and row.id not in HF_R2_EXTRA


def run_prop33(cat: "Catalog", **_) -> List[ReproductionRow]:
    out = []
    rows = _four_d_rows(cat)
    for row in rows:
        for params in row.sample_dicts:
            g4 = cat.presentation(row.family, params)
            out.append(_cert_row("prop-3.3", _sid(row, params) + "+R2", direct_sum(g4, R2), "e4", True,
                                 "obstruction_certificate (i)"))
    for row in rows:
        if not _prop33_case_ii(row):
            continue
        for params in row.sample_dicts:
            g4 = cat.presentation(row.family, params)
            out.append(_cert_row("prop-3.3", _sid(row, params) + "+r2", direct_sum(g4, _r2(cat)), "e4", True,
                                 "obstruction_certificate (ii)"))
    for row in rows:
        spec = row.refined_obstruction
        if not spec:
            continue
        for params in row.sample_dicts:
            g = direct_sum(cat.presentation(row.family, params), cat.presentation(spec["summand"]))
            out.append(_refined_row("prop-3.3", _sid(row, params) + "+" + spec["summand"], g, spec))
    return out


# -- existence theorems ---------------------------------------------------------

def _no_basis_certificate(g) -> Optional[str]:
    for i in range(1, 7):
        if obstruction_certificate(g, KForm.monomial(6, (i,))).identically_zero:
            return f"e{i}"
    return None


def predict_hf_r2(row: "CatalogRow", unimodular: bool) -> bool:
    if row.id in HF_R2_EXTRA:
        return True
    return unimodular and row.id not in HF_R2_EXCLUDED


def run_theorem_4d(cat: "Catalog", **_) -> List[ReproductionRow]:
    out = []
    b_rows = None
    for row in _four_d_rows(cat):
        for params in row.sample_dicts:
            g4 = cat.presentation(row.family, params)
            sid = _sid(row, params)
            unimodular = structural_invariants(g4).unimodular
            predicted = predict_hf_r2(row, unimodular)
            g = direct_sum(g4, _r2(cat))
            if predicted != bool(row.expected["hf_r2"]):
                out.append(ReproductionRow("theorem-4d", sid + "+r2", "existence rule vs table", "FAIL",
                                           f"hf={row.expected['hf_r2']}", f"rule gives hf={predicted}"))
                continue
            if predicted:
                entry = cat.instantiate(row.family, params)
                evid = [pair_report(cat, ex, a, p)[1].verdict for ex in cat.examples
                        for a, p in ex.algebras if a == f"{row.family}+r2" and p == entry.summands[0][1]]
                via = ""
                if not evid and row.id in VIA_B:
                    if b_rows is None:
                        b_rows = [pair_report(cat, ex, a, p)[1].verdict for ex in cat.examples for a, p in ex.algebras
                                  if a == "B+r2"]
                    evid = b_rows
                    via = "example on B+r2 (isomorphic for suitable beta)"
                blocked = _no_basis_certificate(g)
                ok = bool(evid) and all(evid) and blocked is None
                comp = (f"{len(evid)} half-flat example pair(s) verified" if evid and all(evid)
                        else "no verified example")
                comp += "; no basis one-form certifies" if blocked is None else f"; {blocked} certifies"
                out.append(ReproductionRow("theorem-4d", sid + "+r2", "existence", _pf(ok), "hf", comp, via))
            elif row.refined_obstruction and row.refined_obstruction.get("summand") == "r2":
                out.append(_refined_row("theorem-4d", sid + "+r2", g, row.refined_obstruction))
            else:
                out.append(_cert_row("theorem-4d", sid + "+r2", g, "e4", True, "non-existence"))
            out.append(_cert_row("theorem-4d", sid + "+R2", direct_sum(g4, R2), "e4", True, "non-existence"))
    for ex in cat.examples:
        for a, p in ex.algebras:
            if a == "r2+r2+r2":
                out.append(verify_pair(cat, ex, a, p))
                out[-1].scope = "theorem-4d"
    return out


def predict_hf_5d(cat: "Catalog", family: str, params, h: Sequence[int]) -> bool:
    rule = cat.five_dim_rule
    nil = cat.families[family]["nilradical"]

    def listed(entries):
        for name, point in entries:
            if name == family and (point is None or all(params.get(k) == Fraction(v) for k, v in point.items())):
                return True
        return False

    if h[-1] == 1:
        if listed(rule["unimodular_exceptions"]):
            return False
        if nil == "self":
            return True
        if nil in rule["four_dim_nilradicals"]:
            return h[1] >= 2
        return nil in ("R3", "R2")
    return nil == "h3" or listed(rule["nonunimodular_hf"])


def run_theorem_5d(cat: "Catalog", **_) -> List[ReproductionRow]:
    out = []
    for row in _five_d_rows(cat):
        for params in row.sample_dicts:
            g5 = cat.presentation(row.family, params)
            h = cohomology_dims(g5)
            sid = _sid(row, params) + "+R"
            predicted = predict_hf_5d(cat, row.family, params, h)
            if predicted != bool(row.expected["hf_R"]) or list(h) != list(row.expected["h"]):
                out.append(ReproductionRow("theorem-5d", sid, "existence rule vs table", "FAIL",
                                           f"hf={row.expected['hf_R']} h={tuple(row.expected['h'])}",
                                           f"rule gives hf={predicted}, h={h}"))
                continue
            g = direct_sum(g5, R1)
            if predicted:
                out.append(_cert_row("theorem-5d", sid, g, "e5", False, "consistency (existence row)"))
            else:
                out.append(_cert_row("theorem-5d", sid, g, "e5", True, "non-existence"))
    for ex in cat.examples:
        for a, p in ex.algebras:
            fam = a.split("+")[0]
            if not fam.startswith("A5."):
                continue
            entry = cat.instantiate(a, p)
            h = cohomology_dims(cat.presentation(fam, entry.summands[0][1]))
            predicted = predict_hf_5d(cat, fam, entry.summands[0][1], h)
            _, rep, _ = pair_report(cat, ex, a, p)
            out.append(ReproductionRow("theorem-5d", f"{ex.name}:{entry.presentation.name}", "existence",
                                       _pf(predicted and rep.verdict), "hf",
                                       f"rule gives hf={predicted}; half-flat pair verified={rep.verdict}"))
    return out


# -- lambda sign ----------------------------------------------------------------

NONNEG = ("IdenticallyZero", "NonNegativeSampled")


def _lambda_row(scope, rid, g, want: Optional[str], samples, seed, check) -> ReproductionRow:
    """want: 'zero', 'nonneg', 'notzero-nonneg', 'witness', or None (INFO)."""
    res = lambda_sign_analysis(g, samples=samples, seed=seed)
    computed = f"{res.status} ({res.label}; violations={res.violations})"
    if want is None:
        status = "INFO"
    elif want == "zero":
        status = _pf(res.status == "IdenticallyZero")
    elif want == "nonneg":
        status = _pf(res.status in NONNEG and res.violations == 0)
    elif want == "nonneg-nonzero":
        status = _pf(res.status == "NonNegativeSampled" and res.violations == 0)
    elif want == "notzero":
        status = _pf(res.status != "IdenticallyZero")
    else:
        status = _pf(res.status == "IndefiniteWitness")
    return ReproductionRow(scope, rid, check, status, want or "-", computed)


def _example_witness_rows(cat, scope, prefix, samples, seed) -> List[ReproductionRow]:
    out = []
    for ex in cat.examples:
        for a, p in ex.algebras:
            if not a.startswith(prefix):
                continue
            entry = cat.instantiate(a, p)
            out.append(_lambda_row(scope, f"{ex.name}:{entry.presentation.name}", entry.presentation,
                                   "witness", samples, seed, "lambda_sign_analysis (example algebra)"))
    return out


def run_prop41(cat: "Catalog", samples: int = 10000, seed: int = 0, **_) -> List[ReproductionRow]:
    out = []
    for row in _four_d_rows(cat):
        exp = row.expected
        for params in row.sample_dicts:
            g4 = cat.presentation(row.family, params)
            sid = _sid(row, params)
            if exp["lambda_zero_R2"]:
                want = "zero"
            elif exp["lambda_nonneg_R2"]:
                want = "nonneg-nonzero"
            else:
                want = "notzero"
            out.append(_lambda_row("prop-4.1", sid + "+R2", direct_sum(g4, R2), want, samples, seed,
                                   "lambda_sign_analysis"))
            want = "nonneg" if exp["lambda_nonneg_r2"] else None
            out.append(_lambda_row("prop-4.1", sid + "+r2", direct_sum(g4, _r2(cat)), want, samples, seed,
                                   "lambda_sign_analysis"))
    for prefix in ("A4.", "B+", "r2+"):
        out += _example_witness_rows(cat, "prop-4.1", prefix, samples, seed)
    return out


def run_prop42(cat: "Catalog", samples: int = 10000, seed: int = 0, **_) -> List[ReproductionRow]:
    out = []
    for row in _five_d_rows(cat):
        if cat.families[row.family]["nilradical"] != "R4" or row.expected["h"][2] != 0:
            continue
        for params in row.sample_dicts:
            g = direct_sum(cat.presentation(row.family, params), R1)
            out.append(_lambda_row("prop-4.2", _sid(row, params) + "+R", g, "zero", samples, seed,
                                   "lambda_sign_analysis (ii)"))
    out += _example_witness_rows(cat, "prop-4.2", "A5.", samples, seed)
    return out


# -- soundness ------------------------------------------------------------------

def random_one_forms(count: int, seed: int) -> List[KForm]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        v = rng.integers(-20, 21, size=6)
        if v.any():
            out.append(KForm.one_form([Fraction(int(x)) for x in v]))
    return out


def run_soundness(cat: "Catalog", seed: int = 0, random_alphas: int = 10, **_) -> List[ReproductionRow]:
    """No algebra with a verified example may carry an identically-zero certificate."""
    out = []
    alphas = [KForm.monomial(6, (i,)) for i in range(1, 7)] + random_one_forms(random_alphas, seed)
    for ex in cat.examples:
        for a, p in ex.algebras:
            entry, rep, _ = pair_report(cat, ex, a, p)
            g = entry.presentation
            zero = [format_form(al) for al in alphas if obstruction_certificate(g, al).identically_zero]
            ok = rep.verdict and not zero
            comp = f"half-flat pair {'verified' if rep.verdict else 'FAILED'}; "
            comp += f"{len(alphas)} certificates non-zero" if not zero else "zero certificate for " + ", ".join(zero)
            out.append(ReproductionRow("soundness", f"{ex.name}:{g.name}", "example vs certificates", _pf(ok),
                                       "no identically-zero certificate", comp))
    return out


RUNNERS = {
    "examples": run_examples,
    "cohomology": run_cohomology,
    "prop-3.3": run_prop33,
    "theorem-4d": run_theorem_4d,
    "theorem-5d": run_theorem_5d,
    "prop-4.1": run_prop41,
    "prop-4.2": run_prop42,
    "soundness": run_soundness,
}


def reproduce(scope: str, catalog: "Optional[Catalog]" = None, samples: int = 10000, seed: int = 0
              ) -> List[ReproductionRow]:
    from . import load_catalog

    cat = catalog or load_catalog()
    if scope == "all":
        rows: List[ReproductionRow] = []
        for s in SCOPES:
            rows += RUNNERS[s](cat, samples=samples, seed=seed)
        return rows
    if scope not in RUNNERS:
        raise ValueError(f"unknown scope {scope!r}; expected one of {', '.join(SCOPES)} or all")
    return RUNNERS[scope](cat, samples=samples, seed=seed)


def summary(rows: Sequence[ReproductionRow]) -> Dict[str, int]:
    out = {"PASS": 0, "FAIL": 0, "INFO": 0}
    for r in rows:
        out[r.status] += 1
    return out

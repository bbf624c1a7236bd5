"""Machine-readable tables: presentations, annotated subcases and example pairs.

Layout of the data directory::

    algebras/<family>.alg     presentations in the ``.alg`` format
    annotations.json          families, subcase rows and expected values
    examples/<name>.pair      example (omega, rho) pairs with printed metrics

Catalog names are summands joined by ``+``: ``A4.1+r2``, ``A5.19+R``,
``r2+r2+r2``.  A summand is a family (``A4.5``), a subcase row id
(``A4.5/generic``), ``r2`` or an abelian ``R``/``R<n>``.
"""
from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .. import _expr
from ..exterior import KForm, parse_form
from ..lie import LieAlgebraPresentation, abelian, cohomology_dims, direct_sum, parse_presentation
from ..scalars import format_scalar, parse_scalar

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


class CatalogError(ValueError):
    pass


class UnknownAlgebra(CatalogError, LookupError):
    pass


class ExcludedParameter(CatalogError):
    pass


class PairFormatError(CatalogError):
    def __init__(self, message: str, lineno: Optional[int] = None):
        super().__init__(message if lineno is None else f"line {lineno}: {message}")
        self.lineno = lineno


Params = Dict[str, Fraction]


def _params(raw: Optional[Mapping[str, object]]) -> Params:
    out = {}
    for k, v in (raw or {}).items():
        out[k] = v if isinstance(v, Fraction) else parse_scalar(str(v))
    return out


@dataclass(frozen=True)
class CatalogRow:
    id: str
    family: str
    subcase: str
    condition: Optional[str]
    samples: Tuple[Tuple[Tuple[str, Fraction], ...], ...]
    expected: Mapping[str, object]
    derived: bool = False
    refined_obstruction: Optional[Mapping[str, object]] = None
    known_discrepancies: Mapping[str, str] = field(default_factory=dict)

    @property
    def sample_dicts(self) -> List[Params]:
        return [dict(s) for s in self.samples]

    @property
    def is_point(self) -> bool:
        return self.derived and not self.subcase.startswith("h=")

    def admits(self, params: Params) -> bool:
        if self.condition is not None:
            return bool(_expr.evaluate(self.condition, params))
        if self.is_point:
            return any(dict(s) == params for s in self.samples)
        return True


@dataclass
class ExamplePair:
    """One ``.pair`` file: a pair of forms shared by one or more algebras."""

    name: str
    algebras: List[Tuple[str, Params]]
    omega_text: str
    rho_text: str
    metric_text: str
    rootd: Optional[int] = None
    rho_scale: Fraction = Fraction(1)
    comments: List[str] = field(default_factory=list)

    def omega(self) -> KForm:
        return parse_form(self.omega_text, 6, 2, rootd=self.rootd)

    def rho(self, scaled: bool = True) -> KForm:
        rho = parse_form(self.rho_text, 6, 3, rootd=self.rootd)
        return rho.scale(self.rho_scale) if scaled and self.rho_scale != 1 else rho

    def expected_gram(self) -> List[List[object]]:
        """Gram matrix of the printed metric.

        A term ``c*ii`` is ``c (e^i)^2``; ``c*ij`` with i < j is the
        symmetric product ``c e^i.e^j`` and contributes c/2 to g_ij and g_ji.
        """
        g = [[Fraction(0)] * 6 for _ in range(6)]
        from ..exterior import parse_terms

        for idx, c in parse_terms(self.metric_text, rootd=self.rootd):
            if len(idx) != 2 or not all(1 <= i <= 6 for i in idx):
                raise PairFormatError(f"metric term {idx} is not a pair of indices")
            i, j = idx[0] - 1, idx[1] - 1
            if i == j:
                g[i][i] = g[i][i] + c
            else:
                g[i][j] = g[i][j] + c / 2
                g[j][i] = g[j][i] + c / 2
        return g


def parse_pair(text: str, name: str = "pair") -> ExamplePair:
    algebras: List[Tuple[str, Params]] = []
    fields: Dict[str, str] = {}
    rootd = None
    scale = Fraction(1)
    comments = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if raw.strip().startswith("#"):
            comments.append(raw.strip()[1:].strip())
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "algebra":
            parts = rest.split()
            if not parts:
                raise PairFormatError("empty algebra line", lineno)
            binds = {}
            for p in parts[1:]:
                k, eq, v = p.partition("=")
                if not eq:
                    raise PairFormatError(f"expected name=value, got {p!r}", lineno)
                try:
                    binds[k] = parse_scalar(v)
                except ValueError as exc:
                    raise PairFormatError(str(exc), lineno) from exc
            algebras.append((parts[0], binds))
        elif head == "rootd":
            if not rest.isdigit():
                raise PairFormatError(f"bad radicand {rest!r}", lineno)
            rootd = int(rest)
        elif head == "rho_scale":
            scale = parse_scalar(rest)
        elif head in ("omega", "rho"):
            fields[head] = rest.lstrip("=").strip()
        elif head == "metric":
            fields["metric"] = rest
        else:
            raise PairFormatError(f"unknown keyword {head!r}", lineno)
    for key in ("omega", "rho", "metric"):
        if key not in fields:
            raise PairFormatError(f"missing {key!r} line")
    if not algebras:
        raise PairFormatError("missing 'algebra' line")
    return ExamplePair(name, algebras, fields["omega"], fields["rho"], fields["metric"], rootd, scale, comments)


@dataclass
class CatalogEntry:
    name: str
    presentation: LieAlgebraPresentation
    summands: List[Tuple[str, Params]]
    row: Optional[CatalogRow]
    annotations: Dict[str, object]
    examples: List[ExamplePair]

    @property
    def family(self) -> str:
        return self.summands[0][0]


_ABELIAN = re.compile(r"^R(\d*)$")


class Catalog:
    def __init__(self, root: Optional[str] = None):
        self.root = root or DATA_DIR
        with open(os.path.join(self.root, "annotations.json")) as fh:
            doc = json.load(fh)
        self.families: Dict[str, Dict[str, object]] = doc["families"]
        self.five_dim_rule = doc.get("five_dim_rule", {})
        self.rows: List[CatalogRow] = []
        for r in doc["rows"]:
            samples = tuple(tuple(sorted(_params(s).items())) for s in r["samples"])
            self.rows.append(CatalogRow(
                id=r["id"], family=r["family"], subcase=r["subcase"], condition=r.get("condition"),
                samples=samples, expected=r["expected"], derived=r.get("derived", False),
                refined_obstruction=r.get("refined_obstruction"),
                known_discrepancies=r.get("known_discrepancies", {}),
            ))
        self._rows_by_id = {r.id: r for r in self.rows}
        self._texts: Dict[str, str] = {}
        self.examples: List[ExamplePair] = []
        exdir = os.path.join(self.root, "examples")
        for fn in sorted(os.listdir(exdir)):
            if fn.endswith(".pair"):
                with open(os.path.join(exdir, fn)) as fh:
                    self.examples.append(parse_pair(fh.read(), fn[:-5]))

    # -- presentations ------------------------------------------------------

    def family_text(self, family: str) -> str:
        if family not in self._texts:
            info = self.families.get(family)
            if info is None:
                raise UnknownAlgebra(f"unknown algebra {family!r}")
            with open(os.path.join(self.root, "algebras", info["file"])) as fh:
                self._texts[family] = fh.read()
        return self._texts[family]

    def default_params(self, family: str) -> Params:
        return dict(parse_presentation(self.family_text(family), check_jacobi=False).params)

    def rows_for(self, family: str) -> List[CatalogRow]:
        return [r for r in self.rows if r.family == family]

    def row(self, row_id: str) -> CatalogRow:
        try:
            return self._rows_by_id[row_id]
        except KeyError:
            raise UnknownAlgebra(f"unknown subcase {row_id!r}") from None

    def match_row(self, family: str, params: Params, h: Optional[Tuple[int, ...]] = None) -> Optional[CatalogRow]:
        """Subcase row containing ``params``; derived rows are matched by cohomology."""
        rows = self.rows_for(family)
        for r in rows:
            if r.is_point and r.admits(params):
                return r
        for r in rows:
            if r.is_point:
                continue
            if r.derived:
                if h is None:
                    h = cohomology_dims(self.presentation(family, params))
                if tuple(r.expected["h"]) == tuple(h):
                    return r
            elif r.admits(params):
                return r
        return None

    def presentation(self, family: str, params: Optional[Mapping[str, object]] = None) -> LieAlgebraPresentation:
        m = _ABELIAN.match(family)
        if m:
            return abelian(int(m.group(1) or 1), family)
        return _parse_cached(self.family_text(family), tuple(sorted(_params(params).items())))

    def is_family(self, name: str) -> bool:
        return name in self.families or bool(_ABELIAN.match(name))

    # -- names ----------------------------------------------------------------

    def names(self) -> List[str]:
        out = []
        for fam in self.families:
            if fam == "r2":
                continue
            if fam.startswith("A4.") or fam == "B":
                out += [f"{fam}+r2", f"{fam}+R2"]
            elif fam.startswith("A5."):
                out.append(f"{fam}+R")
        for ex in self.examples:
            for alg, _ in ex.algebras:
                if alg not in out:
                    out.append(alg)
        out.append("R6")
        return out

    def instantiate(self, name: str, overrides: Optional[Mapping[str, object]] = None) -> CatalogEntry:
        over = _params(overrides)
        parts = [p.strip() for p in name.split("+")]
        if not all(parts):
            raise UnknownAlgebra(f"malformed algebra name {name!r}")
        summands: List[Tuple[str, Params]] = []
        used = set()
        first_row = None
        pieces = []
        for k, part in enumerate(parts):
            fam, _, sub = part.partition("/")
            if not self.is_family(fam):
                raise UnknownAlgebra(f"unknown algebra {fam!r} in {name!r}")
            row = self.row(part) if sub else None
            params: Params = {}
            if not _ABELIAN.match(fam):
                params = self.default_params(fam)
                if row is not None and row.samples:
                    params.update(dict(row.samples[0]))
                for key, val in over.items():
                    if key in params:
                        params[key] = val
                        used.add(key)
            matched = self._check_domain(fam, params, row)
            if k == 0:
                first_row = matched
            summands.append((fam, params))
            pieces.append(self.presentation(fam, params))
        unused = set(over) - used
        if unused:
            raise ExcludedParameter(f"no summand of {name!r} declares parameter(s) {sorted(unused)}")
        g = pieces[0]
        for h in pieces[1:]:
            g = direct_sum(g, h)
        label = "+".join(self._summand_label(f, p) for f, p in summands)
        g = LieAlgebraPresentation(label, g.dim, g.differentials, g.params, g.rootd)
        canonical = "+".join(f for f, _ in summands)
        examples = [ex for ex in self.examples
                    if any(a == canonical and b == {k: v for f, p in summands for k, v in p.items()}
                           for a, b in ex.algebras)]
        ann = self._annotations(summands, first_row)
        return CatalogEntry(canonical, g, summands, first_row, ann, examples)

    def _summand_label(self, fam: str, params: Params) -> str:
        if not params:
            return fam
        return fam + "^{" + ",".join(format_scalar(v) for _, v in sorted(params.items())) + "}"

    def _check_domain(self, fam: str, params: Params, row: Optional[CatalogRow]) -> Optional[CatalogRow]:
        info = self.families.get(fam, {})
        dom = info.get("domain")
        if dom and not _expr.evaluate(dom, params):
            raise ExcludedParameter(f"{fam}: parameters {_fmt(params)} violate the domain {dom!r}")
        if row is not None:
            if not row.admits(params):
                raise ExcludedParameter(
                    f"{row.id}: parameters {_fmt(params)} are excluded by {row.condition or 'the sample set'!r}")
            if row.derived and not row.is_point:
                h = cohomology_dims(self.presentation(fam, params))
                if tuple(h) != tuple(row.expected["h"]):
                    raise ExcludedParameter(f"{row.id}: parameters {_fmt(params)} give h = {h}")
            return row
        if not self.rows_for(fam):
            return None
        found = self.match_row(fam, params)
        if found is None and any(r.condition for r in self.rows_for(fam)):
            raise ExcludedParameter(f"{fam}: parameters {_fmt(params)} lie in no tabulated subcase")
        return found

    def _annotations(self, summands, row: Optional[CatalogRow]) -> Dict[str, object]:
        fam, params = summands[0]
        info = self.families.get(fam, {})
        ann: Dict[str, object] = {}
        if "nilradical" in info:
            ann["nilradical"] = info["nilradical"]
        if row is not None:
            ann["row"] = row.id
            ann["expected"] = dict(row.expected)
            if row.known_discrepancies:
                ann["known_discrepancies"] = dict(row.known_discrepancies)
            rest = "+".join(f for f, _ in summands[1:])
            if row.refined_obstruction and row.refined_obstruction.get("summand") == rest:
                ann["refined_obstruction"] = dict(row.refined_obstruction)
        isos = [iso["text"] for iso in info.get("isomorphisms", []) if _expr.evaluate(iso["condition"], params)]
        if isos:
            ann["isomorphisms"] = isos
        return ann


def _fmt(params: Params) -> str:
    return ", ".join(f"{k}={format_scalar(v)}" for k, v in sorted(params.items())) or "(none)"


@lru_cache(maxsize=2048)
def _parse_cached(text: str, params: Tuple[Tuple[str, Fraction], ...]) -> LieAlgebraPresentation:
    return parse_presentation(text, dict(params))


@lru_cache(maxsize=4)
def load_catalog(root: Optional[str] = None) -> Catalog:
    return Catalog(root)


def catalog_instantiate(name: str, parameter_overrides: Optional[Mapping[str, object]] = None,
                        catalog: Optional[Catalog] = None) -> CatalogEntry:
    return (catalog or load_catalog()).instantiate(name, parameter_overrides)


def pair_entries(catalog: Catalog, pair: ExamplePair) -> List[CatalogEntry]:
    return [catalog.instantiate(name, params) for name, params in pair.algebras]


from .reproduce import SCOPES, ReproductionRow, reproduce, summary  # noqa: E402

__all__ = [
    "Catalog",
    "CatalogEntry",
    "CatalogError",
    "CatalogRow",
    "ExamplePair",
    "ExcludedParameter",
    "PairFormatError",
    "ReproductionRow",
    "SCOPES",
    "UnknownAlgebra",
    "catalog_instantiate",
    "load_catalog",
    "pair_entries",
    "parse_pair",
    "reproduce",
    "summary",
]

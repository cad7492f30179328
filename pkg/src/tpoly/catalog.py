"""Reference data for the ten mutation classes of T-polygons."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Sequence

from .laurent import LaurentPoly, PeriodFingerprint, period_coefficients, solve_mmlp
from .polygon import (
    FanoPolygon,
    SingularityContent,
    is_t_polygon,
    normal_vector_index,
    singularity_content,
    validate_fano,
)

ENV_VAR = "TPOLY_CATALOG"


class UnknownId(KeyError):
    pass


# -- closed-form series ------------------------------------------------------

LinearForm = dict[str, int]


def _evaluate(form: LinearForm, values: dict[str, int]) -> int:
    return sum(c * values[name] for name, c in form.items())


@dataclass(frozen=True)
class ClosedForm:
    """``exp(-c t) * sum t^E prod(N_i!) / prod(D_j!)`` over nonnegative indices.

    ``E``, ``N_i`` and ``D_j`` are integer linear forms in the summation
    indices. Terms violating a constraint (a linear form that must be
    nonnegative) are skipped.
    """

    prefactor: int
    indices: tuple[str, ...]
    exponent: LinearForm
    numerator: tuple[LinearForm, ...]
    denominator: tuple[LinearForm, ...]
    constraints: tuple[LinearForm, ...] = ()

    def __post_init__(self):
        if any(self.exponent.get(i, 0) <= 0 for i in self.indices):
            raise ValueError("every index must appear in the exponent with positive weight")

    def series(self, dmax: int) -> list[Fraction]:
        base = [Fraction(0)] * (dmax + 1)
        ranges = [range(dmax // self.exponent[i] + 1) for i in self.indices]
        for combo in product(*ranges):
            vals = dict(zip(self.indices, combo))
            e = _evaluate(self.exponent, vals)
            if e > dmax or any(_evaluate(c, vals) < 0 for c in self.constraints):
                continue
            den_args = [_evaluate(f, vals) for f in self.denominator]
            if any(a < 0 for a in den_args):
                continue
            num = math.prod(math.factorial(_evaluate(f, vals)) for f in self.numerator)
            den = math.prod(math.factorial(a) for a in den_args)
            base[e] += Fraction(num, den)
        if not self.prefactor:
            return base
        expo = [Fraction((-self.prefactor) ** j, math.factorial(j)) for j in range(dmax + 1)]
        return [sum(expo[j] * base[d - j] for j in range(d + 1)) for d in range(dmax + 1)]

    def to_json(self) -> dict:
        return {
            "prefactor": self.prefactor,
            "indices": list(self.indices),
            "exponent": self.exponent,
            "numerator": list(self.numerator),
            "denominator": list(self.denominator),
            "constraints": list(self.constraints),
        }

    @classmethod
    def from_json(cls, d: dict) -> "ClosedForm":
        return cls(
            int(d["prefactor"]),
            tuple(d["indices"]),
            dict(d["exponent"]),
            tuple(dict(f) for f in d["numerator"]),
            tuple(dict(f) for f in d["denominator"]),
            tuple(dict(f) for f in d.get("constraints", ())),
        )


# -- entries -----------------------------------------------------------------


@dataclass(frozen=True)
class Invariants:
    content: SingularityContent
    index: int
    boundary_points: int

    @classmethod
    def of(cls, P: FanoPolygon) -> "Invariants":
        return cls(singularity_content(P), normal_vector_index(P), len(P.boundary_points()))

    def to_json(self) -> dict:
        return {
            "t_cones": self.content.t_cones,
            "basket": [list(b) for b in self.content.basket],
            "normal_index": self.index,
            "boundary_points": self.boundary_points,
        }

    @classmethod
    def from_json(cls, d: dict) -> "Invariants":
        content = SingularityContent(d["t_cones"], tuple(tuple(b) for b in d["basket"]))
        return cls(content, d["normal_index"], d["boundary_points"])


@dataclass(frozen=True)
class ReferenceEntry:
    id: int
    polygon: FanoPolygon
    mmlp: LaurentPoly
    printed_sequence: tuple[int, ...]
    closed_form: ClosedForm
    invariants: Invariants
    fingerprint: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "polygon": self.polygon.to_json(),
            "mmlp": self.mmlp.to_json(),
            "printed_sequence": list(self.printed_sequence),
            "closed_form": self.closed_form.to_json(),
            "invariants": self.invariants.to_json(),
            "fingerprint": [str(c) for c in self.fingerprint],
        }

    @classmethod
    def from_json(cls, d: dict) -> "ReferenceEntry":
        return cls(
            int(d["id"]),
            FanoPolygon.from_json(d["polygon"]),
            LaurentPoly.from_json(d["mmlp"]),
            tuple(int(x) for x in d["printed_sequence"]),
            ClosedForm.from_json(d["closed_form"]),
            Invariants.from_json(d["invariants"]),
            tuple(int(x) for x in d["fingerprint"]),
        )


@dataclass(frozen=True)
class Catalog:
    entries: tuple[ReferenceEntry, ...]
    source: str = ""

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def get(self, id: int) -> ReferenceEntry:
        for e in self.entries:
            if e.id == id:
                return e
        raise UnknownId(id)

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]


def default_catalog_path() -> Path:
    return Path(str(resources.files("tpoly") / "data" / "catalog.json"))


def load_catalog(path: str | os.PathLike | None = None) -> Catalog:
    """Load from ``path``, else ``$TPOLY_CATALOG``, else the bundled file."""
    if path is None:
        path = os.environ.get(ENV_VAR) or default_catalog_path()
    with open(path) as fh:
        data = json.load(fh)
    entries = tuple(sorted((ReferenceEntry.from_json(d) for d in data), key=lambda e: e.id))
    return Catalog(entries, str(path))


_cached: Catalog | None = None


def default_catalog() -> Catalog:
    global _cached
    path = os.environ.get(ENV_VAR) or str(default_catalog_path())
    if _cached is None or _cached.source != path:
        _cached = load_catalog(path)
    return _cached


def build_entry(
    id: int,
    vertices: Sequence[Sequence[int]],
    printed: Sequence[int],
    closed_form: ClosedForm,
    horizon: int = 10,
    depth: int = 3,
) -> ReferenceEntry:
    """Derive the frozen fields of an entry from its polygon."""
    P = validate_fano(vertices)
    res = solve_mmlp(P, depth)
    if res.dimension:
        raise ValueError(f"entry {id}: MMLP not unique (dimension {res.dimension})")
    fp = period_coefficients(res.poly, horizon, "pruned").coefficients
    return ReferenceEntry(
        id, P, res.poly, tuple(printed), closed_form, Invariants.of(P), tuple(int(c) for c in fp)
    )


# -- queries -----------------------------------------------------------------


def closed_form_series(id: int, dmax: int, catalog: Catalog | None = None) -> list[Fraction]:
    catalog = catalog or default_catalog()
    try:
        entry = catalog.get(id)
    except UnknownId:
        raise UnknownId(f"no catalog entry with id {id}") from None
    return entry.closed_form.series(dmax)


def match_period(fp: PeriodFingerprint | Sequence, catalog: Catalog | None = None) -> int | None:
    """The unique entry whose stored fingerprint agrees with ``fp``."""
    catalog = catalog or default_catalog()
    coeffs = fp.coefficients if isinstance(fp, PeriodFingerprint) else tuple(fp)
    hits = []
    for e in catalog:
        n = min(len(coeffs), len(e.fingerprint))
        if all(Fraction(coeffs[i]) == e.fingerprint[i] for i in range(n)):
            hits.append(e.id)
    return hits[0] if len(hits) == 1 else None


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class Discrepancy:
    id: int
    kind: str
    detail: str
    degree: int | None = None
    expected: str | None = None
    actual: str | None = None

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


# kinds that mean the catalog itself is broken, as opposed to the printed
# reference data disagreeing with the oracle
HARD_KINDS = frozenset({"mmlp", "mmlp-not-unique", "fingerprint", "invariant", "not-t-polygon", "collision"})


@dataclass
class CatalogReport:
    discrepancies: list[Discrepancy] = field(default_factory=list)
    checked: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(d.kind in HARD_KINDS for d in self.discrepancies)

    def for_id(self, id: int) -> list[Discrepancy]:
        return [d for d in self.discrepancies if d.id == id]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": self.checked,
            "discrepancies": [d.to_json() for d in self.discrepancies],
        }


def _compare_sequences(id, kind, label, reference, oracle) -> list[Discrepancy]:
    out = []
    for d in range(min(len(reference), len(oracle))):
        if Fraction(reference[d]) != oracle[d]:
            out.append(
                Discrepancy(
                    id, kind, f"{label} coefficient of t^{d} differs from the constant-term oracle",
                    d, str(reference[d]), str(oracle[d]),
                )
            )
    return out


def validate_catalog(catalog: Catalog | None = None, depth: int = 3, distinct_horizon: int = 8) -> CatalogReport:
    """Re-derive every entry and compare against printed and closed-form data."""
    catalog = catalog or default_catalog()
    report = CatalogReport()
    for e in catalog:
        report.checked.append(e.id)
        P = e.polygon
        if not is_t_polygon(P):
            report.discrepancies.append(Discrepancy(e.id, "not-t-polygon", f"{P} has R-cones"))
            continue
        inv = Invariants.of(P)
        if inv != e.invariants:
            report.discrepancies.append(
                Discrepancy(e.id, "invariant", "stored invariants differ",
                            expected=json.dumps(e.invariants.to_json()), actual=json.dumps(inv.to_json()))
            )
        res = solve_mmlp(P, depth)
        if res.dimension:
            report.discrepancies.append(
                Discrepancy(e.id, "mmlp-not-unique", f"solution space of dimension {res.dimension}")
            )
        if res.poly != e.mmlp:
            report.discrepancies.append(
                Discrepancy(e.id, "mmlp", "stored MMLP differs from the solver",
                            expected=str(e.mmlp), actual=str(res.poly))
            )
        oracle = period_coefficients(res.poly, len(e.fingerprint) - 1, "pruned").coefficients
        report.discrepancies += _compare_sequences(e.id, "fingerprint", "stored fingerprint", e.fingerprint, oracle)
        report.discrepancies += _compare_sequences(e.id, "printed", "printed", e.printed_sequence, oracle)
        closed = e.closed_form.series(len(oracle) - 1)
        report.discrepancies += _compare_sequences(e.id, "closed-form", "closed form", closed, oracle)
    seen: dict[tuple, int] = {}
    for e in catalog:
        key = e.fingerprint[: distinct_horizon + 1]
        if key in seen:
            report.discrepancies.append(
                Discrepancy(e.id, "collision", f"fingerprint agrees with entry {seen[key]} up to t^{distinct_horizon}")
            )
        seen[key] = e.id
    return report

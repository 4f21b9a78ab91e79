"""Corpus ingestion: knot records combining diagram data, declared
metadata, and computed invariants.

Records come from a JSON file (one top-level array of objects, field
names as in KnotRecord).  Loading validates the schema, enriches every
record, and cross-checks declared values against computed ones: a record
whose declared Alexander polynomial disagrees with its diagram, braid, or
composite construction is rejected.  Class flags are tri-state: True,
False, or None for unknown; unknown never drives a downstream rule.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .alexander import (
    JONES_CROSSING_BUDGET,
    alexander_polynomial,
    connected_sum_delta,
    determinant_invariant,
    jones_polynomial,
    satellite_delta,
)
from .diagram import BraidWord, DiagramError, PDCode, braid_to_pd, parse_braid, parse_pd, seifert_circles
from .laurent import LaurentPoly, format_poly, parse_poly


class CorpusError(ValueError):
    """Raised for schema violations, dangling references, or declared
    values that contradict computed ones."""


FLAG_NAMES = (
    "alternating",
    "toroidally_alternating",
    "fibred",
    "two_bridge",
    "montesinos",
    "small",
    "free",
    "simple",
    "unknot",
    "no_winding_zero_companion",
    "hyperbolic",
    "lo_double_cover",
    "lspace_double_cover",
)


@dataclass(frozen=True)
class Flags:
    """Tri-state knot class flags; None means unknown."""

    alternating: bool | None = None
    toroidally_alternating: bool | None = None
    fibred: bool | None = None
    two_bridge: bool | None = None
    montesinos: bool | None = None
    small: bool | None = None
    free: bool | None = None
    simple: bool | None = None
    unknot: bool | None = None
    no_winding_zero_companion: bool | None = None
    hyperbolic: bool | None = None
    lo_double_cover: bool | None = None
    lspace_double_cover: bool | None = None

    def get(self, name: str) -> bool | None:
        return getattr(self, name)

    def as_dict(self) -> dict[str, bool]:
        return {f.name: v for f in fields(self) if (v := getattr(self, f.name)) is not None}


@dataclass(frozen=True)
class KnotRecord:
    """One knot: input data, declared metadata, and computed invariants."""

    name: str
    diagram: PDCode | None = None
    braid: BraidWord | None = None
    delta: LaurentPoly | None = None
    determinant: int | None = None
    jones: LaurentPoly | None = None
    genus_lower: int | None = None
    genus_upper: int | None = None
    genus_exact: int | None = None
    ghat: int | None = None
    volume: str | None = None
    flags: Flags = field(default_factory=Flags)
    sum_of_simple: bool | None = None
    mutant_class: str | None = None
    connected_sum_of: tuple[str, ...] | None = None
    satellite_of: tuple[str, str, int] | None = None
    enriched: bool = False

    @property
    def is_metadata_only(self) -> bool:
        return self.diagram is None and self.braid is None

    def summands(self) -> tuple[str, ...]:
        """Prime decomposition as recorded: a record without
        connected_sum_of counts as the singleton multiset of itself."""
        return self.connected_sum_of if self.connected_sum_of else (self.name,)


@dataclass(frozen=True)
class Corpus:
    """Name-indexed, enriched knot records."""

    records: tuple[KnotRecord, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_name", {r.name: r for r in self.records})

    def __iter__(self):
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def get(self, name: str) -> KnotRecord:
        try:
            return self._by_name[name]
        except KeyError:
            raise CorpusError(f"unknown knot name {name!r}") from None

    def names(self) -> list[str]:
        return sorted(self._by_name)


def normalize_volume(text: str) -> str:
    """Volumes are trusted metadata compared at fixed precision 1e-8."""
    try:
        value = Decimal(text)
    except InvalidOperation as exc:
        raise CorpusError(f"volume {text!r} is not a decimal string") from exc
    if value < 0:
        raise CorpusError(f"volume {text!r} is negative")
    return format(value.quantize(Decimal("0.00000001")), "f")


_RECORD_KEYS = {
    "name", "diagram", "braid", "delta", "determinant", "jones",
    "genus_lower", "genus_upper", "genus_exact", "ghat", "volume",
    "flags", "sum_of_simple", "mutant_class", "connected_sum_of", "satellite_of",
}


def record_from_json(obj: dict) -> KnotRecord:
    if not isinstance(obj, dict):
        raise CorpusError(f"corpus entry is not an object: {obj!r}")
    unknown = set(obj) - _RECORD_KEYS
    if unknown:
        raise CorpusError(f"unknown record fields {sorted(unknown)} in {obj.get('name')!r}")
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        raise CorpusError(f"record is missing a name: {obj!r}")

    def expect(key, kind):
        value = obj.get(key)
        if value is not None and not isinstance(value, kind):
            raise CorpusError(f"{name}: field {key!r} has the wrong type")
        return value

    diagram = None
    if (pd_text := expect("diagram", str)) is not None:
        try:
            diagram = parse_pd(pd_text)
        except DiagramError as exc:
            raise CorpusError(f"{name}: {exc}") from exc
    braid = None
    if (braid_text := expect("braid", str)) is not None:
        try:
            braid = parse_braid(braid_text)
        except DiagramError as exc:
            raise CorpusError(f"{name}: {exc}") from exc

    def poly(key):
        text = expect(key, str)
        if text is None:
            return None
        try:
            return parse_poly(text)
        except ValueError as exc:
            raise CorpusError(f"{name}: bad polynomial in {key!r}: {exc}") from exc

    flags_obj = expect("flags", dict) or {}
    for key, value in flags_obj.items():
        if key not in FLAG_NAMES:
            raise CorpusError(f"{name}: unknown flag {key!r}")
        if not isinstance(value, bool):
            raise CorpusError(f"{name}: flag {key!r} must be true or false, not {value!r}")

    sum_of_simple = obj.get("sum_of_simple")
    if sum_of_simple is not None and not isinstance(sum_of_simple, bool):
        raise CorpusError(f"{name}: sum_of_simple must be true or false")

    connected_sum_of = None
    if (summands := obj.get("connected_sum_of")) is not None:
        if not isinstance(summands, list) or len(summands) < 2 or not all(isinstance(s, str) for s in summands):
            raise CorpusError(f"{name}: connected_sum_of must list at least two names")
        connected_sum_of = tuple(summands)

    satellite_of = None
    if (sat := obj.get("satellite_of")) is not None:
        if (
            not isinstance(sat, list) or len(sat) != 3
            or not isinstance(sat[0], str) or not isinstance(sat[1], str)
            or not isinstance(sat[2], int) or sat[2] < 0
        ):
            raise CorpusError(f"{name}: satellite_of must be [pattern, companion, winding >= 0]")
        satellite_of = (sat[0], sat[1], sat[2])

    def integer(key):
        value = obj.get(key)
        if value is not None and (not isinstance(value, int) or isinstance(value, bool) or value < 0):
            raise CorpusError(f"{name}: field {key!r} must be a nonnegative integer")
        return value

    volume = expect("volume", str)
    return KnotRecord(
        name=name,
        diagram=diagram,
        braid=braid,
        delta=poly("delta"),
        determinant=integer("determinant"),
        jones=poly("jones"),
        genus_lower=integer("genus_lower"),
        genus_upper=integer("genus_upper"),
        genus_exact=integer("genus_exact"),
        ghat=integer("ghat"),
        volume=normalize_volume(volume) if volume is not None else None,
        flags=Flags(**flags_obj),
        sum_of_simple=sum_of_simple,
        mutant_class=expect("mutant_class", str),
        connected_sum_of=connected_sum_of,
        satellite_of=satellite_of,
    )


# Implications applied as a monotone closure over definite flags.  Each
# pair (antecedent, consequent) upgrades unknown to True and reports a
# contradiction when the consequent is already False.
_IMPLICATIONS = (
    ("fibred", "free"),
    ("two_bridge", "alternating"),
    ("two_bridge", "small"),
    ("small", "free"),
    ("unknot", "fibred"),
    ("unknot", "free"),
    ("unknot", "small"),
)


def close_flags(flags: Flags, name: str) -> Flags:
    values = {f.name: getattr(flags, f.name) for f in fields(flags)}
    for _ in range(4):
        changed = False
        for antecedent, consequent in _IMPLICATIONS:
            if values[antecedent] is True:
                if values[consequent] is False:
                    raise CorpusError(
                        f"{name}: flag contradiction: {antecedent} implies {consequent}"
                    )
                if values[consequent] is None:
                    values[consequent] = True
                    changed = True
        if not changed:
            return Flags(**values)
    raise CorpusError(f"{name}: flag closure did not reach a fixed point")


def _merge(name: str, what: str, declared, computed):
    """Declared and computed values must agree exactly when both exist."""
    if declared is not None and computed is not None and declared != computed:
        shown_d = format_poly(declared) if isinstance(declared, LaurentPoly) else declared
        shown_c = format_poly(computed) if isinstance(computed, LaurentPoly) else computed
        raise CorpusError(f"{name}: declared {what} {shown_d} != computed {shown_c}")
    return computed if computed is not None else declared


def enrich_record(record: KnotRecord, siblings: dict[str, KnotRecord] | None = None) -> KnotRecord:
    """Fill computed invariants, cross-check declared data, and close the
    flag implications.  Composite records (connected sums, satellites)
    need their referenced siblings already enriched."""
    siblings = siblings or {}
    name = record.name

    diagram = record.diagram
    if diagram is None and record.braid is not None:
        try:
            diagram = braid_to_pd(record.braid)
        except DiagramError as exc:
            raise CorpusError(f"{name}: {exc}") from exc

    delta = record.delta
    if diagram is not None:
        delta = _merge(name, "delta", delta, alexander_polynomial(diagram))
    if record.connected_sum_of is not None:
        product = LaurentPoly.const(1)
        for summand in record.connected_sum_of:
            product = connected_sum_delta(product, _sibling(siblings, name, summand).delta)
        delta = _merge(name, "delta (connected sum)", delta, product)
    if record.satellite_of is not None:
        pattern, companion, winding = record.satellite_of
        composite = satellite_delta(
            _sibling(siblings, name, pattern).delta,
            _sibling(siblings, name, companion).delta,
            winding,
        )
        delta = _merge(name, "delta (satellite)", delta, composite)
    if delta is None:
        raise CorpusError(f"{name}: metadata-only record must declare delta")
    if delta != delta.normalize():
        raise CorpusError(f"{name}: declared delta must be normalized")
    if abs(int(delta.eval_int(1))) != 1:
        raise CorpusError(f"{name}: delta(1) = {delta.eval_int(1)}, expected +-1")
    coeffs = delta.coefficients()
    top = delta.max_degree
    if any(coeffs.get(e, 0) != coeffs.get(top - e, 0) for e in range(top + 1)):
        raise CorpusError(f"{name}: delta {format_poly(delta)} is not palindromic")

    determinant = _merge(name, "determinant", record.determinant, determinant_invariant(delta))

    jones = record.jones
    if diagram is not None and diagram.crossing_count <= JONES_CROSSING_BUDGET:
        jones = _merge(name, "jones", jones, jones_polynomial(diagram))

    if top % 2 != 0:
        raise CorpusError(f"{name}: delta has odd degree {top}")
    genus_lower = _merge(name, "genus_lower", record.genus_lower, top // 2)

    genus_upper = record.genus_upper
    if diagram is not None:
        genus_upper = _merge(name, "genus_upper", genus_upper, seifert_circles(diagram)[1])

    genus_exact = record.genus_exact
    if genus_exact is None and genus_upper is not None and genus_lower == genus_upper:
        genus_exact = genus_lower

    flags = record.flags
    if not delta.is_one() and flags.unknot is None:
        flags = replace(flags, unknot=False)
    if flags.unknot is True:
        if not delta.is_one():
            raise CorpusError(f"{name}: unknot flag with delta {format_poly(delta)}")
        genus_exact = _merge(name, "genus_exact", genus_exact, 0)
    flags = close_flags(flags, name)

    ghat = record.ghat
    if (flags.fibred is True or flags.two_bridge is True) and genus_exact is not None:
        ghat = _merge(name, "ghat", ghat, genus_exact)
    if flags.fibred is True and delta.leading_coefficient != 1:
        raise CorpusError(
            f"{name}: fibred knots have monic delta, got leading coefficient "
            f"{delta.leading_coefficient}"
        )

    if genus_exact is not None:
        if genus_lower > genus_exact:
            raise CorpusError(f"{name}: genus_lower {genus_lower} > genus_exact {genus_exact}")
        if genus_upper is not None and genus_exact > genus_upper:
            raise CorpusError(f"{name}: genus_exact {genus_exact} > genus_upper {genus_upper}")
        if ghat is not None and ghat < genus_exact:
            raise CorpusError(f"{name}: ghat {ghat} < genus_exact {genus_exact}")
    elif genus_upper is not None and genus_lower > genus_upper:
        raise CorpusError(f"{name}: genus_lower {genus_lower} > genus_upper {genus_upper}")

    volume = normalize_volume(record.volume) if record.volume is not None else None

    return replace(
        record,
        diagram=diagram,
        delta=delta,
        determinant=determinant,
        jones=jones,
        genus_lower=genus_lower,
        genus_upper=genus_upper,
        genus_exact=genus_exact,
        ghat=ghat,
        volume=volume,
        flags=flags,
        enriched=True,
    )


def _sibling(siblings: dict[str, KnotRecord], name: str, ref: str) -> KnotRecord:
    other = siblings.get(ref)
    if other is None:
        raise CorpusError(f"{name}: dangling cross-reference to {ref!r}")
    if not other.enriched or other.delta is None:
        raise CorpusError(f"{name}: referenced record {ref!r} is not enriched")
    return other


def genus_interval(record: KnotRecord) -> tuple[int, int | None]:
    """[exact, exact] when the genus is known; otherwise the
    [degree-bound, diagram-bound] interval, unbounded above for
    metadata-only records."""
    if not record.enriched:
        raise CorpusError(f"{record.name}: record is not enriched")
    if record.genus_exact is not None:
        return record.genus_exact, record.genus_exact
    return record.genus_lower, record.genus_upper


def load_corpus(path: str | Path) -> Corpus:
    """Load, validate, and enrich a corpus file."""
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"corpus file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CorpusError(f"corpus file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise CorpusError(f"corpus file {path} must hold a top-level array")
    return build_corpus([record_from_json(obj) for obj in data])


def build_corpus(records: list[KnotRecord]) -> Corpus:
    by_name: dict[str, KnotRecord] = {}
    for record in records:
        if record.name in by_name:
            raise CorpusError(f"duplicate record name {record.name!r}")
        by_name[record.name] = record

    for record in records:
        for ref in (record.connected_sum_of or ()) + tuple(record.satellite_of[:2] if record.satellite_of else ()):
            if ref not in by_name:
                raise CorpusError(f"{record.name}: dangling cross-reference to {ref!r}")

    mutant_members: dict[str, int] = {}
    for record in records:
        if record.mutant_class is not None:
            mutant_members[record.mutant_class] = mutant_members.get(record.mutant_class, 0) + 1
    for label, count in mutant_members.items():
        if count < 2:
            raise CorpusError(f"mutant class {label!r} has no peer record")

    enriched: dict[str, KnotRecord] = {}
    pending = list(records)
    while pending:
        progressed = False
        remaining = []
        for record in pending:
            refs = (record.connected_sum_of or ()) + tuple(
                record.satellite_of[:2] if record.satellite_of else ()
            )
            if all(ref in enriched for ref in refs):
                enriched[record.name] = enrich_record(record, enriched)
                progressed = True
            else:
                remaining.append(record)
        if not progressed:
            names = sorted(r.name for r in remaining)
            raise CorpusError(f"circular composite references among {names}")
        pending = remaining
    return Corpus(tuple(enriched[r.name] for r in records))

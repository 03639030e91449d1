"""
Knot Catalog and Identification.

Holds reference knots with their invariant fingerprints and matches computed
invariants against single entries and connected sums of up to three entries.
Also predicts the knot type of a triple from the structural families that are
known in closed form.

Features:
    - Bundled catalog (schema v1) merged with an optional user file
    - Torus entries generated from closed forms
    - Braid-backed entries cross-checked (and Jones-completed) at load time
    - Identification up to sign, t -> 1/t and global mirror, refined by Jones
    - Structural predictions: torus case, two strands, trivial family, periodicity

Usage:
    from src.analyzers.catalog import load_catalog, identify

    catalog = load_catalog()
    result = identify(alexander(word), jones(word), writhe(word), catalog)
    print(result.primary)
"""

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import gcd
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple

import sympy as sp
from pydantic import BaseModel, ValidationError, field_validator, model_validator

from src.analyzers.braidgen import BraidWord, braid_word
from src.analyzers.invariants import (
    RolfsenCoeffs,
    alexander,
    alexander_equivalent,
    jones,
    rolfsen_coeffs,
    torus_alexander,
    torus_jones,
)
from src.core.config import get_settings
from src.core.errors import KnotError, SchemaError
from src.core.params import canonical_params
from src.core.polynomials import (
    centered,
    degree_span,
    evaluate,
    from_json,
    inverted,
    t,
    to_json,
    to_text,
)

logger = logging.getLogger(__name__)

BUNDLED_CATALOG = Path(__file__).resolve().parent.parent / "data" / "catalog.json"
SCHEMA_VERSION = "v1"

Symmetry = Literal[
    "reversible",
    "fully_amphicheiral",
    "negative_amphicheiral",
    "chiral",
    "positive_amphicheiral",
]
MIRROR_DISTINCT = ("reversible", "chiral")
OBSTRUCTED = ("negative_amphicheiral", "chiral")

TORUS_FAMILY = [(2, n) for n in range(5, 14, 2)] + [(3, 4), (3, 5), (3, 7), (4, 5)]


class BraidModel(BaseModel):
    """Explicit signed word on a strand count, or a triple whose canonical braid is generated."""
    strands: Optional[int] = None
    word: Optional[List[int]] = None
    triple: Optional[Tuple[int, int, int]] = None

    @model_validator(mode="after")
    def _word_or_triple(self) -> "BraidModel":
        if self.triple is None and (self.strands is None or self.word is None):
            raise ValueError("braid needs strands and word, or a triple")
        if self.triple is not None and self.word is not None:
            raise ValueError("braid takes either a word or a triple, not both")
        return self

    def to_word(self) -> BraidWord:
        if self.triple is not None:
            return braid_word(canonical_params(*self.triple))
        return BraidWord.from_signed(self.strands, self.word)


class EntryModel(BaseModel):
    """One catalog record as stored in JSON."""
    name: str
    alexander: List[int]
    jones: Optional[Dict[str, int]] = None
    symmetry: Symmetry
    fibered: Optional[bool] = None
    aliases: List[str] = []
    braid: Optional[BraidModel] = None
    provenance: Optional[str] = None

    @field_validator("alexander")
    @classmethod
    def _unit_at_one(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("alexander must list at least a0")
        total = value[0] + 2 * sum(value[1:])
        if total not in (1, -1):
            raise ValueError(f"alexander evaluates to {total} at t=1, expected +1 or -1")
        return value

    @field_validator("jones")
    @classmethod
    def _integer_exponents(cls, value):
        if value is not None:
            for key in value:
                int(key)
        return value


class CatalogFile(BaseModel):
    version: Literal["v1"] = SCHEMA_VERSION
    entries: List[EntryModel]


@dataclass(frozen=True)
class CatalogEntry:
    """
    A reference knot and its fingerprint.

    Attributes:
        name (str): Table name, e.g. "4_1", "T(3,4)", "14N27120"
        alexander (RolfsenCoeffs): Rolfsen coefficients
        jones (sympy.Expr, optional): Jones polynomial of the listed chirality
        symmetry (str): Symmetry type
        fibered (bool, optional): Known fiberedness
        aliases (Tuple[str, ...]): Alternative names
        provenance (str, optional): Where the data comes from
        cross_checked (bool): Alexander verified against a braid by the engine
    """
    name: str
    alexander: RolfsenCoeffs
    jones: Optional[sp.Expr] = None
    symmetry: str = "reversible"
    fibered: Optional[bool] = None
    aliases: Tuple[str, ...] = ()
    provenance: Optional[str] = None
    cross_checked: bool = False

    @property
    def alexander_poly(self) -> sp.Expr:
        poly = self.alexander.to_poly()
        return poly if evaluate(poly, 1) == 1 else sp.expand(-poly)

    @property
    def has_mirror(self) -> bool:
        return self.symmetry in MIRROR_DISTINCT

    @property
    def is_unknot(self) -> bool:
        return self.alexander.a == (1,) and self.name == "unknot"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "aliases": list(self.aliases),
            "alexander": self.alexander.to_list(),
            "jones": to_json(self.jones) if self.jones is not None else None,
            "symmetry": self.symmetry,
            "fibered": self.fibered,
            "provenance": self.provenance,
            "cross_checked": self.cross_checked,
        }


@dataclass(frozen=True)
class Candidate:
    name: str
    strength: Literal["alexander_only", "alexander_and_jones"]
    factors: Tuple[str, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "strength": self.strength, "factors": list(self.factors)}


@dataclass
class Identification:
    candidates: List[Candidate] = field(default_factory=list)
    obstruction_note: Optional[str] = None

    @property
    def primary(self) -> Optional[str]:
        return self.candidates[0].name if self.candidates else None

    @property
    def names(self) -> List[str]:
        return [c.name for c in self.candidates]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "candidates": [c.to_dict() for c in self.candidates],
            "primary": self.primary,
            "obstruction_note": self.obstruction_note,
        }


def _shifted_poly(alex: sp.Expr) -> sp.Poly:
    """Centered Alexander times t^degree, as an ordinary polynomial."""
    poly = centered(alex)
    low, _ = degree_span(poly)
    return sp.Poly(sp.expand(poly * t ** (-low)), t, domain="ZZ")


def _coeff_key(poly: sp.Poly) -> Tuple[int, ...]:
    return tuple(int(c) for c in poly.all_coeffs())


class Catalog:
    """
    Immutable collection of CatalogEntry keyed by name.

    Methods:
        get: Entry by name or alias
        merged: New catalog with another catalog's entries overriding by name
        sums_matching: Multisets of up to three entries whose Alexander product matches
    """

    def __init__(self, entries: Sequence[CatalogEntry] = ()):
        self._entries: Dict[str, CatalogEntry] = {}
        for entry in entries:
            self._entries[entry.name] = entry
        self._aliases = {
            alias: entry.name for entry in self._entries.values() for alias in entry.aliases
        }
        self._products: Optional[Dict[Tuple[int, ...], List[Tuple[str, ...]]]] = None

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, name: str) -> bool:
        return name in self._entries or name in self._aliases

    def __iter__(self):
        return iter(self._entries.values())

    @property
    def names(self) -> List[str]:
        return list(self._entries)

    def get(self, name: str) -> Optional[CatalogEntry]:
        return self._entries.get(self._aliases.get(name, name))

    def merged(self, other: "Catalog") -> "Catalog":
        return Catalog(list(self._entries.values()) + list(other))

    def _product_table(self) -> Dict[Tuple[int, ...], List[Tuple[str, ...]]]:
        if self._products is None:
            table: Dict[Tuple[int, ...], List[Tuple[str, ...]]] = {}
            summands = sorted(e.name for e in self if not e.is_unknot)
            polys = {name: _shifted_poly(self._entries[name].alexander_poly) for name in summands}
            for size in (1, 2, 3):
                for combo in combinations_with_replacement(summands, size):
                    poly = sp.Poly(1, t, domain="ZZ")
                    for name in combo:
                        poly = poly * polys[name]
                    table.setdefault(_coeff_key(poly), []).append(combo)
            self._products = table
        return self._products

    def sums_matching(self, alex: sp.Expr) -> List[Tuple[str, ...]]:
        target = centered(alex)
        if evaluate(target, 1) == -1:
            target = sp.expand(-target)
        return list(self._product_table().get(_coeff_key(_shifted_poly(target)), []))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "version": SCHEMA_VERSION,
            "entries": [e.to_dict() for e in self],
        }


def _entry_from_model(model: EntryModel, index: int) -> CatalogEntry:
    jones_poly = from_json(model.jones) if model.jones is not None else None
    provenance = model.provenance
    if model.braid is not None:
        try:
            word = model.braid.to_word()
            computed = alexander(word)
        except KnotError as e:
            raise SchemaError(f"braid is not a usable knot braid: {e}", index, "braid")
        listed = RolfsenCoeffs(tuple(model.alexander)).to_poly()
        if not alexander_equivalent(computed, listed):
            raise SchemaError(
                f"braid has Alexander {rolfsen_coeffs(computed)}, "
                f"entry lists {RolfsenCoeffs(tuple(model.alexander))}",
                index,
                "braid",
            )
        if word.strands <= get_settings().jones_max_strands:
            computed_jones = jones(word)
            if jones_poly is None:
                jones_poly = computed_jones
            elif computed_jones not in (jones_poly, inverted(jones_poly)):
                raise SchemaError("braid Jones disagrees with listed jones", index, "jones")
    return CatalogEntry(
        name=model.name,
        alexander=RolfsenCoeffs(tuple(model.alexander)),
        jones=jones_poly,
        symmetry=model.symmetry,
        fibered=model.fibered,
        aliases=tuple(model.aliases),
        provenance=provenance,
        cross_checked=model.braid is not None,
    )


def parse_catalog(text: str, source: str = "<string>") -> Catalog:
    """Parse catalog JSON (schema v1 object, or a bare entry array)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{source}: {e.msg}", line=e.lineno) from e
    if isinstance(data, list):
        data = {"version": SCHEMA_VERSION, "entries": data}
    try:
        parsed = CatalogFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = list(first["loc"])
        index = None
        if len(loc) >= 2 and loc[0] == "entries" and isinstance(loc[1], int):
            index = loc[1]
            loc = loc[2:]
        fieldname = ".".join(str(part) for part in loc) or None
        raise SchemaError(f"{source}: {first['msg']}", index=index, field=fieldname) from e

    seen = set()
    entries = []
    for index, model in enumerate(parsed.entries):
        if model.name in seen:
            raise SchemaError(f"{source}: duplicate name '{model.name}'", index, "name")
        seen.add(model.name)
        entries.append(_entry_from_model(model, index))
    return Catalog(entries)


def torus_entries() -> List[CatalogEntry]:
    out = []
    for a, b in TORUS_FAMILY:
        out.append(CatalogEntry(
            name=f"T({a},{b})",
            alexander=rolfsen_coeffs(torus_alexander(a, b)),
            jones=torus_jones(a, b),
            symmetry="reversible",
            fibered=True,
            provenance="closed form",
        ))
    return out


def load_catalog(path: Optional[str] = None) -> Catalog:
    """
    Bundled catalog plus generated torus entries, merged with a user file.

    User entries override bundled ones by name. Without an explicit path the
    KNOTS_CATALOG_PATH setting is used when present.
    """
    catalog = Catalog(torus_entries()).merged(_bundled_catalog())
    path = path or get_settings().catalog_path
    if path:
        user_path = Path(path)
        if not user_path.exists():
            raise SchemaError(f"catalog file {path} not found")
        catalog = catalog.merged(parse_catalog(user_path.read_text(), str(user_path)))
        logger.info(f"Merged user catalog {path}: {len(catalog)} entries")
    return catalog


@lru_cache(maxsize=1)
def _bundled_catalog() -> Catalog:
    catalog = parse_catalog(BUNDLED_CATALOG.read_text(), BUNDLED_CATALOG.name)
    logger.debug(f"Loaded bundled catalog: {len(catalog)} entries")
    return catalog


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    return load_catalog()


def _factor_label(name: str, mirrored: bool) -> str:
    return f"m({name})" if mirrored else name


def _sum_name(pattern: Sequence[Tuple[str, bool]]) -> str:
    ordered = sorted(pattern, key=lambda item: (item[0], item[1]))
    return " # ".join(_factor_label(n, m) for n, m in ordered)


def _mirror_patterns(
    combo: Tuple[str, ...], catalog: Catalog
) -> List[Tuple[Tuple[str, bool], ...]]:
    """Mirror choices for the chiral factors, one representative per global mirror."""
    choices = [
        (False, True) if catalog.get(name).has_mirror else (False,) for name in combo
    ]
    seen = set()
    patterns = []
    for flags in product(*choices):
        pattern = tuple(sorted(zip(combo, flags)))
        flipped = tuple(sorted(
            (n, (not f) if catalog.get(n).has_mirror else f) for n, f in pattern
        ))
        key = min(
            (sum(f for _, f in pattern), _sum_name(pattern)),
            (sum(f for _, f in flipped), _sum_name(flipped)),
        )
        if key in seen:
            continue
        seen.add(key)
        best = pattern if key[1] == _sum_name(pattern) else flipped
        patterns.append(best)
    return patterns


def _pattern_jones(pattern, catalog: Catalog) -> Optional[sp.Expr]:
    total = sp.Integer(1)
    for name, mirrored in pattern:
        poly = catalog.get(name).jones
        if poly is None:
            return None
        total = sp.expand(total * (inverted(poly) if mirrored else poly))
    return total


def identify(
    alex: sp.Expr,
    jones_poly: Optional[sp.Expr] = None,
    e: Optional[int] = None,
    catalog: Optional[Catalog] = None,
) -> Identification:
    """
    Catalog entries and connected sums of up to three entries matching Δ.

    Matching is up to overall sign and t -> 1/t for Alexander, and up to
    mirror for Jones. When the computed Jones and every factor's Jones are
    known, mirror patterns with the wrong Jones product are dropped and the
    rest are reported at alexander_and_jones strength.
    """
    catalog = catalog if catalog is not None else default_catalog()
    result = Identification()

    if centered(alex) in (1, -1):
        unknot = catalog.get("unknot")
        if unknot is not None:
            strength = "alexander_only"
            if jones_poly is not None and unknot.jones is not None:
                if jones_poly != unknot.jones:
                    unknot = None
                else:
                    strength = "alexander_and_jones"
            if unknot is not None:
                result.candidates.append(Candidate("unknot", strength, ("unknot",)))

    for combo in catalog.sums_matching(alex):
        for pattern in _mirror_patterns(combo, catalog):
            name = _sum_name(pattern)
            factors = tuple(_factor_label(n, m) for n, m in sorted(pattern))
            expected = _pattern_jones(pattern, catalog)
            if jones_poly is not None and expected is not None:
                if jones_poly not in (expected, inverted(expected)):
                    continue
                result.candidates.append(Candidate(name, "alexander_and_jones", factors))
            else:
                result.candidates.append(Candidate(name, "alexander_only", factors))

    rank = {"alexander_and_jones": 0, "alexander_only": 1}
    result.candidates.sort(key=lambda c: (rank[c.strength], len(c.factors), c.name))

    if result.candidates and all(
        len(c.factors) == 1 and catalog.get(c.factors[0]).symmetry in OBSTRUCTED
        for c in result.candidates
    ):
        result.obstruction_note = (
            "every candidate is negative amphicheiral or chiral, which a simple "
            "minimal knot cannot be; the identification is likely incomplete"
        )
        logger.warning(f"Obstruction: candidates {result.names} for {to_text(alex)}")
    logger.debug(f"identify {to_text(alex)} (writhe {e}): {result.names}")
    return result


@dataclass(frozen=True)
class Prediction:
    name: str
    reason: str

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "reason": self.reason}


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def predict_type(N: int, p: int, q: int) -> Optional[Prediction]:
    """
    Knot type forced by the structural families, when one applies.

    p is first reduced modulo lcm(N, 2q), which leaves the knot unchanged up
    to mirror; the roles of p and q may also be exchanged.
    """
    if p == q:
        return Prediction(f"T({N},{q})", "p = q gives a torus knot")
    if N == 2:
        return Prediction("unknot", "two strands with p != q close to the trivial knot")
    for a, b, note in ((p, q, ""), (q, p, " after exchanging p and q")):
        period = _lcm(N, 2 * b)
        if (a - b) % period == 0:
            return Prediction(
                f"T({N},{b})",
                f"p ≡ q (mod {period}){note}: periodic image of the torus case",
            )
        if (a - (N + b)) % period == 0:
            return Prediction(
                "unknot", f"p ≡ N+q (mod {period}){note}: trivial family"
            )
    return None

"""Furniture repository with attribute-filtered queries.

The catalog loads from a JSON array of item records; vocabularies (category,
style, material) are derived from the union of item attributes.  Queries are
deterministic: results are always ordered by (category, spec_id).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import PageOutOfRange, SchemaError, UnknownAttribute

PLACEMENT_CLASSES = ("floor", "ceiling")

# Categories that satisfy the seating design goal.
SEATING_CATEGORIES = frozenset({"sofa", "chair", "armchair", "stool"})

PAGE_SIZE = 6


@dataclass(frozen=True)
class FurnitureSpec:
    """One catalog entry: immutable attributes of a furniture model."""

    spec_id: str
    category: str
    style: str
    material: str
    dims: tuple[float, float, float]  # width, depth, height in meters
    placement_class: str
    display_name: str

    @property
    def footprint_dims(self) -> tuple[float, float]:
        return (self.dims[0], self.dims[1])

    @property
    def height(self) -> float:
        return self.dims[2]


@dataclass(frozen=True)
class CatalogFilter:
    """Attribute filter; unset fields match everything."""

    category: str | None = None
    style: str | None = None
    material: str | None = None

    def is_empty(self) -> bool:
        return self.category is None and self.style is None and self.material is None

    def matches(self, spec: FurnitureSpec) -> bool:
        if self.category is not None and spec.category != self.category:
            return False
        if self.style is not None and spec.style != self.style:
            return False
        if self.material is not None and spec.material != self.material:
            return False
        return True

    def describe(self) -> str:
        parts = [p for p in (self.style, self.material, self.category) if p]
        return " ".join(parts) if parts else "anything"


class Catalog:
    """Immutable furniture repository; safe for concurrent readers."""

    def __init__(self, specs: list[FurnitureSpec]):
        self._specs = sorted(specs, key=lambda s: (s.category, s.spec_id))
        self._by_id = {s.spec_id: s for s in self._specs}
        self.categories = tuple(sorted({s.category for s in self._specs}))
        self.styles = tuple(sorted({s.style for s in self._specs}))
        self.materials = tuple(sorted({s.material for s in self._specs}))

    def __len__(self) -> int:
        return len(self._specs)

    def __iter__(self):
        return iter(self._specs)

    def __contains__(self, spec_id: str) -> bool:
        return spec_id in self._by_id

    def spec(self, spec_id: str) -> FurnitureSpec:
        try:
            return self._by_id[spec_id]
        except KeyError:
            raise UnknownAttribute(f"unknown spec_id {spec_id!r}", spec_id=spec_id) from None

    def _check_filter(self, flt: CatalogFilter) -> None:
        if flt.category is not None and flt.category not in self.categories:
            raise UnknownAttribute(
                f"category {flt.category!r} is not in the catalog vocabulary",
                field="category",
                value=flt.category,
            )
        if flt.style is not None and flt.style not in self.styles:
            raise UnknownAttribute(
                f"style {flt.style!r} is not in the catalog vocabulary",
                field="style",
                value=flt.style,
            )
        if flt.material is not None and flt.material not in self.materials:
            raise UnknownAttribute(
                f"material {flt.material!r} is not in the catalog vocabulary",
                field="material",
                value=flt.material,
            )

    def query(self, flt: CatalogFilter) -> list[FurnitureSpec]:
        """Items matching every set filter field, ordered by (category, spec_id).

        Raises UnknownAttribute for a set field outside the vocabulary; an
        in-vocabulary filter that matches nothing returns an empty list.
        """
        self._check_filter(flt)
        return [s for s in self._specs if flt.matches(s)]

    def page(self, category: str, page_index: int, page_size: int = PAGE_SIZE) -> list[FurnitureSpec]:
        """Stable pagination over one category; the last page may be short."""
        if page_size < 1:
            raise PageOutOfRange("page size must be at least 1", page_size=page_size)
        items = self.query(CatalogFilter(category=category))
        start = page_index * page_size
        if page_index < 0 or start >= len(items):
            raise PageOutOfRange(
                f"page {page_index} out of range for {len(items)} items",
                page_index=page_index,
                item_count=len(items),
            )
        return items[start : start + page_size]

    def page_count(self, category: str, page_size: int = PAGE_SIZE) -> int:
        items = self.query(CatalogFilter(category=category))
        return (len(items) + page_size - 1) // page_size


def _require(record: dict, key: str, index: int):
    if key not in record:
        raise SchemaError(f"item {index} is missing field {key!r}", index=index, field=key)
    return record[key]


def load_catalog(source) -> Catalog:
    """Build a catalog from a JSON document (path, file object, or list).

    Raises SchemaError naming the offending item for missing fields,
    non-positive dims, bad placement classes, or duplicate spec ids.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            records = json.load(fh)
    elif hasattr(source, "read"):
        records = json.load(source)
    else:
        records = source
    if not isinstance(records, list):
        raise SchemaError("catalog document must be a JSON array")

    specs: list[FurnitureSpec] = []
    seen: set[str] = set()
    for i, rec in enumerate(records):
        if not isinstance(rec, dict):
            raise SchemaError(f"item {i} is not an object", index=i)
        spec_id = str(_require(rec, "spec_id", i))
        if spec_id in seen:
            raise SchemaError(f"duplicate spec_id {spec_id!r} at item {i}", index=i, spec_id=spec_id)
        seen.add(spec_id)
        dims_raw = _require(rec, "dims", i)
        if not isinstance(dims_raw, (list, tuple)) or len(dims_raw) != 3:
            raise SchemaError(f"item {i} dims must be [w, d, h]", index=i, spec_id=spec_id)
        dims = tuple(float(v) for v in dims_raw)
        if any(v <= 0 for v in dims):
            raise SchemaError(f"item {i} has non-positive dims", index=i, spec_id=spec_id)
        placement = str(_require(rec, "placement_class", i))
        if placement not in PLACEMENT_CLASSES:
            raise SchemaError(
                f"item {i} has unknown placement class {placement!r}", index=i, spec_id=spec_id
            )
        specs.append(
            FurnitureSpec(
                spec_id=spec_id,
                category=str(_require(rec, "category", i)),
                style=str(_require(rec, "style", i)),
                material=str(_require(rec, "material", i)),
                dims=dims,
                placement_class=placement,
                display_name=str(_require(rec, "display_name", i)),
            )
        )
    return Catalog(specs)


def default_catalog_path() -> Path:
    return Path(__file__).parent / "data" / "catalog.json"


def load_default_catalog() -> Catalog:
    return load_catalog(default_catalog_path())

"""Dataset (JSON) and individuals (CSV) file formats.

Objects file::

    {"variables": [{"name": "hair", "type": "categorical", "domain": ["brown", "black"]},
                   {"name": "age", "type": "numeric", "domain": [0, 120]}],
     "objects": [{"name": "a1", "values": {"hair": ["brown"], "age": [[25, 45]]}}]}

Individuals file: CSV whose header is the variable names followed by a
``cluster`` column, optionally preceded by an ``id`` column. Empty cells are
missing values.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Optional, Sequence

from .errors import DatasetError
from .model import (
    CATEGORICAL,
    NUMERIC,
    Assertion,
    IndividualTable,
    KnowledgeBase,
    ValueSet,
    VariableSpec,
    is_missing,
)


def _require(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise DatasetError(f"{where}: missing field {key!r}")
    return obj[key]


def variable_from_json(d: dict, where: str = "variables") -> VariableSpec:
    name = _require(d, "name", where)
    kind = _require(d, "type", f"{where}[{name!r}]")
    domain = _require(d, "domain", f"{where}[{name!r}]")
    if kind not in (CATEGORICAL, NUMERIC):
        raise DatasetError(f"{where}[{name!r}].type: expected 'categorical' or 'numeric'")
    return VariableSpec(str(name), kind, tuple(domain))


def variable_to_json(v: VariableSpec) -> dict:
    return {"name": v.name, "type": v.kind, "domain": list(v.domain)}


def value_from_json(raw, spec: VariableSpec, where: str) -> ValueSet:
    if not isinstance(raw, list):
        raise DatasetError(f"{where}: expected a list")
    if spec.is_categorical:
        return ValueSet.categorical(raw)
    pieces = []
    for iv in raw:
        if not (isinstance(iv, list) and len(iv) == 2):
            raise DatasetError(f"{where}: numeric values are lists of [lo, hi] pairs")
        pieces.append(iv)
    return ValueSet.numeric(pieces)


def kb_from_json(doc: dict) -> KnowledgeBase:
    variables = [
        variable_from_json(v, f"variables[{i}]")
        for i, v in enumerate(_require(doc, "variables", "dataset"))
    ]
    assertions = []
    for i, obj in enumerate(_require(doc, "objects", "dataset")):
        name = _require(obj, "name", f"objects[{i}]")
        values = _require(obj, "values", f"objects[{name!r}]")
        if not isinstance(values, dict):
            raise DatasetError(f"objects[{name!r}].values: expected a mapping")
        unknown = set(values) - {v.name for v in variables}
        if unknown:
            raise DatasetError(f"objects[{name!r}].values: unknown variables {sorted(unknown)}")
        vs = []
        for spec in variables:
            where = f"objects[{name!r}].values.{spec.name}"
            if spec.name not in values:
                raise DatasetError(f"{where}: missing")
            vs.append(value_from_json(values[spec.name], spec, where))
        assertions.append(Assertion(str(name), vs))
    return KnowledgeBase(variables, assertions)


def kb_to_json(kb: KnowledgeBase, metadata: Optional[dict] = None) -> dict:
    doc = {
        "variables": [variable_to_json(v) for v in kb.variables],
        "objects": [
            {
                "name": a.name,
                "values": {v.name: val.to_json() for v, val in zip(kb.variables, a.values)},
            }
            for a in kb.assertions
        ],
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def read_kb(path) -> KnowledgeBase:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise DatasetError(f"{path}: invalid JSON ({e})") from None
    return kb_from_json(doc)


def write_kb(kb: KnowledgeBase, path, metadata: Optional[dict] = None) -> None:
    Path(path).write_text(json.dumps(kb_to_json(kb, metadata), indent=2) + "\n")


def _parse_cell(text: str, spec: VariableSpec, where: str):
    if text == "":
        return None
    if spec.is_categorical:
        return text
    try:
        return float(text)
    except ValueError:
        raise DatasetError(f"{where}: {text!r} is not a number") from None


def _format_cell(x) -> str:
    if is_missing(x):
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def read_individuals(path, variables: Sequence[VariableSpec]) -> IndividualTable:
    """Parse an individuals CSV against known variable specs (matched by name)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(f"{path}: empty file") from None
        has_id = bool(header) and header[0] == "id"
        names = header[1:] if has_id else header
        if not names or names[-1] != "cluster":
            raise DatasetError(f"{path}: last column must be 'cluster'")
        names = names[:-1]
        by_name = {v.name: v for v in variables}
        missing = [n for n in names if n not in by_name]
        if missing:
            raise DatasetError(f"{path}: unknown variables {missing}")
        specs = [by_name[n] for n in names]
        rows, clusters, ids = [], [], []
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            if len(rec) != len(header):
                raise DatasetError(f"{path}:{lineno}: expected {len(header)} cells")
            if has_id:
                ids.append(rec[0])
                rec = rec[1:]
            rows.append(
                tuple(
                    _parse_cell(c, s, f"{path}:{lineno}:{s.name}")
                    for c, s in zip(rec[:-1], specs)
                )
            )
            clusters.append(rec[-1])
    return IndividualTable(specs, rows, clusters, ids if has_id else None)


def write_individuals(t: IndividualTable, path, with_ids: bool = True) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        head = list(t.variable_names) + ["cluster"]
        w.writerow((["id"] + head) if with_ids else head)
        for rid, row, c in zip(t.ids, t.rows, t.clusters):
            cells = [_format_cell(x) for x in row] + [c]
            w.writerow(([rid] + cells) if with_ids else cells)


def infer_variables(path, overrides: Optional[dict] = None) -> list:
    """Guess variable specs from an individuals CSV.

    A column whose non-empty cells all parse as numbers becomes numeric with
    the observed ``[min, max]`` domain; other columns become categorical
    with the sorted observed labels. ``overrides`` maps names to explicit
    ``{"type": ..., "domain": ...}`` entries.
    """
    overrides = overrides or {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        data = [rec for rec in reader if rec]
    start = 1 if header and header[0] == "id" else 0
    names = header[start:-1]
    out = []
    for j, name in enumerate(names, start=start):
        if name in overrides and "domain" in overrides[name]:
            o = overrides[name]
            out.append(VariableSpec(name, o["type"], tuple(o["domain"])))
            continue
        cells = [rec[j] for rec in data if rec[j] != ""]
        kind = overrides.get(name, {}).get("type")
        if kind is None:
            try:
                [float(c) for c in cells]
                kind = NUMERIC if cells else CATEGORICAL
            except ValueError:
                kind = CATEGORICAL
        if kind == NUMERIC:
            vals = [float(c) for c in cells]
            out.append(VariableSpec(name, NUMERIC, (min(vals), max(vals))))
        else:
            out.append(VariableSpec(name, CATEGORICAL, tuple(sorted(set(cells))) or ("?",)))
    return out

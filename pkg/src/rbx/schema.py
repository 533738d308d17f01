"""The shared JSON interchange format.

A document is UTF-8 JSON with top-level keys:

    field      "Q" or {"Fp": p}
    algebra    {dim, c}                 structure constants, innermost
                                        index is the output coefficient
    bimodule   {dim, left, right}       left: dA x dM x dM, right: dM x dA x dM
    maps       {name: matrix}           source-dim x target-dim, row wise
    cochains   {name: {arity, inputs, output, tensor}}
    dendriform {dim, succ, prec}
    ns         {dim, succ, prec, vee}

Scalars are integers or canonical fraction strings "num/den".  Parsing
followed by serialization is bit-exact: the writer emits sorted keys,
two-space indentation and canonical scalar forms.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import Algebra, Bimodule, canonical_bimodule
from .cochains import Cochain
from .errors import InputError
from .fields import field_from_name, field_to_name
from .structures import Dendriform, NSAlgebra


@dataclass
class Document:
    field: object
    algebra: Algebra | None = None
    bimodule: Bimodule | None = None
    maps: dict = dc_field(default_factory=dict)
    cochains: dict = dc_field(default_factory=dict)
    dendriform: Dendriform | None = None
    ns: NSAlgebra | None = None


def _parse_tensor(field, raw, shape, path):
    arr = np.empty(shape, dtype=object)
    try:
        flat = np.asarray(raw, dtype=object)
    except ValueError as exc:
        raise InputError(f"{path}: ragged tensor ({exc})") from exc
    if flat.shape != shape:
        raise InputError(f"{path}: expected shape {shape}, got {flat.shape}")
    for idx in np.ndindex(shape):
        try:
            arr[idx] = field.parse(flat[idx])
        except InputError as exc:
            pos = "".join(f"[{i}]" for i in idx)
            raise InputError(f"{path}{pos}: {exc}") from exc
    return arr


def format_tensor(field, arr):
    if arr.ndim == 1:
        return [field.format(x) for x in arr]
    return [format_tensor(field, sub) for sub in arr]


def _require(mapping, key, path, kind=dict):
    if key not in mapping:
        raise InputError(f"{path}: missing key {key!r}")
    value = mapping[key]
    if kind is int:
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise InputError(f"{path}.{key}: expected a positive integer")
    return value


def load_document(text: str) -> Document:
    """Parse a schema document from a JSON string."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"JSON parse error at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}") from exc
    return document_from_obj(raw)


def load_raw_algebra(text: str):
    """Parse just the field and the raw structure-constant tensor, without
    the associativity gate; used by verbs that judge associativity."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"JSON parse error at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}") from exc
    if not isinstance(raw, dict) or "field" not in raw:
        raise InputError("document root must be an object with a 'field' key")
    field = field_from_name(raw["field"])
    if "algebra" not in raw:
        raise InputError("document has no 'algebra' key")
    entry = raw["algebra"]
    dim = _require(entry, "dim", "algebra", int)
    c = _parse_tensor(field, _require(entry, "c", "algebra"),
                      (dim, dim, dim), "algebra.c")
    return field, c


def document_from_obj(raw) -> Document:
    if not isinstance(raw, dict):
        raise InputError("document root must be a JSON object")
    if "field" not in raw:
        raise InputError("document is missing the 'field' key")
    field = field_from_name(raw["field"])
    doc = Document(field)

    if "algebra" in raw:
        entry = raw["algebra"]
        dim = _require(entry, "dim", "algebra", int)
        c = _parse_tensor(field, _require(entry, "c", "algebra"),
                          (dim, dim, dim), "algebra.c")
        doc.algebra = Algebra(field, c)

    if "bimodule" in raw:
        if doc.algebra is None:
            raise InputError("bimodule requires an algebra")
        entry = raw["bimodule"]
        dim = _require(entry, "dim", "bimodule", int)
        dA = doc.algebra.dim
        left = _parse_tensor(field, _require(entry, "left", "bimodule"),
                             (dA, dim, dim), "bimodule.left")
        right = _parse_tensor(field, _require(entry, "right", "bimodule"),
                              (dim, dA, dim), "bimodule.right")
        doc.bimodule = Bimodule(doc.algebra, left, right, check=False)

    for name, raw_mat in raw.get("maps", {}).items():
        mat = np.asarray(raw_mat, dtype=object)
        if mat.ndim != 2:
            raise InputError(f"maps.{name}: expected a matrix")
        doc.maps[name] = _parse_tensor(field, raw_mat, mat.shape, f"maps.{name}")

    for name, entry in raw.get("cochains", {}).items():
        path = f"cochains.{name}"
        arity = _require(entry, "arity", path, int)
        inputs = _require(entry, "inputs", path, str)
        output = _require(entry, "output", path, str)
        if inputs not in ("A", "B") or output not in ("A", "M", "B"):
            raise InputError(f"{path}: inputs must be 'A' or 'B', output 'A', 'M' or 'B'")
        in_dim = _space_dim(doc, inputs, path)
        out_dim = _space_dim(doc, output, path)
        tensor = _parse_tensor(field, _require(entry, "tensor", path),
                               (in_dim,) * arity + (out_dim,), f"{path}.tensor")
        doc.cochains[name] = {"arity": arity, "inputs": inputs,
                              "output": output, "tensor": tensor}

    if "dendriform" in raw:
        entry = raw["dendriform"]
        dim = _require(entry, "dim", "dendriform", int)
        shape = (dim, dim, dim)
        doc.dendriform = Dendriform(
            field,
            _parse_tensor(field, _require(entry, "succ", "dendriform"), shape,
                          "dendriform.succ"),
            _parse_tensor(field, _require(entry, "prec", "dendriform"), shape,
                          "dendriform.prec"))

    if "ns" in raw:
        entry = raw["ns"]
        dim = _require(entry, "dim", "ns", int)
        shape = (dim, dim, dim)
        doc.ns = NSAlgebra(
            field,
            _parse_tensor(field, _require(entry, "succ", "ns"), shape, "ns.succ"),
            _parse_tensor(field, _require(entry, "prec", "ns"), shape, "ns.prec"),
            _parse_tensor(field, _require(entry, "vee", "ns"), shape, "ns.vee"))

    return doc


def _space_dim(doc, space, path):
    if space == "A":
        if doc.algebra is None:
            raise InputError(f"{path}: space 'A' needs an algebra")
        return doc.algebra.dim
    if space == "M":
        if doc.bimodule is None:
            raise InputError(f"{path}: space 'M' needs a bimodule")
        return doc.bimodule.dim
    if doc.algebra is None:
        raise InputError(f"{path}: space 'B' needs an algebra")
    return doc.algebra.dim + (doc.bimodule.dim if doc.bimodule else 0)


def document_to_obj(doc: Document) -> dict:
    field = doc.field
    obj = {"field": field_to_name(field)}
    if doc.algebra is not None:
        obj["algebra"] = {"dim": doc.algebra.dim,
                          "c": format_tensor(field, doc.algebra.c)}
    if doc.bimodule is not None:
        obj["bimodule"] = {"dim": doc.bimodule.dim,
                           "left": format_tensor(field, doc.bimodule.left),
                           "right": format_tensor(field, doc.bimodule.right)}
    if doc.maps:
        obj["maps"] = {name: format_tensor(field, mat)
                       for name, mat in doc.maps.items()}
    if doc.cochains:
        obj["cochains"] = {
            name: {"arity": entry["arity"], "inputs": entry["inputs"],
                   "output": entry["output"],
                   "tensor": format_tensor(field, entry["tensor"])}
            for name, entry in doc.cochains.items()}
    if doc.dendriform is not None:
        obj["dendriform"] = {"dim": doc.dendriform.dim,
                             "succ": format_tensor(field, doc.dendriform.succ),
                             "prec": format_tensor(field, doc.dendriform.prec)}
    if doc.ns is not None:
        obj["ns"] = {"dim": doc.ns.dim,
                     "succ": format_tensor(field, doc.ns.succ),
                     "prec": format_tensor(field, doc.ns.prec),
                     "vee": format_tensor(field, doc.ns.vee)}
    return obj


def dump_document(doc: Document) -> str:
    """Canonical serialization: sorted keys, two-space indent, newline."""
    return json.dumps(document_to_obj(doc), indent=2, sort_keys=True) + "\n"


def document_digest(doc: Document) -> str:
    """Stable content digest of the parsed document."""
    return hashlib.sha256(dump_document(doc).encode()).hexdigest()


def raw_digest(text: str) -> str:
    """Digest of a document that may not pass semantic validation:
    canonical dump of the raw JSON object."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"JSON parse error at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}") from exc
    return hashlib.sha256(
        (json.dumps(raw, indent=2, sort_keys=True) + "\n").encode()).hexdigest()


def cochain_object(doc: Document, name: str) -> Cochain:
    """Materialize a named cochain entry with inputs 'A'."""
    entry = _named(doc.cochains, name, "cochain")
    if entry["inputs"] != "A":
        raise InputError(f"cochain {name!r} must have inputs 'A'")
    if doc.algebra is None:
        raise InputError("document has no algebra")
    if entry["output"] == "M":
        if doc.bimodule is None:
            raise InputError("document has no bimodule")
        module = doc.bimodule
    elif entry["output"] == "A":
        module = canonical_bimodule(doc.algebra)
    else:
        raise InputError(f"cochain {name!r} must land in 'A' or 'M'")
    return Cochain(doc.algebra, module, entry["tensor"])


def multimap_tensor(doc: Document, name: str):
    """Materialize a named cochain entry with inputs == output as a raw
    MultiMap tensor (on A or on A (+) M)."""
    entry = _named(doc.cochains, name, "cochain")
    if entry["inputs"] != entry["output"]:
        raise InputError(
            f"cochain {name!r} is not a multimap: inputs {entry['inputs']!r} "
            f"differ from output {entry['output']!r}")
    return entry["tensor"]


def named_map(doc: Document, name: str):
    return _named(doc.maps, name, "map")


def _named(mapping, name, what):
    if name not in mapping:
        known = ", ".join(sorted(mapping)) or "none"
        raise InputError(f"no {what} named {name!r} in the document "
                         f"(available: {known})")
    return mapping[name]

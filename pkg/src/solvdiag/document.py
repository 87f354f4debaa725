"""JSON documents describing an algebra with named forms, flags, subspaces.

The format is deliberately small: a basis of distinct names, sparse bracket
triples (antisymmetry implied), named two-forms as sparse pair lists, named
flags and subspaces as lists of coefficient maps, and a metadata block that
can carry expected values for regression checks.  All rationals are exact:
JSON integers or strings "p/q".
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .algebra import LieAlgebra, SolvdiagError, Subspace, validate_algebra
from .flags import Flag
from .forms import TwoForm


class ParseError(SolvdiagError):
    code = "PARSE_ERROR"


class SchemaError(SolvdiagError):
    code = "SCHEMA_ERROR"


class RationalFormatError(SolvdiagError):
    code = "RATIONAL_FORMAT_ERROR"


_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/(\d+))?$")

_TOP_KEYS = {"name", "dim", "basis", "brackets", "two_forms", "flags", "subspaces", "metadata"}
_META_KEYS = {"source", "notes", "expected"}
_EXPECTED_KEYS = {"check", "args", "value", "tag", "agrees"}
_TAGS = ("printed", "derived")


def parse_rational(value: object, where: str) -> Fraction:
    """Exact rational from a JSON scalar: int, or string 'p/q'."""
    if isinstance(value, bool):
        raise RationalFormatError(f"{where}: boolean is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m is None:
            raise RationalFormatError(f"{where}: {value!r} is not an integer or 'p/q'")
        if m.group(1) is not None and int(m.group(1)) == 0:
            raise RationalFormatError(f"{where}: {value!r} has a zero denominator")
        return Fraction(value)
    raise RationalFormatError(f"{where}: {value!r} is not an exact rational")


def rational_repr(value) -> object:
    """Canonical JSON spelling: int when integral, else 'p/q'."""
    f = Fraction(value)
    if f.denominator == 1:
        return int(f)
    return f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class ExpectedEntry:
    """One recorded value: a check id, its arguments, and the value itself.

    tag says where the value comes from ("printed" for transcribed values,
    "derived" for recomputed ones); agrees=False marks a transcription that
    is known to differ from what the implementation computes.
    """

    check: str
    args: Mapping[str, Any]
    value: Any
    tag: str
    agrees: bool = True


@dataclass(frozen=True)
class Metadata:
    source: str = ""
    notes: tuple[str, ...] = ()
    expected: tuple[ExpectedEntry, ...] = ()


@dataclass(frozen=True)
class Document:
    name: str
    algebra: LieAlgebra
    two_forms: Mapping[str, TwoForm] = field(default_factory=dict)
    flags: Mapping[str, Flag] = field(default_factory=dict)
    subspaces: Mapping[str, Subspace] = field(default_factory=dict)
    metadata: Metadata = field(default_factory=Metadata)


def _expect(obj: object, kind: type, where: str):
    if kind is int and isinstance(obj, bool):
        raise SchemaError(f"{where}: expected {kind.__name__}, got bool")
    if not isinstance(obj, kind):
        raise SchemaError(f"{where}: expected {kind.__name__}, got {type(obj).__name__}")
    return obj


def _parse_vector(raw: object, names: tuple[str, ...], where: str) -> list[Fraction]:
    _expect(raw, dict, where)
    vec = [Fraction(0)] * len(names)
    idx = {nm: i for i, nm in enumerate(names)}
    for key, val in raw.items():
        if key not in idx:
            raise SchemaError(f"{where}: unknown basis symbol {key!r}")
        vec[idx[key]] = parse_rational(val, f"{where}[{key!r}]")
    return vec


def _parse_member_list(raw: object, names: tuple[str, ...], where: str) -> Subspace:
    _expect(raw, list, where)
    vectors = [_parse_vector(v, names, f"{where}[{i}]") for i, v in enumerate(raw)]
    return Subspace.span(vectors, len(names))


def parse_document(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    _expect(raw, dict, "document")
    for key in raw:
        if key not in _TOP_KEYS:
            raise SchemaError(f"document: unknown field {key!r}")
    for key in ("name", "dim", "basis", "brackets"):
        if key not in raw:
            raise SchemaError(f"document: missing field {key!r}")

    name = _expect(raw["name"], str, "name")
    dim = _expect(raw["dim"], int, "dim")
    if dim < 0:
        raise SchemaError("dim: must be nonnegative")
    basis_raw = _expect(raw["basis"], list, "basis")
    names = tuple(_expect(nm, str, f"basis[{i}]") for i, nm in enumerate(basis_raw))
    if len(names) != dim:
        raise SchemaError(f"basis: expected {dim} names, got {len(names)}")
    if len(set(names)) != len(names):
        raise SchemaError("basis: names must be distinct")
    if any(not nm for nm in names):
        raise SchemaError("basis: names must be nonempty")

    brackets_raw = _expect(raw["brackets"], list, "brackets")
    entries: dict[tuple[str, str], dict[str, Fraction]] = {}
    seen_pairs: set[frozenset[str]] = set()
    for i, triple in enumerate(brackets_raw):
        where = f"brackets[{i}]"
        _expect(triple, list, where)
        if len(triple) != 3:
            raise SchemaError(f"{where}: expected [x, y, coefficients]")
        x = _expect(triple[0], str, f"{where}[0]")
        y = _expect(triple[1], str, f"{where}[1]")
        for nm in (x, y):
            if nm not in names:
                raise SchemaError(f"{where}: unknown basis symbol {nm!r}")
        if x == y:
            raise SchemaError(f"{where}: bracket of {x!r} with itself")
        pair = frozenset((x, y))
        if pair in seen_pairs:
            raise SchemaError(f"{where}: duplicate bracket for ({x!r}, {y!r})")
        seen_pairs.add(pair)
        coeffs = _expect(triple[2], dict, f"{where}[2]")
        entries[(x, y)] = {
            k: parse_rational(v, f"{where}[2][{k!r}]") for k, v in coeffs.items()
        }
        for k in entries[(x, y)]:
            if k not in names:
                raise SchemaError(f"{where}: unknown basis symbol {k!r}")
    try:
        algebra = LieAlgebra.from_brackets(names, entries)
    except ValueError as exc:
        raise SchemaError(f"brackets: {exc}") from exc
    report = validate_algebra(algebra)
    if not report.ok:
        raise SchemaError("brackets: structure constants violate the Jacobi identity")

    index = {nm: i for i, nm in enumerate(names)}

    two_forms: dict[str, TwoForm] = {}
    for fname, pairs_raw in _expect(raw.get("two_forms", {}), dict, "two_forms").items():
        where = f"two_forms[{fname!r}]"
        _expect(pairs_raw, list, where)
        pairs = []
        seen_fp: set[frozenset[str]] = set()
        for i, item in enumerate(pairs_raw):
            w = f"{where}[{i}]"
            _expect(item, list, w)
            if len(item) != 3:
                raise SchemaError(f"{w}: expected [x, y, value]")
            x = _expect(item[0], str, f"{w}[0]")
            y = _expect(item[1], str, f"{w}[1]")
            for nm in (x, y):
                if nm not in index:
                    raise SchemaError(f"{w}: unknown basis symbol {nm!r}")
            if x == y:
                raise SchemaError(f"{w}: pairing of {x!r} with itself")
            fp = frozenset((x, y))
            if fp in seen_fp:
                raise SchemaError(f"{w}: duplicate entry for ({x!r}, {y!r})")
            seen_fp.add(fp)
            pairs.append((index[x], index[y], parse_rational(item[2], f"{w}[2]")))
        two_forms[fname] = TwoForm.from_pairs(dim, pairs)

    flags: dict[str, Flag] = {}
    for gname, chain_raw in _expect(raw.get("flags", {}), dict, "flags").items():
        where = f"flags[{gname!r}]"
        _expect(chain_raw, list, where)
        if not chain_raw:
            raise SchemaError(f"{where}: a flag needs at least one member")
        members = [
            _parse_member_list(m, names, f"{where}[{i}]") for i, m in enumerate(chain_raw)
        ]
        flags[gname] = Flag(members)

    subspaces: dict[str, Subspace] = {}
    for sname, vecs_raw in _expect(raw.get("subspaces", {}), dict, "subspaces").items():
        subspaces[sname] = _parse_member_list(vecs_raw, names, f"subspaces[{sname!r}]")

    metadata = _parse_metadata(raw.get("metadata", {}))

    return Document(
        name=name,
        algebra=algebra,
        two_forms=two_forms,
        flags=flags,
        subspaces=subspaces,
        metadata=metadata,
    )


def _parse_metadata(raw: object) -> Metadata:
    _expect(raw, dict, "metadata")
    for key in raw:
        if key not in _META_KEYS:
            raise SchemaError(f"metadata: unknown field {key!r}")
    source = _expect(raw.get("source", ""), str, "metadata.source")
    notes_raw = _expect(raw.get("notes", []), list, "metadata.notes")
    notes = tuple(
        _expect(n, str, f"metadata.notes[{i}]") for i, n in enumerate(notes_raw)
    )
    expected_raw = _expect(raw.get("expected", []), list, "metadata.expected")
    expected = []
    for i, item in enumerate(expected_raw):
        where = f"metadata.expected[{i}]"
        _expect(item, dict, where)
        for key in item:
            if key not in _EXPECTED_KEYS:
                raise SchemaError(f"{where}: unknown field {key!r}")
        for key in ("check", "value", "tag"):
            if key not in item:
                raise SchemaError(f"{where}: missing field {key!r}")
        check = _expect(item["check"], str, f"{where}.check")
        args = _expect(item.get("args", {}), dict, f"{where}.args")
        for k in args:
            _expect(k, str, f"{where}.args key")
        tag = _expect(item["tag"], str, f"{where}.tag")
        if tag not in _TAGS:
            raise SchemaError(f"{where}.tag: expected one of {_TAGS}, got {tag!r}")
        agrees = item.get("agrees", True)
        if not isinstance(agrees, bool):
            raise SchemaError(f"{where}.agrees: expected bool")
        expected.append(
            ExpectedEntry(check=check, args=dict(args), value=item["value"], tag=tag, agrees=agrees)
        )
    return Metadata(source=source, notes=notes, expected=tuple(expected))


def _vector_obj(names: tuple[str, ...], row) -> dict[str, object]:
    return {names[i]: rational_repr(c) for i, c in enumerate(row) if c != 0}


def subspace_obj(names: tuple[str, ...], space: Subspace) -> list[dict[str, object]]:
    """Canonical JSON encoding of a subspace: its echelon rows."""
    return [_vector_obj(names, row) for row in space.rows]


def document_obj(doc: Document) -> dict[str, object]:
    """Plain-JSON object for a document, with canonical sparse encodings."""
    alg = doc.algebra
    names = alg.names
    n = alg.dim
    brackets = []
    for i in range(n):
        for j in range(i + 1, n):
            row = alg.table[i][j]
            if any(c != 0 for c in row):
                brackets.append([names[i], names[j], _vector_obj(names, row)])
    two_forms = {}
    for fname, form in doc.two_forms.items():
        pairs = []
        for i in range(n):
            for j in range(i + 1, n):
                if form.entries[i][j] != 0:
                    pairs.append([names[i], names[j], rational_repr(form.entries[i][j])])
        two_forms[fname] = pairs
    flags = {
        gname: [subspace_obj(names, m) for m in flag.members]
        for gname, flag in doc.flags.items()
    }
    subspaces = {
        sname: subspace_obj(names, space) for sname, space in doc.subspaces.items()
    }
    expected = [
        {
            "check": e.check,
            "args": e.args,
            "value": e.value,
            "tag": e.tag,
            "agrees": e.agrees,
        }
        for e in doc.metadata.expected
    ]
    return {
        "name": doc.name,
        "dim": n,
        "basis": list(names),
        "brackets": brackets,
        "two_forms": two_forms,
        "flags": flags,
        "subspaces": subspaces,
        "metadata": {
            "source": doc.metadata.source,
            "notes": list(doc.metadata.notes),
            "expected": expected,
        },
    }


def serialize_document(doc: Document) -> str:
    """Deterministic text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(document_obj(doc), indent=2, sort_keys=True) + "\n"

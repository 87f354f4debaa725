"""Bundled example documents and the evaluator for their recorded values.

Each document's metadata can carry "expected" entries: a named check, its
arguments, and a recorded value tagged "printed" (transcribed from an outside
source) or "derived" (recomputed here).  agrees=True entries must match what
the implementation computes; agrees=False entries record a transcription that
is known to differ, and must keep differing.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Any

from .algebra import validate_algebra
from .diagram import (
    WeightedDiagram,
    classify_vertices,
    kernel_chain,
    match_template,
    predicates,
)
from .document import Document, ExpectedEntry, parse_document, rational_repr, subspace_obj
from .flags import validate_flag
from .forms import is_closed, kernel

_PREDICATE_NAMES = ("connected", "simple", "semi_normal", "semi_nilpotent", "semi_simple")


def list_corpus() -> tuple[str, ...]:
    base = resources.files(__package__) / "corpus_data"
    return tuple(sorted(p.name[:-5] for p in base.iterdir() if p.name.endswith(".json")))


def corpus_text(name: str) -> str:
    path = resources.files(__package__) / "corpus_data" / f"{name}.json"
    return path.read_text(encoding="utf-8")


def load_corpus(name: str) -> Document:
    return parse_document(corpus_text(name))


@dataclass(frozen=True)
class ExpectedResult:
    entry: ExpectedEntry
    computed: Any
    matched: bool

    @property
    def ok(self) -> bool:
        return self.matched == self.entry.agrees


def _diagram_for(doc: Document, args) -> WeightedDiagram:
    omega = doc.two_forms[_arg(args, "form")]
    flag = doc.flags[_arg(args, "flag")]
    return classify_vertices(kernel_chain(doc.algebra, omega, flag))


def _arg(args, key: str):
    if key not in args:
        raise ValueError(f"expected entry is missing argument {key!r}")
    return args[key]


def compute_check(doc: Document, check: str, args) -> Any:
    """Recompute the value an expected entry refers to, as plain JSON data."""
    alg = doc.algebra
    names = alg.names
    if check == "algebra_valid":
        return validate_algebra(alg).ok
    if check == "form_closed":
        return is_closed(alg, doc.two_forms[_arg(args, "form")])
    if check == "form_kernel":
        return subspace_obj(names, kernel(doc.two_forms[_arg(args, "form")]))
    if check == "form_kernel_dim":
        return kernel(doc.two_forms[_arg(args, "form")]).dim
    if check == "chain_ok":
        return validate_flag(alg, doc.flags[_arg(args, "flag")]).chain_ok
    if check == "kernel_dims":
        return list(_diagram_for(doc, args).kernel_dims)
    if check == "kernel_member":
        want = _arg(args, "member_dim")
        for v in _diagram_for(doc, args).vertices:
            if v.member.dim == want:
                return subspace_obj(names, v.kernel)
        raise ValueError(f"no flag member of dimension {want}")
    if check == "step_directions":
        return [s.value for s in _diagram_for(doc, args).steps]
    if check == "template":
        return match_template(_diagram_for(doc, args)).value
    if check == "predicate":
        name = _arg(args, "name")
        if name not in _PREDICATE_NAMES:
            raise ValueError(f"unknown predicate {name!r}")
        d = _diagram_for(doc, args)
        return getattr(predicates(doc.algebra, d), name)
    if check == "singular_member_dims":
        return [v.member.dim for v in _diagram_for(doc, args).singular_vertices()]
    if check == "singular_weights":
        return [rational_repr(v.weight) for v in _diagram_for(doc, args).singular_vertices()]
    raise ValueError(f"unknown check {check!r}")


def evaluate_expected(doc: Document) -> tuple[ExpectedResult, ...]:
    results = []
    for entry in doc.metadata.expected:
        computed = compute_check(doc, entry.check, entry.args)
        results.append(
            ExpectedResult(entry=entry, computed=computed, matched=computed == entry.value)
        )
    return tuple(results)

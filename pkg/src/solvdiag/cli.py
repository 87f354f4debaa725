"""Command-line surface over document files.

Exit codes: 0 = computed, 2 = invalid input (malformed file, unknown
name, precondition failure of the requested operation), 3 = a structural
hypothesis failed while computing (non-nesting radicals, stuck descent,
and the like).  All output is deterministic byte-for-byte for a given
input; --json switches the verdict commands to machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import (
    LieAlgebra,
    SolvdiagError,
    Subspace,
    complete_solvability_certificate,
    is_subalgebra,
    validate_algebra,
)
from .bilagrangian import BilagrangianPair, audit_connection, connection, curvature_flatness
from .corpus import evaluate_expected
from .deformation import deform_to_simple, step_audit
from .diagram import (
    classify_vertices,
    contract,
    kernel_chain,
    match_template,
    predicates,
    weight_zero_singulars,
)
from .document import Document, parse_document, rational_repr, serialize_document, subspace_obj
from .flags import Flag, validate_flag
from .forms import TwoForm, is_closed, kernel
from .lagrangian import find_lagrangians
from .primitivity import (
    PairPresentation,
    PrimitivityStatus,
    degrees,
    ideal_closure_audit,
    primitive_test,
    quasi_primitive_test,
    singular_count_audit,
)
from .render import STYLES, contracted_text, render_dot


class UnknownNameError(SolvdiagError):
    code = "UNKNOWN_NAME"


# Codes that indicate a problem with what the user handed in, as opposed
# to a structural hypothesis failing mid-computation.
INPUT_ERROR_CODES = frozenset(
    {
        "PARSE_ERROR",
        "SCHEMA_ERROR",
        "RATIONAL_FORMAT_ERROR",
        "UNKNOWN_NAME",
        "CHAIN_NOT_NESTED",
        "SUBSPACE_NOT_NESTED",
        "NOT_SUBALGEBRA",
        "NOT_AN_IDEAL",
        "NOT_CLOSED",
        "DEGENERATE_FORM",
        "NOT_LAGRANGIAN",
        "NOT_TRANSVERSE",
        "KERNEL_NOT_IDEAL",
        "NOT_SOLVABLE",
    }
)


def _load(path: str) -> Document:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_document(fh.read())


def _get(table: dict, name: str, what: str):
    if name not in table:
        known = ", ".join(sorted(table)) or "none"
        raise UnknownNameError(f"no {what} named {name!r} (known: {known})")
    return table[name]


def _vec_str(names, v) -> str:
    terms = []
    for name, c in zip(names, v):
        if c == 0:
            continue
        if c == 1:
            t = name
        elif c == -1:
            t = f"-{name}"
        else:
            t = f"{rational_repr(c)}*{name}"
        terms.append(t)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def _space_str(names, s: Subspace) -> str:
    if s.is_zero():
        return "(zero)"
    return ", ".join(_vec_str(names, r) for r in s.rows)


def _emit(args, human_lines, json_obj) -> None:
    if getattr(args, "json", False):
        print(json.dumps(json_obj, indent=2, sort_keys=True))
    else:
        print("\n".join(human_lines))


def _diagram_of(doc: Document, form_name: str, flag_name: str):
    form = _get(doc.two_forms, form_name, "form")
    flag = _get(doc.flags, flag_name, "flag")
    return classify_vertices(kernel_chain(doc.algebra, form, flag))


def _vertex_obj(names, v) -> dict:
    return {
        "index": v.index,
        "member_dim": v.member.dim,
        "kernel_dim": v.kernel.dim,
        "class": v.vclass.value,
        "weight": rational_repr(v.weight),
        "member": subspace_obj(names, v.member),
        "kernel": subspace_obj(names, v.kernel),
    }


def cmd_validate(args) -> int:
    doc = _load(args.file)
    names = doc.algebra.names
    report = validate_algebra(doc.algebra)
    cert = complete_solvability_certificate(doc.algebra)
    lines = [
        f"document: {doc.name}",
        f"dim: {doc.algebra.dim}",
        f"algebra: ok={str(report.ok).lower()} solvability={cert.verdict.value}",
    ]
    forms_obj = {}
    for fname in sorted(doc.two_forms):
        form = doc.two_forms[fname]
        closed = is_closed(doc.algebra, form)
        ker = kernel(form)
        lines.append(f"form {fname}: closed={str(closed).lower()} kernel_dim={ker.dim}")
        forms_obj[fname] = {
            "closed": closed,
            "kernel_dim": ker.dim,
            "kernel": subspace_obj(names, ker),
        }
    flags_obj = {}
    for gname in sorted(doc.flags):
        rep = validate_flag(doc.algebra, doc.flags[gname])
        lines.append(
            f"flag {gname}: dims={list(rep.dims)} chain_ok={str(rep.chain_ok).lower()}"
            f" subalgebras={str(rep.subalgebras_ok).lower()}"
            f" composition={str(rep.composition_ok).lower()}"
        )
        flags_obj[gname] = {
            "dims": list(rep.dims),
            "chain_ok": rep.chain_ok,
            "subalgebras_ok": rep.subalgebras_ok,
            "composition_ok": rep.composition_ok,
            "normal_in_algebra": list(rep.normal_in_algebra),
        }
    subs_obj = {}
    for sname in sorted(doc.subspaces):
        s = doc.subspaces[sname]
        lines.append(f"subspace {sname}: dim={s.dim}")
        subs_obj[sname] = subspace_obj(names, s)
    obj = {
        "document": doc.name,
        "dim": doc.algebra.dim,
        "algebra_ok": report.ok,
        "solvability": cert.verdict.value,
        "forms": forms_obj,
        "flags": flags_obj,
        "subspaces": subs_obj,
    }
    _emit(args, lines, obj)
    return 0


def cmd_diagram(args) -> int:
    doc = _load(args.file)
    names = doc.algebra.names
    d = _diagram_of(doc, args.form, args.flag)
    preds = predicates(doc.algebra, d)
    template = match_template(d)
    lines = [f"document: {doc.name}  form: {args.form}  flag: {args.flag}", "vertices:"]
    for v in d.vertices:
        lines.append(
            f"  k={v.index} member_dim={v.member.dim} kernel_dim={v.kernel.dim}"
            f" class={v.vclass.value} weight={rational_repr(v.weight)}"
        )
    lines.append("steps: " + " ".join(s.value for s in d.steps))
    lines.append(f"template: {template.value}")
    lines.append(
        "predicates:"
        f" connected={str(preds.connected).lower()}"
        f" simple={str(preds.simple).lower()}"
        f" semi_normal={str(preds.semi_normal).lower()}"
        f" semi_nilpotent={str(preds.semi_nilpotent).lower()}"
        f" semi_simple={str(preds.semi_simple).lower()}"
    )
    obj = {
        "document": doc.name,
        "form": args.form,
        "flag": args.flag,
        "vertices": [_vertex_obj(names, v) for v in d.vertices],
        "steps": [s.value for s in d.steps],
        "template": template.value,
        "predicates": {
            "connected": preds.connected,
            "simple": preds.simple,
            "semi_normal": preds.semi_normal,
            "semi_nilpotent": preds.semi_nilpotent,
            "semi_simple": preds.semi_simple,
        },
    }
    if args.contract:
        lines.append(f"contracted: {contracted_text(d)}")
        obj["contracted"] = [[s.value, n] for s, n in contract(d)]
    if args.dot:
        text = render_dot(d, style=args.dot_style)
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(text)
        lines.append(f"dot: written to {args.dot}")
        obj["dot"] = args.dot
    _emit(args, lines, obj)
    return 0


def cmd_deform(args) -> int:
    doc = _load(args.file)
    names = doc.algebra.names
    form = _get(doc.two_forms, args.form, "form")
    flag = _get(doc.flags, args.flag, "flag")
    out = deform_to_simple(doc.algebra, form, flag)
    lines = ["deformed chain:"]
    for m in out.members:
        lines.append(f"  dim {m.dim}: {_space_str(names, m)}")
    lines.append("simple: true")
    obj = {
        "document": doc.name,
        "form": args.form,
        "flag": args.flag,
        "members": [subspace_obj(names, m) for m in out.members],
        "member_dims": list(out.dims),
        "simple": True,
    }
    _emit(args, lines, obj)
    return 0


def cmd_lagrangians(args) -> int:
    doc = _load(args.file)
    names = doc.algebra.names
    form = _get(doc.two_forms, args.form, "form")
    mode = args.mode.replace("-", "_")
    verdict = find_lagrangians(doc.algebra, form, mode=mode)
    lines = [
        f"document: {doc.name}  form: {args.form}  mode: {args.mode}",
        f"completeness: {verdict.completeness.value}",
        f"found: {len(verdict.found)}",
    ]
    for i, s in enumerate(verdict.found):
        lines.append(f"  L{i}: dim {s.dim}: {_space_str(names, s)}")
    obj = {
        "document": doc.name,
        "form": args.form,
        "mode": args.mode,
        "completeness": verdict.completeness.value,
        "found": [subspace_obj(names, s) for s in verdict.found],
    }
    _emit(args, lines, obj)
    return 0


def cmd_bilagrangian(args) -> int:
    doc = _load(args.file)
    names = doc.algebra.names
    form = _get(doc.two_forms, args.form, "form")
    left = _get(doc.subspaces, args.left, "subspace")
    right = _get(doc.subspaces, args.right, "subspace")
    pair = BilagrangianPair(left=left, right=right)
    table = connection(doc.algebra, form, pair)
    audit = audit_connection(doc.algebra, form, pair, table)
    flat = curvature_flatness(doc.algebra, table)
    lines = [
        f"document: {doc.name}  form: {args.form}  left: {args.left}  right: {args.right}",
        "connection (nonzero basis entries):",
    ]
    entries_obj = []
    for i, ni in enumerate(names):
        for j, nj in enumerate(names):
            v = table.entries[i][j]
            if any(c != 0 for c in v):
                lines.append(f"  D[{ni}, {nj}] = {_vec_str(names, v)}")
                entries_obj.append(
                    {"x": ni, "y": nj, "value": {n: rational_repr(c) for n, c in zip(names, v) if c != 0}}
                )
    lines.append(f"torsion_free: {str(audit.torsion_free).lower()}")
    lines.append(f"parallel_form: {str(audit.parallel_form).lower()}")
    lines.append(f"preserves_left: {str(audit.preserves_left).lower()}")
    lines.append(f"preserves_right: {str(audit.preserves_right).lower()}")
    lines.append(f"flat: {str(flat).lower()}")
    obj = {
        "document": doc.name,
        "form": args.form,
        "left": args.left,
        "right": args.right,
        "connection": entries_obj,
        "torsion_free": audit.torsion_free,
        "parallel_form": audit.parallel_form,
        "preserves_left": audit.preserves_left,
        "preserves_right": audit.preserves_right,
        "flat": flat,
    }
    _emit(args, lines, obj)
    return 0


def cmd_primitivity(args) -> int:
    doc = _load(args.file)
    names = doc.algebra.names
    form = _get(doc.two_forms, args.form, "form")
    pair = PairPresentation(algebra=doc.algebra, isotropy=kernel(form))
    prim = primitive_test(pair)
    quasi = quasi_primitive_test(pair)
    degs = degrees(pair)
    lines = [
        f"document: {doc.name}  form: {args.form}",
        f"isotropy: kernel of the form, dim {pair.isotropy.dim}",
        f"primitive: {prim.status.value}",
    ]
    if prim.witness is not None:
        lines.append(f"  witness: {_space_str(names, prim.witness)}")
    lines.append(f"quasi_primitive: {quasi.status.value}")
    if quasi.witness is not None:
        lines.append(f"  witness: {_space_str(names, quasi.witness)}")
    lines.append(f"searched: {', '.join(quasi.searched)}")
    lines.append(f"ratio: {rational_repr(degs.ratio)}")
    lines.append(f"degree_lower: {rational_repr(degs.d_lower)}")
    lines.append(f"degree_within_search: {rational_repr(degs.d_within_search)}")
    obj = {
        "document": doc.name,
        "form": args.form,
        "isotropy_dim": pair.isotropy.dim,
        "primitive": prim.status.value,
        "primitive_witness": None if prim.witness is None else subspace_obj(names, prim.witness),
        "quasi_primitive": quasi.status.value,
        "quasi_witness": None if quasi.witness is None else subspace_obj(names, quasi.witness),
        "searched": list(quasi.searched),
        "ratio": rational_repr(degs.ratio),
        "degree_lower": rational_repr(degs.d_lower),
        "degree_within_search": rational_repr(degs.d_within_search),
    }
    _emit(args, lines, obj)
    return 0


def _audit_checks(doc: Document):
    """Every cross-module invariant the document is expected to satisfy.

    Yields (name, ok, detail).  Reported-but-not-required facts (a chain
    with structural defects, a non-closed form) only gate the checks that
    depend on them; recorded expectations and structural invariants fail
    the audit outright.
    """
    alg = doc.algebra
    yield ("algebra jacobi", validate_algebra(alg).ok, "")

    canon = serialize_document(doc)
    reparsed = serialize_document(parse_document(canon))
    yield ("serialize/parse round trip", canon == reparsed, "")

    closed_forms = {}
    for fname in sorted(doc.two_forms):
        form = doc.two_forms[fname]
        closed = is_closed(alg, form)
        yield (f"form {fname} closedness recorded", True, f"closed={str(closed).lower()}")
        if not closed:
            continue
        closed_forms[fname] = form
        ker = kernel(form)
        yield (
            f"form {fname} kernel is a subalgebra",
            is_subalgebra(alg, ker),
            f"dim {ker.dim}",
        )

    diagrams = []
    for gname in sorted(doc.flags):
        flag = doc.flags[gname]
        rep = validate_flag(alg, flag)
        yield (
            f"flag {gname} validated",
            True,
            f"chain_ok={str(rep.chain_ok).lower()} subalgebras={str(rep.subalgebras_ok).lower()}",
        )
        if not rep.chain_ok:
            continue
        for fname, form in closed_forms.items():
            d = classify_vertices(kernel_chain(alg, form, flag))
            diagrams.append(d)
            wz = weight_zero_singulars(d)
            ok_rep = all(
                d.vertices[i].vclass.value == "singular-repulsive" for i in wz
            )
            yield (f"diagram {fname}/{gname} weight-zero singulars repulsive", ok_rep, "")
            step_ok = True
            detail = ""
            for k in d.member_dims[:-1]:
                r = step_audit(alg, form, flag, k)
                if not r.ok:
                    step_ok = False
                    detail = f"step {k}: {', '.join(r.failures)}"
                    break
            yield (f"diagram {fname}/{gname} step audit", step_ok, detail)
            preds = predicates(alg, d)
            consistent = (not preds.simple or preds.connected) and (
                not preds.semi_simple or preds.semi_normal
            )
            yield (f"diagram {fname}/{gname} predicate consistency", consistent, "")

    solvable = (
        complete_solvability_certificate(alg).verdict.value == "COMPLETELY_SOLVABLE"
    )
    if solvable:
        for fname in sorted(closed_forms):
            form = closed_forms[fname]
            ker = kernel(form)
            if ker.is_zero() or not is_subalgebra(alg, ker):
                continue
            pair = PairPresentation(algebra=alg, isotropy=ker)
            rep = ideal_closure_audit(pair, form)
            yield (f"form {fname} ideal-closure audit agrees", rep.agree, "")

    if (
        solvable
        and diagrams
        and all(is_subalgebra(alg, kernel(f)) for f in closed_forms.values())
    ):
        first = sorted(closed_forms)[0]
        pair = PairPresentation(algebra=alg, isotropy=kernel(closed_forms[first]))
        quasi = quasi_primitive_test(pair)
        entries = singular_count_audit(pair, diagrams, quasi_verdict=quasi)
        ok_counts = all(
            e.within_connected_bound is not False
            and e.within_quasi_primitive_bound is not False
            for e in entries
        )
        counts = ",".join(str(e.singular_count) for e in entries)
        yield ("singular-count bounds", ok_counts, f"counts={counts}")

    results = evaluate_expected(doc)
    bad = [r for r in results if not r.ok]
    detail = "" if not bad else (
        f"first mismatch: {bad[0].entry.check} {bad[0].entry.args} "
        f"recorded={bad[0].entry.value!r} computed={bad[0].computed!r}"
    )
    yield (f"recorded expectations ({len(results)} entries)", not bad, detail)


def cmd_audit(args) -> int:
    doc = _load(args.file)
    lines = [f"document: {doc.name}"]
    checks = []
    ok = True
    for name, passed, detail in _audit_checks(doc):
        checks.append({"name": name, "ok": passed, "detail": detail})
        suffix = f" ({detail})" if detail else ""
        lines.append(f"{'ok  ' if passed else 'FAIL'} {name}{suffix}")
        ok = ok and passed
    lines.append(f"audit result: {'ok' if ok else 'FAIL'} ({len(checks)} checks)")
    obj = {"document": doc.name, "checks": checks, "ok": ok}
    _emit(args, lines, obj)
    return 0 if ok else 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="solvdiag",
        description="Kernel-chain diagrams of closed 2-forms on solvable Lie algebras.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text, form=False, flag=False):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", help="document JSON file")
        if form:
            sp.add_argument("--form", required=True, help="name of a 2-form in the document")
        if flag:
            sp.add_argument("--flag", required=True, help="name of a chain in the document")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(handler=handler)
        return sp

    add("validate", cmd_validate, "parse a document and report its structure")

    sp = add("diagram", cmd_diagram, "kernel chain along a flag", form=True, flag=True)
    sp.add_argument("--contract", action="store_true", help="also print the contracted shape")
    sp.add_argument("--dot", metavar="PATH", help="write a DOT rendering to PATH")
    sp.add_argument("--dot-style", choices=STYLES, default="graph", help="DOT layout")

    add("deform", cmd_deform, "deform a chain until its diagram is simple", form=True, flag=True)

    sp = add("lagrangians", cmd_lagrangians, "search for Lagrangian subalgebras", form=True)
    sp.add_argument(
        "--mode",
        choices=("vergne", "flag-adapted", "both"),
        default="both",
        help="search strategy",
    )

    sp = add("bilagrangian", cmd_bilagrangian, "connection of a transverse pair", form=True)
    sp.add_argument("--left", required=True, help="name of a subspace in the document")
    sp.add_argument("--right", required=True, help="name of a subspace in the document")

    add("primitivity", cmd_primitivity, "primitivity of the pair (algebra, form kernel)", form=True)

    add("audit", cmd_audit, "run the full invariant suite on a document")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SolvdiagError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2 if exc.code in INPUT_ERROR_CODES else 3
    except OSError as exc:
        print(f"error[IO]: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error[VALUE]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

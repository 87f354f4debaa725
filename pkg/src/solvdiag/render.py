"""DOT rendering of classified kernel-chain diagrams.

Two layouts.  "graph" draws three rows (kernels, members, symplectic
quotients) with inclusion edges between rows, rightward edges along the
member row, and a reduction edge labeled mw pointing left along the
quotient row on every descending step.  "diagram" draws the vertices in
one row with a single edge per ascending step and a pair of opposite
edges per descending step.
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import StepDirection, WeightedDiagram, ensure_classified

STYLES = ("graph", "diagram")


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _vertex_label(prefix: str, v) -> str:
    return (
        f"{prefix}{v.index}\\n"
        f"dim {v.member.dim}, ker {v.kernel.dim}\\n"
        f"{v.vclass.value}, w={_fmt(v.weight)}"
    )


def render_dot(diagram: WeightedDiagram, style: str = "graph") -> str:
    if style not in STYLES:
        raise ValueError(f"style must be one of {STYLES}")
    d = ensure_classified(diagram)
    vs = d.vertices
    lines = ["digraph kernel_chain {", "  rankdir=LR;", '  node [shape=box, fontsize=10];']

    if len(vs) == 1:
        lines.append(f'  S{vs[0].index} [label="{_vertex_label("S", vs[0])}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    if style == "diagram":
        for v in vs:
            lines.append(f'  S{v.index} [label="{_vertex_label("S", v)}"];')
        for i, s in enumerate(d.steps):
            a, b = vs[i].index, vs[i + 1].index
            if s is StepDirection.UP:
                lines.append(f"  S{a} -> S{b};")
            else:
                lines.append(f"  S{a} -> S{b};")
                lines.append(f"  S{b} -> S{a};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    for v in vs:
        lines.append(f'  H{v.index} [label="H{v.index}\\ndim {v.kernel.dim}"];')
    for v in vs:
        lines.append(f'  G{v.index} [label="{_vertex_label("G", v)}"];')
    for v in vs:
        quot = v.member.dim - v.kernel.dim
        lines.append(f'  M{v.index} [label="M{v.index}\\ndim {quot}"];')

    ids = " ".join(f"H{v.index};" for v in vs)
    lines.append(f"  {{ rank=same; {ids} }}")
    ids = " ".join(f"G{v.index};" for v in vs)
    lines.append(f"  {{ rank=same; {ids} }}")
    ids = " ".join(f"M{v.index};" for v in vs)
    lines.append(f"  {{ rank=same; {ids} }}")

    for v in vs:
        lines.append(f"  H{v.index} -> G{v.index};")
        lines.append(f"  G{v.index} -> M{v.index};")
    for i, s in enumerate(d.steps):
        a, b = vs[i].index, vs[i + 1].index
        lines.append(f"  G{a} -> G{b};")
        if s is StepDirection.UP:
            lines.append(f"  H{a} -> H{b};")
            lines.append(f"  M{a} -> M{b};")
        else:
            lines.append(f"  H{b} -> H{a};")
            lines.append(f'  M{b} -> M{a} [label="mw"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def contracted_text(diagram: WeightedDiagram) -> str:
    """One-line arrow form of the contracted step sequence.

    Ascending runs print as ->, descending runs as <=>; the nodes are the
    run boundaries, annotated with their member dimensions.
    """
    d = ensure_classified(diagram)
    vs = d.vertices
    if len(vs) == 1:
        return f"O[{vs[0].index}]"
    parts = [f"O[{vs[0].index}]"]
    pos = 0
    run_dir: StepDirection | None = None
    for i, s in enumerate(d.steps):
        if run_dir is None:
            run_dir = s
        elif s is not run_dir:
            parts.append(" -> " if run_dir is StepDirection.UP else " <=> ")
            parts.append(f"O[{vs[i].index}]")
            run_dir = s
        pos = i + 1
    parts.append(" -> " if run_dir is StepDirection.UP else " <=> ")
    parts.append(f"O[{vs[pos].index}]")
    return "".join(parts)

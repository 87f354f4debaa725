"""Kernel chains along three different chains on the same algebra.

Restricting a closed 2-form to each member of a chain and taking radicals
gives a sequence of kernels; adjacent kernels always nest one way (Up) or
the other (Down).  The resulting weighted diagram classifies the chain.
"""

from solvdiag import (
    classify_vertices,
    contracted_text,
    kernel_chain,
    load_corpus,
    match_template,
    predicates,
    render_dot,
)


def show(doc, flag_name):
    alg, omega = doc.algebra, doc.two_forms["omega"]
    d = classify_vertices(kernel_chain(alg, omega, doc.flags[flag_name]))
    print(f"\nchain {flag_name}:")
    print("  member dims:", list(d.member_dims))
    print("  kernel dims:", list(d.kernel_dims))
    print("  steps:      ", " ".join(s.value for s in d.steps))
    for v in d.vertices:
        print(
            f"    dim {v.member.dim}: kernel dim {v.kernel.dim},"
            f" {v.vclass.value}, weight {v.weight}"
        )
    print("  template:", match_template(d).value)
    print("  contracted:", contracted_text(d))
    p = predicates(alg, d)
    print(
        f"  connected={p.connected} simple={p.simple}"
        f" semi_normal={p.semi_normal} semi_nilpotent={p.semi_nilpotent}"
        f" semi_simple={p.semi_simple}"
    )
    return d


def main():
    doc = load_corpus("X3")
    print(f"document {doc.name}: dim {doc.algebra.dim}")
    d = show(doc, "F1")
    show(doc, "F2")
    show(doc, "F3")

    print("\nDOT rendering of F1 (diagram style):\n")
    print(render_dot(d, style="diagram"))


if __name__ == "__main__":
    main()

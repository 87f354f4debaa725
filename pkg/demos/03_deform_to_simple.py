"""Deform a chain with several singular vertices into a simple one.

A simple diagram has exactly one singular vertex, attractive.  When a
diagram is disconnected but every component is simple with a nilpotent cut
member, the chain can be rebuilt: split off the attractive part, descend
through eigen-hyperplanes, and reassemble.  The six-dimensional example
needs two descent passes.
"""

from fractions import Fraction

from solvdiag import (
    Flag,
    LieAlgebra,
    Subspace,
    TwoForm,
    classify_vertices,
    deform_to_simple,
    kernel_chain,
    load_corpus,
    predicates,
)


def vec_str(names, v):
    terms = []
    for n, c in zip(names, v):
        if c == 0:
            continue
        terms.append(n if c == 1 else f"-{n}" if c == -1 else f"{c}*{n}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def report(alg, omega, flag, label):
    d = classify_vertices(kernel_chain(alg, omega, flag))
    p = predicates(alg, d)
    print(f"{label}: kernel dims {list(d.kernel_dims)}, simple={p.simple}")
    return d


def run(alg, omega, flag, title):
    print(f"\n== {title} ==")
    report(alg, omega, flag, "before")
    out = deform_to_simple(alg, omega, flag)
    report(alg, omega, out, "after ")
    for m in out.members:
        if not m.is_zero():
            print(
                f"  dim {m.dim}:",
                "; ".join(vec_str(alg.names, r) for r in m.rows),
            )


def main():
    doc = load_corpus("D1")
    run(doc.algebra, doc.two_forms["omega"], doc.flags["F2comp"], "dim 4, one pass")

    # two hyperbolic blocks sharing one scaling direction, plus a center
    names = ("p", "q", "r", "s", "c", "t")
    alg = LieAlgebra.from_brackets(
        names,
        {
            ("t", "p"): {"p": 1},
            ("t", "q"): {"q": 1},
            ("t", "r"): {"r": -1},
            ("t", "s"): {"s": -1},
        },
    )
    omega = TwoForm.from_pairs(6, [(0, 3, 1), (1, 2, 1), (5, 4, 1)])
    coordinate_flag = Flag(
        [Subspace(6, [tuple(Fraction(1 if i == j else 0) for j in range(6)) for i in range(k)]) for k in range(7)]
    )
    run(alg, omega, coordinate_flag, "dim 6, two descent passes")


if __name__ == "__main__":
    main()

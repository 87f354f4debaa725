"""The canonical connection of a transverse pair of Lagrangian subalgebras.

Two transverse invariant Lagrangian subalgebras determine a unique
connection that is torsion-free, parallel for the form, and preserves both
members.  Its curvature is checked exactly; the bundled pair is flat.
"""

from solvdiag import (
    BilagrangianPair,
    audit_connection,
    connection,
    curvature,
    curvature_flatness,
    load_corpus,
)


def vec_str(names, v):
    terms = []
    for n, c in zip(names, v):
        if c == 0:
            continue
        terms.append(n if c == 1 else f"-{n}" if c == -1 else f"{c}*{n}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def main():
    doc = load_corpus("D1")
    alg, omega = doc.algebra, doc.two_forms["omega"]
    names = alg.names
    pair = BilagrangianPair(left=doc.subspaces["L1"], right=doc.subspaces["L2"])
    print(f"document {doc.name}: left = span(x, c), right = span(y, t)")

    table = connection(alg, omega, pair)
    print("\nnonzero connection entries D[a, b]:")
    unit = [[1 if i == j else 0 for j in range(alg.dim)] for i in range(alg.dim)]
    for i in range(alg.dim):
        for j in range(alg.dim):
            v = table.entries[i][j]
            if any(c != 0 for c in v):
                print(f"  D[{names[i]}, {names[j]}] = {vec_str(names, v)}")

    audit = audit_connection(alg, omega, pair, table)
    print("\naudit:")
    print("  torsion_free:  ", audit.torsion_free)
    print("  parallel_form: ", audit.parallel_form)
    print("  preserves_left:", audit.preserves_left)
    print("  preserves_right:", audit.preserves_right)

    print("\nflat:", curvature_flatness(alg, table))
    r = curvature(alg, table, unit[3], unit[0], unit[0])  # R(t, x)x
    print("curvature R(t, x)x =", vec_str(names, r))


if __name__ == "__main__":
    main()

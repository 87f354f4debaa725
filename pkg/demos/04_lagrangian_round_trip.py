"""Search for Lagrangian subalgebras and round trip them through chains.

A Lagrangian subalgebra is bracket-closed, isotropic for the form, contains
the form's kernel, and has dimension rank/2 + kernel dim.  Each verified
Lagrangian completes to a chain whose diagram is simple with its singular
vertex exactly at the Lagrangian, and the diagram hands the subspace back.
"""

from solvdiag import (
    classify_vertices,
    diagram_to_lagrangian,
    find_lagrangians,
    kernel_chain,
    lagrangian_to_flag,
    load_corpus,
    verify_lagrangian,
)


def vec_str(names, v):
    terms = []
    for n, c in zip(names, v):
        if c == 0:
            continue
        terms.append(n if c == 1 else f"-{n}" if c == -1 else f"{c}*{n}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def main():
    for name in ("D1", "E1", "X1", "X3"):
        doc = load_corpus(name)
        alg, omega = doc.algebra, doc.two_forms["omega"]
        verdict = find_lagrangians(alg, omega)
        print(
            f"\n{name}: rank {omega.rank()}, target dim"
            f" {omega.rank() // 2 + (alg.dim - omega.rank())},"
            f" search {verdict.completeness.value}"
        )
        for L in verdict.found:
            desc = ", ".join(vec_str(alg.names, r) for r in L.rows)
            cand = verify_lagrangian(alg, omega, L)
            flag = lagrangian_to_flag(alg, omega, L)
            d = classify_vertices(kernel_chain(alg, omega, flag))
            back = diagram_to_lagrangian(alg, omega, d)
            round_trip = "ok" if (back.verified and back.subspace == L) else "MISMATCH"
            print(
                f"  span({desc}): verified={cand.verified},"
                f" chain dims {list(flag.dims)}, round trip {round_trip}"
            )


if __name__ == "__main__":
    main()

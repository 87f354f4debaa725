"""Load a bundled document and walk through what it contains.

Documents carry an algebra (basis names + brackets), named 2-forms, named
chains of subspaces, and named subspaces, all over exact rationals.
"""

from solvdiag import (
    complete_solvability_certificate,
    is_closed,
    kernel,
    list_corpus,
    load_corpus,
    validate_algebra,
    validate_flag,
)


def vec_str(names, v):
    terms = []
    for n, c in zip(names, v):
        if c == 0:
            continue
        terms.append(n if c == 1 else f"-{n}" if c == -1 else f"{c}*{n}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def main():
    print("bundled documents:", ", ".join(list_corpus()))
    doc = load_corpus("E1")
    alg = doc.algebra
    print(f"\ndocument {doc.name}: dim {alg.dim}, basis {', '.join(alg.names)}")

    report = validate_algebra(alg)
    cert = complete_solvability_certificate(alg)
    print(f"algebra valid: {report.ok}; solvability: {cert.verdict.value}")
    print("ideal chain witness dims:", [s.dim for s in cert.witness])

    print("\nnonzero brackets:")
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            if any(c != 0 for c in alg.table[i][j]):
                print(
                    f"  [{alg.names[i]}, {alg.names[j]}] ="
                    f" {vec_str(alg.names, alg.table[i][j])}"
                )

    for fname, form in doc.two_forms.items():
        ker = kernel(form)
        print(
            f"\nform {fname}: closed={is_closed(alg, form)},"
            f" rank={form.rank()}, kernel dim={ker.dim}"
        )
        for row in ker.rows:
            print("  kernel vector:", vec_str(alg.names, row))

    for gname, flag in doc.flags.items():
        rep = validate_flag(alg, flag)
        print(f"\nchain {gname}: member dims {list(rep.dims)}")
        print(f"  nested with consecutive dims: {rep.chain_ok}")
        print(f"  members bracket-closed: {rep.subalgebras_ok}")
        print(f"  each member an ideal in the next: {rep.composition_ok}")


if __name__ == "__main__":
    main()

"""Exact linear algebra over the rationals.

Vectors are tuples of Fraction, matrices are tuples of row vectors.  Nothing
here ever rounds: reduced row echelon form, nullspaces, solving, and
characteristic polynomials are all computed with fractions.Fraction, so two
subspaces are equal exactly when their canonical echelon matrices are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction (exact)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def vec(entries: Iterable) -> Vector:
    return tuple(frac(e) for e in entries)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c: Fraction, a: Vector) -> Vector:
    return tuple(c * x for x in a)


def is_zero_vec(a: Vector) -> bool:
    return all(x == 0 for x in a)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(unit_vec(n, i) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    if not m:
        return ()
    return tuple(zip(*m, strict=True))


def matvec(m: Matrix, v: Vector) -> Vector:
    return tuple(sum((row[j] * v[j] for j in range(len(v))), ZERO) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a)


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with leading 1s; returns (rref, pivot columns).

    Zero rows are dropped, so the result is the canonical representative of
    the row space: equal row spaces give identical outputs.
    """
    work = [list(vec(r)) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = ONE / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    echelon = tuple(tuple(row) for row in work[:r])
    return echelon, tuple(pivots)


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Canonical basis of {x : rows @ x = 0}.

    ncols is required when rows is empty (the ambient dimension cannot be
    inferred from nothing).
    """
    rows = [vec(r) for r in rows]
    if not rows:
        if ncols is None:
            raise ValueError("nullspace of empty matrix needs ncols")
        return [unit_vec(ncols, i) for i in range(ncols)]
    n = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(tuple(v))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One exact solution x of a @ x = b, or None if inconsistent."""
    a = [vec(r) for r in a]
    b = vec(b)
    if not a:
        return () if all(x == 0 for x in b) else None
    n = len(a[0])
    aug = [tuple(row) + (bi,) for row, bi in zip(a, b, strict=True)]
    red, pivots = rref(aug)
    if n in pivots:  # pivot in the constant column: inconsistent
        return None
    x = [ZERO] * n
    for r, p in enumerate(pivots):
        x[p] = red[r][n]
    return tuple(x)


def charpoly(m: Matrix) -> list[Fraction]:
    """Coefficients [c0, c1, ..., c_{n-1}, 1] of det(tI - m), exact.

    Faddeev-LeVerrier; monic by construction.
    """
    n = len(m)
    coeffs = [ZERO] * n + [ONE]
    mk = identity(n)
    for k in range(1, n + 1):
        mk = matmul(m, mk)
        ck = -sum((mk[i][i] for i in range(n)), ZERO) / k
        coeffs[n - k] = ck
        if k < n:
            mk = tuple(
                tuple(mk[i][j] + (ck if i == j else ZERO) for j in range(n))
                for i in range(n)
            )
    return coeffs


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots of the polynomial, sorted, without multiplicity."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return []
    roots = set()
    # strip powers of t
    while coeffs[0] == 0:
        roots.add(ZERO)
        coeffs.pop(0)
        if not coeffs:
            return sorted(roots)
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // _gcd(scale, c.denominator)
    ints = [int(c * scale) for c in coeffs]
    lead, const = ints[-1], ints[0]
    for p in _divisors(const):
        for q in _divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and poly_eval(coeffs, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) if a else 1


def rational_eigenvalues(m: Matrix) -> list[Fraction]:
    return rational_roots(charpoly(m))

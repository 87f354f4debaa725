"""Invariant covectors, 2-forms and 3-forms, and the exterior differential.

Sign convention, used consistently everywhere:

    d(phi)(x, y)    = -phi([x, y])
    d(omega)(x,y,z) = -omega([x,y], z) + omega([x,z], y) - omega([y,z], x)

so closedness of a 2-form is the cocycle identity
omega([x,y],z) + omega([y,z],x) + omega([z,x],y) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .algebra import LieAlgebra, SolvdiagError, Subspace
from .linalg import Matrix, Vector, ZERO, ONE, frac


class NotClosedError(SolvdiagError):
    code = "NOT_CLOSED"


class DegenerateFormError(SolvdiagError):
    code = "DEGENERATE_FORM"


@dataclass(frozen=True)
class Covector:
    """A linear functional in dual-basis coordinates."""

    coeffs: Vector

    @classmethod
    def from_entries(cls, entries: Iterable) -> "Covector":
        return cls(linalg.vec(entries))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def apply(self, v: Sequence) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, linalg.vec(v))), ZERO)


class TwoForm:
    """A skew bilinear form as an exact matrix (rows/cols in basis order)."""

    __slots__ = ("dim", "entries")

    def __init__(self, entries: Sequence[Sequence]) -> None:
        m = linalg.mat(entries)
        n = len(m)
        for i in range(n):
            if len(m[i]) != n:
                raise ValueError("two-form matrix must be square")
            if m[i][i] != 0:
                raise ValueError("two-form matrix must have zero diagonal")
            for j in range(i + 1, n):
                if m[i][j] != -m[j][i]:
                    raise ValueError("two-form matrix must be antisymmetric")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "entries", m)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("TwoForm is immutable")

    @classmethod
    def zero(cls, n: int) -> "TwoForm":
        return cls([[ZERO] * n for _ in range(n)])

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int, object]]) -> "TwoForm":
        """Build from sparse (i, j, value) with antisymmetry filled in."""
        m = [[ZERO] * n for _ in range(n)]
        for i, j, val in pairs:
            v = frac(val)
            if i == j:
                raise ValueError("diagonal entry in a two-form")
            if m[i][j] != 0 and m[i][j] != v:
                raise ValueError(f"contradictory duplicate entry ({i},{j})")
            m[i][j] = v
            m[j][i] = -v
        return cls(m)

    def apply(self, x: Sequence, y: Sequence) -> Fraction:
        x = linalg.vec(x)
        y = linalg.vec(y)
        total = ZERO
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.entries[i]
            for j, yj in enumerate(y):
                if yj != 0 and row[j] != 0:
                    total += xi * row[j] * yj
        return total

    def pairing_with(self, x: Sequence) -> Vector:
        """The covector omega(x, .)."""
        x = linalg.vec(x)
        return tuple(
            sum((x[i] * self.entries[i][j] for i in range(self.dim)), ZERO)
            for j in range(self.dim)
        )

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def rank(self) -> int:
        return linalg.rank(self.entries)

    def scaled(self, c) -> "TwoForm":
        c = frac(c)
        return TwoForm([[c * v for v in row] for row in self.entries])

    def plus(self, other: "TwoForm") -> "TwoForm":
        return TwoForm(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, TwoForm) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"TwoForm(dim={self.dim})"


class ThreeForm:
    """An alternating trilinear form; stored sparsely on ordered triples."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: dict[tuple[int, int, int], Fraction]) -> None:
        clean = {}
        for (i, j, k), v in entries.items():
            if not i < j < k:
                raise ValueError("three-form keys must be strictly ordered")
            if v != 0:
                clean[(i, j, k)] = frac(v)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("ThreeForm is immutable")

    def is_zero(self) -> bool:
        return not self.entries

    def coefficient(self, i: int, j: int, k: int) -> Fraction:
        return self.entries.get((i, j, k), ZERO)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ThreeForm)
            and self.dim == other.dim
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"ThreeForm(dim={self.dim}, nonzero={len(self.entries)})"


def ce_differential_covector(alg: LieAlgebra, phi: Covector) -> TwoForm:
    """d(phi)(x, y) = -phi([x, y]) on basis pairs."""
    n = alg.dim
    m = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            val = -sum(
                (c * b for c, b in zip(phi.coeffs, alg.table[i][j])), ZERO
            )
            m[i][j] = val
            m[j][i] = -val
    return TwoForm(m)


def ce_differential(alg: LieAlgebra, omega: TwoForm) -> ThreeForm:
    """d(omega) on basis triples, with the fixed sign convention."""
    if omega.dim != alg.dim:
        raise ValueError("form dimension does not match the algebra")
    n = alg.dim
    basis = [linalg.unit_vec(n, i) for i in range(n)]
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                v = (
                    -omega.apply(alg.table[i][j], basis[k])
                    + omega.apply(alg.table[i][k], basis[j])
                    - omega.apply(alg.table[j][k], basis[i])
                )
                if v != 0:
                    entries[(i, j, k)] = v
    return ThreeForm(n, entries)


def is_closed(alg: LieAlgebra, omega: TwoForm) -> bool:
    return ce_differential(alg, omega).is_zero()


def wedge_with_covector(dphi: TwoForm, phi: Covector) -> ThreeForm:
    """(dphi ^ phi)(x,y,z) = dphi(x,y)phi(z) - dphi(x,z)phi(y) + dphi(y,z)phi(x)."""
    n = dphi.dim
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                v = (
                    dphi.entries[i][j] * phi.coeffs[k]
                    - dphi.entries[i][k] * phi.coeffs[j]
                    + dphi.entries[j][k] * phi.coeffs[i]
                )
                if v != 0:
                    entries[(i, j, k)] = v
    return ThreeForm(n, entries)


def restrict(omega: TwoForm, s: Subspace) -> TwoForm:
    """Matrix of omega on s, in the echelon basis of s."""
    k = s.dim
    m = [[ZERO] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            v = omega.apply(s.rows[i], s.rows[j])
            m[i][j] = v
            m[j][i] = -v
    return TwoForm(m)


def radical(omega: TwoForm, s: Subspace) -> Subspace:
    """{x in s : omega(x, y) = 0 for all y in s}, as an ambient subspace."""
    k = s.dim
    if k == 0:
        return s
    restr = restrict(omega, s)
    sols = linalg.nullspace(restr.entries, k)
    vecs = []
    for sol in sols:
        v = linalg.zero_vec(s.ambient_dim)
        for c, r in zip(sol, s.rows):
            v = linalg.vadd(v, linalg.vscale(c, r))
        vecs.append(v)
    return Subspace(s.ambient_dim, vecs)


def kernel(omega: TwoForm) -> Subspace:
    """Radical of omega on the whole space."""
    return radical(omega, Subspace.full(omega.dim))


def symplectic_orthogonal(omega: TwoForm, s: Subspace) -> Subspace:
    """{x : omega(x, y) = 0 for all y in s} inside the whole space."""
    rows = [omega.pairing_with(r) for r in s.rows]
    return Subspace(omega.dim, linalg.nullspace(rows, omega.dim))


def closed_two_form_basis(alg: LieAlgebra) -> list[TwoForm]:
    """Canonical basis of the space of closed 2-forms (cocycle condition
    solved exactly as a rational linear system)."""
    n = alg.dim
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pair_index = {p: t for t, p in enumerate(pairs)}
    basis_v = [linalg.unit_vec(n, i) for i in range(n)]

    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                row = [ZERO] * len(pairs)

                def add_pairing(x: Vector, y: Vector, sign: Fraction, row=row):
                    for a, xa in enumerate(x):
                        if xa == 0:
                            continue
                        for b, yb in enumerate(y):
                            if yb == 0:
                                continue
                            if a == b:
                                continue
                            t = pair_index[(a, b)] if a < b else pair_index[(b, a)]
                            s = ONE if a < b else -ONE
                            row[t] += sign * xa * yb * s

                add_pairing(alg.table[i][j], basis_v[k], -ONE)
                add_pairing(alg.table[i][k], basis_v[j], ONE)
                add_pairing(alg.table[j][k], basis_v[i], -ONE)
                rows.append(tuple(row))
    sols = linalg.nullspace(rows, len(pairs))
    out = []
    for sol in sols:
        m = [[ZERO] * n for _ in range(n)]
        for t, (i, j) in enumerate(pairs):
            m[i][j] = sol[t]
            m[j][i] = -sol[t]
        out.append(TwoForm(m))
    return out

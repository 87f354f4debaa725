"""Lie algebras by exact rational structure constants, and canonical subspaces.

A Subspace is stored as its reduced row echelon basis, which is the unique
canonical representative of a rational subspace: equality of subspaces is
literal equality of matrices.  A LieAlgebra is a dense table of bracket
vectors c[i][j] = [e_i, e_j] over a named basis.  All predicates (subalgebra,
ideal, nilpotent, ...) are decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .linalg import Matrix, Vector, ZERO, ONE, frac


class SolvdiagError(Exception):
    """Base error; `code` is the stable machine-readable identifier."""

    code = "ERROR"


class SubspaceNotNestedError(SolvdiagError):
    code = "SUBSPACE_NOT_NESTED"


class NotSubalgebraError(SolvdiagError):
    code = "NOT_SUBALGEBRA"


class NotAnIdealError(SolvdiagError):
    code = "NOT_AN_IDEAL"


class Subspace:
    """A subspace of Q^n in canonical reduced-row-echelon form (immutable)."""

    __slots__ = ("ambient_dim", "rows", "pivots")

    def __init__(self, ambient_dim: int, rows: Iterable[Iterable]) -> None:
        red, pivots = linalg.rref([linalg.vec(r) for r in rows])
        for r in red:
            if len(r) != ambient_dim:
                raise ValueError("row length does not match ambient dimension")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "rows", red)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, [])

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, linalg.identity(n))

    @classmethod
    def span(cls, vectors: Sequence[Sequence], ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, vectors)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def reduce_vector(self, v: Sequence) -> Vector:
        """Remainder of v after eliminating along the echelon rows."""
        v = list(linalg.vec(v))
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                c = v[p]
                v = [x - c * y for x, y in zip(v, row)]
        return tuple(v)

    def contains_vector(self, v: Sequence) -> bool:
        return linalg.is_zero_vec(self.reduce_vector(v))

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(r) for r in other.rows)

    def coordinates_of(self, v: Sequence) -> Vector | None:
        """Coefficients of v in the echelon row basis, or None if v is outside."""
        v = linalg.vec(v)
        if not self.contains_vector(v):
            return None
        return tuple(v[p] for p in self.pivots)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, list(self.rows) + list(other.rows))

    def annihilator(self) -> "Subspace":
        """Covectors vanishing on this subspace (coordinates in the dual basis)."""
        return Subspace(self.ambient_dim, linalg.nullspace(self.rows, self.ambient_dim))

    def intersect(self, other: "Subspace") -> "Subspace":
        ann = list(self.annihilator().rows) + list(other.annihilator().rows)
        return Subspace(self.ambient_dim, linalg.nullspace(ann, self.ambient_dim))

    def sort_key(self):
        """Total order used for every canonical tie-break: earliest pivots win."""
        return (self.dim, self.pivots, self.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.rows))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}/{self.ambient_dim}, rows={self.rows!r})"


def vector_sort_key(v: Vector):
    """Canonical order on normalized vectors: earliest leading entry wins."""
    pivot = next((i for i, x in enumerate(v) if x != 0), len(v))
    return (pivot, v)


def normalize_vector(v: Vector) -> Vector:
    for x in v:
        if x != 0:
            return linalg.vscale(ONE / x, v)
    return v


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q given by structure constants."""

    __slots__ = ("dim", "names", "table")

    def __init__(self, names: Sequence[str], table: Sequence[Sequence[Sequence]]) -> None:
        names = tuple(names)
        n = len(names)
        if len(set(names)) != n:
            raise ValueError("basis names must be distinct")
        tab = tuple(tuple(linalg.vec(table[i][j]) for j in range(n)) for i in range(n))
        for i in range(n):
            for j in range(n):
                if len(tab[i][j]) != n:
                    raise ValueError("bracket vector of wrong length")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "table", tab)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("LieAlgebra is immutable")

    @classmethod
    def from_brackets(cls, names: Sequence[str], entries) -> "LieAlgebra":
        """Build from sparse brackets {(name_i, name_j): {name_k: rational}}.

        Antisymmetry is filled in; a contradictory duplicate (both (i,j) and
        (j,i) given, not negatives of each other) is a hard error.
        """
        names = tuple(names)
        idx = {nm: i for i, nm in enumerate(names)}
        n = len(names)
        table = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        seen: dict[tuple[int, int], Vector] = {}
        for (a, b), val in entries.items():
            i, j = idx[a], idx[b]
            if i == j:
                raise ValueError(f"bracket [{a},{a}] must be zero, not given")
            v = [ZERO] * n
            for k_name, c in val.items():
                v[idx[k_name]] = frac(c)
            v = tuple(v)
            if (i, j) in seen:
                if seen[(i, j)] != v:
                    raise ValueError(f"contradictory duplicate bracket [{a},{b}]")
                continue
            if (j, i) in seen and seen[(j, i)] != linalg.vscale(-ONE, v):
                raise ValueError(f"brackets [{a},{b}] and [{b},{a}] are not antisymmetric")
            seen[(i, j)] = v
            table[i][j] = list(v)
            if (j, i) not in seen:
                table[j][i] = [-x for x in v]
        return cls(names, table)

    def index_of(self, name: str) -> int:
        return self.names.index(name)

    def basis_vector(self, name: str) -> Vector:
        return linalg.unit_vec(self.dim, self.index_of(name))

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        x = linalg.vec(x)
        y = linalg.vec(y)
        out = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                cij = self.table[i][j]
                if any(c != 0 for c in cij):
                    f = xi * yj
                    out = [o + f * c for o, c in zip(out, cij)]
        return tuple(out)

    def ad_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ad_x = [x, .] acting on coordinate columns (row-major)."""
        cols = [self.bracket(x, linalg.unit_vec(self.dim, j)) for j in range(self.dim)]
        return linalg.transpose(tuple(cols))

    def bracket_spans(self, s: Subspace, t: Subspace) -> Subspace:
        vecs = [self.bracket(a, b) for a in s.rows for b in t.rows]
        return Subspace(self.dim, vecs)

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, names={self.names!r})"


@dataclass(frozen=True)
class AlgebraValidationReport:
    antisymmetry_failures: tuple[tuple[int, int], ...]
    jacobi_failures: tuple[tuple[int, int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.antisymmetry_failures and not self.jacobi_failures


def validate_algebra(alg: LieAlgebra) -> AlgebraValidationReport:
    """Check antisymmetry of the table and the Jacobi identity on all triples."""
    anti = []
    n = alg.dim
    for i in range(n):
        if any(c != 0 for c in alg.table[i][i]):
            anti.append((i, i))
        for j in range(i + 1, n):
            if alg.table[i][j] != linalg.vscale(-ONE, alg.table[j][i]):
                anti.append((i, j))
    jac = []
    basis = [linalg.unit_vec(n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = linalg.vadd(
                    linalg.vadd(
                        alg.bracket(alg.bracket(basis[i], basis[j]), basis[k]),
                        alg.bracket(alg.bracket(basis[j], basis[k]), basis[i]),
                    ),
                    alg.bracket(alg.bracket(basis[k], basis[i]), basis[j]),
                )
                if not linalg.is_zero_vec(total):
                    jac.append((i, j, k))
    return AlgebraValidationReport(tuple(anti), tuple(jac))


def subalgebra_closure(alg: LieAlgebra, vectors: Sequence[Sequence]) -> Subspace:
    """Smallest bracket-closed subspace containing the given vectors."""
    cur = Subspace(alg.dim, vectors)
    while True:
        nxt = cur.sum(alg.bracket_spans(cur, cur))
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def ideal_closure(alg: LieAlgebra, s: Subspace) -> Subspace:
    """Smallest ideal of the algebra containing s."""
    cur = s
    full = Subspace.full(alg.dim)
    while True:
        nxt = cur.sum(alg.bracket_spans(full, cur))
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def is_subalgebra(alg: LieAlgebra, s: Subspace) -> bool:
    return all(
        s.contains_vector(alg.bracket(a, b))
        for i, a in enumerate(s.rows)
        for b in s.rows[i + 1 :]
    )


def is_ideal_in(alg: LieAlgebra, s: Subspace, t: Subspace) -> bool:
    """Whether [t, s] is contained in s.  Requires s within t."""
    if not t.contains(s):
        raise SubspaceNotNestedError("s is not contained in t")
    return all(s.contains_vector(alg.bracket(x, y)) for x in t.rows for y in s.rows)


def normalizer_of_in(alg: LieAlgebra, s: Subspace, t: Subspace) -> Subspace:
    """{x in t : [x, s] within s}, computed exactly."""
    if s.is_zero():
        return t
    ann = s.annihilator().rows  # functionals cutting out s
    # parameterize x = sum u_i t_i over t's echelon basis; linear conditions:
    # for each s basis vector w and each annihilator functional f:
    #   f([x, w]) = sum_i u_i f([t_i, w]) = 0
    rows = []
    for w in s.rows:
        for f in ann:
            rows.append(
                tuple(
                    sum((fk * bk for fk, bk in zip(f, alg.bracket(ti, w))), ZERO)
                    for ti in t.rows
                )
            )
    sols = linalg.nullspace(rows, len(t.rows))
    vecs = []
    for sol in sols:
        v = linalg.zero_vec(alg.dim)
        for c, ti in zip(sol, t.rows):
            v = linalg.vadd(v, linalg.vscale(c, ti))
        vecs.append(v)
    return Subspace(alg.dim, vecs)


class SeriesKind(Enum):
    DERIVED = "derived"
    LOWER_CENTRAL = "lower_central"


def series(alg: LieAlgebra, kind: SeriesKind) -> list[Subspace]:
    """Derived or lower central series, from g down to stabilization."""
    out = [Subspace.full(alg.dim)]
    while True:
        cur = out[-1]
        if kind is SeriesKind.DERIVED:
            nxt = alg.bracket_spans(cur, cur)
        else:
            nxt = alg.bracket_spans(Subspace.full(alg.dim), cur)
        if nxt == cur:
            break
        out.append(nxt)
        if nxt.is_zero():
            break
    return out


def derived_subalgebra(alg: LieAlgebra) -> Subspace:
    return alg.bracket_spans(Subspace.full(alg.dim), Subspace.full(alg.dim))


def is_solvable(alg: LieAlgebra) -> bool:
    return series(alg, SeriesKind.DERIVED)[-1].is_zero()


def is_nilpotent(alg: LieAlgebra) -> bool:
    return series(alg, SeriesKind.LOWER_CENTRAL)[-1].is_zero()


def quotient(alg: LieAlgebra, ideal: Subspace) -> tuple[LieAlgebra, Matrix]:
    """Quotient algebra by an ideal, plus the projection matrix.

    Quotient coordinates are the ambient coordinates away from the ideal's
    pivot columns; names are inherited from those coordinates.
    """
    if not is_ideal_in(alg, ideal, Subspace.full(alg.dim)):
        raise NotAnIdealError("quotient requires an ideal of the full algebra")
    keep = [i for i in range(alg.dim) if i not in ideal.pivots]
    m = len(keep)

    def project(v: Vector) -> Vector:
        r = ideal.reduce_vector(v)
        return tuple(r[i] for i in keep)

    proj = tuple(project(linalg.unit_vec(alg.dim, j)) for j in range(alg.dim))
    proj = linalg.transpose(proj)  # m x n, rows = quotient coordinates
    names = tuple(alg.names[i] for i in keep)
    table = [[None] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            br = alg.bracket(linalg.unit_vec(alg.dim, keep[a]), linalg.unit_vec(alg.dim, keep[b]))
            table[a][b] = project(br)
    return LieAlgebra(names, table), proj


def subalgebra_as_algebra(alg: LieAlgebra, s: Subspace) -> tuple[LieAlgebra, Matrix]:
    """The subalgebra as a standalone algebra, plus its inclusion rows.

    Basis of the result = the echelon rows of s (names b0, b1, ...); the
    returned matrix has those rows, so coordinates lift via row combinations.
    """
    if not is_subalgebra(alg, s):
        raise NotSubalgebraError("subspace is not bracket-closed")
    k = s.dim
    names = tuple(f"b{i}" for i in range(k))
    table = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            br = alg.bracket(s.rows[i], s.rows[j])
            coords = s.coordinates_of(br)
            if coords is None:  # pragma: no cover - guarded by is_subalgebra
                raise NotSubalgebraError("bracket escapes the subspace")
            table[i][j] = coords
    return LieAlgebra(names, table), s.rows


def is_nilpotent_subalgebra(alg: LieAlgebra, s: Subspace) -> bool:
    if s.is_zero():
        return True
    sub, _ = subalgebra_as_algebra(alg, s)
    return is_nilpotent(sub)


# ---------------------------------------------------------------------------
# rational common eigenvectors (constructive Lie-theorem descent over Q)


def _hyperplane_in(inside: Subspace, containing: Subspace) -> Subspace:
    """Greedy canonical hyperplane of `inside` containing `containing`.

    Extends by the earliest echelon rows of `inside`; the result has the
    lexicographically least pivot set among such hyperplanes.
    """
    target = inside.dim - 1
    cur = containing
    for row in inside.rows:
        if cur.dim == target:
            break
        cand = cur.sum(Subspace(inside.ambient_dim, [row]))
        if cand.dim > cur.dim:
            cur = cand
    if cur.dim != target:  # pragma: no cover - containing must fit
        raise ValueError("cannot extend to a hyperplane")
    return cur


def common_eigenvector(
    alg: LieAlgebra, rep: Sequence[Matrix], space_dim: int
) -> Vector | None:
    """A rational common eigenvector of the solvable action, or None.

    rep[i] is the matrix of the action of basis vector e_i on Q^space_dim.
    Returns the canonical least normalized eigenvector, or None when the
    descent needs an eigenvalue that is not rational (or the algebra turns
    out non-solvable along the way).
    """

    def act(elem: Vector) -> Matrix:
        out = [[ZERO] * space_dim for _ in range(space_dim)]
        for c, m in zip(elem, rep):
            if c == 0:
                continue
            for i in range(space_dim):
                row = m[i]
                for j in range(space_dim):
                    if row[j] != 0:
                        out[i][j] += c * row[j]
        return tuple(tuple(r) for r in out)

    def recurse(sub: Subspace) -> Vector | None:
        ops = [act(r) for r in sub.rows]
        if all(all(x == 0 for row in m for x in row) for m in ops):
            return linalg.unit_vec(space_dim, 0)
        derived = alg.bracket_spans(sub, sub)
        if derived.dim >= sub.dim:
            return None  # not solvable
        hyper = _hyperplane_in(sub, derived)
        w = recurse(hyper)
        if w is None:
            return None
        # the weight of the hyperplane on w
        lam = []
        for r in hyper.rows:
            img = linalg.matvec(act(r), w)
            # img must be collinear with w
            coef = None
            for a, b in zip(img, w):
                if b != 0:
                    coef = a / b
                    break
            if coef is None:
                coef = ZERO
            if img != linalg.vscale(coef, w):  # pragma: no cover - theory guard
                raise SolvdiagError("descent produced a non-eigenvector")
            lam.append(coef)
        # common eigenspace of the hyperplane for that weight
        rows = []
        for r, l in zip(hyper.rows, lam):
            m = act(r)
            for i in range(space_dim):
                rows.append(
                    tuple(m[i][j] - (l if i == j else ZERO) for j in range(space_dim))
                )
        wspace = linalg.nullspace(rows, space_dim)
        if not wspace:  # pragma: no cover - w is in there
            raise SolvdiagError("empty common eigenspace")
        wsub = Subspace(space_dim, wspace)
        # complement direction of the hyperplane inside sub
        z = None
        for r in sub.rows:
            if not hyper.contains_vector(r):
                z = r
                break
        if z is None:  # pragma: no cover
            raise SolvdiagError("no complement direction")
        mz = act(z)
        # invariance of the weight space (char 0); restrict mz to it
        k = wsub.dim
        restr = []
        for r in wsub.rows:
            img = linalg.matvec(mz, r)
            coords = wsub.coordinates_of(img)
            if coords is None:  # pragma: no cover - invariance lemma
                raise SolvdiagError("weight space not invariant")
            restr.append(coords)
        restr_m = linalg.transpose(tuple(restr))  # act on coordinate columns
        best: Vector | None = None
        for mu in linalg.rational_eigenvalues(restr_m):
            rows_mu = [
                tuple(restr_m[i][j] - (mu if i == j else ZERO) for j in range(k))
                for i in range(k)
            ]
            for sol in linalg.nullspace(rows_mu, k):
                v = linalg.zero_vec(space_dim)
                for c, r in zip(sol, wsub.rows):
                    v = linalg.vadd(v, linalg.vscale(c, r))
                v = normalize_vector(v)
                if best is None or vector_sort_key(v) < vector_sort_key(best):
                    best = v
        return best

    return recurse(Subspace.full(alg.dim))


class SolvabilityVerdict(Enum):
    COMPLETELY_SOLVABLE = "COMPLETELY_SOLVABLE"
    NOT_SOLVABLE = "NOT_SOLVABLE"
    UNDECIDED_IRRATIONAL_SPECTRUM = "UNDECIDED_IRRATIONAL_SPECTRUM"


@dataclass(frozen=True)
class SolvabilityCertificate:
    verdict: SolvabilityVerdict
    witness: tuple[Subspace, ...] | None  # ascending chain of ideals of g, dims 1..n


def complete_solvability_certificate(alg: LieAlgebra) -> SolvabilityCertificate:
    """Certify complete solvability by a flag of ideals, over Q.

    The witness chain is produced by repeated rational common-eigenvector
    descent on quotients; if the spectrum leaves Q the verdict is
    UNDECIDED_IRRATIONAL_SPECTRUM (never approximated).
    """
    if not is_solvable(alg):
        return SolvabilityCertificate(SolvabilityVerdict.NOT_SOLVABLE, None)
    chain: list[Subspace] = []
    cur = alg
    lift_rows: list[Vector] = []  # rows spanning the part already quotiented out
    # keep track of coordinates: we rebuild members in the original algebra
    members: list[Subspace] = []
    carried = Subspace.zero(alg.dim)
    while cur.dim > 0:
        rep = [cur.ad_matrix(linalg.unit_vec(cur.dim, i)) for i in range(cur.dim)]
        v = common_eigenvector(cur, rep, cur.dim)
        if v is None:
            return SolvabilityCertificate(
                SolvabilityVerdict.UNDECIDED_IRRATIONAL_SPECTRUM, None
            )
        # lift v back to the original coordinates
        lifted = _lift_through_quotients(alg, carried, v)
        carried = carried.sum(Subspace(alg.dim, [lifted]))
        members.append(carried)
        cur, _ = _quotient_of_original(alg, carried)
    return SolvabilityCertificate(SolvabilityVerdict.COMPLETELY_SOLVABLE, tuple(members))


def _quotient_of_original(alg: LieAlgebra, ideal: Subspace) -> tuple[LieAlgebra, Matrix]:
    return quotient(alg, ideal)


def _lift_through_quotients(alg: LieAlgebra, carried: Subspace, v: Vector) -> Vector:
    """Interpret v (coordinates of alg/carried) as an ambient vector."""
    keep = [i for i in range(alg.dim) if i not in carried.pivots]
    out = [ZERO] * alg.dim
    for c, i in zip(v, keep):
        out[i] = c
    return tuple(out)

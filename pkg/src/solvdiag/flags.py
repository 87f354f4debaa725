"""Full chains of nested subalgebras: validation, search, completion.

A chain is a strictly increasing list of subspaces, one per dimension,
ending at the full algebra.  Chains constructed here always include the
zero subspace; stored chains from input documents keep whatever first
member they declare, and every consumer honors that.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from . import linalg
from .algebra import (
    LieAlgebra,
    NotSubalgebraError,
    SolvabilityVerdict,
    SolvdiagError,
    Subspace,
    _hyperplane_in,
    complete_solvability_certificate,
    is_ideal_in,
    is_subalgebra,
    subalgebra_as_algebra,
)
from .forms import Covector, ce_differential_covector, wedge_with_covector


class ChainNotNestedError(SolvdiagError):
    code = "CHAIN_NOT_NESTED"


class IncompleteError(SolvdiagError):
    code = "INCOMPLETE"


class Flag:
    """A chain of subspaces, kept exactly as given (validation is separate)."""

    __slots__ = ("members",)

    def __init__(self, members: Iterable[Subspace]) -> None:
        ms = tuple(members)
        if not ms:
            raise ValueError("a flag needs at least one member")
        ambient = ms[0].ambient_dim
        for m in ms:
            if m.ambient_dim != ambient:
                raise ValueError("flag members live in different ambient spaces")
        object.__setattr__(self, "members", ms)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("Flag is immutable")

    @property
    def ambient_dim(self) -> int:
        return self.members[0].ambient_dim

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(m.dim for m in self.members)

    @property
    def nonzero_members(self) -> tuple[Subspace, ...]:
        return tuple(m for m in self.members if not m.is_zero())

    def __eq__(self, other) -> bool:
        return isinstance(other, Flag) and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"Flag(dims={self.dims})"


@dataclass(frozen=True)
class FlagValidationReport:
    """Tiered per-member checks.

    chain_ok gates the numeric shape (consecutive dims, nesting, top = full
    algebra); the subalgebra / ideal-in-next / normal-in-algebra columns are
    reported but deliberately not folded into chain_ok, so that chains copied
    from outside sources can still be diagrammed while their structural
    defects stay visible.
    """

    dims: tuple[int, ...]
    dims_consecutive: bool
    ends_at_full: bool
    nesting: tuple[bool, ...]
    subalgebra: tuple[bool, ...]
    ideal_in_next: tuple[bool, ...]
    normal_in_algebra: tuple[bool, ...]

    @property
    def chain_ok(self) -> bool:
        return self.dims_consecutive and self.ends_at_full and all(self.nesting)

    @property
    def subalgebras_ok(self) -> bool:
        return all(self.subalgebra)

    @property
    def composition_ok(self) -> bool:
        return self.chain_ok and self.subalgebras_ok and all(self.ideal_in_next)

    @property
    def all_normal(self) -> bool:
        return all(self.normal_in_algebra)


def validate_flag(alg: LieAlgebra, flag: Flag) -> FlagValidationReport:
    ms = flag.members
    dims = tuple(m.dim for m in ms)
    consecutive = all(b == a + 1 for a, b in zip(dims, dims[1:]))
    ends = ms[-1].dim == alg.dim and ms[-1] == Subspace.full(alg.dim)
    nesting = tuple(ms[i + 1].contains(ms[i]) for i in range(len(ms) - 1))
    subalg = tuple(is_subalgebra(alg, m) for m in ms)
    ideal_next = tuple(
        ms[i + 1].contains(ms[i]) and is_ideal_in(alg, ms[i], ms[i + 1])
        for i in range(len(ms) - 1)
    )
    full = Subspace.full(alg.dim)
    normal = tuple(is_ideal_in(alg, m, full) for m in ms)
    return FlagValidationReport(
        dims=dims,
        dims_consecutive=consecutive,
        ends_at_full=ends,
        nesting=nesting,
        subalgebra=subalg,
        ideal_in_next=ideal_next,
        normal_in_algebra=normal,
    )


class NormalFlagStatus(Enum):
    FOUND = "FOUND"
    NONE = "NONE"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class NormalFlagResult:
    status: NormalFlagStatus
    flag: Flag | None


def find_normal_flag(alg: LieAlgebra) -> NormalFlagResult:
    """A full chain all of whose members are ideals of the algebra.

    Construction: rational common-eigenvector descent on successive
    quotients.  NONE when the algebra is not solvable (no such chain can
    exist); UNDECIDED when the descent hits an irrational spectrum.
    """
    cert = complete_solvability_certificate(alg)
    if cert.verdict is SolvabilityVerdict.NOT_SOLVABLE:
        return NormalFlagResult(NormalFlagStatus.NONE, None)
    if cert.verdict is SolvabilityVerdict.UNDECIDED_IRRATIONAL_SPECTRUM:
        return NormalFlagResult(NormalFlagStatus.UNDECIDED, None)
    members = (Subspace.zero(alg.dim),) + tuple(cert.witness)
    return NormalFlagResult(NormalFlagStatus.FOUND, Flag(members))


def _codim_one_step(alg: LieAlgebra, low: Subspace, high: Subspace) -> Subspace | None:
    """A codimension-1 subalgebra of `high` containing `low`, or None.

    Preference: hyperplanes containing low + [high, high] (these are ideals
    of high, canonical choice by greedy echelon extension).  Fallback: kernels
    of covectors vanishing on low, where closure is the wedge condition
    d(phi) ^ phi = 0, searched over single annihilator basis covectors and
    one-parameter rational pencils of pairs (the parameter satisfies
    quadratics, solved exactly).
    """
    derived = alg.bracket_spans(high, high).intersect(high)
    w = low.sum(derived)
    if w.dim < high.dim:
        return _hyperplane_in(high, w)

    # fallback: covector search inside `high` as a standalone algebra
    sub, rows = subalgebra_as_algebra(alg, high)
    k = high.dim
    low_rows = []
    for r in low.rows:
        coords = high.coordinates_of(r)
        if coords is None:  # pragma: no cover - nesting checked by caller
            raise ChainNotNestedError("lower member escapes the upper one")
        low_rows.append(coords)
    low_in = Subspace(k, low_rows)
    ann = low_in.annihilator()

    def obstruction_is_zero(phi_vec) -> bool:
        phi = Covector(phi_vec)
        return wedge_with_covector(ce_differential_covector(sub, phi), phi).is_zero()

    def kernel_subspace(phi_vec) -> Subspace:
        sols = linalg.nullspace([tuple(phi_vec)], k)
        ambient_rows = []
        for sol in sols:
            v = linalg.zero_vec(high.ambient_dim)
            for c, r in zip(sol, high.rows):
                v = linalg.vadd(v, linalg.vscale(c, r))
            ambient_rows.append(v)
        return Subspace(high.ambient_dim, ambient_rows)

    candidates = []
    for phi_vec in ann.rows:
        if obstruction_is_zero(phi_vec):
            candidates.append(kernel_subspace(phi_vec))
    for a in range(len(ann.rows)):
        for b in range(a + 1, len(ann.rows)):
            pa, pb = ann.rows[a], ann.rows[b]
            # obstruction coefficients of pa + s*pb are quadratics in s
            da = ce_differential_covector(sub, Covector(pa))
            db = ce_differential_covector(sub, Covector(pb))
            polys = []
            for i in range(k):
                for j in range(i + 1, k):
                    for m in range(j + 1, k):
                        # sum over cyclic assignments of (dphi entry, phi entry)
                        c0 = (
                            da.entries[i][j] * pa[m]
                            - da.entries[i][m] * pa[j]
                            + da.entries[j][m] * pa[i]
                        )
                        c1 = (
                            da.entries[i][j] * pb[m]
                            - da.entries[i][m] * pb[j]
                            + da.entries[j][m] * pb[i]
                            + db.entries[i][j] * pa[m]
                            - db.entries[i][m] * pa[j]
                            + db.entries[j][m] * pa[i]
                        )
                        c2 = (
                            db.entries[i][j] * pb[m]
                            - db.entries[i][m] * pb[j]
                            + db.entries[j][m] * pb[i]
                        )
                        if c0 != 0 or c1 != 0 or c2 != 0:
                            polys.append((c0, c1, c2))
            if not polys:
                continue  # pencil identically closed; endpoints already tried
            c0, c1, c2 = polys[0]
            roots = linalg.rational_roots([c0, c1, c2])
            for s in roots:
                if all(p0 + p1 * s + p2 * s * s == 0 for p0, p1, p2 in polys):
                    phi_vec = tuple(x + s * y for x, y in zip(pa, pb))
                    candidates.append(kernel_subspace(phi_vec))
    if not candidates:
        return None
    return min(candidates, key=lambda s: s.sort_key())


def complete_flag_through(alg: LieAlgebra, chain: Sequence[Subspace]) -> Flag:
    """Grow a prescribed nested chain of subalgebras into a full flag.

    The zero subspace and the full algebra are added, every dimension gap
    is filled by repeated codimension-1 steps, and the result always
    contains the given members.  Raises IncompleteError when the bounded
    covector search cannot supply a step.
    """
    n = alg.dim
    members: list[Subspace] = []
    for s in chain:
        if s.ambient_dim != n:
            raise ValueError("chain member has the wrong ambient dimension")
        if s not in members:
            members.append(s)
    members.sort(key=lambda s: s.dim)
    for a, b in zip(members, members[1:]):
        if a.dim == b.dim or not b.contains(a):
            raise ChainNotNestedError("chain members are not strictly nested")
    for s in members:
        if not is_subalgebra(alg, s):
            raise NotSubalgebraError("chain member is not bracket-closed")
    zero = Subspace.zero(n)
    full = Subspace.full(n)
    if not members or members[0] != zero:
        members.insert(0, zero)
    if members[-1] != full:
        members.append(full)

    out: list[Subspace] = [members[0]]
    for low, high in zip(members, members[1:]):
        fill: list[Subspace] = []
        top = high
        while top.dim - low.dim >= 2:
            step = _codim_one_step(alg, low, top)
            if step is None:
                raise IncompleteError(
                    f"no codimension-1 subalgebra between dims {low.dim} and {top.dim}"
                )
            fill.append(step)
            top = step
        out.extend(reversed(fill))
        out.append(high)
    return Flag(out)

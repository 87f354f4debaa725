"""Lagrangian subalgebras of a closed 2-form and their chains.

A verified candidate is a bracket-closed subspace containing the form's
kernel, isotropic, and of the maximal possible dimension for that
(rank/2 plus the kernel).  Searches only ever report verified candidates
and say how complete they were.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .algebra import (
    LieAlgebra,
    SolvdiagError,
    Subspace,
    derived_subalgebra,
    is_subalgebra,
    subalgebra_closure,
    vector_sort_key,
)
from .deformation import NotSemisimpleError, deform_to_simple
from .diagram import (
    WeightedDiagram,
    classify_vertices,
    ensure_classified,
    kernel_chain,
    predicates,
)
from .flags import Flag, NormalFlagStatus, complete_flag_through, find_normal_flag
from .forms import NotClosedError, TwoForm, is_closed, radical, restrict


class NotLagrangianError(SolvdiagError):
    code = "NOT_LAGRANGIAN"


class NotSimpleError(SolvdiagError):
    code = "NOT_SIMPLE"


@dataclass(frozen=True)
class LagrangianCandidate:
    subspace: Subspace
    reasons: tuple[str, ...] = ()

    @property
    def verified(self) -> bool:
        return not self.reasons

    @property
    def status(self) -> str:
        return "VERIFIED" if self.verified else "REJECTED"


def verify_lagrangian(alg: LieAlgebra, omega: TwoForm, s: Subspace) -> LagrangianCandidate:
    reasons = []
    if not is_subalgebra(alg, s):
        reasons.append("not a subalgebra")
    ker = radical(omega, Subspace.full(alg.dim))
    if not s.contains(ker):
        reasons.append("does not contain the kernel of the form")
    if not restrict(omega, s).is_zero():
        reasons.append("not isotropic")
    target = omega.rank() // 2 + ker.dim
    if s.dim != target:
        reasons.append(f"dimension {s.dim} instead of {target}")
    return LagrangianCandidate(subspace=s, reasons=tuple(reasons))


def vergne_candidate(alg: LieAlgebra, omega: TwoForm, flag: Flag) -> LagrangianCandidate:
    """Sum of the radicals of the restrictions along the chain, then verified."""
    acc = Subspace.zero(alg.dim)
    for m in flag.members:
        acc = acc.sum(radical(omega, m))
    return verify_lagrangian(alg, omega, acc)


class SearchCompleteness(Enum):
    EXHAUSTIVE_WITHIN_MODE = "EXHAUSTIVE_WITHIN_MODE"
    HEURISTIC = "HEURISTIC"


@dataclass(frozen=True)
class SearchVerdict:
    found: tuple[Subspace, ...]
    completeness: SearchCompleteness


_MODES = ("vergne", "flag_adapted", "both")


def find_lagrangians(alg: LieAlgebra, omega: TwoForm, mode: str = "both") -> SearchVerdict:
    """Search for Lagrangian subalgebras.

    vergne: radical summation along a normal chain.  flag_adapted:
    backtracking over the echelon generators of the normal chain's members,
    growing bracket-closed isotropic subspaces from the form's kernel.  The
    search is exhaustive for the generator family it draws from only when
    the algebra is abelian; otherwise the verdict is marked heuristic.
    """
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}")
    if not is_closed(alg, omega):
        raise NotClosedError("the 2-form is not closed")
    n = alg.dim
    found: set[Subspace] = set()
    normal = find_normal_flag(alg)

    if mode in ("vergne", "both") and normal.status is NormalFlagStatus.FOUND:
        cand = vergne_candidate(alg, omega, normal.flag)
        if cand.verified:
            found.add(cand.subspace)

    ran_adapted = False
    if mode in ("flag_adapted", "both") and normal.status is NormalFlagStatus.FOUND:
        ran_adapted = True
        ker = radical(omega, Subspace.full(n))
        target = omega.rank() // 2 + ker.dim
        gens: list = []
        for member in normal.flag.members:
            for row in member.rows:
                if row not in gens:
                    gens.append(row)
        gens.sort(key=vector_sort_key)

        def extend(cur: Subspace, start: int) -> None:
            if cur.dim == target:
                cand = verify_lagrangian(alg, omega, cur)
                if cand.verified:
                    found.add(cur)
                return
            for i in range(start, len(gens)):
                v = gens[i]
                if cur.contains_vector(v):
                    continue
                if any(omega.apply(v, r) != 0 for r in cur.rows):
                    continue
                grown = subalgebra_closure(alg, list(cur.rows) + [v])
                if grown.dim > target:
                    continue
                if not restrict(omega, grown).is_zero():
                    continue
                extend(grown, i + 1)

        start = ker
        if is_subalgebra(alg, start) and restrict(omega, start).is_zero():
            extend(start, 0)

    exhaustive = ran_adapted and derived_subalgebra(alg).is_zero()
    return SearchVerdict(
        found=tuple(sorted(found, key=lambda s: s.sort_key())),
        completeness=(
            SearchCompleteness.EXHAUSTIVE_WITHIN_MODE
            if exhaustive
            else SearchCompleteness.HEURISTIC
        ),
    )


def lagrangian_to_flag(alg: LieAlgebra, omega: TwoForm, lagr: Subspace) -> Flag:
    """Complete kernel < lagrangian < algebra into a full chain.

    The resulting diagram is checked to be simple with its singular vertex
    exactly at the lagrangian.
    """
    cand = verify_lagrangian(alg, omega, lagr)
    if not cand.verified:
        raise NotLagrangianError("; ".join(cand.reasons))
    if omega.is_zero():
        raise NotSimpleError("the zero form admits no singular vertex")
    ker = radical(omega, Subspace.full(alg.dim))
    chain = [s for s in (ker, lagr) if not s.is_zero()]
    flag = complete_flag_through(alg, chain)
    d = classify_vertices(kernel_chain(alg, omega, flag))
    singulars = d.singular_vertices()
    if not predicates(alg, d).simple or singulars[0].member != lagr or singulars[0].kernel != lagr:
        raise SolvdiagError(
            "completed chain does not give a simple diagram pinned at the lagrangian"
        )
    return flag


def diagram_to_lagrangian(
    alg: LieAlgebra, omega: TwoForm, diagram: WeightedDiagram
) -> LagrangianCandidate:
    """Read the candidate off a simple diagram's singular vertex.

    The member is handed to verification, so a chain of subspaces that are
    not actually bracket-closed yields an honest rejection.
    """
    d = ensure_classified(diagram)
    if not predicates(alg, d).simple:
        raise NotSimpleError("the diagram does not have exactly one attractive vertex")
    return verify_lagrangian(alg, omega, d.singular_vertices()[0].member)


@dataclass(frozen=True)
class PipelineResult:
    premise: bool
    flag: Flag | None
    notes: tuple[str, ...] = ()


def kahler_premise_pipeline(alg: LieAlgebra, omega: TwoForm) -> PipelineResult:
    """Nondegeneracy on the derived subalgebra, then a simple chain through it.

    The premise asks for a nonzero derived subalgebra on which the form
    restricts nondegenerately (an abelian algebra never qualifies, by
    convention).  When it holds, a chain through the derived subalgebra is
    completed and deformed to a simple one if possible.
    """
    derived = derived_subalgebra(alg)
    if derived.is_zero():
        return PipelineResult(False, None, ("derived subalgebra is zero",))
    if not radical(omega, derived).is_zero():
        return PipelineResult(
            False, None, ("form restricted to the derived subalgebra is degenerate",)
        )
    flag = complete_flag_through(alg, [derived])
    try:
        return PipelineResult(True, deform_to_simple(alg, omega, flag), ())
    except NotSemisimpleError:
        return PipelineResult(
            True, None, ("chain through the derived subalgebra is not deformable",)
        )

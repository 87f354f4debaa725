"""Primitivity of a pair (algebra, isotropy subalgebra).

All reductions go through hyperplanes: in a solvable algebra a proper
transitive subalgebra is always contained in one of codimension 1, so the
searches enumerate hyperplane subalgebras.  Ideal hyperplanes (those
containing the derived subalgebra) are decided exactly; the remaining
hyperplane subalgebras are kernels of covectors phi with d(phi) ^ phi = 0
and are searched over duals and rational pencils, with an exact emptiness
certificate where a wedge coefficient is a nonzero constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from enum import Enum

from . import linalg
from .algebra import (
    LieAlgebra,
    NotSubalgebraError,
    SolvabilityVerdict,
    SolvdiagError,
    Subspace,
    complete_solvability_certificate,
    derived_subalgebra,
    ideal_closure,
    is_nilpotent,
    is_solvable,
    is_subalgebra,
    quotient,
    subalgebra_as_algebra,
)
from .diagram import ensure_classified, weight_zero_singulars
from .forms import Covector, TwoForm, ce_differential_covector, radical


class NotSolvableError(SolvdiagError):
    code = "NOT_SOLVABLE"


@dataclass(frozen=True)
class PairPresentation:
    algebra: LieAlgebra
    isotropy: Subspace

    def __post_init__(self) -> None:
        if self.isotropy.ambient_dim != self.algebra.dim:
            raise ValueError("isotropy lives in the wrong ambient space")
        if not is_subalgebra(self.algebra, self.isotropy):
            raise NotSubalgebraError("isotropy is not bracket-closed")


class PrimitivityStatus(Enum):
    PRIMITIVE = "PRIMITIVE"
    NOT_PRIMITIVE = "NOT_PRIMITIVE"
    QUASI_PRIMITIVE = "QUASI_PRIMITIVE"
    NOT_QUASI_PRIMITIVE = "NOT_QUASI_PRIMITIVE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class PrimitivityVerdict:
    status: PrimitivityStatus
    witness: Subspace | None = None
    searched: tuple[str, ...] = ()


def rank_ratio(pair: PairPresentation) -> Fraction:
    n = pair.algebra.dim
    k = pair.isotropy.dim
    return Fraction(k, n - k + 1)


def transitive_test(pair: PairPresentation, s: Subspace) -> bool:
    """Does s, together with the isotropy, span the whole algebra?"""
    if not is_subalgebra(pair.algebra, s):
        raise NotSubalgebraError("candidate is not bracket-closed")
    return s.sum(pair.isotropy) == Subspace.full(pair.algebra.dim)


def _ideal_hyperplane_witness(alg: LieAlgebra, h: Subspace) -> Subspace | None:
    """A codimension-1 ideal transitive over h, or None (exact).

    Every codimension-1 ideal contains the derived subalgebra, so such a
    witness exists iff h is not inside the derived subalgebra; the witness
    is read off the quotient canonically.
    """
    derived = derived_subalgebra(alg)
    if derived.contains(h):
        return None
    _, proj = quotient(alg, derived)
    img_rows = [linalg.matvec(proj, r) for r in h.rows]
    img = Subspace(len(proj), img_rows)
    p = img.pivots[0]
    return Subspace(alg.dim, linalg.nullspace([proj[p]], alg.dim))


def primitive_test(pair: PairPresentation) -> PrimitivityVerdict:
    """No proper ideal is transitive over the isotropy (decided exactly)."""
    alg, h = pair.algebra, pair.isotropy
    if not is_solvable(alg):
        raise NotSolvableError("the test needs a solvable algebra")
    witness = _ideal_hyperplane_witness(alg, h)
    if witness is None:
        return PrimitivityVerdict(PrimitivityStatus.PRIMITIVE, searched=("ideal-hyperplanes",))
    return PrimitivityVerdict(
        PrimitivityStatus.NOT_PRIMITIVE, witness=witness, searched=("ideal-hyperplanes",)
    )


def _wedge_polys(alg: LieAlgebra, parts) -> list[dict]:
    """Coefficients of d(phi) ^ phi for phi = parts[0] + sum a_i parts[i+1].

    One polynomial per basis triple, as {monomial: coefficient} with
    monomials () / (i,) / (i, j) over the parameters a_i.  Identically zero
    triples are dropped.
    """
    n = alg.dim
    diffs = [ce_differential_covector(alg, Covector(v)) for v in parts]

    def key(a: int, b: int):
        idx = sorted(x - 1 for x in (a, b) if x > 0)
        return tuple(idx)

    polys = []
    for p in range(n):
        for q in range(p + 1, n):
            for r in range(p + 1, n):
                if r <= q:
                    continue
                poly: dict = {}
                for a, da in enumerate(diffs):
                    for b, vb in enumerate(parts):
                        c = (
                            da.entries[p][q] * vb[r]
                            - da.entries[p][r] * vb[q]
                            + da.entries[q][r] * vb[p]
                        )
                        if c != 0:
                            k = key(a, b)
                            poly[k] = poly.get(k, linalg.ZERO) + c
                poly = {k: v for k, v in poly.items() if v != 0}
                if poly:
                    polys.append(poly)
    return polys


def _family_provably_empty(alg: LieAlgebra, w) -> bool:
    """Is {phi : phi(w) = 1, d(phi) ^ phi = 0} provably empty?

    Sufficient condition: some wedge coefficient is a nonzero constant on
    the affine family.
    """
    n = alg.dim
    pivot = next(i for i, c in enumerate(w) if c != 0)
    # echelon rows have leading coefficient 1, so the dual at the pivot
    # takes the value 1 on w
    phi0 = linalg.vscale(1 / linalg.frac(w[pivot]), linalg.unit_vec(n, pivot))
    psis = Subspace(n, [w]).annihilator().rows
    for poly in _wedge_polys(alg, [phi0, *psis]):
        if set(poly) == {()}:
            return True
    return False


def _pencil_witnesses(alg: LieAlgebra, h: Subspace, budget: int | None):
    """Hyperplane subalgebras transitive over h: dual covectors and pencils.

    Returns (witnesses, truncated).  A pencil e_i* + s e_j* is closed when
    all wedge coefficients vanish; they are quadratics in s, solved exactly.
    """
    n = alg.dim
    witnesses: list[Subspace] = []
    truncated = False

    def consider(phi) -> None:
        if not any(sum(c * x for c, x in zip(phi, row)) != 0 for row in h.rows):
            return
        polys = _wedge_polys(alg, [phi])
        if any(poly.get((), 0) != 0 for poly in polys):
            return
        witnesses.append(Subspace(n, linalg.nullspace([tuple(phi)], n)))

    for i in range(n):
        consider(linalg.unit_vec(n, i))

    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if budget is not None and len(pairs) > budget:
        pairs = pairs[:budget]
        truncated = True
    for i, j in pairs:
        pa = linalg.unit_vec(n, i)
        pb = linalg.unit_vec(n, j)
        polys = _wedge_polys(alg, [pa, pb])
        # collect per-triple quadratics c0 + c1 s + c2 s^2
        quads = []
        for poly in polys:
            c0 = poly.get((), linalg.ZERO)
            c1 = poly.get((0,), linalg.ZERO)
            c2 = poly.get((0, 0), linalg.ZERO)
            if c0 != 0 or c1 != 0 or c2 != 0:
                quads.append((c0, c1, c2))
        if not quads:
            consider(linalg.vadd(pa, pb))
            continue
        c0, c1, c2 = quads[0]
        for s in linalg.rational_roots([c0, c1, c2]):
            if s == 0:
                continue
            if all(q0 + q1 * s + q2 * s * s == 0 for q0, q1, q2 in quads):
                consider(linalg.vadd(pa, linalg.vscale(s, pb)))
    return witnesses, truncated


def quasi_primitive_test(
    pair: PairPresentation, pencil_budget: int | None = None
) -> PrimitivityVerdict:
    """No proper subalgebra at all is transitive over the isotropy.

    Tri-state: ideal hyperplanes are decided exactly; non-ideal hyperplane
    subalgebras are searched over dual covectors and rational pencils, and
    ruled out entirely only by the constant-coefficient certificate (or
    because the algebra is nilpotent, where every maximal subalgebra is an
    ideal).  Anything short of that is reported UNKNOWN, never guessed.
    """
    alg, h = pair.algebra, pair.isotropy
    cert = complete_solvability_certificate(alg)
    if cert.verdict is not SolvabilityVerdict.COMPLETELY_SOLVABLE:
        raise NotSolvableError(
            f"the test needs a completely solvable algebra ({cert.verdict.value})"
        )
    searched = ["ideal-hyperplanes"]
    if h.is_zero():
        return PrimitivityVerdict(PrimitivityStatus.QUASI_PRIMITIVE, searched=tuple(searched))
    witness = _ideal_hyperplane_witness(alg, h)
    if witness is not None:
        return PrimitivityVerdict(
            PrimitivityStatus.NOT_QUASI_PRIMITIVE, witness=witness, searched=tuple(searched)
        )
    if is_nilpotent(alg):
        return PrimitivityVerdict(PrimitivityStatus.QUASI_PRIMITIVE, searched=tuple(searched))

    searched.append("hyperplane-pencils")
    witnesses, truncated = _pencil_witnesses(alg, h, pencil_budget)
    if witnesses:
        best = min(witnesses, key=lambda s: s.sort_key())
        return PrimitivityVerdict(
            PrimitivityStatus.NOT_QUASI_PRIMITIVE, witness=best, searched=tuple(searched)
        )
    if not truncated and all(_family_provably_empty(alg, w) for w in h.rows):
        searched.append("emptiness-certificate")
        return PrimitivityVerdict(PrimitivityStatus.QUASI_PRIMITIVE, searched=tuple(searched))
    return PrimitivityVerdict(PrimitivityStatus.UNKNOWN, searched=tuple(searched))


@dataclass(frozen=True)
class Degrees:
    ratio: Fraction
    d_lower: Fraction
    d_within_search: Fraction
    witness_chain: tuple[Subspace, ...]


def degrees(pair: PairPresentation, pencil_budget: int | None = None) -> Degrees:
    """Degree bounds from a greedy descent through transitive hyperplanes.

    ratio is dim h / (n - dim h + 1).  Each hyperplane found transitive
    over h lowers the reachable value by 1/(n - dim h + 1); d_within_search
    is the smallest value among the subalgebras actually found, and d_lower
    is 0 exactly when the descent reached a presentation with zero
    isotropy (otherwise no better lower bound than ratio is certified).
    """
    n = pair.algebra.dim
    h = pair.isotropy
    denom = n - h.dim + 1
    r = Fraction(h.dim, denom)
    if h.is_zero():
        return Degrees(ratio=r, d_lower=r, d_within_search=r, witness_chain=())

    chain: list[Subspace] = []
    cur_alg = pair.algebra
    cur_h = h
    carrier_rows = [linalg.unit_vec(n, i) for i in range(n)]
    depth = 0
    while not cur_h.is_zero():
        wit = _ideal_hyperplane_witness(cur_alg, cur_h)
        if wit is None:
            cands, _ = _pencil_witnesses(cur_alg, cur_h, pencil_budget)
            wit = min(cands, key=lambda s: s.sort_key()) if cands else None
        if wit is None:
            break
        # carrier_rows lift wit's echelon basis to the original coordinates,
        # in basis order (not re-echelonized), so deeper coordinates compose
        lifted = []
        for row in wit.rows:
            v = linalg.zero_vec(n)
            for c, cr in zip(row, carrier_rows):
                v = linalg.vadd(v, linalg.vscale(c, cr))
            lifted.append(v)
        chain.append(Subspace(n, lifted))
        depth += 1
        sub, _ = subalgebra_as_algebra(cur_alg, wit)
        inter = cur_h.intersect(wit)
        cur_h = Subspace(wit.dim, [wit.coordinates_of(rr) for rr in inter.rows])
        carrier_rows = lifted
        cur_alg = sub
    d_within = Fraction(h.dim - depth, denom)
    d_lower = Fraction(0) if cur_h.is_zero() else r
    return Degrees(
        ratio=r, d_lower=d_lower, d_within_search=d_within, witness_chain=tuple(chain)
    )


@dataclass(frozen=True)
class IdealClosureAuditReport:
    derived_plus_isotropy_full: bool
    ideal_closure_full: bool

    @property
    def agree(self) -> bool:
        return self.derived_plus_isotropy_full == self.ideal_closure_full


def ideal_closure_audit(pair: PairPresentation, omega: TwoForm) -> IdealClosureAuditReport:
    """Cross-check two characterizations of 'no transitive proper ideal'.

    The isotropy must be the kernel of the given closed form.  The two
    sides: derived subalgebra plus isotropy spans everything, and the
    smallest ideal containing the isotropy is everything.  They are
    expected to agree on every instance.
    """
    alg, h = pair.algebra, pair.isotropy
    if radical(omega, Subspace.full(alg.dim)) != h:
        raise ValueError("isotropy must be the kernel of the form")
    if h.is_zero():
        raise ValueError("this audit needs a nonzero kernel")
    full = Subspace.full(alg.dim)
    side_a = derived_subalgebra(alg).sum(h) == full
    side_b = ideal_closure(alg, h) == full
    return IdealClosureAuditReport(
        derived_plus_isotropy_full=side_a, ideal_closure_full=side_b
    )


@dataclass(frozen=True)
class SingularCountEntry:
    connected: bool
    singular_count: int
    within_connected_bound: bool | None
    within_quasi_primitive_bound: bool | None


def singular_count_audit(
    pair: PairPresentation, diagrams, quasi_verdict: PrimitivityVerdict | None = None
) -> tuple[SingularCountEntry, ...]:
    """Bound the number of singular vertices per diagram.

    Connected diagrams allow at most 4 singular vertices; when the pair is
    quasi-primitive, at most 3.  Disconnected diagrams are skipped (both
    bounds None).
    """
    if quasi_verdict is None:
        quasi_verdict = quasi_primitive_test(pair)
    quasi = quasi_verdict.status is PrimitivityStatus.QUASI_PRIMITIVE
    out = []
    for d in diagrams:
        dc = ensure_classified(d)
        connected = not weight_zero_singulars(dc)
        count = len(dc.singular_vertices())
        if not connected:
            out.append(SingularCountEntry(False, count, None, None))
            continue
        out.append(
            SingularCountEntry(
                connected=True,
                singular_count=count,
                within_connected_bound=count <= 4,
                within_quasi_primitive_bound=(count <= 3) if quasi else None,
            )
        )
    return tuple(out)

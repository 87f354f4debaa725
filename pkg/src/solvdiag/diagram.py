"""Weighted diagrams of a closed 2-form along a full chain.

Each chain member carries the radical of the restricted form.  Adjacent
radicals always differ by exactly one dimension and one contains the
other; the direction of that step is the whole combinatorial content.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from .algebra import LieAlgebra, SolvdiagError, Subspace, is_ideal_in, is_nilpotent, is_subalgebra, subalgebra_as_algebra
from .flags import ChainNotNestedError, Flag
from .forms import NotClosedError, TwoForm, is_closed, radical


class NestingViolationError(SolvdiagError):
    code = "NESTING_VIOLATION"


class StepDirection(Enum):
    UP = "U"
    DOWN = "D"


class VertexClass(Enum):
    ENDPOINT_LEFT = "endpoint-left"
    ENDPOINT_RIGHT = "endpoint-right"
    REGULAR_REDUCIBLE = "regular-reducible"
    REGULAR_NON_REDUCIBLE = "regular-non-reducible"
    SINGULAR_ATTRACTIVE = "singular-attractive"
    SINGULAR_REPULSIVE = "singular-repulsive"


SINGULAR_CLASSES = (VertexClass.SINGULAR_ATTRACTIVE, VertexClass.SINGULAR_REPULSIVE)


@dataclass(frozen=True)
class Vertex:
    index: int  # dimension of the member
    member: Subspace
    kernel: Subspace
    weight: Fraction | None = None
    vclass: VertexClass | None = None

    @property
    def is_singular(self) -> bool:
        return self.vclass in SINGULAR_CLASSES


@dataclass(frozen=True)
class WeightedDiagram:
    vertices: tuple[Vertex, ...]
    steps: tuple[StepDirection, ...]

    @property
    def classified(self) -> bool:
        return all(v.vclass is not None for v in self.vertices)

    @property
    def kernel_dims(self) -> tuple[int, ...]:
        return tuple(v.kernel.dim for v in self.vertices)

    @property
    def member_dims(self) -> tuple[int, ...]:
        return tuple(v.member.dim for v in self.vertices)

    def singular_vertices(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if v.is_singular)


def kernel_chain(alg: LieAlgebra, omega: TwoForm, flag: Flag) -> WeightedDiagram:
    """Radicals of the restricted form along the chain, with step directions.

    The chain must have consecutive dimensions, be nested, and end at the
    full algebra; members need not be bracket-closed (the radicals are
    still well defined).  Adjacent radicals must nest one way or the other;
    anything else is reported as NESTING_VIOLATION rather than guessed.
    """
    if not is_closed(alg, omega):
        raise NotClosedError("the 2-form is not closed")
    ms = flag.members
    dims = [m.dim for m in ms]
    if any(b != a + 1 for a, b in zip(dims, dims[1:])):
        raise ChainNotNestedError("chain dimensions are not consecutive")
    if ms[-1] != Subspace.full(alg.dim):
        raise ChainNotNestedError("chain does not end at the full algebra")
    for a, b in zip(ms, ms[1:]):
        if not b.contains(a):
            raise ChainNotNestedError("chain members are not nested")

    vertices = []
    for m in ms:
        vertices.append(Vertex(index=m.dim, member=m, kernel=radical(omega, m)))
    steps = []
    for a, b in zip(vertices, vertices[1:]):
        ha, hb = a.kernel, b.kernel
        if hb.dim == ha.dim + 1 and hb.contains(ha):
            steps.append(StepDirection.UP)
        elif hb.dim == ha.dim - 1 and ha.contains(hb):
            steps.append(StepDirection.DOWN)
        else:
            raise NestingViolationError(
                f"radicals at dims {a.index} and {b.index} do not nest by one"
            )
    return WeightedDiagram(vertices=tuple(vertices), steps=tuple(steps))


def classify_vertices(diagram: WeightedDiagram) -> WeightedDiagram:
    """Attach weights and vertex classes.

    weight = dim kernel / (dim member - dim kernel + 1).  Interior classes
    by adjacent step pair: (U,D) attractive, (D,U) repulsive, (U,U)
    reducible regular, (D,D) non-reducible regular.  Endpoints are a class
    of their own and never singular.
    """
    vs = diagram.vertices
    steps = diagram.steps
    out = []
    last = len(vs) - 1
    for i, v in enumerate(vs):
        weight = Fraction(v.kernel.dim, v.member.dim - v.kernel.dim + 1)
        if i == 0:
            cls = VertexClass.ENDPOINT_LEFT
        elif i == last:
            cls = VertexClass.ENDPOINT_RIGHT
        else:
            pair = (steps[i - 1], steps[i])
            if pair == (StepDirection.UP, StepDirection.DOWN):
                cls = VertexClass.SINGULAR_ATTRACTIVE
            elif pair == (StepDirection.DOWN, StepDirection.UP):
                cls = VertexClass.SINGULAR_REPULSIVE
            elif pair == (StepDirection.UP, StepDirection.UP):
                cls = VertexClass.REGULAR_REDUCIBLE
            else:
                cls = VertexClass.REGULAR_NON_REDUCIBLE
        out.append(replace(v, weight=weight, vclass=cls))
    return WeightedDiagram(vertices=tuple(out), steps=steps)


def ensure_classified(diagram: WeightedDiagram) -> WeightedDiagram:
    return diagram if diagram.classified else classify_vertices(diagram)


def contract(diagram: WeightedDiagram) -> tuple[tuple[StepDirection, int], ...]:
    """Run-length encoding of the step sequence."""
    runs: list[tuple[StepDirection, int]] = []
    for s in diagram.steps:
        if runs and runs[-1][0] is s:
            runs[-1] = (s, runs[-1][1] + 1)
        else:
            runs.append((s, 1))
    return tuple(runs)


def uncontract(runs) -> tuple[StepDirection, ...]:
    out: list[StepDirection] = []
    for direction, count in runs:
        if count < 1:
            raise ValueError("run lengths must be positive")
        out.extend([direction] * count)
    return tuple(out)


def weight_zero_singulars(diagram: WeightedDiagram) -> tuple[int, ...]:
    """Positions (into vertices) of singular vertices with zero kernel."""
    d = ensure_classified(diagram)
    return tuple(
        i for i, v in enumerate(d.vertices) if v.is_singular and v.kernel.is_zero()
    )


def components(diagram: WeightedDiagram) -> tuple[tuple[int, int], ...]:
    """Maximal subpaths cut at zero-weight singular vertices.

    Returned as (start, end) vertex positions, inclusive; the cutting
    vertices belong to both neighbors.
    """
    d = ensure_classified(diagram)
    cuts = weight_zero_singulars(d)
    bounds = [0, *cuts, len(d.vertices) - 1]
    out = []
    for a, b in zip(bounds, bounds[1:]):
        if b > a:
            out.append((a, b))
    if not out:
        out.append((0, len(d.vertices) - 1))
    return tuple(out)


@dataclass(frozen=True)
class DiagramPredicates:
    connected: bool
    simple: bool
    semi_normal: bool
    semi_nilpotent: bool
    semi_simple: bool


def predicates(alg: LieAlgebra, diagram: WeightedDiagram) -> DiagramPredicates:
    d = ensure_classified(diagram)
    cuts = weight_zero_singulars(d)
    connected = not cuts
    singulars = d.singular_vertices()
    simple = (
        connected
        and len(singulars) == 1
        and singulars[0].vclass is VertexClass.SINGULAR_ATTRACTIVE
    )

    cut_members = [d.vertices[i].member for i in cuts]
    full = Subspace.full(alg.dim)
    semi_normal = all(is_ideal_in(alg, m, full) for m in cut_members)
    semi_nilpotent = True
    for m in cut_members:
        if not is_subalgebra(alg, m):
            semi_nilpotent = False
            break
        sub, _ = subalgebra_as_algebra(alg, m)
        if not is_nilpotent(sub):
            semi_nilpotent = False
            break

    semi_simple = semi_normal
    for start, end in components(d):
        inner = [
            v
            for v in d.vertices[start + 1 : end]
            if v.is_singular and not v.kernel.is_zero()
        ]
        if len(inner) != 1 or inner[0].vclass is not VertexClass.SINGULAR_ATTRACTIVE:
            semi_simple = False
            break
    return DiagramPredicates(
        connected=connected,
        simple=simple,
        semi_normal=semi_normal,
        semi_nilpotent=semi_nilpotent,
        semi_simple=semi_simple,
    )


def equivalence_key(diagram: WeightedDiagram):
    """Multiset of (member, kernel) pairs at singular vertices."""
    d = ensure_classified(diagram)
    return tuple(
        sorted(
            (v.member.sort_key(), v.kernel.sort_key())
            for v in d.singular_vertices()
        )
    )


def equivalent(d1: WeightedDiagram, d2: WeightedDiagram) -> bool:
    return equivalence_key(d1) == equivalence_key(d2)


class Template(Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"
    DELTA = "delta"
    DISCONNECTED = "disconnected"
    OTHER = "other"


_TEMPLATES = {
    ("U", "D"): Template.DELTA,
    ("U", "D", "U"): Template.GAMMA,
    ("U", "D", "U", "D"): Template.BETA,
    ("U", "D", "U", "D", "U"): Template.ALPHA,
}


def match_template(diagram: WeightedDiagram) -> Template:
    """Classify the contracted shape of the step sequence."""
    d = ensure_classified(diagram)
    if weight_zero_singulars(d):
        return Template.DISCONNECTED
    pattern = tuple(direction.value for direction, _ in contract(d))
    return _TEMPLATES.get(pattern, Template.OTHER)

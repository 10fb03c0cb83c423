"""Cactus recognition, cycle-form bases, and obstruction witnesses.

A cactus is a connected graph in which every edge lies on at most one
simple cycle.  On a cactus the nonlinear projector collapses to the
orthogonal one for every admissible potential; on any other graph, the sum
of two cycle forms sharing a path is a circulation whose sigma image has
nonzero divergence at the split vertex, quantified by the superposition
gap of the potential.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blocks import (
    biconnected_components,
    component_is_cycle,
    cycle_vertex_walk,
    shared_path_cycles,
)
from .errors import CriterionViolatedError, IsACactusError, NotACactusError
from .graphs import OrientedGraph, build_graph, divergence
from .hodge import hodge_project
from .potentials import Potential, find_obstruction_scale, obstruction_gap
from .projector import project

__all__ = [
    "CycleForm",
    "SharedPathWitness",
    "CactusReport",
    "analyze_cactus",
    "cycle_basis",
    "ObstructionWitness",
    "obstruction_witness",
    "CactusCriterionReport",
    "verify_cactus_criterion",
    "random_cactus",
    "random_non_cactus",
]


@dataclass(frozen=True)
class CycleForm:
    """Edge field of a simple cycle: +-1 on the cycle, 0 elsewhere.

    Signs follow the traversal recorded in ``vertices`` against the stored
    edge orientations.
    """

    edges: tuple[int, ...]
    signs: tuple[int, ...]
    vertices: tuple[int, ...]

    def as_field(self, g: OrientedGraph) -> np.ndarray:
        field = np.zeros(g.edge_count)
        field[list(self.edges)] = self.signs
        return field

    def to_dict(self) -> dict:
        return {
            "edges": list(self.edges),
            "signs": list(self.signs),
            "vertices": list(self.vertices),
        }


def _walk_to_form(g: OrientedGraph, walk: list[int]) -> CycleForm:
    lookup = {}
    for k, (t, h) in enumerate(g.edges):
        lookup[(t, h)] = (k, 1)
        lookup[(h, t)] = (k, -1)
    edges = []
    signs = []
    for i, v in enumerate(walk):
        k, s = lookup[(v, walk[(i + 1) % len(walk)])]
        edges.append(k)
        signs.append(s)
    return CycleForm(tuple(edges), tuple(signs), tuple(walk))


@dataclass(frozen=True)
class SharedPathWitness:
    """Two simple cycles agreeing along a nontrivial shared path.

    ``field`` is the sum of the two cycle forms: +-2 on the shared path,
    +-1 on the rest of either cycle, and divergence-free exactly.  At the
    ``split_vertex`` the two cycles enter together and leave separately.
    """

    cycle1: CycleForm
    cycle2: CycleForm
    shared_edges: tuple[int, ...]
    split_vertex: int
    field: np.ndarray

    def to_dict(self) -> dict:
        return {
            "cycle1": self.cycle1.to_dict(),
            "cycle2": self.cycle2.to_dict(),
            "shared_edges": list(self.shared_edges),
            "split_vertex": self.split_vertex,
            "field": list(map(float, self.field)),
        }


@dataclass(frozen=True)
class CactusReport:
    is_cactus: bool
    cycle_forms: tuple[CycleForm, ...] | None
    witness: SharedPathWitness | None

    def to_dict(self) -> dict:
        return {
            "is_cactus": self.is_cactus,
            "cycle_forms": None
            if self.cycle_forms is None
            else [c.to_dict() for c in self.cycle_forms],
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


def analyze_cactus(g: OrientedGraph) -> CactusReport:
    """Classify the graph and extract either a cycle basis or a witness.

    For a cactus the report carries one cycle form per cycle, which is an
    orthogonal basis of the circulation space.  Otherwise it carries a
    shared-path witness from some biconnected component with more edges
    than vertices.
    """
    components = biconnected_components(g)
    bad = [
        comp
        for comp in components
        if len(comp) > 1 and not component_is_cycle(g, comp)
    ]
    if not bad:
        cycles = sorted(
            (comp for comp in components if len(comp) > 1), key=min
        )
        forms = tuple(_walk_to_form(g, cycle_vertex_walk(g, comp)) for comp in cycles)
        return CactusReport(True, forms, None)
    comp = min(bad, key=min)
    walk1, walk2, shared_walk = shared_path_cycles(g, comp)
    form1 = _walk_to_form(g, walk1)
    form2 = _walk_to_form(g, walk2)
    shared_edges = tuple(
        form1.edges[i] for i in range(len(shared_walk) - 1)
    )
    field = form1.as_field(g) + form2.as_field(g)
    witness = SharedPathWitness(
        cycle1=form1,
        cycle2=form2,
        shared_edges=shared_edges,
        split_vertex=shared_walk[-1],
        field=field,
    )
    return CactusReport(False, None, witness)


def cycle_basis(g: OrientedGraph) -> tuple[CycleForm, ...]:
    """Edge-disjoint cycle forms spanning the circulation space.

    Raises:
        NotACactusError: some edge lies on two simple cycles.
    """
    report = analyze_cactus(g)
    if not report.is_cactus:
        raise NotACactusError(
            "two simple cycles share edge(s) "
            f"{list(report.witness.shared_edges)}"
        )
    return report.cycle_forms


@dataclass(frozen=True)
class ObstructionWitness:
    """Divergence-free field whose sigma image is not divergence-free.

    ``residual`` is the sup-norm of divergence(sigma(field)), attained at
    ``split_vertex`` and equal to |gap| up to roundoff.
    """

    field: np.ndarray
    split_vertex: int
    scale: float
    gap: float
    residual: float

    def to_dict(self) -> dict:
        return {
            "field": list(map(float, self.field)),
            "split_vertex": self.split_vertex,
            "scale": self.scale,
            "gap": self.gap,
            "residual": self.residual,
        }


def obstruction_witness(g: OrientedGraph, p: Potential) -> ObstructionWitness:
    """Scaled shared-path witness with a detectable sigma divergence.

    Raises:
        IsACactusError: the graph has no shared-path cycle pair.
        NoObstructionFoundError: the potential shows no superposition gap,
            as for the quadratic one.
    """
    report = analyze_cactus(g)
    if report.is_cactus:
        raise IsACactusError("every edge lies on at most one simple cycle")
    t0 = find_obstruction_scale(p)
    field = t0 * report.witness.field
    image = np.asarray(p.sigma(field), dtype=float)
    residual = float(np.max(np.abs(divergence(g, image))))
    return ObstructionWitness(
        field=field,
        split_vertex=report.witness.split_vertex,
        scale=t0,
        gap=obstruction_gap(p, t0),
        residual=residual,
    )


@dataclass(frozen=True)
class CactusCriterionReport:
    """Structural verdict plus the numerical evidence behind it."""

    is_cactus: bool
    potential: str
    trials: int
    tol: float
    max_distance: float | None
    separation_scale: float | None
    separation: float | None
    witness_gap: float | None
    witness_residual: float | None
    passed: bool

    def to_dict(self) -> dict:
        return {
            "is_cactus": self.is_cactus,
            "potential": self.potential,
            "trials": self.trials,
            "tol": self.tol,
            "max_distance": self.max_distance,
            "separation_scale": self.separation_scale,
            "separation": self.separation,
            "witness_gap": self.witness_gap,
            "witness_residual": self.witness_residual,
            "passed": self.passed,
        }


def verify_cactus_criterion(
    g: OrientedGraph,
    p: Potential,
    trials: int = 20,
    tol: float = 1e-8,
    seed: int = 0,
) -> CactusCriterionReport:
    """Check the collapse criterion numerically against the structure.

    On a cactus, projects ``trials`` uniform random fields and requires the
    nonlinear and orthogonal projections to agree within tol relative to
    the field scale.  Otherwise, requires the obstruction witness, scaled
    up to max(1, its detection scale) for robust arithmetic, to stay in
    the circulation space yet move under the nonlinear projector by more
    than 10 * tol.

    Per-trial fields are drawn from generators seeded with seed XOR trial,
    so reruns are bit-reproducible.

    Raises:
        CriterionViolatedError: evidence contradicts the structural verdict.
        NoObstructionFoundError: non-cactus branch with a potential that
            shows no superposition gap.
    """
    report = analyze_cactus(g)
    if report.is_cactus:
        max_distance = 0.0
        for trial in range(trials):
            rng = np.random.default_rng(seed ^ trial)
            omega = rng.uniform(-3.0, 3.0, g.edge_count)
            z = project(g, p, omega).output
            scale = 1.0 + float(np.linalg.norm(omega))
            distance = float(np.linalg.norm(z - hodge_project(g, omega))) / scale
            max_distance = max(max_distance, distance)
            if distance > tol:
                raise CriterionViolatedError(
                    f"cactus trial {trial}: projections differ by {distance:.3e} "
                    f"(tol {tol:.1e})"
                )
        return CactusCriterionReport(
            is_cactus=True,
            potential=p.name,
            trials=trials,
            tol=tol,
            max_distance=max_distance,
            separation_scale=None,
            separation=None,
            witness_gap=None,
            witness_residual=None,
            passed=True,
        )
    ow = obstruction_witness(g, p)
    sep_scale = max(1.0, ow.scale)
    w = sep_scale * report.witness.field
    drift = float(np.linalg.norm(hodge_project(g, w) - w))
    if drift > 1e-10 * (1.0 + float(np.linalg.norm(w))):
        raise CriterionViolatedError(
            f"witness left the circulation space by {drift:.3e}"
        )
    separation = float(np.linalg.norm(project(g, p, w).output - w))
    if separation <= 10.0 * tol:
        raise CriterionViolatedError(
            f"witness separation {separation:.3e} is below {10 * tol:.1e}"
        )
    return CactusCriterionReport(
        is_cactus=False,
        potential=p.name,
        trials=trials,
        tol=tol,
        max_distance=None,
        separation_scale=sep_scale,
        separation=separation,
        witness_gap=ow.gap,
        witness_residual=ow.residual,
        passed=True,
    )


def _random_orient(rng: np.random.Generator, a: int, b: int) -> tuple[int, int]:
    return (a, b) if rng.random() < 0.5 else (b, a)


def random_cactus(
    rng: np.random.Generator,
    tree_vertices: int | None = None,
    cycle_count: int | None = None,
    min_cycle: int = 3,
    max_cycle: int = 6,
) -> OrientedGraph:
    """Random cactus: a random tree with cycles attached at random vertices.

    Each cycle has random length in [min_cycle, max_cycle] and hangs off a
    uniformly chosen existing vertex; orientations are coin flips.
    """
    if tree_vertices is None:
        tree_vertices = int(rng.integers(2, 6))
    if cycle_count is None:
        cycle_count = int(rng.integers(1, 4))
    edges = []
    for v in range(1, tree_vertices):
        edges.append(_random_orient(rng, int(rng.integers(0, v)), v))
    n = tree_vertices
    for _ in range(cycle_count):
        length = int(rng.integers(min_cycle, max_cycle + 1))
        anchor = int(rng.integers(0, n))
        chain = [anchor] + list(range(n, n + length - 1))
        n += length - 1
        for a, b in zip(chain, chain[1:]):
            edges.append(_random_orient(rng, a, b))
        edges.append(_random_orient(rng, chain[-1], chain[0]))
    return build_graph(n, edges)


def random_non_cactus(rng: np.random.Generator) -> OrientedGraph:
    """Random cactus with a chord across one cycle, so two cycles share a path."""
    base = random_cactus(rng, min_cycle=4)
    forms = cycle_basis(base)
    walk = next(f.vertices for f in forms if len(f.vertices) >= 4)
    edges = list(base.edges)
    edges.append(_random_orient(rng, walk[0], walk[2]))
    return build_graph(base.vertex_count, edges)

"""Switching a gain graph to a representative with nonnegative real parts.

Three constructions are provided and combined by :func:`gnrp`:

* vertex-disjoint cycles: switch so every cycle edge carries the cycle's
  average edge gain and every other edge carries 1;
* DEP orderings: the first cycle of a group gets its average gain, each later
  cycle spreads its residual angle over the (at least two) edges it adds;
* K4 and its subdivisions: a fixed case table on the three cycle angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DomainError, InvariantError, UnsupportedClassError
from .graph_core import (
    HALF_PI,
    GainGraph,
    SwitchingFunction,
    apply_switching,
    canonical_angle,
    has_nonneg_real_part,
    unit_interval_angle,
)
from .spanning import (
    FundamentalCycleBasis,
    SuitableOrientation,
    fundamental_cycles,
    gain_of_path,
    root_path_angles,
)
from .structure import Classification, DepCertificate, K4PrimeWitness, classify, fundamental_subgraphs
from .switching import are_switching_equivalent, class_signature, orientation_for

Arc = tuple[int, int]


@dataclass(frozen=True)
class CycleLayout:
    """A fundamental cycle listed from its top vertex down the tree."""

    index: int
    vertices: tuple[int, ...]
    theta: float
    is_leading_cycle: bool

    @property
    def leading_vertex(self) -> int:
        return self.vertices[0]

    @property
    def psi(self) -> float:
        """Average edge angle theta / n, which lies in [-pi/3, pi/3]."""
        return self.theta / len(self.vertices)


def cycle_layouts(
    phi: GainGraph,
    orient: SuitableOrientation,
    basis: Optional[FundamentalCycleBasis] = None,
) -> list[CycleLayout]:
    if basis is None:
        basis = fundamental_cycles(orient)
    sig = class_signature(phi, orient, basis)
    tree = orient.tree
    tops = [c[0] for c in basis.cycles]
    out = []
    for j, (cyc, r) in enumerate(zip(basis.cycles, sig.angles)):
        leading = not any(t != cyc[0] and tree.is_ancestor(t, cyc[0]) for t in tops)
        out.append(CycleLayout(j, tuple(cyc), canonical_angle(r), leading))
    return out


@dataclass(frozen=True)
class VertexWeighting:
    """Angle of W(v) for every vertex; W is 1 at the root."""

    weights: tuple[float, ...]


def vertex_weighting(layouts: Sequence[CycleLayout], orient: SuitableOrientation) -> VertexWeighting:
    """Propagate W down the tree, advancing by psi_j along the tree edges of cycle j."""
    step: dict[Arc, float] = {}
    for lay in layouts:
        for a, b in zip(lay.vertices, lay.vertices[1:]):
            if (a, b) in step:
                raise DomainError("fundamental cycles share a tree edge; cycles are not vertex-disjoint")
            step[(a, b)] = lay.psi
    w = [0.0] * orient.graph.n
    for p, c in orient.tree.tree_arcs:
        w[c] = w[p] + step.get((p, c), 0.0)
    return VertexWeighting(tuple(w))


def _verify(phi: GainGraph, out: GainGraph, root: int) -> GainGraph:
    if not has_nonneg_real_part(out):
        raise InvariantError("normalized gain graph has a gain with negative real part")
    if not are_switching_equivalent(phi, out, root).equivalent:
        raise InvariantError("normalized gain graph left the switching class")
    return out


def gnrp_vertex_disjoint(phi: GainGraph, orient: Optional[SuitableOrientation] = None) -> GainGraph:
    """Normalize a gain graph whose cycles are pairwise vertex-disjoint."""
    if orient is None:
        orient = orientation_for(phi)
    basis = fundamental_cycles(orient)
    if any(len(s) > 1 for s in fundamental_subgraphs(phi.graph, orient, basis)):
        raise DomainError("cycles are not pairwise vertex-disjoint")
    layouts = cycle_layouts(phi, orient, basis)
    w = vertex_weighting(layouts, orient).weights
    base = root_path_angles(phi, orient.tree)
    zeta = SwitchingFunction(tuple(a - b for a, b in zip(w, base)))
    return _verify(phi, apply_switching(phi, zeta), orient.tree.root)


def gnrp_k4(theta1: float, theta2: float, theta3: float) -> tuple[float, ...]:
    """Angles on (e12, e23, e34, e41, e42, e31) of K4 oriented along the path 1-2-3-4.

    They satisfy x1+x2+x3+x4 = theta1 (cycle 12341), x2+x3+x5 = theta2
    (cycle 2342) and x1+x2+x6 = theta3 (cycle 1231) modulo 2*pi, with every
    x in [-pi/2, pi/2]. Writing x = y - pi/2 moves the targets to
    t = (theta1, theta2 + 3pi/2, theta3 + 3pi/2) and the y's into [0, pi].
    """
    pi = math.pi
    t1, t2, t3 = (
        unit_interval_angle(theta1 + 2 * pi),
        unit_interval_angle(theta2 + 1.5 * pi),
        unit_interval_angle(theta3 + 1.5 * pi),
    )
    low = (t1 <= pi, t2 <= pi, t3 <= pi)
    table = {
        (True, True, True): (0, 0, 0, t1, t2, t3),
        (True, True, False): (0, pi, pi, t1, t2, t3 - pi),
        (True, False, True): (pi, pi, 0, t1, t2 - pi, t3),
        (False, True, True): (pi, pi, pi, t1 - pi, t2, t3),
        (True, False, False): (pi, 0, pi, t1, t2 - pi, t3 - pi),
        (False, True, False): (pi, 0, 0, t1 - pi, t2, t3 - pi),
        (False, False, True): (0, 0, pi, t1 - pi, t2 - pi, t3),
        (False, False, False): (0, pi, 0, t1 - pi, t2 - pi, t3 - pi),
    }
    return tuple(y - HALF_PI for y in table[low])


def _cycle_arcs(basis: FundamentalCycleBasis, j: int) -> list[Arc]:
    return [basis.edge_order[k] for k in basis.cycle_edge_indices(j)]


def _spread(
    assigned: dict[Arc, float],
    basis: FundamentalCycleBasis,
    signature: Sequence[float],
    ordering: Sequence[int],
) -> None:
    """Give each cycle's residual angle, in order, to the arcs it adds."""
    for j in ordering:
        arcs = _cycle_arcs(basis, j)
        fresh = [a for a in arcs if a not in assigned]
        if not fresh:
            raise InvariantError(f"cycle {j} adds no new edge")
        gamma = canonical_angle(signature[j] - sum(assigned[a] for a in arcs if a in assigned))
        for a in fresh:
            assigned[a] = gamma / len(fresh)


def _assign_k4_core(
    phi: GainGraph,
    assigned: dict[Arc, float],
    orient: SuitableOrientation,
    witness: K4PrimeWitness,
) -> None:
    depth = orient.tree.depth
    b = sorted(witness.branch_vertices, key=lambda v: (depth[v], v))

    def walk(i: int, j: int) -> tuple[int, ...]:
        u, v = b[i], b[j]
        chain = witness.chains[(min(u, v), max(u, v))]
        return chain if chain[0] == u else chain[::-1]

    def closed(*pairs) -> list[int]:
        verts = [b[pairs[0][0]]]
        for i, j in pairs:
            verts.extend(walk(i, j)[1:])
        return verts

    thetas = [
        unit_interval_angle(gain_of_path(phi, closed(*pairs)))
        for pairs in (((0, 1), (1, 2), (2, 3), (3, 0)), ((1, 2), (2, 3), (3, 1)), ((0, 1), (1, 2), (2, 0)))
    ]
    xs = gnrp_k4(*thetas)
    arc_sign = orient.arc_index
    for x, (i, j) in zip(xs, ((0, 1), (1, 2), (2, 3), (3, 0), (3, 1), (2, 0))):
        path = walk(i, j)
        per_edge = x / (len(path) - 1)
        for s, t in zip(path, path[1:]):
            k, sign = arc_sign[(s, t)]
            assigned[orient.edge_order[k]] = sign * per_edge


def gnrp_dep(
    phi: GainGraph,
    orient: SuitableOrientation,
    certs: Sequence[Optional[DepCertificate]],
) -> GainGraph:
    """Normalize using one ordinary ordering per fundamental subgraph."""
    if any(c is None or c.core for c in certs):
        raise DomainError("every fundamental subgraph needs an ordinary ordering certificate")
    basis = fundamental_cycles(orient)
    sig = class_signature(phi, orient, basis).angles
    assigned: dict[Arc, float] = {}
    for cert in certs:
        _spread(assigned, basis, sig, cert.ordering)
    if len(set().union(*(c.ordering for c in certs))) != len(basis):
        raise DomainError("certificates do not cover every fundamental cycle")
    return _finish(phi, orient, assigned)


def _finish(phi: GainGraph, orient: SuitableOrientation, assigned: dict[Arc, float]) -> GainGraph:
    out = GainGraph.from_arc_angles(phi.n, {a: assigned.get(a, 0.0) for a in orient.edge_order})
    return _verify(phi, out, orient.tree.root)


def gnrp(
    phi: GainGraph,
    root: int = 0,
    classification: Optional[Classification] = None,
) -> GainGraph:
    """Switch ``phi`` to a representative whose gains all have nonnegative real part.

    Raises UnsupportedClassError outside F' (membership in the target class
    is not decided there).
    """
    if classification is None:
        classification = classify(phi.graph, orientation_for(phi, root))
    if not classification.in_F_prime:
        raise UnsupportedClassError("graph is outside F'; no construction available")
    orient = classification.orientation
    basis = fundamental_cycles(orient)
    sig = class_signature(phi, orient, basis).angles
    assigned: dict[Arc, float] = {}
    for rec in classification.subgraphs:
        if rec.dep is not None:
            _spread(assigned, basis, sig, rec.dep.ordering)
        else:
            _assign_k4_core(phi, assigned, orient, rec.k4_witness)
            _spread(assigned, basis, sig, rec.k4_dep.ordering)
    return _finish(phi, orient, assigned)

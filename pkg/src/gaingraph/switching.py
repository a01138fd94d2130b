"""Switching classes of gain graphs.

Two gain graphs on the same connected graph are switching equivalent exactly
when their directed fundamental cycles (for one fixed normal spanning tree)
carry equal gains. The vector of those gains is the class signature.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import DomainError, InvariantError
from .graph_core import (
    ANGLE_TOL,
    GainGraph,
    SwitchingFunction,
    angles_close,
    apply_switching,
    canonical_angle,
    unit_interval_angle,
)
from .spanning import (
    FundamentalCycleBasis,
    SuitableOrientation,
    fundamental_cycles,
    gain_angle_vector,
    gain_of_path,
    normal_spanning_tree,
    root_path_angles,
    suitable_orientation,
)


@dataclass(frozen=True)
class ClassSignature:
    """Fundamental-cycle gain angles in [0, 2*pi), tied to the tree that produced them."""

    angles: tuple[float, ...]
    tree_fingerprint: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(unit_interval_angle(float(a)) for a in self.angles))

    def __len__(self) -> int:
        return len(self.angles)

    def matches(self, other: "ClassSignature", tol: float = ANGLE_TOL) -> bool:
        if self.tree_fingerprint and other.tree_fingerprint and self.tree_fingerprint != other.tree_fingerprint:
            raise DomainError("signatures come from different spanning trees")
        return len(self) == len(other) and all(
            angles_close(a, b, tol) for a, b in zip(self.angles, other.angles)
        )


@dataclass(frozen=True)
class EquivalenceCertificate:
    equivalent: bool
    witness: Optional[SwitchingFunction] = None
    signature1: Optional[ClassSignature] = None
    signature2: Optional[ClassSignature] = None


def tree_fingerprint(orient: SuitableOrientation) -> tuple:
    return (orient.tree.root, orient.edge_order)


def orientation_for(phi: GainGraph, root: int = 0) -> SuitableOrientation:
    tree = normal_spanning_tree(phi.graph, root)
    return suitable_orientation(phi.graph, tree)


def class_signature(
    phi: GainGraph,
    orient: SuitableOrientation,
    basis: Optional[FundamentalCycleBasis] = None,
) -> ClassSignature:
    """Angles <I(C_j), theta(Phi)> of the directed fundamental cycles."""
    theta = gain_angle_vector(phi, orient)
    if basis is None:
        basis = fundamental_cycles(orient)
    angles = basis.incidence @ theta if len(basis) else np.zeros(0)
    return ClassSignature(tuple(angles), tree_fingerprint(orient))


def _check_same_graph(phi1: GainGraph, phi2: GainGraph) -> None:
    if phi1.graph != phi2.graph:
        raise DomainError("gain graphs have different underlying graphs")


def switching_witness(phi1: GainGraph, phi2: GainGraph, orient: SuitableOrientation) -> SwitchingFunction:
    """zeta(v) = phi1(root -> v)^-1 * phi2(root -> v) along the tree."""
    a = root_path_angles(phi1, orient.tree)
    b = root_path_angles(phi2, orient.tree)
    return SwitchingFunction(tuple(y - x for x, y in zip(a, b)))


def witness_validates(phi1: GainGraph, phi2: GainGraph, zeta: SwitchingFunction, tol: float = ANGLE_TOL) -> bool:
    return apply_switching(phi1, zeta).isclose(phi2, tol)


def are_switching_equivalent(
    phi1: GainGraph,
    phi2: GainGraph,
    root: int = 0,
    tol: float = ANGLE_TOL,
) -> EquivalenceCertificate:
    """Decide Phi1 ~ Phi2 by comparing fundamental-cycle gains.

    When equivalent, the certificate carries a switching function taking
    Phi1 to Phi2 edge by edge.
    """
    _check_same_graph(phi1, phi2)
    orient = orientation_for(phi1, root)
    basis = fundamental_cycles(orient)
    s1 = class_signature(phi1, orient, basis)
    s2 = class_signature(phi2, orient, basis)
    if not s1.matches(s2, tol):
        return EquivalenceCertificate(False, None, s1, s2)
    zeta = switching_witness(phi1, phi2, orient)
    # the witness error is a sum over at most n tree edges plus one cycle
    if not witness_validates(phi1, phi2, zeta, tol * (phi1.n + 2)):
        raise InvariantError("equal signatures but the switching witness does not validate")
    return EquivalenceCertificate(True, zeta, s1, s2)


def is_balanced(phi: GainGraph, root: int = 0, tol: float = ANGLE_TOL) -> bool:
    """True iff every cycle is neutral (checked on the fundamental cycles)."""
    sig = class_signature(phi, orientation_for(phi, root))
    return all(angles_close(a, 0.0, tol) for a in sig.angles)


def construct_representative(
    orient: SuitableOrientation,
    signature: ClassSignature | Sequence[float],
    tree_gains: Optional[Mapping[tuple[int, int], float]] = None,
) -> GainGraph:
    """A gain graph whose fundamental cycles carry the given angles.

    Tree arcs take ``tree_gains`` (angles keyed by the (parent, child) arc,
    default 0); each non-tree arc gets the target cycle angle minus the gain
    of the rest of its fundamental cycle.
    """
    angles = signature.angles if isinstance(signature, ClassSignature) else tuple(signature)
    if isinstance(signature, ClassSignature) and signature.tree_fingerprint:
        if signature.tree_fingerprint != tree_fingerprint(orient):
            raise DomainError("signature belongs to a different spanning tree")
    non_tree = orient.non_tree_arcs
    if len(angles) != len(non_tree):
        raise DomainError(f"signature has {len(angles)} entries, the graph has {len(non_tree)} fundamental cycles")
    tree_gains = dict(tree_gains or {})
    tree_arcs = set(orient.tree.tree_arcs)
    unknown = set(tree_gains) - tree_arcs
    if unknown:
        raise DomainError(f"tree_gains has keys that are not tree arcs: {sorted(unknown)}")
    arc_angles = {arc: float(tree_gains.get(arc, 0.0)) for arc in orient.tree.tree_arcs}
    partial = GainGraph.from_arc_angles(orient.graph.n, arc_angles | {a: 0.0 for a in non_tree})
    tree = orient.tree
    for (d, a), c in zip(non_tree, angles):
        rest = gain_of_path(partial, tree.path_down(a, d))
        arc_angles[(d, a)] = canonical_angle(c - rest)
    return GainGraph.from_arc_angles(orient.graph.n, arc_angles)


def conjugate_signature(signature: ClassSignature) -> ClassSignature:
    """Entry-wise (2*pi - r_j) mod 2*pi."""
    return ClassSignature(tuple(-a for a in signature.angles), signature.tree_fingerprint)

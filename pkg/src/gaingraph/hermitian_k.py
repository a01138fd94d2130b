"""k-generalized Hermitian adjacency matrices of digraphs.

H_k has 1 on digons and e^{+-i theta} on single arcs, theta = pi/(k+1).
Its spectral radius reaches the maximum degree exactly when the digraph
carries one of two (2k+2)-class vertex partitions:

* Structure A: digons stay inside a class, a single arc steps one class on;
* Structure B: digons jump k+1 classes, a single arc jumps k+2 classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from .errors import ConnectivityError, DomainError, InvariantError
from .graph_core import Digraph, GainGraph, negate, underlying_graph
from .spanning import normal_spanning_tree
from .spectral import SPECTRAL_TOL, BoundsReport, bounds_report, gain_spectrum
from .switching import is_balanced

Kind = Literal["A", "B"]


@dataclass(frozen=True)
class KHermitianParams:
    k: int = 1

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise DomainError(f"k must be a positive integer, got {self.k}")

    @property
    def theta(self) -> float:
        return math.pi / (self.k + 1)

    @property
    def n_classes(self) -> int:
        return 2 * self.k + 2


def hk_matrix(x: Digraph, params: KHermitianParams) -> np.ndarray:
    z = complex(math.cos(params.theta), math.sin(params.theta))
    h = np.zeros((x.n, x.n), dtype=complex)
    for u, v in x.arcs:
        if x.is_digon(u, v):
            h[u, v] = 1.0
        else:
            h[u, v] = z
            h[v, u] = z.conjugate()
    return h


def gain_graph_of(x: Digraph, params: KHermitianParams) -> GainGraph:
    """The gain graph on the underlying graph whose adjacency matrix is H_k(X)."""
    t = params.theta
    arcs = {}
    for u, v in x.arcs:
        if x.is_digon(u, v):
            if u < v:
                arcs[(u, v)] = 0.0
        else:
            arcs[(u, v)] = t
    return GainGraph.from_arc_angles(x.n, arcs)


def _connected_gain_graph(x: Digraph, params: KHermitianParams) -> GainGraph:
    phi = gain_graph_of(x, params)
    if not phi.graph.is_connected():
        raise ConnectivityError("digraph is not weakly connected")
    return phi


def hk_bounds(x: Digraph, params: KHermitianParams, tol: float = SPECTRAL_TOL) -> BoundsReport:
    """rho <= Delta and lambda1 <= rho <= 3 lambda1 for H_k(X), both asserted."""
    return bounds_report(_connected_gain_graph(x, params), tol, assert_lambda_bounds=True)


@dataclass(frozen=True)
class StructurePartition:
    """Class index in 0 .. 2k+1 for every vertex, with the structure kind."""

    assignment: tuple[int, ...]
    kind: Kind
    k: int

    @property
    def n_classes(self) -> int:
        return 2 * self.k + 2

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n_classes)]
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return out

    def rotation_equivalent(self, other: "StructurePartition") -> bool:
        """Same kind and same labels up to adding a constant modulo 2k+2."""
        if (self.kind, self.k, len(self.assignment)) != (other.kind, other.k, len(other.assignment)):
            return False
        if not self.assignment:
            return True
        shift = (other.assignment[0] - self.assignment[0]) % self.n_classes
        return all((a + shift) % self.n_classes == b for a, b in zip(self.assignment, other.assignment))


def _allowed_steps(kind: Kind, k: int) -> tuple[int, int]:
    """Class step of a digon and of a single arc s -> t (t minus s)."""
    if kind == "A":
        return 0, 1
    if kind == "B":
        return k + 1, k + 2
    raise DomainError(f"unknown structure kind {kind!r}")


def partition_violations(x: Digraph, part: StructurePartition) -> list[tuple[int, int]]:
    """Arcs whose class step breaks the rules of the partition's kind."""
    if len(part.assignment) != x.n:
        raise DomainError("partition does not cover the digraph's vertices")
    digon, arc = _allowed_steps(part.kind, part.k)
    n_cls = part.n_classes
    bad = []
    for u, v in x.arcs:
        step = (part.assignment[v] - part.assignment[u]) % n_cls
        if step != (digon if x.is_digon(u, v) else arc):
            bad.append((u, v))
    return bad


def build_structure(
    kind: Kind,
    assignment: Sequence[int],
    arcs: Sequence[tuple[int, int]] = (),
    digons: Sequence[tuple[int, int]] = (),
    params: KHermitianParams = KHermitianParams(),
) -> Digraph:
    """A digraph on the labelled vertices with the given single arcs and digons.

    Raises DomainError if any arc or digon breaks the class rules of ``kind``.
    """
    n_cls = params.n_classes
    if any(not 0 <= c < n_cls for c in assignment):
        raise DomainError(f"class labels must lie in 0..{n_cls - 1}")
    all_arcs = list(arcs) + [a for u, v in digons for a in ((u, v), (v, u))]
    x = Digraph(len(assignment), tuple(all_arcs))
    part = StructurePartition(tuple(assignment), kind, params.k)
    bad = partition_violations(x, part)
    if bad:
        raise DomainError(f"arcs break the Structure {kind} rules: {bad}")
    return x


def verify_structure(
    x: Digraph,
    params: KHermitianParams,
    tol: float = SPECTRAL_TOL,
) -> Optional[StructurePartition]:
    """Recover the extremal partition when rho(H_k) equals the maximum degree.

    The spectral test only gates the search; the partition is derived from
    balance of Phi (Structure A) or of -Phi (Structure B), so a digraph
    without the structure returns None even if rounding puts rho within
    ``tol`` of Delta. A is preferred when both are balanced.
    """
    phi = _connected_gain_graph(x, params)
    g = phi.graph
    rho = gain_spectrum(phi).radius
    if rho > g.max_degree + tol:
        raise InvariantError(f"rho = {rho} exceeds the maximum degree {g.max_degree}")
    if abs(rho - g.max_degree) > tol or not g.is_regular():
        return None
    if is_balanced(phi):
        kind: Kind = "A"
    elif is_balanced(negate(phi)):
        kind = "B"
    else:
        return None
    offset = 0 if kind == "A" else params.k + 1
    theta = params.theta
    tree = normal_spanning_tree(g)
    labels = [0] * x.n
    for p, c in tree.tree_arcs:
        steps = round(phi.angle(p, c) / theta)
        labels[c] = (labels[p] + offset + steps) % params.n_classes
    part = StructurePartition(tuple(labels), kind, params.k)
    if partition_violations(x, part):
        raise InvariantError("balanced gains but class labels do not propagate consistently")
    return part

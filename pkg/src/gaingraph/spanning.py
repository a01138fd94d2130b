"""Normal spanning trees, suitable orientations and fundamental cycles.

A depth-first search tree is normal: every graph edge joins an ancestor to a
descendant. Orienting tree edges downwards and the remaining edges upwards
turns every fundamental cycle into a directed cycle, which is what makes the
incidence-vector bookkeeping below sign-consistent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import ConnectivityError, DomainError, InvariantError, ShapeError
from .graph_core import Gain, GainGraph, SimpleGraph, canonical_angle

Cycle = tuple[int, ...]


@dataclass(frozen=True)
class NormalSpanningTree:
    """Rooted spanning tree; ``parent[root] == root``.

    ``tree_arcs`` lists the (parent, child) pairs in discovery order.
    """

    graph: SimpleGraph
    root: int
    parent: tuple[int, ...]
    depth: tuple[int, ...]
    tree_arcs: tuple[tuple[int, int], ...]

    @classmethod
    def from_parents(cls, graph: SimpleGraph, root: int, parent: Sequence[int]) -> "NormalSpanningTree":
        """Build (and validate) a tree from a parent array."""
        n = graph.n
        if len(parent) != n or parent[root] != root:
            raise InvariantError("parent array must cover every vertex and fix the root")
        children: list[list[int]] = [[] for _ in range(n)]
        for v, p in enumerate(parent):
            if v != root:
                if not graph.has_edge(v, p):
                    raise InvariantError(f"tree edge ({p}, {v}) is not a graph edge")
                children[p].append(v)
        depth = [-1] * n
        depth[root] = 0
        arcs = []
        stack = [root]
        while stack:
            x = stack.pop()
            for c in sorted(children[x], reverse=True):
                depth[c] = depth[x] + 1
                arcs.append((x, c))
                stack.append(c)
        if min(depth) < 0:
            raise InvariantError("parent array does not describe a spanning tree")
        tree = cls(graph, root, tuple(parent), tuple(depth), tuple(arcs))
        tree.check_normal()
        return tree

    @cached_property
    def _euler(self) -> tuple[list[int], list[int]]:
        n = self.graph.n
        children: list[list[int]] = [[] for _ in range(n)]
        for p, c in self.tree_arcs:
            children[p].append(c)
        tin, tout = [0] * n, [0] * n
        clock = 0
        stack = [(self.root, 0)]
        while stack:
            v, i = stack.pop()
            if i == 0:
                tin[v] = clock
                clock += 1
            if i < len(children[v]):
                stack.append((v, i + 1))
                stack.append((children[v][i], 0))
            else:
                tout[v] = clock - 1
        return tin, tout

    def is_ancestor(self, a: int, b: int) -> bool:
        """True iff ``a`` lies on the tree path from the root to ``b`` (a <= b)."""
        tin, tout = self._euler
        return tin[a] <= tin[b] <= tout[a]

    def comparable(self, a: int, b: int) -> bool:
        return self.is_ancestor(a, b) or self.is_ancestor(b, a)

    def is_tree_edge(self, u: int, v: int) -> bool:
        return (self.parent[v] == u and v != self.root) or (self.parent[u] == v and u != self.root)

    def check_normal(self) -> None:
        for u, v in self.graph.edges:
            if not self.comparable(u, v):
                raise InvariantError(f"edge ({u}, {v}) joins incomparable vertices; tree is not normal")

    def path_down(self, ancestor: int, descendant: int) -> list[int]:
        """Vertices of the tree path from ``ancestor`` down to ``descendant``."""
        if not self.is_ancestor(ancestor, descendant):
            raise DomainError(f"{ancestor} is not an ancestor of {descendant}")
        path = [descendant]
        while path[-1] != ancestor:
            path.append(self.parent[path[-1]])
        return path[::-1]

    def path(self, a: int, b: int) -> list[int]:
        """Vertices of the unique tree path from ``a`` to ``b``."""
        up_a, up_b = [a], [b]
        x, y = a, b
        while self.depth[x] > self.depth[y]:
            x = self.parent[x]
            up_a.append(x)
        while self.depth[y] > self.depth[x]:
            y = self.parent[y]
            up_b.append(y)
        while x != y:
            x, y = self.parent[x], self.parent[y]
            up_a.append(x)
            up_b.append(y)
        return up_a + up_b[-2::-1]


def normal_spanning_tree(graph: SimpleGraph, root: int = 0) -> NormalSpanningTree:
    """Depth-first search tree rooted at ``root``, neighbours taken in ascending order."""
    if not 0 <= root < graph.n:
        raise DomainError(f"root {root} is not a vertex")
    if not graph.is_connected():
        raise ConnectivityError("a normal spanning tree needs a connected graph")
    n = graph.n
    parent = [-1] * n
    depth = [0] * n
    parent[root] = root
    arcs = []
    stack = [(root, iter(graph.neighbors(root)))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if parent[w] == -1:
                parent[w] = v
                depth[w] = depth[v] + 1
                arcs.append((v, w))
                stack.append((w, iter(graph.neighbors(w))))
                break
        else:
            stack.pop()
    tree = NormalSpanningTree(graph, root, tuple(parent), tuple(depth), tuple(arcs))
    tree.check_normal()
    return tree


@dataclass(frozen=True)
class SuitableOrientation:
    """Tree edges point away from the root, the other edges point back up.

    ``edge_order`` fixes the indexing of all m arcs: tree arcs in discovery
    order, then the non-tree arcs sorted by their (min, max) endpoint pair.
    """

    tree: NormalSpanningTree
    edge_order: tuple[tuple[int, int], ...]

    @property
    def graph(self) -> SimpleGraph:
        return self.tree.graph

    @property
    def n_tree(self) -> int:
        return len(self.tree.tree_arcs)

    @property
    def non_tree_arcs(self) -> tuple[tuple[int, int], ...]:
        return self.edge_order[self.n_tree:]

    @cached_property
    def arc_index(self) -> dict[tuple[int, int], tuple[int, int]]:
        """Map an ordered pair (u, v) to (edge index, +1 or -1 relative to the orientation)."""
        idx = {}
        for k, (s, t) in enumerate(self.edge_order):
            idx[(s, t)] = (k, 1)
            idx[(t, s)] = (k, -1)
        return idx

    def incidence_matrix(self) -> np.ndarray:
        """Vertex-arc incidence matrix Q: +1 at the tail, -1 at the head."""
        q = np.zeros((self.graph.n, len(self.edge_order)), dtype=np.int64)
        for k, (s, t) in enumerate(self.edge_order):
            q[s, k] = 1
            q[t, k] = -1
        return q

    def incidence_vector(self, cycle: Sequence[int]) -> np.ndarray:
        check_cycle(self.graph, cycle)
        vec = np.zeros(len(self.edge_order), dtype=np.int64)
        for x, y in _closed_arcs(cycle):
            k, sign = self.arc_index[(x, y)]
            vec[k] += sign
        return vec


def suitable_orientation(graph: SimpleGraph, tree: NormalSpanningTree) -> SuitableOrientation:
    if tree.graph != graph:
        raise InvariantError("tree was built for a different graph")
    if len(tree.tree_arcs) != graph.n - 1:
        raise InvariantError("tree is not spanning")
    tree.check_normal()
    tree_edges = {tuple(sorted(a)) for a in tree.tree_arcs}
    back = []
    for u, v in graph.edges:
        if (u, v) in tree_edges:
            continue
        # descendant -> ancestor
        back.append((v, u) if tree.is_ancestor(u, v) else (u, v))
    back.sort(key=lambda a: (min(a), max(a)))
    orient = SuitableOrientation(tree, tuple(tree.tree_arcs) + tuple(back))
    for s, t in back:
        cyc = tree.path_down(t, s)
        if not all(orient.arc_index[(x, y)][1] == 1 for x, y in _closed_arcs(cyc)):
            raise InvariantError(f"fundamental cycle of ({s}, {t}) is not directed")
    return orient


@dataclass(frozen=True)
class FundamentalCycleBasis:
    """One directed cycle per non-tree arc.

    ``cycles[j]`` starts at the upper endpoint of the j-th non-tree arc, runs
    down the tree and closes through that arc. ``incidence`` has one row per
    cycle, indexed like ``orientation.edge_order``.
    """

    orientation: SuitableOrientation
    cycles: tuple[Cycle, ...]
    incidence: np.ndarray

    @property
    def edge_order(self) -> tuple[tuple[int, int], ...]:
        return self.orientation.edge_order

    def __len__(self) -> int:
        return len(self.cycles)

    def cycle_edge_indices(self, j: int) -> list[int]:
        return [int(k) for k in np.flatnonzero(self.incidence[j])]


def fundamental_cycles(orient: SuitableOrientation) -> FundamentalCycleBasis:
    tree = orient.tree
    cycles = tuple(tuple(tree.path_down(a, d)) for d, a in orient.non_tree_arcs)
    m = len(orient.edge_order)
    inc = np.zeros((len(cycles), m), dtype=np.int64)
    for j, cyc in enumerate(cycles):
        inc[j] = orient.incidence_vector(cyc)
    if len(cycles) and np.any(orient.incidence_matrix() @ inc.T):
        raise InvariantError("a fundamental cycle left the cycle space")
    return FundamentalCycleBasis(orient, cycles, inc)


def _closed_arcs(cycle: Sequence[int]):
    k = len(cycle)
    return ((cycle[i], cycle[(i + 1) % k]) for i in range(k))


def check_cycle(graph: SimpleGraph, cycle: Sequence[int]) -> None:
    """Raise ShapeError unless ``cycle`` lists the vertices of a simple cycle in order."""
    if len(cycle) < 3:
        raise ShapeError("a cycle needs at least three vertices")
    if len(set(cycle)) != len(cycle):
        raise ShapeError(f"{tuple(cycle)} repeats a vertex")
    for x, y in _closed_arcs(cycle):
        if not (0 <= x < graph.n and 0 <= y < graph.n) or not graph.has_edge(x, y):
            raise ShapeError(f"({x}, {y}) is not an edge")


def cycle_coordinates(basis: FundamentalCycleBasis, cycle: Sequence[int]) -> tuple[int, ...]:
    """Coordinates of a directed cycle over the fundamental cycles.

    Each non-tree edge lies in exactly one basis cycle, so the coefficient is
    the cycle's incidence entry on that edge.
    """
    orient = basis.orientation
    vec = orient.incidence_vector(cycle)
    coords = vec[orient.n_tree:]
    if len(basis) and not np.array_equal(coords @ basis.incidence, vec):
        raise InvariantError("cycle is not spanned by the fundamental cycles")
    if not len(basis) and np.any(vec):
        raise InvariantError("cycle found in a tree")
    return tuple(int(c) for c in coords)


def gain_angle_vector(phi: GainGraph, orient: SuitableOrientation) -> np.ndarray:
    """theta(Phi): the gain angle of every arc of the suitable orientation."""
    if phi.graph != orient.graph:
        raise DomainError("gain graph and orientation have different underlying graphs")
    return np.array([phi.angle(s, t) for s, t in orient.edge_order], dtype=float)


def gain_of_cycle(phi: GainGraph, cycle: Sequence[int]) -> Gain:
    """Product of the gains along the closed walk cycle[0] -> cycle[1] -> ... -> cycle[0]."""
    check_cycle(phi.graph, cycle)
    return Gain(sum(phi.angle(x, y) for x, y in _closed_arcs(cycle)))


def gain_of_path(phi: GainGraph, path: Sequence[int]) -> float:
    """Summed (unreduced) angle along an open vertex path."""
    return sum(phi.angle(path[i], path[i + 1]) for i in range(len(path) - 1))


def gain_of_tree_path(phi: GainGraph, tree: NormalSpanningTree, start: int, end: int) -> Gain:
    return Gain(gain_of_path(phi, tree.path(start, end)))


def root_path_angles(phi: GainGraph, tree: NormalSpanningTree) -> list[float]:
    """Angle of the gain of the tree path root -> v, for every vertex v."""
    out = [0.0] * phi.n
    for p, c in tree.tree_arcs:
        out[c] = canonical_angle(out[p] + phi.angle(p, c))
    return out

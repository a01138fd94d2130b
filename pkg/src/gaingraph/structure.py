"""Cycle enumeration, fundamental subgraphs, DEP orderings and K4' cores.

A fundamental subgraph groups fundamental cycles whose tree parts overlap.
For a normal tree each fundamental cycle's tree part is a vertical path and
its vertex set equals that path's vertex set, so two groups can be merged
into a subtree exactly when they share a vertex. Grouping is therefore a
union-find over shared vertices, followed by explicit checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .errors import CapacityError, ConnectivityError, InvariantError
from .graph_core import SimpleGraph
from .spanning import (
    Cycle,
    FundamentalCycleBasis,
    SuitableOrientation,
    fundamental_cycles,
    normal_spanning_tree,
    suitable_orientation,
)

Edge = tuple[int, int]

#: Default cap on the number of simple cycles an enumeration may produce.
CYCLE_LIMIT = 200_000

#: Default cap on cycles per fundamental subgraph for the ordering search.
DEP_CYCLE_LIMIT = 12


def enumerate_cycles(graph: SimpleGraph, limit: int = CYCLE_LIMIT) -> list[Cycle]:
    """All simple cycles, each once, smallest vertex first and smaller neighbour second."""
    out: list[Cycle] = []
    adj = graph.adjacency
    for s in range(graph.n):
        path = [s]
        on_path = {s}
        stack = [iter(w for w in adj[s] if w > s)]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            path.append(w)
            on_path.add(w)
            if len(path) >= 3 and path[1] < path[-1] and graph.has_edge(w, s):
                out.append(tuple(path))
                if len(out) > limit:
                    raise CapacityError(f"more than {limit} cycles")
            stack.append(iter([x for x in adj[w] if x > s and x not in on_path]))
    return out


def cycle_edges(cycle: Sequence[int]) -> frozenset[Edge]:
    k = len(cycle)
    return frozenset(
        (min(cycle[i], cycle[(i + 1) % k]), max(cycle[i], cycle[(i + 1) % k])) for i in range(k)
    )


def cycle_length_counts(graph: SimpleGraph, limit: int = CYCLE_LIMIT) -> dict[int, int]:
    counts: dict[int, int] = {}
    for c in enumerate_cycles(graph, limit):
        counts[len(c)] = counts.get(len(c), 0) + 1
    return counts


def is_in_Dn(graph: SimpleGraph, limit: int = CYCLE_LIMIT) -> bool:
    """Connected with at most one cycle of each length."""
    if not graph.is_connected():
        raise ConnectivityError("D_n membership is defined for connected graphs")
    return all(c <= 1 for c in cycle_length_counts(graph, limit).values())


@dataclass(frozen=True)
class FundamentalSubgraph:
    cycle_indices: tuple[int, ...]
    cycles: tuple[Cycle, ...]
    edge_set: frozenset[Edge]
    vertex_set: frozenset[int]

    def __len__(self) -> int:
        return len(self.cycle_indices)

    def edges_of(self, j: int) -> frozenset[Edge]:
        """Edges of the fundamental cycle with global index ``j``."""
        return cycle_edges(self.cycles[self.cycle_indices.index(j)])


def fundamental_subgraphs(
    graph: SimpleGraph,
    orient: SuitableOrientation,
    basis: Optional[FundamentalCycleBasis] = None,
) -> list[FundamentalSubgraph]:
    """Partition the fundamental cycles into maximal vertex-sharing groups."""
    if orient.graph != graph:
        raise InvariantError("orientation was built for a different graph")
    if basis is None:
        basis = fundamental_cycles(orient)
    cycles = basis.cycles
    parent = list(range(len(cycles)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: dict[int, int] = {}
    for j, cyc in enumerate(cycles):
        for v in cyc:
            if v in owner:
                parent[find(j)] = find(owner[v])
            else:
                owner[v] = j
    groups: dict[int, list[int]] = {}
    for j in range(len(cycles)):
        groups.setdefault(find(j), []).append(j)
    out = []
    for idx in sorted(groups.values()):
        cyc = tuple(cycles[j] for j in idx)
        edges = frozenset().union(*(cycle_edges(c) for c in cyc))
        verts = frozenset(v for c in cyc for v in c)
        out.append(FundamentalSubgraph(tuple(idx), cyc, edges, verts))
    _check_subgraphs(graph, orient, out)
    return out


def _check_subgraphs(graph: SimpleGraph, orient: SuitableOrientation, subs: list[FundamentalSubgraph]) -> None:
    tree = orient.tree
    label = list(range(graph.n))
    for b, sub in enumerate(subs):
        # tree part must be a subtree: exactly one vertex whose parent is outside
        tops = [v for v in sub.vertex_set if tree.parent[v] not in sub.vertex_set or v == tree.root]
        if len(tops) != 1:
            raise InvariantError(f"fundamental subgraph {b} does not meet the tree in a subtree")
        for v in sub.vertex_set:
            if label[v] != v:
                raise InvariantError("fundamental subgraphs share a vertex")
            label[v] = graph.n + b
    # contracting every group must leave a tree
    names = {x: i for i, x in enumerate(sorted(set(label)))}
    contracted = set()
    for u, v in graph.edges:
        a, b = names[label[u]], names[label[v]]
        if a != b:
            e = (min(a, b), max(a, b))
            if e in contracted:
                raise InvariantError("contracted graph has a parallel edge")
            contracted.add(e)
    if not SimpleGraph(len(names), tuple(contracted)).is_tree():
        raise InvariantError("contracting the fundamental subgraphs does not give a tree")


@dataclass(frozen=True)
class DepCertificate:
    """An ordering of cycle indices and the number of new edges each step adds.

    With ``core`` set (a K4' core given as three cycle indices), the ordering
    covers only the remaining cycles and every step must add more than one
    edge; otherwise the first step is unconstrained.
    """

    ordering: tuple[int, ...]
    new_edge_counts: tuple[int, ...]
    core: tuple[int, ...] = ()


def _dep_search(
    edge_sets: dict[int, frozenset[Edge]],
    start: frozenset[Edge],
    free_first: bool,
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    indices = sorted(edge_sets)
    failed: set[frozenset[int]] = set()

    def extend(used: frozenset[int], covered: frozenset[Edge], order, counts):
        if len(used) == len(indices):
            return tuple(order), tuple(counts)
        if used in failed:
            return None
        gains = [(len(edge_sets[j] - covered), j) for j in indices if j not in used]
        if free_first and not used:
            options = sorted(gains, key=lambda t: (-t[0], t[1]))
        else:
            options = sorted((g for g in gains if g[0] > 1), key=lambda t: (-t[0], t[1]))
        for g, j in options:
            found = extend(used | {j}, covered | edge_sets[j], order + [j], counts + [g])
            if found:
                return found
        failed.add(used)
        return None

    return extend(frozenset(), start, [], [])


def has_dep(sub: FundamentalSubgraph, max_cycles: int = DEP_CYCLE_LIMIT) -> Optional[DepCertificate]:
    """Search for an ordering in which every cycle after the first adds more than one new edge."""
    if len(sub) > max_cycles:
        raise CapacityError(f"{len(sub)} cycles exceeds the ordering-search guard of {max_cycles}")
    sets = {j: cycle_edges(c) for j, c in zip(sub.cycle_indices, sub.cycles)}
    found = _dep_search(sets, frozenset(), free_first=True)
    if found is None:
        return None
    cert = DepCertificate(*found)
    validate_dep(sub, cert)
    return cert


@dataclass(frozen=True)
class K4PrimeWitness:
    cycle_indices: tuple[int, int, int]
    branch_vertices: tuple[int, int, int, int]
    chains: dict[tuple[int, int], tuple[int, ...]] = field(compare=False)
    edge_set: frozenset[Edge] = frozenset()


def k4_subdivision_chains(edges: frozenset[Edge]) -> Optional[tuple[tuple[int, ...], dict]]:
    """Branch vertices and chains if ``edges`` form K4 or a subdivision of it.

    Chains are keyed by branch-vertex pairs (a, b) with a < b and list the
    vertices from a to b.
    """
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    degs = {v: len(a) for v, a in adj.items()}
    branch = sorted(v for v, d in degs.items() if d == 3)
    if len(branch) != 4 or any(d not in (2, 3) for d in degs.values()):
        return None
    chains: dict[tuple[int, int], tuple[int, ...]] = {}
    used = 0
    for b in branch:
        for first in adj[b]:
            walk = [b, first]
            while walk[-1] not in branch:
                a, c = adj[walk[-1]]
                walk.append(c if a == walk[-2] else a)
            end = walk[-1]
            if end == b:
                return None
            if b < end:
                key = (b, end)
                if key in chains:
                    return None
                chains[key] = tuple(walk)
                used += len(walk) - 1
    if len(chains) != 6 or used != len(edges):
        return None
    return tuple(branch), chains


def k4_prime_witnesses(sub: FundamentalSubgraph) -> Iterator[K4PrimeWitness]:
    """Every triple of fundamental cycles in ``sub`` whose union is K4 or a subdivision of it."""
    for trio in combinations(range(len(sub)), 3):
        edges = frozenset().union(*(cycle_edges(sub.cycles[i]) for i in trio))
        found = k4_subdivision_chains(edges)
        if found is not None:
            branch, chains = found
            idx = tuple(sub.cycle_indices[i] for i in trio)
            yield K4PrimeWitness(idx, branch, chains, edges)


def detect_k4_prime(sub: FundamentalSubgraph) -> Optional[K4PrimeWitness]:
    return next(k4_prime_witnesses(sub), None)


def k4_prime_dep(
    sub: FundamentalSubgraph, witness: K4PrimeWitness, max_cycles: int = DEP_CYCLE_LIMIT
) -> Optional[DepCertificate]:
    """Ordering of the cycles outside the core, each adding more than one new edge."""
    if len(sub) > max_cycles:
        raise CapacityError(f"{len(sub)} cycles exceeds the ordering-search guard of {max_cycles}")
    sets = {
        j: cycle_edges(c)
        for j, c in zip(sub.cycle_indices, sub.cycles)
        if j not in witness.cycle_indices
    }
    found = _dep_search(sets, witness.edge_set, free_first=False)
    if found is None:
        return None
    cert = DepCertificate(*found, core=witness.cycle_indices)
    validate_dep(sub, cert)
    return cert


def validate_dep(sub: FundamentalSubgraph, cert: DepCertificate) -> None:
    """Recount new edges from scratch and check the ordering rules."""
    rest = [j for j in sub.cycle_indices if j not in cert.core]
    if sorted(cert.ordering) != sorted(rest):
        raise InvariantError("ordering does not cover the subgraph's cycles exactly once")
    covered = frozenset().union(*(sub.edges_of(j) for j in cert.core)) if cert.core else frozenset()
    for step, (j, claimed) in enumerate(zip(cert.ordering, cert.new_edge_counts)):
        fresh = sub.edges_of(j) - covered
        if len(fresh) != claimed:
            raise InvariantError(f"cycle {j}: claimed {claimed} new edges, found {len(fresh)}")
        if (step > 0 or cert.core) and claimed <= 1:
            raise InvariantError(f"cycle {j} adds only {claimed} new edge(s)")
        covered |= fresh


@dataclass(frozen=True)
class SubgraphClass:
    subgraph: FundamentalSubgraph
    dep: Optional[DepCertificate]
    k4_witness: Optional[K4PrimeWitness]
    k4_dep: Optional[DepCertificate]

    @property
    def in_F(self) -> bool:
        return self.dep is not None

    @property
    def in_F_prime(self) -> bool:
        return self.dep is not None or self.k4_dep is not None


@dataclass(frozen=True)
class Classification:
    orientation: SuitableOrientation
    subgraphs: tuple[SubgraphClass, ...]

    @property
    def in_F(self) -> bool:
        return all(s.in_F for s in self.subgraphs)

    @property
    def in_F_prime(self) -> bool:
        return all(s.in_F_prime for s in self.subgraphs)


def classify(
    graph: SimpleGraph,
    orient: Optional[SuitableOrientation] = None,
    root: int = 0,
    max_cycles: int = DEP_CYCLE_LIMIT,
) -> Classification:
    """Membership in F and F' relative to the given (or default DFS) tree.

    A subgraph counts toward F' when it has an ordinary ordering, or when some
    triple of its fundamental cycles forms a K4' core and the remaining cycles
    admit an ordering that adds more than one edge at every step.
    """
    if orient is None:
        orient = suitable_orientation(graph, normal_spanning_tree(graph, root))
    records = []
    for sub in fundamental_subgraphs(graph, orient):
        dep = has_dep(sub, max_cycles)
        witness, k4_dep = None, None
        for w in k4_prime_witnesses(sub):
            witness = witness or w
            if dep is not None:
                break
            k4_dep = k4_prime_dep(sub, w, max_cycles)
            if k4_dep is not None:
                witness = w
                break
        records.append(SubgraphClass(sub, dep, witness, k4_dep))
    return Classification(orient, tuple(records))

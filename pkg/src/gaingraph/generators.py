"""Seeded random instances.

Graphs are Erdos-Renyi samples conditioned on connectivity; gain angles are
uniform on (-pi, pi]; random digraphs orient each edge forward, backward or
as a digon with equal probability. Every function draws from the numpy
Generator it is given, so a fixed seed reproduces the whole stream.
"""

from __future__ import annotations

import math
from typing import Optional

import networkx as nx
import numpy as np

from .errors import CapacityError, DomainError
from .graph_core import Digraph, GainGraph, SimpleGraph
from .hermitian_k import KHermitianParams, Kind, StructurePartition, build_structure
from .structure import is_in_Dn


def _nx_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(2**31 - 1))


def from_networkx(g: nx.Graph) -> SimpleGraph:
    index = {v: i for i, v in enumerate(sorted(g.nodes))}
    return SimpleGraph(len(index), tuple((index[u], index[v]) for u, v in g.edges))


def random_connected_graph(
    n: int, p: float, rng: np.random.Generator, max_tries: int = 10_000
) -> SimpleGraph:
    for _ in range(max_tries):
        g = nx.gnp_random_graph(n, p, seed=_nx_seed(rng))
        if nx.is_connected(g):
            return from_networkx(g)
    raise CapacityError(f"no connected G({n}, {p}) sample in {max_tries} tries")


def random_tree(n: int, rng: np.random.Generator) -> SimpleGraph:
    """Uniform labelled tree from a random Pruefer sequence."""
    if n == 1:
        return SimpleGraph(1)
    if n == 2:
        return SimpleGraph(2, ((0, 1),))
    seq = [int(x) for x in rng.integers(n, size=n - 2)]
    return from_networkx(nx.from_prufer_sequence(seq))


def random_angles(m: int, rng: np.random.Generator, low: float = -math.pi, high: float = math.pi) -> np.ndarray:
    """Uniform angles; with the default range the sample is flipped onto (-pi, pi]."""
    a = rng.uniform(low, high, size=m)
    if low == -math.pi and high == math.pi:
        a = -a
    return a


def random_gain_graph(
    graph: SimpleGraph, rng: np.random.Generator, low: float = -math.pi, high: float = math.pi
) -> GainGraph:
    return GainGraph(graph, tuple(random_angles(graph.m, rng, low, high)))


def random_digraph(n: int, p: float, rng: np.random.Generator) -> Digraph:
    """Connected underlying graph; each edge forward, backward or a digon."""
    g = random_connected_graph(n, p, rng)
    return orient_randomly(g, rng)


def orient_randomly(g: SimpleGraph, rng: np.random.Generator) -> Digraph:
    arcs = []
    for (u, v), c in zip(g.edges, rng.integers(3, size=g.m)):
        if c == 0:
            arcs.append((u, v))
        elif c == 1:
            arcs.append((v, u))
        else:
            arcs += [(u, v), (v, u)]
    return Digraph(g.n, tuple(arcs))


def random_regular_graph(n: int, d: int, rng: np.random.Generator, max_tries: int = 1000) -> SimpleGraph:
    for _ in range(max_tries):
        g = nx.random_regular_graph(d, n, seed=_nx_seed(rng))
        if nx.is_connected(g):
            return from_networkx(g)
    raise CapacityError(f"no connected {d}-regular graph on {n} vertices in {max_tries} tries")


def random_dn_graph(n: int, rng: np.random.Generator, extra_edges: Optional[int] = None, max_tries: int = 10_000) -> SimpleGraph:
    """A random connected graph with at most one cycle of each length (tree plus a few chords)."""
    for _ in range(max_tries):
        tree = random_tree(n, rng)
        edges = set(tree.edges)
        missing = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
        k = int(rng.integers(1, 4)) if extra_edges is None else extra_edges
        if k > len(missing):
            continue
        for i in rng.choice(len(missing), size=k, replace=False):
            edges.add(missing[int(i)])
        g = SimpleGraph(n, tuple(edges))
        if is_in_Dn(g):
            return g
    raise CapacityError("no D_n sample found")


def _label_graph(
    g: SimpleGraph, steps: set[int], n_cls: int, rng: np.random.Generator, budget: int = 20_000
) -> Optional[list[int]]:
    """Randomized backtracking for labels whose edge differences all lie in ``steps`` (mod n_cls)."""
    order = list(nx.bfs_tree(nx.Graph(list(g.edges)), int(rng.integers(g.n))).nodes)
    labels: dict[int, int] = {}
    calls = 0

    def place(i: int) -> bool:
        nonlocal calls
        calls += 1
        if calls > budget:
            return False
        if i == len(order):
            return True
        v = order[i]
        for c in rng.permutation(n_cls):
            c = int(c)
            if all((c - labels[w]) % n_cls in steps for w in g.neighbors(v) if w in labels):
                labels[v] = c
                if place(i + 1):
                    return True
                del labels[v]
        return False

    if not place(0):
        return None
    return [labels[v] for v in range(g.n)]


def random_structure_digraph(
    kind: Kind,
    params: KHermitianParams,
    rng: np.random.Generator,
    n_range: tuple[int, int] = (6, 12),
    degrees: tuple[int, ...] = (2, 3, 4),
    max_tries: int = 500,
) -> tuple[Digraph, StructurePartition]:
    """A connected regular digraph carrying a Structure A or B partition.

    Structure B samples are non-bipartite, so only -Phi is balanced and the
    kind is recoverable without ambiguity.
    """
    k, n_cls = params.k, params.n_classes
    if kind == "A":
        digon_step, arc_step = 0, 1
    elif kind == "B":
        digon_step, arc_step = k + 1, k + 2
    else:
        raise DomainError(f"unknown structure kind {kind!r}")
    steps = {digon_step, arc_step % n_cls, (-arc_step) % n_cls}
    for _ in range(max_tries):
        d = int(rng.choice(degrees))
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        if n * d % 2 or d >= n:
            continue
        g = random_regular_graph(n, d, rng)
        if kind == "B" and nx.is_bipartite(nx.Graph(list(g.edges))):
            continue
        labels = _label_graph(g, steps, n_cls, rng)
        if labels is None:
            continue
        arcs, digons = [], []
        for u, v in g.edges:
            step = (labels[v] - labels[u]) % n_cls
            if step == digon_step:
                digons.append((u, v))
            elif step == arc_step % n_cls:
                arcs.append((u, v))
            else:
                arcs.append((v, u))
        x = build_structure(kind, labels, arcs, digons, params)
        return x, StructurePartition(tuple(labels), kind, k)
    raise CapacityError(f"no Structure {kind} sample for k = {k} in {max_tries} tries")

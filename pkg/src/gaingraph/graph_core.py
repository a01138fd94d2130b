"""Simple graphs, digraphs, unit gains and switching.

Vertices are 0-based integers inside the library; file formats and reports
translate to 1-based labels at the boundary.

Gains are stored as angles only, so every gain has modulus exactly one and
products of gains are sums of angles with a single final reduction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import DomainError

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi

#: Default tolerance for comparing angles on the circle.
ANGLE_TOL = 1e-9


def canonical_angle(theta: float) -> float:
    """Reduce ``theta`` into the half-open interval (-pi, pi]."""
    t = math.remainder(theta, TWO_PI)
    if t <= -math.pi:
        t += TWO_PI
    return t + 0.0  # no negative zero


def unit_interval_angle(theta: float) -> float:
    """Reduce ``theta`` into [0, 2*pi)."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:
        t -= TWO_PI
    return t


def angle_distance(a: float, b: float) -> float:
    """Distance between two angles measured along the circle."""
    d = abs(math.fmod(a - b, TWO_PI))
    return min(d, TWO_PI - d)


def angles_close(a: float, b: float, tol: float = ANGLE_TOL) -> bool:
    return angle_distance(a, b) <= tol


@dataclass(frozen=True)
class Gain:
    """A unit complex number e^{i angle}."""

    angle: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "angle", canonical_angle(float(self.angle)))

    @classmethod
    def from_complex(cls, z: complex, tol: float = 1e-9) -> "Gain":
        if abs(abs(z) - 1.0) > tol:
            raise DomainError(f"{z!r} is not a unit complex number")
        return cls(cmath.phase(z))

    @property
    def value(self) -> complex:
        return cmath.exp(1j * self.angle)

    @property
    def real(self) -> float:
        return math.cos(self.angle)

    def inverse(self) -> "Gain":
        return Gain(-self.angle)

    def __mul__(self, other: "Gain") -> "Gain":
        return Gain(self.angle + other.angle)

    def __truediv__(self, other: "Gain") -> "Gain":
        return Gain(self.angle - other.angle)

    def __neg__(self) -> "Gain":
        return Gain(self.angle + math.pi)

    def isclose(self, other: "Gain", tol: float = ANGLE_TOL) -> bool:
        return angles_close(self.angle, other.angle, tol)


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices ``0 .. n-1``.

    ``edges`` is stored sorted with ``u < v`` in every pair.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("a graph needs at least one vertex")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DomainError(f"edge ({u}, {v}) has a vertex outside 0..{self.n - 1}")
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            e = _normalize_edge(u, v)
            if e in seen:
                raise DomainError(f"parallel edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: k for k, e in enumerate(self.edges)}

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edge_index

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    def is_regular(self) -> bool:
        return len(set(self.degrees)) == 1

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adjacency[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.m == self.n - 1 and self.is_connected()

    def cyclomatic_number(self) -> int:
        return self.m - self.n + len(self.components())


@dataclass(frozen=True)
class Digraph:
    """Digraph without self-arcs; a digon is a pair of opposite arcs."""

    n: int
    arcs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("a digraph needs at least one vertex")
        seen = set()
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DomainError(f"arc ({u}, {v}) has a vertex outside 0..{self.n - 1}")
            if u == v:
                raise DomainError(f"self-arc at vertex {u}")
            if (u, v) in seen:
                raise DomainError(f"duplicate arc ({u}, {v})")
            seen.add((u, v))
        object.__setattr__(self, "arcs", tuple(sorted(seen)))

    @cached_property
    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arc_set

    def is_digon(self, u: int, v: int) -> bool:
        return (u, v) in self.arc_set and (v, u) in self.arc_set

    @property
    def digons(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in self.arcs if u < v and (v, u) in self.arc_set]

    @property
    def single_arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in self.arcs if (v, u) not in self.arc_set]


def underlying_graph(x: Digraph) -> SimpleGraph:
    """The simple graph obtained by forgetting arc directions."""
    return SimpleGraph(x.n, tuple({_normalize_edge(u, v) for u, v in x.arcs}))


@dataclass(frozen=True)
class GainGraph:
    """A simple graph with a unit gain on every oriented edge.

    ``angles[k]`` is the angle of the gain of the arc ``edges[k] = (u, v)``
    with ``u < v``; the reverse arc carries the negated angle.
    """

    graph: SimpleGraph
    angles: tuple[float, ...] = field(default=())

    def __post_init__(self):
        angles = tuple(canonical_angle(float(a)) for a in self.angles)
        if not angles and self.graph.m:
            angles = (0.0,) * self.graph.m
        if len(angles) != self.graph.m:
            raise DomainError(f"expected {self.graph.m} gains, got {len(angles)}")
        object.__setattr__(self, "angles", angles)

    @classmethod
    def from_arc_angles(cls, n: int, arc_angles: Mapping[tuple[int, int], float]) -> "GainGraph":
        """Build from ``{(u, v): angle}`` where ``angle`` is the gain of u -> v."""
        norm = {}
        for (u, v), a in arc_angles.items():
            e = _normalize_edge(u, v)
            if e in norm:
                raise DomainError(f"edge {e} given twice")
            norm[e] = a if u < v else -a
        graph = SimpleGraph(n, tuple(norm))
        return cls(graph, tuple(norm[e] for e in graph.edges))

    @classmethod
    def trivial(cls, graph: SimpleGraph) -> "GainGraph":
        """The all-ones gain graph (G, 1)."""
        return cls(graph, (0.0,) * graph.m)

    @property
    def n(self) -> int:
        return self.graph.n

    def angle(self, u: int, v: int) -> float:
        """Angle of the gain of the oriented edge u -> v."""
        k = self.graph.edge_index.get(_normalize_edge(u, v))
        if k is None:
            raise DomainError(f"({u}, {v}) is not an edge")
        a = self.angles[k]
        return a if u < v else canonical_angle(-a)

    def gain(self, u: int, v: int) -> Gain:
        return Gain(self.angle(u, v))

    def arc_angles(self) -> dict[tuple[int, int], float]:
        return dict(zip(self.graph.edges, self.angles))

    def with_angles(self, angles: Sequence[float]) -> "GainGraph":
        return GainGraph(self.graph, tuple(angles))

    def isclose(self, other: "GainGraph", tol: float = ANGLE_TOL) -> bool:
        return self.graph == other.graph and all(
            angles_close(a, b, tol) for a, b in zip(self.angles, other.angles)
        )


@dataclass(frozen=True)
class SwitchingFunction:
    """A unit gain per vertex, stored as angles."""

    angles: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(canonical_angle(float(a)) for a in self.angles))

    @classmethod
    def identity(cls, n: int) -> "SwitchingFunction":
        return cls((0.0,) * n)

    def __len__(self) -> int:
        return len(self.angles)

    def __getitem__(self, v: int) -> Gain:
        return Gain(self.angles[v])


def apply_switching(phi: GainGraph, zeta: SwitchingFunction) -> GainGraph:
    """Return Phi^zeta with gain(s, t) = zeta(s)^-1 * gain(s, t) * zeta(t)."""
    if len(zeta) != phi.n:
        raise DomainError(f"switching function covers {len(zeta)} of {phi.n} vertices")
    z = zeta.angles
    return GainGraph(
        phi.graph,
        tuple(a - z[u] + z[v] for (u, v), a in zip(phi.graph.edges, phi.angles)),
    )


def negate(phi: GainGraph) -> GainGraph:
    """The gain graph -Phi: every gain multiplied by -1."""
    return GainGraph(phi.graph, tuple(a + math.pi for a in phi.angles))


def has_nonneg_real_part(phi: GainGraph, tol: float = 1e-12) -> bool:
    """True iff every edge gain has angle in [-pi/2, pi/2] (up to ``tol``)."""
    return all(abs(a) <= HALF_PI + tol for a in phi.angles)

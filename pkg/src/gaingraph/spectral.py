"""Adjacency matrices, spectra, characteristic polynomials and bound checks.

Two independent routes to the characteristic polynomial are provided: a
trace recurrence on the matrix, and the elementary-subgraph expansion
a_i = sum_H (-1)^p(H) 2^c(H) prod_C Re(gain(C)), which needs only the graph
and its cycle gains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import CapacityError, ConnectivityError, DomainError, InvariantError, NumericalError
from .graph_core import GainGraph, SimpleGraph, has_nonneg_real_part, negate
from .spanning import gain_of_cycle
from .structure import enumerate_cycles
from .switching import is_balanced

#: Tolerance for spectral equalities (rho = Delta, cospectrality, ...).
SPECTRAL_TOL = 1e-8


def adjacency_matrix(phi: GainGraph) -> np.ndarray:
    """A(Phi) with a_st = gain(s -> t) on edges and 0 elsewhere."""
    a = np.zeros((phi.n, phi.n), dtype=complex)
    for (u, v), t in zip(phi.graph.edges, phi.angles):
        z = complex(math.cos(t), math.sin(t))
        a[u, v] = z
        a[v, u] = z.conjugate()
    return a


def from_adjacency_matrix(a: np.ndarray, tol: float = 1e-9) -> GainGraph:
    """Read a gain graph off a Hermitian matrix with zero or unit-modulus entries."""
    a = np.asarray(a, dtype=complex)
    check_hermitian(a, tol)
    arcs = {}
    n = a.shape[0]
    for u in range(n):
        if abs(a[u, u]) > tol:
            raise DomainError(f"nonzero diagonal entry at {u}")
        for v in range(u + 1, n):
            z = a[u, v]
            if abs(z) <= tol:
                continue
            if abs(abs(z) - 1.0) > tol:
                raise DomainError(f"entry ({u}, {v}) has modulus {abs(z)}, expected 0 or 1")
            arcs[(u, v)] = float(np.angle(z))
    return GainGraph.from_arc_angles(n, arcs)


def graph_adjacency(graph: SimpleGraph) -> np.ndarray:
    a = np.zeros((graph.n, graph.n))
    for u, v in graph.edges:
        a[u, v] = a[v, u] = 1.0
    return a


def check_hermitian(m: np.ndarray, tol: float = 1e-12) -> None:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvariantError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 1.0)
    if m.size and np.max(np.abs(m - m.conj().T)) > tol * scale:
        raise InvariantError("matrix is not Hermitian")


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues sorted in descending order."""

    eigenvalues: tuple[float, ...]

    @property
    def lambda1(self) -> float:
        return self.eigenvalues[0]

    @property
    def lambda_min(self) -> float:
        return self.eigenvalues[-1]

    @property
    def radius(self) -> float:
        return spectral_radius(self)

    def as_array(self) -> np.ndarray:
        return np.array(self.eigenvalues)

    def isclose(self, other: "Spectrum", tol: float = SPECTRAL_TOL) -> bool:
        return len(self.eigenvalues) == len(other.eigenvalues) and bool(
            np.all(np.abs(self.as_array() - other.as_array()) <= tol)
        )


def eigenvalues(m: np.ndarray, residual_tol: float = 1e-8) -> Spectrum:
    """Eigenvalues of a Hermitian matrix.

    Every eigenpair is checked: ||M v - lambda v|| <= residual_tol * max(1, ||M||_2).
    """
    m = np.asarray(m)
    check_hermitian(m)
    if m.shape[0] == 0:
        return Spectrum(())
    m = 0.5 * (m + m.conj().T)
    w, vecs = np.linalg.eigh(m)
    norm = max(1.0, float(np.max(np.abs(w))))
    resid = np.linalg.norm(m @ vecs - vecs * w, axis=0)
    if np.max(resid) > residual_tol * norm:
        raise NumericalError(f"eigenpair residual {np.max(resid):.3e} above tolerance")
    return Spectrum(tuple(float(x) for x in w[::-1]))


def gain_spectrum(phi: GainGraph) -> Spectrum:
    return eigenvalues(adjacency_matrix(phi))


def spectral_radius(spectrum: Spectrum) -> float:
    if not spectrum.eigenvalues:
        raise DomainError("empty spectrum")
    return max(abs(spectrum.eigenvalues[0]), abs(spectrum.eigenvalues[-1]))


@dataclass(frozen=True)
class CharPoly:
    """Coefficients (a_1, ..., a_n) of x^n + a_1 x^(n-1) + ... + a_n."""

    coefficients: tuple[float, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    def monic(self) -> np.ndarray:
        return np.concatenate([[1.0], np.asarray(self.coefficients, dtype=float)])

    def __call__(self, x: float) -> float:
        return float(np.polyval(self.monic(), x))

    def roots(self, zero_tol: float = 1e-10) -> np.ndarray:
        """Real roots in descending order (imaginary parts from rounding are dropped).

        Trailing coefficients below ``zero_tol`` (relative to the largest one)
        are treated as exact zeros, so a multiple root at 0 is split off
        before the companion-matrix solve instead of smeared by rounding.
        """
        if self.degree == 0:
            return np.zeros(0)
        c = self.monic()
        cut = zero_tol * max(1.0, float(np.max(np.abs(c))))
        zeros = 0
        while zeros < self.degree and abs(c[-1 - zeros]) <= cut:
            zeros += 1
        r = np.roots(c[: len(c) - zeros]).real if zeros < self.degree else np.zeros(0)
        return np.sort(np.concatenate([r, np.zeros(zeros)]))[::-1]

    def max_difference(self, other: "CharPoly") -> float:
        if self.degree != other.degree:
            return math.inf
        if self.degree == 0:
            return 0.0
        return float(np.max(np.abs(np.subtract(self.coefficients, other.coefficients))))


def char_poly_from_matrix(m: np.ndarray, imag_tol: float = 1e-9) -> CharPoly:
    """Faddeev-LeVerrier recurrence for det(xI - M)."""
    m = np.asarray(m, dtype=complex)
    check_hermitian(m)
    n = m.shape[0]
    eye = np.eye(n, dtype=complex)
    aux = np.zeros((n, n), dtype=complex)
    prev = 1.0 + 0j
    coeffs = []
    for k in range(1, n + 1):
        aux = m @ aux + prev * eye
        c = -np.trace(m @ aux) / k
        if abs(c.imag) > imag_tol * max(1.0, abs(c.real)):
            raise NumericalError(f"coefficient a_{k} has imaginary residue {c.imag:.3e}")
        coeffs.append(float(c.real))
        prev = complex(c.real)
    return CharPoly(tuple(coeffs))


def char_poly_elementary(
    phi: GainGraph,
    max_vertices: int = 12,
    cycle_limit: int = 200_000,
) -> CharPoly:
    """Characteristic polynomial from the elementary-subgraph expansion.

    Elementary subgraphs are enumerated vertex by vertex: the lowest undecided
    vertex is left uncovered, matched by an edge, or covered by a cycle whose
    smallest vertex it is. Sub-results are shared across identical sets of
    remaining vertices.
    """
    n = phi.n
    if n > max_vertices:
        raise CapacityError(f"{n} vertices exceeds the elementary-subgraph guard of {max_vertices}")
    cycles = enumerate_cycles(phi.graph, limit=cycle_limit)
    at_vertex: list[list[tuple[int, int, float]]] = [[] for _ in range(n)]
    for cyc in cycles:
        mask = 0
        for v in cyc:
            mask |= 1 << v
        weight = 2.0 * gain_of_cycle(phi, cyc).real
        at_vertex[cyc[0]].append((mask, len(cyc), weight))
    higher = [[w for w in phi.graph.neighbors(v) if w > v] for v in range(n)]

    @lru_cache(maxsize=None)
    def expand(avail: int) -> tuple[float, ...]:
        out = np.zeros(n + 1)
        if avail == 0:
            out[0] = 1.0
            return tuple(out)
        v = (avail & -avail).bit_length() - 1
        rest = avail & ~(1 << v)
        out += expand(rest)
        for w in higher[v]:
            if rest >> w & 1:
                sub = np.asarray(expand(rest & ~(1 << w)))
                out[2:] -= sub[:-2]
        for mask, size, weight in at_vertex[v]:
            if mask & avail == mask:
                sub = np.asarray(expand(avail & ~mask))
                out[size:] -= weight * sub[: n + 1 - size]
        return tuple(out)

    total = expand((1 << n) - 1)
    return CharPoly(tuple(float(c) for c in total[1:]))


@dataclass(frozen=True)
class BoundsReport:
    lambda1: float
    lambda_min: float
    rho: float
    delta: int
    rho_underlying: float
    ratio: Optional[float]
    nonneg_real_part: bool
    rho_le_delta: bool
    rho_le_rho_underlying: bool
    lambda_bounds_hold: bool
    lambda_bounds_asserted: bool


def bounds_report(
    phi: GainGraph,
    tol: float = SPECTRAL_TOL,
    assert_lambda_bounds: Optional[bool] = None,
) -> BoundsReport:
    """Evaluate rho <= Delta, rho <= rho(A(G)) and lambda1 <= rho <= 3 lambda1.

    The first two always hold and are asserted. The three-lambda bound is
    asserted when every gain has nonnegative real part (or when the caller
    forces it); otherwise it is only reported.
    """
    if not phi.graph.is_connected():
        raise ConnectivityError("bounds are defined for connected graphs")
    spec = gain_spectrum(phi)
    rho = spec.radius
    rho_g = eigenvalues(graph_adjacency(phi.graph)).radius
    delta = phi.graph.max_degree
    nonneg = has_nonneg_real_part(phi)
    lam1 = spec.lambda1
    ratio = rho / lam1 if lam1 > tol else None
    lam_ok = lam1 <= rho + tol and rho <= 3.0 * lam1 + tol
    asserted = nonneg if assert_lambda_bounds is None else assert_lambda_bounds
    report = BoundsReport(
        lambda1=lam1,
        lambda_min=spec.lambda_min,
        rho=rho,
        delta=delta,
        rho_underlying=rho_g,
        ratio=ratio,
        nonneg_real_part=nonneg,
        rho_le_delta=rho <= delta + tol,
        rho_le_rho_underlying=rho <= rho_g + tol,
        lambda_bounds_hold=lam_ok,
        lambda_bounds_asserted=asserted,
    )
    if not report.rho_le_delta:
        raise InvariantError(f"rho = {rho} exceeds the maximum degree {delta}")
    if not report.rho_le_rho_underlying:
        raise InvariantError(f"rho = {rho} exceeds rho(A(G)) = {rho_g}")
    if asserted and not lam_ok:
        raise InvariantError(f"lambda1 <= rho <= 3 lambda1 fails: lambda1 = {lam1}, rho = {rho}")
    return report


@dataclass(frozen=True)
class RhoDeltaVerdict:
    """Both sides of: rho = Delta iff G is regular and Phi or -Phi is balanced."""

    rho: float
    delta: int
    spectral: bool
    regular: bool
    balanced: bool
    antibalanced: bool

    @property
    def structural(self) -> bool:
        return self.regular and (self.balanced or self.antibalanced)

    @property
    def agree(self) -> bool:
        return self.spectral == self.structural

    def __bool__(self) -> bool:
        return self.structural

    @property
    def explanation(self) -> str:
        parts = [
            f"rho = {self.rho:.12g}, Delta = {self.delta}",
            "regular" if self.regular else "not regular",
            "Phi balanced" if self.balanced else "Phi unbalanced",
            "-Phi balanced" if self.antibalanced else "-Phi unbalanced",
        ]
        return "; ".join(parts)


def rho_equals_delta(phi: GainGraph, tol: float = SPECTRAL_TOL) -> RhoDeltaVerdict:
    if not phi.graph.is_connected():
        raise ConnectivityError("the characterization needs a connected graph")
    rho = gain_spectrum(phi).radius
    delta = phi.graph.max_degree
    return RhoDeltaVerdict(
        rho=rho,
        delta=delta,
        spectral=abs(rho - delta) <= tol,
        regular=phi.graph.is_regular(),
        balanced=is_balanced(phi),
        antibalanced=is_balanced(negate(phi)),
    )


def real_cycle_gains_equal(
    phi1: GainGraph,
    phi2: GainGraph,
    tol: float = 1e-9,
    limit: int = 200_000,
) -> bool:
    """Compare Re(gain(C)) over every cycle C of the common underlying graph."""
    if phi1.graph != phi2.graph:
        raise DomainError("gain graphs have different underlying graphs")
    for cyc in enumerate_cycles(phi1.graph, limit=limit):
        if abs(gain_of_cycle(phi1, cyc).real - gain_of_cycle(phi2, cyc).real) > tol:
            return False
    return True

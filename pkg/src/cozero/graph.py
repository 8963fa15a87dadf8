"""The full cozero-divisor graph, its Laplacian and the brute-force spectrum."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import connected_components

from .eigen import EigensolverError
from .multiset import SpectrumMultiset
from .ring import PolyElement, RingContext, ideal_masks, vertex_indices


@dataclass(frozen=True, eq=False)
class CozeroGraph:
    ctx: RingContext
    vertex_index: np.ndarray = field(repr=False)  # element index of each vertex
    adjacency: np.ndarray = field(repr=False)  # symmetric bool, zero diagonal

    @property
    def vertices(self) -> list[PolyElement]:
        return [self.ctx.from_index(i) for i in self.vertex_index]

    @property
    def degree(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def __len__(self) -> int:
        return len(self.vertex_index)


def build_graph(ctx: RingContext, max_n: int | None = None) -> CozeroGraph:
    """u ~ v iff u is not in Rv and v is not in Ru."""
    ctx.check_cap(max_n)
    verts = vertex_indices(ctx)
    contains = np.empty((len(verts), len(verts)), dtype=bool)  # v_j in R v_i
    for start in range(0, len(verts), 512):
        chunk = verts[start : start + 512]
        contains[start : start + len(chunk)] = ideal_masks(ctx, chunk)[:, verts]
    adj = ~contains & ~contains.T
    np.fill_diagonal(adj, False)
    return CozeroGraph(ctx, verts, adj)


def graph_from_adjacency(adjacency) -> CozeroGraph:
    """Wrap a synthetic adjacency matrix (no ring behind it) for testing."""
    adj = np.asarray(adjacency, dtype=bool)
    return CozeroGraph(None, np.arange(len(adj)), adj)


def laplacian(g: CozeroGraph) -> np.ndarray:
    A = g.adjacency.astype(float)
    return np.diag(A.sum(axis=1)) - A


def clustering_tol(L: np.ndarray, tol: float) -> float:
    scale = float(np.abs(L).sum(axis=1).max()) if L.size else 0.0
    return tol * max(1.0, scale)


def oracle_spectrum(g: CozeroGraph, tol: float = 1e-8) -> SpectrumMultiset:
    """Dense eigendecomposition of the full Laplacian."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    L = laplacian(g)
    if len(L) == 0:
        return SpectrumMultiset((), tol)
    ctol = clustering_tol(L, tol)
    try:
        w, v = np.linalg.eigh(L)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(str(exc)) from exc
    residual = np.linalg.norm(L @ v - v * w, axis=0).max()
    if residual > ctol:
        raise EigensolverError(f"eigenpair residual {residual:.3g} exceeds {ctol:.3g}")
    return SpectrumMultiset.from_values(w, ctol)


@dataclass(frozen=True)
class ConnectivityReport:
    component_count: int
    isolated_vertices: list  # PolyElement, or int positions for synthetic graphs

    @property
    def connected(self) -> bool:
        return self.component_count == 1


def connectivity_report(g: CozeroGraph) -> ConnectivityReport:
    count, _ = connected_components(g.adjacency, directed=False)
    idx = np.flatnonzero(g.degree == 0)
    if g.ctx is None:  # synthetic graph: report vertex positions
        isolated = [int(i) for i in idx]
    else:
        isolated = [g.ctx.from_index(g.vertex_index[i]) for i in idx]
    return ConnectivityReport(int(count), isolated)

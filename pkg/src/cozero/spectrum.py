"""Laplacian spectra through the generalized-join decomposition.

A generalized join replaces each vertex u_i of a frame graph by a graph G_i
of order n_i and joins G_i to G_j completely whenever u_i ~ u_j.  Its
Laplacian spectrum is

    union_i (D_i + spec(G_i) minus one zero)  union  spec(Q),

where D_i is the total weight of the neighbours of u_i and Q is the k x k
symmetric quotient matrix with diagonal D_i and -sqrt(n_i n_j) on frame
edges.  For the cozero-divisor graph the frame is the reduced ideal graph
and every G_i is edgeless.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import families
from .eigen import jacobi_eigh
from .lattice import IdealLattice, enumerate_ideals
from .multiset import SpectrumMultiset
from .ring import RingContext


@dataclass(frozen=True, eq=False)
class JoinInstance:
    weights: np.ndarray  # n_i
    adjacency: np.ndarray = field(repr=False)  # frame adjacency, symmetric bool
    component_spectra: tuple[SpectrumMultiset, ...] = field(repr=False)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.int64)
        adj = np.asarray(self.adjacency, dtype=bool)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "adjacency", adj)
        if adj.shape != (len(w), len(w)) or (adj != adj.T).any() or adj.diagonal().any():
            raise ValueError("frame adjacency must be square, symmetric and loop-free")
        if (w < 1).any():
            raise ValueError("weights must be positive")
        if len(self.component_spectra) != len(w):
            raise ValueError("need one component spectrum per frame vertex")

    @classmethod
    def null_components(cls, weights, adjacency, tol: float = 1e-8) -> "JoinInstance":
        """Every component edgeless: spectrum 0^[n_i]."""
        spectra = tuple(SpectrumMultiset(((0.0, int(m)),), tol) for m in weights)
        return cls(weights, adjacency, spectra)

    @classmethod
    def from_lattice(cls, lattice: IdealLattice, tol: float = 1e-8) -> "JoinInstance":
        return cls.null_components(lattice.weights, lattice.reduced_adjacency, tol)

    @property
    def D(self) -> np.ndarray:
        return self.adjacency.astype(np.int64) @ self.weights


@dataclass(frozen=True, eq=False)
class QuotientMatrix:
    symmetric: np.ndarray
    vertex_weighted: np.ndarray  # similar to `symmetric`, zero row sums

    @property
    def dimension(self) -> int:
        return len(self.symmetric)


def build_quotient_matrix(inst: JoinInstance) -> QuotientMatrix:
    w = inst.weights.astype(float)
    adj = inst.adjacency
    D = inst.D.astype(float)
    sym = np.where(adj, -np.sqrt(np.outer(w, w)), 0.0)
    np.fill_diagonal(sym, D)
    weighted = np.where(adj, -w[None, :], 0.0)
    np.fill_diagonal(weighted, D)
    return QuotientMatrix(sym, weighted)


def _without_one_zero(spec: SpectrumMultiset) -> np.ndarray:
    vals = spec.values()
    if len(vals) == 0:
        raise ValueError("empty component spectrum")
    i = int(np.argmin(np.abs(vals)))
    if abs(vals[i]) > spec.tol:
        raise ValueError(f"component spectrum {spec} has no zero eigenvalue to remove")
    return np.delete(vals, i)


def join_spectrum(inst: JoinInstance, tol: float = 1e-8) -> SpectrumMultiset:
    D = inst.D
    values = [D[i] + _without_one_zero(s) for i, s in enumerate(inst.component_spectra)]
    q = build_quotient_matrix(inst)
    qvals, _ = jacobi_eigh(q.symmetric)
    values.append(qvals)
    scale = max(1.0, 2.0 * float(D.max(initial=0)))
    return SpectrumMultiset.from_values(np.concatenate(values), tol * scale)


def structural_spectrum(
    ctx: RingContext, tol: float = 1e-8, max_n: int | None = None
) -> SpectrumMultiset:
    lattice = enumerate_ideals(ctx, max_n)
    return join_spectrum(JoinInstance.from_lattice(lattice, tol), tol)


def symmetrize_weighted(L: np.ndarray) -> np.ndarray:
    """Symmetric matrix similar to a vertex-weighted Laplacian (entries -n_j)."""
    L = np.asarray(L, dtype=float)
    prod = L * L.T
    if (prod < -1e-9).any():
        raise ValueError("off-diagonal pattern is not sign-symmetric")
    sym = -np.sqrt(np.clip(prod, 0, None))
    np.fill_diagonal(sym, np.diag(L))
    return sym


def closed_form_spectrum(ctx: RingContext, tol: float = 1e-8) -> SpectrumMultiset:
    """Spectrum assembled from the published formulas for the family of n.

    Formula families are evaluated as published; the family's published
    quotient matrix is eigendecomposed numerically.
    """
    fam = families.require_family(ctx)
    pub = families.published_spectrum(fam)
    values = []
    for value, mult in pub.families:
        values.extend([value] * mult)
    if pub.quotient is not None:
        qvals, _ = jacobi_eigh(symmetrize_weighted(pub.quotient))
        values.extend(qvals)
    top = max([abs(v) for v in values], default=0.0)
    return SpectrumMultiset.from_values(values, tol * max(1.0, top))


@dataclass
class MatchReport:
    match: bool
    dimension: tuple[int, int]
    max_deviation: float
    multiplicity_mismatches: list[tuple[float, int, int]]  # (value, mult in a, mult in b)

    def summary(self) -> str:
        if self.match:
            return f"match (max deviation {self.max_deviation:.3g})"
        parts = [f"mismatch (max deviation {self.max_deviation:.3g})"]
        for v, ma, mb in self.multiplicity_mismatches[:8]:
            parts.append(f"{v:.10g}: {ma} vs {mb}")
        if len(self.multiplicity_mismatches) > 8:
            parts.append("...")
        return "; ".join(parts)


class DimensionMismatchError(ValueError):
    pass


def compare_multisets(a: SpectrumMultiset, b: SpectrumMultiset, tol: float = 1e-8) -> MatchReport:
    """Pair the sorted expanded eigenvalue lists elementwise."""
    if a.dimension != b.dimension:
        raise DimensionMismatchError(
            f"spectra describe different dimensions: {a.dimension} vs {b.dimension}"
        )
    va, vb = a.values(), b.values()
    dev = float(np.abs(va - vb).max()) if len(va) else 0.0
    # cluster the pooled values, then count each side per cluster
    ctol = max(tol, a.tol, b.tol)
    pooled = np.concatenate([va, vb])
    side = np.concatenate([np.zeros(len(va), int), np.ones(len(vb), int)])
    order = np.argsort(pooled, kind="stable")
    pooled, side = pooled[order], side[order]
    mism = []
    start = 0
    for i in range(1, len(pooled) + 1):
        if i == len(pooled) or pooled[i] - pooled[i - 1] > ctol:
            ma = int(np.sum(side[start:i] == 0))
            mb = i - start - ma
            if ma != mb:
                mism.append((float(pooled[start:i].mean()), ma, mb))
            start = i
    return MatchReport(dev <= tol, (a.dimension, b.dimension), dev, mism)


def compare_any(a: SpectrumMultiset, b: SpectrumMultiset, tol: float = 1e-8) -> MatchReport:
    """Like compare_multisets, but a dimension mismatch is reported, not raised."""
    try:
        return compare_multisets(a, b, tol)
    except DimensionMismatchError:
        return MatchReport(False, (a.dimension, b.dimension), float("inf"), [])


def extremes(s: SpectrumMultiset) -> tuple[float, float]:
    """(spectral radius, algebraic connectivity)."""
    vals = s.values()
    if len(vals) < 2:
        raise ValueError("need at least two eigenvalues")
    connectivity = 0.0 if s.multiplicity(0.0) >= 2 else float(vals[1])
    return float(vals[-1]), connectivity


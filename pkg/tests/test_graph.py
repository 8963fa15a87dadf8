import itertools
import math

import numpy as np
import pytest

from conftest import adjacent, elements, ideal, vertices
from cozero.eigen import EigensolverError
from cozero.graph import (
    build_graph,
    connectivity_report,
    graph_from_adjacency,
    laplacian,
    oracle_spectrum,
)
from cozero.lattice import enumerate_ideals
from cozero.ring import EnumerationCapError, PolyElement, RingContext, crt_split


def test_example_vertex_counts():
    assert len(build_graph(RingContext(10))) == 59
    assert len(build_graph(RingContext(9))) == 26


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_prime_graph_is_edgeless(p):
    g = build_graph(RingContext(p))
    assert len(g) == p - 1 and g.edge_count == 0


@pytest.mark.parametrize("n", range(2, 41))
def test_vertex_count_formula(n):
    phi = sum(1 for b in range(n) if math.gcd(b, n) == 1)
    g = build_graph(RingContext(n))
    assert len(g) == n * n - n * phi - 1
    adj = g.adjacency
    assert (adj == adj.T).all() and not adj.diagonal().any()
    assert (g.degree == adj.sum(axis=1)).all()


@pytest.mark.parametrize("n", [6, 8, 9, 12])
def test_adjacency_matches_definition(n, ideal_cache):
    g = build_graph(RingContext(n))
    ideals = ideal_cache(n)
    verts = [tuple(v) for v in g.vertices]
    assert verts == vertices(n)
    for i, j in itertools.combinations(range(len(verts)), 2):
        assert g.adjacency[i, j] == adjacent(n, verts[i], verts[j], ideals)


@pytest.mark.parametrize("n", [6, 10, 12])
def test_adjacency_crt_characterization(n):
    """u ~ v iff the local ideal tuples are incomparable coordinatewise."""
    ctx = RingContext(n)
    local = [(p**k, {e: ideal(p**k, e) for e in elements(p**k)}) for p, k in ctx.factorization]

    def tup(v):
        return [tab[tuple(c)] for (m, tab), c in zip(local, crt_split(ctx, v))]

    g = build_graph(ctx)
    verts = g.vertices
    tuples = [tup(v) for v in verts]
    for i, j in itertools.combinations(range(len(verts)), 2):
        i_in_j = all(a <= b for a, b in zip(tuples[i], tuples[j]))
        j_in_i = all(b <= a for a, b in zip(tuples[i], tuples[j]))
        assert g.adjacency[i, j] == (not i_in_j and not j_in_i)


def test_cap():
    with pytest.raises(EnumerationCapError):
        build_graph(RingContext(30), max_n=20)


def test_laplacian_examples():
    assert not laplacian(build_graph(RingContext(7))).any()
    single = graph_from_adjacency([[0, 1], [1, 0]])
    assert laplacian(single).tolist() == [[1, -1], [-1, 1]]
    g = build_graph(RingContext(6))
    L = laplacian(g)
    assert L.shape == (23, 23)
    assert np.trace(L) == g.degree.sum() == 2 * g.edge_count
    assert not L.sum(axis=1).any()


def test_oracle_prime():
    s = oracle_spectrum(build_graph(RingContext(7)))
    assert s.entries == ((0.0, 6),)


def test_oracle_n9_brute_force_truth():
    # each of the four p+1 clique classes has degree 18, not p(p^2-1) = 24
    s = oracle_spectrum(build_graph(RingContext(9)))
    assert [(s.rounded(v), m) for v, m in s.entries] == [(0, 3), (18, 20), (24, 3)]


@pytest.mark.parametrize("m", [2, 5, 9])
def test_oracle_complete_graph(m):
    K = np.ones((m, m), dtype=bool) & ~np.eye(m, dtype=bool)
    s = oracle_spectrum(graph_from_adjacency(K))
    assert [(s.rounded(v), k) for v, k in s.entries] == [(0, 1), (m, m - 1)]


def test_oracle_rejects_bad_tol():
    with pytest.raises(ValueError):
        oracle_spectrum(build_graph(RingContext(6)), tol=0)


def test_oracle_residual_check(monkeypatch):
    g = build_graph(RingContext(6))
    eigh = np.linalg.eigh

    def broken(L):
        w, v = eigh(L)
        return w + 1.0, v

    monkeypatch.setattr(np.linalg, "eigh", broken)
    with pytest.raises(EigensolverError):
        oracle_spectrum(g)


def test_connectivity_prime_power():
    ctx = RingContext(8)
    rep = connectivity_report(build_graph(ctx))
    assert not rep.connected
    lattice = enumerate_ideals(ctx)
    k = lattice.class_index[PolyElement(4, 0).index(8)]
    expected = {ctx.from_index(i) for i in lattice.ideals[k].generators}
    assert set(rep.isolated_vertices) == expected == {PolyElement(4, 0)}


def test_connectivity_examples():
    assert connectivity_report(build_graph(RingContext(6))).component_count == 1
    rep = connectivity_report(build_graph(RingContext(5)))
    assert rep.component_count == 4 and len(rep.isolated_vertices) == 4
    synthetic = connectivity_report(graph_from_adjacency(np.zeros((3, 3))))
    assert synthetic.isolated_vertices == [0, 1, 2]


@pytest.mark.parametrize("n", [6, 9, 12, 16, 25, 30])
def test_spectral_invariants(n):
    g = build_graph(RingContext(n))
    s = oracle_spectrum(g)
    vals = s.values()
    assert s.dimension == len(g)
    assert math.isclose(vals.sum(), 2 * g.edge_count, rel_tol=1e-8)
    assert vals.min() >= -1e-8
    assert s.multiplicity(0.0) == connectivity_report(g).component_count


@pytest.mark.parametrize("n", [12, 27, 30])
def test_degrees_constant_on_classes(n):
    ctx = RingContext(n)
    g = build_graph(ctx)
    pos = {int(v): i for i, v in enumerate(g.vertex_index)}
    for rec in enumerate_ideals(ctx).ideals:
        degs = {int(g.degree[pos[int(i)]]) for i in rec.generators}
        assert len(degs) == 1

"""Principal ideals of Z_n[x]/(x^2), their inclusion order and the reduced graph."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import families
from .families import Family, UnsupportedFamilyError, family_of
from .ring import (
    PolyElement,
    RingContext,
    element_arrays,
    format_element,
    ideal_masks,
    is_unit,
    vertex_indices,
)


@dataclass(frozen=True, eq=False)
class IdealRecord:
    canonical_generator: PolyElement
    mask: np.ndarray = field(repr=False)  # membership over all n^2 elements
    generators: np.ndarray = field(repr=False)  # element indices generating this ideal
    family_label: str

    @property
    def weight(self) -> int:
        return len(self.generators)

    @property
    def size(self) -> int:
        return int(self.mask.sum())

    def element_set(self, n: int) -> frozenset[PolyElement]:
        return frozenset(PolyElement(*divmod(int(i), n)) for i in np.flatnonzero(self.mask))

    @property
    def name(self) -> str:
        return f"<{self.canonical_generator}>"


@dataclass(frozen=True, eq=False)
class IdealLattice:
    ctx: RingContext
    ideals: tuple[IdealRecord, ...]
    inclusion: np.ndarray = field(repr=False)  # inclusion[i, j]: ideal i inside ideal j
    class_index: np.ndarray = field(repr=False)  # element index -> record, -1 for zero/units
    family: Family | None = None

    @property
    def reduced_adjacency(self) -> np.ndarray:
        return ~self.inclusion & ~self.inclusion.T

    @property
    def weights(self) -> np.ndarray:
        return np.array([r.weight for r in self.ideals], dtype=np.int64)

    def __len__(self) -> int:
        return len(self.ideals)

    def index_of_label(self, label: str) -> int:
        for i, r in enumerate(self.ideals):
            if r.family_label == label:
                return i
        raise KeyError(label)


def enumerate_ideals(ctx: RingContext, max_n: int | None = None) -> IdealLattice:
    """All distinct nonzero proper principal ideals, by brute-force generation."""
    ctx.check_cap(max_n)
    verts = vertex_indices(ctx)
    n = ctx.n
    ra, rb = element_arrays(ctx)
    unit = np.gcd(rb, n) == 1
    ua, ub = ra[unit], rb[unit]
    assigned = np.zeros(ctx.element_count, dtype=bool)
    members: list[np.ndarray] = []
    # in a finite ring Ru = Rv iff u and v are associates, so each class is
    # the orbit of its smallest element under multiplication by units
    for e in verts:
        if assigned[e]:
            continue
        a, b = divmod(int(e), n)
        orbit = np.unique(((ua * b + ub * a) % n) * n + (ub * b) % n)
        assigned[orbit] = True
        members.append(orbit)
    unique_masks = list(ideal_masks(ctx, [m[0] for m in members]))

    fam = family_of(ctx)
    class_index = np.full(ctx.element_count, -1, dtype=np.int64)
    records = []
    # each orbit starts at its smallest index: the lexicographic minimum
    for k, (gens, mask) in enumerate(zip(members, unique_masks)):
        gen = ctx.from_index(int(gens[0]))
        label = families.family_label(fam, *gen) if fam else f"<{gen}>"
        records.append(IdealRecord(gen, mask, gens, label))
        class_index[gens] = k

    M = np.array([r.mask for r in records], dtype=np.float32).reshape(len(records), -1)
    # i inside j iff no element of i lies outside j
    outside = M @ (1.0 - M).T
    inclusion = outside == 0
    return IdealLattice(ctx, tuple(records), inclusion, class_index, fam)


def class_of(lattice: IdealLattice, e: PolyElement) -> int:
    ctx = lattice.ctx
    if e == (0, 0) or is_unit(ctx, e):
        raise ValueError(f"{e} is zero or a unit and belongs to no vertex class")
    return int(lattice.class_index[e.index(ctx.n)])


@dataclass(frozen=True)
class ReducedGraph:
    labels: tuple[str, ...]
    generators: tuple[PolyElement, ...]
    weights: np.ndarray
    adjacency: np.ndarray

    @property
    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(i.tolist(), j.tolist()))

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def edge_labels(self) -> set[frozenset[str]]:
        return {frozenset((self.labels[i], self.labels[j])) for i, j in self.edges}


def reduced_graph(lattice: IdealLattice) -> ReducedGraph:
    return ReducedGraph(
        labels=tuple(r.family_label for r in lattice.ideals),
        generators=tuple(r.canonical_generator for r in lattice.ideals),
        weights=lattice.weights,
        adjacency=lattice.reduced_adjacency.copy(),
    )


# ---------------------------------------------------------------------------
# published tables


@dataclass(frozen=True)
class TableRow:
    family_label: str
    expected_cardinality: int
    expected_degree: int | None


def family_tables(ctx: RingContext) -> list[TableRow]:
    fam = families.require_family(ctx)
    return [TableRow(label, c, d) for label, (c, d) in families.published_table(fam).items()]


@dataclass
class TableCheckRow:
    label: str
    expected_cardinality: int
    cardinality: int | None  # None when no enumerated class carries the label
    expected_degree: int | None
    degree: int | None

    @property
    def cardinality_ok(self) -> bool:
        return self.cardinality == self.expected_cardinality

    @property
    def degree_ok(self) -> bool | None:
        if self.expected_degree is None:
            return None
        return self.degree == self.expected_degree


@dataclass
class TableCheck:
    family: Family
    rows: list[TableCheckRow]
    unmatched: list[str]  # enumerated labels absent from the table

    @property
    def cardinalities_ok(self) -> bool:
        return not self.unmatched and all(r.cardinality_ok for r in self.rows)

    @property
    def degree_mismatches(self) -> list[TableCheckRow]:
        return [r for r in self.rows if r.degree_ok is False]


def class_degrees(lattice: IdealLattice) -> np.ndarray:
    """Full-graph degree of any vertex in each class: total weight of the
    incomparable classes."""
    return lattice.reduced_adjacency.astype(np.int64) @ lattice.weights


def table_check(lattice: IdealLattice) -> TableCheck:
    """Compare enumerated class sizes and degrees with the published table."""
    rows = family_tables(lattice.ctx)
    degrees = class_degrees(lattice)
    by_label = {r.family_label: i for i, r in enumerate(lattice.ideals)}
    out = []
    for row in rows:
        i = by_label.get(row.family_label)
        out.append(
            TableCheckRow(
                row.family_label,
                row.expected_cardinality,
                None if i is None else lattice.ideals[i].weight,
                row.expected_degree,
                None if i is None else int(degrees[i]),
            )
        )
    known = {r.family_label for r in rows}
    unmatched = [lab for lab in by_label if lab not in known]
    return TableCheck(lattice.family, out, unmatched)


# ---------------------------------------------------------------------------
# the p^3 ideal-equality congruence


def ideal_equality_congruence_check(
    ctx: RingContext, k: int, l: int, a1: int, b1: int, a2: int, b2: int
) -> tuple[bool, bool]:
    """Congruence a2*b1 = a1*b2 (mod p^(l-k)) versus actual equality of
    <p^k a1 x + p^l b1> and <p^k a2 x + p^l b2> in Z_{p^3}[x]/(x^2)."""
    if len(ctx.factorization) != 1 or ctx.factorization[0][1] != 3:
        raise UnsupportedFamilyError(f"n={ctx.n} is not the cube of a prime")
    p = ctx.factorization[0][0]
    n = ctx.n
    if not 0 <= k < l <= 2:
        raise ValueError(f"need 0 <= k < l <= 2, got k={k}, l={l}")
    for u in (a1, b1, a2, b2):
        if u % p == 0:
            raise ValueError(f"{u} is not a unit mod {n}")
    congruent = (a2 * b1 - a1 * b2) % p ** (l - k) == 0
    e1 = ctx.element(p**k * a1, p**l * b1)
    e2 = ctx.element(p**k * a2, p**l * b2)
    m1, m2 = ideal_masks(ctx, [e1.index(n), e2.index(n)])
    return bool(congruent), bool(np.array_equal(m1, m2))


def describe(lattice: IdealLattice) -> list[str]:
    """One line per record: label, generator, weight."""
    return [
        f"{r.family_label}\t{format_element(*r.canonical_generator)}\t{r.weight}"
        for r in lattice.ideals
    ]

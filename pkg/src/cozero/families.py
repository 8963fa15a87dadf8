"""Moduli families with published structure, and the published data itself.

A family is one of ``p``, ``p2`` (p^2), ``p3`` (p^3), ``pq``, ``pqr``,
``p2q`` (p^2 q).  Everything in this module is transcribed as published,
including entries known to disagree with enumeration; the comparison
layers (``lattice.table_check`` and ``spectrum.compare_multisets``) are
where disagreements surface.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .ring import RingContext, element_arrays


class UnsupportedFamilyError(ValueError):
    """The modulus is not p, p^2, p^3, pq, pqr or p^2 q."""


class DegenerateParameterError(ValueError):
    """A published formula is outside its validity range for these primes."""


@dataclass(frozen=True)
class Family:
    name: str
    params: dict
    # prime-power moduli of the local components, in family order
    components: tuple[tuple[int, int], ...]

    def __str__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({args})"


def family_of(ctx: RingContext) -> Family | None:
    f = ctx.factorization
    exps = sorted(k for _, k in f)
    if len(f) == 1 and f[0][1] <= 3:
        p, k = f[0]
        return Family({1: "p", 2: "p2", 3: "p3"}[k], {"p": p}, f)
    if exps == [1, 1]:
        (p, _), (q, _) = f
        return Family("pq", {"p": p, "q": q}, f)
    if exps == [1, 1, 1]:
        (p, _), (q, _), (r, _) = f
        return Family("pqr", {"p": p, "q": q, "r": r}, f)
    if exps == [1, 2]:
        sq = next(t for t in f if t[1] == 2)
        other = next(t for t in f if t[1] == 1)
        return Family("p2q", {"p": sq[0], "q": other[0]}, (sq, other))
    return None


def require_family(ctx: RingContext) -> Family:
    fam = family_of(ctx)
    if fam is None:
        raise UnsupportedFamilyError(
            f"n={ctx.n} is not of the form p, p^2, p^3, pq, pqr or p^2 q"
        )
    return fam


# ---------------------------------------------------------------------------
# local ideal signatures and labels


@lru_cache(maxsize=None)
def local_canonical_table(modulus: int) -> np.ndarray:
    """Map element index -> index of the canonical generator of its ideal,
    in Z_modulus[x]/(x^2).  Zero maps to 0; units map to the index of 1."""
    ctx = RingContext(modulus)
    ra, rb = element_arrays(ctx)
    unit = np.gcd(rb, modulus) == 1
    ua, ub = ra[unit], rb[unit]
    table = np.full(ctx.element_count, -1, dtype=np.int64)
    # classes are unit orbits; scanning upward, the first element met is the minimum
    for e in range(ctx.element_count):
        if table[e] >= 0:
            continue
        a, b = divmod(e, modulus)
        table[((ua * b + ub * a) % modulus) * modulus + (ub * b) % modulus] = e
    return table


def local_generator(modulus: int, a: int, b: int) -> tuple[int, int]:
    g = int(local_canonical_table(modulus)[(a % modulus) * modulus + b % modulus])
    return divmod(g, modulus)


def _sym(v: int, p: int) -> str:
    """Render v as a multiple of a power of p: 0, 1, p, 2p, p^2, 3p^2, ..."""
    if v == 0:
        return "0"
    k = 0
    while v % p == 0:
        v //= p
        k += 1
    if k == 0:
        return str(v)
    base = "p" if k == 1 else f"p^{k}"
    return base if v == 1 else f"{v}{base}"


def _chain_index(gen: tuple[int, int], p: int, k: int) -> int:
    """Position of a local ideal in the published local numbering.

    k=1: <0>=1, <x>=2, R=3.
    k=2: <0>=1, <px>=2, <x>=3, <p>=4, <x+lp>=4+l, R=p+4.
    """
    a, b = gen
    if k == 1:
        return {(0, 0): 1, (1, 0): 2, (0, 1): 3}[gen]
    if k == 2:
        if gen == (0, 0):
            return 1
        if gen == (p, 0):
            return 2
        if gen == (1, 0):
            return 3
        if gen == (0, p):
            return 4
        if gen == (0, 1):
            return p + 4
        assert a == 1 and b % p == 0
        return 4 + b // p
    raise ValueError(k)


def signature(fam: Family, a: int, b: int) -> tuple:
    """Canonical local generators of the components of a*x+b."""
    return tuple(local_generator(q**k, a, b) for q, k in fam.components)


def family_label(fam: Family, a: int, b: int) -> str:
    sig = signature(fam, a, b)
    if fam.name in ("p", "p2", "p3"):
        p = fam.params["p"]
        ga, gb = sig[0]
        return f"A_{{{_sym(ga, p)},{_sym(gb, p)}}}"
    idx = [_chain_index(g, q, k) for g, (q, k) in zip(sig, fam.components)]
    return "A_{" + ",".join(map(str, idx)) + "}"


# ---------------------------------------------------------------------------
# published class tables: label -> (cardinality, degree or None)


def _p_table(p):
    return {"A_{1,0}": (p - 1, 0)}


def _p2_table(p):
    D = p * (p * p - 1)
    rows = {
        "A_{1,0}": (p * (p - 1), D),
        "A_{p,0}": (p - 1, 0),
        "A_{0,p}": (p * (p - 1), D),
    }
    for l in range(1, p):
        rows[f"A_{{1,{_sym(l * p, p)}}}"] = (p * (p - 1), D)
    return rows


def _p3_table(p):
    rows = {
        "A_{1,0}": (p**2 * (p - 1), p**3 * (p**2 - 1)),
        "A_{p^2,0}": (p - 1, None),
        "A_{p,0}": (p * (p - 1), p**2 * (p - 1)),
        "A_{0,p^2}": (p * (p - 1), p**2 * (p**2 - 1)),
        "A_{0,p}": (p**3 * (p - 1), p * (p - 1) * (p**3 + p - 1)),
    }
    for l in range(1, p):
        rows[f"A_{{1,{_sym(l * p, p)}}}"] = (p**3 * (p - 1), 2 * p**3 * (p - 1))
        rows[f"A_{{1,{_sym(l * p * p, p)}}}"] = (
            p**2 * (p - 1),
            p**2 * (p - 1) * (p**2 + 2),
        )
        rows[f"A_{{p,{_sym(l * p * p, p)}}}"] = (
            p * (p - 1),
            2 * p * (p - 1) * (p**2 + 1),
        )
    return rows


def _pq_table(p, q):
    return {
        "A_{1,2}": (q - 1, p * p - 1),
        "A_{2,1}": (p - 1, q * q - 1),
        "A_{1,3}": (q * (q - 1), q * (p - 1) ** 2),
        "A_{3,1}": (p * (p - 1), p * (q - 1) ** 2),
        "A_{2,2}": ((p - 1) * (q - 1), p * (p - 1) + q * (q - 1)),
        "A_{2,3}": (q * (p - 1) * (q - 1), p * q * (p - 1)),
        "A_{3,2}": (p * (p - 1) * (q - 1), p * q * (q - 1)),
    }


def _pqr_table(p, q, r):
    big = p*p*q*q + p*p*r*r + q*q*r*r - p*p - q*q - r*r + 1 - 2*p*q*r
    t = {
        (1, 1, 2): (r - 1, p*p*q*q - 1),
        (1, 1, 3): (r * (r - 1), r * (p*p*q*q - 1)),
        (1, 2, 1): (q - 1, p*p*r*r - 1),
        (1, 2, 2): ((q - 1) * (r - 1), (p*p - 1) * (q*q + r - 1)),
        (1, 2, 3): (r * (q - 1) * (r - 1), r * (p*p - 1) * (q*q + r - 1)),
        (1, 3, 1): (q * (q - 1), q * (p*p*r*r - 1)),
        (1, 3, 2): (q * (q - 1) * (r - 1), q * (p*p - 1) * (q*q + r - 1)),
        (1, 3, 3): (q*r * (q - 1) * (r - 1), q*r * (p*p - 1) * (q*q + r - 1)),
        (2, 1, 1): (p - 1, q*q*r*r - 1),
        (2, 1, 2): ((p - 1) * (r - 1), (q*q - 1) * (p*p + r - 1)),
        (2, 1, 3): (r * (p - 1) * (r - 1), r * (q*q - 1) * (p*p + r - 1)),
        (2, 2, 1): ((p - 1) * (q - 1), p*p*q*q - 1),
        (2, 2, 2): ((p - 1) * (q - 1) * (r - 1), big),
        (2, 2, 3): (r * (p - 1) * (q - 1) * (r - 1), r * big),
        (2, 3, 1): (q * (p - 1) * (q - 1), q * (p*p*q*q - 1)),
        (2, 3, 2): (q * (p - 1) * (q - 1) * (r - 1), q * big),
        (2, 3, 3): (q*r * (p - 1) * (q - 1) * (r - 1), p*q*r * (p - 1) * (q + r - 1)),
        (3, 1, 1): (p * (p - 1), p * (q*q*r*r - 1)),
        (3, 1, 2): (p * (p - 1) * (r - 1), p * (q*q - 1) * (p*p + r - 1)),
        (3, 1, 3): (p*r * (p - 1) * (r - 1), p*r * (q*q - 1) * (p*p + r - 1)),
        (3, 2, 1): (p * (p - 1) * (q - 1), p * (p*p*q*q - 1)),
        (3, 2, 2): (p * (p - 1) * (q - 1) * (r - 1), p * big),
        (3, 2, 3): (p*r * (p - 1) * (q - 1) * (r - 1), p*r * big),
        (3, 3, 1): (p*q * (p - 1) * (q - 1), p*q * (p*p*q*q - 1)),
        (3, 3, 2): (p*q * (p - 1) * (q - 1) * (r - 1), p*q*r * (p + q - 1) * (r - 1)),
    }
    return {"A_{%d,%d,%d}" % key: val for key, val in t.items()}


def _p2q_local_sizes(p, q):
    """Cardinalities of the local classes I_1..I_{p+4} and J_1..J_3."""
    I = {1: 1, 2: p - 1}
    for i in range(3, p + 4):
        I[i] = p * (p - 1)
    I[p + 4] = p**3 * (p - 1)
    J = {1: 1, 2: q - 1, 3: q * (q - 1)}
    return I, J


def _p2q_table(p, q):
    I, J = _p2q_local_sizes(p, q)
    D = {
        (1, 2): p**4 - 1,
        (2, 3): p * q * (p**3 - 1),
        (1, 3): (p - 1) * q * (p**3 + p**2 + p + 1),
        (p + 4, 2): p**3 * q * (q - 1),
        (p + 4, 1): p**3 * (q * q - 1),
        (2, 2): p**4 - p + q * q - q,
        (2, 1): q * q - 1,
    }
    for k in range(3, p + 4):
        D[(k, 1)] = p * (p*p*q*q - p*q*q + q*q - 1)
        D[(k, 2)] = p * (p*p*q*q - p*q*q + p**3 - p*p + q*q - q)
        D[(k, 3)] = p*p*q * (p - 1) * (p + q)
    rows = {}
    for (i, j) in p2q_classes(p):
        rows[f"A_{{{i},{j}}}"] = (I[i] * J[j], D.get((i, j)))
    return rows


def p2q_classes(p) -> list[tuple[int, int]]:
    """Index pairs (i, j) of the nonzero non-unit classes for n = p^2 q."""
    pairs = itertools.product(range(1, p + 5), range(1, 4))
    return [ij for ij in pairs if ij not in ((1, 1), (p + 4, 3))]


def published_table(fam: Family) -> dict[str, tuple[int, int | None]]:
    P = fam.params
    return {
        "p": lambda: _p_table(P["p"]),
        "p2": lambda: _p2_table(P["p"]),
        "p3": lambda: _p3_table(P["p"]),
        "pq": lambda: _pq_table(P["p"], P["q"]),
        "pqr": lambda: _pqr_table(P["p"], P["q"], P["r"]),
        "p2q": lambda: _p2q_table(P["p"], P["q"]),
    }[fam.name]()


# ---------------------------------------------------------------------------
# published spectra: formula families plus a quotient matrix


@dataclass(frozen=True)
class PublishedSpectrum:
    families: tuple[tuple[float, int], ...]  # (eigenvalue, multiplicity), zeros dropped
    quotient: np.ndarray | None  # vertex-weighted Laplacian, or None


def _families(entries, fam: Family):
    out = []
    for value, mult in entries:
        if mult < 0:
            raise DegenerateParameterError(
                f"{fam}: published multiplicity evaluates to {mult}; "
                "use the structural spectrum instead"
            )
        if mult:
            out.append((float(value), int(mult)))
    return tuple(out)


def _weighted_laplacian(weights, adjacency) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    adj = np.asarray(adjacency, dtype=bool)
    L = np.where(adj, -w[None, :], 0.0)
    np.fill_diagonal(L, adj @ w)
    return L


def _pq_matrix(p, q) -> np.ndarray:
    return np.array(
        [
            [p*p - 1, -(p - 1), 0, 0, -p * (p - 1), 0, 0],
            [-(q - 1), q*q - 1, 0, -q * (q - 1), 0, 0, 0],
            [0, 0, q * (q - 1) + p * (p - 1), -q * (q - 1), -p * (p - 1), 0, 0],
            [0, -(p - 1), -(p - 1) * (q - 1), q * (p*p - 1), -p * (p - 1), 0, -p * (p - 1) * (q - 1)],
            [-(q - 1), 0, -(p - 1) * (q - 1), -q * (q - 1), p * (q*q - 1), -q * (p - 1) * (q - 1), 0],
            [0, 0, 0, 0, -p * (p - 1), p*q * (p - 1), -p * (p - 1) * (q - 1)],
            [0, 0, 0, -q * (q - 1), 0, -q * (p - 1) * (q - 1), p*q * (q - 1)],
        ],
        dtype=float,
    )


def _p3_matrix(p) -> np.ndarray:
    a = p**2 * (p - 1)
    b = p**3 * (p - 1) ** 2
    c = p**2 * (p - 1) ** 2
    d = p * (p - 1) ** 2
    e = p * (p - 1)
    f = p**3 * (p - 1)
    M = np.array(
        [
            [0, -b, -c, -d, 0, -e, -f],
            [-a, 0, -c, 0, 0, 0, -f],
            [-a, -b, 0, -d, 0, -e, -f],
            [-a, 0, -c, 0, -e, -e, -f],
            [0, 0, 0, -d, 0, -e, 0],
            [-a, 0, -c, -d, -e, 0, 0],
            [-a, -b, -c, -d, 0, 0, 0],
        ],
        dtype=float,
    )
    # diagonal left symbolic as D_0..D_6; filled as neighbour-weight sums
    np.fill_diagonal(M, -M.sum(axis=1))
    return M


def _pqr_quotient(p, q, r) -> np.ndarray:
    table = _pqr_table(p, q, r)
    keys = [k for k in itertools.product((1, 2, 3), repeat=3) if k not in ((1, 1, 1), (3, 3, 3))]
    w = [table["A_{%d,%d,%d}" % k][0] for k in keys]
    adj = np.zeros((25, 25), dtype=bool)
    for s, x in enumerate(keys):
        for t, y in enumerate(keys):
            lt = any(xi < yi for xi, yi in zip(x, y))
            gt = any(xi > yi for xi, yi in zip(x, y))
            adj[s, t] = lt and gt
    return _weighted_laplacian(w, adj)


def _p2q_quotient(p, q) -> np.ndarray:
    I, J = _p2q_local_sizes(p, q)
    keys = p2q_classes(p)
    w = [I[i] * J[j] for i, j in keys]
    mid = range(3, p + 4)
    k = len(keys)
    adj = np.zeros((k, k), dtype=bool)
    for s, (i1, j1) in enumerate(keys):
        for t, (i2, j2) in enumerate(keys):
            cond1 = i1 != i2 and i1 in mid and i2 in mid
            cond2 = (i1 < i2 and j1 > j2) or (i2 < i1 and j2 > j1)
            adj[s, t] = cond1 or cond2
    return _weighted_laplacian(w, adj)


def published_spectrum(fam: Family) -> PublishedSpectrum:
    P = fam.params
    p = P["p"]
    if fam.name == "p":
        return PublishedSpectrum(_families([(0, p - 1)], fam), None)
    if fam.name == "p2":
        if p == 2:
            raise DegenerateParameterError(
                "the p^2 closed form assumes an odd prime; use the structural spectrum"
            )
        return PublishedSpectrum(
            _families([(0, p), (p * (p*p - 1), p**3 - p - 1)], fam), None
        )
    if fam.name == "pq":
        q = P["q"]
        entries = [
            (p*p - 1, q - 2),
            (q*q - 1, p - 2),
            (p * (p - 1) + q * (q - 1), (p - 1) * (q - 1) - 1),
            (q * (p - 1) ** 2, q * (q - 1) - 1),
            (p * (q - 1) ** 2, p * (p - 1) - 1),
            (p*q * (p - 1), q * (p - 1) * (q - 1) - 1),
            (p*q * (q - 1), p * (p - 1) * (q - 1) - 1),
        ]
        return PublishedSpectrum(_families(entries, fam), _pq_matrix(p, q))
    if fam.name == "pqr":
        q, r = P["q"], P["r"]
        entries = [(deg, card - 1) for card, deg in _pqr_table(p, q, r).values()]
        return PublishedSpectrum(_families(entries, fam), _pqr_quotient(p, q, r))
    if fam.name == "p3":
        entries = [
            (0, p - 1),
            (p**3 * (p*p - 1), p*p * (p - 1) - 1),
            (p**4 * (p - 1), (p - 1) * (p**3 * (p - 1) - 1)),
            (2 * p**3 * (p - 1), p - 3),
            ((p - 1) * (2 * p**3 + 1), 1),
            (p**3 * (p*p - 1), (p - 1) * (p*p * (p - 1) - 1)),
            (p*p * (p - 1) * (p*p + 2), p - 3),
            ((p - 1) * (p*p + 1) ** 2, 1),
            (p*p * (p - 1) * (2 * p + 1), (p - 1) * (p * (p - 1) - 1)),
            (2 * p * (p - 1) * (p*p + 1), p - 3),
            ((p - 1) * (p**3 + 2 * p + 1), 1),
            (p * (p - 1) * (p**3 + p - 1), p**3 * (p - 1) - 1),
            (p*p * (p*p - 1), p * (p - 1) - 1),
            (p*p * (p - 1), p * (p - 1) - 1),
        ]
        return PublishedSpectrum(_families(entries, fam), _p3_matrix(p))
    if fam.name == "p2q":
        q = P["q"]
        entries = [
            (p**4 - 1, q - 2),
            (p * (p*p*q*q - p*q*q + q*q - 1), p * (p - 1) - 1),
            (p * (p*p*q*q - p*q*q + p**3 - p*p + q*q - q), p * (p - 1) * (q - 1) - 1),
            (p*p*q * (p - 1) * (p + q), p*q * (p - 1) * (q - 1) - 1),
            (p*q * (p**3 - 1), q * (p - 1) * (q - 1) - 1),
            (q * (p - 1) * (p**3 + p * (q - 1) + 1), q * (q - 1) - 1),
            (p**3 * q * (q - 1), p**3 * (p - 1) * (q - 1) - 1),
            (p**3 * (q*q - 1), p**3 * (p - 1) - 1),
            (p**4 - p + q*q - q, (p - 1) * (q - 1) - 1),
            (q*q - 1, p - 2),
        ]
        return PublishedSpectrum(_families(entries, fam), _p2q_quotient(p, q))
    raise UnsupportedFamilyError(fam.name)


def published_record_count(fam: Family) -> int:
    p = fam.params["p"]
    return {"p": 1, "p2": p + 2, "p3": 3 * p + 2, "pq": 7, "pqr": 25, "p2q": 3 * p + 10}[
        fam.name
    ]


def family_vertex_count(fam: Family) -> int:
    """Vertex-count formulas as published for each family."""
    P = fam.params
    p = P["p"]
    if fam.name == "p":
        return p - 1
    if fam.name == "p2":
        return p**3 - 1
    if fam.name == "p3":
        return p**5 - 1
    if fam.name == "pq":
        q = P["q"]
        return p * q * (p + q - 1) - 1
    if fam.name == "pqr":
        q, r = P["q"], P["r"]
        return p * q * r * (p + q + r - 1) - 1
    q = P["q"]
    n = p * p * q
    phi = p * (p - 1) * (q - 1)
    return n * (n - phi) - 1

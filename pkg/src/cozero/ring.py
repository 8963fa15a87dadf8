"""Arithmetic in R = Z_n[x]/(x^2).

Elements are pairs (a, b) standing for a*x + b.  For dense tables they are
indexed as ``a * n + b``, which makes index order coincide with lexicographic
order on (a, b).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

DEFAULT_MAX_N = 256
MAX_N_ENV = "COZERO_MAX_N"


class EnumerationCapError(ValueError):
    """Raised when a modulus is too large for full enumeration."""


class PolyElement(NamedTuple):
    a: int  # coefficient of x
    b: int  # constant term

    def index(self, n: int) -> int:
        return self.a * n + self.b

    def __str__(self) -> str:
        return format_element(self.a, self.b)


def format_element(a: int, b: int) -> str:
    if a == 0:
        return str(b)
    xs = "x" if a == 1 else f"{a}x"
    return xs if b == 0 else f"{xs}+{b}"


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def default_max_n() -> int:
    raw = os.environ.get(MAX_N_ENV)
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{MAX_N_ENV} must be an integer, got {raw!r}") from exc


@dataclass(frozen=True)
class RingContext:
    n: int
    factorization: tuple[tuple[int, int], ...] = field(init=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "factorization", factorize(self.n))

    @property
    def element_count(self) -> int:
        return self.n * self.n

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factorization)

    @property
    def is_prime_power(self) -> bool:
        return len(self.factorization) == 1

    def element(self, a: int, b: int) -> PolyElement:
        return PolyElement(a % self.n, b % self.n)

    def from_index(self, i: int) -> PolyElement:
        a, b = divmod(int(i), self.n)
        return PolyElement(a, b)

    def check_cap(self, max_n: int | None = None) -> None:
        cap = default_max_n() if max_n is None else max_n
        if self.n > cap:
            raise EnumerationCapError(
                f"n={self.n} exceeds the enumeration cap of {cap} "
                f"(raise it with --max-n or {MAX_N_ENV})"
            )

    def unit_count(self) -> int:
        # a*x + b is a unit iff b is: n * phi(n) of them
        phi = self.n
        for p, _ in self.factorization:
            phi = phi // p * (p - 1)
        return self.n * phi

    def vertex_count(self) -> int:
        return self.element_count - self.unit_count() - 1


def _check(ctx: RingContext, e: PolyElement) -> None:
    if not (0 <= e.a < ctx.n and 0 <= e.b < ctx.n):
        raise ValueError(f"{tuple(e)} is not a valid element of Z_{ctx.n}[x]/(x^2)")


def mul(ctx: RingContext, e1: PolyElement, e2: PolyElement) -> PolyElement:
    n = ctx.n
    return PolyElement((e1.a * e2.b + e2.a * e1.b) % n, (e1.b * e2.b) % n)


def is_unit(ctx: RingContext, e: PolyElement) -> bool:
    return math.gcd(e.b, ctx.n) == 1


def element_arrays(ctx: RingContext) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient arrays (a, b) of all n^2 elements in index order."""
    return np.divmod(np.arange(ctx.element_count, dtype=np.int64), ctx.n)


def nonunit_mask(ctx: RingContext) -> np.ndarray:
    _, b = element_arrays(ctx)
    return np.gcd(b, ctx.n) != 1


def vertex_indices(ctx: RingContext) -> np.ndarray:
    """Indices of the nonzero non-units, ascending."""
    mask = nonunit_mask(ctx)
    mask[0] = False
    return np.flatnonzero(mask)


def ideal_masks(ctx: RingContext, indices, chunk: int = 256) -> np.ndarray:
    """Boolean membership table: row i marks the elements of R * e_i.

    Computed by brute force, multiplying each e_i by every ring element.
    """
    n = ctx.n
    indices = np.asarray(indices, dtype=np.int64).reshape(-1)
    ra, rb = element_arrays(ctx)
    out = np.zeros((len(indices), ctx.element_count), dtype=bool)
    for start in range(0, len(indices), chunk):
        idx = indices[start : start + chunk]
        a, b = np.divmod(idx, n)
        prod_a = (ra[None, :] * b[:, None] + rb[None, :] * a[:, None]) % n
        prod_b = (rb[None, :] * b[:, None]) % n
        rows = np.arange(len(idx))[:, None]
        out[start + rows, prod_a * n + prod_b] = True
    return out


def principal_ideal(ctx: RingContext, e: PolyElement) -> frozenset[PolyElement]:
    _check(ctx, e)
    row = ideal_masks(ctx, [e.index(ctx.n)])[0]
    return frozenset(ctx.from_index(i) for i in np.flatnonzero(row))


def in_ideal(ctx: RingContext, y: PolyElement, x: PolyElement) -> bool:
    """True iff y lies in the principal ideal generated by x.

    Solves (c*x' + d)(a1*x + b1) = a2*x + b2, i.e. d*b1 = b2 and
    c*b1 + d*a1 = a2 (mod n), without materializing the ideal.
    """
    n = ctx.n
    a1, b1 = x
    a2, b2 = y
    g = math.gcd(b1, n)
    if b2 % g:
        return False
    # d = d0 + t*(n/g); need g | a2 - d*a1 for some t
    m = n // g
    if g == 1:
        return True
    d0 = (b2 // g) * pow(b1 // g, -1, m) % m if m > 1 else 0
    h = math.gcd(m * a1, g)
    return (a2 - d0 * a1) % h == 0


def crt_split(ctx: RingContext, e: PolyElement) -> list[PolyElement]:
    return [PolyElement(e.a % p**k, e.b % p**k) for p, k in ctx.factorization]


def crt_join(ctx: RingContext, parts) -> PolyElement:
    """Inverse of :func:`crt_split`."""
    n = ctx.n
    a = b = 0
    for (p, k), part in zip(ctx.factorization, parts):
        q = p**k
        m = n // q
        coef = m * pow(m, -1, q)
        a += part[0] * coef
        b += part[1] * coef
    return PolyElement(a % n, b % n)

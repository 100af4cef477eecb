"""Symmetric Cartan matrices: validation, catalogue, positive roots, Smith form.

All linear algebra here is exact integer arithmetic; positive definiteness
is decided by leading principal minors and the positive-root closure only
runs on positive definite input (otherwise it need not terminate).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass


@dataclass(frozen=True)
class CartanValidity:
    symmetric: bool
    diagonal_ok: bool
    offdiagonal_ok: bool
    positive_definite: bool

    @property
    def is_valid(self) -> bool:
        return self.symmetric and self.diagonal_ok and self.offdiagonal_ok

    @property
    def is_ade(self) -> bool:
        return self.is_valid and self.positive_definite

    def as_dict(self) -> dict:
        return {
            "symmetric": self.symmetric,
            "diagonal_ok": self.diagonal_ok,
            "offdiagonal_ok": self.offdiagonal_ok,
            "positive_definite": self.positive_definite,
            "valid": self.is_valid,
            "ade": self.is_ade,
        }


class CartanMatrix:
    """Square integer matrix with the conventions: diagonal 2, off-diagonal in {0, -1}."""

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("Cartan matrix must be square and nonempty")
        self.entries = rows
        self.t = len(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i][j] for i in range(self.t))

    def validate(self) -> CartanValidity:
        sym = all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.t)
            for j in range(self.t)
        )
        diag = all(self.entries[i][i] == 2 for i in range(self.t))
        off = all(
            self.entries[i][j] in (0, -1)
            for i in range(self.t)
            for j in range(self.t)
            if i != j
        )
        posdef = sym and all(m > 0 for m in self.leading_principal_minors())
        return CartanValidity(sym, diag, off, posdef)

    def is_valid(self) -> bool:
        return self.validate().is_valid

    def is_ade(self) -> bool:
        return self.validate().is_ade

    def leading_principal_minors(self) -> list[int]:
        return [
            int_determinant([r[: k + 1] for r in self.entries[: k + 1]])
            for k in range(self.t)
        ]

    def determinant(self) -> int:
        return int_determinant(self.entries)

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __repr__(self):
        return f"CartanMatrix({self.as_lists()})"

    def __eq__(self, other):
        return isinstance(other, CartanMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)


def int_determinant(rows) -> int:
    """Fraction-free (Bareiss) determinant over the integers."""
    m = [list(r) for r in rows]
    size = len(m)
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for i in range(k + 1, size):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[size - 1][size - 1]


_DYNKIN_EDGES = {
    "E6": [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    "E7": [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
    "E8": [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
}


def _matrix_from_edges(t: int, edges) -> CartanMatrix:
    m = [[2 if i == j else 0 for j in range(t)] for i in range(t)]
    for a, b in edges:
        m[a - 1][b - 1] = -1
        m[b - 1][a - 1] = -1
    return CartanMatrix(m)


def _single_named(name: str) -> CartanMatrix:
    match = re.fullmatch(r"([ADE])(\d+)", name)
    if not match:
        raise ValueError(f"unknown Cartan type {name!r}")
    letter, t = match.group(1), int(match.group(2))
    if letter == "A":
        if t < 1:
            raise ValueError("type A requires t >= 1")
        return _matrix_from_edges(t, [(i, i + 1) for i in range(1, t)])
    if letter == "D":
        if t < 4:
            raise ValueError("type D requires t >= 4")
        edges = [(i, i + 1) for i in range(1, t - 1)] + [(t - 2, t)]
        return _matrix_from_edges(t, edges)
    if name in _DYNKIN_EDGES:
        return _matrix_from_edges(t, _DYNKIN_EDGES[name])
    raise ValueError(f"unknown Cartan type {name!r}")


def named_cartan(name: str) -> CartanMatrix:
    """Catalogue lookup: A<t>, D<t>, E6/E7/E8, and x-products like A1xA1."""
    parts = name.strip().split("x")
    blocks = [_single_named(p) for p in parts]
    t = sum(b.t for b in blocks)
    m = [[0] * t for _ in range(t)]
    off = 0
    for b in blocks:
        for i in range(b.t):
            for j in range(b.t):
                m[off + i][off + j] = b.entries[i][j]
        off += b.t
    return CartanMatrix(m)


@dataclass(frozen=True)
class RootSystemData:
    positive_roots: tuple[tuple[int, ...], ...]
    count: int
    snf_diagonal: tuple[int, ...]

    @property
    def heights(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.positive_roots)


def _form_value(C: CartanMatrix, v: tuple[int, ...]) -> int:
    t = C.t
    return sum(v[i] * C.entries[i][j] * v[j] for i in range(t) for j in range(t))


def positive_roots(C: CartanMatrix) -> tuple[tuple[int, ...], ...]:
    """Closure algorithm: grow simple roots by unit vectors while the
    quadratic form stays 2.  Requires positive definite input."""
    validity = C.validate()
    if not validity.is_ade:
        raise ValueError("positive-root closure requires a valid positive definite matrix")
    t = C.t
    simples = [tuple(1 if j == i else 0 for j in range(t)) for i in range(t)]
    roots = set(simples)
    frontier = list(simples)
    while frontier:
        beta = frontier.pop()
        for i in range(t):
            gamma = tuple(beta[j] + (1 if j == i else 0) for j in range(t))
            if gamma not in roots and _form_value(C, gamma) == 2:
                roots.add(gamma)
                frontier.append(gamma)
    return tuple(sorted(roots))


def smith_invariant_factors(rows) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of an integer matrix (zeros last)."""
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    k = 0
    size = min(nrows, ncols)
    while k < size:
        # locate a nonzero entry of minimal magnitude in the trailing block
        pivot = None
        best = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                v = abs(m[i][j])
                if v and (best is None or v < best):
                    best, pivot = v, (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[k], m[pi] = m[pi], m[k]
        for r in m:
            r[k], r[pj] = r[pj], r[k]
        while True:
            # clear column k by row operations, restarting when a smaller
            # remainder appears (gcd descent)
            restart = False
            for i in range(k + 1, nrows):
                if m[i][k]:
                    qv = m[i][k] // m[k][k]
                    for j in range(ncols):
                        m[i][j] -= qv * m[k][j]
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        restart = True
                        break
            if restart:
                continue
            for j in range(k + 1, ncols):
                if m[k][j]:
                    qv = m[k][j] // m[k][k]
                    for r in m:
                        r[j] -= qv * r[k]
                    if m[k][j]:
                        for r in m:
                            r[k], r[j] = r[j], r[k]
                        restart = True
                        break
            if restart:
                continue
            break
        # divisibility fix: the pivot must divide every remaining entry
        bad = None
        for i in range(k + 1, nrows):
            for j in range(k + 1, ncols):
                if m[i][j] % m[k][k]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for j in range(ncols):
                m[k][j] += m[bad][j]
            continue
        k += 1
    diag = [abs(m[i][i]) for i in range(k)]
    diag += [0] * (size - k)
    return tuple(diag)


def root_system(C: CartanMatrix) -> RootSystemData:
    roots = positive_roots(C)
    return RootSystemData(roots, len(roots), smith_invariant_factors(C.entries))


def coker_cardinality(C: CartanMatrix, n: int) -> int:
    """Order of the cokernel of C acting on (Z/nZ)^t: product of gcd(d_i, n)."""
    if n < 1:
        raise ValueError("n must be positive")
    if not C.is_valid():
        raise ValueError("matrix fails Cartan validity")
    out = 1
    for d in smith_invariant_factors(C.entries):
        out *= math.gcd(d, n) if d else n
    return out

"""Exact sparse linear algebra over a :class:`~ainfty.field.Field`.

Vectors are dicts ``{column: scalar}`` with integer columns.  Pivots are
always the smallest available column, which makes every reduced echelon
form (and every basis derived from it) deterministic.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .field import Field, clean


def _scale(F: Field, v: dict, c) -> dict:
    return {k: F(x * c) for k, x in v.items()}


def _sub_multiple(F: Field, v: dict, c, w: dict) -> dict:
    """v - c*w, normalized."""
    out = dict(v)
    for k, x in w.items():
        y = F(out.get(k, 0) - c * x)
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace."""

    def __init__(self, F: Field):
        self.F = F
        self.rows: dict[int, dict] = {}  # pivot column -> row (pivot entry 1)

    def reduce(self, v: dict) -> dict:
        F = self.F
        v = clean(F, v)
        # rows are fully reduced, so one pass clears every pivot column
        for piv in [k for k in v if k in self.rows]:
            v = _sub_multiple(F, v, v[piv], self.rows[piv])
        return v

    def add(self, v: dict) -> bool:
        """Insert v; return False if it was already in the span."""
        F = self.F
        v = self.reduce(v)
        if not v:
            return False
        piv = min(v)
        v = _scale(F, v, F.inv(v[piv]))
        for p, row in list(self.rows.items()):
            c = row.get(piv)
            if c:
                self.rows[p] = _sub_multiple(F, row, c, v)
        self.rows[piv] = v
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)


def rref(F: Field, rows: Iterable[dict]) -> Echelon:
    e = Echelon(F)
    for r in rows:
        e.add(r)
    return e


def rank(F: Field, rows: Iterable[dict]) -> int:
    return rref(F, rows).rank


def nullspace(F: Field, rows: Sequence[dict], ncols: int) -> list[dict]:
    """Basis of {x : row . x = 0 for all rows}, one vector per free column."""
    e = rref(F, rows)
    pivots = set(e.rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        x = {free: F.one}
        for p, row in e.rows.items():
            c = row.get(free)
            if c:
                x[p] = F(-c)
        basis.append(x)
    return basis


def solve(F: Field, rows: Sequence[dict], rhs: Sequence, ncols: int) -> dict | None:
    """One solution x of rows . x = rhs (free variables zero), or None."""
    aug = ncols
    e = Echelon(F)
    for r, b in zip(rows, rhs):
        v = dict(r)
        if b:
            v[aug] = F(b)
        e.add(v)
    if aug in e.rows:
        return None
    x = {}
    for p, row in e.rows.items():
        c = row.get(aug)
        if c:
            x[p] = F(c)
    return x


def dense_to_rows(M: Sequence[Sequence]) -> list[dict]:
    return [{j: c for j, c in enumerate(row) if c} for row in M]


def mat_mul(F: Field, A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    n = len(B[0]) if B else 0
    return [[F(sum(a * B[k][j] for k, a in enumerate(row) if a)) for j in range(n)] for row in A]


def identity(F: Field, n: int) -> list[list]:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def inverse(F: Field, M: Sequence[Sequence]) -> list[list] | None:
    n = len(M)
    rows = [{**{j: c for j, c in enumerate(M[i]) if c}, n + i: F.one} for i in range(n)]
    e = rref(F, rows)
    if [p for p in e.pivots if p < n] != list(range(n)):
        return None
    return [[e.rows[i].get(n + j, F.zero) for j in range(n)] for i in range(n)]

"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping a hashable, orderable coordinate to a nonzero
``Fraction``.  Pivots are taken at the largest coordinate under ``key``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Optional


def _axpy(target: dict, a, src: dict) -> None:
    for k, v in src.items():
        nv = target.get(k, 0) + a * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace."""

    def __init__(self, key: Optional[Callable] = None):
        self.key = key or (lambda c: c)
        self.rows: dict[Hashable, dict] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def pivot(self, v: dict):
        return max(v, key=self.key)

    def reduce(self, v: dict) -> dict:
        """Remainder of ``v`` after eliminating every pivot coordinate."""
        w = {k: Fraction(c) for k, c in v.items() if c}
        while True:
            hits = [k for k in w if k in self.rows]
            if not hits:
                return w
            k = max(hits, key=self.key)
            _axpy(w, -w[k], self.rows[k])

    def add(self, v: dict) -> bool:
        w = self.reduce(v)
        if not w:
            return False
        p = self.pivot(w)
        c = w[p]
        w = {k: x / c for k, x in w.items()}
        # keep rows fully reduced against the new pivot
        for q, row in self.rows.items():
            if p in row:
                _axpy(row, -row[p], w)
        self.rows[p] = w
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def pivots(self) -> list:
        return sorted(self.rows, key=self.key)


def rank(rows: Iterable[dict], key: Optional[Callable] = None) -> int:
    e = Echelon(key)
    for r in rows:
        e.add(r)
    return len(e)


def same_span(a: Iterable[dict], b: Iterable[dict], key: Optional[Callable] = None) -> bool:
    ea, eb = Echelon(key), Echelon(key)
    for r in a:
        ea.add(r)
    for r in b:
        eb.add(r)
    if len(ea) != len(eb):
        return False
    return all(eb.contains(r) for r in ea.rows.values())


def kernel(rows: list[dict], columns: list, key: Optional[Callable] = None) -> list[dict]:
    """Basis of ``{x : row . x = 0 for every row}`` with coordinates in ``columns``."""
    e = Echelon(key)
    for r in rows:
        e.add(r)
    free = [c for c in columns if c not in e.rows]
    basis = []
    for f in free:
        vec = {f: Fraction(1)}
        for p, row in e.rows.items():
            c = row.get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis

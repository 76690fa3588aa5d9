"""Ordered graphs and the combinatorics of their graphic matroids.

Vertices are stored by position in the vertex order; an edge is the pair
``(tail, head)`` of positions with ``tail < head``.  Edges are kept sorted by
``(head, tail)``, which is the induced edge order, so an edge is identified
with its index in :attr:`OrderedGraph.edges`.  Edge sets are frozensets of
those indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .caps import default_cap
from .errors import InvalidGraph, NotChordal, ParseError, SizeLimitExceeded


def _natural_key(label: str):
    return (0, int(label), "") if label.lstrip("-").isdigit() else (1, 0, label)


@dataclass(frozen=True)
class OrderedGraph:
    labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise InvalidGraph("duplicate vertex labels")
        seen = set()
        for t, h in self.edges:
            if t == h:
                raise InvalidGraph(f"loop at vertex {self.labels[t]}")
            if not (0 <= t < h < len(self.labels)):
                raise InvalidGraph("edge must be stored as (tail, head) with tail < head")
            if (t, h) in seen:
                raise InvalidGraph(f"duplicate edge {self.labels[t]} {self.labels[h]}")
            seen.add((t, h))
        if list(self.edges) != sorted(self.edges, key=lambda e: (e[1], e[0])):
            raise InvalidGraph("edges must be sorted in the induced edge order")
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.edges)})

    @classmethod
    def from_edges(cls, labels: Sequence, edges: Iterable[tuple]) -> "OrderedGraph":
        """Build from vertex labels (in order) and label pairs."""
        labels = tuple(str(v) for v in labels)
        pos = {v: i for i, v in enumerate(labels)}
        pairs = []
        for u, v in edges:
            u, v = str(u), str(v)
            if u not in pos or v not in pos:
                raise InvalidGraph(f"edge {u} {v} uses an undeclared vertex")
            a, b = pos[u], pos[v]
            if a == b:
                raise InvalidGraph(f"loop at vertex {u}")
            pair = (min(a, b), max(a, b))
            if pair in pairs:
                raise InvalidGraph(f"duplicate edge {u} {v}")
            pairs.append(pair)
        pairs.sort(key=lambda e: (e[1], e[0]))
        return cls(labels, tuple(pairs))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def head(self, e: int) -> int:
        return self.edges[e][1]

    def tail(self, e: int) -> int:
        return self.edges[e][0]

    def edge_index(self, u: int, v: int) -> Optional[int]:
        return self._index.get((min(u, v), max(u, v)))

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        adj = [set() for _ in self.labels]
        for t, h in self.edges:
            adj[t].add(h)
            adj[h].add(t)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def _short_labels(self) -> bool:
        return all(len(v) == 1 for v in self.labels)

    def edge_label(self, e: int) -> str:
        t, h = self.edges[e]
        sep = "" if self._short_labels else "_"
        return f"{self.labels[t]}{sep}{self.labels[h]}"

    def with_order(self, order: Sequence[int]) -> "OrderedGraph":
        """Same graph with vertices reordered (``order`` lists old positions)."""
        return OrderedGraph.from_edges(
            [self.labels[i] for i in order],
            [(self.labels[t], self.labels[h]) for t, h in self.edges],
        )

    def is_perfect_elimination_order(self) -> bool:
        return _is_peo(self, range(self.n))


def parse_graph(text: str) -> OrderedGraph:
    """Parse the line-oriented graph format.

    ``vertices: a b c`` fixes the order (optional; otherwise labels are sorted,
    numerically when they are all integers); ``edge: a b`` adds an edge.
    """
    declared = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        key = key.strip().lower()
        toks = rest.split()
        if key == "vertices":
            if declared is not None:
                raise ParseError(f"line {lineno}: vertices declared twice")
            declared = toks
        elif key == "edge":
            if len(toks) != 2:
                raise ParseError(f"line {lineno}: an edge needs exactly two vertices")
            edges.append((toks[0], toks[1]))
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    if declared is None:
        labels = sorted({v for e in edges for v in e}, key=_natural_key)
    else:
        labels = declared
    try:
        return OrderedGraph.from_edges(labels, edges)
    except InvalidGraph as exc:
        raise ParseError(str(exc)) from exc


def format_graph(g: OrderedGraph) -> str:
    lines = ["vertices: " + " ".join(g.labels)]
    lines += [f"edge: {g.labels[t]} {g.labels[h]}" for t, h in g.edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- chordality

def _is_peo(g: OrderedGraph, order: Iterable[int]) -> bool:
    placed: list[int] = []
    for v in order:
        earlier = [u for u in placed if u in g.adjacency[v]]
        for a, b in combinations(earlier, 2):
            if b not in g.adjacency[a]:
                return False
        placed.append(v)
    return True


def maximum_cardinality_search(g: OrderedGraph) -> list[int]:
    """Visit order of maximum cardinality search, ties to the smallest vertex."""
    weight = [0] * g.n
    visited = [False] * g.n
    order = []
    for _ in range(g.n):
        best = max((v for v in range(g.n) if not visited[v]), key=lambda v: (weight[v], -v))
        visited[best] = True
        order.append(best)
        for u in g.adjacency[best]:
            if not visited[u]:
                weight[u] += 1
    return order


def perfect_elimination_ordering(g: OrderedGraph) -> list[int]:
    """Vertex positions in an order where each vertex's earlier neighbours form a clique."""
    order = maximum_cardinality_search(g)
    if not _is_peo(g, order):
        raise NotChordal(witness=chordless_cycle(g))
    return order


def chordless_cycle(g: OrderedGraph, cap: Optional[int] = None) -> Optional[list[int]]:
    """A shortest induced cycle of length >= 4 (as a vertex list), or None."""
    best = None
    for cyc in _vertex_cycles(g, cap):
        if len(cyc) < 4 or (best is not None and len(cyc) >= len(best)):
            continue
        k = len(cyc)
        chord = any(
            cyc[j] in g.adjacency[cyc[i]]
            for i in range(k)
            for j in range(i + 2, k)
            if not (i == 0 and j == k - 1)
        )
        if not chord:
            best = cyc
    return best


def check_chordal(g: OrderedGraph) -> tuple[bool, Optional[list[int]]]:
    if _is_peo(g, maximum_cardinality_search(g)):
        return True, None
    return False, chordless_cycle(g)


# ------------------------------------------------------------------ circuits

def _vertex_cycles(g: OrderedGraph, cap: Optional[int] = None):
    """Each simple cycle once, as a vertex list starting at its smallest vertex."""
    cap = default_cap() if cap is None else cap
    count = 0
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def extend(v):
            nonlocal count
            for w in sorted(g.adjacency[v]):
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    count += 1
                    if count > cap:
                        raise SizeLimitExceeded(f"more than {cap} cycles")
                    yield list(path)
                elif w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    yield from extend(w)
                    path.pop()
                    on_path.discard(w)

        yield from extend(s)


def cycle_edges(g: OrderedGraph, cycle: Sequence[int]) -> tuple[int, ...]:
    k = len(cycle)
    return tuple(sorted(g.edge_index(cycle[i], cycle[(i + 1) % k]) for i in range(k)))


def circuits(g: OrderedGraph, cap: Optional[int] = None) -> list[tuple[int, ...]]:
    """All circuits as sorted edge tuples, ordered by (size, edges)."""
    found = {cycle_edges(g, c) for c in _vertex_cycles(g, cap)}
    return sorted(found, key=lambda c: (len(c), c))


def circuit_cycles(g: OrderedGraph, cap: Optional[int] = None) -> list[list[int]]:
    """Circuits as cyclic vertex sequences, in the same order as :func:`circuits`."""
    by_edges = {cycle_edges(g, c): c for c in _vertex_cycles(g, cap)}
    return [by_edges[k] for k in sorted(by_edges, key=lambda c: (len(c), c))]


# -------------------------------------------------------------- nbc and flats

def _mask(edges: Iterable[int]) -> int:
    m = 0
    for e in edges:
        m |= 1 << e
    return m


class _Matroid:
    """Cached broken circuits for one graph."""

    _cache: dict = {}

    @classmethod
    def broken_masks(cls, g: OrderedGraph) -> tuple[int, ...]:
        key = (g.labels, g.edges)
        if key not in cls._cache:
            masks = {_mask(c[1:]) for c in circuits(g)}
            # keep only inclusion-minimal broken circuits
            minimal = [m for m in masks if not any(o != m and o & m == o for o in masks)]
            cls._cache[key] = tuple(sorted(minimal))
        return cls._cache[key]


def broken_circuits(g: OrderedGraph) -> list[tuple[int, ...]]:
    """Inclusion-minimal broken circuits (circuit minus its smallest edge)."""
    return [tuple(e for e in range(g.m) if m >> e & 1) for m in _Matroid.broken_masks(g)]


def is_nbc(g: OrderedGraph, s: Iterable[int]) -> bool:
    ms = _mask(s)
    return not any(b & ms == b for b in _Matroid.broken_masks(g))


def nbc_sets(g: OrderedGraph, cap: Optional[int] = None) -> list[tuple[int, ...]]:
    """All nbc sets, sorted by (size, edges)."""
    cap = default_cap() if cap is None else cap
    broken = _Matroid.broken_masks(g)
    out = []

    def grow(start, current, mask):
        out.append(tuple(current))
        if len(out) > cap:
            raise SizeLimitExceeded(f"more than {cap} nbc sets")
        for e in range(start, g.m):
            m2 = mask | (1 << e)
            if any(b & m2 == b for b in broken):
                continue
            current.append(e)
            grow(e + 1, current, m2)
            current.pop()

    grow(0, [], 0)
    return sorted(out, key=lambda s: (len(s), s))


def _components(g: OrderedGraph, edges: Iterable[int]) -> list[int]:
    parent = list(range(g.n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in edges:
        a, b = find(g.tail(e)), find(g.head(e))
        if a != b:
            parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(g.n)]


def rank(g: OrderedGraph, edges: Iterable[int]) -> int:
    comp = _components(g, edges)
    return g.n - len(set(comp))


def closure(g: OrderedGraph, edges: Iterable[int]) -> frozenset:
    comp = _components(g, edges)
    return frozenset(e for e, (t, h) in enumerate(g.edges) if comp[t] == comp[h])


@dataclass(frozen=True)
class Flat:
    edges: frozenset
    rank: int

    def sorted_edges(self) -> tuple[int, ...]:
        return tuple(sorted(self.edges))


def flats(g: OrderedGraph, cap: Optional[int] = None) -> list[Flat]:
    """All flats of the graphic matroid, sorted by (rank, edges)."""
    cap = default_cap() if cap is None else cap
    start = frozenset()
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for f in frontier:
            for e in range(g.m):
                if e in f:
                    continue
                c = closure(g, f | {e})
                if c not in seen:
                    seen.add(c)
                    if len(seen) > cap:
                        raise SizeLimitExceeded(f"more than {cap} flats")
                    nxt.append(c)
        frontier = nxt
    out = [Flat(f, rank(g, f)) for f in seen]
    return sorted(out, key=lambda F: (F.rank, F.sorted_edges()))


def nbc_sets_of_flat(g: OrderedGraph, flat: Flat) -> list[tuple[int, ...]]:
    """Nbc sets contained in ``flat`` that span it."""
    out = []
    for s in combinations(flat.sorted_edges(), flat.rank):
        if rank(g, s) == flat.rank and is_nbc(g, s):
            out.append(s)
    return out


def heads_distinct(g: OrderedGraph, s: Iterable[int]) -> bool:
    hs = [g.head(e) for e in s]
    return len(hs) == len(set(hs))


# -------------------------------------------------------------- small graphs

def complete_graph(n: int) -> OrderedGraph:
    return OrderedGraph.from_edges(range(1, n + 1), combinations(range(1, n + 1), 2))


def path_graph(n: int) -> OrderedGraph:
    return OrderedGraph.from_edges(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> OrderedGraph:
    es = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return OrderedGraph.from_edges(range(1, n + 1), es)


def fan_graph(n: int) -> OrderedGraph:
    """``n`` vertices: hub ``1`` joined to every vertex of the path ``2 - ... - n``."""
    es = [(1, i) for i in range(2, n + 1)] + [(i, i + 1) for i in range(2, n)]
    return OrderedGraph.from_edges(range(1, n + 1), es)

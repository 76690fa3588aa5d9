"""Presentations of the model DGAs of graphic arrangements.

Four curve types are supported: the affine line (Orlik-Solomon algebra), the
punctured line (toric presentation), an elliptic curve, and a projective curve
of genus ``g >= 1``.  Every generator has degree one.  Variables are ordered so
that the degree-lexicographic order puts ``x_{h(e)} < y_{h(e)} < g_e`` and
``g_e < x_{h(e)+1}``; this is what makes the relations' leading terms the
expected ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .errors import GenusZeroUnsupported, ParseError
from .extalg import ExtPoly, GroebnerBasis, VarTable, bits, buchberger, normal_form
from .graphcomb import OrderedGraph, circuit_cycles, cycle_edges


@dataclass(frozen=True)
class CurveType:
    kind: str  # "rational" | "toric" | "projective"
    genus: int = 0

    def __post_init__(self):
        if self.kind not in ("rational", "toric", "projective"):
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.kind == "projective" and self.genus < 1:
            raise GenusZeroUnsupported("projective curves need genus >= 1")

    @classmethod
    def parse(cls, text: str) -> "CurveType":
        t = text.strip().lower()
        if t in ("rational", "linear"):
            return cls("rational")
        if t in ("toric", "trigonometric"):
            return cls("toric")
        if t == "elliptic":
            return cls("projective", 1)
        if t.startswith("genus:"):
            try:
                g = int(t.split(":", 1)[1])
            except ValueError as exc:
                raise ParseError(f"bad genus in {text!r}") from exc
            if g < 1:
                raise GenusZeroUnsupported("genus must be at least 1")
            return cls("projective", g)
        raise ParseError(f"unknown curve {text!r}; use rational, toric or genus:G")

    def __str__(self) -> str:
        return self.kind if self.kind != "projective" else f"genus:{self.genus}"


RATIONAL = CurveType("rational")
TORIC = CurveType("toric")


def elliptic() -> CurveType:
    return CurveType("projective", 1)


@dataclass(frozen=True)
class DgaPresentation:
    """Generators (all of degree one), relations, and the differential on generators."""

    vt: VarTable
    relations: tuple[ExtPoly, ...]
    differential: dict  # name -> ExtPoly of degree 2 (absent means zero)
    weights: dict  # name -> weight
    graph: Optional[OrderedGraph] = None
    curve: Optional[CurveType] = None
    names_style: str = "plain"  # "plain" (x_v, y_v) or "genus" (x^i_v, y^i_v)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def generators(self) -> tuple[str, ...]:
        return self.vt.names

    def d(self, name: str) -> ExtPoly:
        return self.differential.get(name, self.vt.zero())

    @property
    def gb(self) -> GroebnerBasis:
        if "gb" not in self._cache:
            self._cache["gb"] = buchberger(self.relations, self.vt)
        return self._cache["gb"]

    def has_zero_differential(self) -> bool:
        return all(p.is_zero() for p in self.differential.values())

    def monomial_weight(self, m: int) -> int:
        w = self.weights
        return sum(w[self.vt.names[i]] for i in bits(m))


def differential_raw(p: DgaPresentation, f: ExtPoly) -> ExtPoly:
    """Leibniz extension of the differential, not reduced."""
    vt = p.vt
    out = vt.zero()
    dvars = {i: p.d(n) for i, n in enumerate(vt.names)}
    for m, c in f.terms.items():
        vs = bits(m)
        for j, v in enumerate(vs):
            dv = dvars[v]
            if dv.is_zero():
                continue
            left = vt.one()
            for u in vs[:j]:
                left = left * ExtPoly._raw(vt, {1 << u: 1})
            right = vt.one()
            for u in vs[j + 1:]:
                right = right * ExtPoly._raw(vt, {1 << u: 1})
            sign = -1 if j % 2 else 1
            out = out + (left * dv * right).scale(c * sign)
    return out


def apply_differential(p: DgaPresentation, f: ExtPoly) -> ExtPoly:
    """``d f`` reduced to normal form modulo the relations."""
    return normal_form(differential_raw(p, f), p.gb)


# ------------------------------------------------------------------ helpers


def _boundary(vt: VarTable, gnames: list[str]) -> ExtPoly:
    """Sum over j of (-1)^(j-1) times the product with the j-th factor removed."""
    out = vt.zero()
    for j in range(len(gnames)):
        rest = gnames[:j] + gnames[j + 1:]
        out = out + vt.monomial(rest).scale(-1 if j % 2 else 1)
    return out


def _gname(g: OrderedGraph, e: int) -> str:
    return "g" + g.edge_label(e)


def _os_relations(g: OrderedGraph, vt: VarTable) -> list[ExtPoly]:
    out = []
    for cyc in circuit_cycles(g):
        es = cycle_edges(g, cyc)
        out.append(_boundary(vt, [_gname(g, e) for e in es]))
    return out


def _order(g: OrderedGraph, per_vertex) -> list[str]:
    names = []
    for v in range(g.n):
        names += per_vertex(v)
        names += [_gname(g, e) for e in range(g.m) if g.head(e) == v]
    return names


# ---------------------------------------------------------------- builders


def build_orlik_solomon(g: OrderedGraph) -> DgaPresentation:
    vt = VarTable(tuple(_gname(g, e) for e in range(g.m)))
    return DgaPresentation(
        vt, tuple(_os_relations(g, vt)), {}, {n: 1 for n in vt.names}, g, RATIONAL
    )


def _psi(vt: VarTable, g: OrderedGraph, e: int, prefix: str = "x") -> ExtPoly:
    return vt.var(f"{prefix}{g.labels[g.head(e)]}") - vt.var(f"{prefix}{g.labels[g.tail(e)]}")


def toric_cycle_relation(g: OrderedGraph, vt: VarTable, cycle: list[int], e0: Optional[int] = None) -> ExtPoly:
    """Cycle relation of the toric presentation for a cycle given by its vertices.

    ``e0`` defaults to the edge joining the cycle's smallest and largest vertex
    when the rest of the cycle is an increasing path (the directed case), and to
    the largest edge of the cycle otherwise.  Path edges traversed against their
    orientation have ``psi -> -psi`` and ``g -> g - psi`` substituted.

    The relation is ``prod g_{e_i} + sum_I (-1)^(|I|+m+s_I) ... g_{e0}``; with
    this sign the triangle relations of a complete graph cut out the expected
    Poincare polynomial, and every longer cycle relation lies in their ideal.
    """
    k = len(cycle)
    cyc_edges = [g.edge_index(cycle[i], cycle[(i + 1) % k]) for i in range(k)]
    if e0 is None:
        lo, hi = min(cycle), max(cycle)
        e_lohi = g.edge_index(lo, hi)
        e0 = max(cyc_edges)
        if e_lohi is not None and e_lohi in cyc_edges:
            path = _path_around(g, cycle, e_lohi)
            if all(fwd for _, fwd in path):
                e0 = e_lohi
    path = _path_around(g, cycle, e0)
    m = len(path)
    gsym, psym = [], []
    for e, fwd in path:
        ge = vt.var(_gname(g, e))
        pe = _psi(vt, g, e)
        if fwd:
            gsym.append(ge)
            psym.append(pe)
        else:
            gsym.append(ge - pe)
            psym.append(-pe)
    g0 = vt.var(_gname(g, e0))
    lead = vt.one()
    for x in gsym:
        lead = lead * x
    total = vt.zero()
    for mask in range((1 << m) - 1):  # proper subsets I of {1..m}
        I = [i for i in range(m) if mask >> i & 1]
        J = [j for j in range(m) if not mask >> j & 1]
        s_I = sum(1 for i in I for j in J if i > j)
        sign = -1 if (len(I) + m + s_I) % 2 else 1
        term = vt.one()
        for i in I:
            term = term * gsym[i]
        for j in J[:-1]:
            term = term * psym[j]
        term = term * g0
        total = total + term.scale(sign)
    return lead + total


def _path_around(g: OrderedGraph, cycle: list[int], e0: int) -> list[tuple[int, bool]]:
    """Edges from t(e0) to h(e0) going round the cycle without e0, with direction flags."""
    k = len(cycle)
    t0, h0 = g.tail(e0), g.head(e0)
    i = cycle.index(t0)
    step = 1 if cycle[(i + 1) % k] != h0 else -1
    out = []
    cur = t0
    while cur != h0:
        i = (i + step) % k
        nxt = cycle[i]
        e = g.edge_index(cur, nxt)
        out.append((e, g.tail(e) == cur))
        cur = nxt
    return out


def build_toric(g: OrderedGraph) -> DgaPresentation:
    vt = VarTable(tuple(_order(g, lambda v: [f"x{g.labels[v]}"])))
    rels = [toric_cycle_relation(g, vt, cyc) for cyc in circuit_cycles(g)]
    rels += [_psi(vt, g, e) * vt.var(_gname(g, e)) for e in range(g.m)]
    return DgaPresentation(vt, tuple(rels), {}, {n: 1 for n in vt.names}, g, TORIC)


def build_elliptic(g: OrderedGraph) -> DgaPresentation:
    vt = VarTable(tuple(_order(g, lambda v: [f"x{g.labels[v]}", f"y{g.labels[v]}"])))
    rels = _os_relations(g, vt)
    diff = {}
    for e in range(g.m):
        ge = vt.var(_gname(g, e))
        px, py = _psi(vt, g, e, "x"), _psi(vt, g, e, "y")
        rels += [px * ge, py * ge]
        diff[_gname(g, e)] = px * py
    weights = {n: (2 if n.startswith("g") else 1) for n in vt.names}
    return DgaPresentation(vt, tuple(rels), diff, weights, g, CurveType("projective", 1))


def genus_var(letter: str, i: int, label: str) -> str:
    return f"{letter}{i}_{label}"


def build_projective(g: OrderedGraph, genus: int) -> DgaPresentation:
    if genus < 1:
        raise GenusZeroUnsupported("projective curves need genus >= 1")
    lab = g.labels

    def per_vertex(v):
        out = []
        for i in range(1, genus + 1):
            out += [genus_var("x", i, lab[v]), genus_var("y", i, lab[v])]
        return out

    vt = VarTable(tuple(_order(g, per_vertex)))
    X = lambda i, v: vt.var(genus_var("x", i, lab[v]))  # noqa: E731
    Y = lambda i, v: vt.var(genus_var("y", i, lab[v]))  # noqa: E731
    rels = _os_relations(g, vt)
    diff = {}
    for e in range(g.m):
        h, t = g.head(e), g.tail(e)
        ge = vt.var(_gname(g, e))
        for i in range(1, genus + 1):
            rels += [(X(i, h) - X(i, t)) * ge, (Y(i, h) - Y(i, t)) * ge]
        de = X(1, h) * Y(1, h) + X(1, t) * Y(1, t)
        for i in range(1, genus + 1):
            de = de - X(i, h) * Y(i, t) - X(i, t) * Y(i, h)
        diff[_gname(g, e)] = de
    for v in range(g.n):
        for i in range(1, genus + 1):
            for j in range(i + 1, genus + 1):
                rels += [X(i, v) * Y(j, v), X(j, v) * Y(i, v), X(i, v) * X(j, v), Y(i, v) * Y(j, v)]
        for i in range(1, genus + 1):
            for j in range(i + 1, genus + 1):
                rels.append(X(i, v) * Y(i, v) - X(j, v) * Y(j, v))
    weights = {n: (2 if n.startswith("g") else 1) for n in vt.names}
    return DgaPresentation(
        vt, tuple(rels), diff, weights, g, CurveType("projective", genus), names_style="genus"
    )


def build_model(g: OrderedGraph, curve: CurveType) -> DgaPresentation:
    """Dispatch on the curve type; genus one uses the elliptic presentation."""
    if curve.kind == "rational":
        return build_orlik_solomon(g)
    if curve.kind == "toric":
        return build_toric(g)
    if curve.genus == 1:
        return build_elliptic(g)
    return build_projective(g, curve.genus)


def punctured_elliptic_model() -> DgaPresentation:
    """Lambda(x, y, g)/(xg, yg) with dg = xy: a single edge with one endpoint's
    classes identified away.  Used as the small worked example of duality."""
    vt = VarTable(("x", "y", "g"))
    x, y, g_ = vt.var("x"), vt.var("y"), vt.var("g")
    return DgaPresentation(vt, (x * g_, y * g_), {"g": x * y}, {"x": 1, "y": 1, "g": 2})

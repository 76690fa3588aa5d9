"""Koszulity certificates for the model algebras.

For a chordal graph in a perfect elimination order the relations of every
model have a quadratic Groebner basis, with initial ideal generated by the
broken circuits and the monomials ``x_{h(e)} g_e`` (and ``y_{h(e)} g_e``,
plus the curve relations at each vertex).  The certificate records that
basis, compares its initial ideal with the predicted one, and checks the
numerical identity ``h_A(t) h_{A^!}(-t) = 1`` up to a truncation degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import HilbertIdentityFails, NotChordal, NotPerfectEliminationOrder
from .extalg import GroebnerBasis, VarTable, bits, buchberger, hilbert_series, reduce_to_quadratic
from .graphcomb import (
    Flat,
    OrderedGraph,
    broken_circuits,
    check_chordal,
    flats,
    nbc_sets,
    nbc_sets_of_flat,
)
from .models import CurveType, DgaPresentation, _gname, build_model, genus_var
from .series import TruncatedSeries

__all__ = [
    "TruncatedSeries",
    "FlatContribution",
    "FlatDecomposition",
    "KoszulCertificate",
    "nbc_monomial_basis",
    "predicted_initial_ideal",
    "flat_decomposition",
    "point_factor",
    "certify_koszul",
]


def _require_peo(g: OrderedGraph) -> None:
    ok, witness = check_chordal(g)
    if not ok:
        raise NotChordal(f"graph is not chordal; chordless cycle {witness}", witness)
    if not g.is_perfect_elimination_order():
        raise NotPerfectEliminationOrder("vertex order is not a perfect elimination order")


def _curve_letters(p: DgaPresentation, label: str) -> list[list[str]]:
    """Point-cohomology generators at a vertex, grouped by genus index."""
    curve = p.curve
    if curve is None or curve.kind == "rational":
        return []
    if curve.kind == "toric":
        return [[f"x{label}"]]
    if p.names_style == "genus":
        return [[genus_var("x", i, label), genus_var("y", i, label)] for i in range(1, curve.genus + 1)]
    return [[f"x{label}", f"y{label}"]]


def _vertex_subsets(p: DgaPresentation, label: str) -> list[list[str]]:
    """Standard monomials of the cohomology of one factor, as lists of names."""
    groups = _curve_letters(p, label)
    if not groups:
        return [[]]
    if len(groups) == 1:
        gens = groups[0]
        return [list(c) for k in range(len(gens) + 1) for c in combinations(gens, k)]
    # higher genus: nothing, a single class, or x1 y1 as the top class
    out = [[]]
    for grp in groups:
        out += [[v] for v in grp]
    out.append(list(groups[0]))
    return out


def nbc_monomial_basis(p: DgaPresentation) -> dict[int, list[int]]:
    """The monomial basis ``x_A y_B g_S`` with ``S`` nbc and no curve class at a head of ``S``.

    Needs the graph chordal and listed in a perfect elimination order.
    """
    g = p.graph
    _require_peo(g)
    vt = p.vt
    per_vertex = [_vertex_subsets(p, g.labels[v]) for v in range(g.n)]
    out: dict[int, list[int]] = {d: [] for d in range(len(vt) + 1)}
    for s in nbc_sets(g):
        heads = {g.head(e) for e in s}
        base = vt.monomial([_gname(g, e) for e in s]).leading_monomial() if s else 0
        choices = [[[]] if v in heads else per_vertex[v] for v in range(g.n)]
        monos = [base]
        for opts in choices:
            nxt = []
            for m in monos:
                for names in opts:
                    mm = m
                    for nm in names:
                        mm |= 1 << vt.rank(nm)
                    nxt.append(mm)
            monos = nxt
        for m in monos:
            out[bin(m).count("1")].append(m)
    for d in out:
        out[d].sort()
    return out


def predicted_initial_ideal(p: DgaPresentation) -> set[int]:
    """Minimal generators of the initial ideal the chordal proofs predict."""
    g = p.graph
    vt = p.vt
    lead = set()
    for bc in broken_circuits(g):
        lead.add(vt.monomial([_gname(g, e) for e in bc]).leading_monomial())
    for e in range(g.m):
        ge = 1 << vt.rank(_gname(g, e))
        for grp in _curve_letters(p, g.labels[g.head(e)]):
            for nm in grp:
                lead.add(ge | 1 << vt.rank(nm))
    for v in range(g.n):
        groups = _curve_letters(p, g.labels[v])
        if len(groups) < 2:
            continue
        names = [nm for grp in groups for nm in grp]
        top = {frozenset(groups[0])}
        allowed = {frozenset([a]) for a in names} | top
        for a, b in combinations(names, 2):
            if frozenset([a, b]) not in allowed:
                lead.add(1 << vt.rank(a) | 1 << vt.rank(b))
    # keep minimal ones only
    return {m for m in lead if not any(o != m and o & m == o for o in lead)}


# ------------------------------------------------------------ flat sums


def point_factor(curve: CurveType) -> DgaPresentation:
    """The model on a single vertex: the cohomology of the curve itself."""
    g = OrderedGraph.from_edges(["1"], [])
    return build_model(g, curve)


@dataclass(frozen=True)
class FlatContribution:
    flat: Flat
    stratum_dims: TruncatedSeries  # H*(H_F) per degree
    nbc_count: int
    contribution: TruncatedSeries


@dataclass(frozen=True)
class FlatDecomposition:
    graph: OrderedGraph
    curve: CurveType
    parts: tuple[FlatContribution, ...]

    def total(self) -> TruncatedSeries:
        acc = TruncatedSeries([0], self.parts[0].contribution.trunc)
        for part in self.parts:
            acc = acc + part.contribution
        return acc


def _stratum_series(g: OrderedGraph, curve: CurveType, flat: Flat, trunc: int) -> TruncatedSeries:
    """Poincare series of the stratum H_F: the point model modulo the diagonal
    relations ``a_{h(e)} - a_{t(e)}`` for every edge of ``F`` and curve class ``a``."""
    bare = build_model(OrderedGraph.from_edges(g.labels, []), curve)
    vt = bare.vt
    rels = list(bare.relations)
    for e in flat.edges:
        for grp in _curve_letters(bare, g.labels[g.head(e)]):
            for nm in grp:
                tname = _rename_vertex(nm, g.labels[g.head(e)], g.labels[g.tail(e)], bare)
                rels.append(vt.var(nm) - vt.var(tname))
    if not rels:
        return _binomial_series(len(vt), trunc)
    return hilbert_series(buchberger(rels, vt), trunc)


def _rename_vertex(name: str, old: str, new: str, p: DgaPresentation) -> str:
    if p.names_style == "genus":
        return name[: -len(old)] + new
    return name[0] + new


def _binomial_series(n: int, trunc: int) -> TruncatedSeries:
    from math import comb

    return TruncatedSeries([comb(n, k) for k in range(trunc + 1)])


def flat_decomposition(g: OrderedGraph, curve: CurveType, trunc: Optional[int] = None) -> FlatDecomposition:
    """Per-flat pieces ``H*(H_F) (x) span{g_S : S nbc basis of F}``."""
    n_vars = len(build_model(g, curve).vt)
    trunc = n_vars if trunc is None else trunc
    parts = []
    for F in flats(g):
        strat = _stratum_series(g, curve, F, trunc)
        count = len(nbc_sets_of_flat(g, F))
        shift = TruncatedSeries([1 if k == F.rank else 0 for k in range(trunc + 1)])
        parts.append(FlatContribution(F, strat, count, strat * shift * count))
    return FlatDecomposition(g, curve, tuple(parts))


# ------------------------------------------------------------ certificate


@dataclass(frozen=True)
class KoszulCertificate:
    gb: GroebnerBasis
    initial_ideal: tuple[int, ...]
    predicted_initial_ideal: Optional[tuple[int, ...]]
    initial_ideal_matches: Optional[bool]
    hilbert: TruncatedSeries
    dual_hilbert: TruncatedSeries
    identity_checked_to: int

    @property
    def quadratic(self) -> bool:
        return self.gb.reduced_to_quadratic

    def initial_ideal_names(self) -> list[str]:
        vt = self.gb.vt
        return [vt.mono_str(m) for m in self.initial_ideal]


def dual_hilbert_from_leads(vt: VarTable, leads, trunc: int) -> TruncatedSeries:
    """Hilbert series of the quadratic dual, counted on normal words.

    With quadratic leading monomials ``L`` the dual has a quadratic Groebner
    basis whose normal words are those in which every adjacent pair ``(p, q)``
    has ``p <= q`` or ``v_q v_p`` in ``L``.
    """
    n = len(vt)
    down = [[False] * n for _ in range(n)]
    for m in leads:
        if bin(m).count("1") == 2:
            a, b = bits(m)
            down[b][a] = True
    counts = [1] * n
    coeffs = [1, n] if trunc >= 1 else [1]
    for _ in range(2, trunc + 1):
        nxt = [0] * n
        for p in range(n):
            c = counts[p]
            if not c:
                continue
            for q in range(n):
                if p <= q or down[p][q]:
                    nxt[q] += c
        counts = nxt
        coeffs.append(sum(counts))
    return TruncatedSeries(coeffs, trunc)


def check_hilbert_identity(h: TruncatedSeries, h_dual: TruncatedSeries) -> Optional[int]:
    """First degree where ``h(t) h_dual(-t)`` differs from 1, or None."""
    prod = h * h_dual.negate_variable()
    for k, c in enumerate(prod.coeffs):
        if c != (1 if k == 0 else 0):
            return k
    return None


def certify_koszul(p: DgaPresentation, trunc: int = 10, gb: Optional[GroebnerBasis] = None) -> KoszulCertificate:
    """Quadratic Groebner basis plus the numerical Koszul identity.

    Raises :class:`NotQuadratic` when the reduced basis has a cubic or higher
    element, and :class:`HilbertIdentityFails` when the series identity breaks.
    """
    gb = reduce_to_quadratic(gb if gb is not None else buchberger(p.relations, p.vt))
    leads = tuple(sorted(gb.leading_monomials))
    predicted = None
    matches = None
    if p.graph is not None and check_chordal(p.graph)[0] and p.graph.is_perfect_elimination_order():
        predicted = tuple(sorted(predicted_initial_ideal(p)))
        matches = predicted == leads
    h = hilbert_series(gb, trunc)
    h_dual = dual_hilbert_from_leads(p.vt, leads, trunc)
    bad = check_hilbert_identity(h, h_dual)
    if bad is not None:
        raise HilbertIdentityFails(bad)
    return KoszulCertificate(gb, leads, predicted, matches, h, h_dual, trunc)

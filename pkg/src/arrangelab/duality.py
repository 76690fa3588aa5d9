"""Nonhomogeneous quadratic duality for quadratic DGAs.

A quadratic DGA is ``T(V)/J`` with ``J`` containing the symmetric tensors, and
its differential restricts to ``d1 : V -> (V (x) V)/J``.  The dual is the
algebra ``T(V*)`` modulo ``alpha - phi(alpha)`` for ``alpha`` in ``J^perp``,
where ``phi`` is the transpose of ``d1``.

Pairing convention: ``<u (x) v, a (x) b> = <u, a><v, b>`` with no Koszul sign.
Under it the dual of the monomial ``v_i v_j`` (``i < j``) is the commutator
``[a_i, a_j]``.  Tensors are dicts keyed by index tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Optional

from .errors import MalformedQla, NotAntisymmetric, NotQuadratic, NotQuadraticInput
from .extalg import ExtPoly, GroebnerBasis, bits, buchberger, normal_form, reduce_to_quadratic, standard_monomials
from .graphcomb import OrderedGraph
from .linalg import Echelon, kernel, same_span
from .models import DgaPresentation, _gname, differential_raw, genus_var

__all__ = [
    "QuadraticData",
    "QlaPresentation",
    "LieRelation",
    "LiePresentation",
    "dual_name",
    "quadratic_data",
    "dualize",
    "to_lie_presentation",
    "reference_lie_relations",
    "verify_against_reference_presentation",
    "round_trip",
    "perp_dense",
    "dual_dims_dense",
    "format_lie_relation",
]


def dual_name(name: str) -> str:
    """``x -> a``, ``y -> b``, ``g -> c``; anything else gets a trailing ``*``."""
    table = {"x": "a", "y": "b", "g": "c"}
    if name and name[0] in table:
        return table[name[0]] + name[1:]
    return name + "*"


def _add(target: dict, key, c) -> None:
    v = target.get(key, 0) + c
    if v:
        target[key] = v
    else:
        target.pop(key, None)


def _poly_tensor(p: ExtPoly) -> dict:
    """Degree-2 part of ``p`` as the tensor ``sum c v_i (x) v_j`` with ``i < j``."""
    out = {}
    for m, c in p.terms.items():
        if bin(m).count("1") == 2:
            i, j = bits(m)
            out[(i, j)] = Fraction(c)
    return out


@dataclass(frozen=True)
class QuadraticData:
    """``V`` by names, ``J`` as a spanning set of tensors, and ``d1`` per generator."""

    names: tuple[str, ...]
    j_span: tuple[dict, ...]
    d1: tuple[dict, ...]  # tensor representative of d(v_i)
    gb: GroebnerBasis
    source: Optional[DgaPresentation] = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.names)

    def dim_j(self) -> int:
        e = Echelon()
        for t in self.j_span:
            e.add(t)
        return len(e)


def quadratic_data(p: DgaPresentation, gb: Optional[GroebnerBasis] = None) -> QuadraticData:
    """``J = S^2(V) + I_2`` and ``d1`` read off the differential.

    Uses the relations directly when they are all quadratic, and otherwise the
    reduced Groebner basis, which must then be quadratic.
    """
    if gb is None:
        gb = buchberger(p.relations, p.vt)
    try:
        gb = reduce_to_quadratic(gb)
    except NotQuadratic as exc:
        raise NotQuadraticInput(f"relations have no quadratic Groebner basis (degree {exc.min_degree})") from exc
    if any(r.degree != 2 or not r.is_homogeneous() for r in gb.polys):
        raise NotQuadraticInput("relations must be homogeneous quadratic")
    n = len(p.vt)
    span = []
    for i in range(n):
        span.append({(i, i): Fraction(1)})
        for j in range(i + 1, n):
            span.append({(i, j): Fraction(1), (j, i): Fraction(1)})
    span += [_poly_tensor(r) for r in gb.polys]
    d1 = []
    for name in p.vt.names:
        dv = normal_form(p.d(name), gb)
        if dv.degrees() - {2}:
            raise NotQuadraticInput(f"d({name}) is not quadratic")
        d1.append(_poly_tensor(dv))
    return QuadraticData(p.vt.names, tuple(span), tuple(d1), gb, p)


@dataclass(frozen=True)
class QlaPresentation:
    """``T(V*)`` modulo ``quad - lin`` for each listed pair."""

    names: tuple[str, ...]  # dual generator names
    perp: tuple[dict, ...]  # basis of J^perp, tensors over pairs of indices
    phi: tuple[dict, ...]  # phi(perp[k]) as a dict index -> coefficient
    labels: tuple[int, ...]  # standard monomial each basis element is dual to

    def relations(self) -> list[tuple[dict, dict]]:
        return list(zip(self.perp, self.phi))


def _check_h_vanishes(q: QuadraticData) -> None:
    """The curvature term of the dual vanishes exactly when ``d^2 = 0`` on
    generators and ``d`` preserves the relation ideal; check both."""
    p = q.source
    if p is None:
        return
    for name in p.vt.names:
        dd = normal_form(differential_raw(p, p.d(name)), q.gb)
        if not dd.is_zero():
            raise MalformedQla(f"d^2({name}) = {dd} is not zero")
    for r in q.gb.polys:
        if not normal_form(differential_raw(p, r), q.gb).is_zero():
            raise MalformedQla(f"d does not preserve the relation {r}")


def dualize(q: QuadraticData, check: bool = True) -> QlaPresentation:
    """Basis of ``J^perp`` dual to the standard quadratic monomials, and ``phi``.

    For a reduced basis element ``r = LM(r) - sum c_s s`` the functional dual to
    ``s`` is ``s* + sum_r c_s LM(r)*``; this is the basis row reduction over the
    monomial order produces.
    """
    if check:
        _check_h_vanishes(q)
    vt = q.gb.vt
    std = standard_monomials(q.gb, 2)[2]
    lead_terms = []
    for r in q.gb.polys:
        lm = r.leading_monomial()
        c = r.terms[lm]
        lead_terms.append((lm, {m: -v / c for m, v in r.terms.items() if m != lm}))
    perp, phi = [], []
    for s in std:
        alpha = {}
        for m, coef in [(s, Fraction(1))] + [(lm, low[s]) for lm, low in lead_terms if s in low]:
            i, j = bits(m)
            _add(alpha, (i, j), coef)
            _add(alpha, (j, i), -coef)
        perp.append(alpha)
        i, j = bits(s)
        phi.append({k: d[(i, j)] for k, d in enumerate(q.d1) if (i, j) in d})
    return QlaPresentation(tuple(dual_name(n) for n in vt.names), tuple(perp), tuple(phi), tuple(std))


def _pair(t: dict, u: dict) -> Fraction:
    return sum((c * u[k] for k, c in t.items() if k in u), Fraction(0))


def perp_dense(q: QuadraticData) -> list[dict]:
    """``J^perp`` by a kernel computation on all ``n^2`` coordinates (oracle)."""
    cols = list(product(range(q.n), repeat=2))
    return kernel(list(q.j_span), cols)


def round_trip(q: QuadraticData, qla: QlaPresentation) -> bool:
    """Recover ``J`` as ``(J^perp)^perp`` and ``d1`` as the transpose of ``phi``."""
    n = q.n
    cols = list(product(range(n), repeat=2))
    j_again = kernel(list(qla.perp), cols)
    if not same_span(j_again, q.j_span):
        return False
    if any(_pair(t, a) for t in q.j_span for a in qla.perp):
        return False
    # <d1(v_k), alpha> must equal phi(alpha)(v_k)
    for alpha, ph in zip(qla.perp, qla.phi):
        for k in range(n):
            if _pair(q.d1[k], alpha) != ph.get(k, 0):
                return False
    return True


def dual_dims_dense(qla: QlaPresentation, max_deg: int) -> list[int]:
    """Graded dimensions of the homogeneous dual ``T(V*)/(J^perp)`` by linear algebra."""
    n = len(qla.names)
    dims = [1]
    for k in range(1, max_deg + 1):
        if k == 1:
            dims.append(n)
            continue
        e = Echelon()
        for pos in range(k - 1):
            for left in product(range(n), repeat=pos):
                for right in product(range(n), repeat=k - 2 - pos):
                    for alpha in qla.perp:
                        e.add({left + key + right: c for key, c in alpha.items()})
        dims.append(n ** k - len(e))
    return dims


# ------------------------------------------------------------ Lie form


@dataclass(frozen=True)
class LieRelation:
    """``sum c [u_i, u_j] - sum l u_k = 0`` with ``i < j``."""

    brackets: tuple[tuple[tuple[int, int], Fraction], ...]
    linear: tuple[tuple[int, Fraction], ...]

    @classmethod
    def make(cls, brackets: dict, linear: dict) -> "LieRelation":
        b = {}
        for (i, j), c in brackets.items():
            if i == j or not c:
                continue
            if i > j:
                i, j, c = j, i, -c
            _add(b, (i, j), Fraction(c))
        lin = {k: Fraction(c) for k, c in linear.items() if c}
        return cls(tuple(sorted(b.items())), tuple(sorted(lin.items())))

    def vector(self) -> dict:
        v = {("b",) + k: c for k, c in self.brackets}
        v.update({("l", k): -c for k, c in self.linear})
        return v


@dataclass(frozen=True)
class LiePresentation:
    names: tuple[str, ...]
    relations: tuple[LieRelation, ...]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def format(self) -> list[str]:
        return [format_lie_relation(self.names, r) for r in self.relations]


def to_lie_presentation(qla: QlaPresentation) -> LiePresentation:
    """Rewrite each ``alpha - phi(alpha)`` as brackets minus a linear part."""
    rels = []
    for alpha, ph in zip(qla.perp, qla.phi):
        br = {}
        for (i, j), c in alpha.items():
            if alpha.get((j, i), 0) != -c or i == j:
                raise NotAntisymmetric(f"relation tensor not antisymmetric at {(i, j)}")
            if i < j:
                br[(i, j)] = c
        rels.append(LieRelation.make(br, ph))
    return LiePresentation(qla.names, tuple(rels))


def _coef_str(c: Fraction, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    a = abs(c)
    mag = "" if a == 1 else f"{a}*"
    return (f"{sign} " if not first else sign) + mag


def format_lie_relation(names, r: LieRelation) -> str:
    """``[a1, b2] - c12 = 0`` style."""
    parts = []
    for (i, j), c in r.brackets:
        parts.append(_coef_str(c, not parts) + f"[{names[i]}, {names[j]}]")
    for k, c in r.linear:
        parts.append(_coef_str(-c, not parts) + names[k])
    return (" ".join(parts) if parts else "0") + " = 0"


# ------------------------------------------------------ reference presentation


def _dual_names_for(g: OrderedGraph, genus: int):
    lab = g.labels
    if genus == 1:
        A = lambda i, v: f"a{lab[v]}"  # noqa: E731
        B = lambda i, v: f"b{lab[v]}"  # noqa: E731
    else:
        A = lambda i, v: dual_name(genus_var("x", i, lab[v]))  # noqa: E731
        B = lambda i, v: dual_name(genus_var("y", i, lab[v]))  # noqa: E731
    C = lambda e: dual_name(_gname(g, e))  # noqa: E731
    return A, B, C


def reference_lie_relations(g: OrderedGraph, genus: int, names) -> list[LieRelation]:
    """The explicit relation list (i)-(ivb) for the dual Lie algebra.

    (iib) is applied for ``v != w`` only: for ``v = w`` and ``i != j`` the
    monomial ``x^i_v y^j_v`` is already a relation of the algebra, so it has no
    dual relation (surface groups have a single relation per vertex).
    """
    A, B, C = _dual_names_for(g, genus)
    idx = {n: k for k, n in enumerate(names)}
    G = range(1, genus + 1)
    out = []

    def rel(brackets, linear=()):
        br = {}
        for c, u, v in brackets:
            _add(br, (idx[u], idx[v]), Fraction(c))
        out.append(LieRelation.make(br, {idx[n]: Fraction(c) for c, n in linear}))

    adj = {(min(t, h), max(t, h)) for t, h in g.edges}
    # (i)
    for v, w in combinations(range(g.n), 2):
        for i, j in product(G, G):
            rel([(1, A(i, v), A(j, w))])
            rel([(1, B(i, v), B(j, w))])
    # (iia)
    for e in range(g.m):
        h, t = g.head(e), g.tail(e)
        for i in G:
            rel([(1, B(i, h), A(i, t))], [(1, C(e))])
            rel([(1, B(i, t), A(i, h))], [(1, C(e))])
    # (iib)
    for v, w in product(range(g.n), repeat=2):
        if v == w:
            continue
        for i, j in product(G, G):
            if (min(v, w), max(v, w)) not in adj or i != j:
                rel([(1, A(i, v), B(j, w))])
    # (iic)
    for v in range(g.n):
        rel([(1, A(i, v), B(i, v)) for i in G], [(1, C(e)) for e in range(g.m) if v in g.edges[e]])
    # (iiia), (iiib)
    for e in range(g.m):
        h, t = g.head(e), g.tail(e)
        for i in G:
            for v in range(g.n):
                if v not in (h, t):
                    rel([(1, A(i, v), C(e))])
                    rel([(1, B(i, v), C(e))])
            rel([(1, A(i, h), C(e)), (1, A(i, t), C(e))])
            rel([(1, B(i, h), C(e)), (1, B(i, t), C(e))])
    # (iva), (ivb)
    tri = []
    for e1, e2, e3 in combinations(range(g.m), 3):
        vs = set(g.edges[e1]) | set(g.edges[e2]) | set(g.edges[e3])
        if len(vs) == 3:
            tri.append((e1, e2, e3))
    in_tri = {frozenset(p) for t in tri for p in combinations(t, 2)}
    for e, f in combinations(range(g.m), 2):
        if frozenset((e, f)) not in in_tri:
            rel([(1, C(e), C(f))])
    for t in tri:
        for k in range(3):
            e1 = t[k]
            e2, e3 = [x for x in t if x != e1]
            rel([(1, C(e1), C(e2)), (1, C(e1), C(e3))])
    return out


@dataclass(frozen=True)
class PresentationReport:
    equal: bool
    computed_dim: int
    reference_dim: int
    missing: tuple[str, ...]  # reference relations outside the computed span
    extra: tuple[str, ...]  # computed relations outside the reference span


def verify_against_reference_presentation(lp: LiePresentation, g: OrderedGraph, genus: int) -> PresentationReport:
    """Compare relation spans in the free Lie algebra up to bracket length two."""
    ref = reference_lie_relations(g, genus, lp.names)
    ec, er = Echelon(), Echelon()
    for r in lp.relations:
        ec.add(r.vector())
    for r in ref:
        er.add(r.vector())
    missing = tuple(format_lie_relation(lp.names, r) for r in ref if not ec.contains(r.vector()))
    extra = tuple(format_lie_relation(lp.names, r) for r in lp.relations if not er.contains(r.vector()))
    return PresentationReport(not missing and not extra, len(ec), len(er), missing, extra)

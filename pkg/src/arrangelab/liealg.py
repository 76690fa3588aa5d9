"""Weight-graded Lie algebras, nilpotent quotients and their standard complexes.

A Lie presentation with quadratic-linear relations is first made homogeneous:
generators that occur in the linear parts are eliminated in favour of the
brackets they equal, and the remaining generators get weight one.  The
quotients ``L / Gamma_i L`` are then built weight by weight with a nilpotent
quotient algorithm.  Every new element of weight ``w`` is a bracket
``[x_k, u]`` of a generator with a basis element of weight ``w - 1``.
Antisymmetry, the Jacobi identity and the relations are imposed on these
symbols.

Lie polynomials are dicts from bracket trees to rationals; a tree is a
generator index or a pair ``(left, right)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from typing import Optional

from .caps import default_cap
from .duality import LiePresentation
from .errors import CapExceeded, MalformedQla
from .extalg import ExtPoly, VarTable, bits
from .graphcomb import OrderedGraph
from .linalg import Echelon
from .models import DgaPresentation, differential_raw
from .series import TruncatedSeries, pbw_product

DEFAULT_MAX_WEIGHT = 6


def _add(target: dict, key, c) -> None:
    v = target.get(key, 0) + c
    if v:
        target[key] = v
    else:
        target.pop(key, None)


# ------------------------------------------------------------ free Lie algebra


def lyndon_words(k: int, w: int) -> list[tuple[int, ...]]:
    """Lyndon words of length ``w`` over ``0..k-1`` in lexicographic order (Duval)."""
    out = []
    if w == 0 or k == 0:
        return out
    word = [-1]
    while word:
        word[-1] += 1
        if len(word) == w:
            out.append(tuple(word))
        m = len(word)
        while len(word) < w:
            word.append(word[len(word) - m])
        while word and word[-1] == k - 1:
            word.pop()
    return out


def lyndon_tree(word: tuple[int, ...]):
    """Standard bracketing: split at the longest proper Lyndon suffix."""
    if len(word) == 1:
        return word[0]
    for i in range(1, len(word)):
        suffix = word[i:]
        if _is_lyndon(suffix):
            return (lyndon_tree(word[:i]), lyndon_tree(suffix))
    raise ValueError("not a Lyndon word")  # pragma: no cover


def _is_lyndon(word) -> bool:
    return all(word < word[i:] + word[:i] for i in range(1, len(word)))


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def witt_dimension(n: int, w: int) -> int:
    """``(1/w) sum_{d | w} mu(d) n^(w/d)``."""
    return sum(_mobius(d) * n ** (w // d) for d in range(1, w + 1) if w % d == 0) // w


def free_lie_basis(generators, weight: int) -> list:
    """Lyndon bracket basis of the free Lie algebra in one weight, as trees of names."""
    gens = list(generators)

    def name(t):
        return gens[t] if isinstance(t, int) else (name(t[0]), name(t[1]))

    return [name(lyndon_tree(wd)) for wd in lyndon_words(len(gens), weight)]


def tree_weight(t) -> int:
    return 1 if isinstance(t, int) else tree_weight(t[0]) + tree_weight(t[1])


def tree_tensor(t) -> dict:
    """Expansion of a bracket tree in the tensor algebra (words as tuples)."""
    if isinstance(t, int):
        return {(t,): Fraction(1)}
    a, b = tree_tensor(t[0]), tree_tensor(t[1])
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            _add(out, u + v, x * y)
            _add(out, v + u, -x * y)
    return out


def format_tree(t, names) -> str:
    if isinstance(t, int):
        return names[t]
    return f"[{format_tree(t[0], names)}, {format_tree(t[1], names)}]"


# ----------------------------------------------------------------- elimination


@dataclass(frozen=True)
class HomogeneousPresentation:
    """Weight-one generators and homogeneous Lie relations among them."""

    source: LiePresentation
    kept: tuple[int, ...]  # indices into source.names
    substitution: dict  # eliminated source index -> Lie polynomial over kept positions
    relations: tuple[dict, ...]  # Lie polynomials over kept positions, homogeneous

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.source.names[k] for k in self.kept)

    def express(self, source_poly: dict) -> dict:
        """Rewrite a Lie polynomial over source generator indices in kept positions."""
        pos = {k: i for i, k in enumerate(self.kept)}
        out: dict = {}
        for t, c in source_poly.items():
            for t2, c2 in _substitute(t, pos, self.substitution).items():
                _add(out, t2, c * c2)
        return out


def _bracket_polys(a: dict, b: dict) -> dict:
    out: dict = {}
    for s, x in a.items():
        for t, y in b.items():
            _add(out, (s, t), x * y)
    return out


def _substitute(t, pos: dict, subst: dict) -> dict:
    if isinstance(t, int):
        if t in pos:
            return {pos[t]: Fraction(1)}
        return subst[t]
    return _bracket_polys(_substitute(t[0], pos, subst), _substitute(t[1], pos, subst))


def eliminate_linear(lp: LiePresentation) -> HomogeneousPresentation:
    """Solve the linear parts for the latest generators and substitute.

    Raises :class:`MalformedQla` if the result is not weight homogeneous.
    """
    n = len(lp.names)
    rows = []
    for r in lp.relations:
        vec = {("l", k): -c for k, c in r.linear}
        vec.update({("b", i, j): c for (i, j), c in r.brackets})
        rows.append(vec)
    # pivots on linear coordinates first, latest generator first
    def key(c):
        return (1, c[1]) if c[0] == "l" else (0, c[1:])

    ech = Echelon(key)
    for v in rows:
        ech.add(v)
    defs = {}
    homog = []
    for piv, row in ech.rows.items():
        if piv[0] == "l":
            k = piv[1]
            lin_rest = {c[1]: x for c, x in row.items() if c[0] == "l" and c != piv}
            if lin_rest:
                raise MalformedQla(f"generator {lp.names[k]} is not a pure bracket")
            # row reads c_k + brackets = 0
            defs[k] = {(c[1], c[2]): -x for c, x in row.items() if c[0] == "b"}
        else:
            homog.append({(c[1], c[2]): x for c, x in row.items() if c[0] == "b"})
    kept = tuple(k for k in range(n) if k not in defs)
    pos = {k: i for i, k in enumerate(kept)}
    subst: dict = {}

    def resolve(k, depth=0):
        if k in subst:
            return subst[k]
        if depth > n:
            raise MalformedQla("cyclic elimination")
        out: dict = {}
        for (i, j), c in defs[k].items():
            a = {pos[i]: Fraction(1)} if i in pos else resolve(i, depth + 1)
            b = {pos[j]: Fraction(1)} if j in pos else resolve(j, depth + 1)
            for t, x in _bracket_polys(a, b).items():
                _add(out, t, c * x)
        subst[k] = out
        return out

    for k in defs:
        resolve(k)
    rels = []
    for h in homog:
        poly: dict = {}
        for (i, j), c in h.items():
            for t, x in _substitute((i, j), pos, subst).items():
                _add(poly, t, c * x)
        if not poly:
            continue
        if len({tree_weight(t) for t in poly}) > 1:
            raise MalformedQla("relations are not homogeneous after elimination")
        rels.append(poly)
    for k, poly in subst.items():
        if len({tree_weight(t) for t in poly}) > 1:
            raise MalformedQla(f"{lp.names[k]} is not homogeneous after elimination")
    return HomogeneousPresentation(lp, kept, subst, tuple(rels))


# ------------------------------------------------------------ graded stages


@dataclass
class GradedLieStage:
    """Basis of ``L / Gamma_i L`` by weight with structure constants.

    ``bracket[(p, q)]`` is ``[u_p, u_q]`` in basis coordinates (absent means
    zero); it is stored for every ordered pair of total weight below ``i``.
    """

    i: int
    names: list  # basis element names
    weights: list
    trees: list  # a bracket tree (over generator positions) for each element, or None
    bracket: dict
    generator_names: tuple  # weight-one generators
    presentation: Optional[HomogeneousPresentation] = None

    def dims(self) -> dict[int, int]:
        out = {w: 0 for w in range(1, self.i)}
        for w in self.weights:
            out[w] += 1
        return out

    def of_weight(self, w: int) -> list[int]:
        return [k for k, x in enumerate(self.weights) if x == w]

    def br(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for p, x in u.items():
            for q, y in v.items():
                for r, z in self.bracket.get((p, q), {}).items():
                    _add(out, r, x * y * z)
        return out

    def check_antisymmetry(self) -> bool:
        n = len(self.names)
        for p in range(n):
            for q in range(p, n):
                a = self.bracket.get((p, q), {})
                b = self.bracket.get((q, p), {})
                if any(a.get(r, 0) + b.get(r, 0) for r in set(a) | set(b)):
                    return False
        return True

    def jacobi_failures(self) -> list[tuple[int, int, int]]:
        """Basis triples where the Jacobi identity fails (exhaustive)."""
        bad = []
        n = len(self.names)
        for p, q, r in combinations_with_replacement(range(n), 3):
            if self.weights[p] + self.weights[q] + self.weights[r] >= self.i:
                continue
            up, uq, ur = {p: 1}, {q: 1}, {r: 1}
            j: dict = {}
            for a, b, c in ((up, uq, ur), (uq, ur, up), (ur, up, uq)):
                for s, x in self.br(a, self.br(b, c)).items():
                    _add(j, s, x)
            if j:
                bad.append((p, q, r))
        return bad

    def evaluate(self, poly: dict) -> dict:
        """A Lie polynomial over generator positions in basis coordinates."""
        out: dict = {}
        for t, c in poly.items():
            for s, x in self._eval_tree(t).items():
                _add(out, s, c * x)
        return out

    def _eval_tree(self, t) -> dict:
        if isinstance(t, int):
            return {t: Fraction(1)}  # generators are the first basis elements
        if tree_weight(t) >= self.i:
            return {}
        return self.br(self._eval_tree(t[0]), self._eval_tree(t[1]))


class _NilpotentQuotient:
    def __init__(self, hp: HomogeneousPresentation, preferred: dict, cap: int):
        self.hp = hp
        self.cap = cap
        self.preferred = preferred  # weight -> list of (name, poly over positions)
        ng = len(hp.kept)
        self.names = list(hp.names)
        self.weights = [1] * ng
        self.trees = list(range(ng))
        self.defs: list = [None] * ng  # M-vector {(k, u): c} defining each element
        self.bracket: dict = {}
        self.rel_by_weight: dict = {}
        for r in hp.relations:
            w = tree_weight(next(iter(r)))
            self.rel_by_weight.setdefault(w, []).append(r)
        if any(w < 2 for w in self.rel_by_weight):
            raise MalformedQla("linear relation among weight-one generators")
        self.top = 1

    def stage(self, i: int) -> GradedLieStage:
        while self.top < i - 1:
            self._extend()
        keep = [k for k, w in enumerate(self.weights) if w < i]
        br = {}
        for (p, q), v in self.bracket.items():
            if self.weights[p] + self.weights[q] < i:
                br[(p, q)] = v
        return GradedLieStage(
            i,
            [self.names[k] for k in keep],
            [self.weights[k] for k in keep],
            [self.trees[k] for k in keep],
            br,
            self.hp.names,
            self.hp,
        )

    # -- weight-w bracket into the symbol space M spanned by (k, u)
    def _basis(self, w):
        return [k for k, x in enumerate(self.weights) if x == w]

    def _lower(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for p, x in u.items():
            for q, y in v.items():
                for r, z in self.bracket.get((p, q), {}).items():
                    _add(out, r, x * y * z)
        return out

    def _top_bracket(self, p: int, q: int, memo: dict) -> dict:
        """``[u_p, u_q]`` of total weight ``w`` as an M-vector."""
        if (p, q) in memo:
            return memo[(p, q)]
        ng = len(self.hp.kept)
        out: dict = {}
        if p < ng:
            out = {(p, q): Fraction(1)}
        elif q < ng:
            out = {s: -c for s, c in self._top_bracket(q, p, memo).items()}
        else:
            # u_p = sum c [x_k, u'] ; Jacobi: [[x,u'],v] = [x,[u',v]] - [u',[x,v]]
            for (k, up), c in self.defs[p].items():
                for r, x in self._lower({up: 1}, {q: 1}).items():
                    _add(out, (k, r), c * x)
                for r, x in self._lower({k: 1}, {q: 1}).items():
                    for s, y in self._top_bracket(up, r, memo).items():
                        _add(out, s, -c * x * y)
        memo[(p, q)] = out
        return out

    def _top_tree(self, t, w: int, memo: dict) -> dict:
        """Evaluate a tree of weight ``w`` in M (its subtrees have lower weight)."""
        left, right = t
        a = self._eval_lower(left)
        b = self._eval_lower(right)
        out: dict = {}
        for p, x in a.items():
            for q, y in b.items():
                for s, z in self._top_bracket(p, q, memo).items():
                    _add(out, s, x * y * z)
        return out

    def _eval_lower(self, t) -> dict:
        if isinstance(t, int):
            return {t: Fraction(1)}
        return self._lower(self._eval_lower(t[0]), self._eval_lower(t[1]))

    def _extend(self):
        w = self.top + 1
        ng = len(self.hp.kept)
        prev = self._basis(w - 1)
        symbols = [(k, u) for k in range(ng) for u in prev]
        memo: dict = {}
        kernel = Echelon(key=lambda s: (0, s) if s[0] != "tag" else (-1, s[1]))
        # antisymmetry for every pair of total weight w
        by_w = {v: self._basis(v) for v in range(1, w)}
        for a in range(1, w // 2 + 1):
            for p in by_w[a]:
                for q in by_w[w - a]:
                    v = dict(self._top_bracket(p, q, memo))
                    for s, c in self._top_bracket(q, p, memo).items():
                        _add(v, s, c)
                    kernel.add(v)
        # Jacobi for every triple of total weight w
        for a in range(1, w):
            for b in range(a, w):
                c_ = w - a - b
                if c_ < b:
                    continue
                for p in by_w[a]:
                    for q in by_w[b]:
                        for r in by_w[c_]:
                            v: dict = {}
                            for x, y, z in ((p, q, r), (q, r, p), (r, p, q)):
                                inner = self._lower({y: 1}, {z: 1})
                                for s, cc in inner.items():
                                    for t, dd in self._top_bracket(x, s, memo).items():
                                        _add(v, t, cc * dd)
                            kernel.add(v)
        for rel in self.rel_by_weight.get(w, []):
            v = {}
            for t, c in rel.items():
                for s, x in self._top_tree(t, w, memo).items():
                    _add(v, s, c * x)
            kernel.add(v)
        dim = len(symbols) - len(kernel)
        if dim > self.cap:
            raise CapExceeded(f"weight {w} has dimension {dim} > cap {self.cap}")
        # basis: preferred elements first, then symbols in order
        chosen = Echelon(key=kernel.key)
        for row in kernel.rows.values():
            chosen.add(row)
        new = []
        cands = []
        for name, poly in self.preferred.get(w, []):
            vec: dict = {}
            for t, c in poly.items():
                for s, x in self._top_tree(t, w, memo).items():
                    _add(vec, s, c * x)
            tree = next(iter(poly)) if len(poly) == 1 and next(iter(poly.values())) == 1 else None
            cands.append((name, vec, tree))
        for j, s in enumerate(symbols):
            k, u = s
            tu = self.trees[u]
            tree = (k, tu) if tu is not None else None
            cands.append((None, {s: Fraction(1)}, tree))
        for name, vec, tree in cands:
            if len(new) == dim:
                break
            if vec and chosen.add(vec):
                new.append((name, vec, tree))
        base = len(self.names)
        for j, (name, vec, tree) in enumerate(new):
            self.names.append(name or f"z{w}_{j + 1}")
            self.weights.append(w)
            self.trees.append(tree)
            self.defs.append(vec)
        # express top brackets in the new basis
        expr = Echelon(key=kernel.key)
        for row in kernel.rows.values():
            expr.add(row)
        for j, (_, vec, _) in enumerate(new):
            tagged = dict(vec)
            tagged[("tag", base + j)] = Fraction(1)
            expr.add(tagged)

        def coords(v: dict) -> dict:
            rem = expr.reduce(v)
            if any(s[0] != "tag" for s in rem):  # pragma: no cover
                raise MalformedQla("bracket outside the computed span")
            return {s[1]: -c for s, c in rem.items()}

        for a in range(1, w):
            for p in by_w[a]:
                for q in by_w[w - a]:
                    v = coords(self._top_bracket(p, q, memo))
                    if v:
                        self.bracket[(p, q)] = v
        self.top = w


def lcs_quotient(
    lp: LiePresentation,
    i: int,
    preferred: Optional[dict] = None,
    cap: Optional[int] = None,
) -> GradedLieStage:
    """``L / Gamma_i L``: weights ``1 .. i-1`` with their brackets.

    ``preferred`` maps a weight to ``(name, Lie polynomial over source
    generator indices)`` pairs tried first when choosing basis elements.
    """
    hp = eliminate_linear(lp)
    pref = {}
    for w, items in (preferred or {}).items():
        for name, poly in items:
            expr = hp.express(poly)
            # a suggestion of the wrong weight (e.g. c_e when it is a generator) is skipped
            if expr and all(tree_weight(t) == w for t in expr):
                pref.setdefault(w, []).append((name, expr))
    nq = _NilpotentQuotient(hp, pref, default_cap() if cap is None else cap)
    return nq.stage(i)


def arrangement_preferred(lp: LiePresentation, g: OrderedGraph) -> dict:
    """Named basis elements for the dual of an arrangement model.

    ``c_e`` in weight two, ``k_{e,a} = [a_{h(e)}, c_e]`` in weight three, and
    ``k_{e,aa}``, ``k_{e,bb}``, ``k_{e,ab}``, ``k_C = [c_{e1}, c_{e2}]`` in
    weight four.  Letters carry the genus index for genus above one.
    """
    from .models import _gname
    from .duality import dual_name

    idx = {n: k for k, n in enumerate(lp.names)}
    one = Fraction(1)
    lab = g.labels
    out: dict = {2: [], 3: [], 4: []}

    def gens_at(v):
        res = []
        for n in lp.names:
            if n[0] in "ab" and (n[1:] == lab[v] or n.endswith("_" + lab[v])):
                res.append(n)
        return res

    tris = []
    for e1, e2, e3 in combinations(range(g.m), 3):
        if len(set(g.edges[e1]) | set(g.edges[e2]) | set(g.edges[e3])) == 3:
            tris.append((e1, e2, e3))
    for e in range(g.m):
        cname = dual_name(_gname(g, e))
        if cname not in idx:
            continue
        c = idx[cname]
        el = g.edge_label(e)
        out[2].append((cname, {c: one}))
        hs = gens_at(g.head(e))
        for n in hs:
            out[3].append((f"k{el}_{_letter(n)}", {(idx[n], c): one}))
        for n in hs:
            out[4].append((f"k{el}_{_letter(n)}{_letter(n)}", {(idx[n], (idx[n], c)): one}))
        for n1, n2 in combinations(hs, 2):
            if n1[0] == "a" and n2[0] == "b":
                out[4].append((f"k{el}_{_letter(n1)}{_letter(n2)}", {(idx[n1], (idx[n2], c)): one}))
    for e1, e2, e3 in tris:
        vs = sorted(set(g.edges[e1]) | set(g.edges[e2]) | set(g.edges[e3]))
        c1, c2 = idx[dual_name(_gname(g, e1))], idx[dual_name(_gname(g, e2))]
        out[4].append(("k" + "".join(lab[v] for v in vs), {(c1, c2): one}))
    return out


def _letter(name: str) -> str:
    """``a1`` -> ``a``; ``a2_1`` -> ``a2`` (genus index kept)."""
    return name.split("_")[0] if "_" in name else name[0]


# ------------------------------------------------------------- CE complexes


def ce_name(name: str) -> str:
    """Dual generator name in the standard complex: a -> x, b -> y, c -> g."""
    table = {"a": "x", "b": "y", "c": "g"}
    if name and name[0] in table:
        return table[name[0]] + name[1:]
    return name


@dataclass(frozen=True)
class CeStage:
    """``Omega(L / Gamma_i L)``: free exterior algebra on the dual basis."""

    i: int
    presentation: DgaPresentation
    lie: GradedLieStage = field(compare=False)

    @property
    def vt(self) -> VarTable:
        return self.presentation.vt

    def d(self, name: str) -> ExtPoly:
        return self.presentation.d(name)

    def generator_degrees(self) -> dict[str, int]:
        return {n: 1 for n in self.vt.names}

    def d_squared_failures(self) -> list[str]:
        p = self.presentation
        return [n for n in p.vt.names if not differential_raw(p, p.d(n)).is_zero()]

    def is_minimal(self) -> bool:
        return all(all(bin(m).count("1") != 1 for m in self.d(n).terms) for n in self.vt.names)

    def added_generators(self) -> list[str]:
        return [ce_name(self.lie.names[k]) for k, w in enumerate(self.lie.weights) if w == self.i - 1]


def ce_stage(stage: GradedLieStage) -> CeStage:
    """Differential ``d xi_r = sum_{p<q} c^r_{pq} xi_p xi_q`` dual to the bracket."""
    names = tuple(ce_name(n) for n in stage.names)
    vt = VarTable(names)
    diff: dict = {n: vt.zero() for n in names}
    for (p, q), v in stage.bracket.items():
        if p >= q:
            continue
        mono = vt.var(names[p]) * vt.var(names[q])
        for r, c in v.items():
            diff[names[r]] = diff[names[r]] + mono.scale(c)
    diff = {n: d for n, d in diff.items() if not d.is_zero()}
    weights = dict(zip(names, stage.weights))
    p = DgaPresentation(vt, (), diff, weights)
    return CeStage(stage.i, p, stage)


# -------------------------------------------------------------- cohomology


def dga_cohomology_dims(p: DgaPresentation, max_deg: int, max_weight: int) -> dict[tuple[int, int], int]:
    """``dim H^{k,w}`` for ``k <= max_deg`` and ``w <= max_weight`` by exact ranks."""
    from .extalg import normal_form, standard_monomials

    gb = p.gb
    std = standard_monomials(gb, max_deg + 1)
    slices: dict = {}
    for k, monos in std.items():
        for m in monos:
            w = p.monomial_weight(m)
            if w <= max_weight:
                slices.setdefault((k, w), []).append(m)

    def rank_of_d(k, w):
        src = slices.get((k, w), [])
        if not src:
            return 0
        e = Echelon()
        for m in src:
            img = normal_form(differential_raw(p, ExtPoly._raw(p.vt, {m: Fraction(1)})), gb)
            e.add(dict(img.terms))
        return len(e)

    ranks = {}
    out = {}
    for k in range(max_deg + 1):
        for w in range(max_weight + 1):
            ranks[(k, w)] = rank_of_d(k, w)
    for k in range(max_deg + 1):
        for w in range(max_weight + 1):
            dim = len(slices.get((k, w), []))
            out[(k, w)] = dim - ranks[(k, w)] - (ranks[(k - 1, w)] if k else 0)
    return out


@dataclass(frozen=True)
class QuasiIsoReport:
    equal: bool
    model: dict
    stage: dict
    mismatches: tuple


def check_stage_quasi_iso(p: DgaPresentation, stage: CeStage, max_deg: int = 3) -> QuasiIsoReport:
    """Compare cohomology of the model and of the stage in weights below ``i``."""
    w = stage.i - 1
    a = dga_cohomology_dims(p, max_deg, w)
    b = dga_cohomology_dims(stage.presentation, max_deg, w)
    bad = tuple(sorted(k for k in a if a[k] != b.get(k, 0)))
    return QuasiIsoReport(not bad, a, b, bad)


# ------------------------------------------------------------------ oracles


def lie_dims_from_series(h: TruncatedSeries) -> dict[int, int]:
    """Invert ``prod (1 - t^w)^(-d_w) = h`` one weight at a time."""
    dims: dict = {}
    for w in range(1, h.trunc + 1):
        dims[w] = h[w] - pbw_product(dims, h.trunc)[w]
    return dims


def lcs_dims_tensor(hp: HomogeneousPresentation, max_weight: int) -> dict[int, int]:
    """``dim FreeLie_w / I_w`` with Lyndon brackets expanded in the tensor algebra.

    ``I_w = R_w + sum_k [x_k, I_{w-1}]`` is the Lie ideal of the relations.
    Independent of the nilpotent quotient; exponential in the weight.
    """
    n = len(hp.kept)
    ideal_prev: list = []
    out = {}
    rels = {}
    for r in hp.relations:
        rels.setdefault(tree_weight(next(iter(r))), []).append(r)
    for w in range(1, max_weight + 1):
        e = Echelon()
        for r in rels.get(w, []):
            vec: dict = {}
            for t, c in r.items():
                for word, x in tree_tensor(t).items():
                    _add(vec, word, c * x)
            e.add(vec)
        for k in range(n):
            for v in ideal_prev:
                vec = {}
                for word, c in v.items():
                    _add(vec, (k,) + word, c)
                    _add(vec, word + (k,), -c)
                e.add(vec)
        ideal_prev = list(e.rows.values())
        out[w] = witt_dimension(n, w) - len(e)
    return out


def dual_hilbert_weighted(p: DgaPresentation, trunc: int) -> TruncatedSeries:
    """Hilbert series of the quadratic dual graded by the generators' weights."""
    vt = p.vt
    n = len(vt)
    wt = [p.weights[nm] for nm in vt.names]
    down = [[False] * n for _ in range(n)]
    for m in p.gb.leading_monomials:
        if bin(m).count("1") == 2:
            a, b = bits(m)
            down[b][a] = True
    f = [[0] * n for _ in range(trunc + 1)]
    for q in range(n):
        if wt[q] <= trunc:
            f[wt[q]][q] += 1
    for k in range(1, trunc + 1):
        for a in range(n):
            c = f[k][a]
            if not c:
                continue
            for q in range(n):
                if (a <= q or down[a][q]) and k + wt[q] <= trunc:
                    f[k + wt[q]][q] += c
    return TruncatedSeries([1] + [sum(f[k]) for k in range(1, trunc + 1)], trunc)


__all__ = [
    "DEFAULT_MAX_WEIGHT",
    "lyndon_words",
    "lyndon_tree",
    "witt_dimension",
    "free_lie_basis",
    "tree_tensor",
    "format_tree",
    "HomogeneousPresentation",
    "eliminate_linear",
    "GradedLieStage",
    "lcs_quotient",
    "arrangement_preferred",
    "CeStage",
    "ce_stage",
    "ce_name",
    "dga_cohomology_dims",
    "check_stage_quasi_iso",
    "QuasiIsoReport",
    "lie_dims_from_series",
    "lcs_dims_tensor",
    "dual_hilbert_weighted",
]

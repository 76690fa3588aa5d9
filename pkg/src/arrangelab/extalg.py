"""Exact sparse arithmetic in exterior algebras over the rationals.

A monomial is an ``int`` bitmask over variable ranks (bit ``i`` set means the
variable of rank ``i`` occurs); the canonical product lists variables in
increasing rank.  Monomials are compared degree-lexicographically: first by
degree, then by the largest variable where they differ, which for bitmasks of
equal popcount is plain integer comparison.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .errors import CapExceeded, NotQuadratic, ParseError, VarTableMismatch
from .series import TruncatedSeries


def mono_key(m: int) -> tuple[int, int]:
    return (m.bit_count(), m)


def mono_sign(a: int, b: int) -> int:
    """Sign of the product of canonical monomials ``a`` and ``b`` (0 if they overlap)."""
    if a & b:
        return 0
    inversions = 0
    while b:
        low = b & -b
        inversions += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return -1 if inversions & 1 else 1


def bits(m: int) -> list[int]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class VarTable:
    names: tuple[str, ...]
    _rank: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        object.__setattr__(self, "_rank", {n: i for i, n in enumerate(self.names)})

    def __len__(self) -> int:
        return len(self.names)

    def rank(self, name: str) -> int:
        try:
            return self._rank[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._rank

    def var(self, name: str) -> "ExtPoly":
        return ExtPoly(self, {1 << self.rank(name): Fraction(1)})

    def one(self) -> "ExtPoly":
        return ExtPoly(self, {0: Fraction(1)})

    def zero(self) -> "ExtPoly":
        return ExtPoly(self, {})

    def monomial(self, names: Iterable[str]) -> "ExtPoly":
        """Product of the named variables in the given order (sign included)."""
        p = self.one()
        for n in names:
            p = p * self.var(n)
        return p

    def mono_names(self, m: int) -> list[str]:
        return [self.names[i] for i in bits(m)]

    def mono_str(self, m: int) -> str:
        return "^".join(self.mono_names(m)) if m else "1"


class ExtPoly:
    """Element of the exterior algebra on a :class:`VarTable`.  Treat as immutable."""

    __slots__ = ("vt", "terms")

    def __init__(self, vt: VarTable, terms: Mapping[int, Fraction]):
        self.vt = vt
        self.terms = {m: Fraction(c) for m, c in terms.items() if c != 0}

    @classmethod
    def _raw(cls, vt: VarTable, terms: dict) -> "ExtPoly":
        p = cls.__new__(cls)
        p.vt = vt
        p.terms = terms
        return p

    def _check(self, other: "ExtPoly"):
        if other.vt != self.vt:
            raise VarTableMismatch("operands live in different exterior algebras")

    def __add__(self, other: "ExtPoly") -> "ExtPoly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return ExtPoly._raw(self.vt, out)

    def __neg__(self) -> "ExtPoly":
        return ExtPoly._raw(self.vt, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ExtPoly") -> "ExtPoly":
        return self + (-other)

    def scale(self, c) -> "ExtPoly":
        c = Fraction(c)
        if c == 0:
            return self.vt.zero()
        return ExtPoly._raw(self.vt, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ExtPoly):
            return self.scale(other)
        self._check(other)
        out: dict[int, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                s = mono_sign(a, b)
                if s:
                    m = a | b
                    v = out.get(m, 0) + (ca * cb if s > 0 else -ca * cb)
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return ExtPoly._raw(self.vt, out)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtPoly):
            return self.vt == other.vt and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {m.bit_count() for m in self.terms}

    @property
    def degree(self) -> int:
        return max((m.bit_count() for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, d: int) -> "ExtPoly":
        return ExtPoly._raw(self.vt, {m: c for m, c in self.terms.items() if m.bit_count() == d})

    def leading_monomial(self) -> int:
        return max(self.terms, key=mono_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def monic(self) -> "ExtPoly":
        return self.scale(1 / self.leading_coefficient())

    def sorted_terms(self) -> list[tuple[int, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def __repr__(self) -> str:
        return f"ExtPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def multiply(a: ExtPoly, b: ExtPoly) -> ExtPoly:
    return a * b


def mono_times_poly(w: int, p: Mapping[int, Fraction], scale: Fraction) -> dict:
    """``scale * w * p`` for a monomial ``w``, as a term dict."""
    out = {}
    for m, c in p.items():
        s = mono_sign(w, m)
        if s:
            out[w | m] = scale * c if s > 0 else -scale * c
    return out


# ---------------------------------------------------------------- Groebner


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic elements sorted by leading monomial."""

    vt: VarTable
    polys: tuple[ExtPoly, ...]
    reduced_to_quadratic: bool = False
    order: str = "deglex"
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def leading_monomials(self) -> tuple[int, ...]:
        return tuple(p.leading_monomial() for p in self.polys)

    def max_degree(self) -> int:
        return max((p.degree for p in self.polys), default=0)

    def reducer(self, m: int) -> Optional[int]:
        memo = self._memo
        if m in memo:
            return memo[m]
        found = None
        for i, p in enumerate(self.polys):
            lm = p.leading_monomial()
            if lm & m == lm:
                found = i
                break
        memo[m] = found
        return found

    def contains(self, f: ExtPoly) -> bool:
        return normal_form(f, self).is_zero()

    def __len__(self) -> int:
        return len(self.polys)


def _reduce_terms(terms: dict, polys: Sequence[tuple[int, dict]], find) -> dict:
    """Full reduction of a term dict; ``find(m)`` returns a reducer index or None."""
    work = dict(terms)
    heap = [(-m.bit_count(), -m) for m in work]
    heapq.heapify(heap)
    result = {}
    while heap:
        _, negm = heapq.heappop(heap)
        m = -negm
        c = work.pop(m, None)
        if c is None or c == 0:
            continue
        idx = find(m)
        if idx is None:
            result[m] = c
            continue
        lm, g = polys[idx]
        w = m ^ lm
        s = mono_sign(w, lm)
        factor = -c if s > 0 else c
        for mm, cc in g.items():
            if mm == lm:
                continue
            s2 = mono_sign(w, mm)
            if not s2:
                continue
            key = w | mm
            v = work.get(key)
            add = factor * cc if s2 > 0 else -factor * cc
            if v is None:
                work[key] = add
                heapq.heappush(heap, (-key.bit_count(), -key))
            else:
                v += add
                work[key] = v
    return result


def normal_form(f: ExtPoly, gb: GroebnerBasis) -> ExtPoly:
    """Remainder of ``f`` supported on standard monomials."""
    if f.vt != gb.vt:
        raise VarTableMismatch("polynomial and basis live in different algebras")
    if not gb.polys:
        return f
    polys = [(p.leading_monomial(), p.terms) for p in gb.polys]
    return ExtPoly._raw(f.vt, _reduce_terms(f.terms, polys, gb.reducer))


class _Builder:
    """Mutable state of one Buchberger run."""

    def __init__(self, vt: VarTable, cap: int, criteria: bool = True):
        self.vt = vt
        self.cap = cap
        self.criteria = criteria
        self.done: set = set()  # S-pairs treated or discarded
        self.by_lm: dict = {}  # leading monomial -> element indices
        self.polys: list[tuple[int, dict]] = []
        self.alive: list[bool] = []
        self.homogeneous: list[bool] = []
        self.pairs: list = []
        self.processed = 0
        self._find_cache: dict = {}

    def find(self, m: int) -> Optional[int]:
        # elements are only ever appended, so a scan can resume where it stopped
        hit = self._find_cache.get(m)
        if hit is not None and hit[0] is not None:
            return hit[0]
        start = 0 if hit is None else hit[1]
        polys = self.polys
        for i in range(start, len(polys)):
            lm = polys[i][0]
            if lm & m == lm and self.alive[i]:
                self._find_cache[m] = (i, i)
                return i
        self._find_cache[m] = (None, len(polys))
        return None

    def reduce(self, terms: dict) -> dict:
        return _reduce_terms(terms, self.polys, self.find)

    def push_pair(self, key, item):
        heapq.heappush(self.pairs, (key, len(self.pairs), item))

    def add(self, terms: dict):
        r = self.reduce(terms)
        if not r:
            return
        lm = max(r, key=mono_key)
        lc = r[lm]
        g = {m: c / lc for m, c in r.items()}
        idx = len(self.polys)
        self.polys.append((lm, g))
        self.alive.append(True)
        self.by_lm.setdefault(lm, []).append(idx)
        homog = len({m.bit_count() for m in g}) == 1
        self.homogeneous.append(homog)
        for i, (lm2, _) in enumerate(self.polys[:-1]):
            if not self.alive[i]:
                continue
            if self.criteria and lm & lm2 == 0 and homog and self.homogeneous[i]:
                # coprime leading monomials of homogeneous elements: the S-polynomial
                # is -r_j f_i + e r_i f_j with all terms below the lcm
                self.done.add((i, idx))
                continue
            self.push_pair(mono_key(lm | lm2), ("s", i, idx))
        for v in bits(lm):
            self.push_pair(mono_key(lm | (1 << v)), ("v", idx, v))
        degs = {m.bit_count() for m in g}
        if len(degs) > 1:
            # two-sided ideal: right multiples of inhomogeneous elements
            for v in range(len(self.vt)):
                self.push_pair((lm.bit_count() + 1, 0), ("r", idx, v))

    def _chain(self, i: int, j: int) -> bool:
        """Some ``k`` with ``LM_k | lcm`` whose pairs with ``i`` and ``j`` are done."""
        lcm = self.polys[i][0] | self.polys[j][0]
        done = self.done
        sub = lcm
        while sub:  # every divisor of the lcm
            for k in self.by_lm.get(sub, ()):
                if k in (i, j) or not self.alive[k]:
                    continue
                if (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
                    return True
            sub = (sub - 1) & lcm
        return False

    def s_poly(self, i: int, j: int) -> dict:
        lm1, g1 = self.polys[i]
        lm2, g2 = self.polys[j]
        lcm = lm1 | lm2
        w1, w2 = lcm ^ lm1, lcm ^ lm2
        a = mono_times_poly(w1, g1, Fraction(mono_sign(w1, lm1)))
        b = mono_times_poly(w2, g2, Fraction(mono_sign(w2, lm2)))
        for m, c in b.items():
            v = a.get(m, 0) - c
            if v:
                a[m] = v
            else:
                a.pop(m, None)
        return a

    def run(self):
        while self.pairs:
            _, _, item = heapq.heappop(self.pairs)
            self.processed += 1
            if self.processed > self.cap:
                raise CapExceeded(f"Buchberger exceeded {self.cap} pairs")
            kind = item[0]
            if kind == "s":
                _, i, j = item
                self.done.add((i, j))
                if self.criteria and self._chain(i, j):
                    continue
                terms = self.s_poly(i, j)
            elif kind == "v":
                _, i, v = item
                terms = mono_times_poly(1 << v, self.polys[i][1], Fraction(1))
            else:
                _, i, v = item
                g = self.polys[i][1]
                terms = {}
                for m, c in g.items():
                    s = mono_sign(m, 1 << v)
                    if s:
                        terms[m | (1 << v)] = c * s
            if terms:
                self.add(terms)


def _autoreduce(vt: VarTable, polys: Sequence[tuple[int, dict]]) -> list[ExtPoly]:
    lms = [lm for lm, _ in polys]
    keep = []
    for i, (lm, g) in enumerate(polys):
        dominated = any(
            j != i and (lms[j] & lm == lms[j]) and (lms[j] != lm or j < i) for j in range(len(polys))
        )
        if not dominated:
            keep.append((lm, g))
    keep.sort(key=lambda t: mono_key(t[0]))
    out = []
    for idx, (lm, g) in enumerate(keep):
        others = [k for k in keep if k[0] != lm]

        def find(m, others=others):
            for j, (lm2, _) in enumerate(others):
                if lm2 & m == lm2:
                    return j
            return None

        tail = {m: c for m, c in g.items() if m != lm}
        red = _reduce_terms(tail, others, find)
        red[lm] = Fraction(1)
        out.append(ExtPoly._raw(vt, red))
    return out


def buchberger(
    gens: Iterable[ExtPoly],
    vt: Optional[VarTable] = None,
    cap: Optional[int] = None,
    criteria: bool = True,
) -> GroebnerBasis:
    """Reduced Groebner basis of the two-sided ideal generated by ``gens``.

    ``criteria`` enables the coprime and chain criteria for discarding
    S-pairs; switching it off gives the plain algorithm (same result, slower).
    """
    from .caps import default_cap

    gens = list(gens)
    if vt is None:
        if not gens:
            raise ValueError("need a VarTable when there are no generators")
        vt = gens[0].vt
    for g in gens:
        if g.vt != vt:
            raise VarTableMismatch("generators live in different algebras")
    b = _Builder(vt, default_cap() if cap is None else cap, criteria)
    # queue every generator before treating pairs, so that pairs are handled
    # degree by degree for the whole ideal at once
    for g in sorted(gens, key=lambda p: (p.degree, len(p.terms))):
        b.add(dict(g.terms))
    b.run()
    polys = [p for p, alive in zip(b.polys, b.alive) if alive]
    return GroebnerBasis(vt, tuple(_autoreduce(vt, polys)))


def standard_monomials(gb: GroebnerBasis, max_deg: Optional[int] = None) -> dict[int, list[int]]:
    """Monomials not divisible by any leading monomial, grouped by degree."""
    n = len(gb.vt)
    max_deg = n if max_deg is None else max_deg
    lms = gb.leading_monomials
    out: dict[int, list[int]] = {d: [] for d in range(max_deg + 1)}

    def grow(start, m, d):
        out[d].append(m)
        if d == max_deg:
            return
        for v in range(start, n):
            m2 = m | (1 << v)
            if any(l & m2 == l for l in lms):
                continue
            grow(v + 1, m2, d + 1)

    grow(0, 0, 0)
    for d in out:
        out[d].sort()
    return out


def hilbert_series(gb: GroebnerBasis, truncation: int) -> TruncatedSeries:
    sm = standard_monomials(gb, min(truncation, len(gb.vt)))
    return TruncatedSeries([len(sm.get(k, [])) for k in range(truncation + 1)])


def reduce_to_quadratic(gb: GroebnerBasis) -> GroebnerBasis:
    """The same (reduced) basis flagged quadratic, or :class:`NotQuadratic`.

    A reduced basis has leading monomials equal to the minimal generators of the
    initial ideal, so a quadratic basis exists exactly when every element of the
    reduced basis has degree at most two.
    """
    high = [p.degree for p in gb.polys if p.degree > 2]
    if high:
        raise NotQuadratic(min(high))
    return GroebnerBasis(gb.vt, gb.polys, reduced_to_quadratic=True, order=gb.order)


# ------------------------------------------------------------- dense oracle


def quotient_dims_dense(gens: Sequence[ExtPoly], vt: VarTable, max_deg: int) -> list[int]:
    """Quotient dimensions by linear algebra on each degree slice of the ideal.

    The ideal's degree-``d`` slice is spanned by ``w * g_k`` for monomials ``w``
    and the homogeneous components ``g_k`` (all generators are assumed
    homogeneous).  Independent of the Groebner machinery; exponential.
    """
    from math import comb

    from .linalg import rank

    n = len(vt)
    dims = []
    for d in range(max_deg + 1):
        rows = []
        for g in gens:
            k = g.degree
            if k > d:
                continue
            for ws in combinations(range(n), d - k):
                w = 0
                for v in ws:
                    w |= 1 << v
                row = mono_times_poly(w, g.terms, Fraction(1))
                if row:
                    rows.append(row)
        dims.append(comb(n, d) - rank(rows))
    return dims


# ------------------------------------------------------------ text format

_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def format_poly(p: ExtPoly) -> str:
    """Render as e.g. ``3/2*x1^y2 - g12^g13``; ``0`` for the zero element."""
    if p.is_zero():
        return "0"
    parts = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = p.vt.mono_str(m)
        if m == 0:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def parse_poly(text: str, vt: VarTable) -> ExtPoly:
    """Inverse of :func:`format_poly`; wedge factors may appear in any order."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    if s == "0":
        return vt.zero()
    total = vt.zero()
    pos = 0
    tokens = re.findall(r"[+-]|[^+-]+", s)
    sign = 1
    expect_term = True
    for tok in tokens:
        tok = tok.strip()
        if not tok:
            continue
        if tok in "+-":
            sign = sign * (-1 if tok == "-" else 1)
            continue
        coef = Fraction(1)
        body = tok
        if "*" in tok:
            cs, body = tok.split("*", 1)
            try:
                coef = Fraction(cs.strip())
            except ValueError as exc:
                raise ParseError(f"bad coefficient {cs!r}") from exc
            body = body.strip()
        elif re.fullmatch(r"\d+(/\d+)?", tok):
            coef, body = Fraction(tok), "1"
        if body == "1":
            term = vt.one()
        else:
            try:
                term = vt.monomial(n.strip() for n in body.split("^"))
            except KeyError as exc:
                raise ParseError(str(exc)) from exc
        total = total + term.scale(sign * coef)
        sign = 1
        expect_term = False
        pos += 1
    if expect_term:
        raise ParseError(f"no terms in {text!r}")
    return total

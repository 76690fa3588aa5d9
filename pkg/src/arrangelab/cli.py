"""Command line front end.

Every command reads a graph file and a curve type and prints a report.  The
``structured`` format is line oriented and starts with the header
``arrangelab-v1``; ``text`` is the same content laid out for reading.

Exit codes: 0 success, 2 a failed invariant or certificate, 3 bad input.
"""

from __future__ import annotations

import argparse
import os
import random
import re
import sys
from dataclasses import dataclass
from typing import Callable, Optional

from . import __version__
from .errors import ArrangeLabError, InvariantFailure, NotPerfectEliminationOrder, ParseError
from .extalg import ExtPoly, buchberger, format_poly, normal_form, standard_monomials
from .graphcomb import OrderedGraph, check_chordal, parse_graph, perfect_elimination_ordering
from .models import CurveType, apply_differential, build_model, differential_raw

HEADER = "arrangelab-v1"


@dataclass(frozen=True)
class RunConfig:
    graph: OrderedGraph
    curve: CurveType
    trunc: int = 10
    max_weight: int = 6
    stage: int = 4
    fmt: str = "text"
    order_declared: bool = False
    seed: int = 0  # random spot checks in verify-all


class Report:
    """Collects ``key value`` lines and sections; renders either format."""

    def __init__(self, command: str, cfg: RunConfig):
        self.lines: list[tuple[str, str]] = []
        self.command = command
        self.cfg = cfg

    def add(self, key: str, value="") -> None:
        self.lines.append((key, str(value)))

    def render(self) -> str:
        if self.cfg.fmt == "structured":
            out = [HEADER, f"command {self.command}", f"curve {self.cfg.curve}"]
            out += [f"{k} {v}".rstrip() for k, v in self.lines]
            return "\n".join(out) + "\n"
        out = [f"{self.command} ({self.cfg.curve})"]
        width = max((len(k) for k, _ in self.lines), default=0)
        out += [f"  {k.ljust(width)}  {v}".rstrip() for k, v in self.lines]
        return "\n".join(out) + "\n"


# ------------------------------------------------------------------ helpers


def _declares_order(text: str) -> bool:
    return re.search(r"^\s*vertices\s*:", text, re.M | re.I) is not None


def load_graph(path: str) -> tuple[OrderedGraph, bool]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_graph(text), _declares_order(text)


def prepare_order(g: OrderedGraph, declared: bool) -> OrderedGraph:
    """Keep a declared order (it must be a PEO when the graph is chordal);
    otherwise keep the default order if it is a PEO and fall back to maximum
    cardinality search."""
    chordal, _ = check_chordal(g)
    if not chordal or g.is_perfect_elimination_order():
        return g
    if declared:
        raise NotPerfectEliminationOrder("declared vertex order is not a perfect elimination order")
    return g.with_order(perfect_elimination_ordering(g))


def _series(s) -> str:
    return " ".join(str(c) for c in s.coeffs)


# ----------------------------------------------------------------- commands


def cmd_build(cfg: RunConfig) -> Report:
    rep = Report("build", cfg)
    p = build_model(cfg.graph, cfg.curve)
    rep.add("vertices", " ".join(cfg.graph.labels))
    rep.add("generators", " ".join(p.vt.names))
    rep.add("weights", " ".join(f"{n}:{p.weights[n]}" for n in p.vt.names))
    rep.add("relations", len(p.relations))
    for r in p.relations:
        rep.add("relation", format_poly(r))
    for n in p.vt.names:
        if not p.d(n).is_zero():
            rep.add("differential", f"{n} = {format_poly(p.d(n))}")
    return rep


def cmd_koszul(cfg: RunConfig) -> Report:
    from .koszul import certify_koszul

    rep = Report("koszul", cfg)
    p = build_model(cfg.graph, cfg.curve)
    gb = buchberger(p.relations, p.vt)
    rep.add("gb_size", len(gb))
    rep.add("gb_max_degree", gb.max_degree())
    cert = certify_koszul(p, cfg.trunc, gb=gb)
    rep.add("quadratic", "yes")
    rep.add("initial_ideal", " ".join(cert.initial_ideal_names()))
    if cert.initial_ideal_matches is not None:
        rep.add("initial_ideal_predicted", "match" if cert.initial_ideal_matches else "MISMATCH")
    rep.add("hilbert", _series(cert.hilbert))
    rep.add("dual_hilbert", _series(cert.dual_hilbert))
    rep.add("identity_checked_to", cert.identity_checked_to)
    return rep


def _lie(cfg: RunConfig):
    from .duality import dualize, quadratic_data, to_lie_presentation

    p = build_model(cfg.graph, cfg.curve)
    q = quadratic_data(p)
    return p, q, to_lie_presentation(dualize(q))


def cmd_dualize(cfg: RunConfig) -> Report:
    from .duality import verify_against_reference_presentation

    rep = Report("dualize", cfg)
    p, q, lp = _lie(cfg)
    rep.add("generators", " ".join(lp.names))
    rep.add("relations", len(lp.relations))
    for line in lp.format():
        rep.add("relation", line)
    if cfg.curve.kind == "projective":
        r = verify_against_reference_presentation(lp, cfg.graph, cfg.curve.genus)
        rep.add("reference_span", "equal" if r.equal else "DIFFERENT")
        if not r.equal:
            raise InvariantFailure("computed relations do not span the reference list")
    return rep


def cmd_minimal_model(cfg: RunConfig) -> Report:
    from .liealg import arrangement_preferred, ce_stage, lcs_quotient

    rep = Report("minimal-model", cfg)
    p, q, lp = _lie(cfg)
    st = lcs_quotient(lp, cfg.stage, arrangement_preferred(lp, cfg.graph))
    ce = ce_stage(st)
    rep.add("stage", cfg.stage)
    rep.add("generators", len(ce.vt.names))
    for n in ce.vt.names:
        rep.add("generator", f"{n} degree 1 weight {ce.presentation.weights[n]}")
    for n in ce.vt.names:
        d = ce.d(n)
        if not d.is_zero():
            rep.add("d", f"{n} = {format_poly(d)}")
    bad = ce.d_squared_failures()
    rep.add("d_squared_zero", "yes" if not bad else "NO " + " ".join(bad))
    if bad:
        raise InvariantFailure("d^2 != 0 on " + " ".join(bad))
    return rep


def cmd_lcs_dims(cfg: RunConfig) -> Report:
    from .liealg import dual_hilbert_weighted, lcs_quotient, lie_dims_from_series

    rep = Report("lcs-dims", cfg)
    p, q, lp = _lie(cfg)
    st = lcs_quotient(lp, cfg.max_weight + 1)
    dims = st.dims()
    pbw = lie_dims_from_series(dual_hilbert_weighted(p, cfg.max_weight))
    for w in range(1, cfg.max_weight + 1):
        rep.add(f"weight {w}", dims[w])
    ok = all(dims[w] == pbw[w] for w in dims)
    rep.add("pbw_consistent", "yes" if ok else "NO")
    if not ok:
        raise InvariantFailure("lower central series dimensions disagree with the dual Hilbert series")
    return rep


def _random_element(p, rng: random.Random, degree: int) -> ExtPoly:
    terms = {}
    n = len(p.vt)
    if n < degree:
        return p.vt.zero()
    for _ in range(3):
        m = sum(1 << i for i in rng.sample(range(n), degree))
        terms[m] = rng.randint(-3, 3)
    return ExtPoly(p.vt, terms)


def _checks(cfg: RunConfig) -> list[tuple[str, Callable[[], Optional[str]]]]:
    """Named checks; each returns None on success or a short failure note."""
    g, curve = cfg.graph, cfg.curve
    p = build_model(g, curve)
    chordal = check_chordal(g)[0]
    state: dict = {}

    def d_squared():
        for n in p.vt.names:
            if not apply_differential(p, apply_differential(p, p.vt.var(n))).is_zero():
                return f"d^2({n}) != 0"

    def d_ideal():
        for r in p.relations:
            if not normal_form(differential_raw(p, r), p.gb).is_zero():
                return f"d({format_poly(r)}) not in the ideal"

    def leibniz():
        names = p.vt.names
        for a in names:
            for b in names:
                x, y = p.vt.var(a), p.vt.var(b)
                lhs = apply_differential(p, x * y)
                rhs = normal_form(p.d(a) * y - x * p.d(b), p.gb)
                if lhs != rhs:
                    return f"Leibniz fails on {a}, {b}"
        # products of random degree-one and degree-two elements
        rng = random.Random(cfg.seed)
        for _ in range(8):
            f = _random_element(p, rng, 1)
            h = _random_element(p, rng, 2)
            lhs = apply_differential(p, f * h)
            rhs = normal_form(differential_raw(p, f) * h - f * differential_raw(p, h), p.gb)
            if lhs != rhs:
                return f"Leibniz fails on ({format_poly(f)}) * ({format_poly(h)})"

    def koszul():
        from .koszul import certify_koszul

        state["cert"] = certify_koszul(p, cfg.trunc, gb=p.gb)
        if state["cert"].initial_ideal_matches is False:
            return "initial ideal differs from the predicted one"

    def nbc_basis():
        from .koszul import nbc_monomial_basis

        if nbc_monomial_basis(p) != standard_monomials(p.gb):
            return "nbc monomials differ from standard monomials"

    def flats_sum():
        from .extalg import hilbert_series
        from .koszul import flat_decomposition

        n = len(p.vt)
        if flat_decomposition(g, curve, n).total().coeffs != hilbert_series(p.gb, n).coeffs:
            return "flat decomposition differs from the Hilbert series"

    def span():
        from .duality import verify_against_reference_presentation

        state["lie"] = _lie(cfg)[2]
        r = verify_against_reference_presentation(state["lie"], g, curve.genus)
        if not r.equal:
            return f"{len(r.missing)} missing, {len(r.extra)} extra relations"

    def pbw():
        from .liealg import dual_hilbert_weighted, lcs_quotient, lie_dims_from_series

        lp = state.get("lie") or _lie(cfg)[2]
        dims = lcs_quotient(lp, cfg.max_weight + 1).dims()
        series = lie_dims_from_series(dual_hilbert_weighted(p, cfg.max_weight))
        if any(dims[w] != series[w] for w in dims):
            return f"L dims {dims} vs series {series}"

    def stages():
        from .liealg import arrangement_preferred, ce_stage, check_stage_quasi_iso, lcs_quotient

        lp = state.get("lie") or _lie(cfg)[2]
        for i in range(2, cfg.stage + 1):
            ce = ce_stage(lcs_quotient(lp, i, arrangement_preferred(lp, g)))
            if ce.d_squared_failures():
                return f"d^2 != 0 at stage {i}"
            if not ce.is_minimal():
                return f"stage {i} not minimal"
            r = check_stage_quasi_iso(p, ce, 3)
            if not r.equal:
                return f"stage {i} cohomology differs at {r.mismatches}"

    out = [("d_squared_zero", d_squared), ("d_preserves_ideal", d_ideal), ("leibniz", leibniz), ("koszul", koszul)]
    if chordal:
        out += [("nbc_basis", nbc_basis), ("flat_decomposition", flats_sum)]
    if curve.kind == "projective":
        out.append(("presentation_span", span))
    out.append(("pbw_consistency", pbw))
    if curve.kind == "projective":
        out.append(("stage_quasi_iso", stages))
    return out


def cmd_verify_all(cfg: RunConfig) -> Report:
    rep = Report("verify-all", cfg)
    failed = []
    for name, fn in _checks(cfg):
        try:
            note = fn()
        except InvariantFailure as exc:
            note = str(exc) or type(exc).__name__
        if note:
            failed.append(name)
            rep.add(f"check {name}", f"FAIL {note}")
        else:
            rep.add(f"check {name}", "PASS")
    rep.add("result", "PASS" if not failed else "FAIL " + " ".join(failed))
    rep.failed = failed  # type: ignore[attr-defined]
    return rep


COMMANDS = {
    "build": cmd_build,
    "koszul": cmd_koszul,
    "dualize": cmd_dualize,
    "minimal-model": cmd_minimal_model,
    "lcs-dims": cmd_lcs_dims,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arrangelab", description="Models, Koszul duality and minimal models of graphic arrangements.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--graph", required=True, help="graph file ('vertices:' and 'edge:' lines)")
        sp.add_argument("--curve", default="rational", help="rational | toric | genus:G")
        sp.add_argument("--trunc", type=int, default=10, help="series truncation degree N (>= 2)")
        sp.add_argument("--max-weight", type=int, default=6, help="largest Lie weight")
        sp.add_argument("--stage", type=int, default=4, help="stage i of L / Gamma_i L")
        sp.add_argument("--format", choices=("text", "structured"), default="text")
        sp.add_argument("--cap", type=int, default=None, help="enumeration cap (overrides ARRANGELAB_CAP)")
        sp.add_argument("--out", default=None, help="write the report here instead of stdout")
        sp.add_argument("--seed", type=int, default=0, help="seed for the random spot checks of verify-all")
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.trunc < 2:
            raise ParseError("--trunc must be at least 2")
        if args.stage < 1 or args.max_weight < 1:
            raise ParseError("--stage and --max-weight must be positive")
        if args.cap is not None:
            os.environ["ARRANGELAB_CAP"] = str(args.cap)
        g, declared = load_graph(args.graph)
        cfg = RunConfig(
            prepare_order(g, declared),
            CurveType.parse(args.curve),
            args.trunc,
            args.max_weight,
            args.stage,
            args.format,
            declared,
            args.seed,
        )
        rep = COMMANDS[args.command](cfg)
    except ArrangeLabError as exc:
        msg = str(exc)
        name = type(exc).__name__
        print(f"error: {msg if msg.startswith(name) else f'{name}: {msg}'}", file=sys.stderr)
        return exc.exit_code
    text = rep.render()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 2 if getattr(rep, "failed", None) else 0

from fractions import Fraction
from itertools import product

import pytest

from arrangelab.duality import (
    LieRelation,
    QlaPresentation,
    dual_dims_dense,
    dual_name,
    dualize,
    format_lie_relation,
    reference_lie_relations,
    perp_dense,
    quadratic_data,
    round_trip,
    to_lie_presentation,
    verify_against_reference_presentation,
)
from arrangelab.errors import MalformedQla, NotAntisymmetric, NotQuadraticInput
from arrangelab.extalg import VarTable
from arrangelab.graphcomb import OrderedGraph, complete_graph, fan_graph, path_graph
from arrangelab.linalg import Echelon, kernel, rank, same_span
from arrangelab.models import (
    DgaPresentation,
    build_elliptic,
    build_orlik_solomon,
    build_projective,
    build_toric,
    punctured_elliptic_model,
)

from conftest import single_vertex


def _lie(p):
    return to_lie_presentation(dualize(quadratic_data(p)))


# -- small linear-algebra helpers --------------------------------------------

def test_echelon_and_kernel():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {2: Fraction(1, 3)}]
    assert rank(rows) == 2
    ker = kernel(rows, [0, 1, 2])
    assert len(ker) == 1
    (k,) = ker
    assert sum(k.get(c, 0) * v for c, v in rows[0].items()) == 0
    assert same_span([{0: 1}, {1: 1}], [{0: 1, 1: 1}, {0: 1, 1: -1}])
    e = Echelon()
    e.add({0: 1, 1: 1})
    assert e.contains({0: 3, 1: 3}) and not e.contains({0: 1})


# -- punctured elliptic curve ------------------------------------------------

def test_punctured_elliptic_quadratic_data():
    q = quadratic_data(punctured_elliptic_model())
    assert q.n == 3
    assert q.dim_j() == 8
    # (V (x) V) / J has dimension dim A^2 = 1
    assert q.n ** 2 - q.dim_j() == 1


def test_punctured_elliptic_dual_is_free_on_a_b():
    qla = dualize(quadratic_data(punctured_elliptic_model()))
    assert qla.names == ("a", "b", "c")
    lp = to_lie_presentation(qla)
    assert lp.format() == ["[a, b] - c = 0"]
    ((alpha, phi),) = qla.relations()
    assert alpha == {(0, 1): 1, (1, 0): -1}
    assert phi == {2: 1}


def test_exterior_on_one_generator():
    vt = VarTable(("x",))
    q = quadratic_data(DgaPresentation(vt, (), {}, {"x": 1}))
    assert q.j_span == ({(0, 0): 1},)
    qla = dualize(q)
    assert qla.perp == ()
    assert dual_dims_dense(qla, 4) == [1, 1, 1, 1, 1]


def test_dual_names():
    assert [dual_name(n) for n in ("x1", "y2", "g12", "x2_3", "z")] == ["a1", "b2", "c12", "a2_3", "z*"]


# -- pairing and dimension invariants -----------------------------------------

MODELS = {
    "punctured": punctured_elliptic_model(),
    "os-k3": build_orlik_solomon(complete_graph(3)),
    "os-k4": build_orlik_solomon(complete_graph(4)),
    "toric-k3": build_toric(complete_graph(3)),
    "ell-point": build_elliptic(single_vertex()),
    "ell-edge": build_elliptic(path_graph(2)),
    "ell-k3": build_elliptic(complete_graph(3)),
    "g2-k3": build_projective(complete_graph(3), 2),
    "g3-edge": build_projective(path_graph(2), 3),
}


@pytest.mark.parametrize("name", MODELS)
def test_dimension_and_round_trip(name):
    q = quadratic_data(MODELS[name])
    qla = dualize(q)
    assert q.dim_j() + len(qla.perp) == q.n ** 2
    dense = perp_dense(q)
    assert len(dense) == len(qla.perp)
    assert same_span(dense, qla.perp)
    assert round_trip(q, qla)


@pytest.mark.parametrize("name", ["os-k3", "os-k4", "toric-k3"])
def test_zero_differential_gives_homogeneous_dual(name):
    qla = dualize(quadratic_data(MODELS[name]))
    assert all(not ph for ph in qla.phi)
    lp = to_lie_presentation(qla)
    assert all(not r.linear for r in lp.relations)


def test_abelian_when_no_relations():
    vt = VarTable(("x", "y", "z"))
    lp = _lie(DgaPresentation(vt, (), {}, {n: 1 for n in vt.names}))
    # J = S^2, so J^perp = Lambda^2: every bracket vanishes
    assert sorted(lp.format()) == ["[a, b] = 0", "[a, z*] = 0", "[b, z*] = 0"]
    assert len(lp.relations) == 3 and all(len(r.brackets) == 1 for r in lp.relations)


# -- comparison with the explicit relation list -----------------------------

CASES = [
    (single_vertex(), 1),
    (single_vertex(), 2),
    (path_graph(2), 1),
    (path_graph(2), 2),
    (complete_graph(3), 1),
    (complete_graph(3), 2),
    (complete_graph(4), 1),
    (complete_graph(4), 2),
    (fan_graph(4), 1),
]


@pytest.mark.parametrize("g,genus", CASES, ids=[f"n{g.n}m{g.m}-g{k}" for g, k in CASES])
def test_span_matches_explicit_list(g, genus):
    p = build_elliptic(g) if genus == 1 else build_projective(g, genus)
    lp = _lie(p)
    rep = verify_against_reference_presentation(lp, g, genus)
    assert rep.equal, (rep.missing, rep.extra)
    assert rep.computed_dim == rep.reference_dim == len(lp.relations)


def test_k3_elliptic_named_relations(k3):
    lp = _lie(build_elliptic(k3))
    names = lp.names
    idx = {n: i for i, n in enumerate(names)}
    e = Echelon()
    for r in lp.relations:
        e.add(r.vector())
    # [b_h, a_t] = c_e and [b_t, a_h] = c_e for the edge 12
    for u, v in (("b2", "a1"), ("b1", "a2")):
        r = LieRelation.make({(idx[u], idx[v]): 1}, {idx["c12"]: 1})
        assert e.contains(r.vector())
    # [a_1, b_1] = c12 + c13
    r = LieRelation.make({(idx["a1"], idx["b1"]): 1}, {idx["c12"]: 1, idx["c13"]: 1})
    assert e.contains(r.vector())
    assert format_lie_relation(names, LieRelation.make({(idx["b1"], idx["a2"]): 1}, {idx["c12"]: 1})) == "[b1, a2] - c12 = 0"


def test_single_edge_relation_classes():
    g = path_graph(2)
    lp = _lie(build_elliptic(g))
    ref = reference_lie_relations(g, 1, lp.names)
    # one edge: no pair of edges, so no relation among the c's
    for r in ref:
        for (i, j), _ in r.brackets:
            assert not (lp.names[i].startswith("c") and lp.names[j].startswith("c"))
    rep = verify_against_reference_presentation(lp, g, 1)
    assert rep.equal


def test_edgeless_graph():
    g = OrderedGraph.from_edges(["1", "2"], [])
    lp = _lie(build_elliptic(g))
    rep = verify_against_reference_presentation(lp, g, 1)
    assert rep.equal
    assert all(not r.linear for r in lp.relations)


# -- errors --------------------------------------------------------------------

def test_not_quadratic_input(c4):
    with pytest.raises(NotQuadraticInput):
        quadratic_data(build_orlik_solomon(c4))


def test_not_antisymmetric():
    bad = QlaPresentation(("a", "b"), ({(0, 1): Fraction(1), (1, 0): Fraction(1)},), ({},), (3,))
    with pytest.raises(NotAntisymmetric):
        to_lie_presentation(bad)
    diag = QlaPresentation(("a",), ({(0, 0): Fraction(1)},), ({},), (1,))
    with pytest.raises(NotAntisymmetric):
        to_lie_presentation(diag)


def test_malformed_differential():
    vt = VarTable(("x", "y", "g", "h"))
    v = vt.var
    # d(g h) = -g x y is not in the ideal (g h)
    p = DgaPresentation(vt, (v("g") * v("h"),), {"h": v("x") * v("y")}, {n: 1 for n in vt.names})
    with pytest.raises(MalformedQla):
        dualize(quadratic_data(p))
    assert dualize(quadratic_data(p), check=False).names == ("a", "b", "c", "h*")


def test_d_squared_nonzero_is_malformed():
    vt = VarTable(("x", "y", "g", "h"))
    v = vt.var
    p = DgaPresentation(vt, (), {"h": v("x") * v("g"), "g": v("x") * v("y")}, {n: 1 for n in vt.names})
    # d(d h) = d(x g) = -x x y = 0, so this one is fine
    dualize(quadratic_data(p))
    p2 = DgaPresentation(vt, (), {"h": v("y") * v("g"), "g": v("x") * v("h")}, {n: 1 for n in vt.names})
    # here d(d h) = -y x h is not zero
    with pytest.raises(MalformedQla):
        dualize(quadratic_data(p2))


def test_dense_dual_dims_word_count_oracle():
    # T(a,b,c)/([a,b]) grows like the free monoid on c plus a commuting pair
    qla = dualize(quadratic_data(punctured_elliptic_model()))
    dims = dual_dims_dense(qla, 4)
    # brute: count all words modulo the single rewrite ba -> ab
    def normal_words(k):
        return sum(1 for w in product("abc", repeat=k) if "ba" not in "".join(w))
    assert dims == [normal_words(k) for k in range(5)]

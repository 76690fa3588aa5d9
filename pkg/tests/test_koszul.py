from math import comb

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from arrangelab.duality import dual_dims_dense, dualize, quadratic_data
from arrangelab.errors import HilbertIdentityFails, NotChordal, NotPerfectEliminationOrder, NotQuadratic
from arrangelab.extalg import hilbert_series, standard_monomials
from arrangelab.graphcomb import complete_graph, cycle_graph, fan_graph, flats, nbc_sets, path_graph
from arrangelab.koszul import (
    TruncatedSeries,
    certify_koszul,
    check_hilbert_identity,
    flat_decomposition,
    nbc_monomial_basis,
    point_factor,
    predicted_initial_ideal,
)
from arrangelab.models import CurveType, build_elliptic, build_model, build_orlik_solomon, build_toric
from arrangelab.series import pbw_product

from conftest import single_vertex

CHORDAL = [single_vertex(), path_graph(2), path_graph(3), complete_graph(3), complete_graph(4), fan_graph(4)]
CURVES = ["rational", "toric", "genus:1", "genus:2", "genus:3"]
GID = lambda g: f"n{g.n}m{g.m}"  # noqa: E731


# -- truncated series ---------------------------------------------------------

coeff_lists = st.lists(st.integers(-5, 5), min_size=1, max_size=8)


@settings(max_examples=80, deadline=None)
@given(coeff_lists)
def test_series_inverse(cs):
    s = TruncatedSeries([1] + cs)
    assert (s * s.inverse()).is_one()
    assert s.negate_variable().negate_variable() == s


def test_series_basics():
    s = TruncatedSeries([1, 2, 1])
    assert s.trunc == 2 and s[5] == 0
    assert TruncatedSeries([1, -1], 4).inverse().coeffs == (1, 1, 1, 1, 1)
    assert str(TruncatedSeries([1, -3, 0, 2])) == "1 - 3t + 2t^3 + O(t^4)"
    assert (TruncatedSeries([1, 1], 3) * TruncatedSeries([1, 1], 3)).coeffs == (1, 2, 1, 0)
    with pytest.raises(ValueError):
        TruncatedSeries([2, 1]).inverse()


def test_pbw_product_free_lie_on_two():
    # Witt numbers 2,1,2,3 for two generators give 1/(1-2t)
    assert pbw_product({1: 2, 2: 1, 3: 2, 4: 3}, 4).coeffs == (1, 2, 4, 8, 16)


# -- certificate examples ----------------------------------------------------

def test_k3_certificate(k3):
    cert = certify_koszul(build_orlik_solomon(k3))
    assert cert.quadratic and cert.initial_ideal_matches
    assert cert.initial_ideal_names() == ["g13^g23"]
    assert cert.hilbert.coeffs[:4] == (1, 3, 2, 0)
    assert list(cert.dual_hilbert.coeffs) == [2 ** (k + 1) - 1 for k in range(11)]
    assert cert.identity_checked_to == 10


def test_one_vertex_elliptic():
    cert = certify_koszul(build_elliptic(single_vertex()))
    assert cert.hilbert.coeffs[:3] == (1, 2, 1)
    assert list(cert.dual_hilbert.coeffs) == [k + 1 for k in range(11)]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_cycles_are_not_quadratic(n):
    # the only circuit has n edges, so the single relation has degree n - 1
    with pytest.raises(NotQuadratic) as info:
        certify_koszul(build_orlik_solomon(cycle_graph(n)))
    assert info.value.min_degree == n - 1


def test_hilbert_identity_failure_is_reported():
    h = TruncatedSeries([1, 3, 2], 5)
    bad_dual = TruncatedSeries([1, 3, 7, 15, 30, 63])
    assert check_hilbert_identity(h, bad_dual) == 4
    assert check_hilbert_identity(h, TruncatedSeries([1, 3, 7, 15, 31, 63])) is None
    with pytest.raises(HilbertIdentityFails):
        raise HilbertIdentityFails(4)


@pytest.mark.parametrize("g", CHORDAL, ids=GID)
@pytest.mark.parametrize("curve", CURVES)
def test_certificate_on_chordal_family(g, curve):
    p = build_model(g, CurveType.parse(curve))
    cert = certify_koszul(p)
    assert cert.quadratic
    assert cert.initial_ideal_matches
    assert set(cert.initial_ideal) == predicted_initial_ideal(p)


# -- NBC monomial bases ---------------------------------------------------------

@pytest.mark.parametrize("g", CHORDAL, ids=GID)
@pytest.mark.parametrize("curve", CURVES)
def test_nbc_basis_equals_standard_monomials(g, curve):
    p = build_model(g, CurveType.parse(curve))
    basis = nbc_monomial_basis(p)
    std = standard_monomials(p.gb)
    assert {d: sorted(v) for d, v in std.items() if v} == {d: sorted(v) for d, v in basis.items() if v}


def test_k3_rational_basis_is_nbc_monomials(k3):
    p = build_orlik_solomon(k3)
    basis = nbc_monomial_basis(p)
    assert [len(basis.get(d, [])) for d in range(4)] == [1, 3, 2, 0]
    brute = {sum(1 << e for e in s) for s in nbc_sets(k3)}
    assert {m for ms in basis.values() for m in ms} == brute


def test_single_edge_elliptic_basis():
    p = build_elliptic(path_graph(2))
    basis = nbc_monomial_basis(p)
    # degree 2: pairs of the four curve classes (6), plus g12 with x1 or y1 (2)
    assert len(basis[2]) == comb(4, 2) + 2
    for m in basis[2]:
        names = p.vt.mono_names(m)
        if "g12" in names:
            assert not {"x2", "y2"} & set(names)


def test_k3_toric_basis_excludes_heads(k3):
    p = build_toric(k3)
    for ms in nbc_monomial_basis(p).values():
        for m in ms:
            names = set(p.vt.mono_names(m))
            for e, (t, h) in zip(("12", "13", "23"), ((1, 2), (1, 3), (2, 3))):
                if f"g{e}" in names:
                    assert f"x{h}" not in names


def test_nbc_basis_requires_chordal_peo(c4):
    with pytest.raises(NotChordal):
        nbc_monomial_basis(build_orlik_solomon(c4))
    path = path_graph(3).with_order([0, 2, 1])
    assert not path.is_perfect_elimination_order()
    with pytest.raises(NotPerfectEliminationOrder):
        nbc_monomial_basis(build_orlik_solomon(path))


# -- flat decomposition -------------------------------------------------------

def test_k3_elliptic_flats(k3):
    fd = flat_decomposition(k3, CurveType.parse("elliptic"))
    bottom = fd.parts[0]
    assert bottom.flat.rank == 0 and bottom.nbc_count == 1
    assert bottom.contribution.coeffs == tuple(comb(6, k) for k in range(10))
    top = fd.parts[-1]
    assert top.nbc_count == 2
    assert top.stratum_dims.coeffs[:4] == (1, 2, 1, 0)
    assert top.contribution.coeffs[:6] == (0, 0, 2, 4, 2, 0)


def test_toric_single_edge_flat():
    fd = flat_decomposition(path_graph(2), CurveType.parse("toric"))
    (empty, edge) = fd.parts
    assert empty.contribution.coeffs == (1, 2, 1, 0)
    assert edge.stratum_dims.coeffs == (1, 1, 0, 0)
    assert edge.contribution.coeffs == (0, 1, 1, 0)


@pytest.mark.parametrize("g", CHORDAL, ids=GID)
@pytest.mark.parametrize("curve", CURVES)
def test_flat_sum_is_hilbert_series(g, curve):
    p = build_model(g, CurveType.parse(curve))
    fd = flat_decomposition(g, CurveType.parse(curve))
    assert fd.total() == hilbert_series(p.gb, fd.total().trunc)
    assert len(fd.parts) == len(flats(g))


def test_point_factor_is_curve_cohomology():
    assert hilbert_series(point_factor(CurveType.parse("genus:3")).gb, 3).coeffs == (1, 6, 1, 0)
    assert hilbert_series(point_factor(CurveType.parse("toric")).gb, 2).coeffs == (1, 1, 0)


# -- dual series against the duality module -----------------------------------

@pytest.mark.parametrize(
    "g,curve",
    [(complete_graph(3), "rational"), (complete_graph(3), "toric"), (path_graph(2), "genus:1"), (single_vertex(), "genus:2")],
    ids=["k3-rational", "k3-toric", "edge-g1", "point-g2"],
)
def test_word_count_matches_dense_dual(g, curve):
    p = build_model(g, CurveType.parse(curve))
    cert = certify_koszul(p, trunc=4)
    qla = dualize(quadratic_data(p, cert.gb))
    assert dual_dims_dense(qla, 4) == list(cert.dual_hilbert.coeffs)


def test_brute_force_nbc_counts_k4(k4):
    counts = [0] * 5
    for s in nbc_sets(k4):
        counts[len(s)] += 1
    assert counts == [1, 6, 11, 6, 0]
    cert = certify_koszul(build_orlik_solomon(k4))
    assert list(cert.hilbert.coeffs[:5]) == counts

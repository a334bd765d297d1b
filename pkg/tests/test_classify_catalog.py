import pytest

from nilsoliton import catalog, linalg as la
from nilsoliton.classify import (DimensionBoundViolated, NotPhType, UndefinedType, adapt_ph_basis,
                                 classify, is_pseudo_h_type, ph_witness, pseudo_h_witness,
                                 verify_polarized_identities)
from nilsoliton.curvature import ricci_oracle
from nilsoliton.lie import LieAlgebra, verify_two_step
from nilsoliton.metric import J_operator, MetricTensor, decompose, j_operator
from nilsoliton.soliton import derivation_space, solve_nilsoliton


def _solve(e):
    ric = ricci_oracle(e.alg, e.metric)
    return ric, solve_nilsoliton(ric.ric_op, derivation_space(e.alg), e.alg)


@pytest.mark.parametrize("name", catalog.names())
def test_catalog_expectations(name):
    e = catalog.get(name)
    exp = e.expected
    assert verify_two_step(e.alg)
    dec = decompose(e.alg, e.metric)
    flags = classify(dec).flags()
    for key, want in exp.get("flags", {}).items():
        assert flags[key] == want, key
    ric, res = _solve(e)
    if "ric_op" in exp:
        assert ric.ric_op == exp["ric_op"]
    if "feasible" in exp:
        assert res.feasible == exp["feasible"]
    if "c" in exp:
        assert res.c == exp["c"]
    if "D" in exp:
        assert res.D == exp["D"]
    if "trivial" in exp:
        assert res.trivial == exp["trivial"]
    if "nontrivial" in exp:
        assert res.nontrivial == exp["nontrivial"]
    if "certificate" in exp:
        assert set(res.certificate.pair) == exp["certificate"]
    if "certificate_contains" in exp:
        assert exp["certificate_contains"] <= set(res.certificate.values)
    if exp.get("adapt") == "DimensionBoundViolated":
        with pytest.raises(DimensionBoundViolated):
            adapt_ph_basis(dec)


def test_catalog_has_enough_entries():
    assert len(catalog.names()) >= 10


def test_h_type_h3():
    e = catalog.get("H3+")
    rep = classify(decompose(e.alg, e.metric))
    assert rep.is_h and rep.is_ph and not rep.is_pseudo_h
    assert "pseudoH" in rep.witnesses


def test_h5_with_unequal_scales_is_not_h_type():
    alg = LieAlgebra.from_brackets(5, [(1, 2, 0, 1), (3, 4, 0, 2)])
    rep = classify(decompose(alg, MetricTensor.from_rows(la.identity(5))))
    assert not rep.is_h and rep.witnesses["H"].identity.startswith("J_z^2")


def test_pseudo_h_undefined_for_degenerate_center():
    e = catalog.get("quatH7(+,+,+)")
    dec = decompose(e.alg, e.metric)
    with pytest.raises(UndefinedType):
        pseudo_h_witness(dec)
    with pytest.raises(UndefinedType):
        is_pseudo_h_type(dec)
    assert classify(dec).is_pseudo_h is None


def test_ph_identity_by_hand_quaternionic():
    e = catalog.get("quatH7(+,-,-)")
    dec = decompose(e.alg, e.metric)
    assert ph_witness(dec) is None
    for z in dec.center_vectors:
        j = j_operator(dec, z)
        sq = la.matmul(j, j)
        coeff = -e.metric.ip(z, dec.apply_iota(z))
        for x in dec.v_vectors:
            assert la.matvec(sq, x) == la.vscale(x, coeff)


@pytest.mark.parametrize("name,counts", [("pH+(1,2)", (0, 1)), ("pH+(3,4)", (0, 1, 1, 1)),
                                         ("pH+(1,6)", (0, 1, 0, 0, 0, 0))])
def test_adapt_ph_basis(name, counts):
    e = catalog.get(name)
    basis = adapt_ph_basis(decompose(e.alg, e.metric))
    assert basis.m_counts == counts
    G = e.metric
    frame = basis.frame
    assert G.ip(frame[len(basis.z)], frame[len(basis.z)]) == -1


@pytest.mark.parametrize("name,alpha", [("pH+bound(2,2)", 2), ("pH+bound(4,4)", 4)])
def test_dimension_bound_violation(name, alpha):
    e = catalog.get(name)
    with pytest.raises(DimensionBoundViolated) as info:
        adapt_ph_basis(decompose(e.alg, e.metric))
    assert info.value.alpha == alpha


@pytest.mark.parametrize("name", ["H(1,1)", "quatH7(+,+,+)", "pHL(3,4)"])
def test_adapt_ph_basis_preconditions(name):
    e = catalog.get(name)
    with pytest.raises(NotPhType):
        adapt_ph_basis(decompose(e.alg, e.metric))


@pytest.mark.parametrize("name,kind", [("H3+", "H"), ("H5+", "H"), ("H(2,1)", "pseudoH"),
                                       ("quatH7(+,+,+)", "pH"), ("pHdeg(2,1)", "pH"),
                                       ("pHL(3,4)", "pH")])
def test_polarized_identities_hold(name, kind):
    e = catalog.get(name)
    assert verify_polarized_identities(decompose(e.alg, e.metric), kind).ok


def test_polarized_identities_detect_failure():
    alg = LieAlgebra.from_brackets(5, [(1, 2, 0, 1), (3, 4, 0, 2)])
    rep = verify_polarized_identities(decompose(alg, MetricTensor.from_rows(la.identity(5))), "H")
    assert not rep.ok and rep.counterexample


def test_constructor_errors():
    with pytest.raises(catalog.CatalogError):
        catalog.heisenberg(2, 0)
    with pytest.raises(catalog.CatalogError):
        catalog.heisenberg(0, 1)
    with pytest.raises(catalog.CatalogError):
        catalog.ph_degenerate_family(2, 2)
    with pytest.raises(catalog.CatalogError):
        catalog.ph_positive_center(4, 4)
    with pytest.raises(catalog.CatalogError):
        catalog.get("nope")


def test_entries_are_deterministic():
    a, b = catalog.get("pHL(3,4)"), catalog.get("pHL(3,4)")
    assert a == b


@pytest.mark.parametrize("name", catalog.names())
def test_witnesses_reproduce(name):
    e = catalog.get(name)
    dec = decompose(e.alg, e.metric)
    ip = e.metric.ip
    for kind, w in classify(dec).witnesses.items():
        z, x = list(w.z), list(w.x)
        z2 = list(w.z2) if w.z2 is not None else z
        if kind == "pH":
            A, B = j_operator(dec, z), j_operator(dec, z2)
            coeff = -ip(z, dec.apply_iota(z2))
        else:
            A, B = J_operator(e.alg, e.metric, z), J_operator(e.alg, e.metric, z2)
            coeff = -ip(z, z2) if kind == "H" else ip(z, z2)
        lhs = la.vadd(la.matvec(A, la.matvec(B, x)), la.matvec(B, la.matvec(A, x)))
        defect = la.vsub(lhs, la.vscale(x, 2 * coeff))
        assert tuple(defect) == w.defect and any(defect)


@pytest.mark.parametrize("name", [n for n in catalog.names() if n.startswith("pH+(")])
def test_m_counts_sum(name):
    e = catalog.get(name)
    basis = adapt_ph_basis(decompose(e.alg, e.metric))
    assert sum(basis.m_counts) == len(basis.z) and basis.m_counts[0] == 0
    assert set(basis.m_counts) <= {0, 1}

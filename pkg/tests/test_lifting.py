import pytest
from hypothesis import given, settings, strategies as st

from knotlift.cutsys import standard_cut_system, to_double_lines
from knotlift.diagram import DiagramError, parse_diagram, validate
from knotlift.gauss import canonical_code, traverse
from knotlift.generate import generate_random_diagram
from knotlift.heights import degree
from knotlift.invariants import linking_matrix
from knotlift.lifting import (cover0, covering_numbering, coverk, lift0, liftk,
                              restricted_lift)
from knotlift.numbering import build_constraints, check_numbering, is_mod_m_ac

from conftest import fixture


def cc(d):
    return canonical_code(traverse(d))


def test_lift0_without_double_lines_is_identity():
    tr = fixture("trefoil")
    assert lift0(tr) == tr


def test_lift0_flips_lower_over_strand():
    # over pass at height 0, under pass at height 1 (from either base)
    d = fixture("lift_pair")
    out = lift0(d)
    assert not out.double_lines
    (x,) = out.crossings
    assert x.sign == -d.nodes["c1"].sign


def test_lift0_of_heights0():
    out = lift0(fixture("heights0"))
    # code Oc1+ Tt2+ Uc2- Uc1+ Tt3- Oc2- Tt4- Tt1+; from base t1 the c1 over
    # pass sits at 0 and its under pass at 1, the c2 under pass at 1 and its
    # over pass at 0, so both crossings flip
    assert str(traverse(out)) == "Uc1- Oc2+ Oc1- Uc2+"


def test_lift0_errors_on_nonzero_degree():
    with pytest.raises(DiagramError):
        lift0(fixture("t2p"))


def test_liftk_t2p():
    out = liftk(fixture("t2p"))
    assert len(out.double_lines) == 1 and degree(out) == 1
    one = parse_diagram("T d sign=+ in=e out=e\n")
    assert cc(out) == cc(one)


def test_liftk_degree_three_fixture():
    d = fixture("heights3")
    out = liftk(d, "t1")
    assert [t.id for t in out.double_lines] == ["t1"]
    assert out.nodes["c1"] == d.nodes["c1"]
    assert out.nodes["c2"].sign == -d.nodes["c2"].sign
    assert str(traverse(out)) == "Uc1- Uc2- Oc1- Oc2- Tt1+"


def test_liftk_errors_on_degree_zero():
    with pytest.raises(DiagramError):
        liftk(fixture("unknot"))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([1, -1, 2, -3, 4]))
def test_liftk_degree_is_unit(seed, deg):
    d = generate_random_diagram(seed, 5, 6, degree=deg)
    for t in d.double_lines:
        assert degree(liftk(d, t.id)) in (1, -1)


def test_cover0_census_and_numbering():
    d = fixture("heights0")
    for m in (1, 2, 3, 4):
        c = cover0(d, m)
        assert validate(c.diagram) == []
        assert len(traverse(c.diagram).components) == m
        assert len(c.diagram.crossings) == m * m * 2 + (m - 1) * 4
        assert len(c.diagram.virtuals) == m * m * len(d.virtuals)
        assert is_mod_m_ac(c.diagram, m)
        cn = covering_numbering(c)
        assert not cn.fallback
        assert check_numbering(build_constraints(traverse(c.diagram)), cn.numbering) == []


def test_cover0_provenance_pairs():
    d = fixture("heights0")
    c = cover0(d, 3)
    for x in d.crossings:
        pairs = sorted(p[1] for k, p in c.provenance.items() if p[0] == x.id)
        assert pairs == [(s, t) for s in range(3) for t in range(3)]


def test_cover0_one_sheet_is_lift0():
    for name in ("heights0", "lift_pair", "d3", "trefoil"):
        d = fixture(name)
        assert cc(cover0(d, 1).diagram) == cc(lift0(d))


def test_cover_errors():
    with pytest.raises(DiagramError):
        cover0(fixture("t2p"), 2)
    with pytest.raises(DiagramError):
        cover0(fixture("heights0"), 0)
    with pytest.raises(DiagramError):
        coverk(fixture("heights0"))


def test_coverk_t2p():
    c = coverk(fixture("t2p"))
    code = traverse(c.diagram)
    assert len(code.components) == 2
    assert sum(t.sign for t in c.diagram.double_lines) == 2
    assert all(len(c.diagram.double_lines) for _ in code.components)


def test_coverk_degree_three():
    c = coverk(fixture("heights3"), "t1")
    assert validate(c.diagram) == []
    assert len(traverse(c.diagram).components) == 3
    assert sum(t.sign for t in c.diagram.double_lines) == 3


def test_coverk_single_sheet_is_liftk():
    for seed in range(10):
        one = generate_random_diagram(seed, 3, 5, degree=1)
        assert cc(coverk(one).diagram) == cc(liftk(one))


def test_covering_numbering_one_sheet_zero():
    c = cover0(fixture("heights0"), 1)
    cn = covering_numbering(c)
    assert set(cn.numbering.assignment.values()) == {0}


def test_trefoil_cut_system_mod3():
    dl = to_double_lines(fixture("trefoil_cuts"))
    c = cover0(dl, 3)
    cn = covering_numbering(c)
    assert not cn.fallback and cn.numbering.modulus == 3
    assert len(set(cn.numbering.assignment.values())) == 3


def test_restricted_lift_pairing():
    code = restricted_lift(fixture("lift_pair"), 3)
    assert len(code.components) == 3
    # over pass at level s + a, under pass at t + b with b - a = 1:
    # ties happen for t = s - 1 and keep the base roles
    for x, roles in code.passes().items():
        so, su = (int(v) for v in x.split("@")[1].split("/"))
        co, _ = roles["over"]
        if so - su == 1:
            assert co == so
        elif so < su + 1:
            assert co == su


def test_restricted_lift_without_double_lines():
    tr = fixture("trefoil")
    code = restricted_lift(tr, 2)
    assert len(code.passes()) == 4 * 3
    for x, roles in code.passes().items():
        base, sheets = x.split("@")
        so, su = (int(v) for v in sheets.split("/"))
        # copies are stacked by sheet; only a copy meeting itself keeps the base roles
        assert roles["over"][0] == (so if so == su else max(so, su))


def test_restricted_lift_matches_cover_linking():
    d = fixture("lift_pair")
    a = sorted(sorted(r) for r in linking_matrix(restricted_lift(d, 2)))
    b = sorted(sorted(r) for r in linking_matrix(traverse(cover0(d, 2).diagram)))
    assert a == b


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 4))
def test_cover_numbering_sample(seed, m):
    d = generate_random_diagram(seed, 5, 4)
    c = cover0(d, m)
    assert is_mod_m_ac(c.diagram, m)
    assert not covering_numbering(c).fallback


def test_standard_system_pipeline():
    dl = to_double_lines(standard_cut_system(fixture("virtual_trefoil")))
    for m in (2, 3):
        assert is_mod_m_ac(cover0(dl, m).diagram, m)

import pytest

from knotlift.diagram import parse_diagram
from knotlift.gauss import traverse
from knotlift.invariants import (InvariantReport, invariant_report, linking_matrix,
                                 matching_permutation, odd_writhe, same_invariants)

from conftest import fixture

HOPF = """X c1 sign=+ uin=b1 oin=a1 uout=b2 oout=a2
X c2 sign=+ uin=a2 oin=b2 uout=a1 oout=b1
"""


def test_odd_writhe_values():
    # frozen: classical knots have no odd crossings; the virtual trefoil has two
    assert odd_writhe(traverse(fixture("trefoil"))) == 0
    assert odd_writhe(traverse(fixture("unknot"))) == 0
    assert abs(odd_writhe(traverse(fixture("virtual_trefoil")))) == 2


def test_odd_writhe_needs_a_knot():
    with pytest.raises(ValueError):
        odd_writhe(traverse(parse_diagram(HOPF)))


def test_hopf_linking():
    lk = linking_matrix(traverse(parse_diagram(HOPF)))
    assert lk == ((0, 1), (1, 0))


def test_unknot_report_is_trivial():
    r = invariant_report(fixture("unknot"))
    assert r.components == 1 and r.odd_writhe == (0,) and r.degrees == (0,)
    assert all(r.ac.values())
    assert r.to_json()["ac"]["0"] is True


def test_virtual_trefoil_not_integrally_numberable():
    r = invariant_report(fixture("virtual_trefoil"))
    assert r.ac[0] is False


def test_permutation_matching():
    a = InvariantReport(3, (0, 2, 0), ((0, 1, 0), (0, 0, -1), (2, 0, 0)), {}, (0, 1, 0))
    p = (2, 0, 1)
    lk = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            lk[p[i]][p[j]] = a.linking[i][j]
    ow = [0] * 3
    dg = [0] * 3
    for i in range(3):
        ow[p[i]] = a.odd_writhe[i]
        dg[p[i]] = a.degrees[i]
    b = InvariantReport(3, tuple(ow), tuple(map(tuple, lk)), {}, tuple(dg))
    assert matching_permutation(a, b) == p
    assert same_invariants(a, b)
    c = InvariantReport(3, tuple(ow), tuple(map(tuple, lk)), {}, (0, 0, 1))
    assert matching_permutation(a, c) is None


def test_ac_flags_compared_on_request():
    a = InvariantReport(1, (0,), ((0,),), {2: True}, (0,))
    b = InvariantReport(1, (0,), ((0,),), {2: False}, (0,))
    assert same_invariants(a, b)
    assert not same_invariants(a, b, ac=(2,))

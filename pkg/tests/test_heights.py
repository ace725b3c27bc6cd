import pytest
from hypothesis import given, settings, strategies as st

from knotlift.diagram import DiagramError
from knotlift.generate import generate_random_diagram
from knotlift.heights import degree, heights, rebase_heights

from conftest import fixture


def test_degrees():
    assert [degree(fixture(n)) for n in ("d1", "d2", "d3")] == [2, 3, 0]
    assert degree(fixture("unknot")) == 0
    assert degree(fixture("lift_pair")) == 0


def test_t2p_heights():
    h = heights(fixture("t2p"), "d1")
    assert h.modulus == 2 and h.heights == {"d1": 0, "d2": 1}
    assert rebase_heights(h, "d2").heights == {"d1": 1, "d2": 0}
    assert rebase_heights(h, "d1") == h


def test_degree_zero_fixture():
    h = heights(fixture("heights0"), "t1")
    assert h.modulus == 0
    assert h.heights == {"t1": 0, "t2": 1, "t3": 0, "t4": -1}


def test_degree_three_fixture_wraps():
    d = fixture("heights3")
    h = heights(d, "t1")
    assert h.modulus == 3
    assert h.heights == {"t1": 0, "t2": 1, "t3": 2, "t4": 1, "t5": 2}
    # t5 leads into t1: 2 + 1 = 3 = 0 in Z_3
    assert (h.heights["t5"] + 1) % 3 == h.heights["t1"]


def test_unknown_base():
    with pytest.raises(DiagramError):
        heights(fixture("t2p"), "nope")
    with pytest.raises(DiagramError):
        heights(fixture("unknot"), "t1")


@pytest.mark.parametrize("name", ["t2p", "d1", "d2", "d3", "heights0", "heights3", "lift_pair"])
def test_rebase_is_a_constant_shift(name):
    d = fixture(name)
    ids = [t.id for t in d.double_lines]
    for b1 in ids:
        h1 = heights(d, b1)
        for b2 in ids:
            h2 = heights(d, b2)
            assert rebase_heights(h1, b2) == h2
            n = h1.modulus
            shifts = {((h2.heights[a] - h1.heights[a]) % n if n else h2.heights[a] - h1.heights[a])
                      for a in ids}
            assert len(shifts) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([None, 0, 1, -2, 3]))
def test_random_rebase(seed, deg):
    d = generate_random_diagram(seed, 4, 6, degree=deg)
    if deg is not None:
        assert degree(d) == deg
    ids = [t.id for t in d.double_lines]
    if not ids:
        return
    h = heights(d, ids[0])
    for b in ids:
        assert rebase_heights(h, b) == heights(d, b)

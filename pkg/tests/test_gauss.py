import random

from knotlift.diagram import Node, PlanarDiagram
from knotlift.gauss import (CrossingPass, DoubleLineMark, MarkedGaussCode, canonical_code,
                            segment, traverse)

from conftest import fixture


def _rename(d, prefix):
    nodes = {}
    for n in d.nodes.values():
        ports = {p: prefix + e for p, e in n.ports.items()}
        nodes[prefix + n.id] = Node(prefix + n.id, n.kind, ports, n.sign, n.direction)
    return PlanarDiagram(nodes, tuple(prefix + x for x in d.loops))


def test_codes_of_fixtures():
    assert str(traverse(fixture("unknot"))) == "()"
    assert str(traverse(fixture("virtual_trefoil"))) == "O1+ O2+ U1+ U2+"
    assert str(traverse(fixture("t2p"))) == "Td2+ Td1+"


def test_virtual_crossings_leave_no_event():
    code = traverse(fixture("virtual_trefoil"))
    assert len(code.components[0]) == 4


def test_each_crossing_twice_with_equal_signs():
    code = traverse(fixture("m3"))
    for x, roles in code.passes().items():
        (co, io), (cu, iu) = roles["over"], roles["under"]
        assert code.components[co][io].sign == code.components[cu][iu].sign


def test_segment_counts():
    assert len(segment(traverse(fixture("t2p")), "long_arcs").segments) == 2
    assert len(segment(traverse(fixture("virtual_trefoil")), "arcs").segments) == 4
    for policy in ("arcs", "long_arcs", "short_arcs", "crossing_arcs"):
        segs = segment(traverse(fixture("unknot")), policy).segments
        assert len(segs) == 1 and segs[0].start is None


def test_segments_partition_edges():
    d = fixture("trefoil_cuts")
    code = traverse(d)
    for policy in ("arcs", "long_arcs", "short_arcs", "crossing_arcs"):
        edges = [e for s in segment(code, policy).segments for e in s.edges]
        assert sorted(edges) == sorted(d.edges)
    arcs = segment(code, "arcs").segments
    assert len(arcs) == 6 + 4


def test_canonical_code_relabeling_and_rotation():
    d = fixture("virtual_trefoil")
    assert canonical_code(traverse(_rename(d, "z"))) == canonical_code(traverse(d))
    comp = traverse(fixture("t2p")).components[0]
    rotated = MarkedGaussCode((comp[1:] + comp[:1],))
    assert canonical_code(rotated) == canonical_code(MarkedGaussCode((comp,)))


def test_canonical_code_sees_signs():
    code = traverse(fixture("virtual_trefoil"))
    flipped = MarkedGaussCode((tuple(CrossingPass(e.crossing, e.role, -e.sign)
                                     for e in code.components[0]),))
    assert canonical_code(flipped) != canonical_code(code)


def test_canonical_code_component_order():
    a = (CrossingPass("x", "over", 1), DoubleLineMark("t", 1))
    b = (CrossingPass("x", "under", 1), DoubleLineMark("s", -1))
    rng = random.Random(3)
    forms = set()
    for _ in range(5):
        comps = [a, b]
        rng.shuffle(comps)
        forms.add(canonical_code(MarkedGaussCode(tuple(comps))))
    assert len(forms) == 1


def test_traverse_start_independent():
    d = fixture("m3")
    code = traverse(d)
    again = traverse(_rename(d, "a"))
    assert canonical_code(code) == canonical_code(again)

"""Lifts and cyclic covers of knot diagrams with double lines.

Covers are built as cablings.  Every base edge carries ``m`` parallel
strands at positions 0 (rightmost, looking along the orientation) to m - 1.
The strand of sheet ``s`` over a long arc of height ``h`` has number
``s + h``; its position is that number mod m.  Crossing a double line
shifts every number by the sign, so one strand wraps from one side of the
cable to the other while the rest move over by one slot.

Numbers are kept as integers in the degree-0 cover, so comparisons between
strands ("higher number over") do not depend on a choice of residues.  In
the degree-k cover numbers live in Z_|k| and a double line is left on the
wrapping strand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .diagram import (CLASSICAL, CUT, DOUBLE_LINE, VIRTUAL, DiagramError, Node, PlanarDiagram,
                      flip_crossing, node_from_ccw, splice)
from .gauss import CrossingPass, DoubleLineMark, MarkedGaussCode, segment, traverse
from .heights import gap_heights
from .numbering import Numbering, build_constraints, check_numbering, solve


@dataclass(frozen=True)
class CoveringDiagram:
    diagram: PlanarDiagram
    # node id -> (base node id, sheets); sheets are (over, under) for
    # classical crossings, (a, b) for virtual ones, (sheet,) for twist
    # crossings on the wrapping strand followed by the other strand's sheet
    provenance: dict
    sheet_count: int
    # position of each cable edge that meets the boundary of a gadget
    positions: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CoveringNumbering:
    numbering: Numbering | None
    fallback: bool
    rejected: tuple  # relations (or edges) where the proposal failed


def _single(d):
    code = traverse(d)
    if len(code.components) != 1:
        raise DiagramError("a single-component diagram is required")
    if d.cut_points:
        raise DiagramError("convert cut points to double lines first")
    return code


def _base_index(comp, base):
    if base is None:
        return None
    for i, ev in enumerate(comp):
        if isinstance(ev, DoubleLineMark) and ev.dl == base:
            return i
    raise DiagramError(f"unknown double line {base!r}")


def _degree(comp):
    return sum(ev.sign for ev in comp if isinstance(ev, DoubleLineMark))


def _crossing_heights(code, gh):
    out = {}
    for i, ev in enumerate(code.components[0]):
        if isinstance(ev, CrossingPass):
            out.setdefault(ev.crossing, {})[ev.role] = gh[i]
    return out


def _resolve(d, code, gh, key=lambda h: h):
    nodes = dict(d.nodes)
    for x, hs in _crossing_heights(code, gh).items():
        if key(hs["under"]) > key(hs["over"]):
            nodes[x] = flip_crossing(d.nodes[x])
    return PlanarDiagram(nodes, d.loops)


def lift0(d):
    code = _single(d)
    comp = code.components[0]
    if _degree(comp):
        raise DiagramError("lift0 needs a degree-0 diagram")
    gh = gap_heights(comp, None)
    out = _resolve(d, code, gh)
    for t in sorted(n.id for n in out.double_lines):
        out = splice(out, t)
    return out


def liftk(d, base=None):
    """Degree-k lift.  Residues are compared through representatives
    0..|k|-1, so the output depends on the base double line (default: the
    first one met by the traversal); different bases give equivalent lifts."""
    code = _single(d)
    comp = code.components[0]
    k = _degree(comp)
    if not k:
        raise DiagramError("liftk needs a nonzero degree")
    n = abs(k)
    gh = gap_heights(comp, _base_index(comp, base))
    out = _resolve(d, code, gh, key=lambda h: h % n)
    size = len(comp)
    for j, ev in enumerate(comp):
        if not isinstance(ev, DoubleLineMark):
            continue
        before = gh[(j - 1) % size] % n
        wrap = before == n - 1 if ev.sign > 0 else before == 0
        if not wrap:
            out = splice(out, ev.dl)
    return out


# -- cabling -------------------------------------------------------------------------

_AXES = ((1, 0), (0, 1), (-1, 0), (0, -1))


def _angle(v):
    return math.atan2(v[1], v[0])


class _Cable:
    """Accumulates gadget nodes whose half-edges still name cable slots."""

    def __init__(self, m):
        self.m = m
        self.specs = {}  # node id -> (kind, sign, over, [(vector, half, is_in, strand)])
        self.provenance = {}
        self.routes = []  # (in slot, [(node, strand)], out slot)

    def crossing(self, nid, kind, over, halves, prov):
        self.specs[nid] = (kind, 0, over, halves)
        self.provenance[nid] = prov

    def build(self, loops_of_slots):
        parent = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        internal = {}
        count = [0]
        for in_slot, path, out_slot in self.routes:
            if not path:
                parent[find(in_slot)] = find(out_slot)
                continue
            prev = in_slot
            for k, (nid, strand) in enumerate(path):
                nxt = out_slot if k == len(path) - 1 else None
                if nxt is None:
                    count[0] += 1
                    nxt = ("i", count[0])
                internal[(nid, strand, True)] = prev
                internal[(nid, strand, False)] = nxt
                prev = nxt

        def name(h):
            if h[0] == "i":
                return f"i{h[1]}"
            r = find(h)
            return f"{r[1]}.{r[2]}"

        nodes = []
        used = set()
        for nid, (kind, sign, over, halves) in self.specs.items():
            if kind == DOUBLE_LINE:
                e_in, e_out = name(internal[(nid, "s", True)]), name(internal[(nid, "s", False)])
                used.update((e_in, e_out))
                nodes.append(Node(nid, DOUBLE_LINE, {"in": e_in, "out": e_out}, sign))
                continue
            ccw = []
            for vec, strand, is_in in sorted(halves, key=lambda h: _angle(h[0])):
                e = name(internal[(nid, strand, is_in)])
                used.add(e)
                ccw.append((e, is_in, strand))
            nodes.append(node_from_ccw(kind, nid, ccw, over))
        # slot classes that no node touches close up into free loops
        slots = set(loops_of_slots)
        for in_slot, _, out_slot in self.routes:
            slots.update((in_slot, out_slot))
        loops = sorted({name(s) for s in slots} - used)
        positions = {}
        for in_slot, _, out_slot in self.routes:
            for s in (in_slot, out_slot):
                positions[name(s)] = s[2]
        return PlanarDiagram.build(nodes, loops), positions


def _cover(d, modular):
    code = _single(d)
    comp = code.components[0]
    k = _degree(comp)
    if modular and not k:
        raise DiagramError("coverk needs a nonzero degree")
    if not modular and k:
        raise DiagramError("cover0 needs a degree-0 diagram")
    return code, comp, abs(k)


def _cable(d, m, modular, base=None):
    code, comp, _ = _cover(d, modular)
    gh = gap_heights(comp, _base_index(comp, base))
    if modular:
        gh = [h % m for h in gh]
    height = {}
    for i, gap in enumerate(code.gaps[0]):
        for e in gap:
            height[e] = gh[i] if comp else 0

    def number(p, h):
        return p if modular else h + (p - h) % m

    def sheet(p, h):
        return (p - h) % m

    cab = _Cable(m)
    for node in sorted(d.nodes.values(), key=lambda n: n.id):
        if node.kind in (CLASSICAL, VIRTUAL):
            _grid(cab, node, height, number, sheet)
        elif node.kind == DOUBLE_LINE:
            _twist(cab, node, height, number, sheet, modular)
        else:
            raise DiagramError("convert cut points to double lines first")
    loop_slots = [("s", e, p) for e in d.loops for p in range(m)]
    diagram, positions = cab.build(loop_slots)
    return CoveringDiagram(diagram, cab.provenance, m, positions)


def _grid(cab, node, height, number, sheet):
    m = cab.m
    first, second = ("o", "u") if node.kind == CLASSICAL else ("a", "b")
    info = {}
    for k, port in enumerate(node.rotation):
        if port in ("uin", "oin", "ain", "bin"):
            out = _AXES[(k + 2) % 4]
            info[port[0]] = (out, (out[1], -out[0]), node.ports[port], node.ports[port[0] + "out"])
    (da, na, ea_in, ea_out), (db, nb, eb_in, eb_out) = info[first], info[second]
    h_a, h_b = height[ea_in], height[eb_in]

    def off(p):
        return m - 1 - 2 * p

    along_a = {p: [] for p in range(m)}
    along_b = {q: [] for q in range(m)}
    for p in range(m):
        for q in range(m):
            nid = f"{node.id}:{p}.{q}"
            ta = off(q) * (nb[0] * da[0] + nb[1] * da[1])
            tb = off(p) * (na[0] * db[0] + na[1] * db[1])
            along_a[p].append((ta, nid))
            along_b[q].append((tb, nid))
            halves = [((-da[0], -da[1]), "A", True), (da, "A", False),
                      ((-db[0], -db[1]), "B", True), (db, "B", False)]
            if node.kind == CLASSICAL:
                na_num, nb_num = number(p, h_a), number(q, h_b)
                over = "A" if na_num > nb_num or (na_num == nb_num) else "B"
            else:
                over = None
            cab.crossing(nid, node.kind, over, halves,
                         (node.id, (sheet(p, h_a), sheet(q, h_b))))
    for p, seq in along_a.items():
        cab.routes.append((("s", ea_in, p), [(nid, "A") for _, nid in sorted(seq)], ("s", ea_out, p)))
    for q, seq in along_b.items():
        cab.routes.append((("s", eb_in, q), [(nid, "B") for _, nid in sorted(seq)], ("s", eb_out, q)))


def _twist(cab, node, height, number, sheet, modular):
    m = cab.m
    eps = node.sign
    e_in, e_out = node.ports["in"], node.ports["out"]
    h = height[e_in]
    w = m - 1 if eps > 0 else 0
    others = list(range(m - 2, -1, -1)) if eps > 0 else list(range(1, m))
    dw = (1, -(m - 1)) if eps > 0 else (1, m - 1)
    ds = (1, 1) if eps > 0 else (1, -1)
    wrap_path = []
    for p in others:
        nid = f"{node.id}:{p}"
        halves = [((-dw[0], -dw[1]), "W", True), (dw, "W", False),
                  ((-ds[0], -ds[1]), "S", True), (ds, "S", False)]
        over = "W" if number(w, h) > number(p, h) else "S"
        cab.crossing(nid, CLASSICAL, over, halves, (node.id, (sheet(w, h), sheet(p, h))))
        wrap_path.append((nid, "W"))
        cab.routes.append((("s", e_in, p), [(nid, "S")], ("s", e_out, (p + eps) % m)))
    if modular:
        nid = f"{node.id}:t"
        cab.specs[nid] = (DOUBLE_LINE, eps, None, [])
        cab.provenance[nid] = (node.id, (sheet(w, h),))
        wrap_path.append((nid, "s"))
    cab.routes.append((("s", e_in, w), wrap_path, ("s", e_out, (w + eps) % m)))


def cover0(d, m):
    if m < 1:
        raise DiagramError("m must be at least 1")
    return _cable(d, m, modular=False)


def coverk(d, base=None):
    _, _, n = _cover(d, modular=True)
    return _cable(d, n, modular=True, base=base)


# -- numbering of a cover ------------------------------------------------------------------

def _propagate(c, m):
    """Labels on every cover edge: the cable position on gadget boundaries,
    moved by one at each crossing inside a gadget (up for the rising strand)."""
    d = c.diagram
    labels = dict(c.positions)
    conflicts = []
    stack = list(labels)
    while stack:
        e = stack.pop()
        if e not in d.edges or d.edges[e] is None:
            continue
        node_id, port = d.edges[e][1]
        node = d.nodes[node_id]
        step = 0
        if node.kind == CLASSICAL:
            rising = (port == "oin") == (node.sign > 0)
            step = 1 if rising else -1
        out_port = port.replace("in", "out") if node.kind in (CLASSICAL, VIRTUAL) else "out"
        f = node.ports[out_port]
        value = labels[e] + step
        if f in labels:
            if (labels[f] - value) % m:
                conflicts.append(f)
            continue
        labels[f] = value
        stack.append(f)
    return labels, conflicts


def covering_numbering(c, m=None):
    m = c.sheet_count if m is None else m
    if not c.provenance and c.diagram.nodes:
        raise DiagramError("covering diagram has no provenance")
    code = traverse(c.diagram)
    cs = build_constraints(code)
    labels, conflicts = _propagate(c, m)
    seg = segment(code, "crossing_arcs")
    assignment = {}
    for s in seg.segments:
        vals = {labels.get(e, 0) % m if m else labels.get(e, 0) for e in s.edges}
        if len(vals) > 1:
            conflicts.append(s.id)
        assignment[s.id] = min(vals) if vals else 0
    proposal = Numbering(m, assignment)
    rejected = tuple(conflicts) + tuple(check_numbering(cs, proposal))
    if not rejected:
        return CoveringNumbering(proposal, False, ())
    return CoveringNumbering(solve(cs, m), True, rejected)


# -- code-level restriction of the infinite lift ------------------------------------------

def restricted_lift(d, m):
    """Code of the m components K_0..K_{m-1} of the lift, where K_s runs at
    level s + (height).  Crossing ids are ``X@over_sheet/under_sheet`` in
    terms of the base crossing's over and under strands."""
    if m < 1:
        raise DiagramError("m must be at least 1")
    code = _single(d)
    comp = code.components[0]
    if _degree(comp):
        raise DiagramError("restricted_lift needs a degree-0 diagram")
    gh = gap_heights(comp, None)
    ch = _crossing_heights(code, gh)
    comps = []
    for s in range(m):
        events = []
        for i, ev in enumerate(comp):
            if not isinstance(ev, CrossingPass):
                continue
            a, b = ch[ev.crossing]["over"], ch[ev.crossing]["under"]
            for t in range(m):
                so, su = (s, t) if ev.role == "over" else (t, s)
                lo, lu = so + a, su + b
                flipped = lu > lo
                role = ev.role
                if flipped:
                    role = "under" if role == "over" else "over"
                events.append(CrossingPass(f"{ev.crossing}@{so}/{su}", role,
                                           -ev.sign if flipped else ev.sign))
        comps.append(tuple(events))
    return MarkedGaussCode(tuple(comps))

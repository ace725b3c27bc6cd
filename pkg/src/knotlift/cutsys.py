"""Oriented cut points: standard systems, validity, local moves, and the
replacement of cut points by double lines."""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (CLASSICAL, CUT, DOUBLE_LINE, VIRTUAL, DiagramError, Node,
                      PlanarDiagram, check, insert_two_valent, splice)
from .gauss import traverse
from .numbering import build_constraints, solve

COHERENT, INCOHERENT = "coh", "inc"
OPPOSITE = {COHERENT: INCOHERENT, INCOHERENT: COHERENT}
CUT_MOVES = ("cancel_pair", "pass_virtual", "four_around_crossing")

# Pattern around a virtual crossing with ccw rotation (ain, bin, aout, bout).
# Strand b passes a from a's right to its left, so b behaves like the rising
# strand of a classical crossing and a like the falling one.  One cut on the
# incoming side of each strand reproduces the jumps a classical crossing
# would impose: +1 along b, -1 along a.
STANDARD_PATTERN = (("bin", COHERENT), ("ain", INCOHERENT))


@dataclass(frozen=True)
class CutSite:
    """Where a cut move applies.

    cancel_pair           forward: (cut, cut) adjacent with opposite directions;
                          backward: (edge, first direction) inserts a pair.
    pass_virtual          (cut,) or (cut, "ahead" | "back"): the cut moves through
                          the virtual crossing next to it.
    four_around_crossing  forward: (crossing,) removes its four cuts;
                          backward: (crossing, direction on the incoming edges).
    """

    kind: str
    args: tuple
    insert: bool = False


def _no_marks(d):
    if d.cut_points or d.double_lines:
        raise DiagramError("diagram already carries cut points or double lines")


def standard_cut_system(d):
    _no_marks(d)
    n = 0
    for v in sorted(d.virtuals, key=lambda x: x.id):
        for port, direction in STANDARD_PATTERN:
            n += 1
            d = insert_two_valent(d, d.nodes[v.id].ports[port], CUT, d.fresh_id("p"), direction=direction)
    return d


def is_cut_system(d):
    return solve(build_constraints(traverse(d), include_cuts=True), 0) is not None


def count_cut_points(d):
    coh = sum(1 for c in d.cut_points if c.direction == COHERENT)
    return coh, len(d.cut_points) - coh


def to_double_lines(d):
    if not is_cut_system(d):
        raise DiagramError("cut points do not form a cut system")
    nodes = dict(d.nodes)
    for c in d.cut_points:
        # a coherent cut raises the number by one, a positive double line the height
        nodes[c.id] = Node(c.id, DOUBLE_LINE, dict(c.ports), 1 if c.direction == COHERENT else -1)
    return PlanarDiagram(nodes, d.loops)


# -- moves -----------------------------------------------------------------------

def _head(d, edge):
    return d.nodes[d.edges[edge][1][0]], d.edges[edge][1][1]


def _tail(d, edge):
    return d.nodes[d.edges[edge][0][0]], d.edges[edge][0][1]


def _cut(d, cid):
    node = d.nodes.get(cid)
    if node is None or node.kind != CUT:
        raise DiagramError(f"{cid!r} is not a cut point")
    return node


def _cancel_pair(d, site):
    if site.insert:
        edge, first = site.args
        if edge not in d.edges and edge not in d.loops:
            raise DiagramError(f"unknown edge {edge!r}")
        a, b = d.fresh_ids("p", 2)
        d = insert_two_valent(d, edge, CUT, a, direction=first)
        return insert_two_valent(d, d.nodes[a].ports["out"], CUT, b, direction=OPPOSITE[first])
    c1, c2 = (_cut(d, x) for x in site.args)
    if c1.ports["out"] != c2.ports["in"] or c1.direction == c2.direction or c1.id == c2.id:
        raise DiagramError("cut points are not an adjacent opposite pair")
    return splice(splice(d, c1.id), c2.id)


def _pass_virtual(d, site):
    cid, way = (site.args + ("",))[:2]
    c = _cut(d, cid)
    head, hport = _head(d, c.ports["out"])
    tail, tport = _tail(d, c.ports["in"])
    if head.kind == VIRTUAL and way != "back":
        # cut sits just before the crossing: move it just after
        d = splice(d, cid)
        edge = d.nodes[head.id].ports[hport.replace("in", "out")]
    elif tail.kind == VIRTUAL and way != "ahead":
        d = splice(d, cid)
        edge = d.nodes[tail.id].ports[tport.replace("out", "in")]
    else:
        raise DiagramError(f"cut point {cid!r} is not next to a virtual crossing")
    return insert_two_valent(d, edge, CUT, cid, direction=c.direction)


def _four_around(d, site):
    x = d.nodes.get(site.args[0])
    if x is None or x.kind != CLASSICAL:
        raise DiagramError(f"{site.args[0]!r} is not a classical crossing")
    if site.insert:
        direction = site.args[1]
        for port in ("uin", "oin"):
            d = insert_two_valent(d, d.nodes[x.id].ports[port], CUT, d.fresh_id("p"), direction=direction)
        for port in ("uout", "oout"):
            d = insert_two_valent(d, d.nodes[x.id].ports[port], CUT, d.fresh_id("p"),
                                  direction=OPPOSITE[direction])
        return d
    cuts = {}
    for port in ("uin", "oin"):
        node, _ = _tail(d, x.ports[port])
        cuts[port] = node
    for port in ("uout", "oout"):
        node, _ = _head(d, x.ports[port])
        cuts[port] = node
    if any(n.kind != CUT for n in cuts.values()) or len({n.id for n in cuts.values()}) != 4:
        raise DiagramError(f"crossing {x.id!r} is not surrounded by four cut points")
    ins = {cuts["uin"].direction, cuts["oin"].direction}
    outs = {cuts["uout"].direction, cuts["oout"].direction}
    if len(ins) != 1 or outs != {OPPOSITE[next(iter(ins))]}:
        raise DiagramError(f"cut points around {x.id!r} do not match the pattern")
    for n in cuts.values():
        d = splice(d, n.id)
    return d


_MOVES = {"cancel_pair": _cancel_pair, "pass_virtual": _pass_virtual,
          "four_around_crossing": _four_around}


def apply_cut_move(d, kind, site):
    if kind not in _MOVES:
        raise DiagramError(f"unknown cut move {kind!r}")
    if not isinstance(site, CutSite):
        site = CutSite(kind, tuple(site))
    out = _MOVES[kind](d, site)
    check(out)
    return out


def cut_move_sites(d):
    """Every applicable (kind, site) pair, inserting moves excluded."""
    sites = []
    for c in sorted(d.cut_points, key=lambda n: n.id):
        nxt, _ = _head(d, c.ports["out"])
        if nxt.kind == CUT and nxt.direction != c.direction and nxt.id != c.id:
            sites.append(("cancel_pair", CutSite("cancel_pair", (c.id, nxt.id))))
        prev, _ = _tail(d, c.ports["in"])
        if nxt.kind == VIRTUAL:
            sites.append(("pass_virtual", CutSite("pass_virtual", (c.id, "ahead"))))
        if prev.kind == VIRTUAL:
            sites.append(("pass_virtual", CutSite("pass_virtual", (c.id, "back"))))
    for x in sorted(d.crossings, key=lambda n: n.id):
        try:
            _four_around(d, CutSite("four_around_crossing", (x.id,)))
        except DiagramError:
            continue
        sites.append(("four_around_crossing", CutSite("four_around_crossing", (x.id,))))
    return sites

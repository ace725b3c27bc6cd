"""Local moves on diagrams with double lines.

Patterns are matched on the rotation system only.  Geometry for inserted
gadgets is described by direction vectors around each new node and turned
into ports with ``node_from_ccw``.

Double lines: a strand sits near the top of its level just before a positive
double line and just after a negative one, so at a crossing there it has to
be the over strand; at the other two spots it is the under strand.  Sliding
a double line through a classical crossing swaps these spots and therefore
the strand's role.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .diagram import (CLASSICAL, DOUBLE_LINE, IN_PORTS, THROUGH, VIRTUAL, DiagramError, Node,
                      PlanarDiagram, dissolve, face_orbits, flip_crossing, insert_two_valent,
                      node_from_ccw, splice, validate)

KINDS = ("R1", "R2", "R3", "V1", "V2", "V3", "MIXED", "DL_SLIDE", "DL_CANCEL")
FORWARD, BACKWARD = "forward", "backward"


@dataclass(frozen=True)
class MoveKind:
    name: str
    direction: str = FORWARD

    def __post_init__(self):
        if self.name not in KINDS or self.direction not in (FORWARD, BACKWARD):
            raise DiagramError(f"unknown move {self.name} {self.direction}")

    def __str__(self):
        return f"{self.name}{'+' if self.direction == FORWARD else '-'}"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text[-1] in "+-":
            return cls(text[:-1], FORWARD if text[-1] == "+" else BACKWARD)
        return cls(text)


ALL_MOVES = tuple(MoveKind(n, d) for n in KINDS for d in (FORWARD, BACKWARD))


@dataclass(frozen=True)
class MoveSite:
    kind: MoveKind
    anchors: tuple

    def __str__(self):
        return ",".join(str(a) for a in self.anchors)


def _parse_anchor(a):
    try:
        return int(a)
    except ValueError:
        return a


def parse_site(kind, text):
    anchors = tuple(_parse_anchor(a) for a in text.split(",")) if text else ()
    return MoveSite(kind, anchors)


# -- helpers -------------------------------------------------------------------------------

def _angle(v):
    return math.atan2(v[1], v[0])


def _build(kind, nid, halves, over=None):
    """halves: (vector, edge, is_in, strand); sorted ccw by vector angle."""
    ccw = [(e, is_in, s) for _, e, is_in, s in sorted(halves, key=lambda h: _angle(h[0]))]
    return node_from_ccw(kind, nid, ccw, over)


def _head(d, edge):
    return d.edges[edge][1]


def _tail(d, edge):
    return d.edges[edge][0]


def _out_of(port):
    return THROUGH[port] if port in THROUGH else port


def _in_of(port):
    return {v: k for k, v in THROUGH.items()}[port]


def _all_edges(d):
    return sorted(d.edges) + sorted(d.loops)


# -- R1 / V1 ----------------------------------------------------------------------------------

def _kink_sites(d, kind, forward):
    if forward:
        roles = ("over", "under") if kind == CLASSICAL else ("",)
        return [(e, side, role) for e in _all_edges(d) for side in ("left", "right") for role in roles]
    out = []
    for node in sorted(d.nodes.values(), key=lambda n: n.id):
        if node.kind != kind:
            continue
        for p in node.rotation:
            if p in IN_PORTS:
                continue
            hn, hp = _head(d, node.ports[p])
            if hn == node.id and hp[0] != p[0] and _adjacent(node.rotation, p, hp):
                out.append((node.id, p))
    return out


def _adjacent(rot, p, q):
    i, j = rot.index(p), rot.index(q)
    return (i - j) % len(rot) in (1, len(rot) - 1)


def _add_kink(d, kind, edge, side, role):
    if edge not in d.edges and edge not in d.loops:
        raise DiagramError(f"unknown edge {edge!r}")
    nid = d.fresh_id("x" if kind == CLASSICAL else "v")
    k, e2 = d.fresh_ids("e", 2)
    nodes = dict(d.nodes)
    loops = list(d.loops)
    if edge in loops:
        loops.remove(edge)
        e2 = edge
    else:
        hn, hp = _head(d, edge)
        nodes[hn] = nodes[hn].with_ports(**{hp: e2})
    # the strand enters as A, runs round the loop k and leaves as B
    if side == "left":
        ccw = [(edge, True, "A"), (e2, False, "B"), (k, False, "A"), (k, True, "B")]
    else:
        ccw = [(edge, True, "A"), (k, True, "B"), (k, False, "A"), (e2, False, "B")]
    over = None if kind == VIRTUAL else ("A" if role == "over" else "B")
    nodes[nid] = node_from_ccw(kind, nid, ccw, over)
    return PlanarDiagram(nodes, tuple(loops))


def _remove_kink(d, kind, nid, port):
    if (nid, port) not in _kink_sites(d, kind, False):
        raise DiagramError(f"no kink at {nid}/{port}")
    return dissolve(d, nid)


# -- R2 / V2 ----------------------------------------------------------------------------------

def _finger_sites(d, kind):
    roles = ("over", "under") if kind == CLASSICAL else ("",)
    out = []
    for face in face_orbits(d):
        for i, (n1, p1) in enumerate(face):
            for j, (n2, p2) in enumerate(face):
                if i == j or d.nodes[n1].ports[p1] == d.nodes[n2].ports[p2]:
                    continue
                out.extend((n1, p1, n2, p2, role) for role in roles)
    return out


def _push_finger(d, kind, n1, p1, n2, p2, role):
    if not any((n1, p1) in f and (n2, p2) in f for f in face_orbits(d)):
        raise DiagramError("the two darts do not share a face")
    e1, e2 = d.nodes[n1].ports[p1], d.nodes[n2].ports[p2]
    if e1 == e2:
        raise DiagramError("the finger needs two different edges")
    # a face walk keeps its face on the left
    tau = -1 if p1 not in IN_PORTS else 1  # +1: face on the right of e1
    sigma = 1 if p2 not in IN_PORTS else -1  # +1: face on the left of e2
    # picture: e2 runs along the x axis with the face above; the finger hangs
    # from e1 through (-1, 0) = L and (1, 0) = R
    prefix = "x" if kind == CLASSICAL else "v"
    L, R = d.fresh_ids(prefix, 2)
    m1, m2, e1n, e2n = d.fresh_ids("e", 4)
    nodes = dict(d.nodes)
    for e, new in ((e1, e1n), (e2, e2n)):
        hn, hp = _head(d, e)
        nodes[hn] = nodes[hn].with_ports(**{hp: new})
    finger = [L, R] if tau > 0 else [R, L]
    down = {L: (0, -tau), R: (0, tau)}
    along = [L, R] if sigma > 0 else [R, L]
    halves = {L: [], R: []}
    for path, strand, edges in ((finger, "F", (e1, m1, e1n)), (along, "G", (e2, m2, e2n))):
        for k, nid in enumerate(path):
            v = down[nid] if strand == "F" else (sigma, 0)
            halves[nid].append(((-v[0], -v[1]), edges[k], True, strand))
            halves[nid].append((v, edges[k + 1], False, strand))
    over = None if kind == VIRTUAL else ("F" if role == "over" else "G")
    for nid in (L, R):
        nodes[nid] = _build(kind, nid, halves[nid], over)
    return PlanarDiagram(nodes, d.loops)


def _bigon_sites(d, kind):
    out = []
    for face in face_orbits(d):
        if len(face) != 2:
            continue
        (a, pa), (b, pb) = face
        if a == b or d.nodes[a].kind != kind or d.nodes[b].kind != kind:
            continue
        if kind == CLASSICAL:
            # same strand over at both crossings
            e = d.nodes[a].ports[pa]
            (t, tp), (h, hp) = d.edges[e]
            if tp[0] != hp[0]:
                continue
        out.append(tuple(sorted((a, b))))
    return sorted(set(out))


def _remove_bigon(d, kind, a, b):
    if (a, b) not in _bigon_sites(d, kind):
        raise DiagramError(f"no removable bigon at {a}, {b}")
    return dissolve(dissolve(d, a), b)


# -- R3 / V3 / mixed ------------------------------------------------------------------------

_TRIANGLE_KINDS = {"R3": (CLASSICAL,) * 3, "V3": (VIRTUAL,) * 3,
                   "MIXED": (CLASSICAL, VIRTUAL, VIRTUAL)}


def _triangle_sides(d, face):
    sides = []
    for n, p in face:
        e = d.nodes[n].ports[p]
        sides.append(e)
    return sides


def _triangle_sites(d, name):
    out = []
    for face in face_orbits(d):
        if len(face) != 3 or len({n for n, _ in face}) != 3:
            continue
        kinds = tuple(sorted(d.nodes[n].kind for n, _ in face))
        if kinds != tuple(sorted(_TRIANGLE_KINDS[name])):
            continue
        sides = _triangle_sides(d, face)
        if len(set(sides)) != 3:
            continue
        if name == "R3" and not any(d.edges[e][0][1][0] == d.edges[e][1][1][0] for e in sides):
            continue  # no strand is on top (or at the bottom) of both its crossings
        out.append(tuple(sorted(n for n, _ in face)))
    return sorted(set(out))


def _swap_triangle(d, name, *ids):
    ids = tuple(sorted(ids))
    if ids not in _triangle_sites(d, name):
        raise DiagramError(f"no {name} triangle on {ids}")
    face = next(f for f in face_orbits(d) if tuple(sorted(n for n, _ in f)) == ids and len(f) == 3)
    ports = {n: dict(d.nodes[n].ports) for n in ids}
    for e in _triangle_sides(d, face):
        (P, p_out), (Q, q_in) = d.edges[e]
        e_in = d.nodes[P].ports[_in_of(p_out)]
        e_out = d.nodes[Q].ports[_out_of(q_in)]
        # the strand now meets Q before P
        ports[Q][q_in], ports[Q][_out_of(q_in)] = e_in, e
        ports[P][_in_of(p_out)], ports[P][p_out] = e, e_out
    nodes = dict(d.nodes)
    for n in ids:
        old = d.nodes[n]
        nodes[n] = Node(n, old.kind, ports[n], old.sign)
    return PlanarDiagram(nodes, d.loops)


# -- double lines ----------------------------------------------------------------------------

def _top(sign, x_after_dl):
    """Whether a strand is over at a crossing next to a double line."""
    return (sign < 0) if x_after_dl else (sign > 0)


def _slide_sites(d, way):
    out = []
    for t in sorted(d.double_lines, key=lambda n: n.id):
        try:
            _slide_target(d, t, way)
        except DiagramError:
            continue
        out.append((t.id,))
    return out


def _slide_target(d, t, way):
    if way == "ahead":
        xn, xp = _head(d, t.ports["out"])
    else:
        xn, xp = _tail(d, t.ports["in"])
    x = d.nodes[xn]
    if x.kind not in (CLASSICAL, VIRTUAL) or x.id == t.id:
        raise DiagramError(f"double line {t.id} has no crossing {way}")
    letter = xp[0]
    if x.kind == CLASSICAL:
        want = "o" if _top(t.sign, way == "ahead") else "u"
        if letter != want:
            raise DiagramError(f"strand role at {x.id} does not allow the slide")
    return x, letter


def _slide(d, tid, way):
    t = d.nodes.get(tid)
    if t is None or t.kind != DOUBLE_LINE:
        raise DiagramError(f"{tid!r} is not a double line")
    x, letter = _slide_target(d, t, way)
    pi, po = letter + "in", letter + "out"
    xp, tp = dict(x.ports), dict(t.ports)
    if way == "ahead":
        e_a, e_b, e_c = t.ports["in"], t.ports["out"], x.ports[po]
        xp[pi], xp[po], tp["in"], tp["out"] = e_a, e_b, e_b, e_c
    else:
        e_a, e_b, e_c = x.ports[pi], x.ports[po], t.ports["out"]
        tp["in"], tp["out"], xp[pi], xp[po] = e_a, e_b, e_b, e_c
    nx = Node(x.id, x.kind, xp, x.sign)
    if x.kind == CLASSICAL:
        nx = flip_crossing(nx)
    nodes = dict(d.nodes)
    nodes[x.id] = nx
    nodes[t.id] = Node(t.id, DOUBLE_LINE, tp, t.sign)
    return PlanarDiagram(nodes, d.loops)


def _cancel_sites(d):
    out = []
    for t in sorted(d.double_lines, key=lambda n: n.id):
        hn, _ = _head(d, t.ports["out"])
        u = d.nodes[hn]
        if u.kind == DOUBLE_LINE and u.id != t.id and u.sign == -t.sign:
            out.append((t.id, u.id))
    return out


def _cancel(d, a, b):
    if (a, b) not in _cancel_sites(d):
        raise DiagramError(f"{a}, {b} are not an adjacent opposite pair")
    return splice(splice(d, a), b)


def _insert_pair(d, edge, sign):
    if edge not in d.edges and edge not in d.loops:
        raise DiagramError(f"unknown edge {edge!r}")
    sign = int(sign)
    if sign not in (1, -1):
        raise DiagramError("sign must be +1 or -1")
    a, b = d.fresh_ids("t", 2)
    d = insert_two_valent(d, edge, DOUBLE_LINE, a, sign)
    return insert_two_valent(d, d.nodes[a].ports["out"], DOUBLE_LINE, b, -sign)


def crossing_change(d, xid):
    """Swap over and under at a crossing, paying with a +/- pair of double
    lines on the old over strand (+ before the crossing, - after)."""
    x = d.nodes.get(xid)
    if x is None or x.kind != CLASSICAL:
        raise DiagramError(f"{xid!r} is not a classical crossing")
    a, b = d.fresh_ids("t", 2)
    d = insert_two_valent(d, x.ports["oin"], DOUBLE_LINE, a, 1)
    d = insert_two_valent(d, d.nodes[xid].ports["oout"], DOUBLE_LINE, b, -1)
    nodes = dict(d.nodes)
    nodes[xid] = flip_crossing(d.nodes[xid])
    return PlanarDiagram(nodes, d.loops)


# -- dispatch --------------------------------------------------------------------------------

_KIND_NODE = {"R1": CLASSICAL, "V1": VIRTUAL, "R2": CLASSICAL, "V2": VIRTUAL}


def _raw_sites(d, k):
    name, fwd = k.name, k.direction == FORWARD
    if name in ("R1", "V1"):
        return _kink_sites(d, _KIND_NODE[name], fwd)
    if name in ("R2", "V2"):
        return _finger_sites(d, _KIND_NODE[name]) if fwd else _bigon_sites(d, _KIND_NODE[name])
    if name in _TRIANGLE_KINDS:
        return _triangle_sites(d, name)
    if name == "DL_SLIDE":
        return _slide_sites(d, "ahead" if fwd else "back")
    if fwd:
        return _cancel_sites(d)
    return [(e, s) for e in _all_edges(d) for s in (1, -1)]


def _rewrite(d, k, anchors):
    name, fwd = k.name, k.direction == FORWARD
    if name in ("R1", "V1"):
        return _add_kink(d, _KIND_NODE[name], *anchors) if fwd else \
            _remove_kink(d, _KIND_NODE[name], *anchors)
    if name in ("R2", "V2"):
        return _push_finger(d, _KIND_NODE[name], *anchors) if fwd else \
            _remove_bigon(d, _KIND_NODE[name], *anchors)
    if name in _TRIANGLE_KINDS:
        return _swap_triangle(d, name, *anchors)
    if name == "DL_SLIDE":
        return _slide(d, anchors[0], "ahead" if fwd else "back")
    return _cancel(d, *anchors) if fwd else _insert_pair(d, *anchors)


# moves whose pattern alone does not guarantee a planar result are filtered
_CHECKED = {("R2", BACKWARD), ("V2", BACKWARD), ("R3", FORWARD), ("R3", BACKWARD),
            ("V3", FORWARD), ("V3", BACKWARD), ("MIXED", FORWARD), ("MIXED", BACKWARD)}


def enumerate_sites(d, k):
    sites = []
    for anchors in _raw_sites(d, k):
        if (k.name, k.direction) in _CHECKED:
            try:
                if validate(_rewrite(d, k, anchors)):
                    continue
            except DiagramError:
                continue
        sites.append(MoveSite(k, tuple(anchors)))
    return sites


def apply_move(d, k, site):
    if isinstance(site, MoveSite):
        if site.kind != k:
            raise DiagramError(f"site is for {site.kind}, not {k}")
        site = site.anchors
    try:
        out = _rewrite(d, k, tuple(site))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DiagramError):
            raise
        raise DiagramError(f"stale or malformed site {site!r} for {k}") from exc
    bad = validate(out)
    if bad:
        raise DiagramError(f"{k} at {site!r} gives an invalid diagram: {bad[0].message}")
    return out


def random_move(d, rng, kinds=ALL_MOVES):
    """One uniformly chosen applicable move; returns (diagram, kind, site) or None."""
    kinds = list(kinds)
    rng.shuffle(kinds)
    for k in kinds:
        sites = enumerate_sites(d, k)
        if sites:
            s = rng.choice(sites)
            return apply_move(d, k, s), k, s
    return None


def random_walk(d, steps, seed, kinds=ALL_MOVES):
    rng = random.Random(seed)
    log = []
    for _ in range(steps):
        step = random_move(d, rng, kinds)
        if step is None:
            break
        d, k, s = step
        log.append((str(k), str(s)))
    return d, log

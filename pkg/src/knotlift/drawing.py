"""Turn axis-parallel closed polylines into a planar diagram.

Every proper intersection of two segments becomes a crossing: classical when
its point is listed in ``classical`` (with the over pass given as the
horizontal or vertical one), virtual otherwise.  Marks place double lines or
cut points on a path.  Rotations are read off the drawing, so the result is
planar by construction.
"""

from __future__ import annotations

import math

from .diagram import CLASSICAL, CUT, DOUBLE_LINE, VIRTUAL, Node, PlanarDiagram, node_from_ccw


def _segments(points):
    n = len(points)
    return [(points[i], points[(i + 1) % n]) for i in range(n)]


def _horizontal(seg):
    return seg[0][1] == seg[1][1]


def _param(seg, p):
    (x0, y0), (x1, y1) = seg
    return abs(p[0] - x0) + abs(p[1] - y0)


def _inside(a, b, v):
    return min(a, b) < v < max(a, b)


def realize(paths, classical=None, marks=None, prefix=""):
    """Build a diagram from closed polylines.

    paths      list of vertex lists; consecutive vertices differ in exactly one
               coordinate; the list order gives the orientation.
    classical  {point: (id, over)} with ``over`` in {"h", "v"}.
    marks      list of (path index, point, kind, id, value) where kind is
               "T" (value = sign) or "C" (value = "coh" / "inc").
    """
    classical = classical or {}
    marks = marks or []
    segs = [(pi, si, s) for pi, pts in enumerate(paths) for si, s in enumerate(_segments(pts))]
    stations = {pi: [] for pi in range(len(paths))}
    hits = {}
    horiz = [x for x in segs if _horizontal(x[2])]
    vert = [x for x in segs if not _horizontal(x[2])]
    for hp, hs, h in horiz:
        y = h[0][1]
        for vp, vs, v in vert:
            x = v[0][0]
            if _inside(h[0][0], h[1][0], x) and _inside(v[0][1], v[1][1], y):
                p = (x, y)
                if p in hits:
                    raise ValueError(f"three segments meet at {p}")
                hits[p] = [(hp, hs, h), (vp, vs, v)]
                stations[hp].append((hs, _param(h, p), ("x", p)))
                stations[vp].append((vs, _param(v, p), ("x", p)))
    for mi, (pi, p, kind, mid, value) in enumerate(marks):
        for si, s in enumerate(_segments(paths[pi])):
            if _on(s, p):
                stations[pi].append((si, _param(s, p), ("m", mi)))
                break
        else:
            raise ValueError(f"mark {mid} at {p} is not on path {pi}")

    edge_no = [0]

    def new_edge():
        edge_no[0] += 1
        return f"{prefix}e{edge_no[0]}"

    # half-edges at each station: (edge, is_in, direction vector)
    halves = {}
    loops = []
    for pi, st in stations.items():
        st.sort()
        if not st:
            loops.append(f"{prefix}loop{pi}")
            continue
        n = len(st)
        for k in range(n):
            si, _, key = st[k]
            nsi, _, nkey = st[(k + 1) % n]
            e = new_edge()
            here = _direction(paths[pi], si)
            there = _direction(paths[pi], nsi)
            halves.setdefault(key, []).append((e, False, here, (pi, si)))
            halves.setdefault(nkey, []).append((e, True, (-there[0], -there[1]), (pi, nsi)))

    nodes = []
    count = {"V": 0}
    for key, hs in halves.items():
        if key[0] == "m":
            pi, p, kind, mid, value = marks[key[1]]
            e_in = next(e for e, is_in, _, _ in hs if is_in)
            e_out = next(e for e, is_in, _, _ in hs if not is_in)
            if kind == DOUBLE_LINE:
                nodes.append(Node(mid, DOUBLE_LINE, {"in": e_in, "out": e_out}, value))
            else:
                nodes.append(Node(mid, CUT, {"in": e_in, "out": e_out}, direction=value))
            continue
        p = key[1]
        hs = sorted(hs, key=lambda h: math.atan2(h[2][1], h[2][0]))
        ccw = [(e, is_in, "h" if d[1] == 0 else "v") for e, is_in, d, _ in hs]
        if p in classical:
            nid, over = classical[p]
            nodes.append(node_from_ccw(CLASSICAL, nid, ccw, over))
        else:
            count["V"] += 1
            nodes.append(node_from_ccw(VIRTUAL, f"{prefix}v{count['V']}", ccw))
    missing = set(classical) - set(hits)
    if missing:
        raise ValueError(f"classical points without an intersection: {sorted(missing)}")
    return PlanarDiagram.build(nodes, loops)


def _on(seg, p):
    (x0, y0), (x1, y1) = seg
    if y0 == y1 == p[1]:
        return _inside(x0, x1, p[0])
    if x0 == x1 == p[0]:
        return _inside(y0, y1, p[1])
    return False


def _direction(points, si):
    (x0, y0), (x1, y1) = points[si], points[(si + 1) % len(points)]
    return ((x1 > x0) - (x1 < x0), (y1 > y0) - (y1 < y0))


def long_knot_drawing(events, orientation=None):
    """Axis-parallel drawing of a one-component marked Gauss code.

    ``events`` is a list of tuples: ("X", id, role_of_first_pass) for the
    first pass of a crossing, ("X2", id) for its second pass, ("T", id, sign)
    and ("C", id, dir).  The strand runs left to right along y = 0; the
    second pass of a crossing detours back through the first pass point.
    ``orientation[id]`` = +1 sends that detour up first, -1 down first.
    """
    orientation = orientation or {}
    first = {}
    for k, ev in enumerate(events):
        if ev[0] == "X":
            first[ev[1]] = k
    spans = {cid: (first[ev[1]], k) for k, ev in enumerate(events) if ev[0] == "X2"
             for cid in [ev[1]]}
    # nested spans get strictly smaller detours
    height = {cid: 1000 * (j - i) + i + 1 for cid, (i, j) in spans.items()}
    top = max(height.values(), default=0) + 10
    n = len(events)
    pts = [(-10, 0)]
    classical, marks = {}, []
    for k, ev in enumerate(events):
        x = 10 * k
        if ev[0] == "X":
            role = ev[2]
            classical[(x, 0)] = (ev[1], "h" if role == "over" else "v")
        elif ev[0] == "X2":
            i, _ = spans[ev[1]]
            h = height[ev[1]] * orientation.get(ev[1], 1)
            pts += [(x - 1, 0), (x - 1, h), (10 * i, h), (10 * i, -h), (x + 1, -h), (x + 1, 0)]
        else:
            marks.append((0, (x, 0), ev[0], ev[1], ev[2]))
    pts += [(10 * n, 0), (10 * n, -top), (-10, -top)]
    return realize([pts], classical, marks)

"""Planar diagrams with classical/virtual crossings, double lines and cut points.

A diagram is a rotation system: every node carries named ports, each port is
the endpoint of exactly one directed edge, and 4-valent nodes carry a
counterclockwise cyclic order of their ports.  Text format::

    X <id> sign=<+|-> uin=<e> oin=<e> uout=<e> oout=<e> [rot=p,p,p,p]
    V <id> ain=<e> aout=<e> bin=<e> bout=<e>
    T <id> sign=<+|-> in=<e> out=<e>
    C <id> dir=<coh|inc> in=<e> out=<e>
    L <id>

``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

CLASSICAL, VIRTUAL, DOUBLE_LINE, CUT = "X", "V", "T", "C"

PORTS = {
    CLASSICAL: ("uin", "oin", "uout", "oout"),
    VIRTUAL: ("ain", "aout", "bin", "bout"),
    DOUBLE_LINE: ("in", "out"),
    CUT: ("in", "out"),
}
IN_PORTS = frozenset({"uin", "oin", "ain", "bin", "in"})
# strand continuation through a node
THROUGH = {"uin": "uout", "oin": "oout", "ain": "aout", "bin": "bout", "in": "out"}
BACK = {v: k for k, v in THROUGH.items()}

POSITIVE_ROTATION = ("uin", "oin", "uout", "oout")
NEGATIVE_ROTATION = ("uin", "oout", "uout", "oin")
VIRTUAL_ROTATION = ("ain", "bin", "aout", "bout")


class DiagramError(ValueError):
    """Raised for diagrams that cannot be parsed or fail validation."""


class DiagramSyntaxError(DiagramError):
    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def expected_rotation(kind, sign=0):
    if kind == CLASSICAL:
        return POSITIVE_ROTATION if sign > 0 else NEGATIVE_ROTATION
    if kind == VIRTUAL:
        return VIRTUAL_ROTATION
    return ("in", "out")


def same_cycle(a, b):
    if len(a) != len(b) or set(a) != set(b):
        return False
    k = a.index(b[0])
    return tuple(a[k:] + a[:k]) == tuple(b)


@dataclass(frozen=True)
class Node:
    id: str
    kind: str
    ports: dict = field(default_factory=dict)
    sign: int = 0
    direction: str = ""
    rotation: tuple = ()

    def __post_init__(self):
        if not self.rotation:
            object.__setattr__(self, "rotation", expected_rotation(self.kind, self.sign))

    @property
    def valence(self):
        return len(PORTS[self.kind])

    def with_ports(self, **changes):
        ports = dict(self.ports)
        ports.update(changes)
        return Node(self.id, self.kind, ports, self.sign, self.direction, self.rotation)


def crossing(id, sign, uin, oin, uout, oout, rotation=()):
    return Node(id, CLASSICAL, {"uin": uin, "oin": oin, "uout": uout, "oout": oout}, sign,
                rotation=tuple(rotation))


def virtual(id, ain, aout, bin, bout):
    return Node(id, VIRTUAL, {"ain": ain, "aout": aout, "bin": bin, "bout": bout})


def double_line(id, sign, in_, out):
    return Node(id, DOUBLE_LINE, {"in": in_, "out": out}, sign)


def cut_point(id, direction, in_, out):
    return Node(id, CUT, {"in": in_, "out": out}, direction=direction)


@dataclass(frozen=True)
class PlanarDiagram:
    nodes: dict = field(default_factory=dict)
    loops: tuple = ()

    @classmethod
    def build(cls, nodes=(), loops=()):
        return cls({n.id: n for n in nodes}, tuple(loops))

    @cached_property
    def edges(self):
        """edge id -> ((tail node, port), (head node, port)); None where missing."""
        tails, heads = {}, {}
        for node in self.nodes.values():
            for port, e in node.ports.items():
                side = heads if port in IN_PORTS else tails
                side.setdefault(e, []).append((node.id, port))
        out = {}
        for e in set(tails) | set(heads):
            t, h = tails.get(e, []), heads.get(e, [])
            out[e] = (t[0] if len(t) == 1 else None, h[0] if len(h) == 1 else None)
        return out

    def of_kind(self, kind):
        return sorted((n for n in self.nodes.values() if n.kind == kind), key=lambda n: n.id)

    @property
    def crossings(self):
        return self.of_kind(CLASSICAL)

    @property
    def virtuals(self):
        return self.of_kind(VIRTUAL)

    @property
    def double_lines(self):
        return self.of_kind(DOUBLE_LINE)

    @property
    def cut_points(self):
        return self.of_kind(CUT)

    def next_half(self, node_id, port):
        """Half-edge reached by leaving through an out-port: (node, in-port)."""
        return self.edges[self.nodes[node_id].ports[port]][1]

    def replace(self, remove=(), add=(), loops=None):
        nodes = dict(self.nodes)
        for nid in remove:
            del nodes[nid]
        for n in add:
            nodes[n.id] = n
        return PlanarDiagram(nodes, self.loops if loops is None else tuple(loops))

    def fresh_id(self, prefix):
        taken = set(self.nodes) | set(self.edges) | set(self.loops)
        k = 1
        while f"{prefix}{k}" in taken:
            k += 1
        return f"{prefix}{k}"

    def fresh_ids(self, prefix, count):
        taken = set(self.nodes) | set(self.edges) | set(self.loops)
        out, k = [], 1
        while len(out) < count:
            name = f"{prefix}{k}"
            if name not in taken:
                out.append(name)
            k += 1
        return out


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str  # dangling | rotation | planarity | structure
    message: str


def _structural_violations(d):
    out = []
    seen_out, seen_in = {}, {}
    for node in d.nodes.values():
        if node.kind not in PORTS:
            out.append(Violation("structure", f"node {node.id}: unknown kind {node.kind!r}"))
            continue
        if set(node.ports) != set(PORTS[node.kind]):
            out.append(Violation("structure", f"node {node.id}: ports {sorted(node.ports)}"))
            continue
        if node.kind in (CLASSICAL, DOUBLE_LINE) and node.sign not in (1, -1):
            out.append(Violation("structure", f"node {node.id}: sign must be +1 or -1"))
        if node.kind == CUT and node.direction not in ("coh", "inc"):
            out.append(Violation("structure", f"node {node.id}: direction must be coh or inc"))
        for port, e in node.ports.items():
            bucket = seen_in if port in IN_PORTS else seen_out
            if e in bucket:
                out.append(Violation("dangling", f"edge {e} used twice as "
                                     f"{'target' if port in IN_PORTS else 'source'} "
                                     f"({bucket[e]} and {node.id}.{port})"))
            else:
                bucket[e] = f"{node.id}.{port}"
    for e in sorted(set(seen_in) ^ set(seen_out)):
        where = seen_in.get(e) or seen_out.get(e)
        out.append(Violation("dangling", f"edge {e} has only one endpoint ({where})"))
    clash = (set(seen_in) | set(seen_out)) & set(d.loops)
    for e in sorted(clash):
        out.append(Violation("structure", f"loop id {e} collides with an edge"))
    if len(set(d.loops)) != len(d.loops):
        out.append(Violation("structure", "duplicate free-loop id"))
    return out


def _rotation_violations(d):
    out = []
    for node in d.nodes.values():
        exp = expected_rotation(node.kind, node.sign)
        if not same_cycle(tuple(node.rotation), exp):
            what = "sign" if node.kind == CLASSICAL else "strand labels"
            out.append(Violation("rotation", f"node {node.id}: rotation {node.rotation} "
                                 f"inconsistent with {what}"))
    return out


def face_orbits(d):
    """Faces of the rotation system as lists of half-edges (node, port).

    Walking a face: leave through half-edge h, arrive at the far end h', then
    continue with the clockwise neighbour of h' (face kept on the left).
    """
    prev = {}
    for node in d.nodes.values():
        rot = node.rotation
        for i, p in enumerate(rot):
            prev[(node.id, p)] = (node.id, rot[i - 1])
    far = {}
    for e, (t, h) in d.edges.items():
        far[t] = h
        far[h] = t
    seen, faces = set(), []
    for start in sorted(prev):
        if start in seen:
            continue
        face, h = [], start
        while h not in seen:
            seen.add(h)
            face.append(h)
            h = prev[far[h]]
        faces.append(face)
    return faces


def connected_parts(d):
    parent = {n: n for n in d.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t, h in d.edges.values():
        a, b = find(t[0]), find(h[0])
        if a != b:
            parent[a] = b
    parts = {}
    for n in d.nodes:
        parts.setdefault(find(n), []).append(n)
    return list(parts.values())


def euler_characteristics(d):
    """V - E + F for every connected piece of the node graph (free loops excluded)."""
    part_of = {}
    parts = connected_parts(d)
    for i, nodes in enumerate(parts):
        for n in nodes:
            part_of[n] = i
    chi = [0] * len(parts)
    for n in d.nodes:
        chi[part_of[n]] += 1
    for t, _ in d.edges.values():
        chi[part_of[t[0]]] -= 1
    for face in face_orbits(d):
        chi[part_of[face[0][0]]] += 1
    return chi


def validate(d):
    """List every violated invariant; empty iff the diagram is valid."""
    report = _structural_violations(d)
    if report:
        return report
    report = _rotation_violations(d)
    for i, chi in enumerate(euler_characteristics(d)):
        if chi != 2:
            report.append(Violation("planarity", f"connected piece {i} has V-E+F = {chi}, "
                                    "not an embedding in the sphere"))
    return report


def check(d):
    report = validate(d)
    if report:
        raise DiagramError("; ".join(v.message for v in report))
    return d


# -- text format --------------------------------------------------------------

_TOKEN = re.compile(r"\S+")
_SIGN = {"+": 1, "-": -1, "+1": 1, "-1": -1}


def parse_diagram(text, validate_result=True):
    nodes, loops = {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        (kind, kcol) = tokens[0]
        if kind not in ("X", "V", "T", "C", "L"):
            raise DiagramSyntaxError(f"unknown record type {kind!r}", lineno, kcol)
        if len(tokens) < 2 or "=" in tokens[1][0]:
            raise DiagramSyntaxError("missing id", lineno, kcol)
        nid = tokens[1][0]
        if nid in nodes or nid in loops:
            raise DiagramSyntaxError(f"duplicate id {nid!r}", lineno, tokens[1][1])
        if kind == "L":
            if len(tokens) > 2:
                raise DiagramSyntaxError("free loop takes no attributes", lineno, tokens[2][1])
            loops.append(nid)
            continue
        attrs = {}
        for tok, col in tokens[2:]:
            key, eq, value = tok.partition("=")
            if not eq or not key or not value:
                raise DiagramSyntaxError(f"expected key=value, got {tok!r}", lineno, col)
            if key in attrs:
                raise DiagramSyntaxError(f"repeated attribute {key!r}", lineno, col)
            attrs[key] = (value, col)
        nodes[nid] = _make_node(kind, nid, attrs, lineno, kcol)
    d = PlanarDiagram(nodes, tuple(loops))
    if validate_result:
        check(d)
    return d


def _make_node(kind, nid, attrs, lineno, kcol):
    wanted = set(PORTS[kind])
    extra = {"X": {"sign", "rot"}, "V": set(), "T": {"sign"}, "C": {"dir"}}[kind]
    for key, (_, col) in attrs.items():
        if key not in wanted | extra:
            raise DiagramSyntaxError(f"unexpected attribute {key!r}", lineno, col)
    for key in sorted(wanted | (extra - {"rot"})):
        if key not in attrs:
            raise DiagramSyntaxError(f"missing attribute {key!r}", lineno, kcol)
    ports = {p: attrs[p][0] for p in PORTS[kind]}
    sign, direction, rotation = 0, "", ()
    if "sign" in attrs:
        value, col = attrs["sign"]
        if value not in _SIGN:
            raise DiagramSyntaxError(f"bad sign {value!r}", lineno, col)
        sign = _SIGN[value]
    if "dir" in attrs:
        value, col = attrs["dir"]
        if value not in ("coh", "inc"):
            raise DiagramSyntaxError(f"bad direction {value!r}", lineno, col)
        direction = value
    if "rot" in attrs:
        value, col = attrs["rot"]
        rotation = tuple(value.split(","))
        if sorted(rotation) != sorted(PORTS[kind]):
            raise DiagramSyntaxError(f"rotation must list the four ports, got {value!r}",
                                     lineno, col)
    return Node(nid, kind, ports, sign, direction, rotation)


def _fmt_sign(s):
    return "+" if s > 0 else "-"


def serialize_diagram(d):
    lines = []
    for node in sorted(d.nodes.values(), key=lambda n: ("XVTC".index(n.kind), n.id)):
        p = node.ports
        if node.kind == CLASSICAL:
            line = (f"X {node.id} sign={_fmt_sign(node.sign)} uin={p['uin']} oin={p['oin']} "
                    f"uout={p['uout']} oout={p['oout']}")
            if tuple(node.rotation) != expected_rotation(CLASSICAL, node.sign):
                line += " rot=" + ",".join(node.rotation)
        elif node.kind == VIRTUAL:
            line = f"V {node.id} ain={p['ain']} aout={p['aout']} bin={p['bin']} bout={p['bout']}"
        elif node.kind == DOUBLE_LINE:
            line = f"T {node.id} sign={_fmt_sign(node.sign)} in={p['in']} out={p['out']}"
        else:
            line = f"C {node.id} dir={node.direction} in={p['in']} out={p['out']}"
        lines.append(line)
    lines.extend(f"L {loop}" for loop in sorted(d.loops))
    return "\n".join(lines) + "\n"


def load(path, validate_result=True):
    with open(path) as fh:
        return parse_diagram(fh.read(), validate_result)


def node_from_ccw(kind, nid, ccw, over=None):
    """Build a 4-valent node from its ccw half-edges.

    ``ccw`` lists four ``(edge, is_in, strand)`` triples, strands occupying
    opposite slots.  For a classical crossing ``over`` names the over strand
    and the sign follows from the rotation.
    """
    strands = []
    for _, _, s in ccw:
        if s not in strands:
            strands.append(s)
    if len(strands) != 2 or ccw[0][2] != ccw[2][2] or ccw[1][2] != ccw[3][2]:
        raise DiagramError(f"node {nid}: strands must occupy opposite slots")
    if kind == CLASSICAL:
        names = {over: ("oin", "oout")}
        names[strands[1] if strands[0] == over else strands[0]] = ("uin", "uout")
        ports, rot = {}, []
        for e, is_in, s in ccw:
            p = names[s][0 if is_in else 1]
            ports[p] = e
            rot.append(p)
        rot = tuple(rot)
        sign = 1 if same_cycle(rot, POSITIVE_ROTATION) else -1
        return Node(nid, CLASSICAL, ports, sign)
    for a in strands:
        names = {a: ("ain", "aout")}
        names[strands[1] if strands[0] == a else strands[0]] = ("bin", "bout")
        rot = tuple(names[s][0 if is_in else 1] for _, is_in, s in ccw)
        if same_cycle(rot, VIRTUAL_ROTATION):
            ports = {names[s][0 if is_in else 1]: e for e, is_in, s in ccw}
            return Node(nid, VIRTUAL, ports)
    raise DiagramError(f"node {nid}: no consistent strand labelling")


def halfedges_ccw(node):
    """The node's rotation as ``(edge, is_in, strand)`` triples."""
    return [(node.ports[p], p in IN_PORTS, p[0] if node.valence == 4 else "s")
            for p in node.rotation]


# -- local surgery -------------------------------------------------------------

def _retarget(nodes, node_id, port, edge):
    nodes[node_id] = nodes[node_id].with_ports(**{port: edge})


def insert_two_valent(d, edge, kind, nid, sign=0, direction="", new_edge=None):
    """Put a double line or cut point on ``edge``; the old id keeps the tail part."""
    new_edge = new_edge or d.fresh_id("e")
    if edge in d.loops:
        node = Node(nid, kind, {"in": edge, "out": edge}, sign, direction)
        return PlanarDiagram({**d.nodes, nid: node}, tuple(x for x in d.loops if x != edge))
    (hn, hp) = d.edges[edge][1]
    nodes = dict(d.nodes)
    _retarget(nodes, hn, hp, new_edge)
    nodes[nid] = Node(nid, kind, {"in": edge, "out": new_edge}, sign, direction)
    return PlanarDiagram(nodes, d.loops)


def remove_pass(d, node_id, in_port):
    """Short-circuit one strand through a node: its in-edge absorbs its out-edge.

    The node's remaining ports are left untouched; callers delete the node
    once every strand through it has been removed.  A strand closing on
    itself becomes a free loop.
    """
    node = d.nodes[node_id]
    a, b = node.ports[in_port], node.ports[THROUGH[in_port]]
    nodes = dict(d.nodes)
    loops = list(d.loops)
    ports = dict(node.ports)
    del ports[in_port], ports[THROUGH[in_port]]
    if a == b:
        loops.append(a)
    else:
        (hn, hp) = d.edges[b][1]
        if hn == node_id:
            ports[hp] = a
        else:
            _retarget(nodes, hn, hp, a)
    nodes[node_id] = Node(node.id, node.kind, ports, node.sign, node.direction, node.rotation)
    return PlanarDiagram(nodes, tuple(loops))


def splice(d, node_id):
    """Delete a 2-valent node, joining its two edges."""
    d = remove_pass(d, node_id, "in")
    return d.replace(remove=[node_id])


def dissolve(d, node_id):
    """Delete a 4-valent node by short-circuiting both strands through it."""
    node = d.nodes[node_id]
    for p in [p for p in node.ports if p in IN_PORTS]:
        d = remove_pass(d, node_id, p)
    return d.replace(remove=[node_id])


def flip_crossing(node):
    """Swap over and under at a classical crossing; geometry, hence sign, follows."""
    p = node.ports
    return Node(node.id, CLASSICAL, {"uin": p["oin"], "oin": p["uin"], "uout": p["oout"],
                                     "oout": p["uout"]}, -node.sign)

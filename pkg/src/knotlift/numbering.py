"""Alexander numberings as difference constraints, solved over Z or Z_m.

At a classical crossing one strand passes the other from that strand's
right to its left; call it the rising strand.  With ccw rotation
(uin, oin, uout, oout) the rising strand is the over strand, with
(uin, oout, uout, oin) it is the under strand.  On the four incident arcs::

    rising_out  = rising_in + 1
    falling_out = falling_in - 1
    falling_in  = rising_in + 1

This is the arc form of the region labelling in which crossing an oriented
arc from its right to its left raises the label by one, so every diagram
without virtual crossings is numberable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

from .gauss import CrossingPass, CutMark, segment, traverse


class NumberingError(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    a: str
    b: str
    delta: int  # value(b) - value(a) == delta
    source: str


@dataclass(frozen=True)
class ConstraintSystem:
    variables: tuple
    relations: tuple


@dataclass(frozen=True)
class Numbering:
    modulus: int
    assignment: dict

    def to_json(self):
        return {"modulus": self.modulus, "assignment": dict(sorted(self.assignment.items()))}


def build_constraints(code, include_cuts=False):
    seg = segment(code, "arcs" if include_cuts else "crossing_arcs")
    rels = []
    for crossing, roles in sorted(code.passes().items()):
        (co, io), (cu, iu) = roles["over"], roles["under"]
        sign = code.components[co][io].sign
        o_in, o_out = seg.before(co, io), seg.after(co, io)
        u_in, u_out = seg.before(cu, iu), seg.after(cu, iu)
        if sign > 0:
            r_in, r_out, f_in, f_out = o_in, o_out, u_in, u_out
        else:
            r_in, r_out, f_in, f_out = u_in, u_out, o_in, o_out
        rels.append(Relation(r_in, r_out, 1, crossing))
        rels.append(Relation(f_in, f_out, -1, crossing))
        rels.append(Relation(r_in, f_in, 1, crossing))
    if include_cuts:
        for c, comp in enumerate(code.components):
            for i, ev in enumerate(comp):
                if isinstance(ev, CutMark):
                    step = 1 if ev.direction == "coh" else -1
                    rels.append(Relation(seg.before(c, i), seg.after(c, i), step, ev.cut))
    return ConstraintSystem(tuple(s.id for s in seg.segments), tuple(rels))


def _potentials(cs):
    """Spanning-forest potentials and the weights of all non-tree relations."""
    adj = {v: [] for v in cs.variables}
    for k, r in enumerate(cs.relations):
        adj[r.a].append((r.b, r.delta, k))
        adj[r.b].append((r.a, -r.delta, k))
    pot, tree = {}, set()
    for root in cs.variables:
        if root in pot:
            continue
        pot[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, delta, k in adj[v]:
                if w not in pot:
                    pot[w] = pot[v] + delta
                    tree.add(k)
                    queue.append(w)
    cycles = [pot[r.a] + r.delta - pot[r.b]
              for k, r in enumerate(cs.relations) if k not in tree]
    return pot, cycles


def defect(cs):
    """g >= 0 such that cs is solvable mod m exactly when m divides g."""
    _, cycles = _potentials(cs)
    g = 0
    for w in cycles:
        g = gcd(g, w)
    return g


def solve(cs, m=0):
    pot, cycles = _potentials(cs)
    for w in cycles:
        if (m == 0 and w != 0) or (m > 0 and w % m):
            return None
    if m > 0:
        pot = {v: x % m for v, x in pot.items()}
    return Numbering(m, pot)


def check_numbering(cs, n):
    m = n.modulus
    bad = []
    for r in cs.relations:
        diff = n.assignment[r.b] - n.assignment[r.a] - r.delta
        if (m == 0 and diff != 0) or (m > 0 and diff % m):
            bad.append(r)
    return bad


def has_cut_points(code):
    return any(isinstance(ev, CutMark) for comp in code.components for ev in comp)


def is_mod_m_ac(d, m=0):
    code = traverse(d)
    if has_cut_points(code):
        raise NumberingError("diagram carries cut points; use the cut-system check")
    return solve(build_constraints(code), m) is not None


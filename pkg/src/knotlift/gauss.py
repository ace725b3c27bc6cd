"""Marked Gauss codes: traversal, segmentation and canonical forms."""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import CLASSICAL, CUT, DOUBLE_LINE, THROUGH


@dataclass(frozen=True)
class CrossingPass:
    crossing: str
    role: str  # "over" | "under"
    sign: int


@dataclass(frozen=True)
class DoubleLineMark:
    dl: str
    sign: int


@dataclass(frozen=True)
class CutMark:
    cut: str
    direction: str  # "coh" | "inc"


@dataclass(frozen=True)
class MarkedGaussCode:
    """One cyclic event sequence per component.

    ``gaps[c][i]`` lists the diagram edges walked between event ``i`` and
    event ``i + 1`` of component ``c``; it is bookkeeping only and does not
    take part in equality.
    """

    components: tuple
    gaps: tuple = field(default=(), compare=False)

    def __str__(self):
        return " | ".join(" ".join(event_str(e) for e in comp) or "()" for comp in self.components)

    def passes(self):
        """crossing id -> {role: (component, index)}."""
        out = {}
        for c, comp in enumerate(self.components):
            for i, ev in enumerate(comp):
                if isinstance(ev, CrossingPass):
                    out.setdefault(ev.crossing, {})[ev.role] = (c, i)
        return out


def event_str(ev):
    if isinstance(ev, CrossingPass):
        return f"{'O' if ev.role == 'over' else 'U'}{ev.crossing}{'+' if ev.sign > 0 else '-'}"
    if isinstance(ev, DoubleLineMark):
        return f"T{ev.dl}{'+' if ev.sign > 0 else '-'}"
    return f"C{ev.cut}{'>' if ev.direction == 'coh' else '<'}"


def _event_at(node, port):
    if node.kind == CLASSICAL:
        return CrossingPass(node.id, "over" if port == "oin" else "under", node.sign)
    if node.kind == DOUBLE_LINE:
        return DoubleLineMark(node.id, node.sign)
    if node.kind == CUT:
        return CutMark(node.id, node.direction)
    return None


def walk_component(d, start_edge):
    """Edges of the component through ``start_edge`` in orientation order,
    each paired with the event at its head (None for virtual crossings)."""
    steps, e = [], start_edge
    while True:
        node_id, port = d.edges[e][1]
        node = d.nodes[node_id]
        steps.append((e, _event_at(node, port)))
        e = node.ports[THROUGH[port]]
        if e == start_edge:
            return steps


def traverse(d):
    """Marked Gauss code of a valid diagram; components ordered by least edge id."""
    comps, gaps, seen = [], [], set()
    starts = sorted(list(d.edges) + [(loop) for loop in d.loops])
    loops = set(d.loops)
    for e in starts:
        if e in seen:
            continue
        if e in loops:
            seen.add(e)
            comps.append(())
            gaps.append(((e,),))
            continue
        steps = walk_component(d, e)
        seen.update(s for s, _ in steps)
        k = next((i for i, (_, ev) in enumerate(steps) if ev is not None), None)
        if k is None:
            comps.append(())
            gaps.append((tuple(s for s, _ in steps),))
            continue
        # rotate so the component opens with its first event
        steps = steps[k + 1:] + steps[:k + 1]
        events = [steps[-1][1]]
        comp_gaps, cur = [], []
        for s, ev in steps:
            cur.append(s)
            if ev is not None:
                comp_gaps.append(tuple(cur))
                cur = []
                events.append(ev)
        events.pop()
        comps.append(tuple(events))
        gaps.append(tuple(comp_gaps))
    return MarkedGaussCode(tuple(comps), tuple(gaps))


# -- segmentation --------------------------------------------------------------

POLICIES = {
    "arcs": (CrossingPass, CutMark),
    # arcs with cut marks ignored
    "crossing_arcs": (CrossingPass,),
    "long_arcs": (DoubleLineMark,),
    "short_arcs": (CrossingPass, DoubleLineMark),
}


@dataclass(frozen=True)
class Segment:
    id: str
    component: int
    start: int | None  # index of the boundary event at the tail
    end: int | None  # index of the boundary event at the head
    interior: tuple  # indices of non-boundary events inside
    edges: tuple


@dataclass(frozen=True)
class Segmentation:
    policy: str
    segments: tuple

    def by_id(self):
        return {s.id: s for s in self.segments}

    def after(self, component, index):
        return self._after[(component, index)]

    def before(self, component, index):
        return self._before[(component, index)]

    def __post_init__(self):
        after, before = {}, {}
        for s in self.segments:
            if s.start is not None:
                after[(s.component, s.start)] = s.id
                before[(s.component, s.end)] = s.id
        object.__setattr__(self, "_after", after)
        object.__setattr__(self, "_before", before)


def segment_id(component, start):
    return f"{component}:{'*' if start is None else start}"


def segment(code, policy="arcs"):
    kinds = POLICIES[policy]
    segs = []
    for c, comp in enumerate(code.components):
        gaps = code.gaps[c] if code.gaps else ((),) * max(len(comp), 1)
        bounds = [i for i, ev in enumerate(comp) if isinstance(ev, kinds)]
        if not bounds:
            edges = tuple(e for g in gaps for e in g)
            segs.append(Segment(segment_id(c, None), c, None, None, tuple(range(len(comp))), edges))
            continue
        n = len(comp)
        for j, b in enumerate(bounds):
            nxt = bounds[(j + 1) % len(bounds)]
            span = (nxt - b) % n or n
            idx = [(b + k) % n for k in range(span + 1)]
            edges = tuple(e for i in idx[:-1] for e in gaps[i])
            segs.append(Segment(segment_id(c, b), c, b, nxt, tuple(idx[1:-1]), edges))
    return Segmentation(policy, tuple(segs))


# -- canonical form -------------------------------------------------------------

def _token(ev, labels, fresh):
    if isinstance(ev, CrossingPass):
        key, head = ("X", ev.crossing), (0, 0 if ev.role == "over" else 1, ev.sign)
    elif isinstance(ev, DoubleLineMark):
        key, head = ("T", ev.dl), (1, 0, ev.sign)
    else:
        key, head = ("C", ev.cut), (2, 0, 1 if ev.direction == "coh" else -1)
    if key not in labels:
        labels[key] = fresh[0]
        fresh[0] += 1
    return head + (labels[key],)


def _encode(seq, labels, count):
    labels = dict(labels)
    fresh = [count]
    toks = tuple(_token(ev, labels, fresh) for ev in seq)
    return (len(seq),) + toks, labels, fresh[0]


def canonical_code(code):
    """Relabeling-, reordering- and rotation-invariant form of a code.

    Branch-and-bound over component order and cyclic start: at each step only
    the candidates with the lexicographically least encoding survive.
    """
    comps = [tuple(c) for c in code.components]
    best = [None]

    def search(remaining, labels, count, acc):
        if not remaining:
            result = tuple(acc)
            if best[0] is None or result < best[0]:
                best[0] = result
            return
        cands = []
        for k, comp in enumerate(remaining):
            n = len(comp)
            starts = range(n) if n else [0]
            for r in starts:
                enc, lab, cnt = _encode(comp[r:] + comp[:r], labels, count)
                cands.append((enc, k, lab, cnt))
        least = min(c[0] for c in cands)
        if best[0] is not None and tuple(acc) + (least,) > best[0][:len(acc) + 1]:
            return
        tried = set()
        for enc, k, lab, cnt in cands:
            if enc != least:
                continue
            # identical (remaining, labels) states give identical subtrees
            sig = (k, tuple(sorted(lab.items())))
            if sig in tried:
                continue
            tried.add(sig)
            search(remaining[:k] + remaining[k + 1:], lab, cnt, acc + [enc])

    search(comps, {}, 0, [])
    return best[0]

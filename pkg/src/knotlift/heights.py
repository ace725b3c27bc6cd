"""Degrees of components and heights of long arcs.

A long arc is named after the double line at its tail, so the arc right
after the base double line is the base id itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import DiagramError
from .gauss import DoubleLineMark, traverse


@dataclass(frozen=True)
class HeightMap:
    base: str
    modulus: int  # |degree|, 0 for degree 0
    heights: dict  # long-arc id -> value

    def to_json(self):
        return {"base": self.base, "modulus": self.modulus,
                "heights": dict(sorted(self.heights.items()))}


def degree(d, component=0):
    code = traverse(d)
    if not 0 <= component < len(code.components):
        raise DiagramError(f"no component {component}")
    return sum(ev.sign for ev in code.components[component] if isinstance(ev, DoubleLineMark))


def _locate(code, dl):
    for c, comp in enumerate(code.components):
        for i, ev in enumerate(comp):
            if isinstance(ev, DoubleLineMark) and ev.dl == dl:
                return c, i
    raise DiagramError(f"unknown double line {dl!r}")


def gap_heights(comp, base_index):
    """Integer height of every gap of one component (gap i follows event i).

    Heights start at 0 after event ``base_index``; -1 means "first double line".
    """
    n = len(comp)
    if base_index is None:
        base_index = next((i for i, ev in enumerate(comp) if isinstance(ev, DoubleLineMark)), None)
    out = [0] * n
    if base_index is None:
        return out
    h = 0
    for k in range(n):
        i = (base_index + k) % n
        ev = comp[i]
        if k and isinstance(ev, DoubleLineMark):
            h += ev.sign
        out[i] = h
    return out


def heights(d, base):
    code = traverse(d)
    c, b = _locate(code, base)
    comp = code.components[c]
    n = abs(sum(ev.sign for ev in comp if isinstance(ev, DoubleLineMark)))
    gh = gap_heights(comp, b)
    values = {ev.dl: (gh[i] % n if n else gh[i])
              for i, ev in enumerate(comp) if isinstance(ev, DoubleLineMark)}
    return HeightMap(base, n, values)


def rebase_heights(h, base2):
    if base2 not in h.heights:
        raise DiagramError(f"unknown double line {base2!r}")
    s = h.heights[base2]
    n = h.modulus
    return HeightMap(base2, n, {k: ((v - s) % n if n else v - s) for k, v in h.heights.items()})

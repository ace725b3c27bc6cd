"""Seeded random diagrams: a random marked Gauss code, drawn as a long knot
whose chords detour around the line (their extra intersections are virtual)."""

from __future__ import annotations

import random

from .drawing import long_knot_drawing


def random_events(rng, crossings, signs):
    """Event list for long_knot_drawing with the given double-line signs."""
    slots = [("X", f"c{i + 1}") for i in range(crossings) for _ in range(2)]
    slots += [("T", f"t{i + 1}", s) for i, s in enumerate(signs)]
    rng.shuffle(slots)
    seen, events = set(), []
    for ev in slots:
        if ev[0] == "X":
            if ev[1] in seen:
                events.append(("X2", ev[1]))
            else:
                seen.add(ev[1])
                events.append(("X", ev[1], rng.choice(("over", "under"))))
        else:
            events.append(ev)
    return events


def _signs(rng, max_double_lines, degree):
    if degree is None:
        k = rng.randint(0, max_double_lines)
        return [rng.choice((1, -1)) for _ in range(k)]
    counts = [k for k in range(abs(degree), max_double_lines + 1) if (k - abs(degree)) % 2 == 0]
    if not counts:
        raise ValueError(f"degree {degree} needs more than {max_double_lines} double lines")
    k = rng.choice(counts)
    extra = (k - abs(degree)) // 2
    s = 1 if degree >= 0 else -1
    signs = [s] * (abs(degree) + extra) + [-s] * extra
    rng.shuffle(signs)
    return signs


def generate_random_diagram(seed, max_crossings=8, max_double_lines=6, degree=0):
    """Valid one-component diagram; ``degree=None`` leaves the degree random."""
    rng = random.Random(seed)
    n = rng.randint(0, max_crossings)
    events = random_events(rng, n, _signs(rng, max_double_lines, degree))
    orientation = {f"c{i + 1}": rng.choice((1, -1)) for i in range(n)}
    return long_knot_drawing(events, orientation)


def random_virtual_knot(seed, max_crossings=8):
    return generate_random_diagram(seed, max_crossings, 0, 0)

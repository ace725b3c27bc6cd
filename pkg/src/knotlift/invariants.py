"""Cheap virtual-knot invariants used as oracles: odd writhe, linking numbers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .gauss import CrossingPass, DoubleLineMark, traverse
from .numbering import build_constraints, solve

AC_MODULI = (0, 2, 3, 4, 5)


@dataclass(frozen=True)
class InvariantReport:
    components: int
    odd_writhe: tuple
    linking: tuple  # linking[i][j]: signed count of i passing over j
    ac: dict  # modulus -> numberable
    degrees: tuple

    def to_json(self):
        return {"components": self.components, "odd_writhe": list(self.odd_writhe),
                "linking": [list(r) for r in self.linking],
                "ac": {str(m): v for m, v in self.ac.items()}, "degrees": list(self.degrees)}


def _self_odd_writhe(comp):
    passes = [ev for ev in comp if isinstance(ev, CrossingPass)]
    where = {}
    for i, ev in enumerate(passes):
        where.setdefault(ev.crossing, []).append(i)
    total = 0
    for x, idx in where.items():
        if len(idx) == 2 and (idx[1] - idx[0] - 1) % 2:
            total += passes[idx[0]].sign
    return total


def odd_writhe(code):
    if len(code.components) != 1:
        raise ValueError("odd writhe is defined here for knots only")
    return _self_odd_writhe(code.components[0])


def linking_matrix(code):
    n = len(code.components)
    mat = [[0] * n for _ in range(n)]
    for x, roles in code.passes().items():
        (co, io), (cu, _) = roles["over"], roles["under"]
        if co != cu:
            mat[co][cu] += code.components[co][io].sign
    return tuple(tuple(r) for r in mat)


def invariant_report(d, moduli=AC_MODULI):
    code = traverse(d)
    cs = build_constraints(code)
    return InvariantReport(
        components=len(code.components),
        odd_writhe=tuple(_self_odd_writhe(c) for c in code.components),
        linking=linking_matrix(code),
        ac={m: solve(cs, m) is not None for m in moduli},
        degrees=tuple(sum(ev.sign for ev in c if isinstance(ev, DoubleLineMark))
                      for c in code.components),
    )


def matching_permutation(r1, r2):
    """A relabeling p with r2 component p[i] playing the part of r1 component i,
    agreeing on odd writhe, degree and linking numbers; None if there is none."""
    if r1.components != r2.components:
        return None
    n = r1.components
    for p in permutations(range(n)):
        if any(r1.odd_writhe[i] != r2.odd_writhe[p[i]] or r1.degrees[i] != r2.degrees[p[i]]
               for i in range(n)):
            continue
        if all(r1.linking[i][j] == r2.linking[p[i]][p[j]] for i in range(n) for j in range(n)):
            return p
    return None


def same_invariants(r1, r2, ac=()):
    """Equality up to component relabeling; AC flags compared only for ``ac``."""
    if any(r1.ac.get(m) != r2.ac.get(m) for m in ac):
        return False
    return matching_permutation(r1, r2) is not None

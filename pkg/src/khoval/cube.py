"""The cube of resolutions: smoothings, circle partitions and signed edges.

The 0-smoothing of ``X(a,b,c,d)`` joins arcs a-b and c-d, the 1-smoothing
joins a-d and b-c.  For a positive crossing the 0-smoothing is the oriented
one, for a negative crossing the 1-smoothing is.  Bit ``p`` of a state word
belongs to crossing ``p`` in PD order; :func:`word` prints it left to right.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._uf import UnionFind
from .diagram import Diagram, _ensure_signed

__all__ = [
    "State",
    "CubeEdge",
    "resolve",
    "edges",
    "seifert_state_index",
    "state_table",
    "word",
    "edge_sign",
]


def word(bits: int, n: int) -> str:
    """State word in crossing order, e.g. ``word(0b001, 3) == "100"``."""
    return "".join("1" if (bits >> p) & 1 else "0" for p in range(n))


def edge_sign(bits: int, position: int) -> int:
    """(-1) to the number of 1s in front of ``position``."""
    return -1 if bin(bits & ((1 << position) - 1)).count("1") % 2 else 1


@dataclass(frozen=True)
class State:
    bits: int
    n: int
    circle_count: int
    circle_of_arc: tuple  # circle of arc id a at index a-1; circles 0-based

    @property
    def weight(self):
        return bin(self.bits).count("1")

    @property
    def word(self):
        return word(self.bits, self.n)

    def circles(self):
        """Arc sets of the circles, crossing-free circles as empty tuples."""
        out = [[] for _ in range(self.circle_count)]
        for arc, c in enumerate(self.circle_of_arc, start=1):
            out[c].append(arc)
        return [tuple(c) for c in out]


@dataclass(frozen=True)
class CubeEdge:
    source: State
    target: State
    position: int
    kind: str  # "merge" or "split"
    circles: tuple  # merge: (src1, src2, dst); split: (src, dst1, dst2)
    sign: int


def resolve(d: Diagram, bits: int) -> State:
    """Smooth every crossing of ``d`` according to ``bits``."""
    if not 0 <= bits < (1 << d.n):
        raise ValueError(f"state {bits} outside the cube of a {d.n}-crossing diagram")
    uf = UnionFind(d.arc_count)
    for p, x in enumerate(d.crossings):
        a, b, c, e = (arc - 1 for arc in x.arcs)
        if (bits >> p) & 1:
            uf.union(a, e)
            uf.union(b, c)
        else:
            uf.union(a, b)
            uf.union(c, e)
    labels, count = uf.labels()
    return State(
        bits=bits,
        n=d.n,
        circle_count=count + d.extra_unknot_components,
        circle_of_arc=tuple(labels),
    )


def edges(d: Diagram) -> list:
    """Every edge of the cube, ordered by (source bits, flipped position)."""
    states = [resolve(d, bits) for bits in range(1 << d.n)]
    out = []
    for src in states:
        for p, x in enumerate(d.crossings):
            if (src.bits >> p) & 1:
                continue
            dst = states[src.bits | (1 << p)]
            ca = src.circle_of_arc[x.a - 1]
            cc = src.circle_of_arc[x.c - 1]
            if ca != cc:
                kind = "merge"
                circles = (min(ca, cc), max(ca, cc), dst.circle_of_arc[x.a - 1])
            else:
                kind = "split"
                circles = (ca, dst.circle_of_arc[x.a - 1], dst.circle_of_arc[x.b - 1])
            out.append(CubeEdge(src, dst, p, kind, circles, edge_sign(src.bits, p)))
    return out


def seifert_state_index(d: Diagram) -> int:
    """The oriented resolution: 1 at negative crossings, 0 at positive ones."""
    d = _ensure_signed(d)
    return sum(1 << p for p, x in enumerate(d.crossings) if x.sign < 0)


def crossing_array(d: Diagram) -> np.ndarray:
    return np.array([[a - 1 for a in x.arcs] for x in d.crossings], dtype=np.int64).reshape(d.n, 4)


def state_table(d: Diagram):
    """Circle counts (crossing-free circles included) and arc labels of all 2^n states.

    Compiled counterpart of :func:`resolve`; labels follow the same
    smallest-arc-first numbering.
    """
    counts, labels = _kernels.state_table(crossing_array(d), d.arc_count, 0, 1 << d.n)
    return counts + d.extra_unknot_components, labels

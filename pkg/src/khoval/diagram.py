"""Oriented link diagrams in PD notation, Seifert circles and positivity classes.

A crossing ``X(a,b,c,d)`` lists its four arcs counterclockwise, starting
with the incoming under-strand, so the under-strand runs ``a -> c``.  Arcs
of each component are numbered consecutively along the orientation, which
lets the orientation (and hence every crossing sign) be read off the text:
the crossing is positive when the over-strand runs ``d -> b`` and negative
when it runs ``b -> d``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property

from ._uf import UnionFind
from .errors import (
    DisconnectedDiagram,
    EmptyInput,
    EmptyWord,
    GeneratorOutOfRange,
    InconsistentArcs,
    MalformedToken,
    OrientationConflict,
)

__all__ = [
    "Crossing",
    "Diagram",
    "SeifertData",
    "PositivityClass",
    "parse_pd",
    "derive_signs",
    "braid_to_pd",
    "mirror",
    "add_kink",
    "reorder",
    "rotate_arc_labels",
    "crossing_change",
    "seifert",
    "canonical_genus",
    "classify",
    "is_connected",
]


@dataclass(frozen=True)
class Crossing:
    a: int
    b: int
    c: int
    d: int
    sign: int = 0  # 0 until derive_signs has run

    @property
    def arcs(self):
        return (self.a, self.b, self.c, self.d)

    def __str__(self):
        return f"X({self.a},{self.b},{self.c},{self.d})"


@dataclass(frozen=True)
class Diagram:
    crossings: tuple
    arc_count: int
    components: tuple  # each a tuple of arc ids in orientation order
    extra_unknot_components: int = 0

    @property
    def n(self):
        return len(self.crossings)

    @property
    def signed(self):
        return all(x.sign != 0 for x in self.crossings)

    @property
    def n_plus(self):
        return sum(1 for x in self.crossings if x.sign > 0)

    @property
    def n_minus(self):
        return sum(1 for x in self.crossings if x.sign < 0)

    @property
    def writhe(self):
        return self.n_plus - self.n_minus

    @property
    def component_count(self):
        return len(self.components) + self.extra_unknot_components

    @cached_property
    def successor(self):
        succ = {}
        for comp in self.components:
            for i, arc in enumerate(comp):
                succ[arc] = comp[(i + 1) % len(comp)]
        return succ

    @cached_property
    def component_of_arc(self):
        return {arc: k for k, comp in enumerate(self.components) for arc in comp}

    def to_pd(self):
        parts = [str(x) for x in self.crossings]
        parts += ["O"] * self.extra_unknot_components
        return " ".join(parts)

    def __str__(self):
        return self.to_pd()


@dataclass(frozen=True)
class SeifertData:
    circle_count: int
    circle_of_arc: dict  # arc id -> circle id (1-based)
    crossing_pairs: tuple  # per crossing, sorted pair of circle ids


@dataclass(frozen=True)
class PositivityClass:
    kind: str  # "Positive", "AlmostPositive" or "Other"
    n_minus: int
    negative_index: int | None = None
    case: int | None = None  # 1 or 2 for almost positive diagrams
    self_pair: bool = False  # the negative crossing joins a circle to itself

    @property
    def tag(self):
        if self.kind == "AlmostPositive":
            return f"AlmostPositive(Case{self.case})"
        return self.kind


# ---------------------------------------------------------------- parsing

_CROSSING = re.compile(r"X\(([^()]*)\)")


def _strip_comments(text):
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def parse_pd(text: str) -> Diagram:
    """Parse whitespace separated ``X(a,b,c,d)`` and ``O`` tokens.

    The result is validated but unsigned; see :func:`derive_signs`.
    ``#`` starts a comment that runs to the end of the line.
    """
    tokens = _strip_comments(text).split()
    if not tokens:
        raise EmptyInput()
    tuples = []
    extra = 0
    for tok in tokens:
        if tok == "O":
            extra += 1
            continue
        m = _CROSSING.fullmatch(tok)
        if m is None:
            raise MalformedToken(tok)
        parts = m.group(1).split(",")
        if len(parts) != 4:
            raise MalformedToken(tok, f"expected 4 arc ids, got {len(parts)}")
        ids = []
        for p in parts:
            p = p.strip()
            if not p.isdigit() or int(p) == 0:
                raise MalformedToken(tok, f"arc id {p!r} is not a positive integer")
            ids.append(int(p))
        tuples.append(tuple(ids))
    return _assemble(tuples, extra)


def _assemble(tuples, extra, signs=None):
    counts = {}
    for t in tuples:
        for arc in t:
            counts[arc] = counts.get(arc, 0) + 1
    m = len(counts)
    if counts and (min(counts) != 1 or max(counts) != m):
        raise InconsistentArcs(f"arc ids must be exactly 1..{m}, got {sorted(counts)}")
    bad = sorted(a for a, k in counts.items() if k != 2)
    if bad:
        raise InconsistentArcs(f"arcs {bad} do not appear exactly twice")

    uf = UnionFind(m + 1)
    for a, b, c, d in tuples:
        uf.union(a, c)
        uf.union(b, d)
    groups = {}
    for arc in range(1, m + 1):
        groups.setdefault(uf.find(arc), []).append(arc)
    components = []
    for arcs in sorted(groups.values()):
        lo, hi = arcs[0], arcs[-1]
        if hi - lo + 1 != len(arcs):
            raise InconsistentArcs(
                f"component arcs {arcs} are not numbered consecutively"
            )
        components.append(tuple(arcs))

    diagram = Diagram(
        crossings=tuple(
            Crossing(*t, sign=0 if signs is None else signs[i])
            for i, t in enumerate(tuples)
        ),
        arc_count=m,
        components=tuple(components),
        extra_unknot_components=extra,
    )
    succ = diagram.successor
    for x in diagram.crossings:
        if succ[x.a] != x.c:
            raise InconsistentArcs(
                f"under-strand of {x} runs {x.a}->{x.c}, which does not follow"
                " the arc numbering"
            )
    return diagram


# ---------------------------------------------------------------- signs


def _over_runs_d_to_b(diagram):
    """Direction of each over-strand: True for d->b, False for b->d."""
    succ = diagram.successor
    comp_of = diagram.component_of_arc
    out = [None] * diagram.n
    ambiguous = {}
    for i, x in enumerate(diagram.crossings):
        fwd = succ[x.d] == x.b
        bwd = succ[x.b] == x.d
        if fwd and bwd:
            # two-arc component: numbering alone cannot orient it
            ambiguous.setdefault(comp_of[x.b], []).append(i)
        elif fwd:
            out[i] = True
        elif bwd:
            out[i] = False
        else:
            raise OrientationConflict(
                f"over-strand of {x} joins arcs {x.b} and {x.d}, which are not"
                " consecutive on their component"
            )
    for k, over_idx in ambiguous.items():
        comp = diagram.components[k]
        under = [x for x in diagram.crossings if comp_of[x.a] == k]
        if under:
            # the two passages of a two-arc component run in opposite directions
            tail = under[0].c
            for i in over_idx:
                out[i] = diagram.crossings[i].d == tail
        elif len(over_idx) != 2:
            raise OrientationConflict(
                f"component {comp} cannot be oriented from the arc numbering"
            )
        else:
            # component is over at both of its crossings: the first one runs lo -> hi
            first, second = over_idx
            out[first] = diagram.crossings[first].d == comp[0]
            out[second] = diagram.crossings[second].d == comp[1]

    heads = {}
    for i, x in enumerate(diagram.crossings):
        for arc in (x.a, x.d if out[i] else x.b):
            if arc in heads:
                raise OrientationConflict(f"arc {arc} enters two crossings")
            heads[arc] = i
    return out


def derive_signs(d: Diagram) -> Diagram:
    """Return ``d`` with every crossing sign set from the arc orientation."""
    directions = _over_runs_d_to_b(d)
    crossings = tuple(
        replace(x, sign=1 if fwd else -1) for x, fwd in zip(d.crossings, directions)
    )
    return replace(d, crossings=crossings)


def _ensure_signed(d):
    return d if d.signed else derive_signs(d)


# ---------------------------------------------------------------- braids


def braid_to_pd(word, strands: int) -> Diagram:
    """PD diagram of the closure of a braid word.

    ``+i`` is a positive crossing between strands ``i`` and ``i+1``, ``-i``
    a negative one.  Strands that never cross become ``O`` components.
    """
    word = [int(g) for g in word]
    if strands < 1:
        raise GeneratorOutOfRange(f"need at least one strand, got {strands}")
    for g in word:
        if g == 0 or abs(g) >= strands:
            raise GeneratorOutOfRange(f"generator {g} out of range for {strands} strands")
    if not word:
        if strands != 1:
            raise EmptyWord(f"empty word on {strands} strands")
        return Diagram(crossings=(), arc_count=0, components=(), extra_unknot_components=1)

    cur = list(range(strands))
    fresh = strands
    raw = []
    for g in word:
        i = abs(g) - 1
        left, right = cur[i], cur[i + 1]
        left_out, right_out = fresh, fresh + 1
        fresh += 2
        if g > 0:
            raw.append((right, right_out, left_out, left))
        else:
            raw.append((left, right, right_out, left_out))
        cur[i], cur[i + 1] = left_out, right_out
    alias = {cur[p]: p for p in range(strands) if cur[p] != p}
    free = sum(1 for p in range(strands) if cur[p] == p)
    raw = [tuple(alias.get(x, x) for x in t) for t in raw]

    succ = {}
    for (a, b, c, d), g in zip(raw, word):
        succ[a] = c
        if g > 0:
            succ[d] = b
        else:
            succ[b] = d
    label = {}
    for start in range(strands):
        if start in label or start not in succ:
            continue
        arc = start
        while arc not in label:
            label[arc] = len(label) + 1
            arc = succ[arc]
    tuples = [tuple(label[x] for x in t) for t in raw]
    diagram = derive_signs(_assemble(tuples, free))
    assert [x.sign for x in diagram.crossings] == [1 if g > 0 else -1 for g in word]
    return diagram


# ---------------------------------------------------------------- transformations


def reorder(d: Diagram, order) -> Diagram:
    """Same diagram with crossings listed in ``order`` (a permutation of indices)."""
    order = list(order)
    if sorted(order) != list(range(d.n)):
        raise ValueError(f"{order} is not a permutation of range({d.n})")
    return replace(d, crossings=tuple(d.crossings[i] for i in order))


def _relabel(d, mapping, signs):
    tuples = [tuple(mapping.get(a, a) for a in x.arcs) for x in d.crossings]
    return _assemble(tuples, d.extra_unknot_components, signs=signs)


def rotate_arc_labels(d: Diagram, component: int, shift: int) -> Diagram:
    """Renumber one component's arcs cyclically, keeping its orientation."""
    d = _ensure_signed(d)
    comp = d.components[component]
    lo, size = comp[0], len(comp)
    mapping = {a: lo + (a - lo + shift) % size for a in comp}
    out = derive_signs(_relabel(d, mapping, None))
    if [x.sign for x in out.crossings] != [x.sign for x in d.crossings]:
        # a two-arc component is only oriented up to convention; keep the old one
        out = _relabel(d, mapping, [x.sign for x in d.crossings])
    return out


def mirror(d: Diagram) -> Diagram:
    """Mirror image: every crossing switched, orientation kept."""
    d = _ensure_signed(d)
    tuples = []
    for x in d.crossings:
        if x.sign > 0:
            # old over-strand d->b becomes the under-strand
            tuples.append((x.d, x.a, x.b, x.c))
        else:
            tuples.append((x.b, x.c, x.d, x.a))
    want = [-x.sign for x in d.crossings]
    out = derive_signs(_assemble(tuples, d.extra_unknot_components))
    if [x.sign for x in out.crossings] != want:
        out = _assemble(tuples, d.extra_unknot_components, signs=want)
    return out


def crossing_change(d: Diagram, index: int) -> Diagram:
    """Switch over and under strands at one crossing."""
    d = _ensure_signed(d)
    x = d.crossings[index]
    t = (x.d, x.a, x.b, x.c) if x.sign > 0 else (x.b, x.c, x.d, x.a)
    tuples = [y.arcs for y in d.crossings]
    tuples[index] = t
    signs = [y.sign for y in d.crossings]
    signs[index] = -x.sign
    out = _assemble(tuples, d.extra_unknot_components)
    try:
        derived = derive_signs(out)
    except OrientationConflict:
        derived = None
    if derived is not None and [y.sign for y in derived.crossings] == signs:
        return derived
    return _assemble(tuples, d.extra_unknot_components, signs=signs)


def add_kink(d: Diagram, arc: int | None = None, sign: int = 1, position: int | None = None) -> Diagram:
    """Insert a Reidemeister-I kink of the given sign on ``arc``.

    With ``arc=None`` the kink goes on arc 1, or on a crossing-free
    component when the diagram has no crossings.  The new crossing is
    placed at ``position`` in the crossing order (default: last).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    d = _ensure_signed(d)
    tuples = [list(x.arcs) for x in d.crossings]
    signs = [x.sign for x in d.crossings]
    extra = d.extra_unknot_components
    if arc is None and d.arc_count == 0:
        if extra == 0:
            raise ValueError("empty diagram")
        k = 1
        extra -= 1
        new = (k, k, k + 1, k + 1) if sign > 0 else (k, k + 1, k + 1, k)
    else:
        k = 1 if arc is None else arc
        if not 1 <= k <= d.arc_count:
            raise ValueError(f"no arc {k}")
        # where arc k enters a crossing: that end becomes the new arc k+2
        for i, x in enumerate(d.crossings):
            head_slot = 3 if x.sign > 0 else 1
            for slot, a in enumerate(x.arcs):
                if a > k:
                    tuples[i][slot] = a + 2
            if x.a == k:
                tuples[i][0] = k + 2
            elif x.arcs[head_slot] == k:
                tuples[i][head_slot] = k + 2
        new = (k, k + 2, k + 1, k + 1) if sign > 0 else (k, k + 1, k + 1, k + 2)
    pos = len(tuples) if position is None else position
    tuples.insert(pos, list(new))
    signs.insert(pos, sign)
    out = _assemble([tuple(t) for t in tuples], extra)
    derived = derive_signs(out)
    if [x.sign for x in derived.crossings] != signs:
        return _assemble([tuple(t) for t in tuples], extra, signs=signs)
    return derived


# ---------------------------------------------------------------- Seifert


def is_connected(d: Diagram) -> bool:
    """Whether the diagram's projection is connected."""
    if d.n == 0:
        return d.extra_unknot_components == 1
    if d.extra_unknot_components:
        return False
    uf = UnionFind(d.arc_count + 1)
    for x in d.crossings:
        uf.union(x.a, x.b)
        uf.union(x.a, x.c)
        uf.union(x.a, x.d)
    return len({uf.find(a) for a in range(1, d.arc_count + 1)}) == 1


def seifert(d: Diagram) -> SeifertData:
    """Seifert circles of the oriented resolution."""
    d = _ensure_signed(d)
    uf = UnionFind(d.arc_count + 1)
    for x in d.crossings:
        if x.sign > 0:
            uf.union(x.a, x.b)
            uf.union(x.c, x.d)
        else:
            uf.union(x.a, x.d)
            uf.union(x.b, x.c)
    labels, count = uf.labels()
    # label 0 is the unused slot for arc id 0
    circle_of_arc = {arc: labels[arc] for arc in range(1, d.arc_count + 1)}
    s = count - 1 + d.extra_unknot_components
    pairs = tuple(
        tuple(sorted((circle_of_arc[x.a], circle_of_arc[x.c]))) for x in d.crossings
    )
    return SeifertData(circle_count=s, circle_of_arc=circle_of_arc, crossing_pairs=pairs)


def canonical_genus(d: Diagram) -> Fraction:
    """Genus of the surface built by Seifert's algorithm."""
    if not is_connected(d):
        raise DisconnectedDiagram("canonical genus needs a connected diagram")
    s = seifert(d).circle_count
    return Fraction(d.n - s + 2 - d.component_count, 2)


def classify(d: Diagram) -> PositivityClass:
    d = _ensure_signed(d)
    negatives = [i for i, x in enumerate(d.crossings) if x.sign < 0]
    if not negatives:
        return PositivityClass(kind="Positive", n_minus=0)
    if len(negatives) > 1:
        return PositivityClass(kind="Other", n_minus=len(negatives))
    p = negatives[0]
    pairs = seifert(d).crossing_pairs
    shared = any(pairs[i] == pairs[p] for i in range(d.n) if i != p)
    return PositivityClass(
        kind="AlmostPositive",
        n_minus=1,
        negative_index=p,
        case=2 if shared else 1,
        self_pair=pairs[p][0] == pairs[p][1],
    )

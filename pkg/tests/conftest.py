"""Shared reference implementations used as independent oracles.

These are deliberately naive: dictionaries, Fractions and the pure-Python
``cube.edges`` walk, with no shared code path into the compiled kernels.
"""

from fractions import Fraction

import pytest
from hypothesis import settings

from khoval.cube import edges, resolve

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def fraction_rank(rows):
    """Rank of a dense matrix (list of lists) by Gaussian elimination over Q."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    n_cols = len(m[0]) if m else 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _circles_with_arcs(state, extra):
    """Arc set of each circle; crossing-free circles get no arcs."""
    arc_circles = state.circle_count - extra
    out = [[] for _ in range(arc_circles)]
    for arc, c in enumerate(state.circle_of_arc, start=1):
        out[c].append(arc)
    return out


def reference_complex(d):
    """Generators and differential of the Khovanov cube built from scratch.

    Returns ``(basis, matrices)`` where ``basis[(i, j)]`` lists
    ``(bits, labels)`` with ``labels`` a tuple of "1"/"X" per circle, in the
    package's ordering (state bits, then mask value), and
    ``matrices[(i, j)]`` is a dict ``(row, col) -> value``.
    """
    extra = d.extra_unknot_components
    n = d.n
    states = [resolve(d, b) for b in range(1 << n)]
    basis = {}
    for st in sorted(states, key=lambda s: s.bits):
        i = st.weight
        k = st.circle_count
        by_t = {}
        for mask in range(1 << k):
            t = bin(mask).count("1")
            by_t.setdefault(t, []).append(mask)
        for t in sorted(by_t):
            j = k - 2 * t + i
            for mask in by_t[t]:
                labels = tuple("X" if (mask >> c) & 1 else "1" for c in range(k))
                basis.setdefault((i, j), []).append((st.bits, labels))
    # basis lists are grouped by (i, j); within each, order by state then mask
    for key, gens in basis.items():
        gens.sort(key=lambda g: (g[0], sum(1 << c for c, x in enumerate(g[1]) if x == "X")))
    index = {key: {g: r for r, g in enumerate(gens)} for key, gens in basis.items()}
    of_state = {}
    for gens in basis.values():
        for bits, labels in gens:
            of_state.setdefault(bits, []).append(labels)

    matrices = {}
    for e in edges(d):
        src, dst = e.source, e.target
        i = src.weight
        k = src.circle_count
        arcs = _circles_with_arcs(src, extra)
        karc_src = k - extra
        karc_dst = dst.circle_count - extra
        # image of each untouched source circle in the target state
        image = {}
        for c in range(k):
            if c < karc_src:
                image[c] = dst.circle_of_arc[arcs[c][0] - 1]
            else:
                image[c] = c - karc_src + karc_dst
        for labels in of_state[src.bits]:
            j = sum(1 if x == "1" else -1 for x in labels) + i
            outs = []
            if e.kind == "merge":
                c1, c2, target = e.circles
                a, b = labels[c1], labels[c2]
                if a == "X" and b == "X":
                    continue
                new = "X" if "X" in (a, b) else "1"
                out = ["?"] * dst.circle_count
                for c in range(k):
                    if c not in (c1, c2):
                        out[image[c]] = labels[c]
                out[target] = new
                outs.append(tuple(out))
            else:
                c, t1, t2 = e.circles
                pairs = [("X", "X")] if labels[c] == "X" else [("1", "X"), ("X", "1")]
                for x1, x2 in pairs:
                    out = ["?"] * dst.circle_count
                    for cc in range(k):
                        if cc != c:
                            out[image[cc]] = labels[cc]
                    out[t1], out[t2] = x1, x2
                    outs.append(tuple(out))
            col = index[(i, j)][(src.bits, labels)]
            for out in outs:
                assert "?" not in out
                row = index[(i + 1, j)][(dst.bits, out)]
                mat = matrices.setdefault((i, j), {})
                mat[(row, col)] = mat.get((row, col), 0) + e.sign
    return basis, matrices


def reference_homology(d):
    """Unnormalized dims H^{i,j} from :func:`reference_complex` and Fraction ranks."""
    basis, matrices = reference_complex(d)
    ranks = {}
    for (i, j), entries in matrices.items():
        rows = len(basis.get((i + 1, j), []))
        cols = len(basis[(i, j)])
        dense = [[0] * cols for _ in range(rows)]
        for (r, c), v in entries.items():
            dense[r][c] = v
        ranks[(i, j)] = fraction_rank(dense)
    out = {}
    for (i, j), gens in basis.items():
        h = len(gens) - ranks.get((i, j), 0) - ranks.get((i - 1, j), 0)
        if h:
            out[(i, j)] = h
    return out


@pytest.fixture
def trefoil():
    from khoval import braid_to_pd
    return braid_to_pd([1, 1, 1], 2)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)

"""Bigraded Khovanov chain complex over Q and its homology dimensions."""

from __future__ import annotations

import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .cube import crossing_array
from .diagram import Diagram, _ensure_signed
from .errors import ComplexityBudgetExceeded, DoubleNormalization
from .rank import exact_rank

__all__ = [
    "DEFAULT_MAX_CROSSINGS",
    "Generator",
    "ChainComplex",
    "HomologyTable",
    "build_complex",
    "homology_dims",
    "normalize",
    "kh",
    "block_ranks",
    "d_squared_failures",
    "grading_failures",
]

DEFAULT_MAX_CROSSINGS = 18
_MAX_CIRCLES = 62  # labels are packed into int64 bitmasks


@dataclass(frozen=True)
class Generator:
    state: int
    labels: str  # "1" or "X" per circle, in circle order
    q_degree: int

    @property
    def degree(self):
        return bin(self.state).count("1")


class ChainComplex:
    """C^{i,j}(D) with lazily assembled differential blocks d^{i,j}.

    Generators of a block are ordered by state bits, then by the label
    bitmask (bit c set when circle c carries X).
    """

    def __init__(self, diagram: Diagram):
        self.diagram = diagram
        self.n = diagram.n
        self.extra = diagram.extra_unknot_components
        self._xs = crossing_array(diagram)
        size = 1 << self.n
        self._arc_circles, self._labels = _kernels.state_table(
            self._xs, diagram.arc_count, 0, size
        )
        bits = np.arange(size, dtype=np.int64)
        weights = np.zeros(size, dtype=np.int64)
        for p in range(self.n):
            weights += (bits >> p) & 1
        self._weights = weights
        self.circle_counts = self._arc_circles.astype(np.int64) + self.extra
        kmax = int(self.circle_counts.max())
        if kmax > _MAX_CIRCLES:
            raise ComplexityBudgetExceeded(f"{kmax} circles in one smoothing")
        self._binom = _kernels.binomials(kmax + 2)

        dims = defaultdict(int)
        pairs, mult = np.unique(
            np.stack([weights, self.circle_counts], axis=1), axis=0, return_counts=True
        )
        for (i, k), c in zip(pairs.tolist(), mult.tolist()):
            for t in range(k + 1):
                dims[(i, k - 2 * t + i)] += c * comb(k, t)
        self.dims = dict(sorted(dims.items()))
        self._offsets = {}

    def dim(self, i, j):
        return self.dims.get((i, j), 0)

    def bidegrees(self):
        return list(self.dims)

    def q_degrees(self):
        return sorted({j for _, j in self.dims})

    def _block(self, i, j):
        key = (i, j)
        if key not in self._offsets:
            self._offsets[key] = _kernels.block_offsets(
                self._weights, self._arc_circles, self.extra, i, j, self._binom
            )
        return self._offsets[key]

    def differential(self, i, j):
        """d^{i,j} as a sparse integer matrix of shape (dim C^{i+1,j}, dim C^{i,j})."""
        rows_dim, cols_dim = self.dim(i + 1, j), self.dim(i, j)
        if rows_dim == 0 or cols_dim == 0:
            return sp.csr_matrix((rows_dim, cols_dim), dtype=np.int64)
        src, ns = self._block(i, j)
        dst, nd = self._block(i + 1, j)
        assert (ns, nd) == (cols_dim, rows_dim)
        bound = 2 * ns * (self.n - i) + 1
        r, c, v = _kernels.differential_block(
            self._xs, self._weights, self._arc_circles, self._labels, self.extra,
            i, j, self._binom, src, dst, bound,
        )
        return sp.csr_matrix((v, (r, c)), shape=(nd, ns), dtype=np.int64)

    def generators(self, i, j):
        """Decoded generators of C^{i,j}; meant for small diagrams."""
        out = []
        offsets, _ = self._block(i, j)
        for e in np.flatnonzero(offsets >= 0).tolist():
            k = int(self.circle_counts[e])
            t = (k + i - j) // 2
            for mask in range(1 << k):
                if bin(mask).count("1") != t:
                    continue
                labels = "".join("X" if (mask >> c) & 1 else "1" for c in range(k))
                out.append(Generator(e, labels, k - 2 * t + i))
        return out


@dataclass(frozen=True)
class HomologyTable:
    dims: dict = field(default_factory=dict)  # (i, j) -> dimension, zeros omitted
    normalized: bool = False
    n_plus: int | None = None
    n_minus: int | None = None

    def __getitem__(self, key):
        return self.dims.get(tuple(key), 0)

    def entries(self):
        """Sorted ``(i, j, dim)`` triples."""
        return [(i, j, dim) for (i, j), dim in sorted(self.dims.items())]

    @property
    def total(self):
        return sum(self.dims.values())

    def support(self, i):
        return sorted(j for (a, j) in self.dims if a == i)

    def __eq__(self, other):
        if not isinstance(other, HomologyTable):
            return NotImplemented
        return self.normalized == other.normalized and self.dims == other.dims

    def __hash__(self):
        return hash((self.normalized, tuple(sorted(self.dims.items()))))


def build_complex(d: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> ChainComplex:
    if d.n > max_crossings:
        raise ComplexityBudgetExceeded(
            f"{d.n} crossings exceeds the cap of {max_crossings}"
        )
    return ChainComplex(_ensure_signed(d))


def block_ranks(c: ChainComplex, threads: int | None = None) -> dict:
    """rank d^{i,j} for every block with nonzero source and target."""
    keys = [(i, j) for (i, j) in c.dims if (i + 1, j) in c.dims]
    # assemble offsets up front so worker threads only read shared state
    for i, j in keys:
        c._block(i, j)
        c._block(i + 1, j)

    def work(key):
        return exact_rank(c.differential(*key))

    workers = threads or os.cpu_count() or 1
    if workers == 1:
        ranks = [work(key) for key in keys]
    else:
        # largest blocks first keeps the pool busy; results are keyed, so order is irrelevant
        order = sorted(keys, key=lambda k: -c.dim(*k))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            done = dict(zip(order, pool.map(work, order)))
        ranks = [done[key] for key in keys]
    return dict(zip(keys, ranks))


def homology_dims(c: ChainComplex, threads: int | None = None) -> HomologyTable:
    """Unnormalized dimensions dim H^{i,j} = dim C^{i,j} - rank d^{i,j} - rank d^{i-1,j}."""
    ranks = block_ranks(c, threads)
    dims = {}
    for (i, j), dim in c.dims.items():
        h = dim - ranks.get((i, j), 0) - ranks.get((i - 1, j), 0)
        if h:
            dims[(i, j)] = h
    return HomologyTable(dims=dims)


def normalize(t: HomologyTable, n_plus: int, n_minus: int) -> HomologyTable:
    """KH^{i,j} = H^{i+n_-, j-n_++2n_-}: shift (i, j) -> (i - n_-, j + n_+ - 2n_-)."""
    if t.normalized:
        raise DoubleNormalization("table is already normalized")
    dims = {(i - n_minus, j + n_plus - 2 * n_minus): v for (i, j), v in t.dims.items()}
    return HomologyTable(dims=dict(sorted(dims.items())), normalized=True,
                         n_plus=n_plus, n_minus=n_minus)


def kh(d: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS,
       threads: int | None = None) -> HomologyTable:
    """Normalized rational Khovanov homology of a diagram."""
    d = _ensure_signed(d)
    raw = homology_dims(build_complex(d, max_crossings), threads)
    return normalize(raw, d.n_plus, d.n_minus)


def d_squared_failures(c: ChainComplex) -> list:
    """Bidegrees (i, j) where d^{i+1,j} d^{i,j} is not the zero matrix."""
    bad = []
    for i, j in c.dims:
        if c.dim(i + 2, j) == 0:
            continue
        product = c.differential(i + 1, j) @ c.differential(i, j)
        if product.count_nonzero():
            bad.append((i, j))
    return bad


def grading_failures(c: ChainComplex) -> list:
    """Bidegrees whose differential has an entry between generators of different q-degree.

    Rows and columns are decoded independently of the block offsets, so
    this also cross-checks the generator ordering.
    """
    bad = []
    for i, j in c.dims:
        if c.dim(i + 1, j) == 0:
            continue
        m = c.differential(i, j).tocoo()
        if m.nnz == 0:
            continue
        src = c.generators(i, j)
        dst = c.generators(i + 1, j)
        if len(src) != m.shape[1] or len(dst) != m.shape[0]:
            bad.append((i, j))
            continue
        if any(src[col].q_degree != dst[row].q_degree or src[col].state & ~dst[row].state
               for row, col in zip(m.row.tolist(), m.col.tolist())):
            bad.append((i, j))
    return bad

"""Exact rational Khovanov homology, with genus and Rasmussen invariant
formulas for diagrams with at most one negative crossing."""

__version__ = "0.1.0"

from .diagram import (
    Crossing,
    Diagram,
    PositivityClass,
    SeifertData,
    add_kink,
    braid_to_pd,
    canonical_genus,
    classify,
    crossing_change,
    derive_signs,
    is_connected,
    mirror,
    parse_pd,
    reorder,
    rotate_arc_labels,
    seifert,
)
from .cube import CubeEdge, State, edges, resolve, seifert_state_index
from .homology import (
    ChainComplex,
    Generator,
    HomologyTable,
    build_complex,
    homology_dims,
    kh,
    normalize,
)
from .laurent import LaurentPolynomial
from .invariants import (
    InvariantReport,
    Verdict,
    check_crossing_change_bounds,
    check_lemma_vanishing,
    check_support,
    genus_from_diagram,
    jones_from_kh,
    jones_oracle,
    kauffman_bracket,
    rasmussen_from_diagram,
    report,
)
from .rank import exact_rank
from .document import ReportDocument
from . import errors

"""Built-in fixture catalog used by ``khoval verify --fixtures`` and the tests.

Named fixtures carry frozen expected values produced by this package
(regression data, not external ground truth).  The generated family is
every connected one-component braid closure of length at most 8 over
``±1`` (2 strands) or ``±1, ±2`` (3 strands) with at most one negative
letter, taken up to cyclic rotation of the word.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from .diagram import Diagram, braid_to_pd, derive_signs, is_connected, parse_pd

__all__ = ["Fixture", "catalog", "named", "generated", "get", "table_digest", "expected_block",
           "PERFORMANCE_FIXTURE"]


@dataclass(frozen=True)
class Fixture:
    id: str
    pd: str | None = None
    braid: tuple | None = None
    strands: int | None = None
    expected: dict | None = None

    def diagram(self) -> Diagram:
        if self.pd is not None:
            return derive_signs(parse_pd(self.pd))
        return braid_to_pd(self.braid, self.strands)

    @property
    def source(self):
        if self.pd is not None:
            return f"pd {self.pd}"
        return f"braid {' '.join(map(str, self.braid))} on {self.strands} strands"


def expected_block(rep) -> dict:
    """The frozen-value summary of an :class:`~khoval.invariants.InvariantReport`."""
    return {
        "class": rep.positivity.tag,
        "g3_D": None if rep.g3_D is None else str(rep.g3_D),
        "s": rep.s,
        "jones": None if rep.jones_kh is None else rep.jones_kh.to_dict(),
        "kh": None if rep.homology is None else table_digest(rep.homology),
    }


def table_digest(table) -> str:
    """Short content hash of a homology table's sorted entries."""
    text = json.dumps(table.entries(), separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# expected blocks frozen from this package's own pipeline; tests/test_fixtures.py rechecks them
_NAMED = [
    ("unknot", dict(pd="O"),
     {"class": "Positive", "g3_D": "0", "s": 0, "jones": {"0": "1"}, "kh": "41c3d8e9fef9c8b9"}),
    ("unknot-kink+", dict(pd="X(1,1,2,2)"),
     {"class": "Positive", "g3_D": "0", "s": 0, "jones": {"0": "1"}, "kh": "41c3d8e9fef9c8b9"}),
    ("unknot-kink-", dict(pd="X(1,2,2,1)"),
     {"class": "AlmostPositive(Case1)", "g3_D": "0", "s": 0, "jones": {"0": "1"}, "kh": "41c3d8e9fef9c8b9"}),
    ("trefoil+", dict(braid=(1, 1, 1), strands=2),
     {"class": "Positive", "g3_D": "1", "s": 2, "jones": {"2": "1", "6": "1", "8": "-1"}, "kh": "b5354de9f3504365"}),
    ("unknot-ap", dict(braid=(1, 1, -1), strands=2),
     {"class": "AlmostPositive(Case2)", "g3_D": "1", "s": 0, "jones": {"0": "1"}, "kh": "41c3d8e9fef9c8b9"}),
    ("cinquefoil", dict(braid=(1, 1, 1, 1, 1), strands=2),
     {"class": "Positive", "g3_D": "2", "s": 4, "jones": {"4": "1", "8": "1", "10": "-1", "12": "1", "14": "-1"}, "kh": "3eb1d517dbc3c1d3"}),
    ("t33-link", dict(braid=(1, 2, 1, 2, 1, 2), strands=3),
     {"class": "Positive", "g3_D": "1", "s": None, "jones": {"4": "1", "8": "1", "12": "2"}, "kh": "cc6e21803e6a5e8e"}),
    ("trefoil+kink-", dict(pd="X(6,4,7,3) X(4,8,5,7) X(8,6,1,5) X(1,2,2,3)"),
     {"class": "AlmostPositive(Case1)", "g3_D": "1", "s": 2, "jones": {"2": "1", "6": "1", "8": "-1"}, "kh": "b5354de9f3504365"}),
    ("trefoil+kink+", dict(pd="X(6,4,7,3) X(4,8,5,7) X(8,6,1,5) X(1,3,2,2)"),
     {"class": "Positive", "g3_D": "1", "s": 2, "jones": {"2": "1", "6": "1", "8": "-1"}, "kh": "b5354de9f3504365"}),
    ("trefoil-stab-", dict(braid=(1, 1, 1, -2), strands=3),
     {"class": "AlmostPositive(Case1)", "g3_D": "1", "s": 2, "jones": {"2": "1", "6": "1", "8": "-1"}, "kh": "b5354de9f3504365"}),
    ("trefoil-", dict(pd="X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"),
     {"class": "Other", "g3_D": "1", "s": None, "jones": {"-8": "-1", "-6": "1", "-2": "1"}, "kh": "67d933d6eb7cd658"}),
    ("figure8", dict(pd="X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"),
     {"class": "Other", "g3_D": "1", "s": None, "jones": {"-4": "1", "-2": "-1", "0": "1", "2": "-1", "4": "1"}, "kh": "4ca5d7f3af9ae4a3"}),
    ("hopf+", dict(braid=(1, 1), strands=2),
     {"class": "Positive", "g3_D": "0", "s": None, "jones": {"1": "-1", "5": "-1"}, "kh": "aee30f6699f77b4b"}),
    ("t34", dict(braid=(1, 2, 1, 2, 1, 2, 1, 2), strands=3),
     {"class": "Positive", "g3_D": "3", "s": 6, "jones": {"6": "1", "10": "1", "16": "-1"}, "kh": "0966b1c388dbd0f3"}),
    ("t34-stab-", dict(braid=(1, 2, 1, 2, 1, 2, 1, 2, -3), strands=4),
     {"class": "AlmostPositive(Case1)", "g3_D": "3", "s": 6, "jones": {"6": "1", "10": "1", "16": "-1"}, "kh": "0966b1c388dbd0f3"}),
    ("t34-ap2", dict(braid=(1, 2, 1, 2, 1, 2, 1, 2, 1, -1), strands=3),
     {"class": "AlmostPositive(Case2)", "g3_D": "4", "s": 6, "jones": {"6": "1", "10": "1", "16": "-1"}, "kh": "0966b1c388dbd0f3"}),
    ("t35", dict(braid=(1, 2, 1, 2, 1, 2, 1, 2, 1, 2), strands=3),
     {"class": "Positive", "g3_D": "4", "s": 8, "jones": {"8": "1", "12": "1", "20": "-1"}, "kh": "7572945eacc67db3"}),
    ("t35-stab-", dict(braid=(1, 2, 1, 2, 1, 2, 1, 2, 1, 2, -3), strands=4),
     {"class": "AlmostPositive(Case1)", "g3_D": "4", "s": 8, "jones": {"8": "1", "12": "1", "20": "-1"}, "kh": "7572945eacc67db3"}),
    ("t37", dict(braid=(1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2), strands=3),
     {"class": "Positive", "g3_D": "6", "s": 12, "jones": {"12": "1", "16": "1", "28": "-1"}, "kh": "2c23486b15337f61"}),
    ("ap-link-13", dict(braid=(1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 3, -2), strands=4),
     {"class": "AlmostPositive(Case2)", "g3_D": "4", "s": None, "jones": {"8": "1", "12": "1", "18": "1", "22": "1"}, "kh": "5841bc520ce2e4cf"}),
    ("ap-knot-13", dict(braid=(1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 3, -2, 3), strands=4),
     {"class": "AlmostPositive(Case2)", "g3_D": "5", "s": 8, "jones": {"8": "1", "10": "-1", "12": "2", "14": "-1", "16": "1", "24": "-1"}, "kh": "cd816b29066bab99"}),
]

# the 16-crossing diagram used for the performance budget; not part of the sweep
PERFORMANCE_FIXTURE = Fixture("t38-ap", braid=(1, 2) * 7 + (1, -2), strands=3)


@lru_cache(maxsize=None)
def named() -> tuple:
    return tuple(Fixture(id=i, expected=exp, **src) for i, src, exp in _NAMED)


@lru_cache(maxsize=None)
def generated() -> tuple:
    out = []
    seen = set()
    for strands, gens in ((2, (1, -1)), (3, (1, -1, 2, -2))):
        for length in range(1, 9):
            for word in itertools.product(gens, repeat=length):
                if sum(1 for g in word if g < 0) > 1:
                    continue
                word = min(word[i:] + word[:i] for i in range(length))
                if (strands, word) in seen:
                    continue
                seen.add((strands, word))
                d = braid_to_pd(word, strands)
                if d.component_count != 1 or not is_connected(d):
                    continue
                tag = "".join(("" if g > 0 else "-") + str(abs(g)) for g in word)
                out.append(Fixture(id=f"b{strands}:{tag}", braid=word, strands=strands))
    return tuple(out)


def catalog() -> tuple:
    return named() + generated()


def get(fixture_id: str) -> Fixture:
    for f in catalog() + (PERFORMANCE_FIXTURE,):
        if f.id == fixture_id:
            return f
    raise KeyError(fixture_id)

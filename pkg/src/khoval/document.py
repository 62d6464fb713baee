"""JSON report documents: building them from reports and round-tripping text."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .diagram import seifert

__all__ = ["SCHEMA_VERSION", "ReportDocument", "diagram_fields", "report_fields", "table_rows", "polynomial"]

SCHEMA_VERSION = 1


def _frac(x):
    return None if x is None else str(x)


def polynomial(p):
    if p is None:
        return None
    return {"var": p.var, "terms": p.to_dict(), "text": str(p)}


def table_rows(table):
    if table is None:
        return None
    return [{"i": i, "j": j, "dim": dim} for i, j, dim in table.entries()]


def diagram_fields(d, positivity, connected, g3_d):
    sd = seifert(d)
    return {
        "pd": d.to_pd(),
        "crossings": d.n,
        "arcs": d.arc_count,
        "components": d.component_count,
        "signs": [x.sign for x in d.crossings],
        "n_plus": d.n_plus,
        "n_minus": d.n_minus,
        "writhe": d.writhe,
        "connected": connected,
        "seifert_circles": sd.circle_count,
        "seifert_pairs": [list(sd.crossing_pairs[p]) for p in range(d.n)],
        "class": positivity.kind,
        "class_tag": positivity.tag,
        "case": positivity.case,
        "negative_index": positivity.negative_index,
        "self_pair": positivity.self_pair,
        "g3_D": _frac(g3_d),
    }


def report_fields(rep):
    """Everything in an InvariantReport except the diagram itself."""
    return {
        "theorem31_case": rep.theorem31_case,
        "g3_L": _frac(rep.g3_L),
        "s": rep.s,
        "g4": _frac(rep.g4),
        "s_formula": rep.s_formula,
        "jones_kh": polynomial(rep.jones_kh),
        "jones_oracle": polynomial(rep.jones_oracle),
        "homology": table_rows(rep.homology),
        "kh0_support": rep.kh0_support,
        "checks": [{"name": v.name, "passed": v.passed, "detail": v.detail} for v in rep.checks],
        "notes": list(rep.notes),
    }


@dataclass
class ReportDocument:
    """One JSON document per CLI invocation.

    Serialization sorts keys and uses a fixed indent, so
    ``from_json(doc.to_json()).to_json() == doc.to_json()``.
    """

    data: dict

    def to_json(self) -> str:
        return json.dumps(self.data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        data = json.loads(text)
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {data.get('schema_version')!r}")
        return cls(data)

    def __getitem__(self, key):
        return self.data[key]

"""JSON wire formats for the engine's value types.

All encoders emit plain dicts with deterministic key insertion order
(numeric keys ascending) and integer or string leaves only, so a dump,
parse, re-dump cycle is byte-stable.
"""

from __future__ import annotations

from .abelian import FinAbGroup, GroupHom
from .exactseq import ExactSequence
from .homology import ChainComplex, GradedGroup, chain_complex, graded
from .sgm import DimensionSetVerdict
from .steinles import SteinInstance
from .zlinalg import IntMatrix, SnfResult


def group_to_json(g: FinAbGroup) -> dict:
    return {"rank": g.rank, "invariant_factors": list(g.invariant_factors)}


def group_from_json(data: dict) -> FinAbGroup:
    return FinAbGroup(int(data["rank"]), tuple(data["invariant_factors"]))


def matrix_to_json(m: IntMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": m.to_lists()}


def matrix_from_json(data: dict) -> IntMatrix:
    return IntMatrix(int(data["rows"]), int(data["cols"]),
                     tuple(tuple(row) for row in data["entries"]))


def complex_to_json(c: ChainComplex) -> dict:
    return {
        "max_degree": c.max_degree,
        "cells": list(c.cells),
        "boundaries": {str(d): matrix_to_json(m) for d, m in c.boundaries},
    }


def complex_from_json(data: dict) -> ChainComplex:
    cells = [int(x) for x in data["cells"]]
    if int(data.get("max_degree", len(cells) - 1)) != len(cells) - 1:
        raise ValueError("max_degree does not match the cells list")
    boundaries = {
        int(d): matrix_from_json(m) for d, m in data.get("boundaries", {}).items()
    }
    return chain_complex(cells, boundaries)


def graded_to_json(g: GradedGroup) -> dict:
    return {
        "top_degree": g.top_degree,
        "groups": {str(d): group_to_json(grp) for d, grp in g.groups},
    }


def graded_from_json(data: dict) -> GradedGroup:
    return graded(
        int(data["top_degree"]),
        {int(d): group_from_json(grp) for d, grp in data.get("groups", {}).items()},
    )


def sequence_to_json(seq: ExactSequence) -> dict:
    return {
        "lo": seq.lo,
        "hi": seq.hi,
        "terms": {str(i): group_to_json(seq.term(i)) for i in range(seq.lo, seq.hi + 1)},
        "maps": {str(i): [list(row) for row in seq.map(i).matrix]
                 for i in range(seq.lo, seq.hi)},
    }


def sequence_from_json(data: dict) -> ExactSequence:
    lo, hi = int(data["lo"]), int(data["hi"])
    terms = {int(i): group_from_json(g) for i, g in data.get("terms", {}).items()}
    seq_terms = {i: terms.get(i, FinAbGroup()) for i in range(lo, hi + 1)}
    maps = {}
    for key, rows in data.get("maps", {}).items():
        i = int(key)
        if not (lo <= i < hi):
            raise ValueError(f"map index {i} outside [{lo}, {hi - 1}]")
        maps[i] = GroupHom(
            seq_terms.get(i, FinAbGroup()),
            seq_terms.get(i + 1, FinAbGroup()),
            tuple(tuple(row) for row in rows),
        )
    return ExactSequence(lo, hi, seq_terms, maps)


def stein_to_json(inst: SteinInstance) -> dict:
    return {
        "n": inst.n,
        "p": inst.p,
        "orientable": inst.orientable,
        "wf_homology": graded_to_json(inst.wf_homology),
        "m_homology": None if inst.m_homology is None else graded_to_json(inst.m_homology),
    }


def stein_from_json(data: dict) -> SteinInstance:
    m_hom = data.get("m_homology")
    return SteinInstance(
        int(data["n"]),
        int(data["p"]),
        graded_from_json(data["wf_homology"]),
        None if m_hom is None else graded_from_json(m_hom),
        bool(data.get("orientable", True)),
    )


def snf_to_json(result: SnfResult) -> dict:
    return {
        "U": matrix_to_json(result.U),
        "S": matrix_to_json(result.S),
        "V": matrix_to_json(result.V),
    }


def verdict_to_json(v: DimensionSetVerdict) -> dict:
    return {
        "dimension": v.dimension,
        "statuses": {
            str(p): {
                "status": st.kind.value,
                "reason": st.reason.value,
                "note": st.note,
            }
            for p, st in sorted(v.statuses.items())
        },
        "summary": None if v.summary is None else list(v.summary),
    }

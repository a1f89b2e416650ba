"""JSON-ready payloads and their plain-text rendering.

Every scalar is serialized as an exact string; forms are n*n grids.
"""

from __future__ import annotations

import json
from typing import Dict, List, Sequence

from .algebra import Algebra, IdentityReport, format_element
from .cohomology import CohomologySpaces, format_form, vector_to_form
from .identities import Identity
from .linalg import Matrix, Subspace


def grid(m: Matrix) -> List[List[str]]:
    return [[str(x) for x in row] for row in m.rows]


def forms_of(s: Subspace, n: int) -> List[Matrix]:
    return [vector_to_form(v, n) for v in s.basis]


def algebra_payload(a: Algebra) -> Dict:
    return {"name": a.name, "dim": a.dim, "params": list(a.params),
            "products": [{"lhs": f"e{i + 1}*e{j + 1}", "rhs": format_element(v)}
                         for i, j, v in a.nonzero_products()]}


def check_payload(a: Algebra, ids: Sequence[Identity], rep: IdentityReport) -> Dict:
    return {
        "algebra": a.name,
        "holds": rep.holds,
        "failures": [{"identity": ids[f.identity].name,
                      "args": [f"e{i + 1}" for i in f.args],
                      "residual": [str(c) for c in f.residual],
                      "generic": f.generic} for f in rep.failures],
    }


def h2_payload(h: CohomologySpaces) -> Dict:
    n = h.algebra.dim
    return {
        "z2": [grid(f) for f in forms_of(h.z2, n)],
        "b2": [grid(f) for f in forms_of(h.b2, n)],
        "h2": [grid(f) for f in h.h2_reps],
        "case_splits": [str(p) for p in h.case_splits],
    }


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


# -- text --------------------------------------------------------------------

def _form_list(forms: Sequence[Matrix], bracket: bool = False) -> str:
    if not forms:
        return "0"
    items = [format_form(f) for f in forms]
    if bracket:
        items = [f"[{t}]" for t in items]
    return ", ".join(items)


def render_check(payload: Dict) -> str:
    lines = [f"algebra: {payload['algebra']}", f"holds: {str(payload['holds']).lower()}"]
    for f in payload["failures"]:
        kind = " (parameter-dependent)" if f["generic"] else ""
        lines.append(f"  {f['identity']} at ({','.join(f['args'])}): "
                     f"residual [{', '.join(f['residual'])}]{kind}")
    return "\n".join(lines) + "\n"


def render_spaces(h: CohomologySpaces, which=("z2", "b2", "h2")) -> str:
    n = h.algebra.dim
    lines = [f"algebra: {h.algebra.name} (dim {n})"]
    if "z2" in which:
        lines.append(f"Z2 (dim {h.z2.dim}): {_form_list(forms_of(h.z2, n))}")
    if "b2" in which:
        lines.append(f"B2 (dim {h.b2.dim}): {_form_list(forms_of(h.b2, n))}")
    if "h2" in which:
        lines.append(f"H2 (dim {h.dim_h2}): {_form_list(h.h2_reps, bracket=True)}")
    splits = ", ".join(f"{p} != 0" for p in h.case_splits) or "none"
    lines.append(f"case splits: {splits}")
    return "\n".join(lines) + "\n"


def render_matrix(m: Matrix, indent: str = "  ") -> str:
    cells = grid(m)
    width = max((len(c) for r in cells for c in r), default=1)
    return "\n".join(indent + "[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)

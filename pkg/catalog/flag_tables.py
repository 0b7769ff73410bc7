# ---- File: catalog/flag_tables.py ----

"""Invariant-form tables of the flag manifolds W^6, W^12 and W^24.

Each table is the algebra of invariant forms of a flag manifold with degree
parameter k (k = 1, 2, 4): three closed classes w1, w2, w3 in degree 2k with
d(w_i) = eta, a form zeta with d(zeta) = w12 + w13 + w23, and a volume form in
degree 6k. For k = 1 the table is the computed W^6 complex; for k = 2 and 4
the vanishing of invariant forms below degree 2k is an input assumption.
"""

from typing import Any, Dict, List

from errors import StructuralError
from formality.dga import AbstractDGA, load_dga

FLAG_DEGREES = {1: "flag_w6", 2: "flag_w12", 4: "flag_w24"}


def flag_table_data(k: int) -> Dict[str, Any]:
    if k not in FLAG_DEGREES:
        raise StructuralError(f"Flag tables exist for k in {sorted(FLAG_DEGREES)}, got {k}")
    elements = [{"name": "1", "degree": 0}]
    elements += [{"name": f"w{i}", "degree": 2 * k} for i in (1, 2, 3)]
    elements += [
        {"name": "eta", "degree": 2 * k + 1},
        {"name": "zeta", "degree": 4 * k - 1},
    ]
    elements += [{"name": f"w{i}{j}", "degree": 4 * k} for i, j in ((1, 2), (1, 3), (2, 3))]
    elements.append({"name": "vol", "degree": 6 * k})

    products: List[Dict[str, Any]] = []
    for i, j in ((1, 2), (1, 3), (2, 3)):
        products.append({"left": f"w{i}", "right": f"w{j}", "result": {f"w{i}{j}": "1"}})
    for i, pair in ((1, "23"), (2, "13"), (3, "12")):
        products.append({"left": f"w{i}", "right": f"w{pair}", "result": {"vol": "1"}})
    products.append({"left": "zeta", "right": "eta", "result": {"vol": "1"}})

    notes = [f"degree parameter k = {k}"]
    if k > 1:
        notes.append("assumes no invariant forms in degrees below 2k other than constants")
    return {
        "name": f"{FLAG_DEGREES[k]}_table",
        "elements": elements,
        "unit": "1",
        "products": products,
        "differential": {
            "w1": {"eta": "1"},
            "w2": {"eta": "1"},
            "w3": {"eta": "1"},
            "zeta": {"w12": "1", "w13": "1", "w23": "1"},
        },
        "classes": [{"name": "x", "degree": 2 * k}, {"name": "y", "degree": 2 * k}],
        "relations": ["x^3", "y^2 + 3*x^2"],
        "notes": notes,
    }


def flag_table(k: int) -> AbstractDGA:
    return load_dga(flag_table_data(k))


def bundled_tables() -> Dict[str, AbstractDGA]:
    return {f"{name}_table": flag_table(k) for k, name in FLAG_DEGREES.items()}

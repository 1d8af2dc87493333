"""Built-in instance corpora: identity-suite instances, oracle point sets, demo scenarios."""

from __future__ import annotations

from .groebner import Ideal
from .models import GroupModel, random_points
from .poly import parse_poly

# ideals as generator texts, pairs (g, h) as parse_point values
SUITE_DATA = {
    "gm": {
        "subalgebra": "full",
        "ideals": [["(x1-x0)^3"], ["(x1-x0)^2*(x1-3*x0)"], ["x0*x1*(x1-x0)"],
                   ["x1^2+x0^2"]],
        "pairs": [(2, 3), ("-1/2", 5)],
    },
    "borel2": {
        "subalgebra": "nilpotent",
        "ideals": [["x1-x4"], ["(x1-2*x0)^2", "x4-2*x0"], ["x1*x4-4*x0^2"]],
        "pairs": [([2, 1, 3], [1, -1, 2]), ([1, 2, 1], [3, 0, 1])],
    },
    "gl2": {
        "subalgebra": "nilpotent",
        "ideals": [["x1-x4"], ["x3-x0", "(x1-2*x0)^2"]],
        "pairs": [([[2, 1], [0, 1]], [[1, 0], [0, 3]])],
    },
}

ORACLE_DATA = {
    "gm": {
        "subalgebra": "full",
        "sigma1": [1, 2],
        "polys": ["(x1-x0)^3", "(x1-x0)^2*(x1-2*x0)", "x0*(x1-2*x0)*(x1-4*x0)", "x1-3*x0"],
    },
    "borel2": {
        "subalgebra": "nilpotent",
        "sigma1": [[1, 0, 1], [2, 0, 2], [1, 1, 1]],
        "polys": ["(x1-x4)^2", "(x1-2*x0)*(x4-2*x0)", "x2-x0", "(x2-x0)^2*x0-(x1-x4)^3"],
    },
}

SCENARIOS = {
    "gm-theorem2": {
        "format": 1, "model": "gm", "poly": "(x1-x0)^4", "subalgebra": "full",
        "sigma1": [1], "S": 1, "T": 3, "D": 4, "theorem": 2, "seed": 0,
    },
    "borel2-theorem4": {
        # in raw entries: (a-d)^2 + (a-1)(a-2)(a-4)(a-8), invariant under unipotents
        "format": 1, "model": "borel2",
        "poly": "x0^2*(x1-x4)^2+(x1-2*x0)*(x1-3*x0)*(x1-5*x0)*(x1-9*x0)",
        "subalgebra": "nilpotent", "sigma1": [[1, 0, 1], [2, 0, 2]],
        "S": 3, "T": 3, "D": 4, "theorem": 4, "seed": 0,
    },
    "borel2-theorem1": {
        "format": 1, "model": "borel2", "poly": "(x1-x4)^2", "subalgebra": "nilpotent",
        "sigma1": [[1, 0, 1]], "S": 1, "T": 1, "D": 2, "d0": 1, "theorem": 1, "seed": 0,
    },
    "borel2-theorem3": {
        "format": 1, "model": "borel2", "poly": "(x1-x4)^2", "subalgebra": "nilpotent",
        "sigma1": [[1, 0, 1]], "S": 1, "T": 1, "D": 2, "d0": 1, "theorem": 3, "seed": 0,
    },
}


def suite_instances(model: GroupModel, seed: int = 0, T: int = 1, T2: int = 1) -> list[dict]:
    data = SUITE_DATA[model.name]
    pts = random_points(model, 4, seed)
    out = []
    for k, gens in enumerate(data["ideals"]):
        g, h = data["pairs"][k % len(data["pairs"])]
        out.append({
            "I": Ideal([parse_poly(t, model.nvars) for t in gens], model.nvars),
            "g": model.parse_point(g), "h": model.parse_point(h),
            "T": T, "T2": T2, "points": pts,
        })
    return out

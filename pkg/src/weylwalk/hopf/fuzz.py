"""Fuzz the basis-independence of the spacetime commutators.

Random quadratic changes of generators with unit Jacobian at the origin must
leave the kappa-Minkowski table untouched (and the classical table at zero).
Each trial is reproducible from (seed, trial index).
"""

from __future__ import annotations

import numpy as np

from .models import CoproductModel, identity_map, map_coefficients, random_quadratic_map
from .phase import DEFAULT_PAIRING, phase_elem_terms, spacetime_commutators


def lemma1_fuzz(
    model: CoproductModel,
    trials: int,
    seed: int,
    constants=DEFAULT_PAIRING,
) -> dict:
    """Run `trials` random maps and compare each spacetime table with the
    identity-map table, bitwise on the exact coefficients."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    reference = spacetime_commutators(model, identity_map(), constants)
    lines = []
    failures = 0
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        bmap = random_quadratic_map(rng)
        table = spacetime_commutators(model, bmap, constants)
        same = table == reference
        failures += 0 if same else 1
        line = {
            "trial": trial,
            "seed": seed,
            "model": model.name,
            "map": map_coefficients(bmap),
            "invariant": bool(same),
        }
        if not same:
            line["table"] = {
                f"[x{mu},x{nu}]": phase_elem_terms(elem) for (mu, nu), elem in table.items()
            }
        lines.append(line)
    return {
        "model": model.name,
        "trials": trials,
        "seed": seed,
        "failures": failures,
        "reference_table": {
            f"[x{mu},x{nu}]": phase_elem_terms(elem) for (mu, nu), elem in reference.items()
        },
        "lines": lines,
    }

"""Expected-distance measures on finite metric probability spaces.

All quantities are exact rationals (`fractions.Fraction` on the Python
side); floats are rejected at the boundary.
"""

try:
    from ._edlogic import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # pragma: no cover - build-tree layout
    from _edlogic import *  # noqa: F401,F403

__all__ = [
    "Space",
    "EdlogicError",
    "build_product",
    "lambda_combine",
    "alternating_max",
    "alternating_min",
    "alternating_max_multiplicative",
    "mass_from_doubt",
    "doubt_from_mass",
    "belief_from_mass",
    "plausibility_from_mass",
    "is_doubt_function",
    "parse",
    "check",
    "entails",
    "counterexample",
    "evaluate",
]

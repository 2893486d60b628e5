"""Maximal orders of B_p, Gross lattices and supersingular j-invariants."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__  # noqa: F401
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _core import *  # noqa: F401,F403

__all__ = [
    "hilbert",
    "class_number",
    "reduced_forms",
    "hurwitz",
    "hilbert_symbol",
    "ramified_places",
    "order_info",
    "jinv",
    "match_all",
    "supersingular",
    "is_supersingular",
    "types",
    "verify_theorem1",
    "dominance",
    "QuatOrderError",
]

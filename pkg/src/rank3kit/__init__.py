"""rank3kit: permutation-group tools for imprimitive rank 3 actions.

Composition is left-to-right everywhere: ``(a * b)(x) == b(a(x))``.
Points are 0-indexed in memory and 1-indexed in every text format.
"""

from rank3kit.errors import CapacityError, GroupFileError, HypothesisError, Rank3Error
from rank3kit.perm import Permutation
from rank3kit.group import PermGroup

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "GroupFileError",
    "HypothesisError",
    "Permutation",
    "PermGroup",
    "Rank3Error",
    "__version__",
]

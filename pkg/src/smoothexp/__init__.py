"""smoothexp: strong converse exponents of partially smoothed information measures.

The library computes, for classical bipartite distributions and for pure
states given by their Schmidt distribution:

* classical entropy / Renyi divergence quantities (`prob_core`),
* small Hermitian-operator quantities for lemma-level checks (`matrix_core`),
* method-of-types enumeration making n-fold values polynomial in n
  (`types_method`),
* exact or sandwiched one-shot smoothing quantities (`one_shot`),
* every closed-form strong converse exponent with optimizer witnesses
  (`exponents`),
* executable protocol constructions with exact and Monte-Carlo evaluation
  (`protocols`),
* brute-force oracles that gate all closed forms (`oracles`),
* a batch CLI (`smoothexp ...`) emitting CSV/JSON (`cli`).
"""

from .errors import (
    AlphabetMismatchError,
    BudgetExceededError,
    InfeasibleError,
    InputError,
    SmoothexpError,
    VerificationError,
)
from .prob_core import Dist, JointDist

__version__ = "0.1.0"

__all__ = [
    "AlphabetMismatchError",
    "BudgetExceededError",
    "Dist",
    "InfeasibleError",
    "InputError",
    "JointDist",
    "SmoothexpError",
    "VerificationError",
    "__version__",
]

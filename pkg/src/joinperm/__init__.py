"""Criteria and constructions for gluing locally defined partial functions.

Submodules:

- ``coding``: finite-set codes D_m, Cantor pairing, tuple codes
- ``enumeration``: fair step-indexed enumerations and their combinators
- ``join``: collections, difference sets, separator criterion, brute force
- ``prf``: gluing step-budgeted partial functions on tuples of naturals
- ``topology``: finite topological spaces and open separators
- ``uv``: computability relative to indexed families (U, V)
- ``reals``: exact-real arctan, cases and interval partitions
- ``cli``: the ``joinperm`` command
"""

from .coding import dset_decode, dset_encode, pair, unpair
from .enumeration import PAUSE, Enumeration, semidecide
from .errors import BudgetExhausted, InstanceTooLarge, SchemaError
from .join import (
    Collection,
    SeparatorTable,
    const_witness,
    criterion_check,
    diff_sets,
    jp_bruteforce,
    relevant_core,
    sjp_bruteforce,
)

__version__ = "0.1.0"

__all__ = [
    "PAUSE",
    "BudgetExhausted",
    "Collection",
    "Enumeration",
    "InstanceTooLarge",
    "SchemaError",
    "SeparatorTable",
    "const_witness",
    "criterion_check",
    "diff_sets",
    "dset_decode",
    "dset_encode",
    "jp_bruteforce",
    "pair",
    "relevant_core",
    "semidecide",
    "sjp_bruteforce",
    "unpair",
]

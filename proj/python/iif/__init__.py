"""Canonical forms of isometric, selfadjoint and skewadjoint operators on
vector spaces with a nondegenerate diagonalizable sesquilinear form.

All functions speak the iif/1 JSON document format; see the project README
for the schema.
"""

from iif._core import (
    __version__,
    brute_verify,
    canon,
    check,
    diag,
    gen,
    group,
    iso,
    pair,
    phi,
    phi_exists,
    random_instance,
    split,
)

__all__ = [
    "__version__",
    "brute_verify",
    "canon",
    "check",
    "diag",
    "gen",
    "group",
    "iso",
    "pair",
    "phi",
    "phi_exists",
    "random_instance",
    "split",
]

"""Galois embedding obstructions for groups of order p^5 and p^6."""

from ._core import (
    DataError,
    check_table,
    equivalent,
    extension_params,
    find_suitable_ell,
    group_order,
    list_ids,
    normalize,
    obstruct,
    selfcheck,
    table,
)

__all__ = [
    "DataError",
    "check_table",
    "equivalent",
    "extension_params",
    "find_suitable_ell",
    "group_order",
    "list_ids",
    "normalize",
    "obstruct",
    "selfcheck",
    "table",
]

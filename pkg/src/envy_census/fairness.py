"""EF1/EFX predicates evaluated straight from their definitions, and the
good / too-small / too-large classification of a bundle against its
complement.

All functions are pure and read only immutable valuation tables, so they
are safe to call concurrently.
"""
from __future__ import annotations

import operator
from enum import Enum

from .model import Instance, Valuation, complement, iter_items, make_additive


class BundleClass(Enum):
    """How a bundle relates to its complement for one agent: GOOD when both
    sides are EF1, TOO_LARGE when only the bundle is, TOO_SMALL when the
    bundle is not EF1 (its complement then necessarily is)."""

    GOOD = "good"
    TOO_SMALL = "too-small"
    TOO_LARGE = "too-large"


def _checked_bundle(v: Valuation, bundle: int) -> int:
    b = operator.index(bundle)
    if not 0 <= b < (1 << v.m):
        raise ValueError(f"invalid bundle {bundle!r} for m={v.m}")
    return b


def is_ef1_bundle(v: Valuation, bundle: int) -> bool:
    """True iff the bundle is worth at least its complement, or at least the
    complement minus some single item.

    >>> is_ef1_bundle(make_additive([1, 1, 3]), 0b100)
    True
    >>> is_ef1_bundle(make_additive([1, 1, 1, 1]), 0b0001)
    False
    """
    b = _checked_bundle(v, bundle)
    comp = complement(b, v.m)
    t = v.table
    if t[b] >= t[comp]:
        return True
    return any(t[b] >= t[comp ^ (1 << j)] for j in iter_items(comp))


def is_efx_bundle(v: Valuation, bundle: int) -> bool:
    """True iff the bundle is worth at least its complement minus each single
    item; vacuously true for the full bundle.

    >>> is_efx_bundle(make_additive([1, 1, 3]), 0b011)
    True
    >>> is_efx_bundle(make_additive([1, 1, 3]), 0b001)
    False
    """
    b = _checked_bundle(v, bundle)
    comp = complement(b, v.m)
    t = v.table
    return all(t[b] >= t[comp ^ (1 << j)] for j in iter_items(comp))


def is_ef1_allocation(inst: Instance, bundle_1: int) -> bool:
    """True iff giving `bundle_1` to agent 1 and the rest to agent 2 leaves
    each agent's own bundle EF1 under their own valuation."""
    b = _checked_bundle(inst.v1, bundle_1)
    return is_ef1_bundle(inst.v1, b) and is_ef1_bundle(inst.v2, complement(b, inst.m))


def is_efx_allocation(inst: Instance, bundle_1: int) -> bool:
    """Like is_ef1_allocation, with the EFX predicate per agent."""
    b = _checked_bundle(inst.v1, bundle_1)
    return is_efx_bundle(inst.v1, b) and is_efx_bundle(inst.v2, complement(b, inst.m))


def classify_bundle(v: Valuation, bundle: int) -> BundleClass:
    """Classify a bundle by the EF1 status of (bundle, complement).

    >>> v = make_additive([1, 1, 1, 1])
    >>> classify_bundle(v, 0b0011).value
    'good'
    >>> classify_bundle(v, 0b0001).value
    'too-small'
    >>> classify_bundle(v, 0b0111).value
    'too-large'
    """
    b = _checked_bundle(v, bundle)
    if not is_ef1_bundle(v, b):
        return BundleClass.TOO_SMALL
    if is_ef1_bundle(v, complement(b, v.m)):
        return BundleClass.GOOD
    return BundleClass.TOO_LARGE

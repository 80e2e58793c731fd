"""Exhaustive censuses over the bundle lattice: exact EF1/EFX allocation
counts, the too-small / too-large / good bundle systems, and constructive
pairing of per-agent fair partitions into fair allocations.

The counting pipeline never tests bundles one at a time. One
covering-neighbor sweep per item turns a valuation table into the per-bundle
removal thresholds for all 2^m bundles at once, giving a boolean vector of
EF1 (or EFX) bundles; reversing a vector indexes it by complements, so
counting allocations is a vectorized AND. Total cost is O(m * 2^m) with
O(2^m) memory, which keeps m = 20+ tables practical. Results are exact and
independent of traversal order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from . import fairness, model
from .combinatorics import binom
from .model import Instance, Valuation, make_additive, tight_ef1_instance, tight_efx_instance

_I64_MIN = np.iinfo(np.int64).min
_I64_MAX = np.iinfo(np.int64).max


# ---------------------------------------------------------------------------
# bundle masks


def ef1_bundle_mask(v: Valuation) -> np.ndarray:
    """Boolean vector over all bundles: entry b iff bundle b is EF1 for `v`.

    A bundle is EF1 exactly when its value reaches min(complement's value,
    complement's cheapest single-item removal); the sweep computes that
    threshold for every bundle simultaneously.
    """
    t = v.table
    thresh = np.full(t.shape, _I64_MAX, dtype=np.int64)
    for i in range(v.m):
        bit = 1 << i
        tv = t.reshape(-1, 2 * bit)
        th = thresh.reshape(-1, 2 * bit)
        np.minimum(th[:, bit:], tv[:, :bit], out=th[:, bit:])
    np.minimum(thresh, t, out=thresh)
    return t >= thresh[::-1]


def efx_bundle_mask(v: Valuation) -> np.ndarray:
    """Boolean vector over all bundles: entry b iff bundle b is EFX for `v`.

    EFX compares against the complement's costliest single-item removal
    (vacuously true for the full bundle)."""
    t = v.table
    worst = np.full(t.shape, _I64_MIN, dtype=np.int64)
    for i in range(v.m):
        bit = 1 << i
        tv = t.reshape(-1, 2 * bit)
        wv = worst.reshape(-1, 2 * bit)
        np.maximum(wv[:, bit:], tv[:, :bit], out=wv[:, bit:])
    return t >= worst[::-1]


# ---------------------------------------------------------------------------
# counting


def count_ef1_allocations(inst: Instance) -> int:
    """Exact number of ordered splits (M1, M2) that are EF1 allocations.

    >>> count_ef1_allocations(tight_ef1_instance(4))
    6
    >>> count_ef1_allocations(tight_ef1_instance(5))
    12
    """
    good = ef1_bundle_mask(inst.v1) & ef1_bundle_mask(inst.v2)[::-1]
    return int(np.count_nonzero(good))


def count_efx_allocations(inst: Instance) -> int:
    """Exact number of ordered splits (M1, M2) that are EFX allocations.

    >>> count_efx_allocations(tight_efx_instance(5))
    2
    """
    good = efx_bundle_mask(inst.v1) & efx_bundle_mask(inst.v2)[::-1]
    return int(np.count_nonzero(good))


def f_ef1(m: int) -> int:
    """Tight lower bound on the EF1 allocation count for m items:
    C(m, m/2) for even m, 2*C(m-1, (m-1)/2) for odd m.

    >>> f_ef1(4), f_ef1(5), f_ef1(1)
    (6, 12, 2)
    """
    if m < 1:
        raise ValueError(f"item count must be positive, got {m!r}")
    if m % 2 == 0:
        return binom(m, m // 2)
    return 2 * binom(m - 1, (m - 1) // 2)


# ---------------------------------------------------------------------------
# bundle classification systems


class SetSystems(NamedTuple):
    """The three bundle classes of one valuation, as sets of bundle masks."""

    too_small: set[int]
    too_large: set[int]
    good: set[int]


def _mask_to_set(mask: np.ndarray) -> set[int]:
    return set(map(int, np.nonzero(mask)[0]))


def extract_set_systems(v: Valuation) -> SetSystems:
    """Partition all 2^m bundles into too-small / too-large / good classes.

    >>> systems = extract_set_systems(make_additive([1, 1]))
    >>> systems.too_small, systems.too_large, sorted(systems.good)
    ({0}, {3}, [1, 2])
    """
    ef1 = ef1_bundle_mask(v)
    comp_ef1 = ef1[::-1]
    return SetSystems(
        _mask_to_set(~ef1),
        _mask_to_set(ef1 & ~comp_ef1),
        _mask_to_set(ef1 & comp_ef1),
    )


def verify_separation(v: Valuation) -> bool:
    """True iff every too-small bundle is at Hamming distance >= 2 from every
    too-large bundle; vacuously true when either class is empty.

    Checked without pairwise scans: distance < 2 would require an equal pair
    or a covering pair across the classes, so one sweep per item suffices.
    """
    ef1 = ef1_bundle_mask(v)
    too_small = ~ef1
    too_large = ef1 & ~ef1[::-1]
    if bool(np.any(too_small & too_large)):
        return False
    for i in range(v.m):
        bit = 1 << i
        ts = too_small.reshape(-1, 2 * bit)
        tl = too_large.reshape(-1, 2 * bit)
        if bool(np.any(ts[:, bit:] & tl[:, :bit])) or bool(np.any(ts[:, :bit] & tl[:, bit:])):
            return False
    return True


# ---------------------------------------------------------------------------
# partitions and constructive allocations


def list_ef1_partitions(v: Valuation) -> set[int]:
    """All unordered partitions {S, complement} with both sides EF1 for `v`.

    Each partition is returned once, as its canonical representative: the
    side that does not contain item m-1.

    >>> sorted(list_ef1_partitions(make_additive([1, 1, 1, 1])))
    [3, 5, 6]
    >>> list_ef1_partitions(make_additive([1]))
    {0}
    """
    ef1 = ef1_bundle_mask(v)
    both = ef1 & ef1[::-1]
    return _mask_to_set(both[: 1 << (v.m - 1)])


def _preferred_side(v: Valuation, a: int, b: int) -> int:
    """The side of {a, b} that `v` weakly prefers; ties go to the smaller mask."""
    va, vb = int(v.table[a]), int(v.table[b])
    if va > vb:
        return a
    if vb > va:
        return b
    return min(a, b)


def combine_ef1_partitions(
    partitions_1: Iterable[int], partitions_2: Iterable[int], inst: Instance
) -> set[tuple[int, int]]:
    """Merge per-agent EF1 partition lists into distinct EF1 allocations.

    Inputs are canonical partition representatives (the format of
    list_ef1_partitions): each must be EF1 on both sides for its agent, or a
    ValueError is raised. A partition on both lists contributes both
    orderings; a partition on one list contributes the ordering where the
    *other* agent takes a weakly preferred side (ties go to the
    representative). The result therefore has exactly
    len(partitions_1) + len(partitions_2) allocations, all EF1.
    """
    p1 = {int(p) for p in partitions_1}
    p2 = {int(p) for p in partitions_2}
    full = model.full_bundle(inst.m)
    half = 1 << (inst.m - 1)
    for agent, (pset, v) in enumerate(((p1, inst.v1), (p2, inst.v2)), start=1):
        for rep in pset:
            if not 0 <= rep < half:
                raise ValueError(
                    f"{rep} is not a canonical partition representative for m={inst.m}"
                )
            if not (fairness.is_ef1_bundle(v, rep) and fairness.is_ef1_bundle(v, full ^ rep)):
                raise ValueError(f"partition {rep} is not EF1 for agent {agent}")
    allocations: set[tuple[int, int]] = set()
    for rep in p1 & p2:
        allocations.add((rep, full ^ rep))
        allocations.add((full ^ rep, rep))
    for rep in p1 - p2:
        pick = _preferred_side(inst.v2, rep, full ^ rep)
        allocations.add((full ^ pick, pick))
    for rep in p2 - p1:
        pick = _preferred_side(inst.v1, rep, full ^ rep)
        allocations.add((pick, full ^ pick))
    return allocations


def efx_partition(v: Valuation) -> tuple[int, int]:
    """An unordered partition whose two sides are both EFX for `v`, found by
    scanning bundles in increasing numeric order and returning the first hit
    (which never contains item m-1) together with its complement.

    >>> efx_partition(tight_efx_instance(3).v1)
    (3, 4)
    >>> efx_partition(make_additive([1, 1]))
    (1, 2)
    """
    efx = efx_bundle_mask(v)
    both = efx & efx[::-1]
    first = int(np.argmax(both))
    if not both[first]:
        raise RuntimeError(
            "no two-sided EFX split exists; the valuation table must be corrupt"
        )
    return first, model.complement(first, v.m)


def cut_and_choose_efx(inst: Instance) -> tuple[tuple[int, int], tuple[int, int]]:
    """Two distinct EFX allocations via propose-and-choose.

    Each agent proposes a two-sided EFX partition of their own valuation.
    Coinciding proposals give the two orderings of that partition; otherwise
    each agent picks a weakly preferred side (ties to the smaller mask) from
    the other agent's proposal and the proposer keeps the rest.

    >>> cut_and_choose_efx(tight_efx_instance(3))
    ((3, 4), (4, 3))
    """
    part1 = efx_partition(inst.v1)
    part2 = efx_partition(inst.v2)
    full = model.full_bundle(inst.m)
    if part1 == part2:
        a, b = part1
        return (a, b), (b, a)
    pick2 = _preferred_side(inst.v2, *part1)
    pick1 = _preferred_side(inst.v1, *part2)
    return (full ^ pick2, pick2), (pick1, full ^ pick1)


# ---------------------------------------------------------------------------
# census reports


@dataclass(frozen=True)
class CensusReport:
    """Counts for one instance: allocation counts under the requested
    fairness notions, the EF1 lower bound, per-agent classification sizes,
    and whether both agents' class systems are distance-separated."""

    m: int
    bound: int
    ef1_count: int | None
    efx_count: int | None
    good_count: tuple[int, int]
    too_small_count: tuple[int, int]
    separation_ok: bool

    def to_json_dict(self) -> dict:
        """JSON-ready dict; counts are decimal strings so consumers with
        64-bit number parsing never truncate them."""
        out: dict = {"m": self.m, "bound": str(self.bound)}
        if self.ef1_count is not None:
            out["ef1_count"] = str(self.ef1_count)
        if self.efx_count is not None:
            out["efx_count"] = str(self.efx_count)
        out["good_count"] = [str(c) for c in self.good_count]
        out["too_small_count"] = [str(c) for c in self.too_small_count]
        out["separation_ok"] = self.separation_ok
        return out


def census_report(inst: Instance, fairness_kind: str = "both") -> CensusReport:
    """Run the full census of an instance. `fairness_kind` selects which
    allocation counts appear in the report: "ef1", "efx", or "both"."""
    if fairness_kind not in ("ef1", "efx", "both"):
        raise ValueError(f"fairness must be 'ef1', 'efx', or 'both', got {fairness_kind!r}")
    ef1_masks = [ef1_bundle_mask(inst.v1), ef1_bundle_mask(inst.v2)]
    ef1_count = None
    if fairness_kind in ("ef1", "both"):
        ef1_count = int(np.count_nonzero(ef1_masks[0] & ef1_masks[1][::-1]))
    efx_count = None
    if fairness_kind in ("efx", "both"):
        efx_count = count_efx_allocations(inst)
    good = []
    too_small = []
    for mask in ef1_masks:
        good.append(int(np.count_nonzero(mask & mask[::-1])))
        too_small.append(int(np.count_nonzero(~mask)))
    separation = verify_separation(inst.v1) and verify_separation(inst.v2)
    return CensusReport(
        m=inst.m,
        bound=f_ef1(inst.m),
        ef1_count=ef1_count,
        efx_count=efx_count,
        good_count=(good[0], good[1]),
        too_small_count=(too_small[0], too_small[1]),
        separation_ok=separation,
    )

"""Item bundles, exact valuations, and instance generators.

Items are numbered 0..m-1. A bundle is an m-bit integer: item i is in the
bundle iff bit i is set, so the 2^m bundles are exactly the integers in
[0, 2^m). A valuation stores one value per bundle as an exact fixed point:
int64 numerators over a single positive denominator per table. Every
fairness comparison is then an exact integer comparison, so ties behave
deterministically instead of drifting with floating-point rounding.
"""
from __future__ import annotations

import hashlib
import json
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_ITEMS = 24

# Fixed-point grid for randomly drawn values in [0, 1).
RANDOM_DENOM = 1 << 30

_INT64_MAX = np.iinfo(np.int64).max


class InstanceFormatError(ValueError):
    """An instance file or dict does not describe a valid instance."""


# ---------------------------------------------------------------------------
# bundles


def full_bundle(m: int) -> int:
    """The bundle containing all m items.

    >>> full_bundle(3)
    7
    """
    return (1 << m) - 1


def complement(bundle: int, m: int) -> int:
    """Items not in `bundle`, within an m-item instance.

    >>> complement(0b101, 3)
    2
    >>> complement(complement(6, 4), 4)
    6
    """
    return bundle ^ full_bundle(m)


def bundle_size(bundle: int) -> int:
    """Number of items in the bundle."""
    return int(bundle).bit_count()


def bundle_of(items: Iterable[int]) -> int:
    """Bundle containing exactly the given item indices.

    >>> bundle_of([0, 2])
    5
    """
    mask = 0
    for i in items:
        mask |= 1 << i
    return mask


def iter_items(bundle: int) -> Iterator[int]:
    """Item indices present in `bundle`, ascending.

    >>> list(iter_items(0b1101))
    [0, 2, 3]
    """
    b = int(bundle)
    while b:
        low = b & -b
        yield low.bit_length() - 1
        b ^= low


# ---------------------------------------------------------------------------
# monotonicity


@dataclass(frozen=True)
class MonotoneViolation:
    """One witness that a table is not a normalized monotone valuation."""

    subset: int
    superset: int
    subset_value: object
    superset_value: object

    def __str__(self) -> str:
        if self.subset == 0 and self.superset == 0:
            return f"empty bundle has value {self.subset_value}, expected 0"
        return (
            f"bundle {self.subset} has value {self.subset_value} but its "
            f"superset {self.superset} has value {self.superset_value}"
        )


def check_monotone(table) -> MonotoneViolation | None:
    """Check that a full valuation table is normalized and monotone.

    `table` holds one value per bundle, indexed by bundle bits, so its
    length must be a power of two. Returns None when table[0] == 0 and no
    covering pair decreases (removing one item never raises the value);
    checking covering pairs suffices because any violating subset pair
    contains a violating covering step. Otherwise returns one offending
    pair.

    >>> check_monotone([0, 1, 1, 2]) is None
    True
    >>> print(check_monotone([0, 2, 0, 1]))
    bundle 1 has value 2 but its superset 3 has value 1
    >>> print(check_monotone([1, 1]))
    empty bundle has value 1, expected 0
    """
    arr = np.asarray(table)
    if arr.ndim != 1 or arr.size == 0 or arr.size & (arr.size - 1):
        raise ValueError("table length must be a power of two")
    if arr[0] != 0:
        return MonotoneViolation(0, 0, arr[0], arr[0])
    if arr.dtype == object or not np.issubdtype(arr.dtype, np.number):
        return _check_monotone_slow(list(arr))
    m = arr.size.bit_length() - 1
    for i in range(m):
        bit = 1 << i
        view = arr.reshape(-1, 2 * bit)
        bad = view[:, bit:] < view[:, :bit]
        if bad.any():
            flat = int(np.argmax(bad))
            small = (flat // bit) * 2 * bit + flat % bit
            large = small + bit
            return MonotoneViolation(small, large, arr[small], arr[large])
    return None


def _check_monotone_slow(values: list) -> MonotoneViolation | None:
    n = len(values)
    for s in range(1, n):
        for j in iter_items(s):
            below = s ^ (1 << j)
            if values[below] > values[s]:
                return MonotoneViolation(below, s, values[below], values[s])
    return None


# ---------------------------------------------------------------------------
# valuations and instances


@dataclass(frozen=True, eq=False)
class Valuation:
    """Exact valuation over all bundles of an m-item set.

    `table[b]` is the value numerator of bundle `b`; the exact value is
    table[b] / denom. Tables are validated (normalized, monotone) at
    construction and frozen afterwards, so they are safe to share across
    threads and worker processes. `item_values` records the per-item values
    when the valuation was built additively, which lets instance files
    round-trip in the compact additive form.
    """

    m: int
    table: np.ndarray
    denom: int = 1
    item_values: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or not 1 <= self.m <= MAX_ITEMS:
            raise ValueError(f"item count must be in 1..{MAX_ITEMS}, got {self.m!r}")
        if not isinstance(self.denom, int) or self.denom < 1:
            raise ValueError(f"denominator must be a positive integer, got {self.denom!r}")
        table = np.array(self.table, dtype=np.int64, copy=True)
        if table.shape != (1 << self.m,):
            raise ValueError(
                f"table must have 2^{self.m} entries, got shape {table.shape}"
            )
        violation = check_monotone(table)
        if violation is not None:
            raise ValueError(f"valuation is not monotone: {violation}")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def value(self, bundle: int) -> Fraction:
        """Exact value of `bundle`.

        >>> v = make_additive([1, 1, 3])
        >>> print(v.value(0b011), v.value(0), v.value(0b111))
        2 0 5
        """
        b = operator.index(bundle)
        if not 0 <= b < (1 << self.m):
            raise ValueError(f"invalid bundle {bundle!r} for m={self.m}")
        return Fraction(int(self.table[b]), self.denom)

    def __repr__(self) -> str:
        kind = "additive" if self.item_values is not None else "table"
        return f"Valuation(m={self.m}, kind={kind}, denom={self.denom})"


def value(v: Valuation, bundle: int) -> Fraction:
    """Exact value of `bundle` under valuation `v`."""
    return v.value(bundle)


@dataclass(frozen=True, eq=False)
class Instance:
    """Two agents' valuations over the same m items."""

    v1: Valuation
    v2: Valuation

    def __post_init__(self) -> None:
        if self.v1.m != self.v2.m:
            raise ValueError(
                f"agents must value the same items: m={self.v1.m} vs m={self.v2.m}"
            )

    @property
    def m(self) -> int:
        return self.v1.m

    def __repr__(self) -> str:
        return f"Instance(m={self.m}, v1={self.v1!r}, v2={self.v2!r})"


def as_fraction(x) -> Fraction:
    """Exact Fraction from an int, Fraction, float, or numeric string.

    Strings may be decimals ("0.25"), ratios ("2/3"), or scientific
    notation; floats contribute their exact binary value.

    >>> as_fraction("0.25")
    Fraction(1, 4)
    >>> as_fraction("2/3")
    Fraction(2, 3)
    """
    if isinstance(x, bool):
        raise TypeError("boolean is not a valuation value")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, (np.integer,)):
        return Fraction(int(x))
    if isinstance(x, (np.floating,)):
        return Fraction(float(x))
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            return Fraction(float(x))
    raise TypeError(f"cannot interpret {x!r} as an exact number")


def make_additive(item_values: Sequence) -> Valuation:
    """Valuation where a bundle is worth the sum of its items' values.

    >>> make_additive([1, 1]).table.tolist()
    [0, 1, 1, 2]
    >>> make_additive([0]).table.tolist()
    [0, 0]
    """
    values = [as_fraction(x) for x in item_values]
    if not values:
        raise ValueError("need at least one item value")
    if len(values) > MAX_ITEMS:
        raise ValueError(f"at most {MAX_ITEMS} items are supported")
    if any(x < 0 for x in values):
        raise ValueError("item values must be nonnegative")
    denom = math.lcm(*(x.denominator for x in values))
    numers = [int(x * denom) for x in values]
    if sum(numers) > _INT64_MAX:
        raise ValueError("item values overflow the 64-bit fixed-point table")
    m = len(values)
    table = np.zeros(1 << m, dtype=np.int64)
    for i, num in enumerate(numers):
        bit = 1 << i
        view = table.reshape(-1, 2 * bit)
        view[:, bit:] += num
    return Valuation(m, table, denom, item_values=tuple(values))


def random_monotone(m: int, seed: int) -> Valuation:
    """Random monotone valuation, deterministic in (m, seed).

    Each bundle draws a uniform fixed-point value in [0, 1); the running
    maximum over subsets (one sweep per item) then makes the table
    monotone, and the empty bundle is pinned to 0.
    """
    if not 1 <= m <= MAX_ITEMS:
        raise ValueError(f"item count must be in 1..{MAX_ITEMS}, got {m!r}")
    rng = np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)
    table = rng.integers(0, RANDOM_DENOM, size=1 << m, dtype=np.int64)
    for i in range(m):
        bit = 1 << i
        view = table.reshape(-1, 2 * bit)
        np.maximum(view[:, bit:], view[:, :bit], out=view[:, bit:])
    table[0] = 0
    return Valuation(m, table, RANDOM_DENOM)


def derive_seed(*parts: int) -> int:
    """Stable 64-bit seed from integer parts (hash-independent across runs)."""
    h = hashlib.blake2b(digest_size=8)
    for p in parts:
        h.update(int(p).to_bytes(16, "little", signed=True))
    return int.from_bytes(h.digest(), "little")


def random_instance(m: int, seed: int) -> Instance:
    """Instance with two independent random monotone valuations."""
    return Instance(
        random_monotone(m, derive_seed(seed, 1)),
        random_monotone(m, derive_seed(seed, 2)),
    )


def tight_ef1_instance(m: int) -> Instance:
    """Identical additive instance with the fewest possible EF1 allocations.

    Even m: every item is worth 1. Odd m: items 0..m-2 are worth 1 and the
    last item is worth 0.

    >>> tight_ef1_instance(5).v1.item_values
    (Fraction(1, 1), Fraction(1, 1), Fraction(1, 1), Fraction(1, 1), Fraction(0, 1))
    """
    if m < 1:
        raise ValueError(f"item count must be positive, got {m!r}")
    values = [1] * m if m % 2 == 0 else [1] * (m - 1) + [0]
    v = make_additive(values)
    return Instance(v, v)


def tight_efx_instance(m: int) -> Instance:
    """Identical additive instance with exactly two EFX allocations: items
    0..m-2 are worth 1 and the last item is worth m.

    >>> tight_efx_instance(3).v1.item_values
    (Fraction(1, 1), Fraction(1, 1), Fraction(3, 1))
    """
    if m < 1:
        raise ValueError(f"item count must be positive, got {m!r}")
    values = [1] * (m - 1) + [m]
    v = make_additive(values)
    return Instance(v, v)


# ---------------------------------------------------------------------------
# instance files
#
# {"m": int, "agents": [agent, agent]} with agent either
#   {"kind": "additive", "values": [m entries]} or
#   {"kind": "table", "values": [2^m entries]}.
# Entries are JSON numbers or exact-number strings ("2/3", "0.25"); the
# writer emits non-integer values as "p/q" strings so files round-trip
# exactly. Bundles everywhere in I/O are integers in [0, 2^m), item 0 being
# the least-significant bit.


def _encode_number(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _agent_to_dict(v: Valuation) -> dict:
    if v.item_values is not None:
        return {"kind": "additive", "values": [_encode_number(x) for x in v.item_values]}
    values = [Fraction(int(n), v.denom) for n in v.table]
    return {"kind": "table", "values": [_encode_number(x) for x in values]}


def instance_to_dict(inst: Instance) -> dict:
    """JSON-ready dict in the instance file format."""
    return {"m": inst.m, "agents": [_agent_to_dict(inst.v1), _agent_to_dict(inst.v2)]}


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def save_instance(inst: Instance, path) -> None:
    """Write the instance to `path` in the JSON instance format."""
    Path(path).write_text(dumps_instance(inst), encoding="utf-8")


def _valuation_from_table(values: list[Fraction], m: int) -> Valuation:
    denom = math.lcm(*(x.denominator for x in values))
    if any(x.numerator * (denom // x.denominator) > _INT64_MAX for x in values):
        raise InstanceFormatError(
            "table values need a common denominator finer than 64-bit fixed point"
        )
    table = np.array([int(x * denom) for x in values], dtype=np.int64)
    return Valuation(m, table, denom)


def _agent_from_dict(data, m: int, which: int) -> Valuation:
    try:
        kind = data["kind"]
        raw = data["values"]
    except (TypeError, KeyError) as exc:
        raise InstanceFormatError(f"agent {which}: missing {exc}") from exc
    if not isinstance(raw, list):
        raise InstanceFormatError(f"agent {which}: values must be a list")
    try:
        values = [as_fraction(x) for x in raw]
    except (TypeError, ValueError) as exc:
        raise InstanceFormatError(f"agent {which}: {exc}") from exc
    try:
        if kind == "additive":
            if len(values) != m:
                raise InstanceFormatError(
                    f"agent {which}: additive needs {m} values, got {len(values)}"
                )
            return make_additive(values)
        if kind == "table":
            if len(values) != 1 << m:
                raise InstanceFormatError(
                    f"agent {which}: table needs 2^{m} values, got {len(values)}"
                )
            return _valuation_from_table(values, m)
    except InstanceFormatError:
        raise
    except ValueError as exc:
        raise InstanceFormatError(f"agent {which}: {exc}") from exc
    raise InstanceFormatError(f"agent {which}: unknown kind {kind!r}")


def instance_from_dict(data) -> Instance:
    """Parse the instance file format; raises InstanceFormatError on any
    schema or monotonicity problem, naming the offending pair when a table
    is not monotone."""
    if not isinstance(data, dict):
        raise InstanceFormatError("instance must be a JSON object")
    m = data.get("m")
    if not isinstance(m, int) or not 1 <= m <= MAX_ITEMS:
        raise InstanceFormatError(f"'m' must be an integer in 1..{MAX_ITEMS}, got {m!r}")
    agents = data.get("agents")
    if not isinstance(agents, list) or len(agents) != 2:
        raise InstanceFormatError("'agents' must be a list of exactly 2 agents")
    return Instance(
        _agent_from_dict(agents[0], m, 1),
        _agent_from_dict(agents[1], m, 2),
    )


def load_instance(path) -> Instance:
    """Load an instance file; float literals are parsed as exact decimals."""
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f, parse_float=as_fraction)
    return instance_from_dict(data)

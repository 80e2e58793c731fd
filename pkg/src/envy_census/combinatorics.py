"""Extremal set-theory kernel: exact binomials, the strictly-decreasing
binomial (cascade) decomposition, the level-dropping shadow bound, Sperner
profile feasibility, antichain checks, and Hamming distances/balls with a
ball-replacement check for system distances.

Set systems are plain collections of bundle masks; all arithmetic is exact
Python integers. Cascade and shadow results are memoized (pure functions,
safe for concurrent readers).
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def binom(n: int, k: int) -> int:
    """C(n, k) as an exact integer; 0 when k > n.

    >>> binom(4, 2), binom(7, 0), binom(3, 5)
    (6, 1, 0)
    """
    if n < 0 or k < 0:
        raise ValueError(f"binom needs nonnegative arguments, got ({n}, {k})")
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# Hamming distances and balls


def hamming_distance(a: int, b: int) -> int:
    """Size of the symmetric difference of two bundles.

    >>> hamming_distance(0b011, 0b110)
    2
    >>> hamming_distance(5, 5)
    0
    """
    return (int(a) ^ int(b)).bit_count()


def system_distance(system_a: Iterable[int], system_b: Iterable[int]):
    """Minimum Hamming distance across all pairs, one from each system.

    Empty systems have no pairs; the sentinel math.inf is returned so that
    downstream minimum-distance requirements hold vacuously.

    >>> system_distance({0b001}, {0b011, 0b100})
    1
    >>> system_distance(set(), {1})
    inf
    """
    sa = [int(x) for x in system_a]
    sb = [int(x) for x in system_b]
    if not sa or not sb:
        return math.inf
    return min((x ^ y).bit_count() for x in sa for y in sb)


def _popcount_masks_ascending(r: int) -> Iterator[int]:
    """All bit masks with exactly r bits set, in increasing numeric order.

    Numeric order on masks is colexicographic order on the item sets: the
    mask whose highest differing bit is unset comes first.
    """
    if r == 0:
        yield 0
        return
    v = (1 << r) - 1
    while True:
        yield v
        low = v & -v
        ripple = v + low
        v = (((ripple ^ v) >> 2) // low) | ripple


def the_hamming_ball(center: int, r: int, m: int) -> set[int]:
    """All bundles within Hamming distance r of `center` (exact-radius ball).

    >>> sorted(the_hamming_ball(0, 1, 3))
    [0, 1, 2, 4]
    >>> len(the_hamming_ball(5, 3, 3))
    8
    """
    if not 0 <= center < (1 << m):
        raise ValueError(f"center {center!r} out of range for m={m}")
    if not 0 <= r <= m:
        raise ValueError(f"radius must be in 0..{m}, got {r!r}")
    ball = set()
    for t in range(r + 1):
        for diff in itertools.islice(_popcount_masks_ascending(t), binom(m, t)):
            ball.add(center ^ diff)
    return ball


def a_hamming_ball(center: int, size: int, m: int) -> set[int]:
    """A canonical system of exactly `size` bundles nested between two
    consecutive exact-radius balls around `center`.

    All bundles strictly inside the minimal sufficient radius are included;
    the boundary shell is filled with the numerically smallest symmetric
    differences (colexicographic fill).

    >>> a_hamming_ball(0b111, 1, 3)
    {7}
    >>> sorted(a_hamming_ball(0, 5, 3))
    [0, 1, 2, 3, 4]
    """
    if not 0 <= center < (1 << m):
        raise ValueError(f"center {center!r} out of range for m={m}")
    if not 1 <= size <= (1 << m):
        raise ValueError(f"size must be in 1..2^{m}, got {size!r}")
    ball: set[int] = set()
    inner = 0
    radius = 0
    for radius in range(m + 1):
        level = binom(m, radius)
        if inner + level >= size:
            break
        for diff in itertools.islice(_popcount_masks_ascending(radius), level):
            ball.add(center ^ diff)
        inner += level
    for diff in itertools.islice(_popcount_masks_ascending(radius), size - inner):
        ball.add(center ^ diff)
    return ball


@dataclass(frozen=True)
class HarperReport:
    """Outcome of replacing two systems by same-size canonical balls."""

    size_a: int
    size_b: int
    d_original: int
    d_balls: int
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "size_a": self.size_a,
            "size_b": self.size_b,
            "d_original": self.d_original,
            "d_balls": self.d_balls,
            "ok": self.ok,
        }


def verify_harper(system_a: Iterable[int], system_b: Iterable[int], m: int) -> HarperReport:
    """Replace two nonempty set systems by same-size canonical Hamming balls
    centered at the full set (for the first) and the empty set (for the
    second), and check the balls are at least as far apart as the originals.

    >>> verify_harper({0b111}, {0}, 3).ok
    True
    """
    sa = {int(x) for x in system_a}
    sb = {int(x) for x in system_b}
    if not sa or not sb:
        raise ValueError("both set systems must be nonempty")
    ball_a = a_hamming_ball((1 << m) - 1, len(sa), m)
    ball_b = a_hamming_ball(0, len(sb), m)
    d_original = system_distance(sa, sb)
    d_balls = system_distance(ball_a, ball_b)
    return HarperReport(len(sa), len(sb), int(d_original), int(d_balls), d_balls >= d_original)


# ---------------------------------------------------------------------------
# cascade decomposition and shadow bounds


@dataclass(frozen=True)
class Cascade:
    """Strictly-decreasing binomial decomposition of a positive integer:
    consecutive-level terms (a_k, k), (a_{k-1}, k-1), ..., (a_i, i) with
    a_k > a_{k-1} > ... > a_i >= i >= 1."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("a cascade has at least one term")
        for (a, t), (a_next, t_next) in zip(self.terms, self.terms[1:]):
            if t_next != t - 1 or a_next >= a:
                raise ValueError(f"invalid cascade terms {self.terms!r}")
        for a, t in self.terms:
            if not 1 <= t <= a:
                raise ValueError(f"invalid cascade term C({a},{t})")

    @property
    def value(self) -> int:
        """The decomposed integer: sum of C(a_t, t) over the terms."""
        return sum(binom(a, t) for a, t in self.terms)

    def __str__(self) -> str:
        return "+".join(f"C({a},{t})" for a, t in self.terms)


def _largest_binom_at_most(limit: int, k: int) -> tuple[int, int]:
    """Largest a with C(a, k) <= limit, and that binomial; needs limit >= 1."""
    if k == 1:
        return limit, limit
    a, c = k, 1
    while True:
        nxt = c * (a + 1) // (a + 1 - k)
        if nxt > limit:
            return a, c
        a, c = a + 1, nxt


@functools.lru_cache(maxsize=None)
def cascade_decompose(n: int, k: int) -> Cascade:
    """The unique cascade decomposition of n starting at level k, built
    greedily from the largest feasible top coefficient.

    >>> str(cascade_decompose(8, 3))
    'C(4,3)+C(3,2)+C(1,1)'
    >>> cascade_decompose(1, 5).terms
    ((5, 5),)
    """
    if n < 1 or k < 1:
        raise ValueError(f"cascade needs positive n and k, got ({n}, {k})")
    terms = []
    rem, level = n, k
    while rem:
        a, c = _largest_binom_at_most(rem, level)
        terms.append((a, level))
        rem -= c
        level -= 1
    return Cascade(tuple(terms))


@functools.lru_cache(maxsize=None)
def shadow(n: int, k: int) -> int:
    """Lower-shadow size bound one level below k: each cascade term C(a, t)
    of n at level k drops to C(a, t-1); zero input gives zero.

    >>> shadow(0, 3)
    0
    >>> shadow(4, 3)
    6
    >>> shadow(10, 3)
    10
    """
    if n < 0 or k < 1:
        raise ValueError(f"shadow needs n >= 0 and k >= 1, got ({n}, {k})")
    if n == 0:
        return 0
    return sum(binom(a, t - 1) for a, t in cascade_decompose(n, k).terms)


def shadow_is_monotone(k: int, n_max: int) -> bool:
    """Whether shadow(., k) is non-decreasing on 0..n_max."""
    if k < 1 or n_max < 1:
        raise ValueError(f"need k >= 1 and n_max >= 1, got ({k}, {n_max})")
    return all(shadow(n, k) <= shadow(n + 1, k) for n in range(n_max))


# ---------------------------------------------------------------------------
# Sperner families


def is_sperner(family: Iterable[int]) -> bool:
    """True iff no member of the family is a subset of a distinct member.

    >>> is_sperner({0b01, 0b10})
    True
    >>> is_sperner({0b01, 0b11})
    False
    """
    members = [int(x) for x in set(family)]
    for a in members:
        for b in members:
            if a != b and a & b == a:
                return False
    return True


def bjorner_feasible(counts: Sequence[int]) -> bool:
    """Whether some antichain over an n-element ground set (n = len(counts))
    has exactly counts[i] member sets of size i+1.

    The per-size counts are folded from the largest size downward through
    iterated shadow bounds, and the accumulated requirement at the smallest
    populated size is compared against that level's capacity.

    >>> bjorner_feasible([0, 3, 0])
    True
    >>> bjorner_feasible([0, 1, 1])
    False
    """
    profile = [int(c) for c in counts]
    n = len(profile)
    if n < 1:
        raise ValueError("profile must cover sizes 1..n for some n >= 1")
    if any(c < 0 for c in profile):
        raise ValueError("counts must be nonnegative")
    if not any(profile):
        raise ValueError("at least one count must be positive")
    j = next(i for i, c in enumerate(profile) if c)
    x = profile[n - 1]
    for i in range(n - 2, j - 1, -1):
        x = shadow(x, i + 2) + profile[i]
    return x <= binom(n, j + 1)

import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envy_census import (
    Cascade,
    a_hamming_ball,
    binom,
    bjorner_feasible,
    bundle_of,
    cascade_decompose,
    extract_set_systems,
    hamming_distance,
    is_sperner,
    make_additive,
    random_monotone,
    shadow,
    shadow_is_monotone,
    system_distance,
    the_hamming_ball,
    verify_harper,
)

from oracles import all_cascades, feasible_sperner_profiles, min_cross_distance


# ---------------------------------------------------------------------------
# binomials and distances


def test_binom_examples():
    assert binom(4, 2) == 6
    assert binom(9, 0) == 1
    assert binom(3, 5) == 0
    with pytest.raises(ValueError):
        binom(-1, 2)
    with pytest.raises(ValueError):
        binom(2, -1)


def test_hamming_distance_examples():
    assert hamming_distance(bundle_of([0, 1]), bundle_of([1, 2])) == 2
    assert hamming_distance(13, 13) == 0
    assert system_distance({bundle_of([0])}, {bundle_of([0, 1]), bundle_of([2])}) == 1
    assert system_distance(set(), {1}) == math.inf
    assert system_distance({1}, set()) == math.inf


# ---------------------------------------------------------------------------
# Hamming balls


def test_the_hamming_ball():
    assert the_hamming_ball(0b101, 0, 3) == {0b101}
    assert the_hamming_ball(0, 1, 3) == {0, 1, 2, 4}
    assert the_hamming_ball(0b10, 4, 4) == set(range(16))
    for r in range(5):
        assert len(the_hamming_ball(0b1001, r, 4)) == sum(math.comb(4, t) for t in range(r + 1))
    with pytest.raises(ValueError):
        the_hamming_ball(0, 4, 3)
    with pytest.raises(ValueError):
        the_hamming_ball(8, 1, 3)


def test_a_hamming_ball_examples():
    assert a_hamming_ball(0b111, 1, 3) == {0b111}
    assert a_hamming_ball(0, 1 << 3, 3) == set(range(8))
    assert a_hamming_ball(0, 5, 3) == {0, 1, 2, 4, 0b011}
    with pytest.raises(ValueError):
        a_hamming_ball(0, 0, 3)
    with pytest.raises(ValueError):
        a_hamming_ball(0, 9, 3)


def test_a_hamming_ball_is_nested_between_exact_balls():
    m = 4
    for center in (0, 0b1111, 0b0101):
        for size in range(1, (1 << m) + 1):
            ball = a_hamming_ball(center, size, m)
            assert len(ball) == size
            radius = next(
                r for r in range(m + 1)
                if sum(math.comb(m, t) for t in range(r + 1)) >= size
            )
            inner = the_hamming_ball(center, radius - 1, m) if radius else set()
            outer = the_hamming_ball(center, radius, m)
            assert inner <= ball <= outer


def test_verify_harper_examples():
    report = verify_harper({0b111}, {0}, 3)
    assert report.ok and report.d_original == 3 and report.d_balls == 3

    systems = extract_set_systems(make_additive([1, 1, 1, 1]))
    report = verify_harper(systems.too_small, systems.too_large, 4)
    assert report.ok
    assert report.d_balls >= 2

    with pytest.raises(ValueError):
        verify_harper(set(), {1}, 3)


def test_verify_harper_exhaustive_m2():
    systems = [{b for b in range(4) if mask >> b & 1} for mask in range(1, 16)]
    for sys_a in systems:
        for sys_b in systems:
            report = verify_harper(sys_a, sys_b, 2)
            assert report.ok
            assert report.d_original == min_cross_distance(sys_a, sys_b)


def test_verify_harper_on_classification_systems():
    for seed in range(6):
        v = random_monotone(5, seed)
        systems = extract_set_systems(v)
        if systems.too_small and systems.too_large:
            assert verify_harper(systems.too_small, systems.too_large, 5).ok


# ---------------------------------------------------------------------------
# cascades and shadows


def test_cascade_examples():
    assert cascade_decompose(4, 3).terms == ((4, 3),)
    assert cascade_decompose(8, 3).terms == ((4, 3), (3, 2), (1, 1))
    assert str(cascade_decompose(8, 3)) == "C(4,3)+C(3,2)+C(1,1)"
    for k in range(1, 8):
        assert cascade_decompose(1, k).terms == ((k, k),)
    with pytest.raises(ValueError):
        cascade_decompose(0, 3)
    with pytest.raises(ValueError):
        cascade_decompose(3, 0)


def test_cascade_type_validation():
    with pytest.raises(ValueError):
        Cascade(())
    with pytest.raises(ValueError):
        Cascade(((3, 3), (4, 2)))
    with pytest.raises(ValueError):
        Cascade(((3, 3), (2, 1)))
    with pytest.raises(ValueError):
        Cascade(((2, 3),))


@given(st.integers(1, 10_000), st.integers(1, 8))
@settings(max_examples=150, deadline=None)
def test_cascade_roundtrip(n, k):
    cascade = cascade_decompose(n, k)
    assert cascade.value == n
    coeffs = [a for a, _ in cascade.terms]
    levels = [t for _, t in cascade.terms]
    assert coeffs == sorted(coeffs, reverse=True)
    assert levels == list(range(k, k - len(levels), -1))
    assert all(a >= t >= 1 for a, t in cascade.terms)


def test_cascade_uniqueness_small():
    for n in range(1, 13):
        for k in range(1, 13):
            decompositions = all_cascades(n, k)
            assert len(decompositions) == 1
            assert decompositions[0] == cascade_decompose(n, k).terms


def test_shadow_examples():
    assert shadow(0, 3) == 0
    assert shadow(0, 1) == 0
    assert shadow(4, 3) == 6
    assert shadow(10, 3) == 10
    with pytest.raises(ValueError):
        shadow(-1, 3)
    with pytest.raises(ValueError):
        shadow(3, 0)


def test_shadow_monotone():
    assert shadow_is_monotone(3, 1000)
    assert shadow_is_monotone(1, 100)
    with pytest.raises(ValueError):
        shadow_is_monotone(0, 10)


def test_shadow_identity_on_symmetric_binomials():
    for m in range(3, 16, 2):
        s = (m - 1) // 2
        assert shadow(binom(m - 1, s - 1), s + 1) == binom(m - 1, s)
        assert shadow(binom(m - 1, s + 1), s + 1) == binom(m - 1, s)


# ---------------------------------------------------------------------------
# Sperner families


def test_is_sperner_examples():
    assert is_sperner({bundle_of([0]), bundle_of([1])})
    assert not is_sperner({bundle_of([0]), bundle_of([0, 1])})
    level = {bundle_of(c) for c in combinations(range(5), 2)}
    assert is_sperner(level)
    assert is_sperner(set())


def test_sperner_families_respect_width_bound():
    m = 5
    for mask in range(0, 1 << 10, 7):
        family = {b for b in range(1 << m) if (mask * 2654435761) >> (b % 31) & 1}
        if is_sperner(family):
            assert len(family) <= math.comb(m, m // 2)


def test_bjorner_examples():
    assert bjorner_feasible([0, 3, 0])
    assert not bjorner_feasible([0, 1, 1])
    assert not bjorner_feasible([0, 4, 0])  # exceeds the level capacity C(3,2)
    with pytest.raises(ValueError):
        bjorner_feasible([0, 0, 0])
    with pytest.raises(ValueError):
        bjorner_feasible([])
    with pytest.raises(ValueError):
        bjorner_feasible([-1, 1])


@pytest.mark.parametrize("n", [2, 3])
def test_bjorner_matches_exhaustive_search(n):
    feasible = feasible_sperner_profiles(n)
    profiles = [[0] * n]
    for size in range(n):
        profiles = [p[:size] + [c] + p[size + 1:] for p in profiles
                    for c in range(math.comb(n, size + 1) + 1)]
    for profile in profiles:
        if not any(profile):
            continue
        assert bjorner_feasible(profile) == (tuple(profile) in feasible), profile

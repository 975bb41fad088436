"""Lubell functionals, chain participation, and profile decomposition."""

import random
from fractions import Fraction

import pytest

from qlattice.errors import UsageError
from qlattice.lattice import BOOLEAN, Family, build_lattice, down_closure
from qlattice.measures import (
    chain_participation,
    chain_participation_sum,
    lubell,
    profile_decompose,
    rho,
    weighted_lubell,
)


def test_lubell_basic_values():
    lat = build_lattice(2, 3)
    assert lubell(Family.whole(lat)) == 4  # one per level
    b4 = build_lattice(BOOLEAN, 4)
    assert lubell(Family.from_levels(b4, [2])) == 1
    b2 = build_lattice(BOOLEAN, 2)
    fam = Family.from_handles(b2, [b2.bottom(), b2.levels[1][0]])
    assert lubell(fam) == Fraction(3, 2)
    assert lubell(Family.empty(lat)) == 0


def test_lubell_range_and_additivity():
    lat = build_lattice(2, 3)
    rng = random.Random(7)
    for _ in range(200):
        mask = rng.getrandbits(lat.size)
        fam = Family(lat, mask)
        val = lubell(fam)
        assert 0 <= val <= lat.n + 1
        assert (val == lat.n + 1) == (mask == lat.full_mask)
        other = Family(lat, rng.getrandbits(lat.size) & ~mask)
        assert lubell(fam | other) == lubell(fam) + lubell(other)
        assert lubell(fam | other) >= lubell(fam)


def test_weighted_lubell():
    lat = build_lattice(2, 3)
    rng = random.Random(11)
    ones = [1] * (lat.n + 1)
    for _ in range(100):
        fam = Family(lat, rng.getrandbits(lat.size))
        assert weighted_lubell(fam, ones) == lubell(fam)
    level_indicator = [0, 1, 0, 0]
    fam = Family.from_levels(lat, [1, 2])
    assert weighted_lubell(fam, level_indicator) == 1
    with pytest.raises(UsageError):
        weighted_lubell(fam, [1, 2])


def test_rho():
    lat = build_lattice(2, 3)
    assert rho(Family.whole(lat)) == 1
    assert rho(Family.empty(lat)) == 0
    b4 = build_lattice(BOOLEAN, 4)
    assert rho(Family.from_levels(b4, [2])) == Fraction(1, 5)


def test_chain_participation():
    b2 = build_lattice(BOOLEAN, 2)
    diamond = Family.whole(b2)
    assert set(chain_participation(diamond).values()) == {3}
    lat = build_lattice(2, 3)
    antichain = Family.from_levels(lat, [1])
    assert set(chain_participation(antichain).values()) == {1}
    chain = Family.from_handles(lat, [lat.bottom(), lat.levels[1][0], lat.top()])
    # need a 3-chain: bottom < line < top
    assert set(chain_participation(chain).values()) == {3}
    # never exceeds the family's longest chain; k-Sperner implies <= k
    assert max(chain_participation(Family.whole(lat)).values()) == 4


def test_chain_participation_sum_antichain():
    lat = build_lattice(2, 3)
    assert chain_participation_sum(Family.from_levels(lat, [1])) == 1
    assert chain_participation_sum(Family.whole(lat)) == 1  # every c = 4


def test_profile_decompose():
    lat = build_lattice(2, 3)
    fam = Family.from_levels(lat, [0, 1])
    pv = profile_decompose(fam)
    assert pv.phi == (1, 1, 0, 0)
    assert pv.alpha_decomp == (0, 1, 0)
    single = Family.from_handles(lat, [lat.bottom()])
    pv = profile_decompose(single)
    assert pv.phi == (1, 0, 0, 0)
    assert pv.alpha_decomp == (1, 0, 0)
    with pytest.raises(UsageError):
        profile_decompose(Family.from_levels(lat, [1]))  # not down-closed
    with pytest.raises(UsageError):
        profile_decompose(Family.whole(lat))  # top element present


def test_profile_decompose_reconstruction_over_all_complexes():
    lat = build_lattice(2, 3)
    seen = set()
    rng = random.Random(3)
    for _ in range(500):
        fam = down_closure(Family(lat, rng.getrandbits(lat.size)))
        if fam.mask in seen or lat.top() in fam:
            continue
        seen.add(fam.mask)
        pv = profile_decompose(fam)
        n = lat.n
        for j in range(n):
            assert pv.alpha_decomp[j] >= 0
            assert pv.phi[j] == sum(pv.alpha_decomp[j:], Fraction(0))

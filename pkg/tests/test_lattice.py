"""Lattice enumeration, containment, shadows, complexes, and the cache format."""

import itertools

import pytest

from qlattice import algebra
from qlattice.errors import FormatError, ResourceError, UsageError
from qlattice.lattice import (
    BOOLEAN,
    Family,
    build_lattice,
    complement,
    deserialize_lattice,
    down_closure,
    is_complex,
    is_upset,
    load_lattice,
    save_lattice,
    serialize_lattice,
    shadow,
    upset_of,
)

import brute


def test_level_sizes_match_gauss_binom():
    for q in (2, 3, 4):
        for n in range(5):
            lat = build_lattice(q, n)
            for i in range(n + 1):
                assert lat.level_sizes[i] == algebra.gauss_binom(n, i, q)
    for n in range(1, 13):
        lat = build_lattice(BOOLEAN, n)
        assert lat.size == 2 ** n
        for i in range(n + 1):
            assert lat.level_sizes[i] == len(list(itertools.combinations(range(n), i)))


def test_totals_and_examples():
    assert build_lattice(2, 3).size == 16
    assert build_lattice(2, 3).level_sizes == (1, 7, 7, 1)
    assert build_lattice(BOOLEAN, 3).level_sizes == (1, 3, 3, 1)
    assert build_lattice(3, 2).level_sizes == (1, 4, 1)
    assert build_lattice(2, 4).size == 67


def test_linear_lattice_matches_independent_span_enumeration():
    # subspaces as vector sets from a self-contained mod-p construction
    for p, n in ((2, 3), (3, 2)):
        expect = brute.all_subspaces_mod_p(p, n)
        lat = build_lattice(p, n)
        got = set()
        for h in range(lat.size):
            vecs = frozenset(
                tuple((v // p ** (n - 1 - j)) % p for j in range(n))
                for v in lat._vecsets[h]
            )
            got.add(vecs)
        assert got == expect


def test_canonicity_and_determinism():
    lat1 = build_lattice(2, 3)
    lat2 = build_lattice(2, 3)
    assert lat1 == lat2
    keys = [e.sort_key() for e in lat1.elements]
    assert keys == sorted(keys)
    assert len(set(keys)) == lat1.size


def test_containment_consistency():
    # U <= V iff meet_dim(U, V) == dim(U), exhaustively
    for lat in (build_lattice(2, 3), build_lattice(3, 2)):
        for a in range(lat.size):
            for b in range(lat.size):
                assert lat.leq(a, b) == (lat.meet_dim(a, b) == lat.dims[a])


def test_containment_is_a_partial_order():
    lat = build_lattice(2, 3)
    rng = range(lat.size)
    for a in rng:
        assert lat.leq(a, a)
    for a, b in itertools.permutations(rng, 2):
        if lat.leq(a, b) and lat.leq(b, a):
            raise AssertionError("antisymmetry violated")
    for a, b, c in itertools.product(rng, repeat=3):
        if lat.leq(a, b) and lat.leq(b, c):
            assert lat.leq(a, c)


def test_meet_join_examples():
    lat = build_lattice(2, 2)
    lines = lat.levels[1]
    a, b = lines[0], lines[1]
    assert lat.meet_dim(a, b) == 0
    assert lat.join(a, b) == lat.top()
    assert lat.meet_dim(a, a) == 1
    assert lat.join(a, a) == a

    lat3 = build_lattice(2, 3)
    e1 = lat3.handle_of(((1, 0, 0),))
    e12 = lat3.handle_of(((1, 1, 0),))
    assert lat3.meet_dim(e1, e12) == 0
    assert lat3.dims[lat3.join(e1, e12)] == 2


def test_shadow():
    lat = build_lattice(2, 3)
    full_level2 = Family.from_levels(lat, [2])
    assert shadow(full_level2) == Family.from_levels(lat, [1])
    one_line = Family.from_handles(lat, [lat.levels[1][0]])
    assert shadow(one_line).handles() == [lat.bottom()]
    one_plane = Family.from_handles(lat, [lat.levels[2][0]])
    assert len(shadow(one_plane)) == 3  # a plane over GF(2) holds q+1 = 3 lines
    with pytest.raises(UsageError):
        shadow(Family.from_handles(lat, [lat.levels[1][0], lat.levels[2][0]]))
    with pytest.raises(UsageError):
        shadow(Family.empty(lat))


def test_complex_upset_complement():
    lat = build_lattice(2, 3)
    whole = Family.whole(lat)
    assert is_complex(whole) and is_upset(whole)
    tiny = Family.from_handles(lat, [lat.bottom(), lat.levels[1][0]])
    assert is_complex(tiny)
    assert not is_upset(tiny)
    up = upset_of(tiny)
    assert is_upset(up)
    # complement of an up-set is a complex, for every up-set of L_3(2);
    # up-sets are generated as unions of principal up-sets
    ups = set()
    for h in range(lat.size):
        ups.add(upset_of(Family.from_handles(lat, [h])).mask)
    seen = set(ups)
    frontier = list(ups)
    while frontier:
        m = frontier.pop()
        for u in ups:
            c = m | u
            if c not in seen:
                seen.add(c)
                frontier.append(c)
    seen.add(0)
    for mask in seen:
        fam = Family(lat, mask)
        assert is_upset(fam)
        assert is_complex(complement(fam))


def test_down_closure_counts():
    lat = build_lattice(BOOLEAN, 2)
    assert brute.naive_downset_count(lat.leq, lat.size) == 6
    closures = {down_closure(Family(lat, m)).mask for m in range(1 << lat.size)}
    assert len(closures) == 6


def test_profile_and_family_ops():
    lat = build_lattice(2, 3)
    fam = Family.from_levels(lat, [0, 1])
    assert fam.profile() == (1, 7, 0, 0)
    assert len(fam) == 8
    other = Family.from_levels(lat, [1, 2])
    assert (fam | other).profile() == (1, 7, 7, 0)
    assert (fam & other).profile() == (0, 7, 0, 0)
    assert (fam - other).profile() == (1, 0, 0, 0)
    with pytest.raises(UsageError):
        Family.from_handles(lat, [99])
    with pytest.raises(UsageError):
        fam._check(Family.empty(build_lattice(3, 2)))


def test_save_load_roundtrip(tmp_path):
    for q, n in ((2, 4), (3, 2), (BOOLEAN, 3)):
        lat = build_lattice(q, n)
        path = tmp_path / f"lat_{q}_{n}.qlat"
        save_lattice(lat, path)
        back = load_lattice(path)
        assert back == lat
        assert [back.elements[h] for h in range(back.size)] == \
               [lat.elements[h] for h in range(lat.size)]
        # containment relation identical after reload
        for a in range(min(lat.size, 16)):
            for b in range(min(lat.size, 16)):
                assert back.leq(a, b) == lat.leq(a, b)
    assert build_lattice(2, 4).size == 67


def test_load_rejects_corruption(tmp_path):
    lat = build_lattice(2, 2)
    data = serialize_lattice(lat)
    with pytest.raises(FormatError):
        deserialize_lattice(data[:-20])  # truncated digest
    with pytest.raises(FormatError):
        deserialize_lattice(data.replace(b"QLAT 1", b"QLAT 9"))
    lines = data.split(b"\n")
    lines[2], lines[3] = lines[3], lines[2]  # break canonical order, fix digest
    body = b"\n".join(lines[:-2]) + b"\n"
    import hashlib
    evil = body + b"SHA256:" + hashlib.sha256(body).hexdigest().encode() + b"\n"
    with pytest.raises(FormatError):
        deserialize_lattice(evil)


def test_build_caps():
    with pytest.raises(ResourceError):
        build_lattice(2, 10, level_cap=50)
    with pytest.raises(ResourceError):
        build_lattice(BOOLEAN, 25)


def test_complex_profile_monotone_boolean_b4():
    # normalized profile of a down-closed family never increases with the level
    from fractions import Fraction
    lat = build_lattice(BOOLEAN, 4)
    seen = set()
    for mask in range(1 << lat.size):
        if mask in seen:
            continue
        fam = Family(lat, mask)
        closed = down_closure(fam)
        if closed.mask in seen:
            continue
        seen.add(closed.mask)
        prof = closed.profile()
        phis = [Fraction(prof[i], lat.level_sizes[i]) for i in range(lat.n + 1)]
        for i in range(lat.n):
            assert phis[i] >= phis[i + 1]

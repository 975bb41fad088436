"""Detectors: generic embedder vs brute force, disjointness, algebras."""

import itertools

import pytest

from qlattice.errors import DomainError, ResourceError, UsageError
from qlattice.lattice import BOOLEAN, Family, build_lattice
from qlattice.patterns import (
    Forbidden,
    PosetPattern,
    are_cross_dependent,
    contains_config,
    contains_strong,
    contains_weak,
    find_disjoint_transversal,
    has_boolean_algebra,
    has_chain,
    has_diamond,
    has_q_algebra,
    has_s_disjoint,
    realization_masks,
)

import brute


def _v_pattern():
    return PosetPattern.from_relations(3, [(0, 1), (0, 2)], ["x", "y", "z"])


def _n_pattern():
    return PosetPattern.from_relations(4, [(0, 2), (1, 2), (1, 3)])


TEST_PATTERNS = [
    PosetPattern.chain(2),
    PosetPattern.chain(3),
    PosetPattern.antichain(2),
    PosetPattern.antichain(3),
    _v_pattern(),
    PosetPattern.diamond(),
    _n_pattern(),
]


def test_pattern_validation():
    with pytest.raises(UsageError):
        PosetPattern(((False, True), (True, False)), ("a", "b"))
    p = PosetPattern.chain(3)
    assert p.less[0][2]  # transitive closure taken


def test_embedder_matches_bruteforce_on_b3():
    lat = build_lattice(BOOLEAN, 3)
    for mask in range(1 << lat.size):
        members = [h for h in range(lat.size) if (mask >> h) & 1]
        fam = Family(lat, mask)
        for pat in TEST_PATTERNS:
            if len(members) < pat.size:
                continue
            want_weak = brute.naive_weak_embedding_exists(lat.leq, members, pat.less)
            got_weak = contains_weak(fam, pat) is not None
            assert got_weak == want_weak, (mask, pat.names)
            want_strong = brute.naive_strong_embedding_exists(lat.leq, members, pat.less)
            got_strong = contains_strong(fam, pat) is not None
            assert got_strong == want_strong, (mask, pat.names)
            # strong containment implies weak containment
            if got_strong:
                assert got_weak


def test_embedder_small_cases():
    lat = build_lattice(BOOLEAN, 3)
    chain3 = Family.from_handles(lat, [lat.bottom(), lat.levels[1][0], lat.top()])
    assert contains_weak(chain3, PosetPattern.chain(2)) is not None
    anti = Family.from_levels(lat, [1])
    assert contains_weak(anti, PosetPattern.chain(2)) is None
    chain2 = Family.from_handles(lat, [lat.bottom(), lat.top()])
    assert contains_strong(chain2, PosetPattern.antichain(2)) is None
    assert contains_strong(anti, PosetPattern.antichain(2)) is not None
    with pytest.raises(ResourceError):
        contains_weak(anti, PosetPattern.antichain(9))


def test_diamond_in_l22_plus_ends():
    lat = build_lattice(2, 2)
    fam = Family.whole(lat)
    w = contains_weak(fam, PosetPattern.diamond())
    assert w is not None
    roles = w.role_map()
    assert roles["x"] == lat.bottom() and roles["w"] == lat.top()
    assert has_diamond(fam) is not None
    # B_2 is itself a diamond, strongly
    b2 = build_lattice(BOOLEAN, 2)
    assert contains_strong(Family.whole(b2), PosetPattern.diamond()) is not None


def test_has_chain_agrees_with_embedder():
    lat = build_lattice(2, 2)
    for mask in range(1 << lat.size):
        fam = Family(lat, mask)
        for k in (2, 3):
            assert (has_chain(fam, k) is not None) == \
                   (contains_weak(fam, PosetPattern.chain(k)) is not None)


def test_has_diamond_agrees_with_embedder():
    lat = build_lattice(2, 2)
    pat = PosetPattern.diamond()
    for mask in range(1 << lat.size):
        fam = Family(lat, mask)
        assert (has_diamond(fam) is not None) == (contains_weak(fam, pat) is not None)


def test_s_disjoint_examples():
    lat = build_lattice(2, 3)
    e1 = lat.handle_of(((1, 0, 0),))
    e2 = lat.handle_of(((0, 1, 0),))
    e3 = lat.handle_of(((0, 0, 1),))
    fam = Family.from_handles(lat, [e1, e2, e3])
    w = has_s_disjoint(fam, 3)
    assert w is not None and set(w.handles) == {e1, e2, e3}
    # a plane plus two lines outside it: pairwise disjoint triple exists
    plane = lat.handle_of(((1, 0, 0), (0, 1, 0)))
    lines_out = [h for h in lat.levels[1] if not lat.leq(h, plane)]
    fam2 = Family.from_handles(lat, [plane, lines_out[0], lines_out[1]])
    assert has_s_disjoint(fam2, 3) is not None
    with pytest.raises(DomainError):
        has_s_disjoint(fam, 1)


def test_s_disjoint_matches_naive_triple_scan_on_l32():
    lat = build_lattice(2, 3)
    import random
    rng = random.Random(5)
    for _ in range(300):
        mask = rng.getrandbits(lat.size)
        fam = Family(lat, mask)
        members = fam.handles()
        naive = any(
            lat.meet_dim(a, b) == 0 and lat.meet_dim(a, c) == 0 and lat.meet_dim(b, c) == 0
            for a, b, c in itertools.combinations(members, 3)
        )
        assert (has_s_disjoint(fam, 3) is not None) == naive


def test_s_disjoint_monotone_under_supersets():
    lat = build_lattice(2, 3)
    import random
    rng = random.Random(9)
    for _ in range(100):
        mask = rng.getrandbits(lat.size)
        fam = Family(lat, mask)
        if has_s_disjoint(fam, 3) is not None:
            sup = Family(lat, mask | rng.getrandbits(lat.size))
            assert has_s_disjoint(sup, 3) is not None


def test_dim_ge_2_family_of_f2_5_contains_disjoint_triple():
    # Pairwise disjointness of subspaces does NOT bound the dimension sum:
    # three 2-dim subspaces of a 5-dim space can be pairwise disjoint.
    lat = build_lattice(2, 5)
    fam = Family.from_levels(lat, [2, 3, 4, 5])
    w = has_s_disjoint(fam, 3)
    assert w is not None
    a, b, c = w.handles
    assert lat.meet_dim(a, b) == 0
    assert lat.meet_dim(a, c) == 0
    assert lat.meet_dim(b, c) == 0
    assert all(lat.dims[h] >= 2 for h in w.handles)


def test_cross_dependent_examples():
    lat = build_lattice(2, 3)
    top = Family.from_handles(lat, [lat.top()])
    ok, witness = are_cross_dependent([top, top, top])
    assert ok and witness is None
    e1 = lat.handle_of(((1, 0, 0),))
    e2 = lat.handle_of(((0, 1, 0),))
    e3 = lat.handle_of(((0, 0, 1),))
    lines = Family.from_handles(lat, [e1, e2, e3])
    ok, witness = are_cross_dependent([lines, lines, lines])
    assert not ok and witness is not None
    # the zero subspace is disjoint from itself, so it makes a repeated joker
    bottom = Family.from_handles(lat, [lat.bottom()])
    ok, witness = are_cross_dependent([bottom, bottom, bottom])
    assert not ok
    assert witness == (lat.bottom(),) * 3


def test_cross_dependent_sharpness_families_have_a_transversal():
    # The "dim > 1" / "dim >= 1" / "dim >= 1" triple on L_3(2) admits a
    # pairwise-disjoint transversal (plane + two lines outside it), because
    # pairwise disjointness does not force a direct sum.
    lat = build_lattice(2, 3)
    v1 = Family.from_levels(lat, [2, 3])
    v23 = Family.from_levels(lat, [1, 2, 3])
    ok, witness = are_cross_dependent([v1, v23, v23])
    assert not ok
    a, b, c = witness
    assert lat.meet_dim(a, b) == lat.meet_dim(a, c) == lat.meet_dim(b, c) == 0


def test_cross_dependent_vs_s_disjoint_on_bottom_free_families():
    # with the bottom element excluded a transversal cannot repeat members,
    # so cross-dependence of s copies is exactly the absence of s disjoint members
    lat = build_lattice(2, 3)
    import random
    rng = random.Random(13)
    checked = 0
    for mask in range(1, 1 << lat.size):
        fam = Family(lat, mask)
        if len(fam) > 6 or lat.bottom() in fam:
            continue
        if checked > 400:
            break
        checked += 1
        ok, _ = are_cross_dependent([fam, fam, fam])
        assert ok == (has_s_disjoint(fam, 3) is None)


def test_boolean_algebra_detector():
    b2 = build_lattice(BOOLEAN, 2)
    w = has_boolean_algebra(Family.whole(b2), 2)
    assert w is not None
    assert w.role_map()["base"] == b2.bottom()
    anti = Family.from_levels(b2, [1])
    assert has_boolean_algebra(anti, 1) is None
    b4 = build_lattice(BOOLEAN, 4)
    two_mid = Family.from_levels(b4, [2, 3])
    assert has_boolean_algebra(two_mid, 2) is None
    with pytest.raises(UsageError):
        has_boolean_algebra(Family.whole(build_lattice(2, 2)), 2)
    with pytest.raises(ResourceError):
        has_boolean_algebra(Family.whole(b2), 5)


def test_boolean_algebra_dim1_is_comparable_pair():
    lat = build_lattice(BOOLEAN, 3)
    p2 = PosetPattern.chain(2)
    for mask in range(1 << lat.size):
        fam = Family(lat, mask)
        assert (has_boolean_algebra(fam, 1) is not None) == \
               (contains_weak(fam, p2) is not None)


def test_q_algebra_detector():
    lat = build_lattice(2, 2)
    w = has_q_algebra(Family.whole(lat), 2)
    assert w is not None
    assert w.role_map()["base"] == lat.bottom()
    assert len(w.handles) == 4
    level = Family.from_levels(lat, [1])
    assert has_q_algebra(level, 1) is None
    chain = Family.from_handles(lat, [lat.bottom(), lat.levels[1][0], lat.top()])
    assert has_q_algebra(chain, 2) is None
    with pytest.raises(UsageError):
        has_q_algebra(Family.whole(build_lattice(BOOLEAN, 2)), 1)


def test_forbidden_parse_and_dispatch():
    lat = build_lattice(2, 2)
    fam = Family.whole(lat)
    assert contains_config(fam, Forbidden.parse("P2")) is not None
    assert contains_config(fam, Forbidden.parse("Q2")) is not None
    assert contains_config(fam, Forbidden.parse("disjoint:2")) is not None
    assert contains_config(fam, Forbidden.parse("qalgebra:2")) is not None
    assert Forbidden.parse("algebra:2").kind == "boolean_algebra"
    with pytest.raises(UsageError):
        Forbidden.parse("nonsense")


def test_realizations_match_detectors():
    # family contains the configuration iff it covers one realization mask
    for lat in (build_lattice(BOOLEAN, 3), build_lattice(2, 2)):
        specs = [Forbidden.parse("P2"), Forbidden.parse("P3"),
                 Forbidden.parse("Q2"), Forbidden.parse("disjoint:3")]
        if lat.is_boolean:
            specs.append(Forbidden.parse("algebra:2"))
        else:
            specs.append(Forbidden.parse("qalgebra:2"))
        for fb in specs:
            masks = realization_masks(lat, fb)
            for mask in range(1 << lat.size):
                fam = Family(lat, mask)
                covered = any(mask & r == r for r in masks)
                assert covered == (contains_config(fam, fb) is not None), (fb.label(), mask)


def test_q_algebra_realizations_on_l32_are_basis_triples():
    # in a 3-dim space a 3-dim q-algebra is exactly the closure of a basis
    lat = build_lattice(2, 3)
    masks = realization_masks(lat, Forbidden.parse("qalgebra:3"))
    assert len(masks) == 28  # one per unordered basis
    for m in masks:
        assert bin(m).count("1") == 8


def test_detector_determinism():
    lat = build_lattice(2, 3)
    fam = Family.whole(lat)
    w1 = has_diamond(fam)
    w2 = has_diamond(fam)
    assert w1 == w2
    assert has_s_disjoint(fam, 3) == has_s_disjoint(fam, 3)

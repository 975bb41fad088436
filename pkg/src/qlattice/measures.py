"""Lubell-type functionals in exact rationals: weights, norms, profiles,
and chain-participation counts.

Values are `fractions.Fraction`; a family's Lubell value always lies in
[0, n+1], with n+1 attained exactly by the whole lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError
from .lattice import Family, is_complex


def lubell(family: Family) -> Fraction:
    """Sum over levels of |members at level i| / (size of level i)."""
    lat = family.lattice
    prof = family.profile()
    return sum((Fraction(prof[i], lat.level_sizes[i]) for i in range(lat.n + 1)),
               Fraction(0))


def weighted_lubell(family: Family, beta) -> Fraction:
    """Level-weighted Lubell value: sum of beta_i * |F_i| / levelsize(i)."""
    lat = family.lattice
    if len(beta) != lat.n + 1:
        raise UsageError(f"weight vector must have length {lat.n + 1}, got {len(beta)}")
    prof = family.profile()
    return sum((Fraction(b) * Fraction(prof[i], lat.level_sizes[i])
                for i, b in enumerate(beta)), Fraction(0))


def rho(family: Family) -> Fraction:
    """Lubell value normalized to [0, 1] by the number of levels."""
    return lubell(family) / (family.lattice.n + 1)


def chain_participation(family: Family) -> dict[int, int]:
    """Longest chain of family members through each member.

    Computed as (longest chain ending at F) + (longest chain starting at F) - 1
    by two longest-path sweeps over the comparability order; handles arrive in
    (dim, digits) order, which is topological for containment.
    """
    lat = family.lattice
    hs = family.handles()
    down: dict[int, int] = {}
    for idx, h in enumerate(hs):
        best = 0
        for g in hs[:idx]:
            if g != h and lat.leq(g, h):
                best = max(best, down[g])
        down[h] = best + 1
    up: dict[int, int] = {}
    for idx in range(len(hs) - 1, -1, -1):
        h = hs[idx]
        best = 0
        for g in hs[idx + 1:]:
            if g != h and lat.leq(h, g):
                best = max(best, up[g])
        up[h] = best + 1
    return {h: down[h] + up[h] - 1 for h in hs}


def chain_participation_sum(family: Family) -> Fraction:
    """The chain-weighted Lubell sum: sum of 1 / (c(F) * levelsize(dim F))."""
    lat = family.lattice
    c = chain_participation(family)
    return sum((Fraction(1, c[h] * lat.level_sizes[lat.dims[h]]) for h in c),
               Fraction(0))


@dataclass
class ProfileVector:
    """Normalized level profile of a family, with the difference decomposition
    available for complexes (phi(j) = sum of diffs from j up)."""

    phi: tuple[Fraction, ...]
    alpha_decomp: tuple[Fraction, ...] | None = None


def profile(family: Family) -> ProfileVector:
    lat = family.lattice
    prof = family.profile()
    return ProfileVector(tuple(Fraction(prof[i], lat.level_sizes[i])
                               for i in range(lat.n + 1)))


def profile_decompose(family: Family) -> ProfileVector:
    """Profile of a complex together with its consecutive-difference decomposition.

    Requires a down-closed family that excludes the top element (so the last
    profile entry is zero); the differences are then nonnegative and rebuild
    the profile exactly as suffix sums.
    """
    lat = family.lattice
    if not is_complex(family):
        raise UsageError("profile_decompose needs a down-closed family")
    if lat.top() in family:
        raise UsageError("profile_decompose needs the top element excluded")
    pv = profile(family)
    n = lat.n
    diffs = tuple(pv.phi[j] - pv.phi[j + 1] for j in range(n))
    for j, d in enumerate(diffs):
        if d < 0:
            raise AssertionError(f"profile not monotone at level {j}")
    for j in range(n):
        assert pv.phi[j] == sum(diffs[j:], Fraction(0))
    return ProfileVector(pv.phi, diffs)

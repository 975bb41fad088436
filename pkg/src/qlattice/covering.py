"""Basis-spanned Boolean sublattices of a linear lattice, the exact covering
they form, and the weight-transfer identity.

Every unordered basis B of GF(q)^n spans a copy of the Boolean lattice inside
the subspace lattice: subset of B -> span.  Enumerating all bases gives a
collection of alpha(q, n) sublattices in which each i-dimensional subspace
occurs in exactly covering_multiplicity(q, n, i) of them.  The same counts
make the weighted level sums collapse: for any family V and weights
w_i = beta_i * t_i / C(n, i), the total weight of V equals its (beta-weighted)
Lubell value times the number of bases, as exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import algebra
from .errors import ResourceError, UsageError
from .lattice import BOOLEAN, Family, SubspaceLattice, build_lattice
from .measures import weighted_lubell
from .runtime import parallel_map, split_chunks

BASIS_CAP = 1_000_000


def enumerate_bases(q: int, n: int, cap: int = BASIS_CAP) -> list[tuple[tuple[int, ...], ...]]:
    """All unordered bases of GF(q)^n, canonicalized and in deterministic order.

    A basis is the tuple of its vectors sorted by digit-lexicographic order;
    the list is ordered the same way.  Exactly alpha(q, n) bases come back.
    """
    expect = algebra.alpha(q, n)
    if expect > cap:
        raise ResourceError(f"alpha({q},{n}) = {expect} bases, over the cap {cap}")
    fs = algebra.field(q)
    vectors = []
    for idx in range(1, q ** n):
        digs = []
        m = idx
        for _ in range(n):
            digs.append(m % q)
            m //= q
        vectors.append(tuple(reversed(digs)))
    vectors.sort()
    out: list[tuple[tuple[int, ...], ...]] = []
    chosen: list[tuple[int, ...]] = []

    def extend(start: int):
        if len(chosen) == n:
            out.append(tuple(chosen))
            return
        for i in range(start, len(vectors)):
            v = vectors[i]
            if algebra.rank(fs, chosen + [v]) == len(chosen) + 1:
                chosen.append(v)
                extend(i + 1)
                chosen.pop()

    extend(0)
    assert len(out) == expect
    return out


@dataclass
class BasisSublattice:
    """One basis and its order-embedding of the Boolean lattice: subset mask -> handle."""

    lattice: SubspaceLattice
    basis: tuple[tuple[int, ...], ...]
    mapping: tuple[int, ...]

    def subset_handle(self, subset_mask: int) -> int:
        return self.mapping[subset_mask]

    def image_family(self) -> Family:
        return Family.from_handles(self.lattice, self.mapping)


def basis_sublattice(lat: SubspaceLattice, basis) -> BasisSublattice:
    """Span every subset of the basis and resolve it to a lattice handle."""
    if lat.is_boolean:
        raise UsageError("basis sublattices live inside a linear lattice")
    fs = lat._field
    n = lat.n
    mapping = []
    for mask in range(1 << n):
        rows = [basis[j] for j in range(n) if (mask >> j) & 1]
        mapping.append(lat.handle_of(algebra.rref(fs, rows)))
    return BasisSublattice(lat, tuple(basis), tuple(mapping))


def iter_sublattices(lat: SubspaceLattice, cap: int = BASIS_CAP):
    for basis in enumerate_bases(lat.q, lat.n, cap=cap):
        yield basis_sublattice(lat, basis)


def verify_covering(lat: SubspaceLattice, cap: int = BASIS_CAP, workers: int = 1) -> dict:
    """Count, for every subspace, the basis sublattices containing it, and
    compare against the closed-form multiplicities.  Streams sublattices;
    never stores the whole collection."""
    if lat.is_boolean:
        raise UsageError("covering verification runs on a linear lattice")
    q, n = lat.q, lat.n
    bases = enumerate_bases(q, n, cap=cap)

    def count_chunk(chunk) -> list[int]:
        counts = [0] * lat.size
        for basis in chunk:
            sub = basis_sublattice(lat, basis)
            for h in sub.mapping:
                counts[h] += 1
        return counts

    chunks = split_chunks(bases, max(workers * 4, 1))
    totals = [0] * lat.size
    for part in parallel_map(count_chunk, chunks, workers):
        for h, c in enumerate(part):
            totals[h] += c

    expected_gamma = algebra.alpha(q, n)
    per_level = []
    violations = []
    for i in range(n + 1):
        t_i = algebra.covering_multiplicity(q, n, i)
        observed = [totals[h] for h in lat.levels[i]]
        per_level.append({
            "dim": i,
            "expected_t": t_i,
            "min_observed": min(observed),
            "max_observed": max(observed),
        })
        for h in lat.levels[i]:
            if totals[h] != t_i:
                violations.append({"handle": h, "dim": i,
                                   "observed": totals[h], "expected": t_i})
    identity_checks = [
        {"name": "gamma_size_equals_alpha", "ok": len(bases) == expected_gamma},
        {"name": "t0_equals_alpha",
         "ok": algebra.covering_multiplicity(q, n, 0) == expected_gamma},
        {"name": "tn_equals_alpha",
         "ok": algebra.covering_multiplicity(q, n, n) == expected_gamma},
        {"name": "incidence_sum",
         "ok": sum(algebra.covering_multiplicity(q, n, i) * algebra.gauss_binom(n, i, q)
                   for i in range(n + 1)) == expected_gamma * 2 ** n},
    ]
    ok = (not violations) and all(c["ok"] for c in identity_checks)
    return {
        "q": q, "n": n,
        "gamma_size": len(bases),
        "expected_gamma": expected_gamma,
        "per_level": per_level,
        "identity_checks": identity_checks,
        "violations": violations,
        "ok": ok,
    }


def transfer_weights(q: int, n: int, beta=None) -> list[Fraction]:
    """The level weights t_i * beta_i / C(n, i) used by the transfer identity."""
    if beta is None:
        beta = [1] * (n + 1)
    if len(beta) != n + 1:
        raise UsageError(f"weight vector must have length {n + 1}")
    return [Fraction(beta[i]) * Fraction(algebra.covering_multiplicity(q, n, i),
                                         math.comb(n, i))
            for i in range(n + 1)]


def verify_transfer_identity(family: Family, beta=None) -> dict:
    """Check, in exact rationals, that the covering-weighted total of a family
    equals its (weighted) Lubell value times the number of bases.

    Both sides are computed independently: the left from the multiplicity
    formula and binomial weights, the right from Gaussian level sizes.
    """
    lat = family.lattice
    if lat.is_boolean:
        raise UsageError("the transfer identity runs on a linear lattice")
    q, n = lat.q, lat.n
    if beta is None:
        beta = [1] * (n + 1)
    weights = transfer_weights(q, n, beta)
    prof = family.profile()
    lhs = sum((weights[i] * prof[i] for i in range(n + 1)), Fraction(0))
    rhs = weighted_lubell(family, beta) * algebra.alpha(q, n)
    return {
        "q": q, "n": n,
        "family_size": len(family),
        "profile": list(prof),
        "beta": [str(Fraction(b)) for b in beta],
        "lhs": str(lhs),
        "rhs": str(rhs),
        "equal": lhs == rhs,
    }


def sublattice_restriction(family: Family, sub: BasisSublattice,
                           boolean_lattice: SubspaceLattice | None = None) -> Family:
    """Pull the family's trace on a basis sublattice back to the Boolean lattice.

    Subset H of the basis lands in the restriction iff span(H) is a family
    member; hereditary properties (forbidden configurations) survive the pull
    back because the mapping preserves inclusion in both directions.
    """
    lat = family.lattice
    if sub.lattice is not lat and sub.lattice != lat:
        raise UsageError("family and sublattice belong to different lattices")
    n = lat.n
    target = boolean_lattice if boolean_lattice is not None else build_lattice(BOOLEAN, n)
    if target.q != BOOLEAN or target.n != n:
        raise UsageError(f"target must be the boolean lattice on {n} points")
    handles = []
    for mask in range(1 << n):
        if sub.mapping[mask] in family:
            handles.append(target.handle_of(mask))
    return Family.from_handles(target, handles)

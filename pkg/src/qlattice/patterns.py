"""Forbidden-configuration machinery: poset patterns, detectors, and
realization enumeration.

Detectors answer "does this family contain the configuration?" with a
deterministic witness (first in canonical handle order) or None.  The
generic embedder `contains_weak` / `contains_strong` is the reference
implementation; chains and diamonds get specialized scans because the
extremal search calls them in its inner loop.

`realization_masks` enumerates every subset of the *lattice* that realizes a
configuration, as handle bitmasks.  A family contains the configuration iff
its mask covers one of them, which is what the vectorized exhaustive scans
use.  All configurations here are monotone: adding elements to a family can
only create occurrences, never destroy them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import DomainError, ResourceError, UsageError
from .lattice import Family

PATTERN_CAP = 8
BOOL_ALGEBRA_CAP = 4
Q_ALGEBRA_CAP = 3


# ---------------------------------------------------------------------------
# poset patterns

@dataclass(frozen=True)
class PosetPattern:
    """A strict partial order on m named vertices, as a transitively closed matrix."""

    less: tuple[tuple[bool, ...], ...]
    names: tuple[str, ...]

    def __post_init__(self):
        m = len(self.less)
        if len(self.names) != m or any(len(r) != m for r in self.less):
            raise UsageError("pattern matrix/name size mismatch")
        for i in range(m):
            if self.less[i][i]:
                raise UsageError("pattern order must be irreflexive")
            for j in range(m):
                if self.less[i][j] and self.less[j][i]:
                    raise UsageError("pattern order must be antisymmetric")
                for k in range(m):
                    if self.less[i][j] and self.less[j][k] and not self.less[i][k]:
                        raise UsageError("pattern order must be transitively closed")

    @property
    def size(self) -> int:
        return len(self.less)

    @classmethod
    def from_relations(cls, m: int, pairs, names=None) -> "PosetPattern":
        """Build from covering pairs (u < v); the transitive closure is taken."""
        less = [[False] * m for _ in range(m)]
        for u, v in pairs:
            less[u][v] = True
        for k in range(m):
            for i in range(m):
                if less[i][k]:
                    for j in range(m):
                        if less[k][j]:
                            less[i][j] = True
        names = tuple(names) if names else tuple(f"v{i}" for i in range(m))
        return cls(tuple(tuple(r) for r in less), names)

    @classmethod
    def chain(cls, k: int) -> "PosetPattern":
        return cls.from_relations(k, [(i, i + 1) for i in range(k - 1)],
                                  [f"c{i + 1}" for i in range(k)])

    @classmethod
    def antichain(cls, m: int) -> "PosetPattern":
        return cls.from_relations(m, [], [f"a{i + 1}" for i in range(m)])

    @classmethod
    def diamond(cls) -> "PosetPattern":
        return cls.from_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)],
                                  ["x", "y", "z", "w"])


@dataclass(frozen=True)
class Witness:
    """A concrete occurrence: which handles play which pattern roles."""

    kind: str
    handles: tuple[int, ...]
    roles: tuple[tuple[str, int], ...]

    def role_map(self) -> dict[str, int]:
        return dict(self.roles)

    def to_json(self, lattice=None) -> dict:
        out = {"kind": self.kind, "handles": list(self.handles),
               "roles": {name: h for name, h in self.roles}}
        if lattice is not None:
            out["elements"] = {
                str(h): ["".join(str(d) for d in row) for row in lattice.elements[h].rows]
                for h in self.handles
            }
        return out


# ---------------------------------------------------------------------------
# generic embedder

def _strict_less(lat, a: int, b: int) -> bool:
    return a != b and lat.leq(a, b)


def _embed(family: Family, pattern: PosetPattern, strong: bool) -> Witness | None:
    if pattern.size > PATTERN_CAP:
        raise ResourceError(f"pattern size {pattern.size} over cap {PATTERN_CAP}")
    lat = family.lattice
    members = family.handles()
    if len(members) < pattern.size:
        return None
    m = pattern.size
    assigned: list[int] = []

    def ok(v: int, h: int) -> bool:
        for u in range(v):
            g = assigned[u]
            if g == h:
                return False
            if pattern.less[u][v] and not _strict_less(lat, g, h):
                return False
            if pattern.less[v][u] and not _strict_less(lat, h, g):
                return False
            if strong and not pattern.less[u][v] and not pattern.less[v][u]:
                if _strict_less(lat, g, h) or _strict_less(lat, h, g):
                    return False
        return True

    def backtrack(v: int) -> bool:
        if v == m:
            return True
        for h in members:
            if ok(v, h):
                assigned.append(h)
                if backtrack(v + 1):
                    return True
                assigned.pop()
        return False

    if backtrack(0):
        return Witness("strong:" + _pattern_label(pattern) if strong else _pattern_label(pattern),
                       tuple(sorted(assigned)),
                       tuple(zip(pattern.names, assigned)))
    return None


def _pattern_label(pattern: PosetPattern) -> str:
    return f"pattern[{pattern.size}]"


def contains_weak(family: Family, pattern: PosetPattern) -> Witness | None:
    """Injective order-preserving image (one-way: pattern relations must hold)."""
    return _embed(family, pattern, strong=False)


def contains_strong(family: Family, pattern: PosetPattern) -> Witness | None:
    """Induced copy: image comparabilities must match the pattern exactly."""
    return _embed(family, pattern, strong=True)


# ---------------------------------------------------------------------------
# specialized detectors

def has_chain(family: Family, k: int) -> Witness | None:
    """A k-element chain of family members, by longest-path DP."""
    if k < 1:
        raise DomainError(f"chain length must be >= 1, got {k}")
    lat = family.lattice
    hs = family.handles()
    down: dict[int, int] = {}
    pred: dict[int, int | None] = {}
    for idx, h in enumerate(hs):
        best, arg = 0, None
        for g in hs[:idx]:
            if lat.leq(g, h) and g != h and down[g] > best:
                best, arg = down[g], g
        down[h] = best + 1
        pred[h] = arg
    for h in hs:
        if down[h] >= k:
            path = [h]
            while len(path) < k:
                path.append(pred[path[-1]])
            path.reverse()
            return Witness(f"P{k}", tuple(path),
                           tuple((f"c{i + 1}", x) for i, x in enumerate(path)))
    return None


def has_diamond(family: Family) -> Witness | None:
    """Four members x < y,z < w with y,z distinct (extra comparabilities allowed)."""
    lat = family.lattice
    hs = family.handles()
    for x in hs:
        for w in hs:
            if x == w or not lat.leq(x, w):
                continue
            mids = [m for m in hs
                    if m != x and m != w and lat.leq(x, m) and lat.leq(m, w)]
            if len(mids) >= 2:
                y, z = mids[0], mids[1]
                return Witness("Q2", tuple(sorted((x, y, z, w))),
                               (("x", x), ("y", y), ("z", z), ("w", w)))
    return None


def has_s_disjoint(family: Family, s: int) -> Witness | None:
    """s distinct members that are pairwise disjoint (meet of dimension 0).

    Only pairwise tests prune the search: pairwise disjointness of subspaces
    does not bound the dimension sum, so no such cut is taken.
    """
    if s < 2:
        raise DomainError(f"s must be >= 2, got {s}")
    lat = family.lattice
    chosen: list[int] = []

    def extend(candidates: int) -> bool:
        if len(chosen) == s:
            return True
        m = candidates
        while m:
            low = m & -m
            h = low.bit_length() - 1
            m ^= low
            chosen.append(h)
            if extend(candidates & lat.disjoint_mask(h) & ~((1 << (h + 1)) - 1)):
                return True
            chosen.pop()
        return False

    if extend(family.mask):
        return Witness(f"disjoint{s}", tuple(chosen),
                       tuple((f"m{i + 1}", h) for i, h in enumerate(chosen)))
    return None


def find_disjoint_transversal(families: list[Family]) -> tuple[int, ...] | None:
    """A pairwise-disjoint choice of one member per family, or None.

    Members may repeat across families; a repeated element only qualifies if
    it is disjoint from itself (meet dimension 0), which holds for the bottom
    element alone.
    """
    if len(families) < 2:
        raise UsageError("need at least two families")
    lat = families[0].lattice
    for f in families[1:]:
        if f.lattice is not lat and f.lattice != lat:
            raise UsageError("families must share one lattice")
    choice: list[int] = []

    def extend(i: int) -> bool:
        if i == len(families):
            return True
        for h in families[i].handles():
            ok = True
            for g in choice:
                if not (lat.disjoint_mask(g) >> h) & 1 and not (
                        g == h and lat.meet_dim(g, h) == 0):
                    ok = False
                    break
            if ok:
                choice.append(h)
                if extend(i + 1):
                    return True
                choice.pop()
        return False

    return tuple(choice) if extend(0) else None


def are_cross_dependent(families: list[Family]) -> tuple[bool, tuple[int, ...] | None]:
    """True iff no pairwise-disjoint transversal exists; else (False, witness)."""
    t = find_disjoint_transversal(families)
    return (t is None), t


def has_boolean_algebra(family: Family, d: int) -> Witness | None:
    """A base member plus d members above it whose increments are disjoint and
    nonempty, with every union of increments over the base also a member.
    The 2^d members are automatically distinct."""
    lat = family.lattice
    if not lat.is_boolean:
        raise UsageError("boolean-algebra detector needs a boolean lattice")
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    if d > BOOL_ALGEBRA_CAP:
        raise ResourceError(f"d = {d} over cap {BOOL_ALGEBRA_CAP}")
    masks = lat._masks
    lookup = lat._lookup
    hs = family.handles()
    fam_mask = family.mask

    def check(base: int, gens: tuple[int, ...]) -> bool:
        x0 = masks[base]
        incs = []
        acc = x0
        for g in gens:
            inc = masks[g] & ~x0
            if inc == 0 or inc & (acc & ~x0):
                return False
            incs.append(inc)
            acc |= inc
        for sel in range(1 << len(gens)):
            u = x0
            for i in range(len(gens)):
                if (sel >> i) & 1:
                    u |= incs[i]
            h = lookup.get(u)
            if h is None or not (fam_mask >> h) & 1:
                return False
        return True

    for base in hs:
        above = [h for h in hs if h != base and lat.leq(base, h)]
        for gens in itertools.combinations(above, d):
            if check(base, gens):
                member_handles = set()
                x0 = masks[base]
                incs = [masks[g] & ~x0 for g in gens]
                for sel in range(1 << d):
                    u = x0
                    for i in range(d):
                        if (sel >> i) & 1:
                            u |= incs[i]
                    member_handles.add(lookup[u])
                roles = [("base", base)] + [(f"gen{i + 1}", g) for i, g in enumerate(gens)]
                return Witness(f"algebra{d}", tuple(sorted(member_handles)), tuple(roles))
    return None


def has_q_algebra(family: Family, d: int) -> Witness | None:
    """A base member plus d strictly larger members whose subspace sums over
    every generator subset are members and pairwise distinct.

    This is the sum-closure reading: spans of unions equal sums of spans, and
    a generator set realizes disjoint vector-set increments exactly when the
    2^d sums stay distinct.  Distinctness is required.
    """
    lat = family.lattice
    if lat.is_boolean:
        raise UsageError("q-algebra detector needs a linear lattice")
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    if d > Q_ALGEBRA_CAP:
        raise ResourceError(f"d = {d} over cap {Q_ALGEBRA_CAP}")
    hs = family.handles()
    fam_mask = family.mask

    def members_of(base: int, gens: tuple[int, ...]):
        out = []
        for sel in range(1 << len(gens)):
            h = base
            for i in range(len(gens)):
                if (sel >> i) & 1:
                    h = lat.join(h, gens[i])
            out.append(h)
        return out

    for base in hs:
        above = [h for h in hs if h != base and lat.leq(base, h)]
        for gens in itertools.combinations(above, d):
            mem = members_of(base, gens)
            if len(set(mem)) != 1 << d:
                continue
            if all((fam_mask >> h) & 1 for h in mem):
                roles = [("base", base)] + [(f"gen{i + 1}", g) for i, g in enumerate(gens)]
                return Witness(f"qalgebra{d}", tuple(sorted(set(mem))), tuple(roles))
    return None


# ---------------------------------------------------------------------------
# forbidden-configuration handles for the search layer

@dataclass(frozen=True)
class Forbidden:
    """Names one monotone configuration for searches and scans."""

    kind: str                     # chain | diamond | disjoint | boolean_algebra | q_algebra | pattern
    param: int = 0
    pattern: PosetPattern | None = dc_field(default=None, compare=False)

    @classmethod
    def parse(cls, spec: str) -> "Forbidden":
        s = spec.strip()
        if s.upper().startswith("P") and s[1:].isdigit():
            return cls("chain", int(s[1:]))
        if s.upper() in ("Q2", "DIAMOND"):
            return cls("diamond")
        for tag, kind in (("disjoint", "disjoint"),
                          ("qalgebra", "q_algebra"),
                          ("algebra", "boolean_algebra")):
            if s.lower().startswith(tag):
                rest = s[len(tag):].lstrip(":")
                if rest.isdigit():
                    return cls(kind, int(rest))
        raise UsageError(f"cannot parse forbidden configuration {spec!r}")

    def label(self) -> str:
        return {"chain": f"P{self.param}", "diamond": "Q2",
                "disjoint": f"disjoint:{self.param}",
                "boolean_algebra": f"algebra:{self.param}",
                "q_algebra": f"qalgebra:{self.param}",
                "pattern": _pattern_label(self.pattern) if self.pattern else "pattern",
                }[self.kind]


def contains_config(family: Family, forbidden: Forbidden) -> Witness | None:
    """Detector dispatch for one named configuration."""
    if forbidden.kind == "chain":
        return has_chain(family, forbidden.param)
    if forbidden.kind == "diamond":
        return has_diamond(family)
    if forbidden.kind == "disjoint":
        return has_s_disjoint(family, forbidden.param)
    if forbidden.kind == "boolean_algebra":
        return has_boolean_algebra(family, forbidden.param)
    if forbidden.kind == "q_algebra":
        return has_q_algebra(family, forbidden.param)
    if forbidden.kind == "pattern":
        return contains_weak(family, forbidden.pattern)
    raise UsageError(f"unknown configuration kind {forbidden.kind!r}")


# ---------------------------------------------------------------------------
# realization enumeration

REALIZATION_CAP = 2_000_000


def realization_masks(lat, forbidden: Forbidden) -> list[int]:
    """Every handle-set of the lattice realizing the configuration, as sorted masks."""
    out: set[int] = set()

    def note(handles) -> None:
        m = 0
        for h in handles:
            m |= 1 << h
        out.add(m)
        if len(out) > REALIZATION_CAP:
            raise ResourceError("too many realizations to enumerate")

    if forbidden.kind == "chain":
        k = forbidden.param

        def grow(chain: list[int]) -> None:
            if len(chain) == k:
                note(chain)
                return
            top = chain[-1]
            m = lat.up_mask(top) & ~(1 << top)
            while m:
                low = m & -m
                h = low.bit_length() - 1
                m ^= low
                chain.append(h)
                grow(chain)
                chain.pop()

        for h in range(lat.size):
            grow([h])
    elif forbidden.kind == "diamond":
        for x in range(lat.size):
            up_x = lat.up_mask(x) & ~(1 << x)
            m = up_x
            while m:
                low = m & -m
                w = low.bit_length() - 1
                m ^= low
                between = up_x & lat.down_mask(w) & ~(1 << w)
                mids = []
                b = between
                while b:
                    lb = b & -b
                    mids.append(lb.bit_length() - 1)
                    b ^= lb
                for pair in itertools.combinations(mids, 2):
                    note((x, w) + pair)
    elif forbidden.kind == "disjoint":
        s = forbidden.param

        def grow_clique(clique: list[int], cand: int) -> None:
            if len(clique) == s:
                note(clique)
                return
            m = cand
            while m:
                low = m & -m
                h = low.bit_length() - 1
                m ^= low
                clique.append(h)
                grow_clique(clique, cand & lat.disjoint_mask(h) & ~((1 << (h + 1)) - 1))
                clique.pop()

        grow_clique([], lat.full_mask)
    elif forbidden.kind in ("boolean_algebra", "q_algebra"):
        d = forbidden.param
        cap = BOOL_ALGEBRA_CAP if forbidden.kind == "boolean_algebra" else Q_ALGEBRA_CAP
        if not 1 <= d <= cap:
            raise ResourceError(f"d = {d} outside [1, {cap}]")
        for base in range(lat.size):
            above = [h for h in range(lat.size)
                     if h != base and lat.leq(base, h)]
            for gens in itertools.combinations(above, d):
                members = _algebra_members(lat, base, gens, forbidden.kind)
                if members is not None:
                    note(members)
    elif forbidden.kind == "pattern":
        members = list(range(lat.size))
        pat = forbidden.pattern
        if pat.size > PATTERN_CAP:
            raise ResourceError(f"pattern size {pat.size} over cap {PATTERN_CAP}")
        assigned: list[int] = []

        def bt(v: int) -> None:
            if v == pat.size:
                note(assigned)
                return
            for h in members:
                okv = True
                for u in range(v):
                    g = assigned[u]
                    if g == h or (pat.less[u][v] and not _strict_less(lat, g, h)) \
                            or (pat.less[v][u] and not _strict_less(lat, h, g)):
                        okv = False
                        break
                if okv:
                    assigned.append(h)
                    bt(v + 1)
                    assigned.pop()

        bt(0)
    else:
        raise UsageError(f"unknown configuration kind {forbidden.kind!r}")
    return sorted(out)


def _algebra_members(lat, base: int, gens, kind: str):
    """Member handles of the algebra generated by (base, gens), or None if degenerate."""
    if kind == "boolean_algebra":
        masks = lat._masks
        x0 = masks[base]
        incs = []
        acc = x0
        for g in gens:
            inc = masks[g] & ~x0
            if inc == 0 or inc & (acc & ~x0):
                return None
            incs.append(inc)
            acc |= inc
        out = set()
        for sel in range(1 << len(gens)):
            u = x0
            for i in range(len(gens)):
                if (sel >> i) & 1:
                    u |= incs[i]
            out.add(lat._lookup[u])
        return out
    mem = set()
    for sel in range(1 << len(gens)):
        h = base
        for i in range(len(gens)):
            if (sel >> i) & 1:
                h = lat.join(h, gens[i])
        mem.add(h)
    if len(mem) != 1 << len(gens):
        return None
    return mem

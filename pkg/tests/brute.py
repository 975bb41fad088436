"""Independent brute-force oracles used to freeze expected values.

Everything here is deliberately naive and self-contained: structural RREF
filters, mod-p linear algebra, and all-subsets filters.  None of it shares a
code path with the routines it is used to check.
"""

from __future__ import annotations

import itertools


def is_rref_matrix(rows: list[list[int]]) -> bool:
    """Structural reduced-row-echelon check on a digit matrix (any q)."""
    pivots = []
    for row in rows:
        nz = [j for j, x in enumerate(row) if x != 0]
        if not nz:
            return False
        p = nz[0]
        if row[p] != 1:
            return False
        if pivots and p <= pivots[-1]:
            return False
        pivots.append(p)
    # zeros above every pivot
    for i, p in enumerate(pivots):
        for r in range(len(rows)):
            if r != i and rows[r][p] != 0:
                return False
    return True


def count_rref_matrices(q: int, n: int, k: int) -> int:
    """Count k-row RREF matrices over GF(q) with n columns by filtering all q^(k*n)."""
    count = 0
    for flat in itertools.product(range(q), repeat=k * n):
        rows = [list(flat[i * n:(i + 1) * n]) for i in range(k)]
        if is_rref_matrix(rows):
            count += 1
    return count


# --- mod-p linear algebra (prime fields only, used for basis counting) -----

def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    work = [r[:] for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rk = 0
    for col in range(ncols):
        sel = None
        for r in range(rk, len(work)):
            if work[r][col] % p:
                sel = r
                break
        if sel is None:
            continue
        work[rk], work[sel] = work[sel], work[rk]
        inv = pow(work[rk][col], p - 2, p)
        work[rk] = [(inv * x) % p for x in work[rk]]
        for r in range(len(work)):
            if r != rk and work[r][col] % p:
                c = work[r][col]
                work[r] = [(x - c * y) % p for x, y in zip(work[r], work[rk])]
        rk += 1
    return rk


def all_vectors(p: int, n: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(p), repeat=n))


def count_unordered_bases(p: int, n: int) -> int:
    """Count unordered bases of GF(p)^n by filtering all n-subsets of nonzero vectors."""
    nonzero = [v for v in all_vectors(p, n) if any(v)]
    count = 0
    for combo in itertools.combinations(nonzero, n):
        if _rank_mod_p([list(v) for v in combo], p) == n:
            count += 1
    return count


def count_bases_containing_vector(p: int, n: int, v: tuple[int, ...]) -> int:
    """Count unordered bases of GF(p)^n containing the fixed vector v."""
    nonzero = [u for u in all_vectors(p, n) if any(u)]
    count = 0
    for combo in itertools.combinations(nonzero, n):
        if v in combo and _rank_mod_p([list(u) for u in combo], p) == n:
            count += 1
    return count


def span_mod_p(rows: list[tuple[int, ...]], p: int, n: int) -> frozenset[tuple[int, ...]]:
    """All GF(p)-linear combinations of the given vectors."""
    vecs = {tuple([0] * n)}
    for row in rows:
        new = set()
        for c in range(p):
            scaled = tuple((c * x) % p for x in row)
            for w in vecs:
                new.add(tuple((a + b) % p for a, b in zip(w, scaled)))
        vecs |= new
    return frozenset(vecs)


def all_subspaces_mod_p(p: int, n: int) -> set[frozenset[tuple[int, ...]]]:
    """Every subspace of GF(p)^n as a vector set, by closing spans of all subsets."""
    nonzero = [v for v in all_vectors(p, n) if any(v)]
    spaces = {span_mod_p([], p, n)}
    frontier = [((), 0)]
    for size in range(1, n + 1):
        for combo in itertools.combinations(nonzero, size):
            spaces.add(span_mod_p(list(combo), p, n))
    del frontier
    return spaces


# --- all-subsets family filters --------------------------------------------

def naive_antichain_count(leq, size: int) -> int:
    """Count antichains by filtering every subset of a <= 20 element poset."""
    count = 0
    for mask in range(1 << size):
        members = [i for i in range(size) if (mask >> i) & 1]
        good = True
        for a, b in itertools.combinations(members, 2):
            if leq(a, b) or leq(b, a):
                good = False
                break
        if good:
            count += 1
    return count


def naive_downset_count(leq, size: int) -> int:
    """Count down-closed subsets by filtering every subset."""
    count = 0
    for mask in range(1 << size):
        members = {i for i in range(size) if (mask >> i) & 1}
        good = True
        for m in members:
            for g in range(size):
                if leq(g, m) and g not in members:
                    good = False
                    break
            if not good:
                break
        if good:
            count += 1
    return count


def naive_weak_embedding_exists(member_leq, members, pattern_less) -> bool:
    """Try every injective assignment of pattern vertices to family members."""
    m = len(pattern_less)
    for image in itertools.permutations(members, m):
        ok = True
        for u in range(m):
            for v in range(m):
                if pattern_less[u][v]:
                    if not (member_leq(image[u], image[v]) and image[u] != image[v]):
                        ok = False
                        break
            if not ok:
                break
        if ok:
            return True
    return False


def naive_strong_embedding_exists(member_leq, members, pattern_less) -> bool:
    """Two-way preservation: image comparabilities must match the pattern exactly."""
    m = len(pattern_less)
    for image in itertools.permutations(members, m):
        ok = True
        for u in range(m):
            for v in range(m):
                if u == v:
                    continue
                want = pattern_less[u][v]
                have = member_leq(image[u], image[v]) and image[u] != image[v]
                if want != have:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False

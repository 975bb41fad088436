"""Exhaustive, branch-and-bound, and sampled verification.

`max_family` finds the largest family avoiding a forbidden configuration:
exact mode scans every subfamily (vectorized), branch_bound walks the same
space with monotonicity pruning and reaches the same maximum, sample mode
returns a seeded greedy lower-bound witness.

`verify_theorem` runs one named inequality over a whole scope (every family,
every antichain, every complex, or a seeded sample) and reports violations;
an implemented inequality reporting a violation on an in-hypothesis instance
is a build-stopping event, so the registry doubles as the master regression
surface.  Results are deterministic and worker-count independent: work is
split into fixed chunks and merged in canonical order.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import algebra, bounds
from ._scan import get_scan
from .errors import DomainError, ResourceError, UsageError
from .lattice import BOOLEAN, Family, SubspaceLattice, down_closure
from .measures import chain_participation_sum, lubell, profile, weighted_lubell
from .patterns import Forbidden, contains_config, realization_masks
from .runtime import parallel_map, split_chunks

ANTICHAIN_CAP = 5_000_000
COLORING_CAP = 2_000_000
SHADOW_GUARD = 1e-9


# ---------------------------------------------------------------------------
# family-space enumeration

def antichain_masks(lat: SubspaceLattice, cap: int = ANTICHAIN_CAP):
    """Every antichain of the lattice as a mask, each exactly once, in
    canonical order (independent sets of the comparability graph)."""
    if lat.size > 4096:
        raise ResourceError(f"antichain enumeration capped at 4096 elements, lattice has {lat.size}")
    incomp = [~lat.comparable_mask(h) & lat.full_mask for h in range(lat.size)]
    count = 0

    def rec(mask: int, candidates: int):
        nonlocal count
        count += 1
        if count > cap:
            raise ResourceError(f"antichain count exceeded cap {cap} (partial count {count - 1})")
        yield mask
        m = candidates
        while m:
            low = m & -m
            h = low.bit_length() - 1
            m ^= low
            yield from rec(mask | low, m & incomp[h])

    yield from rec(0, lat.full_mask)


def enumerate_antichains(lat: SubspaceLattice, cap: int = ANTICHAIN_CAP):
    """Antichains as Family objects."""
    for mask in antichain_masks(lat, cap=cap):
        yield Family(lat, mask)


def enumerate_complexes(lat: SubspaceLattice, cap: int = ANTICHAIN_CAP):
    """Every down-closed family exactly once: the down-closures of antichains
    (an antichain is recovered as the maximal elements, so this is a bijection)."""
    for mask in antichain_masks(lat, cap=cap):
        fam = Family(lat, mask)
        yield down_closure(fam)


# ---------------------------------------------------------------------------
# maximum-family search

@dataclass(frozen=True)
class SearchTask:
    lattice: SubspaceLattice
    forbidden: Forbidden
    mode: str = "exact"                  # exact | branch_bound | sample
    sample_count: int = 1000
    seed: int = 0
    prune_bound: int | None = None       # known upper bound on the best size
    workers: int = 1


@dataclass
class SearchResult:
    best_size: int
    witness: Family
    explored: int
    optimal: bool

    def to_json(self) -> dict:
        return {"best_size": self.best_size, "witness": self.witness.handles(),
                "explored": self.explored, "optimal": self.optimal}


def _realizations(lat, forbidden) -> list[int]:
    cache = getattr(lat, "_realization_cache", None)
    if cache is None:
        cache = {}
        lat._realization_cache = cache
    key = forbidden.label()
    if key not in cache:
        cache[key] = realization_masks(lat, forbidden)
    return cache[key]


def _exact_max(task: SearchTask) -> SearchResult:
    import numpy as np
    lat = task.lattice
    scan = get_scan(lat)
    free = ~scan.cover_any(_realizations(lat, task.forbidden))
    sizes = np.where(free, scan.popcounts(), np.int8(-1))
    best_mask = int(np.argmax(sizes))         # first index attaining the max
    best = int(sizes[best_mask])
    return SearchResult(best, Family(lat, best_mask), scan.n_masks, True)


def _branch_bound_max(task: SearchTask) -> SearchResult:
    lat = task.lattice
    N = lat.size
    reals = _realizations(lat, task.forbidden)
    by_handle = [[] for _ in range(N)]
    for r in reals:
        m = r
        while m:
            low = m & -m
            by_handle[low.bit_length() - 1].append(r)
            m ^= low
    depth = min(4, N)                         # fixed split, worker-independent
    prefixes = list(range(1 << depth))
    ceiling = task.prune_bound if task.prune_bound is not None else N

    def solve_prefix(prefix: int):
        chosen = 0
        ok = True
        for h in range(depth):
            if (prefix >> h) & 1:
                cand = chosen | (1 << h)
                if any(r & cand == r for r in by_handle[h]):
                    ok = False
                    break
                chosen = cand
        if not ok:
            return (-1, 0, 0)
        best = -1
        best_mask = 0
        explored = 0

        def rec(i: int, mask: int, size: int):
            nonlocal best, best_mask, explored
            explored += 1
            if size > best:
                best, best_mask = size, mask
            if i == N or size + (N - i) <= best or best >= ceiling:
                return
            nxt = mask | (1 << i)
            if not any(r & nxt == r for r in by_handle[i]):
                rec(i + 1, nxt, size + 1)
            rec(i + 1, mask, size)

        rec(depth, chosen, bin(chosen).count("1"))
        return (best, best_mask, explored)

    chunks = split_chunks(prefixes, max(task.workers * 2, 1))
    results = parallel_map(lambda ch: [solve_prefix(p) for p in ch], chunks, task.workers)
    flat = [None] * len(prefixes)
    for chunk, res in zip(chunks, results):
        for p, r in zip(chunk, res):
            flat[p] = r
    best, best_mask, explored = -1, 0, 0
    for b, m, e in flat:
        explored += e
        if b > best:
            best, best_mask = b, m
    return SearchResult(best, Family(lat, best_mask), explored, True)


def _sample_max(task: SearchTask) -> SearchResult:
    lat = task.lattice
    N = lat.size
    reals = _realizations(lat, task.forbidden)
    by_handle = [[] for _ in range(N)]
    for r in reals:
        m = r
        while m:
            low = m & -m
            by_handle[low.bit_length() - 1].append(r)
            m ^= low
    rng = random.Random(task.seed)
    best, best_mask = -1, 0
    for _ in range(task.sample_count):
        order = rng.sample(range(N), N)
        mask = 0
        size = 0
        for h in order:
            cand = mask | (1 << h)
            if not any(r & cand == r for r in by_handle[h]):
                mask = cand
                size += 1
        if size > best:
            best, best_mask = size, mask
    return SearchResult(best, Family(lat, best_mask), task.sample_count, False)


def max_family(task: SearchTask) -> SearchResult:
    """Largest family avoiding the forbidden configuration, per the task mode."""
    if task.mode == "exact":
        return _exact_max(task)
    if task.mode == "branch_bound":
        return _branch_bound_max(task)
    if task.mode == "sample":
        return _sample_max(task)
    raise UsageError(f"unknown search mode {task.mode!r}")


# ---------------------------------------------------------------------------
# real-variable Gaussian binomial and the shadow bound

def gauss_binom_real(y: float, k: int, q: int) -> float:
    """The Gaussian binomial with a real upper argument (product form)."""
    prod = 1.0
    for i in range(k):
        prod *= (q ** (y - i) - 1.0) / (q ** (k - i) - 1.0)
    return prod


@dataclass
class GaussRealSolution:
    y: float
    shadow_value: float     # the (k-1)-level Gaussian binomial at y


def solve_gauss_real(m: int, k: int, q: int, n: int,
                     tol: float = 1e-12) -> GaussRealSolution:
    """The real y in [k, n] whose k-level Gaussian binomial equals m, by
    bisection on a strictly increasing function; integer points come back exact."""
    if k < 1 or k > n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    top = algebra.gauss_binom(n, k, q)
    if not 1 <= m <= top:
        raise DomainError(f"m = {m} outside [1, {top}]")
    for y0 in range(k, n + 1):
        if algebra.gauss_binom(y0, k, q) == m:
            return GaussRealSolution(float(y0), gauss_binom_real(float(y0), k - 1, q))
    lo, hi = float(k), float(n)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if gauss_binom_real(mid, k, q) < m:
            lo = mid
        else:
            hi = mid
    y = (lo + hi) / 2
    return GaussRealSolution(y, gauss_binom_real(y, k - 1, q))


# ---------------------------------------------------------------------------
# coloring search

def ramsey_color_check(lat: SubspaceLattice, r: int, d: int,
                       cap: int = COLORING_CAP,
                       sample: int | None = None, seed: int = 0) -> dict:
    """Look for an r-coloring with no monochromatic d-dimensional algebra.

    Exhaustive when r^size fits the cap: finding none certifies that every
    r-coloring pins a monochromatic copy.  Otherwise a seeded sample gives a
    best-effort witness only.
    """
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    kind = "boolean_algebra" if lat.is_boolean else "q_algebra"
    reals = _realizations(lat, Forbidden(kind, d))
    handle_sets = []
    for mask in reals:
        hs = []
        m = mask
        while m:
            low = m & -m
            hs.append(low.bit_length() - 1)
            m ^= low
        handle_sets.append(hs)
    report = {"kind": kind, "r": r, "d": d, "lattice": lat.describe(),
              "realizations": len(reals), "caps": {"colorings": cap}}

    def monochromatic_free(coloring) -> bool:
        for hs in handle_sets:
            c0 = coloring[hs[0]]
            if all(coloring[h] == c0 for h in hs[1:]):
                return False
        return True

    if not handle_sets:
        report.update(witness=[0] * lat.size, certified=True, mode="vacuous")
        return report
    if r >= lat.size:
        witness = list(range(lat.size))
        assert monochromatic_free(witness)
        report.update(witness=witness, certified=True, mode="distinct-colors")
        return report
    if r ** lat.size <= cap and sample is None:
        checked = 0
        for coloring in itertools.product(range(r), repeat=lat.size):
            checked += 1
            if monochromatic_free(coloring):
                report.update(witness=list(coloring), certified=True,
                              mode="exhaustive", checked=checked)
                return report
        report.update(witness=None, certified=True, mode="exhaustive", checked=checked)
        return report
    count = sample if sample is not None else 10_000
    rng = random.Random(seed)
    for _ in range(count):
        coloring = [rng.randrange(r) for _ in range(lat.size)]
        if monochromatic_free(coloring):
            report.update(witness=coloring, certified=False, mode="sample",
                          seed=seed, sampled=count)
            return report
    report.update(witness=None, certified=False, mode="sample", seed=seed, sampled=count)
    return report


# ---------------------------------------------------------------------------
# theorem verifiers

def _parse_scope(scope):
    if isinstance(scope, tuple):
        if scope and scope[0] == "sample":
            return ("sample", int(scope[1]), int(scope[2]))
        raise UsageError(f"bad scope {scope!r}")
    s = str(scope).lower()
    if s in ("exhaustive", "all"):
        return ("exhaustive",)
    if s in ("antichains", "antichains_only"):
        return ("antichains",)
    if s in ("complexes", "complexes_only"):
        return ("complexes",)
    if s.startswith("sample"):
        parts = s.split(":")
        count = int(parts[1]) if len(parts) > 1 else 1000
        seed = int(parts[2]) if len(parts) > 2 else 0
        return ("sample", count, seed)
    raise UsageError(f"unknown scope {scope!r}")


def _scope_label(parsed) -> str:
    return parsed[0] if parsed[0] != "sample" else f"sample:{parsed[1]}:{parsed[2]}"


def _base_report(theorem_id, lat, parsed_scope, params) -> dict:
    rep = {"theorem": theorem_id, "scope": _scope_label(parsed_scope),
           "params": {k: v for k, v in params.items() if v is not None},
           "checked": 0, "violations": [], "ok": True}
    if lat is not None:
        rep["lattice"] = lat.describe()
    if parsed_scope[0] == "sample":
        rep["seed"] = parsed_scope[2]
    return rep


def _sample_masks(lat, count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        yield rng.getrandbits(lat.size)


def _note_violation(rep, item, limit=10):
    rep["ok"] = False
    if len(rep["violations"]) < limit:
        rep["violations"].append(item)
    rep["violation_count"] = rep.get("violation_count", 0) + 1


def _verify_lym(theorem_id, lat, scope, params) -> dict:
    """Antichain Lubell values never exceed 1; equality families recorded."""
    parsed = _parse_scope(scope)
    rep = _base_report(theorem_id, lat, parsed, params)
    if parsed[0] not in ("antichains",):
        raise UsageError("the LYM check runs on the antichain scope")
    best = Fraction(0)
    equality = []
    for fam in enumerate_antichains(lat):
        rep["checked"] += 1
        val = lubell(fam)
        if val > 1:
            _note_violation(rep, {"mask": fam.mask, "lubell": str(val)})
        if val > best:
            best = val
        if val == 1:
            equality.append(fam.mask)
    rep["max_lubell"] = str(best)
    rep["equality_families"] = sorted(equality)
    rep["full_level_masks"] = sorted(lat.level_mask(i) for i in range(lat.n + 1))
    return rep


def _verify_ksperner(theorem_id, lat, scope, params) -> dict:
    """Lubell value is at most the longest chain length, for every family;
    per-k maximum sizes match the top-level-sum closed forms."""
    parsed = _parse_scope(scope)
    rep = _base_report(theorem_id, lat, parsed, params)
    ks = params.get("ks") or list(range(1, min(3, lat.n + 1) + 1))
    if parsed[0] == "sample":
        from .measures import chain_participation
        for mask in _sample_masks(lat, parsed[1], parsed[2]):
            rep["checked"] += 1
            if not mask:
                continue
            fam = Family(lat, mask)
            val = lubell(fam)
            length = max(chain_participation(fam).values())
            if val > length:
                _note_violation(rep, {"mask": mask, "lubell": str(val), "chain": length})
        return rep
    if parsed[0] != "exhaustive":
        raise UsageError("k-Sperner check runs exhaustively or on samples")
    import numpy as np
    scan = get_scan(lat)
    _, _, chainlen = scan.chain_tables()
    lub, denom = scan.lubell_scaled()
    viol = lub > chainlen.astype(np.int64) * denom
    rep["checked"] = scan.n_masks
    if bool(viol.any()):
        idx = np.nonzero(viol)[0][:10]
        for mask in idx:
            _note_violation(rep, {"mask": int(mask),
                                  "lubell_scaled": int(lub[mask]),
                                  "chain": int(chainlen[mask]), "denom": denom})
    sizes = scan.popcounts()
    per_k = []
    for k in ks:
        sel = chainlen <= k
        max_size = int(sizes[sel].max())
        if lat.is_boolean:
            expected = algebra.sigma_sets(lat.n, k)
        else:
            expected = algebra.sigma_spaces(lat.n, k, lat.q)
        entry = {"k": k, "max_size": max_size, "expected_size": expected,
                 "size_ok": max_size == expected}
        if not entry["size_ok"]:
            _note_violation(rep, {"k": k, "max_size": max_size, "expected": expected})
        per_k.append(entry)
    rep["per_k"] = per_k
    return rep


def _verify_chain_participation(theorem_id, lat, scope, params) -> dict:
    """Sum of 1/(c(F) * levelsize) is at most 1 for every family."""
    parsed = _parse_scope(scope)
    rep = _base_report(theorem_id, lat, parsed, params)
    if parsed[0] == "sample":
        for mask in _sample_masks(lat, parsed[1], parsed[2]):
            rep["checked"] += 1
            val = chain_participation_sum(Family(lat, mask))
            if val > 1:
                _note_violation(rep, {"mask": mask, "sum": str(val)})
        return rep
    if parsed[0] != "exhaustive":
        raise UsageError("chain-participation check runs exhaustively or on samples")
    import numpy as np
    scan = get_scan(lat)
    vals, denom = scan.chain_participation_scaled()
    viol = vals > denom
    rep["checked"] = scan.n_masks
    if bool(viol.any()):
        for mask in np.nonzero(viol)[0][:10]:
            _note_violation(rep, {"mask": int(mask), "sum_scaled": int(vals[mask]),
                                  "denom": denom})
    rep["max_sum_scaled"] = int(vals.max())
    rep["denom"] = denom
    return rep


def _minor_level_size(lat, i: int) -> int:
    """Size of level i-1 in the one-smaller lattice; 0 when out of range."""
    if i - 1 < 0 or i - 1 > lat.n - 1:
        return 0
    if lat.is_boolean:
        return math.comb(lat.n - 1, i - 1)
    return algebra.gauss_binom(lat.n - 1, i - 1, lat.q)


def _sharpened_k(lat, prof) -> int | None:
    """Smallest t whose minor-normalized prefix sum exceeds 1, if any."""
    total = Fraction(0)
    for t in range(lat.n + 1):
        cnt = prof[t]
        if cnt:
            minor = _minor_level_size(lat, t)
            if minor == 0:
                return t          # infinite term
            total += Fraction(cnt, minor)
        if total > 1:
            return t
    return None


def _verify_sharpened_lym(theorem_id, lat, scope, params) -> dict:
    """Reweighted LYM for antichains: below the crossing level the weight rises
    to k/i, at or above it to (n-k)/(n-i), and the sum still stays at most 1."""
    parsed = _parse_scope(scope)
    rep = _base_report(theorem_id, lat, parsed, params)
    if parsed[0] != "antichains":
        raise UsageError("the sharpened LYM check runs on the antichain scope")
    n = lat.n
    best = Fraction(0)
    skipped = 0
    for fam in enumerate_antichains(lat):
        prof = fam.profile()
        k = _sharpened_k(lat, prof)
        if k is None:
            skipped += 1
            continue
        rep["checked"] += 1
        total = Fraction(0)
        for i in range(n + 1):
            if not prof[i]:
                continue
            if i < k:
                w = Fraction(k, i)
            else:
                if n == i:
                    raise AssertionError("weight undefined: top level inside an antichain with k set")
                w = Fraction(n - k, n - i)
            total += w * Fraction(prof[i], lat.level_sizes[i])
        if total > 1:
            _note_violation(rep, {"mask": fam.mask, "k": k, "sum": str(total)})
        if total > best:
            best = total
    rep["skipped_no_k"] = skipped
    rep["max_weighted_sum"] = str(best)
    return rep


def _verify_norm_no_disjoint(theorem_id, lat, scope, params) -> dict:
    """Families with no s pairwise disjoint members have Lubell norm at most
    (s-1)(n+1)/s."""
    parsed = _parse_scope(scope)
    s = params.get("s") or 3
    rep = _base_report(theorem_id, lat, parsed, dict(params, s=s))
    bound = bounds.bound_frankl_norm(lat.n, s)
    rep["bound"] = str(bound)
    if parsed[0] == "sample":
        from .patterns import has_s_disjoint
        for mask in _sample_masks(lat, parsed[1], parsed[2]):
            fam = Family(lat, mask)
            if has_s_disjoint(fam, s) is not None:
                continue
            rep["checked"] += 1
            if lubell(fam) > bound:
                _note_violation(rep, {"mask": mask, "norm": str(lubell(fam))})
        return rep
    if parsed[0] != "exhaustive":
        raise UsageError("the norm check runs exhaustively or on samples")
    import numpy as np
    scan = get_scan(lat)
    free = ~scan.cover_any(_realizations(lat, Forbidden("disjoint", s)))
    lub, denom = scan.lubell_scaled()
    # exact comparison: lub/denom <= bound  <=>  lub * bound.den <= bound.num * denom
    viol = free & (lub * np.int64(bound.denominator) > np.int64(bound.numerator * denom))
    rep["checked"] = int(free.sum())
    if bool(viol.any()):
        for mask in np.nonzero(viol)[0][:10]:
            _note_violation(rep, {"mask": int(mask), "norm_scaled": int(lub[mask]),
                                  "denom": denom})
    sel = np.where(free, lub, np.int64(-1))
    best_mask = int(np.argmax(sel))
    rep["max_norm"] = str(Fraction(int(lub[best_mask]), denom))
    rep["max_norm_mask"] = best_mask
    return rep


def _verify_cross_dependent_tuples(theorem_id, lat, scope, params) -> dict:
    """Cross-dependent s-tuples of families (each of size at most the cap)
    have Lubell norms summing to at most (s-1)(n+1)."""
    parsed = _parse_scope(scope)
    s = params.get("s") or 3
    size_cap = params.get("size_cap") or 2
    rep = _base_report(theorem_id, lat, parsed, dict(params, s=s, size_cap=size_cap))
    bound = bounds.bound_frankl_norm(lat.n, s, cross_sum=True)
    rep["bound"] = str(bound)
    rep["caps"] = {"family_size": size_cap}
    masks = [m for m in range(1 << lat.size) if bin(m).count("1") <= size_cap]
    handle_lists = {m: [h for h in range(lat.size) if (m >> h) & 1] for m in masks}
    norms = {m: lubell(Family(lat, m)) for m in masks}
    dis = [lat.disjoint_mask(h) for h in range(lat.size)]
    bottom = lat.bottom()

    def transversal_exists(fams: tuple[int, ...]) -> bool:
        def rec(i, chosen):
            if i == len(fams):
                return True
            for h in handle_lists[fams[i]]:
                if all((dis[g] >> h) & 1 or (g == h == bottom) for g in chosen):
                    chosen.append(h)
                    if rec(i + 1, chosen):
                        return True
                    chosen.pop()
            return False

        return rec(0, [])

    cross_dependent = 0
    for combo in itertools.combinations_with_replacement(masks, s):
        rep["checked"] += 1
        if transversal_exists(combo):
            continue
        cross_dependent += 1
        total = sum((norms[m] for m in combo), Fraction(0))
        if total > bound:
            _note_violation(rep, {"masks": list(combo), "sum": str(total)})
    rep["cross_dependent"] = cross_dependent
    return rep


def _verify_shadow(theorem_id, lat, scope, params) -> dict:
    """Level-k families: the shadow size dominates the (k-1)-level Gaussian
    binomial at the real solution of |V| = [y choose k], within a guard."""
    parsed = _parse_scope(scope)
    k = params.get("k")
    if k is None:
        raise UsageError("the shadow check needs the level parameter k")
    if lat.is_boolean:
        raise UsageError("the shadow bound is stated for linear lattices")
    rep = _base_report(theorem_id, lat, parsed, params)
    level = lat.levels[k]
    if len(level) > 20:
        raise ResourceError(f"level {k} has {len(level)} elements; 2^{len(level)} families over cap")
    lower_level = lat.level_mask(k - 1)
    down = [lat.down_mask(h) for h in level]
    worst = None
    for sub in range(1, 1 << len(level)):
        rep["checked"] += 1
        m = bin(sub).count("1")
        sol = solve_gauss_real(m, k, lat.q, lat.n)
        sh = 0
        for i, h in enumerate(level):
            if (sub >> i) & 1:
                sh |= down[i]
        sh_size = bin(sh & lower_level).count("1")
        gap = sh_size - sol.shadow_value
        if worst is None or gap < worst[0]:
            worst = (gap, sub, m, sol.y)
        if sh_size < sol.shadow_value - SHADOW_GUARD:
            _note_violation(rep, {"level_subset": sub, "size": m,
                                  "shadow": sh_size, "y": sol.y,
                                  "required": sol.shadow_value})
    rep["guard"] = SHADOW_GUARD
    if worst:
        rep["min_gap"] = worst[0]
        rep["min_gap_subset"] = worst[1]
    return rep


def _verify_complex_profile(theorem_id, lat, scope, params) -> dict:
    """Complexes have monotonically decreasing normalized profiles."""
    parsed = _parse_scope(scope)
    rep = _base_report(theorem_id, lat, parsed, params)
    if parsed[0] != "complexes":
        raise UsageError("the profile check runs on the complex scope")
    for fam in enumerate_complexes(lat):
        rep["checked"] += 1
        phis = profile(fam).phi
        for i in range(lat.n):
            if phis[i] < phis[i + 1]:
                _note_violation(rep, {"mask": fam.mask, "level": i})
                break
    return rep


def _verify_qperfect(theorem_id, lat, scope, params) -> dict:
    """Complexes below the full Lubell value meet the size lower bound priced
    at level l."""
    parsed = _parse_scope(scope)
    l = params.get("l")
    if l is None:
        raise UsageError("the perfect-pair check needs the parameter l")
    rep = _base_report(theorem_id, lat, parsed, dict(params, l=l))
    if parsed[0] != "complexes":
        raise UsageError("the perfect-pair check runs on the complex scope")
    hypothesis = lat.n >= 3 * l
    rep["hypothesis_met"] = hypothesis
    if not hypothesis:
        rep["flags"] = ["hypothesis unmet, informational"]
    equality = 0
    for fam in enumerate_complexes(lat):
        val = lubell(fam)
        if not val < lat.n + 1:
            continue
        rep["checked"] += 1
        rhs = bounds.bound_qperfect_rhs(lat, l, val)
        if Fraction(len(fam)) < rhs:
            item = {"mask": fam.mask, "size": len(fam), "rhs": str(rhs)}
            if hypothesis:
                _note_violation(rep, item)
            else:
                rep.setdefault("informational_violations", []).append(item)
        elif Fraction(len(fam)) == rhs:
            equality += 1
    rep["equality_count"] = equality
    return rep


def _verify_algebra_free_lubell(theorem_id, lat, scope, params) -> dict:
    """Families with no d-dimensional algebra have Lubell value at most
    2(n+1)^(1 - 2^(1-d)); informational when the size hypothesis is unmet."""
    parsed = _parse_scope(scope)
    d = params.get("d") or 3
    rep = _base_report(theorem_id, lat, parsed, dict(params, d=d))
    if parsed[0] != "exhaustive":
        raise UsageError("the algebra-free check runs exhaustively")
    import numpy as np
    bound_rep = bounds.qalgebra_lubell_bound(lat.n, d)
    hypothesis = bounds.algebra_hypothesis_met(lat.n, d)
    rep["hypothesis_met"] = hypothesis
    rep["bound_real"] = bound_rep.bound_real
    if not hypothesis:
        rep["flags"] = ["hypothesis unmet, informational"]
    kind = "boolean_algebra" if lat.is_boolean else "q_algebra"
    scan = get_scan(lat)
    free = ~scan.cover_any(_realizations(lat, Forbidden(kind, d)))
    lub, denom = scan.lubell_scaled()
    import mpmath
    with mpmath.workprec(bounds.REAL_PRECISION_BITS):
        up = bounds.upper_rational(
            2 * mpmath.mpf(lat.n + 1) ** (1 - mpmath.mpf(2) ** (1 - d)))
    threshold = (up.numerator * denom) // up.denominator   # lub <= up*denom
    viol = free & (lub > threshold)
    rep["checked"] = int(free.sum())
    sel = np.where(free, lub, np.int64(-1))
    rep["max_lubell"] = str(Fraction(int(sel.max()), denom))
    if bool(viol.any()):
        items = [{"mask": int(m), "lubell": str(Fraction(int(lub[m]), denom))}
                 for m in np.nonzero(viol)[0][:10]]
        if hypothesis:
            for it in items:
                _note_violation(rep, it)
        else:
            rep["informational_violations"] = items
    return rep


def _verify_kleitman(theorem_id, lat, scope, params) -> dict:
    """No-s-disjoint families never beat the matching bound; in the aligned
    case the top-dimension construction attains it exactly."""
    parsed = _parse_scope(scope)
    s = params.get("s") or 3
    rep = _base_report(theorem_id, lat, parsed, dict(params, s=s))
    if parsed[0] != "exhaustive":
        raise UsageError("the matching-bound check runs exhaustively")
    import numpy as np
    n = lat.n
    if lat.is_boolean:
        bound_rep = bounds.bound_kleitman_sets(n, s)
    else:
        bound_rep = bounds.bound_kleitman_spaces(n, s, lat.q)
    bound = bound_rep.bound
    rep["bound"] = {"num": bound.numerator, "den": bound.denominator}
    rep["bound_floor"] = bound_rep.bound_floor()
    rep["case"] = bound_rep.params["case"]
    scan = get_scan(lat)
    free = ~scan.cover_any(_realizations(lat, Forbidden("disjoint", s)))
    sizes = np.where(free, scan.popcounts(), np.int8(-1))
    observed = int(sizes.max())
    rep["checked"] = int(free.sum())
    rep["max_size"] = observed
    rep["max_size_mask"] = int(np.argmax(sizes))
    if observed > bound_rep.bound_floor():
        _note_violation(rep, {"max_size": observed, "bound_floor": bound_rep.bound_floor()})
    if bound_rep.params["case"] == "i":
        k = bound_rep.params["k"]
        cons = bounds.make_construction(lat, "top_dims", k=k)
        rep["construction_size"] = len(cons)
        rep["construction_attains_bound"] = Fraction(len(cons)) == bound
        from .patterns import has_s_disjoint
        rep["construction_detector_free"] = has_s_disjoint(cons, s) is None
    return rep


def _verify_cross_dependent_sharpness(theorem_id, lat, scope, params) -> dict:
    """The level-split construction: total size equals the bound exactly;
    whether it is actually cross-dependent is reported, not assumed, because
    pairwise disjointness does not force a direct sum."""
    parsed = _parse_scope(scope)
    s = params.get("s") or 3
    rep = _base_report(theorem_id, lat, parsed, dict(params, s=s))
    if lat.is_boolean:
        raise UsageError("the cross-dependent construction lives in a linear lattice")
    from .patterns import are_cross_dependent
    bound_rep = bounds.bound_cross_dependent(lat.n, s, lat.q, lattice=lat)
    rep["bound"] = {"num": bound_rep.bound.numerator, "den": bound_rep.bound.denominator}
    rep["l"], rep["r"] = bound_rep.params["l"], bound_rep.params["r"]
    fams = bound_rep.construction
    rep["construction_sizes"] = [len(f) for f in fams]
    total = sum(len(f) for f in fams)
    rep["total_size"] = total
    rep["attains_bound"] = Fraction(total) == bound_rep.bound
    ok, transversal = are_cross_dependent(fams)
    rep["construction_cross_dependent"] = ok
    if transversal is not None:
        rep["disjoint_transversal"] = list(transversal)
    rep["checked"] = 1
    if not rep["attains_bound"]:
        _note_violation(rep, {"total": total, "bound": str(bound_rep.bound)})
    if not ok:
        rep["note"] = ("construction admits a pairwise-disjoint transversal; "
                       "size equality still holds")
    return rep


def _verify_diamond_data(theorem_id, lat, scope, params) -> dict:
    """Exact diamond-free maximum, reported as data next to the two-middle-level
    construction; the asymptotic constant is informational only."""
    parsed = _parse_scope(scope)
    rep = _base_report(theorem_id, lat, parsed, params)
    import numpy as np
    scan = get_scan(lat)
    free = ~scan.cover_any(_realizations(lat, Forbidden("diamond")))
    sizes = np.where(free, scan.popcounts(), np.int8(-1))
    rep["checked"] = scan.n_masks
    rep["max_size"] = int(sizes.max())
    rep["max_size_mask"] = int(np.argmax(sizes))
    lub, denom = scan.lubell_scaled()
    sel = np.where(free, lub, np.int64(-1))
    rep["max_lubell"] = str(Fraction(int(sel.max()), denom))
    if lat.is_boolean:
        two_levels = 2 * math.comb(lat.n, lat.n // 2)
    else:
        two_levels = 2 * algebra.gauss_binom(lat.n, lat.n // 2, lat.q)
    rep["two_middle_levels"] = two_levels
    rep["asymptotic_constant"] = bounds.diamond_lubell_constant().bound_real
    rep["flags"] = ["informational"]
    return rep


_REGISTRY = {
    "T1.5": _verify_lym, "T3.1": _verify_lym,
    "T1.6": _verify_ksperner, "T3.2": _verify_ksperner,
    "T1.2": _verify_ksperner, "T1.4": _verify_ksperner,
    "T3.8": _verify_sharpened_lym, "T3.9": _verify_sharpened_lym,
    "T3.10": _verify_chain_participation, "T3.11": _verify_chain_participation,
    "T4.2": _verify_cross_dependent_tuples, "T4.5": _verify_cross_dependent_tuples,
    "T4.3": _verify_norm_no_disjoint, "T4.6": _verify_norm_no_disjoint,
    "T4.7": _verify_shadow,
    "L4.8": _verify_complex_profile,
    "P4.11": _verify_qperfect,
    "T5.5": _verify_algebra_free_lubell, "T5.8": _verify_algebra_free_lubell,
    "T1.12": _verify_kleitman, "T1.13": _verify_kleitman,
    "T1.14": _verify_cross_dependent_sharpness,
    "P3.5": _verify_diamond_data, "T3.6": _verify_diamond_data, "C3.7": _verify_diamond_data,
}


def theorem_ids() -> list[str]:
    return sorted(_REGISTRY) + ["L4.9"]


def verify_theorem(theorem_id: str, lat: SubspaceLattice | None,
                   scope="exhaustive", **params) -> dict:
    """Run one named check over the requested scope and report violations."""
    if theorem_id == "L4.9":
        rep = bounds.level_sum_grid(
            qs=tuple(params.get("qs") or (2, 3, 4, 5)),
            l_max=params.get("l_max") or 4,
            n_span=params.get("n_span") or 8)
        rep["theorem"] = "L4.9"
        return rep
    impl = _REGISTRY.get(theorem_id)
    if impl is None:
        raise UsageError(f"unknown theorem id {theorem_id!r}; known: {', '.join(theorem_ids())}")
    if lat is None:
        raise UsageError(f"theorem {theorem_id} needs a lattice")
    return impl(theorem_id, lat, scope, params)

"""Bound calculators and sharpness constructions.

Bounds are exact rationals wherever the closed form is rational; the few
irrational ones are evaluated with guarded high precision (113 bits, about 60
beyond a double) and comparisons against exact quantities round the bound UP,
so a true inequality can never fail by rounding.

A caution on the "no s pairwise disjoint members" constructions: for
subspaces, pairwise disjointness does not force a direct sum, so the family
of all subspaces of dimension >= k can still contain s pairwise disjoint
members, and the matching cross-dependent construction can admit a disjoint
transversal.  Size equalities hold regardless; detector results are reported,
not assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import mpmath

from . import algebra
from .errors import DomainError, UsageError
from .lattice import Family, SubspaceLattice

REAL_PRECISION_BITS = 113


@dataclass
class BoundReport:
    """One evaluated bound: exact rational or guarded real, plus any construction."""

    theorem_id: str
    params: dict
    bound: Fraction | None = None
    bound_real: str | None = None
    precision_bits: int | None = None
    exact: bool = True
    construction: list[Family] | None = None
    construction_sizes: tuple[int, ...] | None = None
    flags: tuple[str, ...] = ()
    note: str = ""

    def bound_floor(self) -> int | None:
        return None if self.bound is None else math.floor(self.bound)

    def to_json(self) -> dict:
        out = {"theorem_id": self.theorem_id, "params": dict(self.params),
               "exact": self.exact, "flags": list(self.flags)}
        if self.bound is not None:
            out["bound"] = {"num": self.bound.numerator, "den": self.bound.denominator}
            out["bound_floor"] = self.bound_floor()
        if self.bound_real is not None:
            out["bound_real"] = self.bound_real
            out["precision_bits"] = self.precision_bits
        if self.construction_sizes is not None:
            out["construction_sizes"] = list(self.construction_sizes)
        if self.construction is not None:
            out["construction_handles"] = [f.handles() for f in self.construction]
        if self.note:
            out["note"] = self.note
        return out


def _with_construction(report: BoundReport, families: list[Family]) -> BoundReport:
    report.construction = families
    report.construction_sizes = tuple(len(f) for f in families)
    return report


# ---------------------------------------------------------------------------
# matching-type bounds

def _kleitman_case(n: int, s: int) -> tuple[str, int, int]:
    """Split n >= s >= 3 into the matching-bound cases: n = sk-1, or n = sk+r."""
    if s < 3 or n < s:
        raise UsageError(f"need n >= s >= 3, got n={n}, s={s}")
    if (n + 1) % s == 0:
        return "i", (n + 1) // s, 0
    return "ii", n // s, n % s


def bound_kleitman_sets(n: int, s: int) -> BoundReport:
    """Maximum size of a set family on [n] with no s pairwise disjoint members."""
    case, k, r = _kleitman_case(n, s)
    if case == "i":
        val = Fraction(sum(math.comb(n, i) for i in range(k, n + 1)))
    else:
        val = (Fraction(sum(math.comb(n, i) for i in range(k + 1, n + 1)))
               + Fraction(s - r - 1, s) * math.comb(n, k))
    return BoundReport("T1.12", {"n": n, "s": s, "case": case, "k": k, "r": r}, bound=val)


def bound_kleitman_spaces(n: int, s: int, q: int,
                          lattice: SubspaceLattice | None = None) -> BoundReport:
    """Subspace analogue of the matching bound; attaches the dim >= k family
    in case (i) when a built lattice is supplied."""
    case, k, r = _kleitman_case(n, s)
    if case == "i":
        val = Fraction(sum(algebra.gauss_binom(n, i, q) for i in range(k, n + 1)))
    else:
        val = (Fraction(sum(algebra.gauss_binom(n, i, q) for i in range(k + 1, n + 1)))
               + Fraction(s - r - 1, s) * algebra.gauss_binom(n, k, q))
    rep = BoundReport("T1.13", {"n": n, "s": s, "q": q, "case": case, "k": k, "r": r},
                      bound=val)
    if case == "i" and lattice is not None:
        if lattice.q != q or lattice.n != n:
            raise UsageError("lattice does not match the bound parameters")
        _with_construction(rep, [make_construction(lattice, "top_dims", k=k)])
        rep.note = "size equality holds; the family may still contain s pairwise disjoint members"
    return rep


def bound_cross_dependent(n: int, s: int, q: int,
                          lattice: SubspaceLattice | None = None) -> BoundReport:
    """Total-size bound for s cross-dependent families of subspaces, with the
    level-split construction attached when a lattice is supplied."""
    if s < 3:
        raise UsageError(f"need s >= 3, got {s}")
    l, r = divmod(n, s)
    if l < 1:
        raise UsageError(f"need n >= s, got n={n}, s={s}")
    tail = sum(algebra.gauss_binom(n, j, q) for j in range(l + 1, n + 1))
    val = Fraction(s * tail + (s - r - 1) * algebra.gauss_binom(n, l, q))
    rep = BoundReport("T1.14", {"n": n, "s": s, "q": q, "l": l, "r": r}, bound=val)
    if lattice is not None:
        if lattice.q != q or lattice.n != n:
            raise UsageError("lattice does not match the bound parameters")
        fams = make_construction(lattice, "cross_dependent_sharp", s=s, l=l, r=r)
        _with_construction(rep, fams)
        rep.note = ("size equality holds; pairwise disjoint transversals are "
                    "not excluded by dimension counting")
    return rep


def bound_frankl_norm(n: int, s: int, cross_sum: bool = False) -> Fraction:
    """Binomial-norm bound: (s-1)(n+1)/s for one family with no s pairwise
    disjoint members, (s-1)(n+1) for the sum over s cross-dependent families."""
    if s < 2:
        raise DomainError(f"s must be >= 2, got {s}")
    if cross_sum:
        return Fraction((s - 1) * (n + 1))
    return Fraction((s - 1) * (n + 1), s)


def bound_frankl_norm_q(n: int, s: int, cross_sum: bool = False) -> Fraction:
    """Same values on the subspace side; the transfer preserves the constants."""
    return bound_frankl_norm(n, s, cross_sum=cross_sum)


# ---------------------------------------------------------------------------
# size lower bound for complexes (the "perfect pair" right-hand side)

def bound_qperfect_rhs(lattice: SubspaceLattice, l: int, lubell_value: Fraction) -> Fraction:
    """Lower bound for |complex|: sum of the first l level sizes plus the
    Lubell excess over l priced at level l."""
    n = lattice.n
    if not 0 <= l < n:
        raise UsageError(f"need 0 <= l < n, got l={l}, n={n}")
    if not lubell_value < n + 1:
        raise UsageError("the bound applies below the full-lattice Lubell value")
    head = sum(lattice.level_sizes[i] for i in range(l))
    return head + (Fraction(lubell_value) - l) * lattice.level_sizes[l]


def check_level_sum_vs_repeats(q: int, l: int, k: int, n: int) -> bool:
    """Exact truth of: sum of Gaussian level sizes from l to k dominates
    (k - l + 1) copies of the level-l size.  Valid inputs: l < k <= n-1,
    q >= 2, n >= 3l."""
    if not (0 <= l < k <= n - 1):
        raise UsageError(f"need 0 <= l < k <= n-1, got l={l}, k={k}, n={n}")
    if q < 2 or n < 3 * l:
        raise UsageError(f"need q >= 2 and n >= 3l, got q={q}, n={n}, l={l}")
    lhs = sum(algebra.gauss_binom(n, j, q) for j in range(l, k + 1))
    rhs = (k - l + 1) * algebra.gauss_binom(n, l, q)
    return lhs >= rhs


def level_sum_grid(qs=(2, 3, 4, 5), l_max: int = 4, n_span: int = 8) -> dict:
    """Scan the level-sum inequality over the verification grid; every row
    must come back true."""
    rows = []
    ok = True
    for q in qs:
        for l in range(0, l_max + 1):
            for n in range(3 * l, 3 * l + n_span + 1):
                for k in range(l + 1, n):
                    truth = check_level_sum_vs_repeats(q, l, k, n)
                    rows.append({"q": q, "l": l, "k": k, "n": n, "ok": truth})
                    ok = ok and truth
    return {"id": "L4.9", "columns": ["q", "l", "k", "n", "ok"],
            "rows": rows, "checked": len(rows), "ok": ok,
            "violations": [r for r in rows if not r["ok"]]}


# ---------------------------------------------------------------------------
# algebra-free bounds (guarded reals)

def _mp(value) -> mpmath.mpf:
    return mpmath.mpf(value)


def _real_str(x: mpmath.mpf) -> str:
    return mpmath.nstr(x, 30)


def algebra_hypothesis_met(n: int, d: int) -> bool:
    """The premise n >= (2^d - 2/ln 2)^2 of the algebra-free bounds."""
    if d < 3:
        return False
    with mpmath.workprec(REAL_PRECISION_BITS):
        thr = (_mp(2) ** d - 2 / mpmath.ln(2)) ** 2
        return _mp(n) >= thr


def upper_rational(x: mpmath.mpf, guard_bits: int = 80) -> Fraction:
    """Smallest dyadic rational above x at the guard precision (round up)."""
    scaled = mpmath.ceil(x * (1 << guard_bits))
    return Fraction(int(scaled), 1 << guard_bits)


def qalgebra_lubell_bound(n: int, d: int) -> BoundReport:
    """Lubell-value ceiling 2(n+1)^(1 - 2^(1-d)) for families with no
    d-dimensional algebra (either lattice kind)."""
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    with mpmath.workprec(REAL_PRECISION_BITS):
        val = 2 * _mp(n + 1) ** (1 - _mp(2) ** (1 - d))
        rep = BoundReport("T5.8", {"n": n, "d": d}, bound=None,
                          bound_real=_real_str(val),
                          precision_bits=REAL_PRECISION_BITS, exact=False)
        rep.params["upper_rational"] = str(upper_rational(val))
    if not algebra_hypothesis_met(n, d):
        rep.flags = ("hypothesis unmet",)
    return rep


def qalgebra_size_bound(n: int, d: int, q: int) -> BoundReport:
    """Size ceiling: the Lubell bound times the largest Gaussian level."""
    middle = algebra.gauss_binom(n, math.ceil(n / 2), q)
    with mpmath.workprec(REAL_PRECISION_BITS):
        val = 2 * _mp(n + 1) ** (1 - _mp(2) ** (1 - d)) * middle
        rep = BoundReport("T5.9", {"n": n, "d": d, "q": q}, bound=None,
                          bound_real=_real_str(val),
                          precision_bits=REAL_PRECISION_BITS, exact=False)
    if not algebra_hypothesis_met(n, d):
        rep.flags = ("hypothesis unmet",)
    return rep


def polymath_size_bound(n: int, d: int) -> BoundReport:
    """Boolean-side size ceiling (25/n)^(1/2^d) * 2^n for algebra-free families."""
    if n < 1 or d < 1:
        raise DomainError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    with mpmath.workprec(REAL_PRECISION_BITS):
        val = (_mp(25) / n) ** (_mp(1) / 2 ** d) * _mp(2) ** n
        return BoundReport("T5.3", {"n": n, "d": d}, bound=None,
                           bound_real=_real_str(val),
                           precision_bits=REAL_PRECISION_BITS, exact=False)


def diamond_lubell_constant() -> BoundReport:
    """The (sqrt(2)+3)/2 constant for diamond-free families; asymptotic only."""
    with mpmath.workprec(REAL_PRECISION_BITS):
        val = (mpmath.sqrt(2) + 3) / 2
        return BoundReport("P3.4", {}, bound=None, bound_real=_real_str(val),
                           precision_bits=REAL_PRECISION_BITS, exact=False,
                           flags=("asymptotic",),
                           note="asymptotic constant; not a finite-n bound")


def bound_diamond_q(n: int, q: int) -> BoundReport:
    """Diamond-free size scale: (sqrt(2)+3)/2 times the middle Gaussian level,
    flagged asymptotic because the trailing o(1) is unquantified."""
    middle = algebra.gauss_binom(n, n // 2, q)
    with mpmath.workprec(REAL_PRECISION_BITS):
        val = (mpmath.sqrt(2) + 3) / 2 * middle
        return BoundReport("T3.6", {"n": n, "q": q, "middle_level": middle},
                           bound=None, bound_real=_real_str(val),
                           precision_bits=REAL_PRECISION_BITS, exact=False,
                           flags=("asymptotic",),
                           note="asymptotic; not valid for finite n")


def bound_qalgebra(n: int, d: int, q=None) -> BoundReport:
    """Dispatcher: Lubell bound when q is None, size bound for a linear q,
    Polymath size bound for q == 'boolean'."""
    if q is None:
        return qalgebra_lubell_bound(n, d)
    if q == "boolean":
        return polymath_size_bound(n, d)
    return qalgebra_size_bound(n, d, q)


def ramsey_lower(n: int, d: int) -> int:
    """Color-count floor: any coloring of a linear lattice with this many
    colors (or fewer) pins a monochromatic d-dimensional algebra, by the
    Lubell pigeonhole.  Computed with exact integer root extraction."""
    if d < 3:
        raise DomainError(f"d must be >= 3, got {d}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return algebra.iroot(n, 2 ** (d - 1)) // 2


# ---------------------------------------------------------------------------
# constructions

def make_construction(lattice: SubspaceLattice, kind: str, **params):
    """Named extremal families.

    middle_levels(k)            one family: the k central levels
    sperner_star(k)             the collection of maximal k-level families
                                (two families when n+k is even)
    top_dims(k)                 every element of dimension >= k
    kleitman_sharp(s, k)        top_dims(k) with n = sk-1 validated
    cross_dependent_sharp(s,l,r) r+1 copies of dim>l plus s-r-1 copies of dim>=l

    Returns a Family for the single-family kinds, a list for the collections.
    """
    n = lattice.n
    if kind == "middle_levels":
        k = params["k"]
        if not 1 <= k <= n + 1:
            raise UsageError(f"k = {k} outside [1, {n + 1}]")
        base = (n - k) // 2
        return Family.from_levels(lattice, range(base + 1, base + k + 1))
    if kind == "sperner_star":
        k = params["k"]
        if not 1 <= k <= n + 1:
            raise UsageError(f"k = {k} outside [1, {n + 1}]")
        base = (n - k) // 2
        first = Family.from_levels(lattice, range(base + 1, base + k + 1))
        if (n + k) % 2 == 1:
            return [first]
        other = Family.from_levels(lattice, range(base, base + k))
        return [other, first]
    if kind == "top_dims":
        k = params["k"]
        if not 0 <= k <= n:
            raise UsageError(f"k = {k} outside [0, {n}]")
        return Family.from_levels(lattice, range(k, n + 1))
    if kind == "kleitman_sharp":
        s, k = params["s"], params["k"]
        if n != s * k - 1:
            raise UsageError(f"need n = s*k - 1, got n={n}, s={s}, k={k}")
        return make_construction(lattice, "top_dims", k=k)
    if kind == "cross_dependent_sharp":
        s, l, r = params["s"], params["l"], params["r"]
        if n != s * l + r or not 0 <= r < s:
            raise UsageError(f"need n = s*l + r with 0 <= r < s, got n={n}, s={s}, l={l}, r={r}")
        upper = Family.from_levels(lattice, range(l + 1, n + 1))
        wide = Family.from_levels(lattice, range(l, n + 1))
        return [upper] * (r + 1) + [wide] * (s - r - 1)
    raise UsageError(f"unknown construction kind {kind!r}")

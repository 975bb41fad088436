"""Boolean and linear (subspace) lattices with a canonical element order.

Linear-lattice elements are the subspaces of GF(q)^n, each held as its unique
reduced-row-echelon basis matrix; Boolean-lattice elements are the subsets of
[n], held as indicator rows.  Both kinds share one interface (levels, handles,
containment, meet/join, families) so every functional and verifier downstream
runs unchanged on either side.

Handles are dense ints assigned in (dimension, lexicographic digit) order,
which is stable across rebuilds and across save/load round trips.

A note on "disjoint": two elements are disjoint when their meet has dimension
(or cardinality) zero.  The zero subspace / empty set is therefore disjoint
from everything, including in pairs drawn from the same family.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass

from . import algebra
from .errors import DomainError, FormatError, ResourceError, UsageError

BOOLEAN = "boolean"

#: Precompute the full containment relation only below this element count.
CONTAINMENT_CAP = 4096

#: Default cap on a single level's size when building a linear lattice.
LEVEL_CAP = 200_000

_DIGITS = "0123456789abcdef"


@dataclass(frozen=True)
class Subspace:
    """One lattice element: RREF rows for subspaces, a single indicator row for subsets."""

    dim: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def digits(self) -> tuple[int, ...]:
        return tuple(x for row in self.rows for x in row)

    def sort_key(self) -> tuple:
        return (self.dim, self.digits)


class SubspaceLattice:
    """All subspaces of GF(q)^n, or all subsets of [n] when q == BOOLEAN."""

    def __init__(self, q, n: int, elements: list[Subspace]):
        self.q = q
        self.n = n
        self.elements = elements
        self.size = len(elements)
        self.dims = [e.dim for e in elements]
        self.levels = [[] for _ in range(n + 1)]
        for h, e in enumerate(elements):
            self.levels[e.dim].append(h)
        self.level_sizes = tuple(len(lv) for lv in self.levels)
        if self.is_boolean:
            self._masks = [sum(1 << j for j, x in enumerate(e.rows[0]) if x)
                           for e in elements]
            self._lookup = {m: h for h, m in enumerate(self._masks)}
            self._field = None
            self._vecsets = None
        else:
            self._field = algebra.field(q)
            self._vecsets = [self._span_set(e.rows) for e in elements]
            self._lookup = {e.rows: h for h, e in enumerate(elements)}
            self._masks = None
        self._up = None          # handle -> bitmask of handles containing it (incl self)
        self._down = None        # handle -> bitmask of handles it contains (incl self)
        self._disjoint = None    # handle -> bitmask of handles meeting it in dim 0
        self._join_cache = {}
        self._digest = None

    # -- identity ------------------------------------------------------------

    @property
    def is_boolean(self) -> bool:
        return self.q == BOOLEAN

    @property
    def kind(self) -> str:
        return "boolean" if self.is_boolean else "linear"

    def __eq__(self, other):
        return (isinstance(other, SubspaceLattice)
                and self.q == other.q and self.n == other.n
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.q, self.n, self.size))

    def __repr__(self):
        base = f"B_{self.n}" if self.is_boolean else f"L_{self.n}({self.q})"
        return f"<{base}: {self.size} elements>"

    def describe(self) -> dict:
        return {"kind": self.kind, "q": None if self.is_boolean else self.q,
                "n": self.n, "size": self.size,
                "level_sizes": list(self.level_sizes), "digest": self.digest()}

    def digest(self) -> str:
        if self._digest is None:
            self._digest = hashlib.sha256(serialize_lattice(self)).hexdigest()
        return self._digest

    # -- element-level operations ---------------------------------------------

    def _span_set(self, rows) -> frozenset[int]:
        """All vectors of the row space, encoded base q."""
        fs = self._field
        q, n = self.q, self.n
        vecs = {(0,) * n}
        for row in rows:
            add = []
            for c in range(1, q):
                add.append(algebra.vec_scale(fs, c, row))
            vecs |= {algebra.vec_add(fs, v, s) for v in vecs for s in add}
        enc = set()
        for v in vecs:
            x = 0
            for d in v:
                x = x * q + d
            enc.add(x)
        return frozenset(enc)

    def dim(self, h: int) -> int:
        return self.dims[h]

    def leq(self, a: int, b: int) -> bool:
        """Containment: element a is inside element b."""
        if self.dims[a] > self.dims[b]:
            return False
        if self.is_boolean:
            return self._masks[a] & ~self._masks[b] == 0
        vb = self._vecsets[b]
        return all(self._encode(row) in vb for row in self.elements[a].rows)

    def _encode(self, row) -> int:
        x = 0
        for d in row:
            x = x * self.q + d
        return x

    def meet_dim(self, a: int, b: int) -> int:
        """Dimension (cardinality) of the intersection of two elements."""
        if self.is_boolean:
            return bin(self._masks[a] & self._masks[b]).count("1")
        inter = len(self._vecsets[a] & self._vecsets[b])
        d = 0
        t = 1
        while t < inter:
            t *= self.q
            d += 1
        assert t == inter, "intersection of subspaces must have q-power size"
        return d

    def join(self, a: int, b: int) -> int:
        """Handle of the smallest element containing both a and b."""
        key = (a, b) if a <= b else (b, a)
        h = self._join_cache.get(key)
        if h is None:
            if self.is_boolean:
                h = self._lookup[self._masks[a] | self._masks[b]]
            else:
                rows = algebra.rref(self._field, self.elements[a].rows + self.elements[b].rows)
                h = self._lookup[rows]
            self._join_cache[key] = h
        return h

    def handle_of(self, element) -> int:
        """Handle of an element given as RREF rows (linear) or a subset mask (boolean)."""
        return self._lookup[element]

    # -- containment bitmasks --------------------------------------------------

    def _ensure_containment(self):
        if self._up is not None:
            return
        if self.size > CONTAINMENT_CAP:
            raise ResourceError(
                f"containment table for {self.size} elements exceeds cap {CONTAINMENT_CAP}")
        up = [0] * self.size
        down = [0] * self.size
        if self.is_boolean:
            full = (1 << self.n) - 1
            for h, m in enumerate(self._masks):
                rest = full & ~m
                sup = rest
                while True:
                    sh = self._lookup[m | sup]
                    up[h] |= 1 << sh
                    down[sh] |= 1 << h
                    if sup == 0:
                        break
                    sup = (sup - 1) & rest
        else:
            order = sorted(range(self.size), key=lambda h: self.dims[h])
            for ia, a in enumerate(order):
                for b in order[ia:]:
                    if self.leq(a, b):
                        up[a] |= 1 << b
                        down[b] |= 1 << a
        self._up = up
        self._down = down

    def up_mask(self, h: int) -> int:
        self._ensure_containment()
        return self._up[h]

    def down_mask(self, h: int) -> int:
        self._ensure_containment()
        return self._down[h]

    def comparable_mask(self, h: int) -> int:
        return self.up_mask(h) | self.down_mask(h)

    def disjoint_mask(self, h: int) -> int:
        """Bitmask of handles whose meet with h has dimension 0 (h excluded)."""
        if self._disjoint is None:
            if self.size > CONTAINMENT_CAP:
                raise ResourceError(
                    f"disjointness table for {self.size} elements exceeds cap {CONTAINMENT_CAP}")
            dis = [0] * self.size
            for a in range(self.size):
                for b in range(a + 1, self.size):
                    if self.meet_dim(a, b) == 0:
                        dis[a] |= 1 << b
                        dis[b] |= 1 << a
            self._disjoint = dis
        return self._disjoint[h]

    def level_mask(self, i: int) -> int:
        m = 0
        for h in self.levels[i]:
            m |= 1 << h
        return m

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def top(self) -> int:
        return self.levels[self.n][0]

    def bottom(self) -> int:
        return self.levels[0][0]


# ---------------------------------------------------------------------------
# construction

def _enumerate_rref(q: int, n: int, k: int):
    """Every k-dimensional RREF matrix over GF(q) with n columns, via pivot patterns."""
    if k == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free = [(i, j) for i in range(k) for j in range(n)
                if j > pivots[i] and j not in pivot_set]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i in range(k):
                rows[i][pivots[i]] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


def build_lattice(q, n: int, level_cap: int = LEVEL_CAP) -> SubspaceLattice:
    """Materialize B_n (q == BOOLEAN) or the lattice of subspaces of GF(q)^n."""
    if q == BOOLEAN:
        if not 1 <= n <= 24:
            raise ResourceError(f"boolean lattice needs 1 <= n <= 24, got {n}")
        elements = []
        for mask in range(1 << n):
            indicator = tuple((mask >> j) & 1 for j in range(n))
            elements.append(Subspace(sum(indicator), (indicator,)))
        elements.sort(key=Subspace.sort_key)
        return SubspaceLattice(BOOLEAN, n, elements)

    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    algebra.field(q)  # validates q
    for i in range(n + 1):
        lv = algebra.gauss_binom(n, i, q)
        if lv > level_cap:
            raise ResourceError(
                f"level {i} of L_{n}({q}) has {lv} subspaces, over the cap {level_cap}")
    elements = []
    for k in range(n + 1):
        batch = [Subspace(k, rows) for rows in _enumerate_rref(q, n, k)]
        batch.sort(key=Subspace.sort_key)
        elements.extend(batch)
    return SubspaceLattice(q, n, elements)


# ---------------------------------------------------------------------------
# families

class Family:
    """A subset of lattice elements, stored as a bitmask over handles."""

    __slots__ = ("lattice", "mask")

    def __init__(self, lattice: SubspaceLattice, mask: int):
        if mask < 0 or mask >> lattice.size:
            raise UsageError(f"mask {mask:#x} out of range for {lattice!r}")
        self.lattice = lattice
        self.mask = mask

    @classmethod
    def from_handles(cls, lattice, handles) -> "Family":
        m = 0
        for h in handles:
            if not 0 <= h < lattice.size:
                raise UsageError(f"handle {h} out of range")
            m |= 1 << h
        return cls(lattice, m)

    @classmethod
    def from_levels(cls, lattice, dims) -> "Family":
        m = 0
        for d in dims:
            m |= lattice.level_mask(d)
        return cls(lattice, m)

    @classmethod
    def empty(cls, lattice) -> "Family":
        return cls(lattice, 0)

    @classmethod
    def whole(cls, lattice) -> "Family":
        return cls(lattice, lattice.full_mask)

    def handles(self) -> list[int]:
        m = self.mask
        out = []
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def profile(self) -> tuple[int, ...]:
        counts = [0] * (self.lattice.n + 1)
        for h in self.handles():
            counts[self.lattice.dims[h]] += 1
        return tuple(counts)

    def __len__(self):
        return bin(self.mask).count("1")

    def __contains__(self, h: int):
        return bool((self.mask >> h) & 1)

    def __iter__(self):
        return iter(self.handles())

    def __eq__(self, other):
        return (isinstance(other, Family) and self.mask == other.mask
                and self.lattice == other.lattice)

    def __hash__(self):
        return hash((self.lattice, self.mask))

    def __or__(self, other):
        self._check(other)
        return Family(self.lattice, self.mask | other.mask)

    def __and__(self, other):
        self._check(other)
        return Family(self.lattice, self.mask & other.mask)

    def __sub__(self, other):
        self._check(other)
        return Family(self.lattice, self.mask & ~other.mask)

    def _check(self, other):
        if self.lattice is not other.lattice and self.lattice != other.lattice:
            raise UsageError("families belong to different lattices")

    def __repr__(self):
        return f"<Family of {len(self)} on {self.lattice!r}>"


def shadow(family: Family) -> Family:
    """All (k-1)-dimensional elements below some member of a k-uniform family."""
    lat = family.lattice
    hs = family.handles()
    if not hs:
        raise UsageError("shadow of the empty family is undefined")
    k = lat.dims[hs[0]]
    if any(lat.dims[h] != k for h in hs):
        raise UsageError("shadow needs a family concentrated on one level")
    if k == 0:
        raise UsageError("level-0 family has no shadow")
    level = lat.level_mask(k - 1)
    out = 0
    for h in hs:
        out |= lat.down_mask(h)
    return Family(lat, out & level)


def is_complex(family: Family) -> bool:
    """Down-closed: every element below a member is a member."""
    lat = family.lattice
    return all(lat.down_mask(h) & ~family.mask == 0 for h in family.handles())


def is_upset(family: Family) -> bool:
    """Up-closed: every element above a member is a member."""
    lat = family.lattice
    return all(lat.up_mask(h) & ~family.mask == 0 for h in family.handles())


def upset_of(family: Family) -> Family:
    """Smallest up-closed family containing the given one."""
    lat = family.lattice
    m = 0
    for h in family.handles():
        m |= lat.up_mask(h)
    return Family(lat, m)


def down_closure(family: Family) -> Family:
    """Smallest complex containing the given family."""
    lat = family.lattice
    m = 0
    for h in family.handles():
        m |= lat.down_mask(h)
    return Family(lat, m)


def complement(family: Family) -> Family:
    """All lattice elements outside the family."""
    return Family(family.lattice, family.lattice.full_mask & ~family.mask)


# ---------------------------------------------------------------------------
# cache file format
#
#   QLAT 1 <q|B> <n> <count>
#   <dim>:<row1>,<row2>,...        one line per element, canonical order;
#                                  rows are n base-q digits (0-9a-f)
#   SHA256:<hex>                   over all preceding bytes
#
# Boolean lattices write exactly one indicator row per subset; linear
# lattices write the RREF rows (none for the zero subspace).

def _element_line(lat: SubspaceLattice, e: Subspace) -> str:
    rows = ",".join("".join(_DIGITS[x] for x in row) for row in e.rows)
    return f"{e.dim}:{rows}"


def serialize_lattice(lat: SubspaceLattice) -> bytes:
    qtok = "B" if lat.is_boolean else str(lat.q)
    lines = [f"QLAT 1 {qtok} {lat.n} {lat.size}"]
    lines.extend(_element_line(lat, e) for e in lat.elements)
    body = ("\n".join(lines) + "\n").encode()
    digest = hashlib.sha256(body).hexdigest()
    return body + f"SHA256:{digest}\n".encode()


def save_lattice(lat: SubspaceLattice, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize_lattice(lat))


def deserialize_lattice(data: bytes) -> SubspaceLattice:
    text = data.decode()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 2 or not lines[-1].startswith("SHA256:"):
        raise FormatError("missing digest line (truncated file?)")
    body = ("\n".join(lines[:-1]) + "\n").encode()
    want = lines[-1][len("SHA256:"):]
    got = hashlib.sha256(body).hexdigest()
    if got != want:
        raise FormatError(f"digest mismatch: file says {want[:12]}.., content is {got[:12]}..")
    head = lines[0].split()
    if len(head) != 5 or head[0] != "QLAT":
        raise FormatError(f"bad header: {lines[0]!r}")
    if head[1] != "1":
        raise FormatError(f"unsupported format version {head[1]}")
    qtok, n, count = head[2], int(head[3]), int(head[4])
    q = BOOLEAN if qtok == "B" else int(qtok)
    body_lines = lines[1:-1]
    if len(body_lines) != count:
        raise FormatError(f"header says {count} elements, file has {len(body_lines)}")
    base = 2 if q == BOOLEAN else q
    elements = []
    for ln in body_lines:
        try:
            dim_s, rows_s = ln.split(":", 1)
            dim = int(dim_s)
            rows = tuple(tuple(_DIGITS.index(ch) for ch in tok)
                         for tok in rows_s.split(",")) if rows_s else ()
        except (ValueError, IndexError) as exc:
            raise FormatError(f"bad element line {ln!r}") from exc
        for row in rows:
            if len(row) != n or any(d >= base for d in row):
                raise FormatError(f"bad row in line {ln!r}")
        elements.append(Subspace(dim, rows))
    keys = [e.sort_key() for e in elements]
    if keys != sorted(keys):
        raise FormatError("elements are not in canonical order")
    lat = SubspaceLattice(q, n, elements)
    if list(lat.level_sizes) != [len(lv) for lv in lat.levels]:
        raise FormatError("inconsistent levels")  # pragma: no cover
    return lat


def load_lattice(path) -> SubspaceLattice:
    with open(path, "rb") as fh:
        return deserialize_lattice(fh.read())

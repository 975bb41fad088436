"""Vectorized all-subfamilies engine for small lattices.

Indexes every one of the 2^N subfamilies of an N-element lattice (N capped at
20) by its mask and evaluates, across all of them at once: membership bits,
popcounts, longest-chain DP tables, scaled Lubell sums, and chain-participation
sums.  Rational quantities are scaled to integers by the lcm of their
denominators, so every comparison stays exact; numpy only ever holds int64.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ResourceError

SCAN_CAP_BITS = 20


class MaskScan:
    def __init__(self, lat):
        if lat.size > SCAN_CAP_BITS:
            raise ResourceError(
                f"exhaustive scan over 2^{lat.size} families exceeds the 2^{SCAN_CAP_BITS} cap")
        self.lat = lat
        self.n_masks = 1 << lat.size
        self.masks = np.arange(self.n_masks, dtype=np.uint32)
        self._pc16 = None
        self._bits: dict[int, np.ndarray] = {}
        self._chain = None
        self._lubell = None
        self._chain_part = None

    # -- primitives ---------------------------------------------------------

    def bit(self, h: int) -> np.ndarray:
        arr = self._bits.get(h)
        if arr is None:
            arr = ((self.masks >> np.uint32(h)) & np.uint32(1)).astype(bool)
            self._bits[h] = arr
        return arr

    def popcounts(self) -> np.ndarray:
        if self._pc16 is None:
            table = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int8)
            self._pc16 = table[self.masks & np.uint32(0xFFFF)] + table[self.masks >> np.uint32(16)]
        return self._pc16

    def cover_any(self, realization_masks) -> np.ndarray:
        """True where the family mask covers at least one realization mask."""
        out = np.zeros(self.n_masks, dtype=bool)
        for r in realization_masks:
            r32 = np.uint32(r)
            out |= (self.masks & r32) == r32
        return out

    # -- longest chains -----------------------------------------------------

    def chain_tables(self):
        """(down, up, chainlen): per-handle longest chain ending/starting there
        within each mask, and the overall longest chain per mask."""
        if self._chain is None:
            lat = self.lat
            N = lat.size
            down = [None] * N
            for h in range(N):
                best = np.zeros(self.n_masks, dtype=np.int8)
                sub = lat.down_mask(h) & ~(1 << h)
                while sub:
                    low = sub & -sub
                    g = low.bit_length() - 1
                    sub ^= low
                    np.maximum(best, down[g], out=best)
                down[h] = np.where(self.bit(h), best + np.int8(1), np.int8(0))
            up = [None] * N
            for h in range(N - 1, -1, -1):
                best = np.zeros(self.n_masks, dtype=np.int8)
                sup = lat.up_mask(h) & ~(1 << h)
                while sup:
                    low = sup & -sup
                    g = low.bit_length() - 1
                    sup ^= low
                    np.maximum(best, up[g], out=best)
                up[h] = np.where(self.bit(h), best + np.int8(1), np.int8(0))
            chainlen = np.zeros(self.n_masks, dtype=np.int8)
            for h in range(N):
                np.maximum(chainlen, down[h], out=chainlen)
            self._chain = (down, up, chainlen)
        return self._chain

    # -- scaled functionals ---------------------------------------------------

    def lubell_scaled(self):
        """(values, denominator): Lubell value of each mask times the lcm of
        the level sizes, as exact int64."""
        if self._lubell is None:
            lat = self.lat
            denom = math.lcm(*lat.level_sizes)
            acc = np.zeros(self.n_masks, dtype=np.int64)
            for h in range(lat.size):
                w = denom // lat.level_sizes[lat.dims[h]]
                acc += np.where(self.bit(h), np.int64(w), np.int64(0))
            self._lubell = (acc, denom)
        return self._lubell

    def chain_participation_scaled(self):
        """(values, denominator): sum of 1/(c(F) * levelsize) per mask, scaled
        by the lcm of every reachable c * levelsize."""
        if self._chain_part is None:
            lat = self.lat
            down, up, _ = self.chain_tables()
            denoms = [c * lat.level_sizes[i]
                      for c in range(1, lat.n + 2) for i in range(lat.n + 1)]
            denom = math.lcm(*denoms)
            acc = np.zeros(self.n_masks, dtype=np.int64)
            for h in range(lat.size):
                ls = lat.level_sizes[lat.dims[h]]
                lut = np.array([0] + [denom // (c * ls) for c in range(1, lat.n + 2)],
                               dtype=np.int64)
                c = down[h].astype(np.int16) + up[h].astype(np.int16) - 1
                c = np.where(self.bit(h), c, np.int16(0))
                acc += lut[c]
            self._chain_part = (acc, denom)
        return self._chain_part


def get_scan(lat) -> MaskScan:
    scan = getattr(lat, "_scan_engine", None)
    if scan is None:
        scan = MaskScan(lat)
        lat._scan_engine = scan
    return scan

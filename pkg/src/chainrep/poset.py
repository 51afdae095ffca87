"""Finite partially ordered sets on dense integer carriers.

Elements are always the integers ``0 .. n-1``; the order is kept as a
boolean ``leq`` matrix with ``leq[i, j]`` meaning ``i <= j``.  Instances
are immutable after construction and every operation is a pure function,
so values can be shared freely between threads and worker processes.
"""
from __future__ import annotations

from itertools import permutations, product

import numpy as np


class NotTwoChainCoverable(ValueError):
    """The poset has width > 2 and cannot be split into two chains."""


MAX_CANONICAL_SIZE = 7
MAX_ENUMERATION_SIZE = 6


class Poset:
    """An immutable finite poset given by its full order relation."""

    def __init__(self, leq):
        leq = np.array(leq, dtype=bool)
        n = leq.shape[0]
        if leq.shape != (n, n):
            raise ValueError(f"leq must be square, got shape {leq.shape}")
        if not leq[np.diag_indices(n)].all():
            raise ValueError("relation is not reflexive")
        if (leq & leq.T).sum() > n:
            raise ValueError("relation is not antisymmetric")
        if ((~leq) & (leq @ leq)).any():
            raise ValueError("relation is not transitive")
        leq.flags.writeable = False
        self.n = int(n)
        self.leq = leq

    @classmethod
    def from_covers(cls, n: int, covers) -> "Poset":
        """Build a poset as the reflexive-transitive closure of cover pairs."""
        rows = [1 << i for i in range(n)]
        for i, j in covers:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"cover ({i}, {j}) out of range for size {n}")
            rows[i] |= 1 << j
        rows = _transitive_closure_rows(rows)
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i] >> j & 1 and rows[j] >> i & 1:
                    raise ValueError(f"covers create a cycle through {i} and {j}")
        return cls(_rows_to_matrix(rows, n))

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls.from_covers(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls.from_covers(n, [])

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])

    def subposet(self, ids) -> "Poset":
        ids = list(ids)
        return Poset(self.leq[np.ix_(ids, ids)])

    @property
    def cover_matrix(self):
        """cover_matrix[i, j] iff j covers i."""
        if not hasattr(self, "_cover_matrix"):
            lt = self.leq & ~np.eye(self.n, dtype=bool)
            cov = lt & ~(lt @ lt)
            cov.flags.writeable = False
            self._cover_matrix = cov
        return self._cover_matrix

    def covers(self) -> list[tuple[int, int]]:
        """All pairs (x, y) with x < y and nothing strictly between."""
        xs, ys = np.nonzero(self.cover_matrix)
        return sorted(zip(xs.tolist(), ys.tolist()))

    def width(self) -> int:
        """Size of a maximum antichain, via a minimum chain cover."""
        if self.n == 0:
            raise ValueError("width of the empty poset is undefined")
        n = self.n
        strict = self.leq & ~np.eye(n, dtype=bool)
        adj = [np.flatnonzero(strict[i]).tolist() for i in range(n)]
        match_right = [-1] * n

        def augment(i, seen):
            for j in adj[i]:
                if not seen[j]:
                    seen[j] = True
                    if match_right[j] == -1 or augment(match_right[j], seen):
                        match_right[j] = i
                        return True
            return False

        matched = sum(augment(i, [False] * n) for i in range(n))
        return n - matched

    def two_chain_partition(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Split the carrier into two chains (L, R); R may be empty.

        Elements are assigned in index order, trying L before R, and the
        first complete assignment wins, so the result is deterministic.
        """
        if self.n == 0:
            return (), ()
        comparable = self.leq | self.leq.T
        left: list[int] = []
        right: list[int] = []

        def place(i):
            if i == self.n:
                return True
            for part in (left, right):
                if all(comparable[i, j] for j in part):
                    part.append(i)
                    if place(i + 1):
                        return True
                    part.pop()
            return False

        if not place(0):
            raise NotTwoChainCoverable(
                f"poset of width {self.width()} has no two-chain partition"
            )
        key = self.leq.sum(axis=0)
        return (
            tuple(sorted(left, key=lambda v: (int(key[v]), v))),
            tuple(sorted(right, key=lambda v: (int(key[v]), v))),
        )

    def downset_masks(self) -> list[int]:
        """All down-closed subsets as bitmasks, sorted by (size, mask)."""
        pred = [0] * self.n
        for j in range(self.n):
            for i in range(self.n):
                if i != j and self.leq[i, j]:
                    pred[j] |= 1 << i
        seen = {0}
        frontier = [0]
        while frontier:
            mask = frontier.pop()
            for e in range(self.n):
                if not mask >> e & 1 and pred[e] & ~mask == 0:
                    grown = mask | 1 << e
                    if grown not in seen:
                        seen.add(grown)
                        frontier.append(grown)
        return sorted(seen, key=lambda m: (m.bit_count(), m))

    def downsets(self) -> list[tuple[int, ...]]:
        """All down-closed subsets in a deterministic canonical order."""
        return [_mask_elements(m) for m in self.downset_masks()]

    def canonical_key(self) -> bytes:
        """Isomorphism-invariant key: minimal relabelled relation table.

        The minimum is taken over the relabellings that respect the
        (elements-below, elements-above) degree profile; isomorphic posets
        share profiles, so the restriction keeps the key canonical while
        skipping most of the n! permutations.
        """
        if self.n > MAX_CANONICAL_SIZE:
            raise ValueError(
                f"canonical form supported only up to {MAX_CANONICAL_SIZE} elements"
            )
        rows = self.leq.tolist()
        below = self.leq.sum(axis=0).tolist()
        above = self.leq.sum(axis=1).tolist()
        classes: dict[tuple[int, int], list[int]] = {}
        for v in range(self.n):
            classes.setdefault((below[v], above[v]), []).append(v)
        pools = [classes[p] for p in sorted(classes)]
        best = None
        for parts in product(*(permutations(pool) for pool in pools)):
            perm = [v for part in parts for v in part]
            key = bytes(
                rows[perm[i]][perm[j]] for i in range(self.n) for j in range(self.n)
            )
            if best is None or key < best:
                best = key
        return best if best is not None else b""

    def is_isomorphic_to(self, other: "Poset") -> bool:
        return self.n == other.n and self.canonical_key() == other.canonical_key()

    def __repr__(self):
        return f"Poset(n={self.n}, covers={self.covers()})"


def enumerate_posets(k: int, cap: int = MAX_ENUMERATION_SIZE) -> list[Poset]:
    """All posets on exactly k elements, one per isomorphism class.

    Candidates are generated as order-compatible relations (every poset has
    a linear extension, so each class shows up), closed transitively,
    deduplicated by canonical form, and returned sorted by that form.
    """
    if k < 1:
        raise ValueError("poset size must be at least 1")
    if k > cap:
        raise ValueError(f"size {k} exceeds the enumeration cap {cap}")
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    closed: set[tuple[int, ...]] = set()
    for bits in range(1 << len(pairs)):
        rows = [1 << i for i in range(k)]
        for idx, (i, j) in enumerate(pairs):
            if bits >> idx & 1:
                rows[i] |= 1 << j
        closed.add(tuple(_transitive_closure_rows(rows)))
    keys = set()
    for rows in sorted(closed):
        keys.add(Poset(_rows_to_matrix(list(rows), k)).canonical_key())
    result = []
    for key in sorted(keys):
        mat = np.frombuffer(key, dtype=bool).reshape(k, k).copy()
        result.append(Poset(mat))
    return result


def _transitive_closure_rows(rows: list[int]) -> list[int]:
    n = len(rows)
    for k in range(n):
        bit = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rk
    return rows


def _rows_to_matrix(rows: list[int], n: int):
    return np.array([[bool(rows[i] >> j & 1) for j in range(n)] for i in range(n)])


def _mask_elements(mask: int) -> tuple[int, ...]:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)

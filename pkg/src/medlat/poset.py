"""Finite posets, up-sets, antichain analytics and enumeration up to isomorphism.

Elements are dense integer indices 0..n-1; the order is a full boolean
matrix, so every comparability query is O(1).  Up-sets are stored both as
boolean membership vectors and as integer bitmasks (bit i = element i),
which keeps set algebra on open sets cheap for every size this package
supports (carriers never exceed 63 elements).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

import networkx as nx
import numpy as np

from .errors import InputError, ResourceLimitError

OPEN_SETS_CAP = 20
POWERSET_CAP = 6
ENUMERATION_CAP = 7


def _as_bool_matrix(leq) -> np.ndarray:
    m = np.asarray(leq, dtype=bool)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"order relation must be a square matrix, got shape {m.shape}")
    return m


def check_partial_order(leq: np.ndarray) -> None:
    """Raise InputError unless leq is reflexive, antisymmetric and transitive."""
    n = leq.shape[0]
    if not leq[np.diag_indices(n)].all():
        i = int(np.flatnonzero(~leq[np.diag_indices(n)])[0])
        raise InputError(f"relation is not reflexive: ({i},{i}) missing")
    sym = leq & leq.T
    sym[np.diag_indices(n)] = False
    if sym.any():
        i, j = map(int, np.argwhere(sym)[0])
        raise InputError(f"relation is not antisymmetric: {i} <= {j} and {j} <= {i}")
    closure = (leq.astype(np.uint8) @ leq.astype(np.uint8)) > 0
    if (closure & ~leq).any():
        i, j = map(int, np.argwhere(closure & ~leq)[0])
        raise InputError(f"relation is not transitive: ({i},{j}) missing")


@dataclass(frozen=True, eq=False)
class Poset:
    """An immutable finite partial order over elements 0..size-1."""

    leq: np.ndarray
    labels: tuple[str, ...]
    name: str = "poset"

    def __post_init__(self):
        self.leq.setflags(write=False)

    @property
    def size(self) -> int:
        return self.leq.shape[0]

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    @property
    def up_masks(self) -> np.ndarray:
        """up_masks[a] = bitmask of the principal up-set of a."""
        bits = np.uint64(1) << np.arange(self.size, dtype=np.uint64)
        return (self.leq * bits[None, :]).sum(axis=1, dtype=np.uint64)

    def minimal_elements(self) -> list[int]:
        below = self.leq.sum(axis=0)  # includes reflexive pair
        return [i for i in range(self.size) if below[i] == 1]

    def maximal_elements(self) -> list[int]:
        above = self.leq.sum(axis=1)
        return [i for i in range(self.size) if above[i] == 1]

    def __repr__(self):
        return f"Poset({self.name!r}, size={self.size})"


@dataclass(frozen=True, eq=False)
class UpSet:
    """An upward-closed subset of a poset, as a boolean membership vector."""

    poset: Poset
    members: np.ndarray

    def __post_init__(self):
        self.members.setflags(write=False)

    @property
    def mask(self) -> int:
        return int(sum(1 << i for i in np.flatnonzero(self.members)))

    def indices(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.members)]

    def __repr__(self):
        return f"UpSet({self.indices()})"


def make_poset(leq, labels=None, name: str = "poset") -> Poset:
    m = _as_bool_matrix(leq)
    check_partial_order(m)
    n = m.shape[0]
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    else:
        labels = tuple(labels)
        if len(labels) != n:
            raise InputError(f"expected {n} labels, got {len(labels)}")
    return Poset(m.copy(), labels, name)


def chain_poset(n: int) -> Poset:
    if n < 0:
        raise InputError("chain length must be nonnegative")
    leq = np.triu(np.ones((n, n), dtype=bool))
    return Poset(leq, tuple(str(i) for i in range(n)), f"chain{n}")


def antichain_poset(n: int) -> Poset:
    return Poset(np.eye(n, dtype=bool), tuple(str(i) for i in range(n)), f"antichain{n}")


def up_closure(p: Poset, seed) -> UpSet:
    """Least up-closed superset of seed (empty seed gives the empty up-set)."""
    members = np.zeros(p.size, dtype=bool)
    for i in seed:
        i = int(i)
        if not 0 <= i < p.size:
            raise InputError(f"element index {i} out of range for poset of size {p.size}")
        members |= p.leq[i]
    return UpSet(p, members)


def _open_masks_filter(p: Poset) -> list[int]:
    n = p.size
    idx = np.arange(1 << n, dtype=np.uint32)
    members = (idx[:, None] >> np.arange(n, dtype=np.uint32)[None, :]) & 1
    members = members.astype(bool)
    closure = (members.astype(np.uint8) @ p.leq.astype(np.uint8)) > 0
    ok = ~(closure & ~members).any(axis=1)
    return [int(i) for i in idx[ok]]


def _open_masks_frontier(p: Poset) -> list[int]:
    base = [int(m) for m in p.up_masks]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for b in base:
                v = u | b
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return sorted(seen)


def open_sets(p: Poset, cap: int = OPEN_SETS_CAP) -> list[UpSet]:
    """All up-closed subsets of p, in ascending bitmask order."""
    if p.size > cap:
        raise ResourceLimitError(
            f"open-set enumeration refused: poset has {p.size} elements, cap is {cap}"
        )
    if p.size <= 16:
        masks = sorted(_open_masks_filter(p))
    else:
        masks = _open_masks_frontier(p)
    out = []
    for mask in masks:
        members = np.array([(mask >> i) & 1 for i in range(p.size)], dtype=bool)
        out.append(UpSet(p, members))
    return out


def powerset_poset(n: int, cap: int = POWERSET_CAP) -> Poset:
    """Nonempty subsets of {0..n-1} ordered by reverse inclusion (full set is minimum)."""
    if n < 1:
        raise InputError("powerset_poset needs n >= 1")
    if n > cap:
        raise ResourceLimitError(f"powerset_poset cap is {cap}, got n={n}")
    size = (1 << n) - 1
    sets = [m + 1 for m in range(size)]  # element i corresponds to bitmask i+1
    leq = np.zeros((size, size), dtype=bool)
    for i, s in enumerate(sets):
        for j, t in enumerate(sets):
            leq[i, j] = (s | t) == s  # s >= t as sets
    labels = tuple("{" + ",".join(str(b) for b in range(n) if s >> b & 1) + "}" for s in sets)
    return Poset(leq, labels, f"2^{n}-{{}}")


def down_sets_masks(p: Poset, cap: int = OPEN_SETS_CAP) -> list[int]:
    """Bitmasks of all downward-closed subsets (complements of the up-sets)."""
    full = (1 << p.size) - 1
    return sorted(full ^ u.mask for u in open_sets(p, cap))


# ---------------------------------------------------------------------------
# Canonical forms and enumeration up to isomorphism
# ---------------------------------------------------------------------------

def _refine_colors(leq: np.ndarray) -> list[int]:
    n = leq.shape[0]
    colors = [(int(leq[:, i].sum()), int(leq[i, :].sum())) for i in range(n)]
    for _ in range(n):
        sig = [
            (colors[i], tuple(sorted(colors[j] for j in range(n) if leq[j, i] and j != i)),
             tuple(sorted(colors[j] for j in range(n) if leq[i, j] and j != i)))
            for i in range(n)
        ]
        ranked = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [ranked[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            colors = new
            break
        colors = new
    return colors


def _candidate_perms(leq: np.ndarray):
    """Permutations compatible with the color refinement, grouped by color class."""
    n = leq.shape[0]
    colors = _refine_colors(leq)
    groups: dict[int, list[int]] = {}
    for i, c in enumerate(colors):
        groups.setdefault(c, []).append(i)
    ordered = [groups[c] for c in sorted(groups)]
    for parts in itertools.product(*(itertools.permutations(g) for g in ordered)):
        perm = [i for part in parts for i in part]
        yield perm


def canonical_form(p: Poset | np.ndarray) -> bytes:
    """Lexicographically minimal relation matrix over color-compatible relabelings."""
    leq = p.leq if isinstance(p, Poset) else _as_bool_matrix(p)
    best = None
    for perm in _candidate_perms(leq):
        idx = np.asarray(perm)
        key = leq[np.ix_(idx, idx)].astype(np.uint8).tobytes()
        if best is None or key < best:
            best = key
    return best


def posets_isomorphic(p: Poset, q: Poset) -> bool:
    if p.size != q.size:
        return False
    return canonical_form(p) == canonical_form(q)


@lru_cache(maxsize=None)
def _enumerate_canonical(n: int) -> tuple[bytes, ...]:
    if n == 1:
        return (canonical_form(make_poset(np.ones((1, 1), dtype=bool))),)
    seen: set[bytes] = set()
    for key in _enumerate_canonical(n - 1):
        base = np.frombuffer(key, dtype=np.uint8).reshape(n - 1, n - 1).astype(bool)
        parent = Poset(base.copy(), tuple(str(i) for i in range(n - 1)))
        # adding one new maximal element; its strict down-set is any down-closed set
        for dmask in down_sets_masks(parent, cap=n - 1):
            leq = np.zeros((n, n), dtype=bool)
            leq[: n - 1, : n - 1] = base
            leq[n - 1, n - 1] = True
            for i in range(n - 1):
                if dmask >> i & 1:
                    leq[i, n - 1] = True
            seen.add(canonical_form(leq))
    return tuple(sorted(seen))


def enumerate_posets(n: int, cap: int = ENUMERATION_CAP) -> list[Poset]:
    """One representative per isomorphism class of n-element posets."""
    if n < 1:
        raise InputError("enumerate_posets needs n >= 1")
    if n > cap:
        raise ResourceLimitError(f"poset enumeration cap is {cap}, got n={n}")
    out = []
    for k, key in enumerate(_enumerate_canonical(n)):
        leq = np.frombuffer(key, dtype=np.uint8).reshape(n, n).astype(bool)
        out.append(Poset(leq, tuple(str(i) for i in range(n)), f"P{n}.{k}"))
    return out


def max_antichain_size(leq) -> int:
    """Size of the largest pairwise-incomparable subset of a partial order.

    Uses Dilworth's theorem: a minimum chain cover of the order has the same
    size as a maximum antichain, and the cover size is n minus a maximum
    matching in the bipartite comparability graph.
    """
    m = _as_bool_matrix(leq)
    check_partial_order(m)
    n = m.shape[0]
    g = nx.Graph()
    left = [("u", i) for i in range(n)]
    g.add_nodes_from(left, bipartite=0)
    g.add_nodes_from((("v", i) for i in range(n)), bipartite=1)
    for i in range(n):
        for j in range(n):
            if i != j and m[i, j]:
                g.add_edge(("u", i), ("v", j))
    matching = nx.bipartite.maximum_matching(g, top_nodes=left)
    return n - len(matching) // 2


# ---------------------------------------------------------------------------
# JSON poset files
# ---------------------------------------------------------------------------

def poset_from_dict(d: dict) -> Poset:
    try:
        labels = list(d["elements"])
        pairs = d["le"]
    except (KeyError, TypeError) as e:
        raise InputError(f"poset file needs 'elements' and 'le' keys: {e}")
    n = len(labels)
    leq = np.eye(n, dtype=bool)
    for pair in pairs:
        if len(pair) != 2:
            raise InputError(f"bad le pair {pair!r}")
        i, j = int(pair[0]), int(pair[1])
        if not (0 <= i < n and 0 <= j < n):
            raise InputError(f"le pair {pair!r} out of range for {n} elements")
        leq[i, j] = True
    check_partial_order(leq)
    return Poset(leq, tuple(str(x) for x in labels), str(d.get("name", "poset")))


def poset_to_dict(p: Poset) -> dict:
    pairs = [[int(i), int(j)] for i in range(p.size) for j in range(p.size)
             if i != j and p.leq[i, j]]
    return {"name": p.name, "elements": list(p.labels), "le": pairs}


def load_poset(path: str) -> Poset:
    with open(path) as f:
        return poset_from_dict(json.load(f))

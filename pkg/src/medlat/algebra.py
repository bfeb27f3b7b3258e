"""Finite Brouwer algebras as table-backed structures.

A Brouwer algebra here is a bounded distributive lattice with the
co-implication  a -> b = min{c : a + c >= b}  (order-dual of a Heyting
algebra); the *least* element is the designated truth value.  All four
tables (order, join, meet, implication) are precomputed numpy arrays, so
every query downstream of construction is a table lookup.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import InputError, ResourceLimitError
from .poset import (
    OPEN_SETS_CAP,
    Poset,
    UpSet,
    check_partial_order,
    chain_poset,
    open_sets,
    powerset_poset,
    up_closure,
)

VALIDATE_CAP = 320
BN_CAP = 5


@dataclass(frozen=True, eq=False)
class BrouwerAlgebra:
    leq: np.ndarray          # bool (m, m)
    join: np.ndarray         # int32 (m, m), the lattice +
    meet: np.ndarray         # int32 (m, m), the lattice x
    imp: np.ndarray          # int32 (m, m)
    bottom: int
    top: int
    labels: tuple[str, ...]
    provenance: str
    poset: Poset | None = None
    open_masks: np.ndarray | None = None  # uint64 per element, when poset-backed

    def __post_init__(self):
        for a in (self.leq, self.join, self.meet, self.imp):
            a.setflags(write=False)

    @property
    def size(self) -> int:
        return self.leq.shape[0]

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    @property
    def lt(self) -> np.ndarray:
        out = self.leq & ~np.eye(self.size, dtype=bool)
        return out

    def check_element(self, x: int) -> int:
        x = int(x)
        if not 0 <= x < self.size:
            raise InputError(f"element index {x} out of range for algebra of size {self.size}")
        return x

    def __repr__(self):
        return f"BrouwerAlgebra({self.provenance!r}, size={self.size})"


def neg(a: BrouwerAlgebra, x: int) -> int:
    """Pseudo-complement toward the top:  -x = x -> 1."""
    return int(a.imp[a.check_element(x), a.top])


# ---------------------------------------------------------------------------
# construction from a poset
# ---------------------------------------------------------------------------

def _index_of_masks(sorted_masks: np.ndarray, wanted: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(sorted_masks, wanted)
    if not (sorted_masks[idx] == wanted).all():
        raise InputError("internal: mask not found among open sets")
    return idx.astype(np.int32)


def from_poset(p: Poset, open_cap: int = OPEN_SETS_CAP) -> BrouwerAlgebra:
    """The algebra of up-closed subsets of p, ordered by reverse inclusion.

    join = intersection, meet = union, bottom = whole carrier, top = empty
    set, and  U -> V = {a : [a) & U <= V}.
    """
    opens = open_sets(p, cap=open_cap)
    masks = np.array([u.mask for u in opens], dtype=np.uint64)  # ascending
    m = len(masks)
    up = p.up_masks

    leq = np.empty((m, m), dtype=bool)
    join = np.empty((m, m), dtype=np.int32)
    meet = np.empty((m, m), dtype=np.int32)
    block = max(1, (1 << 22) // max(m, 1))
    for lo in range(0, m, block):
        hi = min(lo + block, m)
        chunk = masks[lo:hi, None]
        leq[lo:hi] = (chunk & masks[None, :]) == masks[None, :]  # U >= V as sets
        join[lo:hi] = _index_of_masks(masks, chunk & masks[None, :])
        meet[lo:hi] = _index_of_masks(masks, chunk | masks[None, :])

    imp_m = kernels.imp_masks(masks, up)
    imp = np.empty((m, m), dtype=np.int32)
    for lo in range(0, m, block):
        hi = min(lo + block, m)
        imp[lo:hi] = _index_of_masks(masks, imp_m[lo:hi])

    labels = tuple(
        "{" + ",".join(p.labels[i] for i in u.indices()) + "}" for u in opens
    )
    return BrouwerAlgebra(
        leq=leq, join=join, meet=meet, imp=imp,
        bottom=m - 1, top=0,
        labels=labels, provenance=f"B({p.name})",
        poset=p, open_masks=masks,
    )


def from_tables(leq, join, meet, imp, bottom, top, labels=None,
                provenance: str = "tables") -> BrouwerAlgebra:
    """Wrap raw tables without validating the laws (see validate)."""
    leq = np.asarray(leq, dtype=bool)
    m = leq.shape[0]
    join = np.asarray(join, dtype=np.int32)
    meet = np.asarray(meet, dtype=np.int32)
    imp = np.asarray(imp, dtype=np.int32)
    for t in (join, meet, imp):
        if t.shape != (m, m):
            raise InputError(f"table shape {t.shape} does not match size {m}")
        if t.min(initial=0) < 0 or t.max(initial=0) >= m:
            raise InputError("table entries out of element range")
    if labels is None:
        labels = tuple(f"e{i}" for i in range(m))
    return BrouwerAlgebra(leq.copy(), join.copy(), meet.copy(), imp.copy(),
                          int(bottom), int(top), tuple(labels), provenance)


@lru_cache(maxsize=None)
def bn(n: int) -> BrouwerAlgebra:
    """The level-n algebra: opens of the nonempty subsets of {0..n-1} by reverse inclusion."""
    if n < 1:
        raise InputError("bn needs n >= 1")
    if n > BN_CAP:
        raise ResourceLimitError(f"bn cap is {BN_CAP}, got n={n}")
    p = powerset_poset(n, cap=BN_CAP)
    a = from_poset(p, open_cap=p.size)
    return BrouwerAlgebra(a.leq, a.join, a.meet, a.imp, a.bottom, a.top,
                          a.labels, f"bn:{n}", a.poset, a.open_masks)


@lru_cache(maxsize=None)
def chain_algebra(m: int) -> BrouwerAlgebra:
    if m < 1:
        raise InputError("chain algebra needs at least one element")
    a = from_poset(chain_poset(m - 1))
    return BrouwerAlgebra(a.leq, a.join, a.meet, a.imp, a.bottom, a.top,
                          a.labels, f"chain:{m}", a.poset, a.open_masks)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple


def validate(a: BrouwerAlgebra, cap: int = VALIDATE_CAP) -> list[Violation]:
    """Exhaustively check the Brouwer-algebra laws; empty list means valid.

    Each violated law is reported once, with a minimal witness tuple.
    """
    m = a.size
    if m > cap:
        raise ResourceLimitError(
            f"validate is cubic in size; {m} elements exceeds cap {cap}")
    out: list[Violation] = []
    try:
        check_partial_order(a.leq)
    except InputError as e:
        out.append(Violation("order", (str(e),)))
        return out

    if not a.leq[a.bottom, :].all():
        out.append(Violation("bottom", (int(np.flatnonzero(~a.leq[a.bottom])[0]),)))
    if not a.leq[:, a.top].all():
        out.append(Violation("top", (int(np.flatnonzero(~a.leq[:, a.top])[0]),)))

    ar = np.arange(m)
    # join is the least upper bound
    ub_ok = a.leq[ar[:, None], a.join] & a.leq[ar[None, :], a.join]
    if not ub_ok.all():
        i, j = map(int, np.argwhere(~ub_ok)[0])
        out.append(Violation("join-upper-bound", (i, j)))
    common_ub = a.leq[:, None, :] & a.leq[None, :, :]          # (a, b, c)
    least = a.leq[a.join]                                       # (a, b, c)
    bad = common_ub & ~least
    if bad.any():
        i, j, c = map(int, np.argwhere(bad)[0])
        out.append(Violation("join-least", (i, j, c)))

    # meet is the greatest lower bound
    lb_ok = a.leq[a.meet, ar[:, None]] & a.leq[a.meet, ar[None, :]]
    if not lb_ok.all():
        i, j = map(int, np.argwhere(~lb_ok)[0])
        out.append(Violation("meet-lower-bound", (i, j)))
    common_lb = a.leq.T[:, None, :] & a.leq.T[None, :, :]      # c <= a and c <= b
    greatest = a.leq.T[a.meet]                                  # c <= meet(a,b)
    bad = common_lb & ~greatest
    if bad.any():
        i, j, c = map(int, np.argwhere(bad)[0])
        out.append(Violation("meet-greatest", (i, j, c)))

    # distributivity: a x (b + c) = (a x b) + (a x c)
    lhs = a.meet[ar[:, None, None], a.join[None, :, :]]
    rhs = a.join[a.meet[:, :, None], a.meet[:, None, :]]
    if (lhs != rhs).any():
        i, j, c = map(int, np.argwhere(lhs != rhs)[0])
        out.append(Violation("distributivity", (i, j, c)))

    # residuation: imp(a,b) is the least c with a + c >= b
    reach = a.leq[ar[None, :], a.join[ar[:, None], a.imp]]      # b <= a + (a->b)
    if not reach.all():
        i, j = map(int, np.argwhere(~reach)[0])
        out.append(Violation("residuation-reaches", (i, j)))
    covers = a.leq[ar[None, :, None], a.join[:, None, :]]       # (a, b, c): b <= a + c
    minimal = a.leq[a.imp]                                      # (a, b, c): a->b <= c
    bad = covers & ~minimal
    if bad.any():
        i, j, c = map(int, np.argwhere(bad)[0])
        out.append(Violation("residuation-minimal", (i, j, c)))
    return out


def is_distributive(a: BrouwerAlgebra) -> bool:
    ar = np.arange(a.size)
    lhs = a.meet[ar[:, None, None], a.join[None, :, :]]
    rhs = a.join[a.meet[:, :, None], a.meet[:, None, :]]
    return bool((lhs == rhs).all())


# ---------------------------------------------------------------------------
# irreducibles and representations
# ---------------------------------------------------------------------------

def join_irreducible(a: BrouwerAlgebra, x: int) -> bool:
    """No b, c strictly below x join to x (strict rule: bottom counts as irreducible)."""
    x = a.check_element(x)
    below = np.flatnonzero(a.leq[:, x] & (np.arange(a.size) != x))
    if below.size == 0:
        return True
    return not (a.join[np.ix_(below, below)] == x).any()


def meet_irreducible(a: BrouwerAlgebra, x: int) -> bool:
    x = a.check_element(x)
    above = np.flatnonzero(a.leq[x, :] & (np.arange(a.size) != x))
    if above.size == 0:
        return True
    return not (a.meet[np.ix_(above, above)] == x).any()


def irreducibles(a: BrouwerAlgebra) -> tuple[list[int], list[int]]:
    """(meet_irreducibles, join_irreducibles), each sorted by element index."""
    meets = [x for x in range(a.size) if meet_irreducible(a, x)]
    joins = [x for x in range(a.size) if join_irreducible(a, x)]
    return meets, joins


def meet_irreducible_decomposition(a: BrouwerAlgebra, x: int) -> list[int]:
    """The unique antichain of meet-irreducibles whose meet is x
    (the minimal meet-irreducibles above x)."""
    x = a.check_element(x)
    if not is_distributive(a):
        raise InputError("meet_irreducible_decomposition requires a distributive algebra")
    above = [y for y in range(a.size) if a.leq[x, y] and meet_irreducible(a, y)]
    minimal = [y for y in above
               if not any(a.leq[z, y] and z != y for z in above)]
    acc = a.top
    for y in minimal:
        acc = int(a.meet[acc, y])
    if acc != x:
        raise InputError(f"decomposition failed for element {x} (not distributive?)")
    return sorted(minimal)


def open_antichain_representation(a: BrouwerAlgebra, u: int | UpSet) -> list[int]:
    """Antichain of minimal poset elements generating the open u (poset-backed algebras)."""
    if a.poset is None or a.open_masks is None:
        raise InputError("algebra has no poset provenance")
    p = a.poset
    if isinstance(u, UpSet):
        mask = u.mask
        if mask not in set(int(x) for x in a.open_masks):
            raise InputError("subset is not an open set of the underlying poset")
    else:
        mask = int(a.open_masks[a.check_element(u)])
    members = [i for i in range(p.size) if mask >> i & 1]
    mem = set(members)
    minimal = [i for i in members
               if not any(j != i and p.leq[j, i] for j in mem)]
    rebuilt = up_closure(p, minimal).mask
    if rebuilt != mask:
        raise InputError("subset is not up-closed")
    return sorted(minimal)


# ---------------------------------------------------------------------------
# intervals and factors
# ---------------------------------------------------------------------------

def interval(a: BrouwerAlgebra, lo: int, hi: int) -> BrouwerAlgebra:
    """The interval [lo, hi] with inherited lattice operations and
    implication  u ->' v = (u -> v) + lo."""
    lo = a.check_element(lo)
    hi = a.check_element(hi)
    if not a.leq[lo, hi]:
        raise InputError(f"interval needs lo <= hi, got {lo} !<= {hi}")
    elems = np.flatnonzero(a.leq[lo, :] & a.leq[:, hi])
    pos = np.full(a.size, -1, dtype=np.int32)
    pos[elems] = np.arange(len(elems), dtype=np.int32)
    sub = np.ix_(elems, elems)
    join = pos[a.join[sub]]
    meet = pos[a.meet[sub]]
    imp = pos[a.join[a.imp[sub], lo]]
    leq = a.leq[sub]
    labels = tuple(a.labels[i] for i in elems)
    return BrouwerAlgebra(leq, join, meet, imp,
                          int(pos[lo]), int(pos[hi]), labels,
                          f"interval({a.provenance},{lo},{hi})")


@dataclass(frozen=True, eq=False)
class FactorResult:
    algebra: BrouwerAlgebra
    class_of: np.ndarray          # element index -> class index
    representatives: tuple[int, ...]
    degenerate: bool
    iso_to_initial_segment: "AlgebraMap | None"


def factor_by_principal_filter(a: BrouwerAlgebra, f: int,
                               find_iso: bool = True) -> FactorResult:
    """Quotient by the principal filter of f:  b <= c in the factor iff
    b x d <= c for some d >= f.  The quotient operations are rebuilt from
    the quotient order (not transported), so the isomorphism with the
    initial segment [0, f] is found by search, as an independent check.
    """
    f = a.check_element(f)
    m = a.size
    filt = np.flatnonzero(a.leq[f, :])
    reach = np.zeros((m, m), dtype=bool)
    for d in filt:
        reach |= a.leq[a.meet[:, d], :]
    same = reach & reach.T
    class_of = np.full(m, -1, dtype=np.int32)
    reps: list[int] = []
    for x in range(m):
        if class_of[x] >= 0:
            continue
        k = len(reps)
        members = np.flatnonzero(same[x, :] & (class_of < 0))
        class_of[members] = k
        reps.append(x)
    k = len(reps)
    leq_q = np.zeros((k, k), dtype=bool)
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            leq_q[i, j] = reach[r, s]
    join_q = np.empty((k, k), dtype=np.int32)
    meet_q = np.empty((k, k), dtype=np.int32)
    imp_q = np.empty((k, k), dtype=np.int32)
    for i in range(k):
        for j in range(k):
            ub = np.flatnonzero(leq_q[i, :] & leq_q[j, :])
            join_q[i, j] = _unique_extreme(leq_q, ub, least=True)
            lb = np.flatnonzero(leq_q[:, i] & leq_q[:, j])
            meet_q[i, j] = _unique_extreme(leq_q, lb, least=False)
    for i in range(k):
        for j in range(k):
            cand = np.flatnonzero(leq_q[j, join_q[i, :]])
            imp_q[i, j] = _unique_extreme(leq_q, cand, least=True)
    bottom_q = int(class_of[a.bottom])
    top_q = int(class_of[a.top])
    labels = tuple(f"[{a.labels[r]}]" for r in reps)
    alg = BrouwerAlgebra(leq_q, join_q, meet_q, imp_q, bottom_q, top_q,
                         labels, f"factor({a.provenance},{f})")
    iso = None
    if find_iso and k > 1:
        iso = is_isomorphic(alg, interval(a, a.bottom, f))
    return FactorResult(alg, class_of, tuple(reps), k == 1, iso)


def _unique_extreme(leq_q: np.ndarray, cand: np.ndarray, least: bool) -> int:
    for c in cand:
        ok = leq_q[c, cand].all() if least else leq_q[cand, c].all()
        if ok:
            return int(c)
    raise InputError("quotient order has no unique bound (not a lattice congruence?)")


# ---------------------------------------------------------------------------
# maps between algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AlgebraMap:
    source: BrouwerAlgebra
    target: BrouwerAlgebra
    image: np.ndarray  # element index in source -> element index in target

    def __post_init__(self):
        if len(self.image) != self.source.size:
            raise InputError("map must be total on the source carrier")
        self.image.setflags(write=False)

    def __call__(self, x: int) -> int:
        return int(self.image[self.source.check_element(x)])

    def is_bijective(self) -> bool:
        return (self.source.size == self.target.size
                and len(set(int(i) for i in self.image)) == self.source.size)


def identity_map(a: BrouwerAlgebra) -> AlgebraMap:
    return AlgebraMap(a, a, np.arange(a.size, dtype=np.int32))


def is_b_homomorphism(f: AlgebraMap) -> tuple[bool, tuple | None]:
    """True iff f preserves join, meet, imp and both bounds; otherwise the
    first violating (operation, pair)."""
    s, t, img = f.source, f.target, f.image
    if img[s.bottom] != t.bottom:
        return False, ("bottom", (s.bottom,))
    if img[s.top] != t.top:
        return False, ("top", (s.top,))
    for name, op_s, op_t in (("join", s.join, t.join),
                             ("meet", s.meet, t.meet),
                             ("imp", s.imp, t.imp)):
        lhs = img[op_s]
        rhs = op_t[img[:, None], img[None, :]]
        bad = lhs != rhs
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            return False, (name, (i, j))
    return True, None


@dataclass(frozen=True, eq=False)
class PlusMapResult:
    map: AlgebraMap
    surjective: bool


def plus_a_map(a: BrouwerAlgebra, shift: int, c: int) -> PlusMapResult:
    """The map u |-> u + shift from [0, c] to [shift, c + shift]."""
    shift = a.check_element(shift)
    c = a.check_element(c)
    b = int(a.join[c, shift])
    src = interval(a, a.bottom, c)
    tgt = interval(a, shift, b)
    src_elems = np.flatnonzero(a.leq[:, c])
    tgt_elems = np.flatnonzero(a.leq[shift, :] & a.leq[:, b])
    pos_tgt = np.full(a.size, -1, dtype=np.int32)
    pos_tgt[tgt_elems] = np.arange(len(tgt_elems), dtype=np.int32)
    image = pos_tgt[a.join[src_elems, shift]]
    if (image < 0).any():
        raise InputError("internal: image escapes the target interval")
    amap = AlgebraMap(src, tgt, image.astype(np.int32))
    surj = len(set(int(i) for i in image)) == tgt.size
    return PlusMapResult(amap, surj)


# ---------------------------------------------------------------------------
# isomorphism search
# ---------------------------------------------------------------------------

def _ji_fingerprints(a: BrouwerAlgebra, ji: list[int]):
    sub = {x: i for i, x in enumerate(ji)}
    fp = []
    for x in ji:
        below = sum(1 for y in ji if a.leq[y, x])
        above = sum(1 for y in ji if a.leq[x, y])
        deg_below = int(a.leq[:, x].sum())
        deg_above = int(a.leq[x, :].sum())
        fp.append((below, above, deg_below, deg_above))
    return fp, sub


def is_isomorphic(a1: BrouwerAlgebra, a2: BrouwerAlgebra) -> AlgebraMap | None:
    """A bijective B-homomorphism a1 -> a2, or None.

    Backtracks over images of the join-irreducible elements (they determine
    a finite distributive lattice), then verifies every operation table.
    """
    if a1.size != a2.size:
        return None
    ji1 = [x for x in range(a1.size) if x != a1.bottom and join_irreducible(a1, x)]
    ji2 = [x for x in range(a2.size) if x != a2.bottom and join_irreducible(a2, x)]
    if len(ji1) != len(ji2):
        return None
    fp1, _ = _ji_fingerprints(a1, ji1)
    fp2, _ = _ji_fingerprints(a2, ji2)
    if sorted(fp1) != sorted(fp2):
        return None
    n = len(ji1)
    order1 = sorted(range(n), key=lambda i: (fp1[i], ji1[i]))
    cand = [[j for j in range(n) if fp2[j] == fp1[i]] for i in range(n)]

    assign: list[int] = []
    used = [False] * n

    def consistent(i_pos: int, j: int) -> bool:
        xi = ji1[order1[i_pos]]
        yj = ji2[j]
        for k_pos in range(i_pos):
            xk = ji1[order1[k_pos]]
            yk = ji2[assign[k_pos]]
            if bool(a1.leq[xi, xk]) != bool(a2.leq[yj, yk]):
                return False
            if bool(a1.leq[xk, xi]) != bool(a2.leq[yk, yj]):
                return False
        return True

    def build() -> AlgebraMap | None:
        ji_map = {ji1[order1[p]]: ji2[assign[p]] for p in range(n)}
        image = np.empty(a1.size, dtype=np.int32)
        for x in range(a1.size):
            acc = a2.bottom
            for j in ji1:
                if a1.leq[j, x]:
                    acc = int(a2.join[acc, ji_map[j]])
            image[x] = acc
        f = AlgebraMap(a1, a2, image)
        if not f.is_bijective():
            return None
        ok, _ = is_b_homomorphism(f)
        return f if ok else None

    def backtrack(i_pos: int) -> AlgebraMap | None:
        if i_pos == n:
            return build()
        for j in cand[order1[i_pos]]:
            if used[j] or not consistent(i_pos, j):
                continue
            used[j] = True
            assign.append(j)
            found = backtrack(i_pos + 1)
            if found is not None:
                return found
            assign.pop()
            used[j] = False
        return None

    return backtrack(0)


# ---------------------------------------------------------------------------
# generated subalgebras and the KP predicate
# ---------------------------------------------------------------------------

def generated_subalgebra(a: BrouwerAlgebra, seeds,
                         ops=("join", "meet", "neg", "imp")) -> list[int]:
    """Closure of seeds + {0, 1} under the chosen operations."""
    seeds = [a.check_element(x) for x in seeds]
    if not seeds:
        raise InputError("generated_subalgebra needs at least one seed")
    bad = set(ops) - {"join", "meet", "neg", "imp"}
    if bad:
        raise InputError(f"unknown operations: {sorted(bad)}")
    current = set(seeds) | {a.bottom, a.top}
    while True:
        new = set(current)
        elems = sorted(current)
        for x in elems:
            if "neg" in ops:
                new.add(neg(a, x))
            for y in elems:
                if "join" in ops:
                    new.add(int(a.join[x, y]))
                if "meet" in ops:
                    new.add(int(a.meet[x, y]))
                if "imp" in ops:
                    new.add(int(a.imp[x, y]))
        if new == current:
            return sorted(current)
        current = new


def all_negations_meet_irreducible(a: BrouwerAlgebra) -> tuple[bool, int | None]:
    """True iff -x is meet-irreducible for every element x; else a witness x."""
    checked: dict[int, bool] = {}
    for x in range(a.size):
        nx = neg(a, x)
        if nx not in checked:
            checked[nx] = meet_irreducible(a, nx)
        if not checked[nx]:
            return False, x
    return True, None


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def algebra_to_dict(a: BrouwerAlgebra) -> dict:
    return {
        "size": a.size,
        "bottom": a.bottom,
        "top": a.top,
        "le": a.leq.astype(int).tolist(),
        "join": a.join.tolist(),
        "meet": a.meet.tolist(),
        "imp": a.imp.tolist(),
        "labels": list(a.labels),
        "provenance": a.provenance,
    }


def algebra_to_json(a: BrouwerAlgebra) -> str:
    return json.dumps(algebra_to_dict(a))


def cover_relation(a: BrouwerAlgebra) -> np.ndarray:
    lt = a.leq & ~np.eye(a.size, dtype=bool)
    between = (lt.astype(np.uint8) @ lt.astype(np.uint8)) > 0
    return lt & ~between


def algebra_to_dot(a: BrouwerAlgebra) -> str:
    """Hasse diagram; meet-irreducible elements are drawn as boxes."""
    meets, _ = irreducibles(a)
    mset = set(meets)
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for i in range(a.size):
        shape = "box" if i in mset else "ellipse"
        extra = ""
        if i == a.bottom:
            extra = ", penwidth=2"
        lines.append(f'  n{i} [label="{a.labels[i]}", shape={shape}{extra}];')
    cov = cover_relation(a)
    for i, j in np.argwhere(cov):
        lines.append(f"  n{int(i)} -> n{int(j)};")
    lines.append("}")
    return "\n".join(lines)

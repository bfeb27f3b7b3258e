import itertools

import numpy as np
import pytest

from medlat.algebra import is_b_homomorphism, validate
from medlat.errors import InputError, ResourceLimitError
from medlat.freedist import (
    FreeElement,
    bottom,
    constants,
    free_algebra,
    free_element,
    free_enumerate,
    free_imp,
    free_join,
    free_leq,
    free_meet,
    free_neg,
    generator,
    generator_negations,
    independence_check,
    iso_to_bn,
    parse_free,
    render_free,
    top,
)


# ---------------------------------------------------------------------------
# normal form
# ---------------------------------------------------------------------------

def test_normalization_drops_dominated_components():
    # a0 + a0*a1 = a0  (the larger subset meets to a smaller element)
    e = free_element(2, [(0,), (0, 1)])
    assert e.family == ((0,),)


def test_normalization_deduplicates_and_sorts():
    e = free_element(3, [(2, 0), (1,), (0, 2)])
    assert e.family == ((0, 2), (1,))


def test_normalization_is_idempotent():
    for e in free_enumerate(3):
        assert free_element(3, e.family) == e


def test_constants():
    bot, tp, gens = constants(3)
    assert bot.family == ()
    assert tp.family == ((0,), (1,), (2,))
    assert [g.family for g in gens] == [((0,),), ((1,),), ((2,),)]


def test_free_element_rejects_bad_input():
    with pytest.raises(InputError):
        free_element(2, [()])
    with pytest.raises(InputError):
        free_element(2, [(5,)])
    with pytest.raises(InputError):
        free_element(0, [])


def test_mixed_generator_counts_rejected():
    with pytest.raises(InputError):
        free_join(generator(2, 0), generator(3, 0))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def test_free_sizes():
    assert [len(free_enumerate(n)) for n in range(1, 5)] == [2, 5, 19, 167]


def test_free_enumerate_distinct_and_capped():
    elems = free_enumerate(3)
    assert len(set(elems)) == len(elems)
    with pytest.raises(ResourceLimitError):
        free_enumerate(6)


# ---------------------------------------------------------------------------
# operations against first-principles oracles
# ---------------------------------------------------------------------------

def test_leq_is_a_partial_order():
    elems = free_enumerate(3)
    for a in elems:
        assert free_leq(a, a)
    for a, b in itertools.combinations(elems, 2):
        assert not (free_leq(a, b) and free_leq(b, a))


def test_join_meet_are_bounds():
    elems = free_enumerate(3)
    for a, b in itertools.product(elems, repeat=2):
        j = free_join(a, b)
        m = free_meet(a, b)
        assert free_leq(a, j) and free_leq(b, j)
        assert free_leq(m, a) and free_leq(m, b)
        # least / greatest among all enumerated bounds
        for c in elems:
            if free_leq(a, c) and free_leq(b, c):
                assert free_leq(j, c)
            if free_leq(c, a) and free_leq(c, b):
                assert free_leq(c, m)


def test_lattice_identities():
    elems = free_enumerate(2)
    for a, b in itertools.product(elems, repeat=2):
        assert free_join(a, b) == free_join(b, a)
        assert free_meet(a, b) == free_meet(b, a)
        assert free_join(a, free_meet(a, b)) == a
        assert free_meet(a, free_join(a, b)) == a
    for a, b, c in itertools.product(elems, repeat=3):
        assert (free_meet(a, free_join(b, c))
                == free_join(free_meet(a, b), free_meet(a, c)))


def test_imp_is_residuation():
    elems = free_enumerate(3)
    for a, b in itertools.product(elems, repeat=2):
        r = free_imp(a, b)
        assert free_leq(b, free_join(a, r))
        for c in elems:
            if free_leq(b, free_join(a, c)):
                assert free_leq(r, c)


def test_bounds():
    elems = free_enumerate(3)
    for a in elems:
        assert free_leq(bottom(3), a)
        assert free_leq(a, top(3))


# ---------------------------------------------------------------------------
# tables and the isomorphism
# ---------------------------------------------------------------------------

def test_free_algebra_validates():
    for n in (1, 2, 3):
        alg, elems = free_algebra(n)
        assert alg.size == len(elems)
        assert validate(alg) == []
        assert alg.provenance == f"free:{n}"


def test_iso_to_bn_verified():
    for n in (1, 2, 3, 4):
        amap, elems = iso_to_bn(n)
        assert amap.is_bijective()
        ok, _ = is_b_homomorphism(amap)
        assert ok
        assert len(elems) == amap.source.size


def test_iso_transports_negation():
    amap, elems = iso_to_bn(3)
    from medlat.algebra import neg
    falg, tgt = amap.source, amap.target
    for i, e in enumerate(elems):
        j = elems.index(free_neg(e))
        assert amap(j) == neg(tgt, amap(i))


def test_iso_cap():
    with pytest.raises(ResourceLimitError):
        iso_to_bn(5)


# ---------------------------------------------------------------------------
# negation and independence identities
# ---------------------------------------------------------------------------

def test_generator_negations_report():
    for n in (2, 3, 4):
        rep = generator_negations(n)
        assert rep["ok"] and rep["neg_top_is_bottom"]
        assert len(rep["rows"]) == n
    with pytest.raises(InputError):
        generator_negations(1)


def test_neg_of_generator_explicitly():
    # -a0 = a1 + a2 in the 3-generator lattice, and --a0 = a0
    g0 = generator(3, 0)
    assert free_neg(g0) == free_element(3, [(1,), (2,)])
    assert free_neg(free_neg(g0)) == g0


def test_independence():
    for n in (2, 3, 4):
        for i in range(n):
            rest = [j for j in range(n) if j != i]
            for size in range(len(rest) + 1):
                for comb in itertools.combinations(rest, size):
                    assert not independence_check(n, i, comb)
    with pytest.raises(InputError):
        independence_check(3, 1, [1, 2])


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def test_render_examples():
    assert render_free(bottom(3)) == "0"
    assert render_free(top(3)) == "1"
    assert render_free(free_element(3, [(0, 1), (2,)])) == "a0*a1 + a2"


def test_render_parse_round_trip():
    for n in (1, 2, 3):
        for e in free_enumerate(n):
            assert parse_free(n, render_free(e)) == e


def test_parse_rejects_garbage():
    with pytest.raises(InputError):
        parse_free(2, "a0 + b1")
    with pytest.raises(InputError):
        parse_free(2, "a9")

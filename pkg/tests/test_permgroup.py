"""Permutation machinery: closure, orders, orbit counts, named actions."""

import math
import random

import pytest
from hypothesis import given, strategies as st

from distchrom.permgroup import (
    CapExceeded,
    GroupSpec,
    NotSetwiseStable,
    TooLarge,
    as_tuple,
    closure,
    compose,
    group_order,
    identity,
    induced_action_on_ksets,
    inverse,
    orbit_count_on,
    perm_from_cycles,
    wreath_action,
)


def s_n_gens(n):
    return [perm_from_cycles(n, [(0, 1)]), perm_from_cycles(n, [tuple(range(n))])]


def test_closure_small():
    els = closure([perm_from_cycles(2, [(0, 1)])])
    assert len(els) == 2
    assert as_tuple(els[0]) == (0, 1)  # identity first
    assert len(closure(s_n_gens(4))) == 24


def test_closure_contains_identity_and_is_closed():
    gens = s_n_gens(4)
    els = closure(gens)
    els_set = set(els)
    assert bytes(range(4)) in els_set
    rng = random.Random(0)
    for _ in range(100):
        a, b = rng.choice(els), rng.choice(els)
        assert bytes(compose(a, b)) in els_set
        assert bytes(inverse(a)) in els_set


def test_closure_cap():
    with pytest.raises(CapExceeded):
        closure(s_n_gens(6), cap=100)


def test_closure_size_divides_supergroup():
    sub = closure([perm_from_cycles(4, [(0, 1)]), perm_from_cycles(4, [(2, 3)])])
    sup = closure(s_n_gens(4))
    assert len(sup) % len(sub) == 0


def test_group_order_chain_vs_closure():
    for gens in (s_n_gens(4), s_n_gens(6), [perm_from_cycles(5, [(0, 1, 2, 3, 4)])]):
        assert group_order(gens) == len(closure(gens))


def test_group_order_examples():
    ks = induced_action_on_ksets(6, 2)
    assert ks.degree == 15
    assert group_order(ks.generators) == 720
    assert len(ks.elements()) == 720
    assert group_order([identity(5)]) == 1


def test_group_order_large_without_enumeration():
    # wreath of pair swaps with coordinate permutations: 2^10 * 10!
    g1 = perm_from_cycles(20, [(0, 1)])
    g2 = perm_from_cycles(20, [(0, 2), (1, 3)])
    g3 = perm_from_cycles(20, [tuple(2 * i for i in range(10)), tuple(2 * i + 1 for i in range(10))])
    assert group_order([g1, g2, g3]) == 2**10 * math.factorial(10)


def test_orbit_count_on_examples():
    ident = identity(40)
    theta, fixed = orbit_count_on(ident, range(31))
    assert (theta, fixed) == (31, 31)
    swap = perm_from_cycles(10, [(0, 1)])
    theta, fixed = orbit_count_on(swap, [0, 1, 2, 3, 4])
    assert (theta, fixed) == (4, 3)
    seven_cycle = perm_from_cycles(7, [tuple(range(7))])
    assert orbit_count_on(seven_cycle, range(7)) == (1, 0)


def test_orbit_count_not_setwise_stable():
    swap = perm_from_cycles(10, [(0, 5)])
    with pytest.raises(NotSetwiseStable):
        orbit_count_on(swap, [0, 1, 2])


@given(st.integers(0, 999))
def test_orbit_count_properties(seed):
    rng = random.Random(seed)
    n = rng.randrange(2, 12)
    images = list(range(n))
    rng.shuffle(images)
    perm = tuple(images)
    # a union of cycles of the permutation is always setwise stable
    cycles = []
    seen = set()
    for v in range(n):
        if v in seen:
            continue
        cyc = [v]
        w = perm[v]
        while w != v:
            cyc.append(w)
            w = perm[w]
        seen.update(cyc)
        cycles.append(cyc)
    chosen = [c for c in cycles if rng.random() < 0.6] or cycles[:1]
    subset = [v for c in chosen for v in c]
    theta, fixed = orbit_count_on(perm, subset)
    assert theta == len(chosen)
    assert fixed == sum(1 for c in chosen if len(c) == 1)
    assert fixed <= len(subset)
    assert 2 * theta <= fixed + len(subset)


def test_induced_action_on_ksets():
    spec = induced_action_on_ksets(4, 2)
    assert spec.degree == 6
    assert spec.order() == 24
    tiny = induced_action_on_ksets(2, 1)
    assert tiny.degree == 2
    assert tiny.order() == 2
    with pytest.raises(TooLarge):
        induced_action_on_ksets(3, 3)


def test_wreath_action_orders():
    s3 = GroupSpec(degree=3, generators=s_n_gens(3))
    w = wreath_action(s3, 4)
    assert w.degree == 81
    assert w.order() == 6**4 * 24 == 31104
    s2 = GroupSpec(degree=2, generators=[perm_from_cycles(2, [(0, 1)])])
    assert wreath_action(s2, 2).order() == 8
    trivial = GroupSpec(degree=2, generators=[identity(2)])
    assert wreath_action(trivial, 2).order() == 2
    with pytest.raises(TooLarge):
        wreath_action(GroupSpec(degree=1, generators=[identity(1)]), 2)


@pytest.mark.parametrize("m,n", [(2, 3), (3, 2), (3, 3)])
def test_wreath_order_formula(m, n):
    base = GroupSpec(degree=m, generators=s_n_gens(m) if m > 2 else [perm_from_cycles(2, [(0, 1)])])
    w = wreath_action(base, n)
    assert w.order() == base.order() ** n * math.factorial(n)

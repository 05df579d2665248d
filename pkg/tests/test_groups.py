import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grpd import groups


CATALOG = groups.small_groups(12)


def relabel(table, perm):
    n = len(table)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(tuple(perm[table[inv[a]][inv[b]]] for b in range(n))
                 for a in range(n))


def test_catalog_counts_by_order():
    counts = {}
    for _, t in CATALOG:
        counts[len(t)] = counts.get(len(t), 0) + 1
    assert counts == {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2,
                      10: 2, 11: 1, 12: 5}


def test_catalog_tables_are_groups():
    for _, t in CATALOG:
        groups.validate_table(t)


def test_catalog_pairwise_nonisomorphic_and_canonical_agrees():
    for i, (n1, t1) in enumerate(CATALOG):
        for n2, t2 in CATALOG[i + 1:]:
            if len(t1) != len(t2):
                continue
            iso = groups.is_isomorphic(t1, t2)
            assert iso == (groups.canonical_form(t1)
                           == groups.canonical_form(t2)), (n1, n2)
            assert not iso, (n1, n2)


def test_quaternion_order_profile():
    q8 = groups.dicyclic(2)
    assert sorted(groups.element_order(q8, a) for a in range(8)) == \
        [1, 2, 4, 4, 4, 4, 4, 4]


def test_validate_rejects_non_groups():
    with pytest.raises(groups.InvalidGroupTable):
        groups.validate_table(((0, 1), (1, 1)))  # 1 has no inverse
    with pytest.raises(groups.InvalidGroupTable):
        groups.validate_table(((1, 0), (0, 0)))  # no identity row/col pair
    with pytest.raises(groups.InvalidGroupTable):
        groups.validate_table(())


@settings(deadline=None, max_examples=60)
@given(st.integers(0, len(CATALOG) - 1), st.randoms(use_true_random=False))
def test_canonical_form_invariant_under_relabelling(idx, rnd):
    name, t = CATALOG[idx]
    perm = list(range(len(t)))
    rnd.shuffle(perm)
    t2 = relabel(t, perm)
    groups.validate_table(t2)
    assert groups.canonical_form(t2) == groups.canonical_form(t), name
    assert groups.is_isomorphic(t, t2), name


def oracle_homs(t1, t2):
    """All homomorphisms by raw enumeration of every map."""
    n1, n2 = len(t1), len(t2)
    out = []
    for phi in product(range(n2), repeat=n1):
        if all(phi[t1[a][b]] == t2[phi[a]][phi[b]]
               for a in range(n1) for b in range(n1)):
            out.append(phi)
    return sorted(out)


@pytest.mark.parametrize("t1, t2, expected", [
    (groups.cyclic(2), groups.cyclic(2), 2),
    (groups.cyclic(2), groups.cyclic(3), 1),
    (groups.cyclic(6), groups.dihedral(3), 6),
    (groups.direct_product(groups.cyclic(2), groups.cyclic(2)),
     groups.cyclic(2), 4),
])
def test_enumerate_homs_against_oracle(t1, t2, expected):
    mine = groups.enumerate_homs(t1, t2)
    assert list(mine) == oracle_homs(t1, t2)
    assert len(mine) == expected


def test_find_isomorphism_produces_an_isomorphism():
    rng = random.Random(11)
    for name, t in CATALOG:
        perm = list(range(len(t)))
        rng.shuffle(perm)
        t2 = relabel(t, perm)
        phi = groups.find_isomorphism(t, t2)
        assert phi is not None, name
        n = len(t)
        assert sorted(phi) == list(range(n))
        assert all(phi[t[a][b]] == t2[phi[a]][phi[b]]
                   for a in range(n) for b in range(n))
    assert groups.find_isomorphism(groups.cyclic(4),
                                   groups.direct_product(
                                       groups.cyclic(2),
                                       groups.cyclic(2))) is None

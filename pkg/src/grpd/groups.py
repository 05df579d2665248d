"""Finite group multiplication tables: validation, isomorphism, canonical forms.

Tables are square tuples of tuples over indices 0..n-1 with ``t[a][b]`` the
product a*b.  The identity may sit at any index.  Everything here is exact
brute force sized for the small isotropy groups this package meets (the
hard cap is enforced by callers, default 24).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product


class InvalidGroupTable(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def validate_table(t) -> int:
    """Check the group axioms; returns the identity index."""
    n = len(t)
    if n == 0:
        raise InvalidGroupTable("empty table")
    for row in t:
        if len(row) != n or any(not (0 <= v < n) for v in row):
            raise InvalidGroupTable("table is not square over 0..n-1",
                                    witness=row)
    e = None
    for i in range(n):
        if all(t[i][j] == j and t[j][i] == j for j in range(n)):
            e = i
            break
    if e is None:
        raise InvalidGroupTable("no two-sided identity")
    for a in range(n):
        if not any(t[a][b] == e and t[b][a] == e for b in range(n)):
            raise InvalidGroupTable(f"element {a} has no inverse", witness=a)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    raise InvalidGroupTable(
                        f"associativity fails on ({a}, {b}, {c})",
                        witness=(a, b, c))
    return e


def identity_of(t) -> int:
    n = len(t)
    for i in range(n):
        if all(t[i][j] == j and t[j][i] == j for j in range(n)):
            return i
    raise InvalidGroupTable("no two-sided identity")


def inverse_of(t, a: int) -> int:
    e = identity_of(t)
    for b in range(len(t)):
        if t[a][b] == e:
            return b
    raise InvalidGroupTable(f"element {a} has no inverse", witness=a)


def element_order(t, a: int) -> int:
    e = identity_of(t)
    x, k = a, 1
    while x != e:
        x = t[x][a]
        k += 1
    return k


def _closure(t, gens) -> frozenset:
    e = identity_of(t)
    seen = {e}
    frontier = [e]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = t[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _bfs_order(t, gens) -> list[int]:
    """Deterministic enumeration of the whole group from a generating tuple."""
    e = identity_of(t)
    order = [e]
    pos = {e: 0}
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for g in gens:
            y = t[x][g]
            if y not in pos:
                pos[y] = len(order)
                order.append(y)
    return order


def _generating_sequences(t):
    """All irredundant ordered generating tuples (next gen outside the span)."""
    n = len(t)
    out = []

    def rec(gens, span):
        if len(span) == n:
            out.append(tuple(gens))
            return
        for g in range(n):
            if g in span:
                continue
            rec(gens + [g], _closure(t, gens + [g]))

    rec([], _closure(t, []))
    return out


@lru_cache(maxsize=None)
def canonical_form(t) -> tuple[int, ...]:
    """Isomorphism-invariant flattening: least BFS-relabelled table over all
    irredundant generating tuples.  Equal canonical forms iff isomorphic."""
    n = len(t)
    best = None
    for gens in _generating_sequences(t):
        order = _bfs_order(t, gens)
        pos = {x: i for i, x in enumerate(order)}
        flat = tuple(pos[t[a][b]] for a in order for b in order)
        if best is None or flat < best:
            best = flat
    return best


def unflatten(flat: tuple[int, ...]):
    n = round(len(flat) ** 0.5)
    return tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


def _order_profile(t):
    return tuple(sorted(element_order(t, a) for a in range(len(t))))


def is_isomorphic(t1, t2) -> bool:
    """Brute-force isomorphism test, mapping an irredundant generating
    sequence of t1 into t2 and extending by products (independent of
    canonical_form, so the two decide each other's correctness in tests)."""
    n = len(t1)
    if len(t2) != n:
        return False
    if _order_profile(t1) != _order_profile(t2):
        return False
    gens = _generating_sequences(t1)[0]
    orders = [element_order(t1, g) for g in gens]
    candidates = [[b for b in range(n) if element_order(t2, b) == o]
                  for o in orders]
    order1 = _bfs_order(t1, gens)
    for images in product(*candidates):
        phi = {identity_of(t1): identity_of(t2)}
        ok = True
        for x in order1:
            if x not in phi:
                ok = False
                break
            for g, img in zip(gens, images):
                y = t1[x][g]
                fy = t2[phi[x]][img]
                if y in phi:
                    if phi[y] != fy:
                        ok = False
                        break
                else:
                    phi[y] = fy
            if not ok:
                break
        if not ok or len(set(phi.values())) != n:
            continue
        if all(phi[t1[a][b]] == t2[phi[a]][phi[b]]
               for a in range(n) for b in range(n)):
            return True
    return False


@lru_cache(maxsize=None)
def enumerate_homs(t1, t2) -> tuple[tuple[int, ...], ...]:
    """All group homomorphisms t1 -> t2 as image tuples indexed by t1."""
    n1, n2 = len(t1), len(t2)
    gens = _generating_sequences(t1)[0]
    orders = [element_order(t1, g) for g in gens]
    candidates = [[b for b in range(n2) if orders[i] % element_order(t2, b) == 0]
                  for i in range(len(gens))]
    order1 = _bfs_order(t1, gens)
    out = []
    for images in product(*candidates):
        phi = {identity_of(t1): identity_of(t2)}
        ok = True
        for x in order1:
            for g, img in zip(gens, images):
                y = t1[x][g]
                fy = t2[phi[x]][img]
                if y in phi:
                    if phi[y] != fy:
                        ok = False
                        break
                else:
                    phi[y] = fy
            if not ok:
                break
        if not ok:
            continue
        if all(phi[t1[a][b]] == t2[phi[a]][phi[b]]
               for a in range(n1) for b in range(n1)):
            out.append(tuple(phi[a] for a in range(n1)))
    return tuple(sorted(set(out)))


def find_isomorphism(t1, t2) -> tuple[int, ...] | None:
    """Some isomorphism t1 -> t2 as an image tuple, or None."""
    if len(t1) != len(t2):
        return None
    for phi in enumerate_homs(t1, t2):
        if len(set(phi)) == len(t1):
            return phi
    return None


# ---------------------------------------------------------------------------
# builders


def cyclic(n: int):
    return tuple(tuple((i + j) % n for j in range(n)) for i in range(n))


def direct_product(s, t):
    ns, nt = len(s), len(t)

    def idx(i, j):
        return i * nt + j

    table = [[0] * (ns * nt) for _ in range(ns * nt)]
    for i1 in range(ns):
        for j1 in range(nt):
            for i2 in range(ns):
                for j2 in range(nt):
                    table[idx(i1, j1)][idx(i2, j2)] = idx(s[i1][i2], t[j1][j2])
    return tuple(tuple(row) for row in table)


def dihedral(n: int):
    """Order 2n: pairs (eps, i) = s^eps r^i with s r^i s = r^-i."""

    def idx(eps, i):
        return eps * n + i

    table = [[0] * (2 * n) for _ in range(2 * n)]
    for e1 in range(2):
        for i1 in range(n):
            for e2 in range(2):
                for i2 in range(n):
                    i = (i1 * (-1 if e2 else 1) + i2) % n
                    table[idx(e1, i1)][idx(e2, i2)] = idx((e1 + e2) % 2, i)
    return tuple(tuple(row) for row in table)


def dicyclic(n: int):
    """Order 4n: pairs (eps, i) = b^eps a^i with a^2n = 1, b^2 = a^n,
    b a b^-1 = a^-1.  dicyclic(2) is the quaternion group."""
    m = 2 * n

    def idx(eps, i):
        return eps * m + i

    table = [[0] * (4 * n) for _ in range(4 * n)]
    for e1 in range(2):
        for i1 in range(m):
            for e2 in range(2):
                for i2 in range(m):
                    i = (i1 * (-1 if e2 else 1) + i2) % m
                    if e1 and e2:
                        table[idx(e1, i1)][idx(e2, i2)] = idx(0, (i + n) % m)
                    else:
                        table[idx(e1, i1)][idx(e2, i2)] = idx((e1 + e2) % 2, i)
    return tuple(tuple(row) for row in table)


def _perm_group(gens):
    deg = len(gens[0])
    ident = tuple(range(deg))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(deg))
                if q not in elems:
                    elems.add(q)
                    nxt.append(q)
        frontier = nxt
    ordered = sorted(elems)
    index = {p: i for i, p in enumerate(ordered)}
    table = tuple(tuple(index[tuple(p[q[i]] for i in range(deg))]
                        for q in ordered) for p in ordered)
    return table


def alternating4():
    return _perm_group([(1, 2, 0, 3), (0, 2, 3, 1)])


def symmetric3():
    return dihedral(3)


def small_groups(max_order: int = 12):
    """Representatives of every isomorphism class of order <= max_order."""
    catalog = [
        ("1", cyclic(1)),
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z2xZ2", direct_product(cyclic(2), cyclic(2))),
        ("Z5", cyclic(5)),
        ("Z6", cyclic(6)),
        ("S3", dihedral(3)),
        ("Z7", cyclic(7)),
        ("Z8", cyclic(8)),
        ("Z4xZ2", direct_product(cyclic(4), cyclic(2))),
        ("Z2xZ2xZ2", direct_product(cyclic(2),
                                    direct_product(cyclic(2), cyclic(2)))),
        ("D4", dihedral(4)),
        ("Q8", dicyclic(2)),
        ("Z9", cyclic(9)),
        ("Z3xZ3", direct_product(cyclic(3), cyclic(3))),
        ("Z10", cyclic(10)),
        ("D5", dihedral(5)),
        ("Z11", cyclic(11)),
        ("Z12", cyclic(12)),
        ("Z6xZ2", direct_product(cyclic(6), cyclic(2))),
        ("D6", dihedral(6)),
        ("A4", alternating4()),
        ("Dic3", dicyclic(3)),
    ]
    return [(name, t) for name, t in catalog if len(t) <= max_order]

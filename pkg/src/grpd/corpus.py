"""Seeded random instances: groupoids, functors, covers, descent data.

Every finite groupoid is, up to isomorphism, a disjoint union of
transitive blocks Pair(m) x K with K the isotropy group, so the generator
draws per-orbit (size, group) data from the order <= 6 catalog.  All
randomness flows through an explicit seed; nothing here is nondeterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import groups
from .core import FinGroupoid, StrictArrow, disjoint_union
from .descent import Bundle, Cover, CoverPiece, DescentDatum, descend


@dataclass(frozen=True)
class CorpusConfig:
    seed: int
    count: int = 100
    max_objects: int = 6
    max_isotropy: int = 6
    max_arrows: int = 80
    equivalent_cluster_rate: float = 0.3


def transitive_groupoid(name: str, objects, table) -> FinGroupoid:
    """Pair(objects) x K: arrows (x, y, k) with componentwise composition."""
    objects = tuple(objects)
    table = tuple(tuple(row) for row in table)
    n = len(table)
    e = groups.identity_of(table)

    def aid(x, y, k):
        return f"{x}>{y}:{k}"

    arrows, src, tgt = [], {}, {}
    for x in objects:
        for y in objects:
            for k in range(n):
                a = aid(x, y, k)
                arrows.append(a)
                src[a], tgt[a] = x, y
    comp = {}
    for x in objects:
        for y in objects:
            for z in objects:
                for k1 in range(n):
                    for k2 in range(n):
                        comp[(aid(y, z, k2), aid(x, y, k1))] = \
                            aid(x, z, table[k2][k1])
    inv_idx = {k: groups.inverse_of(table, k) for k in range(n)}
    return FinGroupoid(
        name=name, objects=objects, arrows=tuple(arrows), src=src, tgt=tgt,
        comp=comp, unit={x: aid(x, x, e) for x in objects},
        inv={aid(x, y, k): aid(y, x, inv_idx[k]) for x in objects
             for y in objects for k in range(n)})


def inflate(g: FinGroupoid, copies: dict[str, int]):
    """Blow each object x up into copies[x] isomorphic ones; returns the
    inflated groupoid and the collapsing projection functor, an essential
    equivalence."""
    def o(x, i):
        return f"{x}@{i}"

    def a(c, i, j):
        return f"{c}@{i}>{j}"

    objects = tuple(o(x, i) for x in g.objects for i in range(copies[x]))
    arrows, src, tgt, proj_a = [], {}, {}, {}
    for c in g.arrows:
        x, y = g.src[c], g.tgt[c]
        for i in range(copies[x]):
            for j in range(copies[y]):
                t = a(c, i, j)
                arrows.append(t)
                src[t], tgt[t] = o(x, i), o(y, j)
                proj_a[t] = c
    comp = {}
    for c2 in g.arrows:
        for c1 in g.arrows:
            if (c2, c1) not in g.comp:
                continue
            c = g.comp[(c2, c1)]
            x, y, z = g.src[c1], g.tgt[c1], g.tgt[c2]
            for i in range(copies[x]):
                for j in range(copies[y]):
                    for k in range(copies[z]):
                        comp[(a(c2, j, k), a(c1, i, j))] = a(c, i, k)
    unit = {o(x, i): a(g.unit[x], i, i)
            for x in g.objects for i in range(copies[x])}
    inv = {}
    for c in g.arrows:
        x, y = g.src[c], g.tgt[c]
        for i in range(copies[x]):
            for j in range(copies[y]):
                inv[a(c, i, j)] = a(g.inv[c], j, i)
    big = FinGroupoid(name=f"{g.name}*inflated", objects=objects,
                      arrows=tuple(arrows), src=src, tgt=tgt, comp=comp,
                      unit=unit, inv=inv)
    proj = StrictArrow(
        name=f"collapse_{g.name}", dom=big, cod=g,
        obj_map={o(x, i): x for x in g.objects for i in range(copies[x])},
        arr_map=proj_a)
    return big, proj


def random_groupoid(rng: random.Random, name: str,
                    max_objects: int = 6, max_isotropy: int = 6,
                    skeleton_spec=None, max_arrows: int = 80) -> FinGroupoid:
    """Disjoint union of random transitive blocks.  A skeleton_spec (list
    of group tables) pins the equivalence class while sizes stay random;
    orbit sizes grow only while the total object and arrow budgets allow
    (a block of size m with isotropy K contributes m^2 |K| arrows)."""
    catalog = [t for _, t in groups.small_groups(max_isotropy)]
    if skeleton_spec is None:
        n_orbits = rng.randint(1, max(1, max_objects // 2))
        skeleton_spec = [rng.choice(catalog) for _ in range(n_orbits)]
    buckets = len(skeleton_spec)
    sizes = [1] * buckets

    def arrow_total():
        return sum(s * s * len(t) for s, t in zip(sizes, skeleton_spec))

    for _ in range(rng.randint(0, max(0, max_objects - buckets))):
        i = rng.randrange(buckets)
        sizes[i] += 1
        if sum(sizes) > max_objects or arrow_total() > max_arrows:
            sizes[i] -= 1
    parts = []
    for i, (size, table) in enumerate(zip(sizes, skeleton_spec)):
        objs = [f"{name}o{i}n{j}" for j in range(size)]
        parts.append(transitive_groupoid(f"{name}b{i}", objs, table))
    return disjoint_union(name, parts)


def corpus_groupoids(cfg: CorpusConfig) -> list[FinGroupoid]:
    """Seeded corpus with deliberate clusters of equivalent groupoids
    (same skeleton, different orbit sizes and labels)."""
    rng = random.Random(cfg.seed)
    catalog = [t for _, t in groups.small_groups(cfg.max_isotropy)]
    out: list[FinGroupoid] = []
    cluster_spec = None
    for i in range(cfg.count):
        if cluster_spec is not None and rng.random() < cfg.equivalent_cluster_rate:
            spec = cluster_spec
        else:
            n_orbits = rng.randint(1, max(1, cfg.max_objects // 2))
            spec = [rng.choice(catalog) for _ in range(n_orbits)]
            cluster_spec = spec
        out.append(random_groupoid(rng, f"g{i}", cfg.max_objects,
                                   cfg.max_isotropy, skeleton_spec=spec,
                                   max_arrows=cfg.max_arrows))
    return out


def random_functor(rng: random.Random, a: FinGroupoid,
                   b: FinGroupoid) -> StrictArrow:
    """A random strict arrow a -> b: per component, a random target object,
    a random isotropy homomorphism, and spanning-tree transport."""
    obj_map, arr_map = {}, {}
    for block in a.components:
        rep = block[0]
        tree = a.spanning_arrows(block)
        loops = a.hom_set(rep, rep)
        index = {c: i for i, c in enumerate(loops)}
        table = tuple(tuple(index[a.comp[(p, q)]] for q in loops)
                      for p in loops)
        target = rng.choice(sorted(b.objects))
        b_loops = b.hom_set(target, target)
        b_index = {c: i for i, c in enumerate(b_loops)}
        b_table = tuple(tuple(b_index[b.comp[(p, q)]] for q in b_loops)
                        for p in b_loops)
        hom = rng.choice(groups.enumerate_homs(table, b_table))
        # tree arrows may land anywhere reachable from the target
        imgs = {}
        for x in block:
            if x == rep:
                imgs[x] = b.unit[target]
            else:
                imgs[x] = rng.choice(sorted(b.arrows_from[target]))
            obj_map[x] = b.tgt[imgs[x]]
        for c in a.arrows:
            x, y = a.src[c], a.tgt[c]
            if x not in tree:
                continue
            loop = a.comp[(a.inv[tree[y]], a.comp[(c, tree[x])])]
            theta = b_loops[hom[index[loop]]]
            arr_map[c] = b.comp[(imgs[y], b.comp[(theta, b.inv[imgs[x]])])]
    return StrictArrow(name=f"rf[{a.name}->{b.name}]", dom=a, cod=b,
                       obj_map=obj_map, arr_map=arr_map)


# ---------------------------------------------------------------------------
# descent instances


def random_bundle(rng: random.Random, name: str, base_size: int = 8,
                  max_fibre: int = 5) -> Bundle:
    base = tuple(f"x{i}" for i in range(rng.randint(1, base_size)))
    total, proj = [], {}
    for x in base:
        for j in range(rng.randint(0, max_fibre)):
            e = f"{x}e{j}"
            total.append(e)
            proj[e] = x
    return Bundle(name=name, base=base, total=tuple(total), proj=proj)


def random_cover(rng: random.Random, name: str, base) -> Cover:
    base = tuple(base)
    n_pieces = rng.randint(1, 4)
    pieces = []
    for i in range(n_pieces):
        elements, to_base = [], {}
        for j, x in enumerate(base):
            for k in range(rng.randint(0, 2)):
                u = f"p{i}u{j}c{k}"
                elements.append(u)
                to_base[u] = x
        pieces.append(CoverPiece(name=f"U{i}", elements=tuple(elements),
                                 to_base=to_base))
    # patch joint surjectivity: route every missed base point into piece 0
    hit = {p.to_base[u] for p in pieces for u in p.elements}
    missing = [x for x in base if x not in hit]
    if missing:
        p0 = pieces[0]
        extra = tuple(f"p0fix{i}" for i in range(len(missing)))
        pieces[0] = CoverPiece(
            name=p0.name, elements=p0.elements + extra,
            to_base={**p0.to_base, **dict(zip(extra, missing))})
    return Cover(name=name, base=base, pieces=tuple(pieces))


def scramble_datum(rng: random.Random, d: DescentDatum) -> DescentDatum:
    """Conjugate a datum by random per-point fibre relabellings; preserves
    the cocycle conditions while destroying the canonical pulled-back
    shape, giving honest non-trivial transitions."""
    relabel: dict[str, dict[str, str]] = {}
    new_fibres = {}
    for p in d.cover.pieces:
        fib = d.fibres[p.name]
        mapping = {}
        for u in p.elements:
            elems = list(fib.fibre(u))
            shuffled = [f"{p.name}.{u}.f{i}" for i in range(len(elems))]
            rng.shuffle(elems)
            mapping.update(dict(zip(elems, shuffled)))
        relabel[p.name] = mapping
        new_fibres[p.name] = Bundle(
            name=f"{fib.name}~", base=fib.base,
            total=tuple(sorted(mapping.values())),
            proj={mapping[a]: fib.proj[a] for a in fib.total})
    new_transitions = {}
    for (i, j), table in d.transitions.items():
        new_table = {}
        for (u, v), m in table.items():
            new_table[(u, v)] = {relabel[i][a]: relabel[j][b]
                                 for a, b in m.items()}
        new_transitions[(i, j)] = new_table
    return DescentDatum(name=f"{d.name}~", cover=d.cover, fibres=new_fibres,
                        transitions=new_transitions)


def random_datum(rng: random.Random, name: str, base_size: int = 8,
                 max_fibre: int = 5) -> tuple[Bundle, Cover, DescentDatum]:
    """A valid random datum, produced by descending a random bundle along a
    random cover and scrambling the fibres."""
    bundle = random_bundle(rng, f"{name}A", base_size, max_fibre)
    cover = random_cover(rng, f"{name}C", bundle.base)
    return bundle, cover, scramble_datum(rng, descend(bundle, cover))

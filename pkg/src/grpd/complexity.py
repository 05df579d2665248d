"""Orbits, weak point subgroupoids, the geometric-complexity covering
invariant, deformations between subgroupoids, and locus keys.

The invariant is computed by exact set cover (branch and bound) over the
weak-point invariant subsets; at finite-set scale the admissible cover
pieces are unions of orbits that meet a single orbit, so optimal covers
are small and the search is cheap while staying exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import groups
from .bibundle import Bibundle, LeftAction, RightAction
from .core import (FinGroupoid, GroupoidError, NatTrans, StrictArrow,
                   restrict, same_groupoid)
from .homotopy import skeletonize


class NotInvariant(GroupoidError):
    pass


@dataclass(frozen=True, eq=False)
class OrbitPartition:
    groupoid: FinGroupoid
    blocks: tuple[tuple[str, ...], ...]

    def block_of(self, x: str) -> tuple[str, ...]:
        return self.groupoid.component_of[x]


def orbits(g: FinGroupoid) -> OrbitPartition:
    """Partition of objects by the relation generated by src ~ tgt."""
    return OrbitPartition(groupoid=g, blocks=g.components)


def is_transitive(g: FinGroupoid) -> bool:
    """Exactly one orbit.  The empty groupoid counts as not transitive: it
    admits no equivalence with a one-object groupoid."""
    return len(g.components) == 1


def point_groupoid(name: str, table, elements=None) -> FinGroupoid:
    """One-object groupoid with the given finite group as isotropy."""
    table = tuple(tuple(row) for row in table)
    e = groups.validate_table(table)
    n = len(table)
    if elements is None:
        elements = tuple(f"k{i}" for i in range(n))
    else:
        elements = tuple(elements)
        if len(elements) != n or len(set(elements)) != n:
            raise groups.InvalidGroupTable(
                "element names do not match table size", witness=elements)
    obj = "*"
    return FinGroupoid(
        name=name, objects=(obj,), arrows=elements,
        src={a: obj for a in elements}, tgt={a: obj for a in elements},
        comp={(elements[i], elements[j]): elements[table[i][j]]
              for i in range(n) for j in range(n)},
        unit={obj: elements[e]},
        inv={elements[i]: elements[groups.inverse_of(table, i)]
             for i in range(n)})


@dataclass(frozen=True, eq=False)
class PointCheck:
    """Outcome of the transitive-to-point comparison: an equivalence
    bibundle onto the isotropy point groupoid, or a two-orbit witness."""
    bibundle: Bibundle | None
    point: FinGroupoid | None = None
    witness: tuple[str, str] | None = None

    def __bool__(self):
        return self.bibundle is not None


def morita_point_check(g: FinGroupoid) -> PointCheck:
    """For a transitive groupoid, the equivalence induced by the inclusion
    of the isotropy at the least object: carrier = arrows out of that
    object, left translation by g, right translation by the isotropy."""
    if not g.objects:
        return PointCheck(bibundle=None, witness=None)
    if not is_transitive(g):
        b0, b1 = g.components[0], g.components[1]
        return PointCheck(bibundle=None, witness=(b0[0], b1[0]))
    x0 = g.components[0][0]
    loops = g.hom_set(x0, x0)
    point = restrict(g, (x0,), name=f"pt({g.name})")
    carrier = tuple(sorted(a for a in g.arrows if g.src[a] == x0))
    left = LeftAction(
        groupoid=g, carrier=carrier,
        actor={a: g.tgt[a] for a in carrier},
        act={(eta, a): g.comp[(eta, a)] for a in carrier
             for eta in g.arrows if g.src[eta] == g.tgt[a]})
    right = RightAction(
        groupoid=point, carrier=carrier,
        actor={a: x0 for a in carrier},
        act={(a, k): g.comp[(a, k)] for a in carrier for k in loops})
    return PointCheck(
        bibundle=Bibundle(name=f"pt_equiv_{g.name}", left=left, right=right),
        point=point)


# ---------------------------------------------------------------------------
# subgroupoids


@dataclass(frozen=True, eq=False)
class Subgroupoid:
    """Full subgroupoid on an object subset; invariant when the subset is a
    union of orbits."""
    ambient: FinGroupoid
    objects: tuple[str, ...]

    @property
    def restriction(self) -> FinGroupoid:
        return restrict(self.ambient, self.objects)

    @property
    def is_invariant(self) -> bool:
        keep = set(self.objects)
        return all(set(self.ambient.component_of[x]) <= keep
                   for x in self.objects)

    def __repr__(self):
        return f"Subgroupoid({sorted(self.objects)} in {self.ambient.name})"


def subgroupoid(g: FinGroupoid, objects) -> Subgroupoid:
    objects = tuple(sorted(set(objects)))
    unknown = set(objects) - set(g.objects)
    if unknown:
        raise GroupoidError(f"objects {sorted(unknown)} not in {g.name}",
                            witness=sorted(unknown))
    return Subgroupoid(ambient=g, objects=objects)


@dataclass(frozen=True, eq=False)
class WeakPointWitness:
    """Diagram witnessing that an invariant subgroupoid collapses onto a
    point subgroupoid: the conjugating retraction and its homotopy."""
    point_object: str | None
    collapse: StrictArrow | None   # U -> ambient, image inside the point
    homotopy: NatTrans | None      # inclusion => collapse
    vacuous: bool = False


def is_weak_point_subgroupoid(u: Subgroupoid,
                              g: FinGroupoid) -> WeakPointWitness | None:
    """Weak point test: the inclusion of u is homotopic, inside g, to a
    functor landing in a one-object subgroupoid.  This happens exactly when
    the objects of u sit inside a single orbit; the witness transports every
    object to the orbit's base point along chosen connecting arrows."""
    if not same_groupoid(u.ambient, g):
        raise GroupoidError("subgroupoid of a different ambient groupoid")
    if not u.is_invariant:
        raise NotInvariant(f"{sorted(u.objects)} is not a union of orbits",
                           witness=u.objects)
    if not u.objects:
        return WeakPointWitness(point_object=None, collapse=None,
                                homotopy=None, vacuous=True)
    blocks = {g.component_of[x][0] for x in u.objects}
    if len(blocks) > 1:
        return None
    block = g.component_of[u.objects[0]]
    x0 = block[0]
    tree = g.spanning_arrows(block)
    sub = u.restriction
    incl = StrictArrow(name=f"incl_{sub.name}", dom=sub, cod=g,
                       obj_map={x: x for x in sub.objects},
                       arr_map={a: a for a in sub.arrows})
    t_to = {x: g.inv[tree[x]] for x in sub.objects}  # x -> x0
    collapse = StrictArrow(
        name=f"collapse_{sub.name}", dom=sub, cod=g,
        obj_map={x: x0 for x in sub.objects},
        arr_map={a: g.comp[(t_to[g.tgt[a]],
                            g.comp[(a, g.inv[t_to[g.src[a]]])])]
                 for a in sub.arrows})
    homotopy = NatTrans(source_fun=incl, target_fun=collapse,
                        component={x: t_to[x] for x in sub.objects})
    return WeakPointWitness(point_object=x0, collapse=collapse,
                            homotopy=homotopy)


# ---------------------------------------------------------------------------
# exact cover search


def exact_min_cover(universe: frozenset, candidates: list[frozenset]):
    """Indices of a minimum-cardinality subfamily covering the universe, or
    None when no cover exists.  Branch and bound on the least-covered
    element; deterministic tie-breaking."""
    if not universe:
        return []
    cover_of = {x: [i for i, c in enumerate(candidates) if x in c]
                for x in sorted(universe)}
    if any(not v for v in cover_of.values()):
        return None
    best: list[int] | None = None

    def bound(uncovered):
        # each candidate covers at most max_size new elements
        biggest = max((len(c & uncovered) for c in candidates), default=0)
        if biggest == 0:
            return float("inf")
        return -(-len(uncovered) // biggest)

    def rec(uncovered, chosen):
        nonlocal best
        if not uncovered:
            if best is None or len(chosen) < len(best):
                best = list(chosen)
            return
        if best is not None and len(chosen) + bound(uncovered) >= len(best):
            return
        x = min(uncovered, key=lambda v: (len(cover_of[v]), v))
        for i in cover_of[x]:
            if i in chosen:
                continue
            rec(uncovered - candidates[i], chosen + [i])

    rec(frozenset(universe), [])
    return best


def weak_point_candidates(g: FinGroupoid) -> list[Subgroupoid]:
    """Nonempty invariant subgroupoids passing the weak point test: at
    orbit granularity these are exactly the single orbits."""
    out = []
    for block in g.components:
        u = subgroupoid(g, block)
        if is_weak_point_subgroupoid(u, g) is not None:
            out.append(u)
    return out


@dataclass(frozen=True)
class CoverCertificate:
    pieces: tuple[tuple[str, ...], ...]
    witnesses: tuple[WeakPointWitness, ...]


def cgeo_with_cover(g: FinGroupoid) -> tuple[int, CoverCertificate]:
    """Least number of weak point invariant subgroupoids covering the
    objects, with an optimal cover and per-piece witnesses.  The empty
    groupoid has complexity 0 by convention; finite carriers never force
    the infinite value the codomain allows in general."""
    cands = weak_point_candidates(g)
    sets = [frozenset(u.objects) for u in cands]
    chosen = exact_min_cover(frozenset(g.objects), sets)
    assert chosen is not None, "single orbits always cover"
    pieces = tuple(cands[i].objects for i in chosen)
    witnesses = tuple(is_weak_point_subgroupoid(cands[i], g) for i in chosen)
    return len(chosen), CoverCertificate(pieces=pieces, witnesses=witnesses)


def cgeo(g: FinGroupoid) -> int:
    return cgeo_with_cover(g)[0]


def relative_cgeo(h: Subgroupoid, g: FinGroupoid) -> int:
    """Least number of weak-point-in-g invariant subgroupoids covering the
    objects of h."""
    if not same_groupoid(h.ambient, g):
        raise GroupoidError("subgroupoid of a different ambient groupoid")
    cands = weak_point_candidates(g)
    sets = [frozenset(u.objects) for u in cands]
    chosen = exact_min_cover(frozenset(h.objects), sets)
    assert chosen is not None
    return len(chosen)


# ---------------------------------------------------------------------------
# deformations


@dataclass(frozen=True, eq=False)
class DeformationDiagram:
    """Witness that h deforms into k inside g: a functor carrying h into
    k's objects together with the transporting homotopy."""
    mid: FinGroupoid            # L in the square, here h's restriction
    transport: StrictArrow      # h -> g, image inside k
    homotopy: NatTrans          # inclusion => transport
    inclusion: StrictArrow


def exists_deformation(h: Subgroupoid, k: Subgroupoid,
                       g: FinGroupoid) -> DeformationDiagram | None:
    """Deformation of h into k within g, or None.

    A deformation exists exactly when every orbit meeting h also meets k:
    the homotopy legs can only move objects within their orbits, and
    conversely connecting arrows transport h onto k orbitwise.  The
    returned diagram uses identity legs and the explicit transport."""
    if not (same_groupoid(h.ambient, g) and same_groupoid(k.ambient, g)):
        raise GroupoidError("subgroupoids of a different ambient groupoid")
    korbs = {g.component_of[y][0] for y in k.objects}
    target: dict[str, str] = {}
    for x in h.objects:
        block = g.component_of[x]
        if block[0] not in korbs:
            return None
        if x in k.objects:
            target[x] = x
        else:
            target[x] = min(y for y in k.objects
                            if g.component_of[y] == block)
    sub = h.restriction
    incl = StrictArrow(name=f"incl_{sub.name}", dom=sub, cod=g,
                       obj_map={x: x for x in sub.objects},
                       arr_map={a: a for a in sub.arrows})
    # connecting arrow x -> target(x), the unit when x already sits in k
    conn = {}
    for x in h.objects:
        if target[x] == x:
            conn[x] = g.unit[x]
        else:
            conn[x] = g.hom_set(x, target[x])[0]
    transport = StrictArrow(
        name=f"deform_{sub.name}", dom=sub, cod=g,
        obj_map=dict(target),
        arr_map={a: g.comp[(conn[g.tgt[a]],
                            g.comp[(a, g.inv[conn[g.src[a]]])])]
                 for a in sub.arrows})
    homotopy = NatTrans(source_fun=incl, target_fun=transport,
                        component=dict(conn))
    return DeformationDiagram(mid=sub, transport=transport,
                              homotopy=homotopy, inclusion=incl)


# ---------------------------------------------------------------------------
# locus keys


POINT_KEY = "POINT"


def locus_key(g: FinGroupoid, cap: int = 24) -> str:
    """Canonical key for the class of g after collapsing all one-object
    groupoids to the absolute point: every transitive groupoid keys to
    "POINT"; otherwise the skeleton serialization paired with the covering
    invariant."""
    if is_transitive(g):
        return POINT_KEY
    sk = skeletonize(g, cap=cap)
    body = "|".join(line for line in sk.serialize().splitlines())
    return f"cgeo={cgeo(g)};{body}"

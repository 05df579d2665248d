"""Groupoid actions, principal bibundle correspondences, the tensor product.

A right action moves the actor value backwards along arrows: ``act[(z, c)]``
is defined exactly when ``actor[z] == tgt[c]`` and the result sits over
``src[c]``.  Left actions are dual (defined on ``src``, land on ``tgt``).
A bibundle from H to G carries a left H-action and a right G-action on a
shared carrier; principality flags are derived, not stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .core import (FinGroupoid, StrictArrow, GroupoidError,
                   same_groupoid)
from . import homotopy


class NotComposable(GroupoidError):
    pass


class NotPrincipal(GroupoidError):
    pass


class EndpointMismatch(GroupoidError):
    pass


class BadAction(GroupoidError):
    pass


@dataclass(frozen=True, eq=False)
class RightAction:
    groupoid: FinGroupoid
    carrier: tuple[str, ...]
    actor: dict[str, str]
    act: dict[tuple[str, str], str]

    def __repr__(self):
        return f"RightAction({len(self.carrier)} points / {self.groupoid.name})"


@dataclass(frozen=True, eq=False)
class LeftAction:
    groupoid: FinGroupoid
    carrier: tuple[str, ...]
    actor: dict[str, str]
    act: dict[tuple[str, str], str]  # (arrow, z) -> z'

    def __repr__(self):
        return f"LeftAction({len(self.carrier)} points / {self.groupoid.name})"


def validate_right_action(a: RightAction) -> RightAction:
    g = a.groupoid
    points = set(a.carrier)
    for z in a.carrier:
        if a.actor.get(z) not in set(g.objects):
            raise BadAction(f"actor undefined or invalid at {z!r}", witness=z)
    for z in a.carrier:
        for c in g.arrows:
            defined = (z, c) in a.act
            if defined != (a.actor[z] == g.tgt[c]):
                raise BadAction(
                    f"action domain wrong at ({z!r}, {c!r})", witness=(z, c))
            if defined:
                w = a.act[(z, c)]
                if w not in points or a.actor[w] != g.src[c]:
                    raise BadAction(
                        f"({z!r}) . ({c!r}) does not sit over src", witness=(z, c))
    for z in a.carrier:
        if a.act[(z, g.unit[a.actor[z]])] != z:
            raise BadAction(f"unit acts nontrivially on {z!r}", witness=z)
    for z in a.carrier:
        for (p, q), r in g.comp.items():
            if a.actor[z] != g.tgt[p]:
                continue
            if a.act[(a.act[(z, p)], q)] != a.act[(z, r)]:
                raise BadAction(
                    f"action not associative on ({z!r}, {p!r}, {q!r})",
                    witness=(z, p, q))
    return a


def validate_left_action(a: LeftAction) -> LeftAction:
    g = a.groupoid
    points = set(a.carrier)
    for z in a.carrier:
        if a.actor.get(z) not in set(g.objects):
            raise BadAction(f"actor undefined or invalid at {z!r}", witness=z)
    for z in a.carrier:
        for c in g.arrows:
            defined = (c, z) in a.act
            if defined != (a.actor[z] == g.src[c]):
                raise BadAction(
                    f"action domain wrong at ({c!r}, {z!r})", witness=(c, z))
            if defined:
                w = a.act[(c, z)]
                if w not in points or a.actor[w] != g.tgt[c]:
                    raise BadAction(
                        f"({c!r}) . ({z!r}) does not sit over tgt", witness=(c, z))
    for z in a.carrier:
        if a.act[(g.unit[a.actor[z]], z)] != z:
            raise BadAction(f"unit acts nontrivially on {z!r}", witness=z)
    for z in a.carrier:
        for (p, q), r in g.comp.items():
            if a.actor[z] != g.src[q]:
                continue
            if a.act[(p, a.act[(q, z)])] != a.act[(r, z)]:
                raise BadAction(
                    f"action not associative on ({p!r}, {q!r}, {z!r})",
                    witness=(p, q, z))
    return a


def action_orbits(carrier, moves) -> tuple[tuple[str, ...], ...]:
    """Orbit blocks under the given (z -> iterable of z') move relation."""
    parent = {z: z for z in carrier}

    def find(z):
        while parent[z] != z:
            parent[z] = parent[parent[z]]
            z = parent[z]
        return z

    for z in carrier:
        for w in moves(z):
            rz, rw = find(z), find(w)
            if rz != rw:
                parent[rz] = rw
    blocks: dict[str, list[str]] = {}
    for z in carrier:
        blocks.setdefault(find(z), []).append(z)
    return tuple(sorted((tuple(sorted(b)) for b in blocks.values()),
                        key=lambda b: b[0]))


@dataclass(frozen=True)
class Principality:
    """Outcome of the principality check: a division map as certificate, or
    a freeness/transitivity witness explaining the failure."""
    ok: bool
    division: dict[tuple[str, str], str] | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def is_principal(a: RightAction | LeftAction) -> Principality:
    """Free plus well-defined total division map on same-orbit pairs."""
    g = a.groupoid
    right = isinstance(a, RightAction)
    for (key, z_or_c), w in sorted(a.act.items()):
        z, c = (key, z_or_c) if right else (z_or_c, key)
        if w == z and c != g.unit[a.actor[z]]:
            return Principality(ok=False, witness=("not-free", z, c))
    division: dict[tuple[str, str], str] = {}
    for (key, z_or_c), w in sorted(a.act.items()):
        z, c = (key, z_or_c) if right else (z_or_c, key)
        if (z, w) in division and division[(z, w)] != c:
            return Principality(ok=False,
                                witness=("division-ambiguous", z, w))
        division[(z, w)] = c
    if right:
        blocks = action_orbits(a.carrier,
                               lambda z: [a.act[k] for k in a.act if k[0] == z])
    else:
        blocks = action_orbits(a.carrier,
                               lambda z: [a.act[k] for k in a.act if k[1] == z])
    for block in blocks:
        for z in block:
            for w in block:
                if (z, w) not in division:
                    return Principality(ok=False,
                                        witness=("division-partial", z, w))
    return Principality(ok=True, division=division)


@dataclass(frozen=True, eq=False)
class Bibundle:
    """Correspondence H <- Z -> G: commuting left H- and right G-actions."""

    name: str
    left: LeftAction
    right: RightAction

    @property
    def dom(self) -> FinGroupoid:
        return self.left.groupoid

    @property
    def cod(self) -> FinGroupoid:
        return self.right.groupoid

    @property
    def carrier(self) -> tuple[str, ...]:
        return self.left.carrier

    @cached_property
    def right_orbits(self):
        return action_orbits(
            self.carrier,
            lambda z: [self.right.act[k] for k in self.right.act if k[0] == z])

    @cached_property
    def left_orbits(self):
        return action_orbits(
            self.carrier,
            lambda z: [self.left.act[k] for k in self.left.act if k[1] == z])

    @cached_property
    def is_right_principal(self) -> bool:
        if not is_principal(self.right):
            return False
        # p must induce a bijection  Z/G  ~  H0
        p = self.left.actor
        values = [p[block[0]] for block in self.right_orbits]
        return (len(values) == len(set(values))
                and set(values) == set(self.dom.objects))

    @cached_property
    def is_left_principal(self) -> bool:
        if not is_principal(self.left):
            return False
        q = self.right.actor
        values = [q[block[0]] for block in self.left_orbits]
        return (len(values) == len(set(values))
                and set(values) == set(self.cod.objects))

    @property
    def is_equivalence(self) -> bool:
        return self.is_right_principal and self.is_left_principal

    def __repr__(self):
        return (f"Bibundle({self.name!r}: {self.dom.name} -| "
                f"{len(self.carrier)} |- {self.cod.name})")


def validate_bibundle(b: Bibundle) -> Bibundle:
    if b.left.carrier != b.right.carrier:
        raise BadAction("left and right actions have different carriers")
    validate_left_action(b.left)
    validate_right_action(b.right)
    h, g = b.dom, b.cod
    p, q = b.left.actor, b.right.actor
    for (eta, z), w in b.left.act.items():
        if q[w] != q[z]:
            raise BadAction(
                f"left action moves the right actor at ({eta!r}, {z!r})",
                witness=(eta, z))
    for (z, c), w in b.right.act.items():
        if p[w] != p[z]:
            raise BadAction(
                f"right action moves the left actor at ({z!r}, {c!r})",
                witness=(z, c))
    for z in b.carrier:
        for eta in h.arrows:
            if p[z] != h.src[eta]:
                continue
            for c in g.arrows:
                if q[z] != g.tgt[c]:
                    continue
                if (b.right.act[(b.left.act[(eta, z)], c)]
                        != b.left.act[(eta, b.right.act[(z, c)])]):
                    raise BadAction(
                        f"actions do not commute on ({eta!r}, {z!r}, {c!r})",
                        witness=(eta, z, c))
    return b


# ---------------------------------------------------------------------------
# constructions


def unit_bibundle(g: FinGroupoid) -> Bibundle:
    """g acting on its own arrows by translation on both sides."""
    carrier = tuple(sorted(g.arrows))
    left = LeftAction(
        groupoid=g, carrier=carrier,
        actor={a: g.tgt[a] for a in carrier},
        act={(eta, a): g.comp[(eta, a)]
             for a in carrier for eta in g.arrows if g.src[eta] == g.tgt[a]})
    right = RightAction(
        groupoid=g, carrier=carrier,
        actor={a: g.src[a] for a in carrier},
        act={(a, c): g.comp[(a, c)]
             for a in carrier for c in g.arrows if g.src[a] == g.tgt[c]})
    return Bibundle(name=f"unit_{g.name}", left=left, right=right)


def functor_to_bibundle(f: StrictArrow) -> Bibundle:
    """Carrier {(x, c) : c lands on f(x)}, left action through f, right by
    composition.  Always right-principal; an equivalence iff f is
    essentially surjective and fully faithful."""
    h, g = f.dom, f.cod
    pts = [(x, c) for x in h.objects for c in g.arrows
           if g.tgt[c] == f.obj_map[x]]

    def pid(x, c):
        return f"{x}|{c}"

    carrier = tuple(sorted(pid(x, c) for x, c in pts))
    where = {pid(x, c): (x, c) for x, c in pts}
    lact = {}
    for z in carrier:
        x, c = where[z]
        for eta in h.arrows:
            if h.src[eta] != x:
                continue
            lact[(eta, z)] = pid(h.tgt[eta], g.comp[(f.arr_map[eta], c)])
    ract = {}
    for z in carrier:
        x, c = where[z]
        for d in g.arrows:
            if g.tgt[d] != g.src[c]:
                continue
            ract[(z, d)] = pid(x, g.comp[(c, d)])
    left = LeftAction(groupoid=h, carrier=carrier,
                      actor={z: where[z][0] for z in carrier}, act=lact)
    right = RightAction(groupoid=g, carrier=carrier,
                        actor={z: g.src[where[z][1]] for z in carrier},
                        act=ract)
    return Bibundle(name=f"B[{f.name}]", left=left, right=right)


def transpose(b: Bibundle, name: str | None = None) -> Bibundle:
    """Swap the two sides, acting through inverses."""
    h, g = b.dom, b.cod
    left = LeftAction(
        groupoid=g, carrier=b.carrier, actor=dict(b.right.actor),
        act={(g.inv[c], z): w for (z, c), w in b.right.act.items()})
    right = RightAction(
        groupoid=h, carrier=b.carrier, actor=dict(b.left.actor),
        act={(z, h.inv[eta]): w for (eta, z), w in b.left.act.items()})
    return Bibundle(name=name or f"{b.name}^t", left=left, right=right)


def tensor(z1: Bibundle, z2: Bibundle) -> Bibundle:
    """Generalized tensor product: fibre product over the middle objects,
    quotiented by the diagonal middle action (z, w) . c = (z c, c^-1 w)."""
    if not same_groupoid(z1.cod, z2.dom):
        raise NotComposable(
            f"{z1.name!r} ends at {z1.cod.name}, {z2.name!r} starts at "
            f"{z2.dom.name}")
    if not z1.is_right_principal:
        raise NotPrincipal(f"{z1.name!r} is not right-principal")
    mid = z1.cod
    q1, p2 = z1.right.actor, z2.left.actor
    pairs = [(z, w) for z in z1.carrier for w in z2.carrier
             if q1[z] == p2[w]]
    parent = {pw: pw for pw in pairs}

    def find(pw):
        while parent[pw] != pw:
            parent[pw] = parent[parent[pw]]
            pw = parent[pw]
        return pw

    for (z, w) in pairs:
        for c in mid.arrows:
            if q1[z] != mid.tgt[c]:
                continue
            moved = (z1.right.act[(z, c)], z2.left.act[(mid.inv[c], w)])
            r1, r2 = find((z, w)), find(moved)
            if r1 != r2:
                parent[r1] = r2
    blocks: dict[tuple[str, str], list] = {}
    for pw in pairs:
        blocks.setdefault(find(pw), []).append(pw)
    cls_of: dict[tuple[str, str], str] = {}
    carrier = []
    for members in blocks.values():
        rep = min(members)
        cid = f"[{rep[0]}*{rep[1]}]"
        carrier.append(cid)
        for pw in members:
            cls_of[pw] = cid
    carrier = tuple(sorted(carrier))
    rep_of = {}
    for pw, cid in cls_of.items():
        if cid not in rep_of or pw < rep_of[cid]:
            rep_of[cid] = pw

    h, k = z1.dom, z2.cod
    p = {cid: z1.left.actor[rep_of[cid][0]] for cid in carrier}
    q = {cid: z2.right.actor[rep_of[cid][1]] for cid in carrier}
    lact = {}
    for cid in carrier:
        z, w = rep_of[cid]
        for eta in h.arrows:
            if h.src[eta] != p[cid]:
                continue
            lact[(eta, cid)] = cls_of[(z1.left.act[(eta, z)], w)]
    ract = {}
    for cid in carrier:
        z, w = rep_of[cid]
        for c in k.arrows:
            if k.tgt[c] != q[cid]:
                continue
            ract[(cid, c)] = cls_of[(z, z2.right.act[(w, c)])]
    return Bibundle(
        name=f"({z1.name}(.){z2.name})",
        left=LeftAction(groupoid=h, carrier=carrier, actor=p, act=lact),
        right=RightAction(groupoid=k, carrier=carrier, actor=q, act=ract))


# ---------------------------------------------------------------------------
# isomorphism and Morita equivalence


def bibundles_isomorphic(a: Bibundle, b: Bibundle) -> dict[str, str] | None:
    """Bi-equivariant carrier bijection commuting with both actor maps, or
    None.  Backtracking with (p, q)-fibre pruning and action propagation."""
    if not (same_groupoid(a.dom, b.dom) and same_groupoid(a.cod, b.cod)):
        raise EndpointMismatch(
            f"{a.name!r} and {b.name!r} join different groupoids")
    if len(a.carrier) != len(b.carrier):
        return None

    def fibre(bb):
        out: dict[tuple[str, str], list[str]] = {}
        for z in bb.carrier:
            out.setdefault((bb.left.actor[z], bb.right.actor[z]), []).append(z)
        return out

    fa, fb = fibre(a), fibre(b)
    if set(fa) != set(fb) or any(len(fa[k]) != len(fb[k]) for k in fa):
        return None

    h, g = a.dom, a.cod
    order = sorted(a.carrier)
    assign: dict[str, str] = {}
    used: set[str] = set()

    def propagate(z, w, trail):
        """Force images along all action moves; returns False on clash."""
        stack = [(z, w)]
        while stack:
            z, w = stack.pop()
            if z in assign:
                if assign[z] != w:
                    return False
                continue
            if w in used:
                return False
            if (a.left.actor[z], a.right.actor[z]) != (
                    b.left.actor[w], b.right.actor[w]):
                return False
            assign[z] = w
            used.add(w)
            trail.append(z)
            for eta in h.arrows:
                if (eta, z) in a.left.act:
                    stack.append((a.left.act[(eta, z)], b.left.act[(eta, w)]))
            for c in g.arrows:
                if (z, c) in a.right.act:
                    stack.append((a.right.act[(z, c)], b.right.act[(w, c)]))
        return True

    def search(i):
        while i < len(order) and order[i] in assign:
            i += 1
        if i == len(order):
            return True
        z = order[i]
        for w in fb[(a.left.actor[z], a.right.actor[z])]:
            if w in used:
                continue
            trail: list[str] = []
            if propagate(z, w, trail) and search(i + 1):
                return True
            for t in trail:
                used.discard(assign.pop(t))
        return False

    if search(0):
        return dict(assign)
    return None


def are_morita_equivalent(h: FinGroupoid, g: FinGroupoid,
                          cap: int = 24) -> Bibundle | None:
    """Bi-bundle equivalence h -| Z |- g, or None.

    The boolean answer is exact: it agrees with skeleton comparison
    (orbit-wise isotropy isomorphism).  The witness is built from the
    skeletal comparison functor, whose induced carrier stays inside the
    |h1| * |g1| search bound.
    """
    if same_groupoid(h, g):
        return unit_bibundle(g)
    f = homotopy.skeletal_equivalence_functor(h, g, cap=cap)
    if f is None:
        return None
    return functor_to_bibundle(f)

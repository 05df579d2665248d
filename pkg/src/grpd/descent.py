"""Finite covers, descent data with cocycle conditions, exact gluing.

Bundles over a finite base are a total set with a projection; overlap
elements of a cover are explicit pairs (u, v) with matching base image, so
both compatibility conditions are pointwise-checkable with witnesses.
Only set-valued descent lives here.
"""

from __future__ import annotations

from dataclasses import dataclass


class DescentError(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSurjective(DescentError):
    pass


class CocycleViolation(DescentError):
    pass


class BadDatum(DescentError):
    pass


@dataclass(frozen=True, eq=False)
class Bundle:
    name: str
    base: tuple[str, ...]
    total: tuple[str, ...]
    proj: dict[str, str]

    def fibre(self, x: str) -> tuple[str, ...]:
        return tuple(a for a in self.total if self.proj[a] == x)

    def validate(self) -> "Bundle":
        base = set(self.base)
        for a in self.total:
            if self.proj.get(a) not in base:
                raise BadDatum(f"projection undefined or off-base at {a!r}",
                               witness=a)
        return self


@dataclass(frozen=True, eq=False)
class CoverPiece:
    name: str
    elements: tuple[str, ...]
    to_base: dict[str, str]


@dataclass(frozen=True, eq=False)
class Cover:
    name: str
    base: tuple[str, ...]
    pieces: tuple[CoverPiece, ...]

    def validate(self) -> "Cover":
        base = set(self.base)
        hit = set()
        for p in self.pieces:
            for u in p.elements:
                x = p.to_base.get(u)
                if x not in base:
                    raise BadDatum(
                        f"piece {p.name!r} maps {u!r} off the base", witness=u)
                hit.add(x)
        if hit != base:
            raise NotSurjective(
                f"cover {self.name!r} misses {sorted(base - hit)}",
                witness=tuple(sorted(base - hit)))
        return self

    def overlap(self, pi: CoverPiece, pj: CoverPiece):
        """U_i x_X U_j as explicit pairs."""
        return [(u, v) for u in pi.elements for v in pj.elements
                if pi.to_base[u] == pj.to_base[v]]


@dataclass(frozen=True, eq=False)
class DescentDatum:
    """Per-piece bundles plus transition bijections over every ordered
    overlap, indexed transitions[(i, j)][(u, v)][a] = b."""
    name: str
    cover: Cover
    fibres: dict[str, Bundle]
    transitions: dict[tuple[str, str], dict[tuple[str, str], dict[str, str]]]

    def piece(self, name: str) -> CoverPiece:
        for p in self.cover.pieces:
            if p.name == name:
                return p
        raise BadDatum(f"no cover piece named {name!r}", witness=name)


def validate_datum(d: DescentDatum) -> DescentDatum:
    """Structural totality: one bundle per piece, a total bijection on each
    ordered overlap pair, fibrewise."""
    d.cover.validate()
    for p in d.cover.pieces:
        if p.name not in d.fibres:
            raise BadDatum(f"no bundle over piece {p.name!r}", witness=p.name)
        bundle = d.fibres[p.name].validate()
        if set(bundle.base) != set(p.elements):
            raise BadDatum(f"bundle over {p.name!r} has the wrong base",
                           witness=p.name)
    for pi in d.cover.pieces:
        for pj in d.cover.pieces:
            key = (pi.name, pj.name)
            table = d.transitions.get(key)
            if table is None:
                raise BadDatum(f"missing transitions for {key}", witness=key)
            for (u, v) in d.cover.overlap(pi, pj):
                fib_i = d.fibres[pi.name].fibre(u)
                fib_j = d.fibres[pj.name].fibre(v)
                m = table.get((u, v))
                if m is None:
                    raise BadDatum(
                        f"missing transition over overlap {(u, v)} of {key}",
                        witness=(key, (u, v)))
                if sorted(m) != sorted(fib_i) or sorted(
                        m.values()) != sorted(fib_j):
                    raise BadDatum(
                        f"transition over {(u, v)} of {key} is not a "
                        "fibre bijection", witness=(key, (u, v)))
    return d


def check_subcanonical(mapping: dict[str, str], base) -> dict:
    """A surjection is the coequalizer of its kernel pair: the canonical
    comparison from domain-mod-kernel to the base must be a bijection.
    Returns the kernel classes and comparison map as witness."""
    base = tuple(base)
    hit = set(mapping.values())
    if hit != set(base):
        raise NotSurjective(f"map misses {sorted(set(base) - hit)}",
                            witness=tuple(sorted(set(base) - hit)))
    classes: dict[str, list[str]] = {}
    for u in sorted(mapping):
        classes.setdefault(mapping[u], []).append(u)
    comparison = {tuple(v): x for x, v in classes.items()}
    ok = (len(comparison) == len(base)
          and set(comparison.values()) == set(base))
    return {"ok": ok, "classes": sorted(classes.values()),
            "comparison": comparison}


@dataclass(frozen=True)
class CocycleReport:
    ok: bool
    failure: tuple | None = None

    def __bool__(self):
        return self.ok


def check_cocycle(d: DescentDatum) -> CocycleReport:
    """Condition (a): diagonal transitions restrict to the identity.
    Condition (b): the triple-overlap composite f_jk . f_ij = f_ik,
    pointwise over every double and triple overlap element."""
    validate_datum(d)
    for p in d.cover.pieces:
        table = d.transitions[(p.name, p.name)]
        for u in p.elements:
            m = table[(u, u)]
            for a, b in m.items():
                if a != b:
                    return CocycleReport(ok=False,
                                         failure=("a", p.name, u, a, b))
    for pi in d.cover.pieces:
        for pj in d.cover.pieces:
            for pk in d.cover.pieces:
                for u in pi.elements:
                    for v in pj.elements:
                        if pi.to_base[u] != pj.to_base[v]:
                            continue
                        for w in pk.elements:
                            if pk.to_base[w] != pi.to_base[u]:
                                continue
                            fij = d.transitions[(pi.name, pj.name)][(u, v)]
                            fjk = d.transitions[(pj.name, pk.name)][(v, w)]
                            fik = d.transitions[(pi.name, pk.name)][(u, w)]
                            for a in fij:
                                if fjk[fij[a]] != fik[a]:
                                    return CocycleReport(
                                        ok=False,
                                        failure=("b",
                                                 (pi.name, pj.name, pk.name),
                                                 (u, v, w), a))
    return CocycleReport(ok=True)


@dataclass(frozen=True, eq=False)
class GlueResult:
    bundle: Bundle
    piece_maps: dict[str, dict[tuple[str, str], str]]
    # piece_maps[i][(u, a)] = glued element representing a over u


def glue(d: DescentDatum) -> GlueResult:
    """Quotient of the disjoint union of the local bundles by the
    transition relation; raises CocycleViolation when the data does not
    glue coherently.  Returns the glued bundle over the cover's base plus
    the per-piece comparison isomorphisms."""
    report = check_cocycle(d)
    if not report:
        raise CocycleViolation(f"cocycle conditions fail: {report.failure}",
                               witness=report.failure)
    tagged = [(p.name, a) for p in d.cover.pieces
              for a in d.fibres[p.name].total]
    parent = {t: t for t in tagged}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    for pi in d.cover.pieces:
        for pj in d.cover.pieces:
            table = d.transitions[(pi.name, pj.name)]
            for (u, v), m in table.items():
                for a, b in m.items():
                    r1, r2 = find((pi.name, a)), find((pj.name, b))
                    if r1 != r2:
                        parent[r1] = r2
    blocks: dict[tuple[str, str], list] = {}
    for t in tagged:
        blocks.setdefault(find(t), []).append(t)

    piece_of = {p.name: p for p in d.cover.pieces}
    total, proj, member_cls = [], {}, {}
    for members in blocks.values():
        members.sort()
        rep = members[0]
        cid = f"{rep[0]}.{rep[1]}"
        total.append(cid)
        bases = set()
        for (pname, a) in members:
            member_cls[(pname, a)] = cid
            p = piece_of[pname]
            bases.add(p.to_base[d.fibres[pname].proj[a]])
        if len(bases) != 1:
            raise CocycleViolation(
                f"glued class {cid!r} sits over several base points "
                f"{sorted(bases)}", witness=cid)
        proj[cid] = bases.pop()
    bundle = Bundle(name=f"glue({d.name})", base=d.cover.base,
                    total=tuple(sorted(total)), proj=proj)

    piece_maps: dict[str, dict[tuple[str, str], str]] = {}
    for p in d.cover.pieces:
        fib = d.fibres[p.name]
        local: dict[tuple[str, str], str] = {}
        for a in fib.total:
            local[(fib.proj[a], a)] = member_cls[(p.name, a)]
        # the comparison must be a fibrewise bijection onto the pullback
        for u in p.elements:
            x = p.to_base[u]
            glued_fibre = {c for c in bundle.total if proj[c] == x}
            image = {local[(u, a)] for a in fib.fibre(u)}
            if image != glued_fibre or len(image) != len(fib.fibre(u)):
                raise CocycleViolation(
                    f"piece {p.name!r} does not compare bijectively over "
                    f"{u!r}", witness=(p.name, u))
        piece_maps[p.name] = local
    return GlueResult(bundle=bundle, piece_maps=piece_maps)


def descend(a: Bundle, c: Cover) -> DescentDatum:
    """Pull the bundle back along every piece; canonical transitions.  The
    cocycle conditions hold by construction."""
    a.validate()
    c.validate()
    if set(a.base) != set(c.base):
        raise BadDatum("bundle and cover have different bases")

    def pulled(p: CoverPiece) -> Bundle:
        total, proj = [], {}
        for u in p.elements:
            for e in a.total:
                if a.proj[e] == p.to_base[u]:
                    t = f"{u}.{e}"
                    total.append(t)
                    proj[t] = u
        return Bundle(name=f"{a.name}|{p.name}", base=p.elements,
                      total=tuple(total), proj=proj)

    fibres = {p.name: pulled(p) for p in c.pieces}
    transitions: dict = {}
    for pi in c.pieces:
        for pj in c.pieces:
            table = {}
            for (u, v) in c.overlap(pi, pj):
                table[(u, v)] = {
                    f"{u}.{e}": f"{v}.{e}" for e in a.total
                    if a.proj[e] == pi.to_base[u]}
            transitions[(pi.name, pj.name)] = table
    return DescentDatum(name=f"desc({a.name})", cover=c, fibres=fibres,
                        transitions=transitions)

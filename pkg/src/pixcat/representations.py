"""Representations of thin bound quivers over the rationals.

A representation assigns a dimension to every vertex and a matrix to every
arrow (rows = target, columns = source).  The relations are read from the
quiver's hom bits: parallel arrow paths agree, and a path between vertices
with hom bit 0 composes to zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import linalg as la
from .core_model import InputError, PathModel
from .pixelation import SkeletonQuiver, ThinQuiver, build_skeleton, parse_vertex, vertex_key
from .screens import RefinementKind, Screen, coarse_pixel_of, init_pixel, refinement_relation


@dataclass(frozen=True)
class QuiverRep:
    dims: dict
    mats: dict

    def __post_init__(self):
        for (u, w), m in self.mats.items():
            if m.shape != (self.dims.get(w, 0), self.dims.get(u, 0)):
                raise InputError(
                    f"arrow {u}->{w} carries a {m.shape} matrix, expected "
                    f"{(self.dims.get(w, 0), self.dims.get(u, 0))}")

    def __eq__(self, other):
        if not isinstance(other, QuiverRep):
            return NotImplemented
        return (self.dims == other.dims and self.mats.keys() == other.mats.keys()
                and all(la.equal(m, other.mats[a]) for a, m in self.mats.items()))

    __hash__ = None

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def to_dict(self) -> dict:
        return {
            "dims": {vertex_key(v): d for v, d in sorted(self.dims.items())},
            "mats": {f"{vertex_key(u)}->{vertex_key(w)}": la.to_json(m)
                     for (u, w), m in sorted(self.mats.items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QuiverRep":
        try:
            dims = {parse_vertex(k): int(d) for k, d in data["dims"].items()}
            mats = {}
            for key, rows in data["mats"].items():
                u, w = (parse_vertex(t) for t in key.split("->"))
                mats[(u, w)] = la.from_json(rows, dims.get(w, 0), dims.get(u, 0))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise InputError(f"malformed representation JSON: {exc}") from exc
        return cls(dims, mats)


@dataclass(frozen=True)
class RepMorphism:
    comps: dict

    def to_dict(self) -> dict:
        return {"comps": {vertex_key(v): la.to_json(m) for v, m in sorted(self.comps.items())}}


@dataclass(frozen=True)
class StepRep:
    model: PathModel
    fine: Screen
    rep: QuiverRep

    @property
    def quiver(self) -> SkeletonQuiver:
        return skeleton_of(self.model, self.fine)


@lru_cache(maxsize=256)
def skeleton_of(model: PathModel, screen: Screen) -> SkeletonQuiver:
    return build_skeleton(model, screen)


# -- basic constructions ---------------------------------------------------


def zero_rep(quiver: ThinQuiver) -> QuiverRep:
    return QuiverRep({v: 0 for v in quiver.vertices},
                     {a: la.zeros(0, 0) for a in quiver.arrows})


def rep_from_dims(quiver: ThinQuiver, dims: dict, mats: dict) -> QuiverRep:
    dims = {v: dims.get(v, 0) for v in quiver.vertices}
    full = {}
    for u, w in quiver.arrows:
        full[(u, w)] = mats.get((u, w), la.zeros(dims[w], dims[u]))
    return QuiverRep(dims, full)


def thin_rep(quiver: ThinQuiver, support) -> QuiverRep:
    """Dimension one on ``support``, identities between support vertices."""
    support = set(support)
    dims = {v: int(v in support) for v in quiver.vertices}
    mats = {}
    for u, w in quiver.arrows:
        if u in support and w in support:
            mats[(u, w)] = la.eye(1)
        else:
            mats[(u, w)] = la.zeros(dims[w], dims[u])
    return QuiverRep(dims, mats)


def projective(quiver: ThinQuiver, v) -> QuiverRep:
    return thin_rep(quiver, [w for w in quiver.vertices if quiver.hom_bit(v, w)])


def injective(quiver: ThinQuiver, v) -> QuiverRep:
    return thin_rep(quiver, [w for w in quiver.vertices if quiver.hom_bit(w, v)])


def simple(quiver: ThinQuiver, v) -> QuiverRep:
    return thin_rep(quiver, [v])


def direct_sum(*reps: QuiverRep) -> QuiverRep:
    verts = reps[0].dims.keys()
    dims = {v: sum(r.dims[v] for r in reps) for v in verts}
    mats = {}
    for a in reps[0].mats:
        rows = []
        for k, r in enumerate(reps):
            rows.append([r.mats[a] if l == k else la.zeros(r.dims[a[1]], s.dims[a[0]])
                         for l, s in enumerate(reps)])
        mats[a] = la.block(rows)
    return QuiverRep(dims, mats)


# -- validation ------------------------------------------------------------


@dataclass
class Check:
    passed: bool
    witnesses: list = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {"passed": self.passed, "witnesses": self.witnesses}


def path_maps(rep: QuiverRep, quiver: ThinQuiver, check: bool = False):
    """Map of every arrow path ``u -> w`` as ``{(u, w): matrix}``.

    With ``check`` set, also returns the list of relation violations.
    """
    order = quiver.topological_order()
    incoming = {w: [] for w in quiver.vertices}
    for a in quiver.arrows:
        incoming[a[1]].append(a)
    maps = {}
    problems = []
    for u in quiver.vertices:
        maps[(u, u)] = la.eye(rep.dims[u])
    for w in order:
        for a in incoming[w]:
            v = a[0]
            for u in quiver.vertices:
                if (u, v) not in maps:
                    continue
                m = la.mul(rep.mats[a], maps[(u, v)])
                if (u, w) not in maps:
                    maps[(u, w)] = m
                elif check and not la.equal(maps[(u, w)], m):
                    problems.append(f"arrow paths {vertex_key(u)}->{vertex_key(w)} disagree")
    if check:
        for (u, w), m in maps.items():
            if not quiver.hom_bit(u, w) and not la.is_zero(m):
                problems.append(
                    f"path {vertex_key(u)}->{vertex_key(w)} must vanish (hom bit 0)")
        return maps, problems
    return maps


def validate_rep(rep: QuiverRep, quiver: ThinQuiver) -> Check:
    problems = []
    for v in quiver.vertices:
        if v not in rep.dims:
            raise InputError(f"no dimension at vertex {vertex_key(v)}")
    for a in quiver.arrows:
        if a not in rep.mats:
            raise InputError(f"no matrix on arrow {vertex_key(a[0])}->{vertex_key(a[1])}")
        m = rep.mats[a]
        if m.shape != (rep.dims[a[1]], rep.dims[a[0]]):
            problems.append(f"arrow {a} has shape {m.shape}")
    if problems:
        return Check(False, problems)
    _, problems = path_maps(rep, quiver, check=True)
    return Check(not problems, problems)


def validate_morphism(f: RepMorphism, m: QuiverRep, n: QuiverRep, quiver: ThinQuiver) -> Check:
    problems = []
    for v in quiver.vertices:
        c = f.comps.get(v)
        if c is None or c.shape != (n.dims[v], m.dims[v]):
            problems.append(f"component at {vertex_key(v)} has the wrong shape")
    if problems:
        return Check(False, problems)
    for a in quiver.arrows:
        u, w = a
        if not la.equal(la.mul(n.mats[a], f.comps[u]), la.mul(f.comps[w], m.mats[a])):
            problems.append(f"naturality fails on {vertex_key(u)}->{vertex_key(w)}")
    return Check(not problems, problems)


def is_isomorphism(f: RepMorphism, m: QuiverRep, n: QuiverRep, quiver: ThinQuiver) -> Check:
    chk = validate_morphism(f, m, n, quiver)
    if not chk:
        return chk
    bad = [f"component at {vertex_key(v)} is not invertible"
           for v, c in f.comps.items() if not la.is_invertible(c)]
    return Check(not bad, bad)


def identity_morphism(m: QuiverRep) -> RepMorphism:
    return RepMorphism({v: la.eye(d) for v, d in m.dims.items()})


def compose(g: RepMorphism, f: RepMorphism) -> RepMorphism:
    return RepMorphism({v: la.mul(g.comps[v], f.comps[v]) for v in f.comps})


# -- kernels, cokernels and homs -------------------------------------------


@dataclass
class KernelCokernel:
    kernel: QuiverRep
    inclusion: RepMorphism
    cokernel: QuiverRep
    projection: RepMorphism


def rep_kernel_cokernel(f: RepMorphism, m: QuiverRep, n: QuiverRep,
                        quiver: ThinQuiver) -> KernelCokernel:
    if not validate_morphism(f, m, n, quiver):
        raise InputError("not a morphism of representations")
    kb = {v: la.nullspace(f.comps[v]) for v in quiver.vertices}
    qb = {v: la.left_nullspace(f.comps[v]) for v in quiver.vertices}
    sections = {}
    for v in quiver.vertices:
        s = la.solve(qb[v], la.eye(qb[v].shape[0]))
        sections[v] = s
    kdims = {v: kb[v].shape[1] for v in quiver.vertices}
    cdims = {v: qb[v].shape[0] for v in quiver.vertices}
    kmats, cmats = {}, {}
    for a in quiver.arrows:
        u, w = a
        x = la.solve(kb[w], la.mul(m.mats[a], kb[u]))
        if x is None:
            raise InputError("kernel is not a subrepresentation")
        kmats[a] = x
        cmats[a] = la.mul(la.mul(qb[w], n.mats[a]), sections[u])
    return KernelCokernel(
        QuiverRep(kdims, kmats), RepMorphism(kb),
        QuiverRep(cdims, cmats), RepMorphism(qb))


def hom_space(m: QuiverRep, n: QuiverRep, quiver: ThinQuiver) -> list:
    """Basis of Hom(m, n) as a list of morphisms."""
    offsets, total = {}, 0
    for v in quiver.vertices:
        offsets[v] = total
        total += n.dims[v] * m.dims[v]
    if total == 0:
        return []
    rows = {}
    r = 0
    for a in quiver.arrows:
        u, w = a
        na, ma = la.rows_of(n.mats[a]), la.rows_of(m.mats[a])
        pu, qu = n.dims[u], m.dims[u]
        pw, qw = n.dims[w], m.dims[w]
        # (N(a) f_u - f_w M(a))[i, j] = 0 for i < dim N(w), j < dim M(u)
        for i in range(pw):
            for j in range(qu):
                row = {}
                for k in range(pu):
                    if na[i][k]:
                        col = offsets[u] + k * qu + j
                        row[col] = row.get(col, 0) + na[i][k]
                for k in range(qw):
                    if ma[k][j]:
                        col = offsets[w] + i * qw + k
                        row[col] = row.get(col, 0) - ma[k][j]
                if any(row.values()):
                    rows[r] = row
                    r += 1
    system = la.sparse(rows, max(r, 1), total) if r else la.zeros(1, total)
    basis = la.nullspace(system)
    out = []
    cols = la.rows_of(basis.transpose()) if basis.shape[1] else []
    for vec in cols:
        comps = {}
        for v in quiver.vertices:
            p, qd = n.dims[v], m.dims[v]
            o = offsets[v]
            comps[v] = la.mat([vec[o + i * qd: o + (i + 1) * qd] for i in range(p)], p, qd) \
                if p and qd else la.zeros(p, qd)
        out.append(RepMorphism(comps))
    return out


def hom_dim(m: QuiverRep, n: QuiverRep, quiver: ThinQuiver) -> int:
    return len(hom_space(m, n, quiver))


def random_morphism(m: QuiverRep, n: QuiverRep, quiver: ThinQuiver, rng: random.Random,
                    basis: list | None = None) -> RepMorphism:
    basis = hom_space(m, n, quiver) if basis is None else basis
    comps = {v: la.zeros(n.dims[v], m.dims[v]) for v in quiver.vertices}
    for b in basis:
        c = la.q(rng.randint(-3, 3))
        for v in quiver.vertices:
            if n.dims[v] and m.dims[v]:
                comps[v] = comps[v] + b.comps[v] * c
    return RepMorphism(comps)


# -- projective resolutions and Ext ----------------------------------------


def _top_generators(rep: QuiverRep, quiver: ThinQuiver) -> list:
    """(vertex, vector) pairs completing the radical at each vertex."""
    gens = []
    for v in quiver.vertices:
        d = rep.dims[v]
        if d == 0:
            continue
        images = [rep.mats[a] for a in quiver.in_arrows(v)]
        span = la.hstack(la.zeros(d, 0), *images)
        current = span
        r = la.rank(current)
        for k in range(d):
            e = la.unit(d, k)
            trial = la.hstack(current, e)
            if la.rank(trial) > r:
                current, r = trial, r + 1
                gens.append((v, e))
    return gens


def free_rep(quiver: ThinQuiver, gen_vertices: list) -> QuiverRep:
    """Direct sum of projectives P_v, basis ordered by generator position."""
    dims = {w: sum(1 for v in gen_vertices if quiver.hom_bit(v, w)) for w in quiver.vertices}
    mats = {}
    for a in quiver.arrows:
        u, w = a
        src = [g for g, v in enumerate(gen_vertices) if quiver.hom_bit(v, u)]
        tgt = [g for g, v in enumerate(gen_vertices) if quiver.hom_bit(v, w)]
        pos = {g: k for k, g in enumerate(tgt)}
        entries = {}
        for j, g in enumerate(src):
            if g in pos:
                entries.setdefault(pos[g], {})[j] = 1
        mats[a] = la.sparse(entries, len(tgt), len(src))
    return QuiverRep(dims, mats)


def _cover(rep: QuiverRep, quiver: ThinQuiver, gens: list, maps: dict) -> RepMorphism:
    comps = {}
    for w in quiver.vertices:
        cols = [la.mul(maps[(v, w)], vec) for v, vec in gens if quiver.hom_bit(v, w)]
        comps[w] = la.hstack(la.zeros(rep.dims[w], 0), *cols)
    return RepMorphism(comps)


@dataclass
class ProjectiveResolution:
    """Generators per degree and differentials as coefficient tables.

    ``coeffs[k][g]`` maps a generator index h of degree k to the coefficient
    of its basis vector in the image of generator g of degree k + 1.
    """

    generators: list
    coeffs: list
    augmentation: list

    @property
    def length(self) -> int:
        return len(self.generators) - 1


def projective_resolution(rep: QuiverRep, quiver: ThinQuiver, max_steps: int = 64) -> ProjectiveResolution:
    if rep.total_dim() == 0:
        return ProjectiveResolution([], [], [])
    gens_all, coeffs_all = [], []
    current = rep
    incl = None
    augmentation = None
    for _ in range(max_steps):
        maps = path_maps(current, quiver)
        gens = _top_generators(current, quiver)
        if not gens:
            raise InputError("nonzero representation without top generators")
        gv = [v for v, _ in gens]
        free = free_rep(quiver, gv)
        cover = _cover(current, quiver, gens, maps)
        if incl is None:
            augmentation = gens
        else:
            # express each generator's vector in the previous free module
            prev = gens_all[-1]
            table = []
            for v, vec in gens:
                coords = la.rows_of(la.mul(incl.comps[v], vec))
                basis = [h for h, pv in enumerate(prev) if quiver.hom_bit(pv, v)]
                table.append({h: coords[k][0] for k, h in enumerate(basis) if coords[k][0]})
            coeffs_all.append(table)
        gens_all.append(gv)
        kc = rep_kernel_cokernel(cover, free, current, quiver)
        if kc.kernel.total_dim() == 0:
            return ProjectiveResolution(gens_all, coeffs_all, augmentation)
        current, incl = kc.kernel, kc.inclusion
    raise InputError("projective resolution did not terminate")


def _hom_from_free(gens: list, n: QuiverRep) -> int:
    return sum(n.dims[v] for v in gens)


def _dual_differential(res: ProjectiveResolution, k: int, n: QuiverRep, nmaps: dict):
    """Matrix of Hom(P_{k-1}, N) -> Hom(P_k, N)."""
    prev, cur = res.generators[k - 1], res.generators[k]
    off_prev, o = [], 0
    for v in prev:
        off_prev.append(o)
        o += n.dims[v]
    cols = o
    rows_total = _hom_from_free(cur, n)
    entries = {}
    r0 = 0
    for g, v in enumerate(cur):
        for h, c in res.coeffs[k - 1][g].items():
            pm = la.rows_of(nmaps[(prev[h], v)])
            for i in range(n.dims[v]):
                for j in range(n.dims[prev[h]]):
                    if pm[i][j]:
                        row = entries.setdefault(r0 + i, {})
                        row[off_prev[h] + j] = row.get(off_prev[h] + j, 0) + c * pm[i][j]
        r0 += n.dims[v]
    return la.sparse(entries, rows_total, cols)


def ext_dim(m: QuiverRep, n: QuiverRep, i: int, quiver: ThinQuiver,
            resolution: ProjectiveResolution | None = None) -> int:
    """dim Ext^i(m, n) from a minimal projective resolution of m."""
    if i < 0:
        raise InputError("Ext degree must be nonnegative")
    res = resolution or projective_resolution(m, quiver)
    gens = res.generators
    if i >= len(gens):
        return 0
    nmaps = path_maps(n, quiver)
    dim_i = _hom_from_free(gens[i], n)
    # kernel of d_{i+1}^*
    if i + 1 < len(gens):
        d_next = _dual_differential(res, i + 1, n, nmaps)
        ker = dim_i - la.rank(d_next)
    else:
        ker = dim_i
    img = la.rank(_dual_differential(res, i, n, nmaps)) if i >= 1 else 0
    return ker - img


# -- pixelated representations ---------------------------------------------


def _require_refinement(fine: Screen, coarse: Screen):
    if refinement_relation(fine, coarse) is not RefinementKind.FINITARY:
        raise InputError("fine screen is not a finitary refinement of the coarse screen")


def is_pixelated(step: StepRep, coarse: Screen) -> Check:
    _require_refinement(step.fine, coarse)
    q = step.quiver
    bad = []
    groups = {}
    for v in q.vertices:
        groups.setdefault(coarse_pixel_of(step.fine, coarse, v), []).append(v)
    for a in list(q.arrows) + list(q.pruned):
        u, w = a
        if coarse_pixel_of(step.fine, coarse, u) != coarse_pixel_of(step.fine, coarse, w):
            continue
        m = step.rep.mats.get(a)
        if m is None:
            m = path_maps(step.rep, q)[(u, w)]
        if not la.is_invertible(m):
            bad.append(f"in-pixel arrow {vertex_key(u)}->{vertex_key(w)} is not invertible")
    for c, vs in groups.items():
        if len({step.rep.dims[v] for v in vs}) > 1:
            bad.append(f"dimensions differ inside coarse pixel {vertex_key(c)}")
    return Check(not bad, bad)


def pushdown(step: StepRep, coarse: Screen) -> QuiverRep:
    """Representation of the coarse skeleton read off at initial sub-pixels.

    The initial sub-pixel plays the role of the sample; arrows carry the fine
    path map between initial sub-pixels.
    """
    chk = is_pixelated(step, coarse)
    if not chk:
        raise InputError("representation is not pixelated: " + "; ".join(chk.witnesses))
    cq = skeleton_of(step.model, coarse)
    fq = step.quiver
    maps = path_maps(step.rep, fq)
    init = {v: init_pixel(step.fine, coarse, v) for v in cq.vertices}
    dims = {}
    for v in cq.vertices:
        if init[v] not in fq.index:
            raise InputError(f"initial sub-pixel of {vertex_key(v)} is dead")
        dims[v] = step.rep.dims[init[v]]
    mats = {}
    for a in cq.arrows:
        u, w = a
        key = (init[u], init[w])
        if key not in maps:
            raise InputError(f"no fine path between initial sub-pixels of {u}->{w}")
        mats[a] = maps[key]
    return QuiverRep(dims, mats)


def lift(rep: QuiverRep, model: PathModel, coarse: Screen, fine: Screen) -> StepRep:
    _require_refinement(fine, coarse)
    cq = skeleton_of(model, coarse)
    fq = skeleton_of(model, fine)
    cmaps = path_maps(rep, cq)
    owner = {v: coarse_pixel_of(fine, coarse, v) for v in fq.vertices}
    dims = {v: rep.dims.get(owner[v], 0) if owner[v] in cq.index else 0 for v in fq.vertices}
    mats = {}
    for a in fq.arrows:
        u, w = a
        cu, cw = owner[u], owner[w]
        if cu == cw:
            mats[a] = la.eye(dims[u])
        elif cu in cq.index and cw in cq.index:
            m = cmaps.get((cu, cw))
            mats[a] = m if m is not None else la.zeros(dims[w], dims[u])
        else:
            mats[a] = la.zeros(dims[w], dims[u])
    return StepRep(model, fine, QuiverRep(dims, mats))


def pushdown_lift_iso(rep: QuiverRep, model: PathModel, coarse: Screen,
                      fine: Screen) -> tuple[QuiverRep, RepMorphism, Check]:
    """pushdown(lift(rep)) with the comparison map back to ``rep``."""
    back = pushdown(lift(rep, model, coarse, fine), coarse)
    f = RepMorphism({v: la.eye(rep.dims[v]) for v in rep.dims})
    cq = skeleton_of(model, coarse)
    return back, f, is_isomorphism(f, back, rep, cq)


def lift_pushdown_iso(step: StepRep, coarse: Screen) -> tuple[StepRep, RepMorphism, Check]:
    """lift(pushdown(step)) with the isomorphism onto ``step``.

    At a fine vertex x in coarse pixel X the component is the map of the
    in-pixel path from the initial sub-pixel of X to x.
    """
    down = pushdown(step, coarse)
    up = lift(down, step.model, coarse, step.fine)
    fq = step.quiver
    maps = path_maps(step.rep, fq)
    comps = {}
    for x in fq.vertices:
        c = coarse_pixel_of(step.fine, coarse, x)
        i = init_pixel(step.fine, coarse, c)
        comps[x] = maps[(i, x)]
    f = RepMorphism(comps)
    return up, f, is_isomorphism(f, up.rep, step.rep, fq)


# -- extensions ------------------------------------------------------------


def glue_extension(a: QuiverRep, b: QuiverRep, quiver: ThinQuiver,
                   rng: random.Random) -> QuiverRep:
    """A random extension E with blocks [[A, C], [0, B]] satisfying the relations."""
    order = quiver.topological_order()
    offsets, total = {}, 0
    for arr in quiver.arrows:
        u, w = arr
        offsets[arr] = total
        total += a.dims[w] * b.dims[u]
    bmaps = path_maps(b, quiver)
    incoming = {w: [] for w in quiver.vertices}
    for arr in quiver.arrows:
        incoming[arr[1]].append(arr)
    # T[(u, w)]: linear forms for the top-right block of the u -> w path map
    T = {(u, u): {} for u in quiver.vertices}
    rows = []
    for w in order:
        for arr in incoming[w]:
            v = arr[0]
            am = la.rows_of(a.mats[arr])
            for u in quiver.vertices:
                if (u, v) not in T:
                    continue
                tv = T[(u, v)]
                bp = la.rows_of(bmaps[(u, v)])
                new = {}
                for i in range(a.dims[w]):
                    for j in range(b.dims[u]):
                        acc = {}
                        for k in range(a.dims[v]):
                            if am[i][k]:
                                for var, c in tv.get((k, j), {}).items():
                                    acc[var] = acc.get(var, 0) + am[i][k] * c
                        for k in range(b.dims[v]):
                            if bp[k][j]:
                                var = offsets[arr] + i * b.dims[v] + k
                                acc[var] = acc.get(var, 0) + bp[k][j]
                        acc = {x: c for x, c in acc.items() if c}
                        if acc:
                            new[(i, j)] = acc
                if (u, w) not in T:
                    T[(u, w)] = new
                else:
                    old = T[(u, w)]
                    for key in set(old) | set(new):
                        diff = dict(new.get(key, {}))
                        for x, c in old.get(key, {}).items():
                            diff[x] = diff.get(x, 0) - c
                        diff = {x: c for x, c in diff.items() if c}
                        if diff:
                            rows.append(diff)
    for (u, w), t in T.items():
        if u != w and not quiver.hom_bit(u, w):
            rows.extend(d for d in t.values() if d)
    if total == 0:
        values = []
    else:
        system = la.sparse(dict(enumerate(rows)), max(len(rows), 1), total) if rows \
            else la.zeros(1, total)
        basis = la.nullspace(system)
        vec = [0] * total
        for col in (la.rows_of(basis.transpose()) if basis.shape[1] else []):
            c = rng.randint(-2, 2)
            vec = [x + c * y for x, y in zip(vec, col)]
        values = vec
    dims = {v: a.dims[v] + b.dims[v] for v in quiver.vertices}
    mats = {}
    for arr in quiver.arrows:
        u, w = arr
        o = offsets[arr]
        cm = [[values[o + i * b.dims[u] + k] for k in range(b.dims[u])] for i in range(a.dims[w])]
        c = la.mat(cm, a.dims[w], b.dims[u]) if a.dims[w] and b.dims[u] else \
            la.zeros(a.dims[w], b.dims[u])
        mats[arr] = la.block([[a.mats[arr], c],
                              [la.zeros(b.dims[w], a.dims[u]), b.mats[arr]]])
    return QuiverRep(dims, mats)


def random_rep(quiver: ThinQuiver, rng: random.Random, max_gens: int = 3) -> QuiverRep:
    """Cokernel of a random map between sums of projectives."""
    verts = list(quiver.vertices)
    top = [rng.choice(verts) for _ in range(rng.randint(1, max_gens))]
    rel = [rng.choice(verts) for _ in range(rng.randint(0, max_gens))]
    p0, p1 = free_rep(quiver, top), free_rep(quiver, rel)
    f = random_morphism(p1, p0, quiver, rng)
    return rep_kernel_cokernel(f, p1, p0, quiver).cokernel


def conjugate(rep: QuiverRep, quiver: ThinQuiver, rng: random.Random) -> tuple[QuiverRep, RepMorphism]:
    """Random change of basis at every vertex; returns (rep', iso rep -> rep')."""
    comps = {}
    for v, d in rep.dims.items():
        while True:
            g = la.mat([[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)], d, d) \
                if d else la.zeros(0, 0)
            if la.is_invertible(g):
                break
        comps[v] = g
    mats = {}
    for a, m in rep.mats.items():
        u, w = a
        mats[a] = la.mul(la.mul(comps[w], m), la.inverse(comps[u]))
    return QuiverRep(dict(rep.dims), mats), RepMorphism(comps)

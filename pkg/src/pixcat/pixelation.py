"""Skeleton quivers of pixelations and a brute-force localization oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .core_model import (
    AuslanderChain,
    FiniteThinCategory,
    Free,
    InputError,
    MaxLength,
    NEG_INF,
    POS_INF,
    PathModel,
    format_rational,
    parse_rational,
    reflexive_transitive_closure,
)
from .screens import (
    PixelIndex,
    RefinementKind,
    Screen,
    init_pixel,
    meet,
    refinement_relation,
    sample_screen,
)


def vertex_key(v) -> str:
    return ",".join(str(k) for k in v)


def parse_vertex(text: str) -> tuple:
    try:
        return tuple(int(t) for t in str(text).split(","))
    except ValueError as exc:
        raise InputError(f"bad vertex label {text!r}") from exc


class ThinQuiver:
    """Vertices, arrows and a nonzero-hom bit matrix; the shared quiver shape."""

    def __init__(self, vertices: Sequence, arrows: Iterable[tuple], hom: np.ndarray):
        self.vertices = tuple(vertices)
        self.index = {v: k for k, v in enumerate(self.vertices)}
        self.arrows = tuple(arrows)
        self.hom = np.asarray(hom, dtype=bool)
        size = len(self.vertices)
        adj = np.zeros((size, size), dtype=bool)
        for u, w in self.arrows:
            adj[self.index[u], self.index[w]] = True
        self.adjacency = adj
        self.reach = reflexive_transitive_closure(adj)
        self._order = None

    def hom_bit(self, u, w) -> int:
        return int(self.hom[self.index[u], self.index[w]])

    def out_arrows(self, u) -> list:
        return [a for a in self.arrows if a[0] == u]

    def in_arrows(self, w) -> list:
        return [a for a in self.arrows if a[1] == w]

    def topological_order(self) -> list:
        if self._order is None:
            g = nx.DiGraph()
            g.add_nodes_from(self.vertices)
            g.add_edges_from(self.arrows)
            if not nx.is_directed_acyclic_graph(g):
                raise InputError("quiver has an oriented cycle")
            self._order = list(nx.lexicographical_topological_sort(g, key=self.index.get))
        return self._order

    def as_category(self) -> FiniteThinCategory:
        return FiniteThinCategory(self.vertices, self.arrows, self.hom)

    def check_invariants(self) -> list:
        """Problems with the thin-quiver invariants (empty when consistent)."""
        out = []
        for k, v in enumerate(self.vertices):
            if not self.hom[k, k]:
                out.append(f"identity of {v} is zero")
        if (self.hom & ~self.reach).any():
            u, w = np.argwhere(self.hom & ~self.reach)[0]
            out.append(f"hom {self.vertices[u]}->{self.vertices[w]} without an arrow path")
        for u, w in np.argwhere(self.hom):
            mids = self.reach[u] & self.reach[:, w]
            if not (self.hom[u] & self.hom[:, w])[mids].all():
                out.append(f"hom {self.vertices[u]}->{self.vertices[w]} has a zero factor")
        return out


class SkeletonQuiver(ThinQuiver):
    def __init__(self, vertices, arrows, hom, samples=None, pruned=(), labels=None,
                 model=None, screen=None):
        super().__init__(vertices, arrows, hom)
        self.samples = dict(samples or {})
        self.pruned = tuple(pruned)
        self.labels = dict(labels or {v: vertex_key(v) for v in self.vertices})
        self.model = model
        self.screen = screen

    def __eq__(self, other):
        if not isinstance(other, SkeletonQuiver):
            return NotImplemented
        return (self.vertices == other.vertices and self.arrows == other.arrows
                and self.pruned == other.pruned and np.array_equal(self.hom, other.hom)
                and self.samples == other.samples and self.labels == other.labels)

    __hash__ = None

    def to_dict(self) -> dict:
        return {
            "vertices": [vertex_key(v) for v in self.vertices],
            "arrows": [[vertex_key(u), vertex_key(w)] for u, w in self.arrows],
            "pruned": [[vertex_key(u), vertex_key(w)] for u, w in self.pruned],
            "hom": [[int(b) for b in row] for row in self.hom],
            "samples": {vertex_key(v): [format_rational(t) for t in p]
                        for v, p in self.samples.items()},
            "labels": {vertex_key(v): s for v, s in self.labels.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SkeletonQuiver":
        try:
            verts = [parse_vertex(v) for v in data["vertices"]]
            arrows = [(parse_vertex(u), parse_vertex(w)) for u, w in data["arrows"]]
            pruned = [(parse_vertex(u), parse_vertex(w)) for u, w in data.get("pruned", [])]
            hom = np.array(data["hom"], dtype=bool).reshape(len(verts), len(verts))
            samples = {parse_vertex(k): tuple(parse_rational(t) for t in p)
                       for k, p in data.get("samples", {}).items()}
            labels = {parse_vertex(k): s for k, s in data.get("labels", {}).items()} or None
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed skeleton JSON: {exc}") from exc
        return cls(verts, arrows, hom, samples, pruned, labels)

    def to_dot(self) -> str:
        lines = ["digraph skeleton {", "  rankdir=LR;"]
        for v in self.vertices:
            lines.append(f'  "{vertex_key(v)}" [label="{self.labels[v]}"];')
        for u, w in self.arrows:
            lines.append(f'  "{vertex_key(u)}" -> "{vertex_key(w)}";')
        for u, w in self.pruned:
            lines.append(f'  "{vertex_key(u)}" -> "{vertex_key(w)}" [style=dotted];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- symbolic hom bits -----------------------------------------------------


def _check(model: PathModel, screen: Screen):
    if model.dimension != screen.dimension:
        raise InputError("model and screen dimensions differ")


def _raw_hom(model: PathModel, screen: Screen, i: PixelIndex, j: PixelIndex) -> bool:
    x = tuple(iv.inf_corner() for iv in screen.pixel(i))
    y = tuple(iv.sup_corner() for iv in screen.pixel(j))
    return model.predicate.nonzero(x, y)


def dead_pixels(model: PathModel, screen: Screen) -> set:
    _check(model, screen)
    return {i for i in screen.pixels() if not _raw_hom(model, screen, i, i)}


def skeleton_hom(model: PathModel, screen: Screen, i: PixelIndex, j: PixelIndex) -> int:
    """Localized hom bit between two non-dead pixels.

    The morphism survives when the predicate holds from the infimum corner
    of ``i`` to the supremum corner of ``j``; open ends are approached by an
    infinitesimal so attainment follows the boundary owners.
    """
    _check(model, screen)
    i, j = tuple(i), tuple(j)
    for k in (i, j):
        if not _raw_hom(model, screen, k, k):
            raise InputError(f"pixel {k} is dead")
    return int(_raw_hom(model, screen, i, j))


def build_skeleton(model: PathModel, screen: Screen, prune: bool = True,
                   bounded_only: bool = False) -> SkeletonQuiver:
    _check(model, screen)
    pixels = [p for p in screen.pixels() if not bounded_only or screen.is_bounded(p)]
    verts = [p for p in pixels if _raw_hom(model, screen, p, p)]
    size = len(verts)
    hom = np.zeros((size, size), dtype=bool)
    for a, u in enumerate(verts):
        for b, w in enumerate(verts):
            hom[a, b] = _raw_hom(model, screen, u, w)
    index = {v: k for k, v in enumerate(verts)}
    arrows = []
    for a, u in enumerate(verts):
        for step in product((0, 1), repeat=screen.dimension):
            if not any(step):
                continue
            w = tuple(x + s for x, s in zip(u, step))
            b = index.get(w)
            if b is not None and hom[a, b]:
                arrows.append((u, w))
    kept, pruned = arrows, []
    if prune:
        kept = []
        for u, w in arrows:
            a, b = index[u], index[w]
            mids = [index[v] for v in product(*(range(x, y + 1) for x, y in zip(u, w)))
                    if v in index and v != u and v != w]
            if any(hom[a, c] and hom[c, b] for c in mids):
                pruned.append((u, w))
            else:
                kept.append((u, w))
    samples = sample_screen(screen)
    return SkeletonQuiver(
        verts, kept, hom,
        samples={v: samples[v] for v in verts},
        pruned=pruned,
        labels={v: screen.label(v) for v in verts},
        model=model, screen=screen)


# -- Init functor ----------------------------------------------------------


@dataclass
class InitFunctor:
    vertex_map: dict
    arrow_paths: dict
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "vertex_map": {vertex_key(k): vertex_key(v) for k, v in self.vertex_map.items()},
            "arrow_paths": {f"{vertex_key(u)}->{vertex_key(w)}": [vertex_key(x) for x in p]
                            for (u, w), p in self.arrow_paths.items()},
            "failures": list(self.failures),
        }


def _hom_path(skel: SkeletonQuiver, u, w):
    """Lexicographically first arrow path u -> w through vertices on the hom."""
    a, b = skel.index[u], skel.index[w]
    allowed = {v for v in skel.vertices
               if skel.hom[a, skel.index[v]] and skel.hom[skel.index[v], b]}
    g = nx.DiGraph()
    g.add_nodes_from(allowed)
    g.add_edges_from((x, y) for x, y in skel.arrows if x in allowed and y in allowed)
    if u not in g or w not in g or not nx.has_path(g, u, w):
        return None
    path = [u]
    while path[-1] != w:
        nxt = sorted(y for y in g.successors(path[-1]) if nx.has_path(g, y, w))
        path.append(nxt[0])
    return path


def init_functor(model: PathModel, fine: Screen, coarse: Screen,
                 fine_skel: SkeletonQuiver | None = None,
                 coarse_skel: SkeletonQuiver | None = None) -> InitFunctor:
    if refinement_relation(fine, coarse) is not RefinementKind.FINITARY:
        raise InputError("fine screen is not a finitary refinement of the coarse screen")
    fs = fine_skel or build_skeleton(model, fine)
    cs = coarse_skel or build_skeleton(model, coarse)
    vmap, paths, failures = {}, {}, []
    for v in cs.vertices:
        iv = init_pixel(fine, coarse, v)
        vmap[v] = iv
        if iv not in fs.index:
            failures.append(f"initial sub-pixel {iv} of {v} is dead")
    for u, w in cs.arrows:
        if vmap[u] not in fs.index or vmap[w] not in fs.index:
            continue
        p = _hom_path(fs, vmap[u], vmap[w])
        if p is None or not fs.hom_bit(vmap[u], vmap[w]):
            failures.append(f"arrow {u}->{w} has no nonzero image {vmap[u]}->{vmap[w]}")
        else:
            paths[(u, w)] = p
    # composites go to composites: nonzero coarse homs stay nonzero
    for u in cs.vertices:
        for w in cs.vertices:
            if cs.hom_bit(u, w) and vmap[u] in fs.index and vmap[w] in fs.index:
                if not fs.hom_bit(vmap[u], vmap[w]):
                    failures.append(f"hom {u}->{w} maps to a zero fine hom")
    return InitFunctor(vmap, paths, failures)


# -- brute-force localization ----------------------------------------------


class LocalizedCategory(FiniteThinCategory):
    """Localization with objects = sigma classes, labelled by a representative.

    ``hom`` records whether some morphism between two classes is nonzero; the
    class quotient may have cycles, so the factorization check is skipped.
    """

    def __init__(self, objects, arrows, hom, classes: dict):
        super().__init__(objects, arrows, hom)
        self.classes = classes

    def _check_factorization(self):
        pass

    def class_of(self, x):
        for rep, members in self.classes.items():
            if x in members:
                return rep
        raise InputError(f"{x!r} is not an object")


def _sigma_matrix(cat: FiniteThinCategory, sigma) -> np.ndarray:
    if isinstance(sigma, np.ndarray):
        s = sigma.astype(bool)
    else:
        s = np.zeros((len(cat), len(cat)), dtype=bool)
        for u, w in sigma:
            if u not in cat.index or w not in cat.index:
                raise InputError(f"sigma pair {u!r}->{w!r} has an unknown endpoint")
            s[cat.index[u], cat.index[w]] = True
    s |= np.eye(len(cat), dtype=bool)
    if (s & ~cat.reach).any():
        u, w = np.argwhere(s & ~cat.reach)[0]
        raise InputError(f"sigma pair {cat.objects[u]!r}->{cat.objects[w]!r} is not a morphism")
    return s


def localization_zero(reach: np.ndarray, hom: np.ndarray, sigma: np.ndarray, labels):
    """Fixpoint of the zero-morphism closure; returns (Z, class labels)."""
    size = reach.shape[0]
    # classes: zigzag components of sigma
    parent = list(range(size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, w in np.argwhere(sigma):
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[max(ru, rw)] = min(ru, rw)
    cls = np.array([find(a) for a in range(size)])
    ri = reach.astype(np.int64)
    st = sigma.T.astype(np.int64)
    z = reach & ~hom
    while True:
        zi = z.astype(np.int64)
        nz = z | ((((zi @ ri) > 0) | ((ri @ zi) > 0)) & reach)
        nz |= ((st @ nz.astype(np.int64) @ st) > 0) & reach
        dead = np.unique(cls[np.any(nz & sigma, axis=1)])
        for c in dead:
            m = cls == c
            nz[m, :] |= reach[m, :]
            nz[:, m] |= reach[:, m]
        if np.array_equal(nz, z):
            return z, cls
        z = nz


def localization_oracle(cat: FiniteThinCategory, sigma) -> LocalizedCategory:
    s = _sigma_matrix(cat, sigma)
    z, cls = localization_zero(cat.reach, cat.hom, s, cat.objects)
    live = cat.reach & ~z
    reps = sorted(set(cls.tolist()))
    pos = {c: k for k, c in enumerate(reps)}
    size = len(reps)
    hom = np.zeros((size, size), dtype=bool)
    for x, y in np.argwhere(live):
        hom[pos[cls[x]], pos[cls[y]]] = True
    labels = [cat.objects[c] for c in reps]
    arrows = sorted({(pos[cls[cat.index[u]]], pos[cls[cat.index[w]]]) for u, w in cat.arrows})
    arrows = [(labels[a], labels[b]) for a, b in arrows if a != b]
    classes = {cat.objects[c]: frozenset(cat.objects[x] for x in range(len(cls)) if cls[x] == c)
               for c in reps}
    return LocalizedCategory(labels, arrows, hom, classes)


# -- oracle on sampled interval models -------------------------------------


def _factor_samples(screen: Screen, k: int, eps: Fraction, far: Fraction) -> list:
    f = screen.factors[k]
    pts = []
    for p in range(f.n_pixels):
        iv = f.pixel(p)
        lo = None if iv.lo is NEG_INF else (iv.lo if iv.lo_closed else iv.lo + eps)
        hi = None if iv.hi is POS_INF else (iv.hi if iv.hi_closed else iv.hi - eps)
        if lo is None and hi is None:
            vals = [-far, Fraction(0), far]
        elif lo is None:
            vals = [hi - far, hi]
        elif hi is None:
            vals = [lo, lo + far]
        else:
            vals = sorted({lo, (iv.lo + iv.hi) / 2, hi})
        pts.extend((v, p) for v in vals)
    pts.sort()
    return pts


def sampled_category(model: PathModel, screen: Screen):
    """Finite thin category on corner/midpoint samples, with in-pixel sigma.

    Returns ``(category, sigma, pixel_of_object)``; objects are integer
    indices into the sampled grid and ``points`` lists their coordinates.
    """
    _check(model, screen)
    dens = [b.at.denominator for f in screen.factors for b in f.boundaries]
    span = max([abs(b.at) for f in screen.factors for b in f.boundaries] or [Fraction(0)])
    d = getattr(model.predicate, "d", Fraction(1))
    q = lcm(*(dens or [1]), d.denominator)
    eps = Fraction(1, 8 * q)
    far = 2 * span + d + 1
    per = [_factor_samples(screen, k, eps, far) for k in range(screen.dimension)]
    shape = [len(p) for p in per]
    grid = list(product(*(range(s) for s in shape)))
    pos = {g: k for k, g in enumerate(grid)}
    points = [tuple(per[k][g[k]][0] for k in range(len(g))) for g in grid]
    pix = [tuple(per[k][g[k]][1] for k in range(len(g))) for g in grid]
    arrows = []
    for g in grid:
        for k in range(len(g)):
            if g[k] + 1 < shape[k]:
                h = g[:k] + (g[k] + 1,) + g[k + 1:]
                arrows.append((pos[g], pos[h]))
    size = len(grid)
    adj = np.zeros((size, size), dtype=bool)
    for a, b in arrows:
        adj[a, b] = True
    reach = reflexive_transitive_closure(adj)
    hom = reach & _vector_hom(model, points, q * 8 * d.denominator)
    cat = FiniteThinCategory(list(range(size)), arrows, hom)
    pix_arr = np.array(pix)
    same = np.all(pix_arr[:, None, :] == pix_arr[None, :, :], axis=2)
    sigma = reach & same
    return cat, sigma, pix, points


def _vector_hom(model: PathModel, points, scale: int) -> np.ndarray:
    """Predicate table on rational points, using exact integer arithmetic."""
    scaled = [[t * scale for t in p] for p in points]
    if any(t.denominator != 1 for p in scaled for t in p):
        raise InputError("sample grid is not on the integer lattice after scaling")
    arr = np.array([[int(t) for t in p] for p in scaled], dtype=np.int64)
    x = arr[:, None, :]
    y = arr[None, :, :]
    pred = model.predicate
    le = np.all(x <= y, axis=2)
    if isinstance(pred, Free):
        return le
    if isinstance(pred, MaxLength):
        dd = int(pred.d * scale)
        return le & ((y - x)[:, :, 0] < dd)
    if isinstance(pred, AuslanderChain):
        ok = (x[:, :, 0] > 0) & (y[:, :, -1] < scale) & le
        n = arr.shape[1]
        for k in range(n - 1):
            ok &= y[:, :, k] < x[:, :, k + 1]
        return ok
    raise InputError("unknown predicate")


@dataclass
class OracleComparison:
    agree: bool
    mismatches: list
    dead_skeleton: set
    dead_oracle: set
    pairs_checked: int

    def to_dict(self) -> dict:
        return {
            "agree": self.agree,
            "mismatches": self.mismatches[:20],
            "dead_skeleton": sorted(vertex_key(d) for d in self.dead_skeleton),
            "dead_oracle": sorted(vertex_key(d) for d in self.dead_oracle),
            "pairs_checked": self.pairs_checked,
        }


def compare_with_oracle(model: PathModel, screen: Screen) -> OracleComparison:
    cat, sigma, pix, _ = sampled_category(model, screen)
    s = sigma | np.eye(len(cat), dtype=bool)
    z, cls = localization_zero(cat.reach, cat.hom, s, cat.objects)
    live = cat.reach & ~z
    pixels = screen.pixels()
    members = {p: [k for k, q in enumerate(pix) if q == p] for p in pixels}
    mismatches = []
    for p in pixels:
        if len({int(cls[k]) for k in members[p]}) != 1:
            mismatches.append(f"pixel {p} splits into several classes")
    dead_o = {p for p in pixels if not live[np.ix_(members[p], members[p])].any()}
    dead_s = dead_pixels(model, screen)
    if dead_o != dead_s:
        mismatches.append(f"dead sets differ: skeleton {sorted(dead_s)} oracle {sorted(dead_o)}")
    alive = [p for p in pixels if p not in dead_s and p not in dead_o]
    checked = 0
    for i in alive:
        for j in alive:
            o = bool(live[np.ix_(members[i], members[j])].any())
            sk = bool(_raw_hom(model, screen, i, j))
            checked += 1
            if o != sk:
                mismatches.append(f"hom {i}->{j}: skeleton {int(sk)} oracle {int(o)}")
    return OracleComparison(not mismatches, mismatches, dead_s, dead_o, checked)


# -- sheaf equalizer -------------------------------------------------------


@dataclass
class SheafReport:
    passed: bool
    equalizer_size: int
    image_size: int
    witnesses: list

    def to_dict(self) -> dict:
        return {"passed": self.passed, "equalizer_size": self.equalizer_size,
                "image_size": self.image_size, "witnesses": self.witnesses}


def sheaf_equalizer_check(model: PathModel, screens: Sequence[Screen], joined: Screen,
                          init_override: dict | None = None) -> SheafReport:
    """Compare skel(joined) with the equalizer of the Init maps into the meets.

    ``init_override`` maps ``(screen position, joined vertex)`` to a fine
    pixel used instead of the initial sub-pixel (for perturbation tests).
    """
    screens = list(screens)
    if not screens:
        raise InputError("need at least one screen")
    for s in screens:
        _check(model, s)
        if refinement_relation(s, joined) is not RefinementKind.FINITARY:
            raise InputError("every screen must finitarily refine the joined screen")
    skels = [build_skeleton(model, s) for s in screens]
    sj = build_skeleton(model, joined)
    r = len(screens)
    meets = {(a, b): meet(screens[a], screens[b]) for a in range(r) for b in range(r)}

    def to_meet(a, b, side, x):
        src = screens[a] if side == 0 else screens[b]
        return init_pixel(meets[(a, b)], src, x)

    # equalizer tuples by backtracking over coordinates
    eq = []

    def extend(prefix):
        k = len(prefix)
        if k == r:
            eq.append(tuple(prefix))
            return
        for x in skels[k].vertices:
            ok = True
            for a in range(k + 1):
                xa = prefix[a] if a < k else x
                if to_meet(a, k, 0, xa) != to_meet(a, k, 1, x):
                    ok = False
                    break
                if to_meet(k, a, 0, x) != to_meet(k, a, 1, xa):
                    ok = False
                    break
            if ok:
                extend(prefix + [x])

    extend([])
    override = init_override or {}
    image = {}
    for v in sj.vertices:
        image[v] = tuple(override.get((a, v), init_pixel(screens[a], joined, v)) for a in range(r))
    witnesses = []
    eq_set = set(eq)
    for v, t in image.items():
        if t not in eq_set:
            witnesses.append(f"image of {v} is {t}, which is not in the equalizer")
    image_set = set(image.values())
    if len(image_set) != len(image):
        witnesses.append("two joined pixels share an image tuple")
    for t in eq:
        if t not in image_set:
            witnesses.append(f"equalizer tuple {t} is not the image of a joined pixel")
    for u in sj.vertices:
        for w in sj.vertices:
            tu, tw = image[u], image[w]
            if any(x not in skels[a].index for a, x in enumerate(tu)) or any(
                    x not in skels[a].index for a, x in enumerate(tw)):
                continue
            bits = all(skels[a].hom_bit(tu[a], tw[a]) for a in range(r))
            if bool(sj.hom_bit(u, w)) != bits:
                witnesses.append(f"hom {u}->{w} disagrees with the componentwise homs")
    return SheafReport(not witnesses, len(eq), len(image_set), witnesses)

"""Interval screens of R^n, finite partitions and the screen axioms.

A screen factor is a finite sorted list of cuts of the real line.  A cut
at ``a`` owned by ``UPPER`` separates ``(.., a)`` from ``[a, ..)``; one owned
by ``LOWER`` separates ``(.., a]`` from ``(a, ..)``.  Both cuts may sit at the
same ``a``, which isolates the point pixel ``[a, a]``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Hashable, Iterable, Sequence

import networkx as nx
import numpy as np

from .core_model import (
    NEG_INF,
    POS_INF,
    Approach,
    FiniteThinCategory,
    InputError,
    PathModel,
    format_rational,
    parse_rational,
    reflexive_transitive_closure,
)

PixelIndex = tuple


class Owner(enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class Boundary:
    at: Fraction
    owner: Owner

    def __post_init__(self):
        object.__setattr__(self, "at", parse_rational(self.at))
        if not isinstance(self.owner, Owner):
            try:
                object.__setattr__(self, "owner", Owner(self.owner))
            except ValueError as exc:
                raise InputError(f"unknown boundary owner {self.owner!r}") from exc

    @property
    def key(self) -> tuple:
        # an UPPER cut at a lies just before a, a LOWER cut just after it
        return (self.at, 0 if self.owner is Owner.UPPER else 1)

    def passed_by(self, t: Fraction) -> bool:
        return t >= self.at if self.owner is Owner.UPPER else t > self.at


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object
    lo_closed: bool
    hi_closed: bool

    @property
    def bounded(self) -> bool:
        return self.lo is not NEG_INF and self.hi is not POS_INF

    def contains(self, t) -> bool:
        if self.lo is not NEG_INF and (t < self.lo or (t == self.lo and not self.lo_closed)):
            return False
        if self.hi is not POS_INF and (t > self.hi or (t == self.hi and not self.hi_closed)):
            return False
        return True

    def inf_corner(self) -> Approach:
        """The infimum, pushed inward by an infinitesimal when not attained."""
        if self.lo is NEG_INF:
            return Approach(NEG_INF)
        return Approach(self.lo, 0 if self.lo_closed else 1)

    def sup_corner(self) -> Approach:
        if self.hi is POS_INF:
            return Approach(POS_INF)
        return Approach(self.hi, 0 if self.hi_closed else -1)

    def sample(self) -> Fraction:
        if self.bounded:
            return (self.lo + self.hi) / 2
        if self.lo is NEG_INF and self.hi is POS_INF:
            return Fraction(0)
        if self.lo is NEG_INF:
            return self.hi - 1
        return self.lo + 1

    def label(self) -> str:
        left = "(" if self.lo is NEG_INF or not self.lo_closed else "["
        right = ")" if self.hi is POS_INF or not self.hi_closed else "]"
        lo = "-∞" if self.lo is NEG_INF else format_rational(self.lo)
        hi = "∞" if self.hi is POS_INF else format_rational(self.hi)
        return f"{left}{lo},{hi}{right}"


class ScreenFactor:
    """Finite cut list on the real line; ``len(cuts) + 1`` pixels."""

    __slots__ = ("boundaries", "_keys")

    def __init__(self, boundaries: Iterable[Boundary]):
        bs = tuple(boundaries)
        keys = [b.key for b in bs]
        if any(keys[k] >= keys[k + 1] for k in range(len(keys) - 1)):
            raise InputError("boundaries must be sorted with distinct cuts")
        self.boundaries = bs
        self._keys = tuple(keys)

    @classmethod
    def from_keys(cls, keys: Iterable[tuple]) -> "ScreenFactor":
        return cls(Boundary(at, Owner.UPPER if side == 0 else Owner.LOWER)
                   for at, side in sorted(keys))

    def __eq__(self, other):
        return isinstance(other, ScreenFactor) and self._keys == other._keys

    def __hash__(self):
        return hash(self._keys)

    def __repr__(self):
        return f"ScreenFactor({[(format_rational(b.at), b.owner.value) for b in self.boundaries]})"

    @property
    def keys(self) -> tuple:
        return self._keys

    @property
    def n_pixels(self) -> int:
        return len(self.boundaries) + 1

    def pixel(self, k: int) -> Interval:
        if not 0 <= k < self.n_pixels:
            raise InputError(f"pixel index {k} out of range")
        if k == 0:
            lo, lo_closed = NEG_INF, False
        else:
            b = self.boundaries[k - 1]
            lo, lo_closed = b.at, b.owner is Owner.UPPER
        if k == len(self.boundaries):
            hi, hi_closed = POS_INF, False
        else:
            b = self.boundaries[k]
            hi, hi_closed = b.at, b.owner is Owner.LOWER
        return Interval(lo, hi, lo_closed, hi_closed)

    def index_of(self, t: Fraction) -> int:
        return sum(1 for b in self.boundaries if b.passed_by(t))

    def to_dict(self) -> dict:
        return {"boundaries": [{"at": format_rational(b.at), "owner": b.owner.value}
                               for b in self.boundaries]}


@dataclass(frozen=True)
class Screen:
    factors: tuple

    def __post_init__(self):
        fs = tuple(self.factors)
        if not fs:
            raise InputError("a screen needs at least one factor")
        object.__setattr__(self, "factors", fs)

    @property
    def dimension(self) -> int:
        return len(self.factors)

    @property
    def shape(self) -> tuple:
        return tuple(f.n_pixels for f in self.factors)

    def pixels(self) -> list:
        return list(product(*(range(f.n_pixels) for f in self.factors)))

    def pixel(self, idx: PixelIndex) -> tuple:
        self._check_index(idx)
        return tuple(f.pixel(k) for f, k in zip(self.factors, idx))

    def label(self, idx: PixelIndex) -> str:
        return "×".join(iv.label() for iv in self.pixel(idx))

    def is_bounded(self, idx: PixelIndex) -> bool:
        return all(iv.bounded for iv in self.pixel(idx))

    def _check_index(self, idx):
        if len(idx) != self.dimension:
            raise InputError("pixel index has the wrong length")
        for f, k in zip(self.factors, idx):
            if not 0 <= k < f.n_pixels:
                raise InputError(f"pixel index {tuple(idx)} out of range")

    def to_dict(self) -> dict:
        return {"factors": [f.to_dict() for f in self.factors]}

    @classmethod
    def from_dict(cls, data: dict) -> "Screen":
        try:
            return cls(tuple(
                ScreenFactor(Boundary(b["at"], b["owner"]) for b in f["boundaries"])
                for f in data["factors"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed screen JSON: {exc}") from exc


def factor(*cuts) -> ScreenFactor:
    """``factor((0, "upper"), ("1/2", "lower"))`` or plain rationals (owner upper)."""
    bs = []
    for c in cuts:
        if isinstance(c, tuple):
            bs.append(Boundary(parse_rational(c[0]), Owner(c[1])))
        else:
            bs.append(Boundary(parse_rational(c), Owner.UPPER))
    return ScreenFactor(bs)


def integer_screen(lo: int, hi: int, dimension: int = 1) -> Screen:
    """Cuts at lo, lo+1, .., hi, all owned by the upper pixel."""
    f = factor(*range(lo, hi + 1))
    return Screen((f,) * dimension)


def pixel_of(screen: Screen, p: Sequence) -> PixelIndex:
    if len(p) != screen.dimension:
        raise InputError("point and screen dimensions differ")
    return tuple(f.index_of(parse_rational(t)) for f, t in zip(screen.factors, p))


def sample_screen(screen: Screen, model: PathModel | None = None) -> dict:
    if model is not None and model.dimension != screen.dimension:
        raise InputError("model and screen dimensions differ")
    return {idx: tuple(iv.sample() for iv in screen.pixel(idx)) for idx in screen.pixels()}


# -- finite partitions -----------------------------------------------------


def label_key(x):
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


@dataclass(frozen=True)
class FinitePartition:
    ground: tuple
    blocks: frozenset

    def __init__(self, ground: Iterable[Hashable], blocks: Iterable[Iterable[Hashable]]):
        g = tuple(sorted(set(ground), key=label_key))
        bl = frozenset(frozenset(b) for b in blocks)
        seen = set()
        for b in bl:
            if not b:
                raise InputError("blocks must be nonempty")
            if seen & b:
                raise InputError("blocks must be disjoint")
            seen |= b
        if seen != set(g):
            raise InputError("blocks must cover the ground set exactly")
        object.__setattr__(self, "ground", g)
        object.__setattr__(self, "blocks", bl)

    def sorted_blocks(self) -> list:
        out = [sorted(b, key=label_key) for b in self.blocks]
        return sorted(out, key=lambda b: [label_key(x) for x in b])

    def block_of(self, x) -> frozenset:
        for b in self.blocks:
            if x in b:
                return b
        raise InputError(f"{x!r} is not in the ground set")

    def to_dict(self) -> dict:
        return {"ground": list(self.ground), "blocks": self.sorted_blocks()}

    @classmethod
    def from_dict(cls, data: dict) -> "FinitePartition":
        try:
            return cls(data["ground"], data["blocks"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed partition JSON: {exc}") from exc


# -- meet and join ---------------------------------------------------------


@dataclass(frozen=True)
class NotAScreen:
    """Join components whose unions are not boxes."""

    witness: tuple

    def to_dict(self) -> dict:
        return {"not_a_screen": True, "witness": [list(map(list, c)) for c in self.witness]}


def _same_kind(p, q):
    if isinstance(p, Screen) and isinstance(q, Screen):
        if p.dimension != q.dimension:
            raise InputError("screens of different dimension")
        return "screen"
    if isinstance(p, FinitePartition) and isinstance(q, FinitePartition):
        if p.ground != q.ground:
            raise InputError("partitions of different ground sets")
        return "partition"
    raise InputError("meet/join need two screens or two finite partitions")


def meet(p, q):
    if _same_kind(p, q) == "screen":
        return Screen(tuple(ScreenFactor.from_keys(set(a.keys) | set(b.keys))
                            for a, b in zip(p.factors, q.factors)))
    return FinitePartition(p.ground, [a & b for a in p.blocks for b in q.blocks if a & b])


@dataclass
class JoinComplex:
    graph: nx.Graph
    components: list = field(default_factory=list)


def join_complex(p, q) -> JoinComplex:
    """Bipartite overlap graph on the blocks of p and q, with its components."""
    kind = _same_kind(p, q)
    g = nx.Graph()
    if kind == "partition":
        pb = [("P", tuple(b)) for b in p.sorted_blocks()]
        qb = [("Q", tuple(b)) for b in q.sorted_blocks()]
        g.add_nodes_from(pb + qb)
        for a in pb:
            for b in qb:
                if set(a[1]) & set(b[1]):
                    g.add_edge(a, b)
    else:
        pb = [("P", i) for i in p.pixels()]
        qb = [("Q", j) for j in q.pixels()]
        g.add_nodes_from(pb + qb)
        # factorwise overlap tables, then products
        overlaps = [_factor_overlaps(fa, fb) for fa, fb in zip(p.factors, q.factors)]
        for _, i in pb:
            choices = [overlaps[k][i[k]] for k in range(p.dimension)]
            for j in product(*choices):
                g.add_edge(("P", i), ("Q", j))
    comps = [sorted(c, key=repr) for c in nx.connected_components(g)]
    comps.sort(key=repr)
    return JoinComplex(g, comps)


def _factor_overlaps(fa: ScreenFactor, fb: ScreenFactor) -> list:
    # pixel k of fa meets pixel l of fb iff their cut ranges overlap
    merged = sorted(set(fa.keys) | set(fb.keys))
    pos = {key: r for r, key in enumerate(merged)}

    def spans(f):
        out = []
        ks = [pos[k] for k in f.keys]
        for k in range(f.n_pixels):
            lo = ks[k - 1] + 1 if k > 0 else 0
            hi = ks[k] if k < len(ks) else len(merged)
            out.append((lo, hi))
        return out

    sa, sb = spans(fa), spans(fb)
    return [[l for l, (c, d) in enumerate(sb) if max(a, c) <= min(b, d)] for a, b in sa]


def join(p, q):
    kind = _same_kind(p, q)
    cx = join_complex(p, q)
    if kind == "partition":
        blocks = []
        for comp in cx.components:
            blocks.append({x for side, b in comp if side == "P" for x in b})
        return FinitePartition(p.ground, blocks)
    candidate = Screen(tuple(ScreenFactor.from_keys(set(a.keys) & set(b.keys))
                             for a, b in zip(p.factors, q.factors)))
    # each component must be exactly the set of p-pixels of one candidate pixel
    counts = {}
    for i in p.pixels():
        c = _coarse_index(p, candidate, i)
        counts[c] = counts.get(c, 0) + 1
    bad = []
    for comp in cx.components:
        ps = [i for side, i in comp if side == "P"]
        targets = {_coarse_index(p, candidate, i) for i in ps}
        if len(targets) != 1 or counts[targets.pop()] != len(ps):
            bad.append(tuple(ps))
    if bad:
        return NotAScreen(tuple(bad))
    return candidate


def _coarse_index(fine: Screen, coarse: Screen, i: PixelIndex) -> PixelIndex:
    out = []
    for ff, fc, k in zip(fine.factors, coarse.factors, i):
        if k == 0:
            out.append(0)
            continue
        lower_cut = ff.keys[k - 1]
        out.append(sum(1 for c in fc.keys if c <= lower_cut))
    return tuple(out)


# -- refinement and initial sub-pixels -------------------------------------


class RefinementKind(enum.Enum):
    NOT_REFINEMENT = "not_refinement"
    REFINEMENT = "refinement"
    FINITARY = "finitary_refinement"


def refinement_relation(p: Screen, q: Screen) -> RefinementKind:
    """How ``p`` refines ``q``."""
    if p.dimension != q.dimension:
        raise InputError("screens of different dimension")
    for fp, fq in zip(p.factors, q.factors):
        if not set(fq.keys) <= set(fp.keys):
            return RefinementKind.NOT_REFINEMENT
    # finite cut lists: every coarse pixel holds finitely many fine pixels
    return RefinementKind.FINITARY


def coarse_pixel_of(fine: Screen, coarse: Screen, i: PixelIndex) -> PixelIndex:
    if refinement_relation(fine, coarse) is RefinementKind.NOT_REFINEMENT:
        raise InputError("fine screen does not refine the coarse screen")
    fine._check_index(i)
    return _coarse_index(fine, coarse, i)


def init_pixel(fine: Screen, coarse: Screen, j: PixelIndex) -> PixelIndex:
    """Fine sub-pixel holding the infimum corner of coarse pixel ``j``."""
    if refinement_relation(fine, coarse) is RefinementKind.NOT_REFINEMENT:
        raise InputError("fine screen does not refine the coarse screen")
    coarse._check_index(j)
    out = []
    for ff, fc, k in zip(fine.factors, coarse.factors, j):
        out.append(0 if k == 0 else ff.keys.index(fc.keys[k - 1]) + 1)
    return tuple(out)


def subpixels(fine: Screen, coarse: Screen, j: PixelIndex) -> list:
    init = init_pixel(fine, coarse, j)
    ranges = []
    for ff, fc, k, s in zip(fine.factors, coarse.factors, j, init):
        if k == len(fc.keys):
            end = ff.n_pixels
        else:
            end = ff.keys.index(fc.keys[k]) + 1
        ranges.append(range(s, end))
    return list(product(*ranges))


def initial_block(cat: FiniteThinCategory, fine: FinitePartition, coarse_block) -> frozenset:
    """Initial fine block inside ``coarse_block`` by pairwise elimination.

    Of two candidate blocks, one reached from the other is dropped; when
    neither reaches the other a common source inside the coarse block
    replaces both.
    """
    coarse_block = frozenset(coarse_block)
    subs = sorted((b for b in fine.blocks if b <= coarse_block),
                  key=lambda b: sorted(map(label_key, b)))
    if not subs or frozenset().union(*subs) != coarse_block:
        raise InputError("fine partition does not refine the coarse block")
    idx = cat.index
    members = [idx[x] for x in coarse_block]

    def reaches(a, b):
        return any(cat.reach[idx[x], idx[y]] for x in a for y in b)

    def block_of(v):
        return next(b for b in subs if cat.objects[v] in b)

    alive = list(subs)
    while len(alive) > 1:
        a, b = alive[0], alive[1]
        if reaches(a, b):
            alive.pop(1)
        elif reaches(b, a):
            alive.pop(0)
        else:
            src = [v for v in members
                   if reaches({cat.objects[v]}, a) and reaches({cat.objects[v]}, b)]
            if not src:
                raise InputError("two sub-blocks have no common source")
            keep = block_of(src[0])
            alive = [keep] + [c for c in alive[2:] if c != keep]
    init = alive[0]
    for b in subs:
        if not reaches(init, b):
            raise InputError("elimination survivor does not reach every sub-block")
    return init


# -- screen axioms on finite thin categories -------------------------------


@dataclass
class AxiomReport:
    results: dict

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.results.values())

    def witnesses(self) -> list:
        return [f"{name}: {r['witness']}" for name, r in self.results.items() if not r["passed"]]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "axioms": self.results}


def in_block_reach(cat: FiniteThinCategory, partition: FinitePartition) -> np.ndarray:
    """Paths of generators that never leave a block (the set Sigma)."""
    size = len(cat)
    adj = np.zeros((size, size), dtype=bool)
    block_id = _block_ids(cat, partition)
    for u, w in cat.arrows:
        a, b = cat.index[u], cat.index[w]
        if block_id[a] == block_id[b]:
            adj[a, b] = True
    return reflexive_transitive_closure(adj)


def _block_ids(cat, partition) -> np.ndarray:
    if set(partition.ground) != set(cat.objects):
        raise InputError("partition ground set differs from the category objects")
    ids = np.zeros(len(cat), dtype=np.int64)
    for k, b in enumerate(partition.sorted_blocks()):
        for x in b:
            ids[cat.index[x]] = k
    return ids


def check_screen_axioms_finite(cat: FiniteThinCategory, partition: FinitePartition) -> AxiomReport:
    objs = cat.objects
    block_id = _block_ids(cat, partition)
    same = block_id[:, None] == block_id[None, :]
    reach = cat.reach
    sigma = in_block_reach(cat, partition)
    ri = reach.astype(np.int64)
    si = sigma.astype(np.int64)
    results = {}

    # 1. thin blocks: a path between two objects of a block stays in it
    between = (reach[:, :, None] & reach[None, :, :]) if len(cat) <= 200 else None
    witness = None
    if between is not None:
        # between[u, w, v]: u -> w -> v
        viol = between & (same & reach)[:, None, :] & ~same[:, :, None]
        hit = np.argwhere(viol)
        if len(hit):
            u, w, v = hit[0]
            witness = f"{objs[u]!r} -> {objs[w]!r} -> {objs[v]!r} leaves the block"
    else:
        for u, v in np.argwhere(same & reach):
            mid = reach[u] & reach[:, v] & ~same[u]
            if mid.any():
                w = int(np.argmax(mid))
                witness = f"{objs[u]!r} -> {objs[w]!r} -> {objs[v]!r} leaves the block"
                break
    results["thin"] = {"passed": witness is None, "witness": witness}

    # 2. connected through in-block generators
    zig = sigma | sigma.T
    zig = reflexive_transitive_closure(zig)
    hit = np.argwhere(same & ~zig)
    witness = None
    if len(hit):
        u, v = hit[0]
        witness = f"no in-block zigzag between {objs[u]!r} and {objs[v]!r}"
    results["connected"] = {"passed": witness is None, "witness": witness}

    # 3. Ore completions
    # left: sigma x->x', f x->y  =>  exists y' with sigma y->y' and x'->y'
    need = (si.T @ ri) > 0
    have = (ri @ si.T) > 0
    hit = np.argwhere(need & ~have)
    witness = None
    if len(hit):
        xp, y = hit[0]
        witness = f"left square at x'={objs[xp]!r}, y={objs[y]!r} has no completion"
    # right: sigma y'->y, f x->y  =>  exists x' with sigma x'->x and x'->y'
    need_r = (ri @ si.T) > 0
    have_r = (si.T @ ri) > 0
    hit_r = np.argwhere(need_r & ~have_r)
    if witness is None and len(hit_r):
        x, yp = hit_r[0]
        witness = f"right square at x={objs[x]!r}, y'={objs[yp]!r} has no completion"
    results["ore"] = {"passed": witness is None, "witness": witness}

    # 4. finitely many blocks met by any path; 5. equivalences maintained
    results["discrete"] = {"passed": True, "witness": None}
    results["maintains_equivalences"] = {"passed": True, "witness": None}
    return AxiomReport(results)

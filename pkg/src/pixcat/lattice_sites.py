"""Finite distributive lattices, lattice screens, finite topologies and Spec(Z/n)."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import Iterable, Sequence

import numpy as np
from sympy import primefactors

from .core_model import FiniteThinCategory, InputError
from .pixelation import localization_oracle
from .screens import FinitePartition, check_screen_axioms_finite, in_block_reach, meet


# -- lattices --------------------------------------------------------------


class FiniteLattice:
    """Elements with a 0/1 order matrix; meet and join tables are derived."""

    def __init__(self, elements: Sequence, leq):
        self.elements = tuple(elements)
        self.index = {e: k for k, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise InputError("duplicate lattice elements")
        size = len(self.elements)
        if size == 0:
            raise InputError("a lattice needs at least one element")
        if isinstance(leq, np.ndarray):
            order = leq.astype(bool)
        else:
            order = np.zeros((size, size), dtype=bool)
            for a, b in leq:
                if a not in self.index or b not in self.index:
                    raise InputError(f"order pair {a!r} <= {b!r} has an unknown element")
                order[self.index[a], self.index[b]] = True
            order |= np.eye(size, dtype=bool)
        if order.shape != (size, size):
            raise InputError("order matrix has the wrong shape")
        self.leq = order
        self._check_order()
        self.meet_table = self._bound(order)
        self.join_table = self._bound(order.T)
        self._check_distributive()

    def _check_order(self):
        o = self.leq
        if not o.diagonal().all():
            raise InputError("order is not reflexive")
        if (o & o.T & ~np.eye(len(o), dtype=bool)).any():
            raise InputError("order is not antisymmetric")
        if ((o.astype(np.int64) @ o.astype(np.int64) > 0) & ~o).any():
            raise InputError("order is not transitive")

    def _bound(self, o: np.ndarray) -> np.ndarray:
        """Greatest lower bounds for ``o``; pass the transpose for joins."""
        size = len(o)
        table = np.zeros((size, size), dtype=np.int64)
        for a in range(size):
            for b in range(size):
                lower = np.flatnonzero(o[:, a] & o[:, b])
                best = [x for x in lower if o[lower, x].all()]
                if len(best) != 1:
                    raise InputError(
                        f"{self.elements[a]!r} and {self.elements[b]!r} have no unique bound")
                table[a, b] = best[0]
        return table

    def _check_distributive(self):
        m, j = self.meet_table, self.join_table
        size = len(m)
        a = np.arange(size)[:, None, None]
        b = np.arange(size)[None, :, None]
        c = np.arange(size)[None, None, :]
        lhs = m[a, j[b, c]]
        rhs = j[m[a, b], m[a, c]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            x, y, z = (self.elements[k] for k in bad[0])
            raise InputError(f"not distributive at ({x!r}, {y!r}, {z!r})")

    def __len__(self) -> int:
        return len(self.elements)

    def le(self, a, b) -> bool:
        return bool(self.leq[self.index[a], self.index[b]])

    def meet(self, a, b):
        return self.elements[self.meet_table[self.index[a], self.index[b]]]

    def join(self, a, b):
        return self.elements[self.join_table[self.index[a], self.index[b]]]

    @property
    def bottom(self):
        return self.elements[int(np.flatnonzero(self.leq.all(axis=1))[0])]

    @property
    def top(self):
        return self.elements[int(np.flatnonzero(self.leq.all(axis=0))[0])]

    def covers(self) -> list:
        """Hasse diagram edges a < b with nothing strictly between."""
        o = self.leq
        strict = o & ~np.eye(len(o), dtype=bool)
        two = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
        return [(self.elements[a], self.elements[b]) for a, b in np.argwhere(strict & ~two)]

    def as_category(self) -> FiniteThinCategory:
        return FiniteThinCategory(self.elements, self.covers())

    def to_dict(self) -> dict:
        return {"elements": list(self.elements),
                "leq": [[a, b] for a, b in self.covers()]}

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteLattice":
        try:
            elements = list(data["elements"])
            pairs = [tuple(p) for p in data["leq"]]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed lattice JSON: {exc}") from exc
        cat = FiniteThinCategory(elements, [p for p in pairs if p[0] != p[1]])
        return cls(elements, cat.reach)

    @classmethod
    def of_sets(cls, labelled: dict) -> "FiniteLattice":
        """Lattice of named sets ordered by inclusion."""
        names = list(labelled)
        sets = [frozenset(labelled[k]) for k in names]
        leq = np.array([[a <= b for b in sets] for a in sets], dtype=bool)
        return cls(names, leq)


def set_label(s: Iterable) -> str:
    items = sorted(s, key=_point_key)
    return "{" + ",".join(str(x) for x in items) + "}"


def _point_key(x):
    text = str(x).strip("()")
    return (0, int(text), "") if text.lstrip("-").isdigit() else (1, 0, str(x))


# -- topologies ------------------------------------------------------------


@dataclass
class FiniteTopology:
    points: tuple
    opens: tuple

    def __post_init__(self):
        self.points = tuple(sorted(set(self.points), key=_point_key))
        opens = {frozenset(u) for u in self.opens}
        full = frozenset(self.points)
        if frozenset() not in opens or full not in opens:
            raise InputError("opens must contain the empty set and the whole space")
        for u in opens:
            if not u <= full:
                raise InputError(f"open set {set_label(u)} has points outside the space")
        for u, v in combinations(opens, 2):
            if u | v not in opens or u & v not in opens:
                raise InputError(f"opens not closed under union and intersection at "
                                 f"{set_label(u)}, {set_label(v)}")
        self.opens = tuple(sorted(opens, key=lambda u: (len(u), sorted(map(_point_key, u)))))

    @property
    def lattice(self) -> FiniteLattice:
        return FiniteLattice.of_sets({set_label(u): u for u in self.opens})

    def to_dict(self) -> dict:
        return {"points": list(self.points),
                "opens": [sorted(u, key=_point_key) for u in self.opens]}

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteTopology":
        try:
            return cls(tuple(data["points"]), tuple(tuple(u) for u in data["opens"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed topology JSON: {exc}") from exc


def powerset(points: Sequence) -> list:
    pts = list(points)
    return [frozenset(c) for c in chain.from_iterable(combinations(pts, r) for r in range(len(pts) + 1))]


def powerset_lattice(points: Sequence) -> FiniteLattice:
    return FiniteLattice.of_sets({set_label(u): u for u in powerset(points)})


def discrete(points: Sequence) -> FiniteTopology:
    return FiniteTopology(tuple(points), tuple(powerset(points)))


def enumerate_topologies(k: int) -> list:
    """All topologies on the labelled points 1..k."""
    points = tuple(str(i) for i in range(1, k + 1))
    full = frozenset(points)
    middle = [u for u in powerset(points) if u and u != full]
    out = []
    for r in range(len(middle) + 1):
        for combo in combinations(middle, r):
            opens = set(combo) | {frozenset(), full}
            if all(u | v in opens and u & v in opens for u, v in combinations(combo, 2)):
                out.append(FiniteTopology(points, tuple(opens)))
    return out


# -- lattice screens -------------------------------------------------------


def check_sublattice(c: FiniteLattice, big: FiniteLattice):
    for e in c.elements:
        if e not in big.index:
            raise InputError(f"{e!r} is not an element of the ambient lattice")
    for a in c.elements:
        for b in c.elements:
            if c.le(a, b) != big.le(a, b):
                raise InputError(f"order of {a!r}, {b!r} differs from the ambient lattice")
            if c.meet(a, b) != big.meet(a, b) or c.join(a, b) != big.join(a, b):
                raise InputError(f"meet or join of {a!r}, {b!r} differs from the ambient lattice")


def lattice_screen(c: FiniteLattice, big: FiniteLattice, y) -> FinitePartition:
    """Blocks A_Z = {U in C : U ∧ Y = Z}."""
    check_sublattice(c, big)
    if y not in big.index:
        raise InputError(f"{y!r} is not an element of the ambient lattice")
    fibers: dict = {}
    for u in c.elements:
        fibers.setdefault(big.meet(u, y), set()).add(u)
    return FinitePartition(c.elements, fibers.values())


@dataclass
class LatticePixelation:
    passed: bool
    # block representative -> U ∧ Y
    label_map: dict
    image: list
    axioms: dict
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "label_map": self.label_map, "image": self.image,
                "axioms": self.axioms, "witnesses": self.witnesses}


def pixelate_lattice(c: FiniteLattice, big: FiniteLattice, y) -> LatticePixelation:
    part = lattice_screen(c, big, y)
    cat = c.as_category()
    report = check_screen_axioms_finite(cat, part)
    witnesses = list(report.witnesses())
    loc = localization_oracle(cat, in_block_reach(cat, part))
    label_map = {rep: big.meet(rep, y) for rep in loc.objects}
    image = sorted({big.meet(u, y) for u in c.elements}, key=lambda e: big.index[e])
    if sorted(label_map.values(), key=lambda e: big.index[e]) != image:
        witnesses.append("the canonical map is not a bijection onto C_Y")
    for rep, members in loc.classes.items():
        if frozenset(members) != part.block_of(rep):
            witnesses.append(f"localization class of {rep!r} differs from its block")
    for a in loc.objects:
        if loc.is_zero_object(a):
            witnesses.append(f"class of {a!r} became a zero object")
        for b in loc.objects:
            if loc.hom_bit(a, b) != big.le(label_map[a], label_map[b]):
                witnesses.append(f"hom {a!r}->{b!r} does not match {label_map[a]!r} <= {label_map[b]!r}")
    return LatticePixelation(not witnesses, label_map, image, report.to_dict(), witnesses)


@dataclass
class SubspaceReport:
    passed: bool
    opens: int
    witnesses: list

    def to_dict(self) -> dict:
        return {"passed": self.passed, "opens": self.opens, "witnesses": self.witnesses}


def subspace_pixelation_check(x: FiniteTopology, y: Iterable) -> SubspaceReport:
    y = frozenset(y)
    if not y <= frozenset(x.points):
        raise InputError("Y must be a subset of the points")
    direct = {u & y for u in x.opens}
    big = powerset_lattice(x.points)
    pix = pixelate_lattice(x.lattice, big, set_label(y))
    witnesses = list(pix.witnesses)
    sets = {set_label(u): u for u in powerset(x.points)}
    via = {sets[z] for z in pix.image}
    if via != direct:
        witnesses.append("pixelation image differs from the subspace opens")
    for rep, z in pix.label_map.items():
        if sets[rep] & y != sets[z]:
            witnesses.append(f"label map sends {rep} to {z}, not its trace on Y")
    return SubspaceReport(not witnesses, len(direct), witnesses)


# -- Spec(Z/n) -------------------------------------------------------------


def prime_label(p: int) -> str:
    return f"({p})"


def spec_zn(n: int) -> FiniteTopology:
    if not isinstance(n, int) or n < 2:
        raise InputError("spec_zn needs an integer n >= 2")
    primes = primefactors(n)
    points = tuple(prime_label(p) for p in primes)
    opens = set()
    for d in range(1, n + 1):
        if n % d == 0:
            closed = {prime_label(p) for p in primes if d % p == 0}
            opens.add(frozenset(points) - closed)
    return FiniteTopology(points, tuple(opens))


def prime_generization(n: int, p: int) -> frozenset:
    """Y(p) = primes of Z/n contained in (p); Z/n is zero-dimensional."""
    if n % p:
        raise InputError(f"{p} does not divide {n}")
    return frozenset(prime_label(q) for q in primefactors(n) if q == p)


def localization_check(n: int, p: int) -> SubspaceReport:
    """Pixelating Top(Spec Z/n) at Y(p) recovers Top(Spec (Z/n)_(p)) = Top(Spec Z/p^k)."""
    x = spec_zn(n)
    y = prime_generization(n, p)
    rep = subspace_pixelation_check(x, y)
    k = 0
    m = n
    while m % p == 0:
        m //= p
        k += 1
    local = spec_zn(p ** k)
    witnesses = list(rep.witnesses)
    big = powerset_lattice(x.points)
    pix = pixelate_lattice(x.lattice, big, set_label(y))
    sets = {set_label(u): u for u in powerset(x.points)}
    if {sets[z] for z in pix.image} != set(local.opens):
        witnesses.append(f"pixelation at ({p}) differs from Spec(Z/{p ** k})")
    return SubspaceReport(not witnesses, len(pix.image), witnesses)


# -- the site of lattice screens -------------------------------------------


@dataclass
class SiteReport:
    passed: bool
    screens: int
    witnesses: list

    def to_dict(self) -> dict:
        return {"passed": self.passed, "screens": self.screens, "witnesses": self.witnesses[:20]}


def _refines(p: FinitePartition, q: FinitePartition) -> bool:
    return all(any(b <= c for c in q.blocks) for b in p.blocks)


def lattice_site_check(c: FiniteLattice, big: FiniteLattice) -> SiteReport:
    """Monotonicity in Y, products P_Y × P_Y' = P_{Y∨Y'}, and the pullback axiom."""
    screens = {y: lattice_screen(c, big, y) for y in big.elements}
    witnesses = []
    for y in big.elements:
        report = check_screen_axioms_finite(c.as_category(), screens[y])
        if not report.passed:
            witnesses.append(f"P_{y} fails: {report.witnesses()}")
    for y, y2 in ((a, b) for a in big.elements for b in big.elements):
        if big.le(y, y2) and not _refines(screens[y2], screens[y]):
            witnesses.append(f"P_{y2} does not refine P_{y}")
        prod = screens[big.join(y, y2)]
        if prod != meet(screens[y], screens[y2]):
            witnesses.append(f"P_({y} v {y2}) is not the meet of P_{y} and P_{y2}")
    distinct = list(dict.fromkeys(screens.values()))
    for p in distinct:
        for q in distinct:
            lower = [r for r in distinct if _refines(r, p) and _refines(r, q)]
            greatest = [r for r in lower if all(_refines(s, r) for s in lower)]
            if len(greatest) != 1:
                witnesses.append("two lattice screens have no product in the family")
    # pullbacks of coverings: with finite products, x_i × y exists and lies below y
    for x in distinct:
        below = [r for r in distinct if _refines(r, x)]
        for xi in below:
            for yy in below:
                prod = meet(xi, yy)
                if prod not in distinct or not _refines(prod, yy):
                    witnesses.append("a pullback of a covering leaves the family")
    return SiteReport(not witnesses, len(distinct), witnesses)

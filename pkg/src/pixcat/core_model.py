"""Exact scalars, points and nonzero-hom predicates for hom-thin path models.

A path model on R^n is a dimension plus a predicate deciding whether the
unique path class x -> y survives the quotient by a path based ideal.  All
arithmetic uses :class:`fractions.Fraction`; floats are rejected on input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import product
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "InputError",
    "Rational",
    "NEG_INF",
    "POS_INF",
    "Approach",
    "parse_rational",
    "format_rational",
    "as_point",
    "Free",
    "MaxLength",
    "AuslanderChain",
    "PathModel",
    "hom_nonzero",
    "is_zero_object",
    "FiniteThinCategory",
]

Rational = Fraction


class InputError(ValueError):
    """Malformed input or violated precondition."""


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise InputError(f"rationals must be written p/q or p: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational (floats are refused): {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@total_ordering
class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self):
        return "POS_INF" if self.sign > 0 else "NEG_INF"

    def __str__(self):
        return "∞" if self.sign > 0 else "-∞"

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __hash__(self):
        return hash(("inf", self.sign))

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        if isinstance(other, Approach):
            return NotImplemented
        return self.sign < 0

    def __neg__(self):
        return _Infinity(-self.sign)


NEG_INF = _Infinity(-1)
POS_INF = _Infinity(1)


def _is_inf(v) -> bool:
    return isinstance(v, _Infinity)


class Approach:
    """The quantity ``value + eps * e`` for a positive infinitesimal eps.

    Used to evaluate predicates at the open end of an interval: the open
    upper end ``hi`` of a pixel is approached by ``Approach(hi, -1)``.
    ``value`` may be an infinity, in which case ``e`` is irrelevant.
    """

    __slots__ = ("value", "e")

    def __init__(self, value, e: int = 0):
        if isinstance(value, Approach):
            value, e = value.value, value.e + e
        self.value = value if _is_inf(value) else Fraction(value)
        self.e = 0 if _is_inf(value) else int(e)

    def _key(self):
        if _is_inf(self.value):
            return (self.value.sign, Fraction(0), 0)
        return (0, self.value, self.e)

    @staticmethod
    def _wrap(other):
        if isinstance(other, Approach):
            return other
        if isinstance(other, (int, Fraction, _Infinity)):
            return Approach(other)
        return None

    def __repr__(self):
        return f"Approach({self.value!s}, {self.e})"

    def __eq__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is None else self._key() == o._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is None else self._key() < o._key()

    def __le__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is None else self._key() <= o._key()

    def __gt__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is None else self._key() > o._key()

    def __ge__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is None else self._key() >= o._key()

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        a, b = self.value, o.value
        if _is_inf(a) or _is_inf(b):
            signs = {a.sign if _is_inf(a) else 0, -b.sign if _is_inf(b) else 0} - {0}
            if len(signs) != 1:
                raise InputError("indeterminate infinite difference")
            return Approach(_Infinity(signs.pop()))
        return Approach(a - b, self.e - o.e)

    def __rsub__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is None else o - self


Scalar = Union[Fraction, Approach]


def as_point(coords: Iterable) -> tuple[Fraction, ...]:
    pt = tuple(parse_rational(c) for c in coords)
    if not pt:
        raise InputError("points need at least one coordinate")
    return pt


# -- predicates ------------------------------------------------------------


@dataclass(frozen=True)
class Free:
    kind = "free"

    def nonzero(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> bool:
        return all(a <= b for a, b in zip(x, y))

    def zero_object(self, x: Sequence[Scalar]) -> bool:
        return False


@dataclass(frozen=True)
class MaxLength:
    d: Fraction
    kind = "max_length"

    def __post_init__(self):
        object.__setattr__(self, "d", parse_rational(self.d))
        if self.d <= 0:
            raise InputError("MaxLength needs d > 0")

    def nonzero(self, x, y) -> bool:
        (a,), (b,) = x, y
        return a <= b and (Approach(b) - a) < self.d

    def zero_object(self, x) -> bool:
        return False


@dataclass(frozen=True)
class AuslanderChain:
    kind = "auslander"

    def nonzero(self, x, y) -> bool:
        # 0 < x1 <= y1 < x2 <= y2 < ... < xn <= yn < 1
        if not x[0] > 0 or not y[-1] < 1:
            return False
        for k in range(len(x)):
            if not x[k] <= y[k]:
                return False
            if k + 1 < len(x) and not y[k] < x[k + 1]:
                return False
        return True

    def zero_object(self, x) -> bool:
        chain = (0, *x, 1)
        return not all(chain[k] < chain[k + 1] for k in range(len(chain) - 1))


Predicate = Union[Free, MaxLength, AuslanderChain]


@dataclass(frozen=True)
class PathModel:
    dimension: int
    predicate: Predicate

    def __post_init__(self):
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise InputError("dimension must be a positive integer")
        if isinstance(self.predicate, MaxLength) and self.dimension != 1:
            raise InputError("MaxLength is only defined in dimension 1")

    def to_dict(self) -> dict:
        pred = {"kind": self.predicate.kind}
        if isinstance(self.predicate, MaxLength):
            pred["d"] = format_rational(self.predicate.d)
        return {"dimension": self.dimension, "predicate": pred}

    @classmethod
    def from_dict(cls, data: dict) -> "PathModel":
        try:
            dim = data["dimension"]
            pred = data["predicate"]
            kind = pred["kind"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed model JSON: {exc}") from exc
        if kind == "free":
            p = Free()
        elif kind == "max_length":
            if "d" not in pred:
                raise InputError("max_length predicate needs d")
            p = MaxLength(parse_rational(pred["d"]))
        elif kind == "auslander":
            p = AuslanderChain()
        else:
            raise InputError(f"unknown predicate kind {kind!r}")
        return cls(dim, p)


def _check_dim(model: PathModel, *pts):
    for p in pts:
        if len(p) != model.dimension:
            raise InputError(
                f"point of length {len(p)} in a model of dimension {model.dimension}")


def hom_nonzero(model: PathModel, x: Sequence, y: Sequence) -> bool:
    _check_dim(model, x, y)
    return model.predicate.nonzero(x, y)


def is_zero_object(model: PathModel, x: Sequence) -> bool:
    _check_dim(model, x)
    return model.predicate.zero_object(x)


# -- finite thin categories ------------------------------------------------


def reflexive_transitive_closure(adj: np.ndarray) -> np.ndarray:
    reach = adj.astype(bool) | np.eye(adj.shape[0], dtype=bool)
    while True:
        nxt = reach | ((reach.astype(np.int64) @ reach.astype(np.int64)) > 0)
        if np.array_equal(nxt, reach):
            return reach
        reach = nxt


class FiniteThinCategory:
    """Objects, generating arrows and the nonzero-hom relation.

    ``reach[u, w]`` says a path of generators u -> w exists; ``hom[u, w]``
    says its class is nonzero.  An identity may be zero (zero object).
    """

    def __init__(self, objects: Sequence, arrows: Iterable[tuple], hom=None):
        self.objects = tuple(objects)
        self.index = {o: k for k, o in enumerate(self.objects)}
        if len(self.index) != len(self.objects):
            raise InputError("duplicate object labels")
        size = len(self.objects)
        adj = np.zeros((size, size), dtype=bool)
        arrow_list = []
        for u, w in arrows:
            if u not in self.index or w not in self.index:
                raise InputError(f"arrow {u!r}->{w!r} has an unknown endpoint")
            adj[self.index[u], self.index[w]] = True
            arrow_list.append((u, w))
        self.arrows = tuple(arrow_list)
        self.reach = reflexive_transitive_closure(adj)
        if hom is None:
            self.hom = self.reach.copy()
        elif isinstance(hom, np.ndarray):
            self.hom = hom.astype(bool)
        else:
            self.hom = np.zeros((size, size), dtype=bool)
            for u, w in hom:
                if u not in self.index or w not in self.index:
                    raise InputError(f"hom pair {u!r}->{w!r} has an unknown endpoint")
                self.hom[self.index[u], self.index[w]] = True
        if self.hom.shape != (size, size):
            raise InputError("hom matrix has the wrong shape")
        bad = np.argwhere(self.hom & ~self.reach)
        if len(bad):
            u, w = bad[0]
            raise InputError(
                f"hom {self.objects[u]!r}->{self.objects[w]!r} has no generating chain")
        self._check_factorization()

    def _check_factorization(self):
        # nonzero composites have nonzero factors
        for u, w in np.argwhere(self.hom):
            mids = self.reach[u] & self.reach[:, w]
            if not (self.hom[u] & self.hom[:, w])[mids].all():
                v = np.argwhere(mids & ~(self.hom[u] & self.hom[:, w]))[0][0]
                raise InputError(
                    f"hom {self.objects[u]!r}->{self.objects[w]!r} is nonzero but a "
                    f"factor through {self.objects[v]!r} is zero")

    def __len__(self):
        return len(self.objects)

    def hom_bit(self, u, w) -> int:
        return int(self.hom[self.index[u], self.index[w]])

    def is_zero_object(self, u) -> bool:
        return not self.hom[self.index[u], self.index[u]]

    def to_dict(self) -> dict:
        return {
            "objects": [_label_json(o) for o in self.objects],
            "arrows": [[_label_json(u), _label_json(w)] for u, w in self.arrows],
            "hom": [[_label_json(self.objects[u]), _label_json(self.objects[w])]
                    for u, w in np.argwhere(self.hom)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteThinCategory":
        try:
            objects = [_label_parse(o) for o in data["objects"]]
            arrows = [(_label_parse(u), _label_parse(w)) for u, w in data["arrows"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed category JSON: {exc}") from exc
        hom = data.get("hom")
        if hom is not None:
            hom = [(_label_parse(u), _label_parse(w)) for u, w in hom]
        return cls(objects, arrows, hom)


def _label_json(o):
    if isinstance(o, tuple):
        return ",".join(str(x) for x in o)
    return o


def _label_parse(o):
    if isinstance(o, list):
        return tuple(o)
    return o


def grid_points(values: Sequence[Fraction], n: int):
    """All points of ``values``^n in lexicographic order."""
    return [tuple(p) for p in product(values, repeat=n)]

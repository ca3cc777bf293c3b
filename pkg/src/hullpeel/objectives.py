"""Peeling objectives and the exact value types their sensitivities live in.

An objective scores a hull vertex u from its two hull edges (t, u), (u, v)
and the chain t -> A(u) -> v that replaces them when u is peeled::

    sens(u) = base_offset + hull_coef * (d(t, u) + d(u, v))
                          + chain_coef * sum(d(a, b) for edges a -> b of the chain)

Area and perimeter use ``hull_coef=1, chain_coef=-1`` (the exact decrease of
the objective).  Count uses ``chain_coef=1`` alone: the chain has
``|A(u)| + 1`` edges, which is the active count plus the offset of one that
keeps sensitivities positive.

Area values are kept doubled so they stay integral on integer coordinates.
Perimeter values are formal sums of square roots (:class:`RootSum`), so
incremental edits and from-scratch evaluation agree bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

__all__ = ["RootSum", "Objective", "AREA", "PERIMETER", "COUNT", "get_objective"]


def _sqrt_decimal(n, prec):
    with localcontext() as ctx:
        ctx.prec = prec
        return Decimal(n).sqrt()


class RootSum:
    """Exact value ``rational + sum(coef * sqrt(radicand))``.

    Radicands are positive non-square integers.  Equality is structural, which
    is exact for sums built from the same edge lengths; ordering is decided
    numerically with escalating precision, and values indistinguishable at
    the final precision compare equal.
    """

    __slots__ = ("rational", "terms", "_approx")

    def __init__(self, rational=0, terms=None):
        self.rational = rational
        self.terms = terms if terms is not None else {}
        self._approx = None

    @classmethod
    def sqrt(cls, value):
        """sqrt(value) for a nonnegative rational ``value``."""
        if isinstance(value, Fraction) and value.denominator != 1:
            num, den = value.numerator, value.denominator
            # sqrt(p/q) = sqrt(p*q) / q
            return cls.sqrt(num * den) * Fraction(1, den)
        value = int(value)
        if value < 0:
            raise ValueError("negative radicand")
        r = math.isqrt(value)
        if r * r == value:
            return cls(r, {})
        return cls(0, {value: 1})

    def _combine(self, other, sign):
        if not isinstance(other, RootSum):
            if isinstance(other, (int, Fraction)):
                return RootSum(self.rational + sign * other, dict(self.terms))
            return NotImplemented
        terms = dict(self.terms)
        for r, c in other.terms.items():
            v = terms.get(r, 0) + sign * c
            if v:
                terms[r] = v
            else:
                terms.pop(r, None)
        return RootSum(self.rational + sign * other.rational, terms)

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        return RootSum(-self.rational, {r: -c for r, c in self.terms.items()})

    def __mul__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        if k == 0:
            return RootSum(0, {})
        return RootSum(self.rational * k, {r: c * k for r, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return not self.terms and self.rational == other
        if not isinstance(other, RootSum):
            return NotImplemented
        return self.rational == other.rational and self.terms == other.terms

    def __hash__(self):
        return hash((self.rational, frozenset(self.terms.items())))

    def __float__(self):
        if self._approx is None:
            self._approx = float(self.rational) + sum(
                float(c) * math.sqrt(r) for r, c in self.terms.items())
        return self._approx

    def sign(self) -> int:
        """Sign of the value: -1, 0 or 1."""
        if not self.terms:
            return (self.rational > 0) - (self.rational < 0)
        approx = float(self)
        scale = abs(float(self.rational)) + sum(
            abs(float(c)) * math.sqrt(r) for r, c in self.terms.items())
        if abs(approx) > 1e-9 * scale:
            return 1 if approx > 0 else -1
        for prec in (60, 200, 800):
            with localcontext() as ctx:
                ctx.prec = prec
                total = Decimal(self.rational.numerator) / Decimal(self.rational.denominator) \
                    if isinstance(self.rational, Fraction) else Decimal(self.rational)
                mag = abs(total)
                for r, c in self.terms.items():
                    cd = Decimal(c.numerator) / Decimal(c.denominator) \
                        if isinstance(c, Fraction) else Decimal(c)
                    term = cd * _sqrt_decimal(r, prec + 10)
                    total += term
                    mag += abs(term)
                if abs(total) > mag * Decimal(10) ** (-(prec - 20)):
                    return 1 if total > 0 else -1
        return 0

    def _cmp(self, other):
        diff = self - other
        if diff is NotImplemented:
            return NotImplemented
        return diff.sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __repr__(self):
        parts = [str(self.rational)] if self.rational or not self.terms else []
        for r, c in sorted(self.terms.items()):
            parts.append(f"{c}*sqrt({r})")
        return "RootSum(" + " + ".join(parts) + ")"

    def __str__(self):
        return repr(float(self))


def _area_dist(a, b):
    # doubled shoelace term of the directed edge a -> b
    return a.y * b.x - a.x * b.y


def _perimeter_dist(a, b):
    dx = a.x - b.x
    dy = a.y - b.y
    return RootSum.sqrt(dx * dx + dy * dy)


def _count_dist(a, b):
    return 1


@dataclass(frozen=True)
class Objective:
    """A sensitivity rule: edge function plus combination coefficients."""
    kind: str
    hull_coef: int
    chain_coef: int
    base_offset: int

    def dist(self, a, b):
        if self.kind == "area":
            return _area_dist(a, b)
        if self.kind == "perimeter":
            return _perimeter_dist(a, b)
        return 1

    def edge_fn(self):
        return {"area": _area_dist, "perimeter": _perimeter_dist,
                "count": _count_dist}[self.kind]

    def sensitivity(self, t, u, v, active) -> object:
        """From-scratch sensitivity of u given its neighbours and A(u)."""
        d = self.edge_fn()
        value = self.base_offset
        if self.hull_coef:
            value = value + self.hull_coef * (d(t, u) + d(u, v))
        prev = t
        chain = 0
        for p in active:
            chain = chain + d(prev, p)
            prev = p
        chain = chain + d(prev, v)
        return value + self.chain_coef * chain

    def report(self, value, scale=1):
        """Convert an internal value on a grid of ``scale`` units per unit.

        Area becomes a Fraction, count an int, perimeter a :class:`RootSum`.
        """
        if self.kind == "area":
            return Fraction(value, 2 * scale * scale)
        if self.kind == "perimeter":
            return value * Fraction(1, scale) if scale != 1 else value
        return value


AREA = Objective("area", hull_coef=1, chain_coef=-1, base_offset=0)
PERIMETER = Objective("perimeter", hull_coef=1, chain_coef=-1, base_offset=0)
COUNT = Objective("count", hull_coef=0, chain_coef=1, base_offset=0)

_BY_NAME = {"area": AREA, "perimeter": PERIMETER, "count": COUNT}


def get_objective(objective) -> Objective:
    if isinstance(objective, Objective):
        return objective
    try:
        return _BY_NAME[objective]
    except KeyError:
        raise ValueError(f"unknown objective {objective!r}; expected one of "
                         f"{sorted(_BY_NAME)}") from None

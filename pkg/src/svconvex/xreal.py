"""Exact extended reals with the two Dedekind additions and their residuations.

The extended line ``[-inf, +inf]`` carries two additions that differ only on
the pair ``{+inf, -inf}``:

* ``inf_add`` (the addition of the inf-residuated space): ``+inf`` dominates;
* ``sup_add`` (the addition of the sup-residuated space): ``-inf`` dominates.

``idif`` and ``sdif`` are the corresponding residuations,

    idif(a, b) = inf {t : a <= b (+) t}      with (+) = inf_add
    sdif(a, b) = sup {t : b (.) t <= a}      with (.) = sup_add

and reduce to ``sup_add(a, -b)`` and ``inf_add(a, -b)`` respectively.
Finite values are arbitrary precision rationals; there is no float path.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Union

__all__ = [
    "XReal", "POS_INF", "NEG_INF", "ZERO", "xr",
    "inf_add", "sup_add", "idif", "sdif", "negate", "scale",
    "inf_of", "sup_of", "parse_rational", "format_rational",
]

NEG = "neg_inf"
FIN = "finite"
POS = "pos_inf"

_RANK = {NEG: 0, FIN: 1, POS: 2}

Number = Union[int, Fraction]


@total_ordering
@dataclass(frozen=True)
class XReal:
    """An element of the extended reals.

    ``value`` is a :class:`~fractions.Fraction` iff ``tag == "finite"``.
    """

    tag: str
    value: Fraction | None = None

    def __post_init__(self):
        if self.tag not in _RANK:
            raise ValueError(f"unknown XReal tag {self.tag!r}")
        if self.tag == FIN:
            if self.value is None:
                raise ValueError("finite XReal needs a value")
            if not isinstance(self.value, Fraction):
                object.__setattr__(self, "value", Fraction(self.value))
        elif self.value is not None:
            raise ValueError("infinite XReal carries no value")

    @classmethod
    def finite(cls, v: Number | str) -> "XReal":
        if isinstance(v, str):
            v = parse_rational(v)
        return cls(FIN, Fraction(v))

    @property
    def is_finite(self) -> bool:
        return self.tag == FIN

    @property
    def is_pos_inf(self) -> bool:
        return self.tag == POS

    @property
    def is_neg_inf(self) -> bool:
        return self.tag == NEG

    def __lt__(self, other):
        other = xr(other)
        if self.tag != other.tag:
            return _RANK[self.tag] < _RANK[other.tag]
        if self.tag == FIN:
            return self.value < other.value
        return False

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = XReal.finite(other)
        if not isinstance(other, XReal):
            return NotImplemented
        return self.tag == other.tag and self.value == other.value

    def __hash__(self):
        return hash((self.tag, self.value))

    def __neg__(self):
        return negate(self)

    def __repr__(self):
        return f"XReal({self.to_json()})"

    def __str__(self):
        return self.to_json()

    def to_json(self) -> str:
        if self.tag == POS:
            return "+inf"
        if self.tag == NEG:
            return "-inf"
        return format_rational(self.value)

    @classmethod
    def from_json(cls, s) -> "XReal":
        if isinstance(s, int) and not isinstance(s, bool):
            return cls.finite(s)
        if not isinstance(s, str):
            raise ValueError(f"extended real must be a string, got {s!r}")
        t = s.strip()
        if t in ("+inf", "inf"):
            return POS_INF
        if t == "-inf":
            return NEG_INF
        return cls.finite(parse_rational(t))


POS_INF = XReal(POS)
NEG_INF = XReal(NEG)
ZERO = XReal(FIN, Fraction(0))


def xr(v) -> XReal:
    """Coerce ints, Fractions, rational strings and XReals to XReal."""
    if isinstance(v, XReal):
        return v
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return XReal(FIN, Fraction(v))
    if isinstance(v, str):
        return XReal.from_json(v)
    raise TypeError(f"cannot convert {v!r} to XReal")


_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(s: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; zero denominators and decimals are rejected."""
    if not isinstance(s, str) or not _RAT_RE.match(s.strip()):
        raise ValueError(f"malformed rational {s!r}")
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        if int(q) == 0:
            raise ValueError(f"zero denominator in {s!r}")
        return Fraction(int(p), int(q))
    return Fraction(int(s))


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# Truth tables over the tags; "F" stands for the finite case, computed exactly.
_INF_ADD = {
    (NEG, NEG): NEG, (NEG, FIN): NEG, (NEG, POS): POS,
    (FIN, NEG): NEG, (FIN, FIN): FIN, (FIN, POS): POS,
    (POS, NEG): POS, (POS, FIN): POS, (POS, POS): POS,
}
_SUP_ADD = {
    (NEG, NEG): NEG, (NEG, FIN): NEG, (NEG, POS): NEG,
    (FIN, NEG): NEG, (FIN, FIN): FIN, (FIN, POS): POS,
    (POS, NEG): NEG, (POS, FIN): POS, (POS, POS): POS,
}
# idif(a, b) = sup_add(a, -b); rows a, columns b.
_IDIF = {
    (NEG, NEG): NEG, (NEG, FIN): NEG, (NEG, POS): NEG,
    (FIN, NEG): POS, (FIN, FIN): FIN, (FIN, POS): NEG,
    (POS, NEG): POS, (POS, FIN): POS, (POS, POS): NEG,
}
# sdif(a, b) = inf_add(a, -b).
_SDIF = {
    (NEG, NEG): POS, (NEG, FIN): NEG, (NEG, POS): NEG,
    (FIN, NEG): POS, (FIN, FIN): FIN, (FIN, POS): NEG,
    (POS, NEG): POS, (POS, FIN): POS, (POS, POS): POS,
}


def _from_table(table, a: XReal, b: XReal, finite) -> XReal:
    tag = table[(a.tag, b.tag)]
    if tag == FIN:
        return XReal(FIN, finite(a.value, b.value))
    return XReal(tag)


def inf_add(a, b) -> XReal:
    return _from_table(_INF_ADD, xr(a), xr(b), lambda p, q: p + q)


def sup_add(a, b) -> XReal:
    return _from_table(_SUP_ADD, xr(a), xr(b), lambda p, q: p + q)


def idif(a, b) -> XReal:
    """Inf-residuation: the least ``t`` with ``a <= inf_add(b, t)``."""
    return _from_table(_IDIF, xr(a), xr(b), lambda p, q: p - q)


def sdif(a, b) -> XReal:
    """Sup-residuation: the greatest ``t`` with ``sup_add(b, t) <= a``."""
    return _from_table(_SDIF, xr(a), xr(b), lambda p, q: p - q)


def negate(a) -> XReal:
    a = xr(a)
    if a.tag == POS:
        return NEG_INF
    if a.tag == NEG:
        return POS_INF
    return XReal(FIN, -a.value)


def scale(t, a) -> XReal:
    """Multiply by ``t >= 0`` or ``t = -1``; ``0 * (+-inf) = 0``."""
    t = Fraction(t)
    a = xr(a)
    if t == -1:
        return negate(a)
    if t < 0:
        raise ValueError("scale is defined for t >= 0 and t = -1 only")
    if t == 0:
        return ZERO
    if a.tag == FIN:
        return XReal(FIN, t * a.value)
    return a


def inf_of(values: Iterable) -> XReal:
    """Lattice infimum; the empty infimum is ``+inf``."""
    out = POS_INF
    for v in values:
        v = xr(v)
        if v < out:
            out = v
    return out


def sup_of(values: Iterable) -> XReal:
    """Lattice supremum; the empty supremum is ``-inf``."""
    out = NEG_INF
    for v in values:
        v = xr(v)
        if v > out:
            out = v
    return out

"""Leading-order behavior of functions at the endpoints of (0, R).

Everything here manipulates descriptors of the form

    coef * t^gamma * (e + |log t|)^beta * (e + log(e + |log t|))^ll

which are closed under products, powers and quotients, and which determine
whether improper integrals converge at 0+ or at infinity.  Divergence
verdicts throughout the package come from this algebra, never from grid
values overflowing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

ZERO_END = "0+"
INF_END = "inf"

_E = math.e


@dataclass(frozen=True)
class Asym:
    """One-end asymptotic descriptor.  ``coef == 0`` means identically negligible."""

    coef: float
    gamma: float = 0.0
    beta: float = 0.0
    ll: float = 0.0

    @property
    def is_zero(self) -> bool:
        return self.coef == 0.0

    def __mul__(self, other: "Asym") -> "Asym":
        if self.is_zero or other.is_zero:
            return ZERO_ASYM
        return Asym(self.coef * other.coef, self.gamma + other.gamma,
                    self.beta + other.beta, self.ll + other.ll)

    def __truediv__(self, other: "Asym") -> "Asym":
        if other.is_zero:
            raise ZeroDivisionError("division by a vanishing asymptotic descriptor")
        if self.is_zero:
            return ZERO_ASYM
        return Asym(self.coef / other.coef, self.gamma - other.gamma,
                    self.beta - other.beta, self.ll - other.ll)

    def __pow__(self, p: float) -> "Asym":
        if self.is_zero:
            if p <= 0:
                raise ZeroDivisionError("nonpositive power of a vanishing descriptor")
            return ZERO_ASYM
        return Asym(self.coef ** p, self.gamma * p, self.beta * p, self.ll * p)

    def scaled(self, c: float) -> "Asym":
        if c == 0.0 or self.is_zero:
            return ZERO_ASYM
        return Asym(self.coef * c, self.gamma, self.beta, self.ll)

    def value_at(self, t: float) -> float:
        big_l = _E + abs(math.log(t))
        return (self.coef * t ** self.gamma * big_l ** self.beta
                * (_E + math.log(big_l)) ** self.ll)


ZERO_ASYM = Asym(0.0)
CONST_ONE = Asym(1.0)


def _order(a: Asym, end: str) -> tuple[float, float, float]:
    # Lexicographic size key: larger key = larger values near the end.
    if end == ZERO_END:
        return (-a.gamma, a.beta, a.ll)
    return (a.gamma, a.beta, a.ll)


def dominant(a: Asym, b: Asym, end: str) -> Asym:
    """Descriptor of a + b near the given end (both assumed nonnegative)."""
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    ka, kb = _order(a, end), _order(b, end)
    if ka > kb:
        return a
    if kb > ka:
        return b
    return Asym(a.coef + b.coef, a.gamma, a.beta, a.ll)


def limit(a: Asym, end: str) -> float:
    """Limit value at the end: 0, a finite constant, or +inf."""
    if a.is_zero:
        return 0.0
    sign = -1.0 if end == ZERO_END else 1.0
    for expo in (sign * a.gamma, a.beta, a.ll):
        if expo > 0:
            return math.inf
        if expo < 0:
            return 0.0
    return a.coef


def integrable(a: Asym, end: str) -> bool:
    """Does the integral of a nonnegative function with this behavior converge at the end?"""
    if a.is_zero:
        return True
    if end == ZERO_END:
        if a.gamma > -1.0:
            return True
        if a.gamma < -1.0:
            return False
    else:
        if a.gamma < -1.0:
            return True
        if a.gamma > -1.0:
            return False
    if a.beta < -1.0:
        return True
    if a.beta > -1.0:
        return False
    return a.ll < -1.0


def integral_toward_end(a: Asym, end: str) -> Asym:
    """Behavior of the integral taken from the interior toward this end.

    At 0+ this is t -> integral_0^t (requires integrability at 0); at inf it
    is t -> integral_t^inf (requires integrability at inf).  The result
    describes a quantity that tends to 0.
    """
    if a.is_zero:
        return ZERO_ASYM
    if not integrable(a, end):
        raise ValueError("divergent at the end; no vanishing integral behavior")
    if end == ZERO_END and a.gamma > -1.0:
        return Asym(a.coef / (a.gamma + 1.0), a.gamma + 1.0, a.beta, a.ll)
    if end == INF_END and a.gamma < -1.0:
        return Asym(a.coef / (-a.gamma - 1.0), a.gamma + 1.0, a.beta, a.ll)
    # gamma == -1 boundary: substitute u = e + |log t|.
    if a.beta < -1.0:
        return Asym(a.coef / (-a.beta - 1.0), 0.0, a.beta + 1.0, a.ll)
    # beta == -1, ll < -1: one more logarithmic layer.
    return Asym(a.coef / (-a.ll - 1.0), 0.0, 0.0, a.ll + 1.0)


def integral_away_from_end(a: Asym, end: str) -> Asym:
    """Behavior near the end of the integral taken across it, when divergent there.

    At 0+ this is t -> integral_t^c for a function non-integrable at 0; at inf
    it is t -> integral_c^t for a function non-integrable at inf.  The result
    describes a quantity that tends to +inf.
    """
    if a.is_zero or integrable(a, end):
        raise ValueError("integrable at the end; the divergent profile is undefined")
    if end == ZERO_END and a.gamma < -1.0:
        return Asym(a.coef / (-a.gamma - 1.0), a.gamma + 1.0, a.beta, a.ll)
    if end == INF_END and a.gamma > -1.0:
        return Asym(a.coef / (a.gamma + 1.0), a.gamma + 1.0, a.beta, a.ll)
    if a.beta > -1.0:
        return Asym(a.coef / (a.beta + 1.0), 0.0, a.beta + 1.0, a.ll)
    if a.ll > -1.0:
        return Asym(a.coef / (a.ll + 1.0), 0.0, 0.0, a.ll + 1.0)
    # Divergence slower than every tracked layer; keep a conservative marker.
    return Asym(a.coef, 0.0, 0.0, 1.0)

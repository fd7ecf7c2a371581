"""Exact arithmetic in the ring of integers of Q(sqrt(-D)).

For squarefree D >= 1 the ring is Z[omega] with omega = sqrt(-D) when
-D = 2, 3 (mod 4) and omega = (1 + sqrt(-D))/2 when -D = 1 (mod 4).
Elements carry basis coordinates (x, y), meaning x + y*omega.  All
arithmetic runs through half-coordinates (u, v) with
alpha = (u + v*sqrt(-D))/2, which gives a single multiplication kernel
for both omega conventions and keeps every magnitude comparison on
exact integer norms (no floating point anywhere in this module).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from math import isqrt

__all__ = [
    "OmegaMode",
    "ParityError",
    "RingParams",
    "QuadInt",
    "make_ring",
    "is_squarefree",
    "is_perfect_square",
    "add",
    "sub",
    "mul",
    "neg",
    "conj",
    "norm",
    "cmp_abs",
    "units",
    "sqrt_exact",
    "exact_div",
    "parse_elem",
    "format_elem",
    "elem_key",
    "elem_to_json",
    "elem_from_json",
    "iter_elements",
]


class OmegaMode(Enum):
    SQRT = "sqrt"  # omega = sqrt(-D),        -D = 2, 3 (mod 4)
    HALF = "half"  # omega = (1+sqrt(-D))/2,  -D = 1 (mod 4)


class ParityError(ValueError):
    """Half-coordinates (u, v) that do not describe an algebraic integer."""


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    for p in range(2, isqrt(n) + 1):
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
    return True


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True, slots=True)
class RingParams:
    """Descriptor of O_K for K = Q(sqrt(-D)): the squarefree D and omega convention."""

    D: int
    omega_mode: OmegaMode

    def __repr__(self) -> str:
        return f"RingParams(D={self.D}, omega={self.omega_mode.value})"


def make_ring(D: int) -> RingParams:
    """Build the ring descriptor; rejects D < 1 and non-squarefree D."""
    if D < 1:
        raise ValueError(f"D must be a positive integer, got {D}")
    if not is_squarefree(D):
        raise ValueError(f"D must be squarefree, got {D}")
    mode = OmegaMode.HALF if D % 4 == 3 else OmegaMode.SQRT
    return RingParams(D, mode)


@dataclass(frozen=True, slots=True)
class QuadInt:
    """Element x + y*omega of O_K, with exact integer coordinates."""

    ring: RingParams
    x: int
    y: int

    def _coerce(self, other: "QuadInt | int") -> "QuadInt":
        if isinstance(other, int):
            return QuadInt(self.ring, other, 0)
        if not isinstance(other, QuadInt):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError(f"mixed rings: {self.ring} vs {other.ring}")
        return other

    def half_coords(self) -> tuple[int, int]:
        """(u, v) with alpha = (u + v*sqrt(-D))/2."""
        if self.ring.omega_mode is OmegaMode.SQRT:
            return 2 * self.x, 2 * self.y
        return 2 * self.x + self.y, self.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def __add__(self, other: "QuadInt | int") -> "QuadInt":
        other = self._coerce(other)
        return QuadInt(self.ring, self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __sub__(self, other: "QuadInt | int") -> "QuadInt":
        other = self._coerce(other)
        return QuadInt(self.ring, self.x - other.x, self.y - other.y)

    def __rsub__(self, other: "QuadInt | int") -> "QuadInt":
        return self._coerce(other) - self

    def __neg__(self) -> "QuadInt":
        return QuadInt(self.ring, -self.x, -self.y)

    def __mul__(self, other: "QuadInt | int") -> "QuadInt":
        other = self._coerce(other)
        u1, v1 = self.half_coords()
        u2, v2 = other.half_coords()
        # (u1+v1*s)(u2+v2*s)/4 with s^2 = -D; both halvings are exact.
        u = (u1 * u2 - self.ring.D * v1 * v2) // 2
        v = (u1 * v2 + v1 * u2) // 2
        return _from_half_unchecked(self.ring, u, v)

    __rmul__ = __mul__

    def conj(self) -> "QuadInt":
        if self.ring.omega_mode is OmegaMode.SQRT:
            return QuadInt(self.ring, self.x, -self.y)
        return QuadInt(self.ring, self.x + self.y, -self.y)

    def norm(self) -> int:
        u, v = self.half_coords()
        return (u * u + self.ring.D * v * v) // 4

    def __str__(self) -> str:
        return format_elem(self)


def _from_half_unchecked(ring: RingParams, u: int, v: int) -> QuadInt:
    if ring.omega_mode is OmegaMode.SQRT:
        return QuadInt(ring, u // 2, v // 2)
    return QuadInt(ring, (u - v) // 2, v)


def from_half(ring: RingParams, u: int, v: int) -> QuadInt:
    """Build (u + v*sqrt(-D))/2, rejecting coordinates outside O_K."""
    if ring.omega_mode is OmegaMode.SQRT:
        if u % 2 or v % 2:
            raise ParityError(f"({u}+{v}*sqrt(-{ring.D}))/2 is not in O_K (u, v must be even)")
    elif (u - v) % 2:
        raise ParityError(f"({u}+{v}*sqrt(-{ring.D}))/2 is not in O_K (u, v must share parity)")
    return _from_half_unchecked(ring, u, v)


def add(a: QuadInt, b: QuadInt) -> QuadInt:
    return a + b


def sub(a: QuadInt, b: QuadInt) -> QuadInt:
    return a - b


def mul(a: QuadInt, b: QuadInt) -> QuadInt:
    return a * b


def neg(a: QuadInt) -> QuadInt:
    return -a


def conj(a: QuadInt) -> QuadInt:
    return a.conj()


def norm(a: QuadInt) -> int:
    return a.norm()


def cmp_abs(a: QuadInt, b: QuadInt) -> int:
    """Compare |a| with |b| exactly (via norms): -1, 0 or +1."""
    if a.ring != b.ring:
        raise ValueError("mixed rings in cmp_abs")
    na, nb = a.norm(), b.norm()
    return (na > nb) - (na < nb)


def elem_key(a: QuadInt) -> tuple[int, int, int]:
    """Canonical sort key (norm, x, y)."""
    return (a.norm(), a.x, a.y)


def units(ring: RingParams) -> list[QuadInt]:
    """All units of O_K: 4 for D=1, 6 for D=3, otherwise {1, -1}."""
    one = QuadInt(ring, 1, 0)
    out = [one, -one]
    if ring.D == 1:
        i = QuadInt(ring, 0, 1)
        out += [i, -i]
    elif ring.D == 3:
        w = QuadInt(ring, 0, 1)  # (1+sqrt(-3))/2
        out += [w, -w, one - w, w - one]
    return sorted(out, key=elem_key)


def sqrt_exact(alpha: QuadInt) -> QuadInt | None:
    """Canonical square root of alpha in O_K, or None if alpha is not a square.

    Roots come in pairs {beta, -beta}; the representative with u > 0 (or
    u = 0 and v >= 0 in half-coordinates) is returned.  The candidate is
    reconstructed from the norm: norm(alpha) must be a perfect square n**2,
    then u**2 = U + 2n and u*v = V for alpha = (U + V*sqrt(-D))/2.
    """
    ring = alpha.ring
    if alpha.is_zero():
        return alpha
    n2 = alpha.norm()
    n = isqrt(n2)
    if n * n != n2:
        return None
    U, V = alpha.half_coords()
    usq = U + 2 * n  # >= 0 since |U| <= 2*|alpha| = 2n
    u = isqrt(usq)
    if u * u != usq:
        return None
    if u == 0:
        if V != 0:
            return None
        if (4 * n) % ring.D:
            return None
        vsq = 4 * n // ring.D
        v = isqrt(vsq)
        if v * v != vsq:
            return None
    else:
        if V % u:
            return None
        v = V // u
        if u * u + ring.D * v * v != 4 * n:
            return None
    try:
        beta = from_half(ring, u, v)
    except ParityError:
        return None
    if beta * beta != alpha:
        return None
    return beta


def exact_div(num: QuadInt, den: QuadInt) -> QuadInt | None:
    """num / den when the quotient lies in O_K, else None."""
    if num.ring != den.ring:
        raise ValueError("mixed rings in exact_div")
    if den.is_zero():
        raise ZeroDivisionError("division by zero element")
    w = num * den.conj()
    nd = den.norm()
    U, V = w.half_coords()
    if U % nd or V % nd:
        return None
    try:
        return from_half(num.ring, U // nd, V // nd)
    except ParityError:
        return None


_INT_RE = re.compile(r"^[+-]?\d+$")
_W_RE = re.compile(r"^([+-]?\d+)([+-]\d+)\*w$")
_S_RE = re.compile(r"^\(([+-]?\d+)([+-]\d+)\*s\)/2$")


def parse_elem(text: str, ring: RingParams) -> QuadInt:
    """Parse `INT`, `INT(+|-)INT*w` (w = omega) or `(INT(+|-)INT*s)/2` (s = sqrt(-D))."""
    t = text.strip().replace(" ", "")
    if _INT_RE.match(t):
        return QuadInt(ring, int(t), 0)
    m = _W_RE.match(t)
    if m:
        return QuadInt(ring, int(m.group(1)), int(m.group(2)))
    m = _S_RE.match(t)
    if m:
        return from_half(ring, int(m.group(1)), int(m.group(2)))
    raise ValueError(f"malformed element text: {text!r}")


def format_elem(a: QuadInt) -> str:
    if a.y == 0:
        return str(a.x)
    return f"{a.x}{a.y:+d}*w"


def elem_to_json(a: QuadInt) -> dict[str, str]:
    return {"x": str(a.x), "y": str(a.y)}


def elem_from_json(d: dict[str, str], ring: RingParams) -> QuadInt:
    return QuadInt(ring, int(d["x"]), int(d["y"]))


def iter_elements(ring: RingParams, max_norm: int):
    """Yield every nonzero element of norm <= max_norm (unspecified order)."""
    D = ring.D
    if ring.omega_mode is OmegaMode.SQRT:
        ymax = isqrt(max_norm // D)
        for y in range(-ymax, ymax + 1):
            xmax = isqrt(max_norm - D * y * y)
            for x in range(-xmax, xmax + 1):
                if x or y:
                    yield QuadInt(ring, x, y)
    else:
        four_n = 4 * max_norm
        vmax = isqrt(four_n // D)
        for v in range(-vmax, vmax + 1):
            umax = isqrt(four_n - D * v * v)
            u0 = -umax if (umax + v) % 2 == 0 else -umax + 1
            for u in range(u0, umax + 1, 2):
                if u or v:
                    yield _from_half_unchecked(ring, u, v)

"""Hyperbolic (split-complex) numbers: the algebra G with j**2 = 1.

``G+`` is the semigroup of numbers with nonnegative squared modulus and
``G+*`` the group of those with a strictly positive one. Numbers in ``G+*``
have the polar form ``sign(x) * |z| * e^{j theta}``.

Besides ``x`` and ``y`` every number carries its light-cone coordinates
``u = x + y`` and ``v = x - y``. Multiplication is componentwise in them and
``e^{j theta}`` is ``(e^theta, e^-theta)``, so the squared modulus ``u * v``,
the polar form and the inverse keep full relative precision where
``x**2 - y**2`` would cancel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from contextprob.errors import NoPolarForm, NotInvertible, PhaseOverflow

MAX_PHASE = 700.0


@dataclass(frozen=True)
class HyperbolicNumber:
    """``x + j y`` with ``j * j = 1``.

    Equality is exact on ``x`` and ``y``; use :meth:`isclose` for tolerant
    comparison. ``u`` and ``v`` default to ``x + y`` and ``x - y``.
    """

    x: float
    y: float = 0.0
    u: float | None = field(default=None, compare=False, repr=False)
    v: float | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.u is None:
            object.__setattr__(self, "u", self.x + self.y)
        if self.v is None:
            object.__setattr__(self, "v", self.x - self.y)

    @classmethod
    def from_light_cone(cls, u: float, v: float) -> HyperbolicNumber:
        """The number with ``x + y = u`` and ``x - y = v``."""
        return cls(0.5 * (u + v), 0.5 * (u - v), u, v)

    def __add__(self, other: HyperbolicNumber | float) -> HyperbolicNumber:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return HyperbolicNumber(
            self.x + other.x, self.y + other.y, self.u + other.u, self.v + other.v
        )

    __radd__ = __add__

    def __sub__(self, other: HyperbolicNumber | float) -> HyperbolicNumber:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return HyperbolicNumber(
            self.x - other.x, self.y - other.y, self.u - other.u, self.v - other.v
        )

    def __rsub__(self, other: float) -> HyperbolicNumber:
        return _coerce(other) - self

    def __neg__(self) -> HyperbolicNumber:
        return HyperbolicNumber(-self.x, -self.y, -self.u, -self.v)

    def __mul__(self, other: HyperbolicNumber | float) -> HyperbolicNumber:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return HyperbolicNumber(
            self.x * other.x + self.y * other.y,
            self.x * other.y + other.x * self.y,
            self.u * other.u,
            self.v * other.v,
        )

    __rmul__ = __mul__

    def conj(self) -> HyperbolicNumber:
        return HyperbolicNumber(self.x, -self.y, self.v, self.u)

    @property
    def real(self) -> float:
        """``x`` recovered from the light cone, free of cancellation."""
        return 0.5 * (self.u + self.v)

    def sq_norm(self) -> float:
        """``z * conj(z) = (x + y)(x - y)``; may be zero or negative."""
        return self.u * self.v

    @property
    def in_g_plus(self) -> bool:
        return self.sq_norm() >= 0.0

    @property
    def in_g_plus_star(self) -> bool:
        return self.sq_norm() > 0.0

    def isclose(
        self, other: HyperbolicNumber, abs_tol: float = 1e-12, rel_tol: float = 1e-10
    ) -> bool:
        return math.isclose(
            self.x, other.x, rel_tol=rel_tol, abs_tol=abs_tol
        ) and math.isclose(self.y, other.y, rel_tol=rel_tol, abs_tol=abs_tol)

    def to_dict(self) -> dict[str, float]:
        return {"x": self.x, "y": self.y}

    @classmethod
    def from_dict(cls, data: dict) -> HyperbolicNumber:
        return cls(float(data["x"]), float(data["y"]))

    def __repr__(self) -> str:
        sign = "-" if math.copysign(1.0, self.y) < 0 else "+"
        return f"({self.x!r} {sign} j{abs(self.y)!r})"


def _coerce(value) -> HyperbolicNumber:
    if isinstance(value, HyperbolicNumber):
        return value
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return HyperbolicNumber(float(value), 0.0)
    return NotImplemented


ZERO = HyperbolicNumber(0.0, 0.0)
ONE = HyperbolicNumber(1.0, 0.0)
J = HyperbolicNumber(0.0, 1.0)


@dataclass(frozen=True)
class PolarForm:
    """``sign * modulus * (cosh(phase) + j sinh(phase))``."""

    sign: int
    modulus: float
    phase: float

    def reconstruct(self) -> HyperbolicNumber:
        return self.sign * self.modulus * h_exp(self.phase)


def h_add(a: HyperbolicNumber, b: HyperbolicNumber) -> HyperbolicNumber:
    return a + b


def h_mul(a: HyperbolicNumber, b: HyperbolicNumber) -> HyperbolicNumber:
    return a * b


def h_conj(z: HyperbolicNumber) -> HyperbolicNumber:
    return z.conj()


def h_sq_norm(z: HyperbolicNumber) -> float:
    return z.sq_norm()


def h_exp(theta: float) -> HyperbolicNumber:
    """``e^{j theta} = cosh(theta) + j sinh(theta)``, a point of the unit circle.

    The light-cone coordinates ``e^theta`` and ``e^-theta`` are exact to
    rounding over the whole range, so ``sq_norm`` stays 1.

    Raises:
        PhaseOverflow: for |theta| > 700, where cosh overflows doubles.
    """
    if not abs(theta) <= MAX_PHASE:
        raise PhaseOverflow(
            f"Hyperbolic phase {theta} outside [-{MAX_PHASE}, {MAX_PHASE}]"
        )
    return HyperbolicNumber(
        math.cosh(theta), math.sinh(theta), math.exp(theta), math.exp(-theta)
    )


def h_polar(z: HyperbolicNumber) -> PolarForm:
    """Polar decomposition of ``z`` in G+*.

    The phase is the principal branch ``artanh(y / x) = ln(u / v) / 2``; for
    ``x < 0`` it is measured relative to the ``-1`` branch, i.e.
    ``z = -|z| e^{j theta}``.

    Raises:
        NoPolarForm: if ``sq_norm(z) <= 0``.
    """
    sq = z.sq_norm()
    if not sq > 0.0:
        raise NoPolarForm(f"{z!r} has squared modulus {sq} <= 0; not in G+*")
    sign = 1 if z.u > 0 else -1
    phase = 0.5 * (math.log(abs(z.u)) - math.log(abs(z.v)))
    return PolarForm(sign=sign, modulus=math.sqrt(sq), phase=phase)


def h_inverse(z: HyperbolicNumber) -> HyperbolicNumber:
    """Multiplicative inverse ``conj(z) / |z|**2``, defined on G+*.

    Raises:
        NotInvertible: for zero divisors and light-cone elements.
    """
    sq = z.sq_norm()
    if not sq > 0.0:
        raise NotInvertible(f"{z!r} has squared modulus {sq} <= 0; not invertible")
    return HyperbolicNumber(z.x / sq, -z.y / sq, 1.0 / z.u, 1.0 / z.v)

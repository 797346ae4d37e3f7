"""Solution families of the phase constraints.

Both representations reduce the normalization of a composed state to one
equation in the phase differences ``gamma_1`` and ``gamma_2``. Its solutions
form one-parameter families, described here by ``gamma_1`` as a function of
the free parameter ``gamma_2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable


def wrap_phase(angle: float) -> float:
    """Map an angle to (-pi, pi]."""
    wrapped = math.remainder(angle, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


@dataclass(frozen=True)
class PhaseFamily:
    """
    One family of phase pairs solving a normalization constraint.

    Attributes:
        name (str): Short identifier, e.g. ``"quantum"`` or ``"memory"``.
        relation (str): Human-readable relation between the phases.
        periodic (bool): Whether phases are angles (wrapped to (-pi, pi]).
    """

    name: str
    relation: str
    _solver: Callable[[float], tuple[float, ...]] = field(repr=False, compare=False)
    periodic: bool = True

    def solutions(self, gamma2: float) -> tuple[float, ...]:
        """All ``gamma_1`` belonging to ``gamma_2``, without duplicates."""
        raw = self._solver(gamma2)
        if self.periodic:
            raw = tuple(wrap_phase(value) for value in raw)
        unique: list[float] = []
        for value in raw:
            if not any(math.isclose(value, seen, abs_tol=1e-15) for seen in unique):
                unique.append(value)
        return tuple(unique)

    def gamma1(self, gamma2: float) -> float:
        return self.solutions(gamma2)[0]

    def to_dict(self) -> dict:
        return {"name": self.name, "relation": self.relation}

from __future__ import annotations

from dataclasses import dataclass


class InvalidParameters(ValueError):
    """Raised for parameter triples outside the supported domain."""


class ConsistencyError(RuntimeError):
    """An internal identity that must hold exactly was violated."""


MAX_GAMMA = 2


@dataclass(frozen=True)
class StructureParams:
    """Topological bound ``gamma``, minimum stack length ``r`` and minimum arc length ``lam``.

    ``lam <= r + 1`` is required: it makes the arc-length constraint vacuous
    on crossing arcs, which the block equations rely on.
    """

    gamma: int
    r: int
    lam: int

    def __post_init__(self):
        for name in ("gamma", "r", "lam"):
            if not isinstance(getattr(self, name), int):
                raise InvalidParameters(f"{name} must be an integer")
        if not 0 <= self.gamma <= MAX_GAMMA:
            raise InvalidParameters(
                f"gamma={self.gamma} unsupported; shadow polynomials exist for gamma <= {MAX_GAMMA}"
            )
        if not 1 <= self.r <= 4:
            raise InvalidParameters(f"r={self.r} outside [1, 4]")
        if not 1 <= self.lam <= 4:
            raise InvalidParameters(f"lambda={self.lam} outside [1, 4]")
        if self.lam > self.r + 1:
            raise InvalidParameters(f"lambda={self.lam} exceeds r + 1 = {self.r + 1}")

    def __str__(self) -> str:
        return f"gamma={self.gamma}, r={self.r}, lambda={self.lam}"

    def with_(self, **kw) -> "StructureParams":
        d = {"gamma": self.gamma, "r": self.r, "lam": self.lam}
        d.update(kw)
        return StructureParams(**d)


def in_scope_params(gammas=(0, 1, 2), rs=(1, 2, 3, 4), lams=(1, 2, 3, 4)):
    """All valid triples drawn from the given ranges."""
    out = []
    for g in gammas:
        for r in rs:
            for lam in lams:
                if lam <= r + 1:
                    out.append(StructureParams(g, r, lam))
    return out

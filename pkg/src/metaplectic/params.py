from __future__ import annotations

import math
from dataclasses import dataclass


class InvalidParams(ValueError):
    """Raised when (p, r, kappa, lambda) violate the family's constraints."""


@dataclass(frozen=True)
class Params:
    """Parameters of one solution in the family.

    ``r`` is odd, 1 <= r < 2p+1 and coprime to 2p+1; ``kappa`` and ``lam``
    are signs. ``lam`` only affects the braiding.
    """

    p: int
    r: int = 1
    kappa: int = 1
    lam: int = 1

    def __post_init__(self) -> None:
        problem = params_problem(self.p, self.r, self.kappa, self.lam)
        if problem:
            raise InvalidParams(problem)

    @property
    def n(self) -> int:
        return 2 * self.p + 1

    def with_lam(self, lam: int) -> Params:
        return Params(self.p, self.r, self.kappa, lam)


def params_problem(p: int, r: int, kappa: int = 1, lam: int = 1) -> str | None:
    """Describe the first violated constraint, or return None."""
    if p < 1:
        return f"p must be >= 1 (got {p})"
    n = 2 * p + 1
    if r % 2 == 0:
        return f"r must be odd (got {r})"
    if not 1 <= r < n:
        return f"r must satisfy 1 <= r < 2p+1 = {n} (got {r})"
    if math.gcd(r, n) != 1:
        return f"r must be coprime to 2p+1 = {n} (got {r})"
    if kappa not in (1, -1):
        return f"kappa must be +1 or -1 (got {kappa})"
    if lam not in (1, -1):
        return f"lambda must be +1 or -1 (got {lam})"
    return None


def valid_r(p: int) -> list[int]:
    n = 2 * p + 1
    return [r for r in range(1, n, 2) if math.gcd(r, n) == 1]


def all_params(p: int, *, with_lambda: bool = False) -> list[Params]:
    lams = (1, -1) if with_lambda else (1,)
    return [Params(p, r, k, l) for r in valid_r(p) for k in (1, -1) for l in lams]

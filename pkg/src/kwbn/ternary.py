"""Borel classes of a triple tensor product of rank-2 bundles in KW.

For rank-2 bundles ``E1, E2, E3`` with Borel roots ``ξ_i = b_1(E_i)``, the
rank-8 bundle ``E1⊗E2⊗E3`` has

    b_1 = γσ(1,1,1)
    b_2 = γσ(2,2,0) - 2σ(2,0,0)
    b_3 = γσ(3,1,1) - 8σ(1,1,1)
    b_4 = γσ(2,2,2) + σ(4,0,0) - 2σ(2,2,0)

where ``σ(n1,n2,n3)`` sums the distinct monomials in the S3-orbit of
``ξ1^n1 ξ2^n2 ξ3^n3``.  Setting ``γ = 0`` gives the Witt-sheaf version.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .ring import DEFAULT_CAP, GAMMA, BNElement, CapError, MultiPoly, Var, substitute

XI = (Var("ξ1", 2), Var("ξ2", 2), Var("ξ3", 2))


@dataclass(frozen=True)
class OrbitIndex:
    exponents: tuple[int, int, int]

    def __post_init__(self):
        exps = tuple(int(x) for x in self.exponents)
        if len(exps) != 3 or any(x < 0 for x in exps):
            raise ValueError("an orbit index is three non-negative integers")
        object.__setattr__(self, "exponents", tuple(sorted(exps, reverse=True)))


def orbit_sum(idx: OrbitIndex | Sequence[int]) -> MultiPoly:
    if not isinstance(idx, OrbitIndex):
        idx = OrbitIndex(tuple(idx))
    return MultiPoly(XI, {p: 1 for p in set(permutations(idx.exponents))})


@lru_cache(maxsize=None)
def triple_borel(i: int) -> MultiPoly:
    """``b_i`` of ``E1⊗E2⊗E3`` as a polynomial in ``ξ1, ξ2, ξ3``."""
    s = orbit_sum
    if i == 1:
        return GAMMA * s((1, 1, 1))
    if i == 2:
        return GAMMA * s((2, 2, 0)) - 2 * s((2, 0, 0))
    if i == 3:
        return GAMMA * s((3, 1, 1)) - 8 * s((1, 1, 1))
    if i == 4:
        return GAMMA * s((2, 2, 2)) + s((4, 0, 0)) - 2 * s((2, 2, 0))
    raise ValueError(f"triple_borel is defined for i in 1..4, got {i}")


def triple_borel_eval(i: int, roots: Sequence[BNElement]) -> BNElement:
    if len(roots) != 3:
        raise ValueError("need exactly three Borel roots")
    if len({r.cap for r in roots}) != 1:
        raise CapError("roots must share a cap")
    return substitute(triple_borel(i), {v.name: r for v, r in zip(XI, roots)})


@dataclass(frozen=True)
class ZetaPolynomial:
    """``Σ_j (-1)^j b_j ζ^{n-j}`` stored as the signed coefficient list.

    ``coefficients[j]`` multiplies ``ζ^{n-j}``; ``coefficients[0]`` is 1.
    """

    coefficients: tuple[BNElement, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, zeta: BNElement) -> BNElement:
        n = self.degree
        total = None
        for j, c in enumerate(self.coefficients):
            term = c * zeta ** (n - j)
            total = term if total is None else total + term
        return total

    def to_text(self) -> str:
        n = self.degree
        parts = []
        for j, c in enumerate(self.coefficients):
            if c.is_zero():
                continue
            power = n - j
            z = "" if power == 0 else ("ζ" if power == 1 else f"ζ^{power}")
            body = c.to_text()
            if body == "1" and z:
                parts.append(z)
            elif body == "-1" and z:
                parts.append("-" + z)
            elif z:
                needs = " + " in body or " - " in body
                parts.append((f"({body})" if needs else body) + z)
            else:
                parts.append(body)
        return " + ".join(parts).replace("+ -", "- ") or "0"

    __str__ = to_text


def borel_defining_polynomial(b: Sequence[BNElement], cap: int | None = None) -> ZetaPolynomial:
    """The relation ``ζ^n - b_1 ζ^{n-1} + … + (-1)^n b_n`` for classes ``b_1..b_n``."""
    caps = {x.cap for x in b}
    if cap is not None:
        caps.add(cap)
    if len(caps) > 1:
        raise CapError("classes must share a cap")
    cap = caps.pop() if caps else DEFAULT_CAP
    coeffs = [BNElement.one(cap)]
    for j, bj in enumerate(b, start=1):
        coeffs.append(bj if j % 2 == 0 else -bj)
    return ZetaPolynomial(tuple(coeffs))

"""Power-series presentations of η-inverted cohomology of BSL_n, BGL_n and products.

A :class:`RingPresentation` lists free generators with their degrees and
twists; the ring is the power series ring on them, truncated at total
degree ``cap``.  Elements are :class:`~kwbn.ring.MultiPoly` values over the
presentation's variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ring import DEFAULT_CAP, MultiPoly, Var


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    twist: int = 0

    def latex(self) -> str:
        name, suffix = self.name, ""
        if name.endswith(")") and "(" in name:
            name, idx = name[:-1].split("(", 1)
            suffix = "^{(%s)}" % idx
        if name == "eps":
            return "e^{2}" if not suffix else r"\left(e^{2}\right)" + suffix
        if name.startswith("p") and name[1:].isdigit():
            return "p_{%s}%s" % (name[1:], suffix)
        return name + suffix


@dataclass(frozen=True)
class RingPresentation:
    """``part`` is ``"untwisted"``, ``"twisted"`` (the module ``unit·⟦gens⟧``) or ``"zero"``."""

    generators: tuple[Generator, ...]
    cap: int = DEFAULT_CAP
    part: str = "untwisted"
    unit: Generator | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"generator names must be unique: {names}")
        if any(g.degree <= 0 for g in self.generators):
            raise ValueError("generator degrees must be positive")
        if self.part not in ("untwisted", "twisted", "zero"):
            raise ValueError(f"unknown part {self.part!r}")
        if (self.part == "twisted") != (self.unit is not None):
            raise ValueError("a twisted part needs exactly one unit generator")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def variables(self) -> tuple[Var, ...]:
        return tuple(Var(g.name, g.degree, g.twist) for g in self.generators)

    def gen(self, name: str) -> MultiPoly:
        return MultiPoly.gens(self.variables)[self.names.index(name)]

    def one(self) -> MultiPoly:
        return MultiPoly.constant(self.variables, 1)

    def element(self, terms) -> MultiPoly:
        return self.truncate(MultiPoly(self.variables, terms))

    def truncate(self, f: MultiPoly) -> MultiPoly:
        return f.truncate(self.cap)

    def mul(self, a: MultiPoly, b: MultiPoly) -> MultiPoly:
        return self.truncate(a * b)

    def to_json(self) -> dict:
        return {
            "part": self.part,
            "cap": self.cap,
            "unit": None if self.unit is None else
            {"name": self.unit.name, "degree": self.unit.degree, "twist": self.unit.twist},
            "generators": [
                {"name": g.name, "degree": g.degree, "twist": g.twist} for g in self.generators
            ],
        }

    def to_latex(self) -> str:
        if self.part == "zero":
            return "0"
        ring = r"A^{\bullet}(S)\llbracket " + ", ".join(g.latex() for g in self.generators) + r"\rrbracket"
        if not self.generators:
            ring = r"A^{\bullet}(S)"
        return ring if self.unit is None else self.unit.latex() + r"\cdot " + ring


def _pontryagin(count: int) -> list[Generator]:
    return [Generator(f"p{i}", 4 * i) for i in range(1, count + 1)]


def bsl_presentation(n: int, cap: int = DEFAULT_CAP) -> RingPresentation:
    """``BSL_{2m}``: ``⟦p_1..p_{m-1}, e⟧`` with ``deg e = 2m``; ``BSL_{2m+1}``: ``⟦p_1..p_m⟧``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    m = n // 2
    if n % 2 == 0:
        return RingPresentation(tuple(_pontryagin(m - 1)) + (Generator("e", 2 * m),), cap)
    return RingPresentation(tuple(_pontryagin(m)), cap)


def bgl_presentation(n: int, cap: int = DEFAULT_CAP) -> tuple[RingPresentation, RingPresentation]:
    """Untwisted and determinant-twisted parts for ``BGL_n``.

    For ``n = 2m`` the untwisted part is ``⟦p_1..p_{m-1}, eps⟧`` where the
    degree-``4m`` symbol ``eps`` stands for ``e²``, and the twisted part is
    ``e·⟦p_1..p_m⟧`` with ``p_m`` standing for ``e²``.  For odd ``n`` the
    twisted part is zero.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    m = n // 2
    if n % 2:
        return RingPresentation(tuple(_pontryagin(m)), cap), RingPresentation((), cap, "zero")
    untwisted = RingPresentation(tuple(_pontryagin(m - 1)) + (Generator("eps", 4 * m),), cap)
    twisted = RingPresentation(tuple(_pontryagin(m)), cap, "twisted", Generator("e", 2 * m, 1))
    return untwisted, twisted


def kunneth_product(ps: Sequence[RingPresentation], disambiguate: bool = True) -> RingPresentation:
    """Completed tensor product: the power series ring on all generators.

    With ``disambiguate`` every generator of factor ``i`` is renamed
    ``name(i)`` (1-based); otherwise a name clash raises ``ValueError``.
    A single factor is returned unchanged.
    """
    ps = list(ps)
    if not ps:
        raise ValueError("need at least one factor")
    if any(p.part != "untwisted" for p in ps):
        raise ValueError("only untwisted rings can be multiplied")
    if len({p.cap for p in ps}) != 1:
        raise ValueError("factors must share a cap")
    if len(ps) == 1:
        return ps[0]
    gens = []
    for i, p in enumerate(ps, start=1):
        for g in p.generators:
            gens.append(Generator(f"{g.name}({i})", g.degree, g.twist) if disambiguate else g)
    names = [g.name for g in gens]
    if len(set(names)) != len(names):
        raise ValueError(f"generator names clash: {names}")
    return RingPresentation(tuple(gens), ps[0].cap)


def include_factor(product: RingPresentation, factor: RingPresentation, index: int,
                   f: MultiPoly) -> MultiPoly:
    """Push ``f`` from factor ``index`` (1-based) into the product ring."""
    names = product.names
    pos = [names.index(f"{g.name}({index})") for g in factor.generators]
    t = {}
    for mono, c in f.terms.items():
        new = [0] * len(names)
        for p, x in zip(pos, mono):
            new[p] = x
        t[tuple(new)] = c
    return product.truncate(MultiPoly(product.variables, t))


def even_odd_split(f: MultiPoly, e: str = "e", eps: str = "eps") -> tuple[MultiPoly, MultiPoly]:
    """Write ``f = f_even(p, e²) + e·f_odd(p, e²)``.

    Both parts live in the ring where ``e`` is replaced by ``eps`` of twice
    its degree.
    """
    names = f.names
    if e not in names:
        raise ValueError(f"{e!r} is not a variable of f")
    i = names.index(e)
    var = f.variables[i]
    out_vars = tuple(Var(eps, 2 * var.degree, 0) if j == i else v for j, v in enumerate(f.variables))
    even, odd = {}, {}
    for mono, c in f.terms.items():
        k = mono[i]
        new = list(mono)
        new[i] = k // 2
        (odd if k % 2 else even)[tuple(new)] = c
    return MultiPoly(out_vars, even), MultiPoly(out_vars, odd)


def reconstruct(f_even: MultiPoly, f_odd: MultiPoly, e: str = "e", eps: str = "eps",
                e_degree: int | None = None) -> MultiPoly:
    """Inverse of :func:`even_odd_split`."""
    if f_even.variables != f_odd.variables:
        raise ValueError("parts must share variables")
    names = f_even.names
    i = names.index(eps)
    eps_var = f_even.variables[i]
    deg = e_degree if e_degree is not None else eps_var.degree // 2
    out_vars = tuple(Var(e, deg, 0) if j == i else v for j, v in enumerate(f_even.variables))
    t = {}
    for part, shift in ((f_even, 0), (f_odd, 1)):
        for mono, c in part.terms.items():
            new = list(mono)
            new[i] = 2 * mono[i] + shift
            t[tuple(new)] = c
    return MultiPoly(out_vars, t)


def pull_back_to_bsl(f: MultiPoly, part: RingPresentation, bsl: RingPresentation) -> MultiPoly:
    """Image in ``BSL_{2m}``'s ring of an element of a ``BGL_{2m}`` part.

    Untwisted: ``eps ↦ e²``.  Twisted: ``p_m ↦ e²`` and multiply by ``e``.
    """
    target = bsl.variables
    names = [v.name for v in target]
    e_pos = names.index("e")
    src = part.names
    t = {}
    for mono, c in f.terms.items():
        new = [0] * len(target)
        for name, x in zip(src, mono):
            if name in names and name != "e":
                new[names.index(name)] += x
            else:
                # eps or the top Pontryagin class p_m, both meaning e²
                new[e_pos] += 2 * x
        if part.part == "twisted":
            new[e_pos] += 1
        t[tuple(new)] = c
    return bsl.truncate(MultiPoly(target, t))

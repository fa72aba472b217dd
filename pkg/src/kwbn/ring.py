"""Exact arithmetic for the Witt-theory ring of BN and for polynomials over it.

Three value types live here:

* :class:`GammaScalar` -- Laurent polynomials in the Bott element ``γ`` with
  integer coefficients.  This is the coefficient ring.
* :class:`BNElement` -- truncated power series in ``e`` over ``GammaScalar``,
  tagged with a twist in ``Z/2``.  A twisted element stands for ``ẽ·f(e)``
  and stores only the cofactor ``f``; products of two twisted elements are
  rewritten with ``ẽ² = -4e² + γe⁴``.
* :class:`MultiPoly` -- multivariate polynomials over ``GammaScalar`` with
  named, graded variables.  Used for ternary-law polynomials and for the
  power-series presentations of classifying rings.

All values are immutable; every operation returns a new object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

DEFAULT_CAP = 64

# single grading: deg e = deg ẽ = 2, deg γ = -4
E_DEGREE = 2
GAMMA_DEGREE = -4

INHOMOGENEOUS = "inhomogeneous"


class TwistError(ValueError):
    """Raised when elements of different twists are added."""


class CapError(ValueError):
    """Raised when truncation caps disagree or are too small."""


class SpecializationError(ValueError):
    """Raised when ``γ = 0`` is substituted into a term with ``γ⁻¹``."""


_SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def _sup(k: int) -> str:
    return "" if k == 1 else str(k).translate(_SUPERSCRIPTS)


# ---------------------------------------------------------------------------
# GammaScalar
# ---------------------------------------------------------------------------


class GammaScalar:
    """A Laurent polynomial ``Σ c_k γ^k`` with integer ``c_k``.

    Construct from an ``int`` or from a mapping ``{γ-exponent: coefficient}``.
    Zero coefficients are never stored.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, terms: Union[int, Mapping[int, int], "GammaScalar", None] = None):
        if terms is None:
            c = {}
        elif isinstance(terms, GammaScalar):
            c = dict(terms._c)
        elif isinstance(terms, int):
            c = {0: terms} if terms else {}
        else:
            c = {}
            for k, v in terms.items():
                if not isinstance(k, int) or not isinstance(v, int):
                    raise TypeError("GammaScalar needs integer exponents and coefficients")
                if v:
                    c[k] = c.get(k, 0) + v
            c = {k: v for k, v in c.items() if v}
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "GammaScalar":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def gamma(cls, k: int = 1) -> "GammaScalar":
        return cls._raw({k: 1})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        """(exponent, coefficient) pairs sorted by exponent."""
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def min_exponent(self) -> int:
        return min(self._c)

    def max_exponent(self) -> int:
        return max(self._c)

    def specialize_gamma_zero(self) -> int:
        """Value at ``γ = 0``; raises if a negative power is present."""
        if any(k < 0 for k in self._c):
            raise SpecializationError(f"γ = 0 is undefined on {self}")
        return self._c.get(0, 0)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return GammaScalar._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return GammaScalar._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        c: dict[int, int] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                k = k1 + k2
                c[k] = c.get(k, 0) + v1 * v2
        return GammaScalar._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials in γ are invertible")
            ((k, v),) = self._c.items()
            if v not in (1, -1):
                raise ValueError("only ±γ^k is invertible over Z")
            return GammaScalar._raw({k * n: v ** (-n)})
        result = GammaScalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"GammaScalar({self._c!r})"

    # formatting -------------------------------------------------------------

    def to_text(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items(), reverse=True):
            mag = abs(v)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + "γ" + _sup(k)
            parts.append(("-" if v < 0 else "+", body))
        return _join_signed(parts, " ")

    def to_latex(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items(), reverse=True):
            mag = abs(v)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + r"\gamma" + ("" if k == 1 else "^{%d}" % k)
            parts.append(("-" if v < 0 else "+", body))
        return _join_signed(parts, "")

    __str__ = to_text


def _as_scalar(x):
    if isinstance(x, GammaScalar):
        return x
    if isinstance(x, int):
        return GammaScalar(x)
    return NotImplemented


def _join_signed(parts, space: str) -> str:
    out = []
    for i, (sign, body) in enumerate(parts):
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f"{space}{sign}{space}{body}")
    return "".join(out)


GAMMA = GammaScalar.gamma(1)


def scalar_op(a: GammaScalar, b: GammaScalar, kind: str) -> GammaScalar:
    """Apply ``kind`` (``"add"`` or ``"mul"``) to two scalars."""
    if kind == "add":
        return _as_scalar(a) + b
    if kind == "mul":
        return _as_scalar(a) * b
    raise ValueError(f"unknown scalar operation {kind!r}")


# ---------------------------------------------------------------------------
# BNElement
# ---------------------------------------------------------------------------


Coefficient = Union[int, GammaScalar]


class BNElement:
    """An element of the untwisted or ``γ_N``-twisted part of ``KW(BN)``.

    ``terms`` maps an ``e``-exponent to its :class:`GammaScalar` coefficient.
    For ``twist == 1`` the terms describe the cofactor ``f`` in ``ẽ·f(e)``.
    Exponents above ``cap`` are discarded on construction.
    """

    __slots__ = ("twist", "cap", "_t", "_hash")

    def __init__(self, terms: Mapping[int, Coefficient] | None = None, twist: int = 0,
                 cap: int = DEFAULT_CAP):
        if twist not in (0, 1):
            raise ValueError(f"twist must be 0 or 1, got {twist!r}")
        if cap < 0:
            raise CapError("cap must be non-negative")
        t: dict[int, GammaScalar] = {}
        for k, v in (terms or {}).items():
            if not isinstance(k, int) or k < 0:
                raise ValueError(f"e-exponents must be non-negative integers, got {k!r}")
            if k > cap:
                continue
            v = _as_scalar(v)
            if v is NotImplemented:
                raise TypeError(f"bad coefficient {v!r}")
            s = t.get(k, GammaScalar()) + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        self.twist = twist
        self.cap = cap
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict, twist: int, cap: int) -> "BNElement":
        obj = cls.__new__(cls)
        obj._t = t
        obj.twist = twist
        obj.cap = cap
        obj._hash = None
        return obj

    # named elements ---------------------------------------------------------

    @classmethod
    def zero(cls, twist: int = 0, cap: int = DEFAULT_CAP) -> "BNElement":
        return cls({}, twist, cap)

    @classmethod
    def one(cls, cap: int = DEFAULT_CAP) -> "BNElement":
        return cls({0: 1}, 0, cap)

    @classmethod
    def e(cls, cap: int = DEFAULT_CAP) -> "BNElement":
        return cls({1: 1}, 0, cap)

    @classmethod
    def etilde(cls, cap: int = DEFAULT_CAP) -> "BNElement":
        return cls({0: 1}, 1, cap)

    @classmethod
    def etilde_squared(cls, cap: int = DEFAULT_CAP) -> "BNElement":
        """The rewrite target ``-4e² + γe⁴`` of ``ẽ²``."""
        return cls({2: -4, 4: GAMMA}, 0, cap)

    # accessors --------------------------------------------------------------

    @property
    def terms(self) -> dict[int, GammaScalar]:
        return dict(self._t)

    def coefficient(self, k: int) -> GammaScalar:
        return self._t.get(k, GammaScalar())

    def items(self):
        return sorted(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    def min_e_exponent(self) -> int | None:
        return min(self._t) if self._t else None

    def max_e_exponent(self) -> int | None:
        return max(self._t) if self._t else None

    def truncate(self, cap: int) -> "BNElement":
        if cap > self.cap:
            raise CapError(f"cannot raise cap from {self.cap} to {cap}")
        return BNElement._raw({k: v for k, v in self._t.items() if k <= cap}, self.twist, cap)

    # arithmetic -------------------------------------------------------------

    def _check_cap(self, other: "BNElement"):
        if self.cap != other.cap:
            raise CapError(f"cap mismatch: {self.cap} vs {other.cap}")

    def __add__(self, other):
        if isinstance(other, (int, GammaScalar)):
            other = BNElement({0: other}, 0, self.cap)
        if not isinstance(other, BNElement):
            return NotImplemented
        self._check_cap(other)
        if self.twist != other.twist:
            raise TwistError("cannot add elements of different twists")
        t = dict(self._t)
        for k, v in other._t.items():
            s = t[k] + v if k in t else v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return BNElement._raw(t, self.twist, self.cap)

    __radd__ = __add__

    def __neg__(self):
        return BNElement._raw({k: -v for k, v in self._t.items()}, self.twist, self.cap)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _scale(self, c: GammaScalar) -> "BNElement":
        if not c:
            return BNElement._raw({}, self.twist, self.cap)
        return BNElement._raw({k: v * c for k, v in self._t.items()}, self.twist, self.cap)

    def __mul__(self, other):
        if isinstance(other, (int, GammaScalar)):
            return self._scale(_as_scalar(other))
        if not isinstance(other, BNElement):
            return NotImplemented
        self._check_cap(other)
        cap = self.cap
        prod = _poly_mul(self._t, other._t, cap)
        if self.twist and other.twist:
            prod = _poly_mul(prod, {2: GammaScalar(-4), 4: GAMMA}, cap)
        return BNElement._raw(prod, (self.twist + other.twist) % 2, cap)

    def __rmul__(self, other):
        if isinstance(other, (int, GammaScalar)):
            return self._scale(_as_scalar(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = BNElement.one(self.cap)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, BNElement):
            return NotImplemented
        return self.twist == other.twist and self.cap == other.cap and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.twist, self.cap, frozenset(self._t.items())))
        return self._hash

    def __repr__(self):
        return f"BNElement({self.to_text()!r}, twist={self.twist}, cap={self.cap})"

    # derived quantities -----------------------------------------------------

    def degree(self):
        """Common degree of all terms, ``None`` for zero, or ``INHOMOGENEOUS``."""
        degs = set()
        base = E_DEGREE if self.twist else 0
        for k, c in self._t.items():
            for g in c.terms:
                degs.add(base + E_DEGREE * k + GAMMA_DEGREE * g)
        if not degs:
            return None
        if len(degs) > 1:
            return INHOMOGENEOUS
        return degs.pop()

    def specialize_gamma_zero(self) -> "BNElement":
        t = {}
        for k, c in self._t.items():
            v = c.specialize_gamma_zero()
            if v:
                t[k] = GammaScalar(v)
        return BNElement._raw(t, self.twist, self.cap)

    # formatting -------------------------------------------------------------

    def _terms_text(self, latex: bool) -> str:
        if not self._t:
            return "0"
        parts = []
        for k, c in sorted(self._t.items()):
            epart = "" if k == 0 else ("e" + (("^{%d}" % k if latex else _sup(k)) if k != 1 else ""))
            if len(c.terms) == 1:
                ((g, v),) = c.terms.items()
                mag = abs(v)
                gpart = ""
                if g != 0:
                    gpart = (r"\gamma" + ("" if g == 1 else "^{%d}" % g)) if latex else "γ" + _sup(g)
                coeff = "" if (mag == 1 and (gpart or epart)) else str(mag)
                sep = " " if (latex and gpart and epart) else ""
                parts.append(("-" if v < 0 else "+", coeff + gpart + sep + epart))
            else:
                inner = c.to_latex() if latex else c.to_text()
                parts.append(("+", f"({inner})" + epart))
        return _join_signed(parts, "" if latex else " ")

    def to_text(self) -> str:
        body = self._terms_text(latex=False)
        if not self.twist or body == "0":
            return body
        if self._t == {0: GammaScalar(1)}:
            return "ẽ"
        if self._t == {0: GammaScalar(-1)}:
            return "-ẽ"
        return f"ẽ({body})"

    def to_latex(self) -> str:
        body = self._terms_text(latex=True)
        if not self.twist or body == "0":
            return body
        if self._t == {0: GammaScalar(1)}:
            return r"\tilde{e}"
        if self._t == {0: GammaScalar(-1)}:
            return r"-\tilde{e}"
        return r"\tilde{e}\left(" + body + r"\right)"

    __str__ = to_text

    # serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "twist": self.twist,
            "cap": self.cap,
            "terms": [
                {"e": k, "gamma": [[g, v] for g, v in c.items()]}
                for k, c in sorted(self._t.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "BNElement":
        terms = {}
        for entry in data["terms"]:
            k = entry["e"]
            if k in terms:
                raise ValueError(f"duplicate e-exponent {k}")
            terms[k] = GammaScalar({g: v for g, v in entry["gamma"]})
        return cls(terms, data["twist"], data["cap"])


def _poly_mul(a: Mapping[int, GammaScalar], b: Mapping[int, GammaScalar], cap: int) -> dict:
    out: dict[int, GammaScalar] = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = k1 + k2
            if k > cap:
                continue
            p = v1 * v2
            out[k] = out[k] + p if k in out else p
    return {k: v for k, v in out.items() if v}


def bn_mul(a: BNElement, b: BNElement) -> BNElement:
    return a * b


def bn_add(a: BNElement, b: BNElement) -> BNElement:
    return a + b


def specialize_gamma_zero(a: BNElement) -> BNElement:
    return a.specialize_gamma_zero()


def degree_of(a: BNElement):
    return a.degree()


BN_JSON_SCHEMA = {
    "type": "object",
    "required": ["twist", "cap", "terms"],
    "additionalProperties": False,
    "properties": {
        "twist": {"enum": [0, 1]},
        "cap": {"type": "integer", "minimum": 0},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["e", "gamma"],
                "additionalProperties": False,
                "properties": {
                    "e": {"type": "integer", "minimum": 0},
                    "gamma": {
                        "type": "array",
                        "items": {
                            "type": "array",
                            "prefixItems": [{"type": "integer"}, {"type": "integer"}],
                            "minItems": 2,
                            "maxItems": 2,
                        },
                    },
                },
            },
        },
    },
}


# ---------------------------------------------------------------------------
# MultiPoly
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str
    degree: int = 2
    twist: int = 0


def _as_vars(variables) -> tuple[Var, ...]:
    out = []
    for v in variables:
        if isinstance(v, Var):
            out.append(v)
        elif isinstance(v, str):
            out.append(Var(v))
        else:
            out.append(Var(*v))
    names = [v.name for v in out]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate variable names in {names}")
    return tuple(out)


class MultiPoly:
    """A polynomial over :class:`GammaScalar` in an ordered list of variables.

    ``terms`` maps exponent tuples (one entry per variable) to coefficients.
    Two polynomials can only be combined if their variable lists agree.
    """

    __slots__ = ("variables", "_t", "_hash")

    def __init__(self, variables: Iterable, terms: Mapping[tuple, Coefficient] | None = None):
        self.variables = _as_vars(variables)
        n = len(self.variables)
        t: dict[tuple, GammaScalar] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ValueError(f"exponent vector {mono} does not match {n} variables")
            if any(not isinstance(x, int) or x < 0 for x in mono):
                raise ValueError(f"exponents must be non-negative integers: {mono}")
            c = _as_scalar(c)
            if c is NotImplemented:
                raise TypeError("bad coefficient")
            s = t[mono] + c if mono in t else c
            if s:
                t[mono] = s
            else:
                t.pop(mono, None)
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, variables, t) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.variables = variables
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def gens(cls, variables) -> tuple["MultiPoly", ...]:
        vs = _as_vars(variables)
        n = len(vs)
        return tuple(
            cls._raw(vs, {tuple(int(i == j) for j in range(n)): GammaScalar(1)}) for i in range(n)
        )

    @classmethod
    def constant(cls, variables, c: Coefficient = 1) -> "MultiPoly":
        vs = _as_vars(variables)
        return cls(vs, {(0,) * len(vs): c})

    @property
    def terms(self) -> dict[tuple, GammaScalar]:
        return dict(self._t)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def items(self):
        return sorted(self._t.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._t

    def _coerce(self, other):
        if isinstance(other, (int, GammaScalar)):
            return MultiPoly.constant(self.variables, other)
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("variable lists differ")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self._t)
        for m, c in other._t.items():
            s = t[m] + c if m in t else c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return MultiPoly._raw(self.variables, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables, {m: -c for m, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t: dict[tuple, GammaScalar] = {}
        for m1, c1 in self._t.items():
            for m2, c2 in other._t.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                p = c1 * c2
                t[m] = t[m] + p if m in t else p
        return MultiPoly._raw(self.variables, {m: c for m, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = MultiPoly.constant(self.variables, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, GammaScalar)):
            other = MultiPoly.constant(self.variables, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._t.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"

    def weighted_degree(self, mono: tuple) -> int:
        return sum(v.degree * x for v, x in zip(self.variables, mono))

    def degree(self):
        """Common degree with ``deg γ = -4``; ``None`` for zero, else ``INHOMOGENEOUS``."""
        degs = {
            self.weighted_degree(m) + GAMMA_DEGREE * g for m, c in self._t.items() for g in c.terms
        }
        if not degs:
            return None
        if len(degs) > 1:
            return INHOMOGENEOUS
        return degs.pop()

    def permute(self, perm: tuple[int, ...]) -> "MultiPoly":
        """Send variable ``i`` to variable ``perm[i]``."""
        n = len(self.variables)
        t = {}
        for m, c in self._t.items():
            new = [0] * n
            for i, x in enumerate(m):
                new[perm[i]] += x
            t[tuple(new)] = c
        return MultiPoly._raw(self.variables, t)

    def specialize_gamma_zero(self) -> "MultiPoly":
        t = {}
        for m, c in self._t.items():
            v = c.specialize_gamma_zero()
            if v:
                t[m] = GammaScalar(v)
        return MultiPoly._raw(self.variables, t)

    def truncate(self, cap: int) -> "MultiPoly":
        """Drop monomials whose variable-weighted degree exceeds ``cap``."""
        return MultiPoly._raw(
            self.variables, {m: c for m, c in self._t.items() if self.weighted_degree(m) <= cap}
        )

    def rename(self, variables) -> "MultiPoly":
        vs = _as_vars(variables)
        if len(vs) != len(self.variables):
            raise ValueError("rename needs the same number of variables")
        return MultiPoly._raw(vs, dict(self._t))

    def to_text(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for m, c in self.items():
            mono = "".join(v.name + _sup(x) for v, x in zip(self.variables, m) if x)
            if len(c.terms) == 1:
                ((g, val),) = c.terms.items()
                gpart = "" if g == 0 else "γ" + _sup(g)
                mag = abs(val)
                coeff = "" if (mag == 1 and (gpart or mono)) else str(mag)
                parts.append(("-" if val < 0 else "+", coeff + gpart + mono))
            else:
                parts.append(("+", f"({c.to_text()})" + mono))
        return _join_signed(parts, " ")

    __str__ = to_text

    def substitute(self, assignment: Mapping[str, BNElement], cap: int | None = None) -> BNElement:
        return substitute(self, assignment, cap)


def multipoly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.variables != b.variables:
        raise ValueError("variable lists differ")
    return a * b


def substitute(p: MultiPoly, assignment: Mapping[str, BNElement], cap: int | None = None) -> BNElement:
    """Evaluate ``p`` with each variable replaced by a :class:`BNElement`.

    Every monomial must land in the same twist; the zero polynomial evaluates
    to the untwisted zero.
    """
    missing = [v.name for v in p.variables if v.name not in assignment]
    if missing:
        raise KeyError(f"unassigned variables: {missing}")
    values = [assignment[v.name] for v in p.variables]
    caps = {x.cap for x in values}
    if cap is not None:
        caps.add(cap)
    if len(caps) > 1:
        raise CapError(f"cap mismatch among assigned values: {sorted(caps)}")
    cap = caps.pop() if caps else DEFAULT_CAP

    powers: dict[tuple[int, int], BNElement] = {}

    def power(i: int, k: int) -> BNElement:
        key = (i, k)
        if key not in powers:
            powers[key] = values[i] ** k
        return powers[key]

    result = None
    for mono, c in p.items():
        term = BNElement.one(cap)
        for i, k in enumerate(mono):
            if k:
                term = term * power(i, k)
        term = term * c
        if result is None:
            result = term
        else:
            if term.twist != result.twist:
                raise TwistError(f"monomial {mono} lands in twist {term.twist}, expected {result.twist}")
            result = result + term
    return result if result is not None else BNElement.zero(0, cap)

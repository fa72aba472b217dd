"""Exact representations of N, the normaliser of the diagonal torus in SL2.

An :class:`NRep` is given in a torus-weight basis: ``weights[j]`` is the
weight of basis vector ``j`` and ``sigma`` is the matrix of
``σ = (0 1; -1 0)`` with columns holding images of basis vectors.  Each rep
also carries ``form``, a non-degenerate bilinear form (``form[i][j]`` pairs
basis ``i`` with basis ``j``).  Irreducibles carry ``e1∧e2``; tensor and
symmetric powers carry the induced form.  The form is what orients each
rank-2 summand in :func:`decompose` and so fixes its ``±`` label.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

import sympy

Matrix = tuple[tuple[Fraction, ...], ...]


def _mat(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k) if a[i][t] and b[t][j]), Fraction(0))
              for j in range(m))
        for i in range(n)
    )


def _kron(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(a[i][j] * b[k][l] for j in range(len(a[0])) for l in range(len(b[0])))
        for i in range(len(a)) for k in range(len(b))
    )


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    na, nb = len(a), len(b)
    zero = Fraction(0)
    rows = [tuple(a[i]) + (zero,) * nb for i in range(na)]
    rows += [(zero,) * na + tuple(b[i]) for i in range(nb)]
    return tuple(rows)


# ---------------------------------------------------------------------------
# labels
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class IrrepLabel:
    """``two_dim`` (``O±(m)``), ``trivial`` or ``sign``."""

    kind: str
    m: int = 0
    sign: int = 1

    def __post_init__(self):
        if self.kind not in ("two_dim", "trivial", "sign"):
            raise ValueError(f"unknown irrep kind {self.kind!r}")
        if self.kind == "two_dim":
            if not isinstance(self.m, int) or self.m < 1:
                raise ValueError(f"two-dimensional irreps need m >= 1, got {self.m!r}")
            if self.sign not in (1, -1):
                raise ValueError("sign must be +1 or -1")
        elif self.m != 0 or self.sign != 1:
            raise ValueError(f"{self.kind} takes no parameters")

    @classmethod
    def two_dim(cls, m: int, sign: int = 1) -> "IrrepLabel":
        return cls("two_dim", m, sign)

    @property
    def rank(self) -> int:
        return 2 if self.kind == "two_dim" else 1

    def sort_key(self):
        order = {"two_dim": 0, "trivial": 1, "sign": 2}[self.kind]
        return (order, -self.m, -self.sign)

    def __str__(self):
        if self.kind == "two_dim":
            return f"O{'+' if self.sign > 0 else '-'}({self.m})"
        return "triv" if self.kind == "trivial" else "sign"


TRIVIAL = IrrepLabel("trivial")
SIGN = IrrepLabel("sign")


def determinant_twist(label: IrrepLabel) -> int:
    """Twist (0 or 1) of the determinant line of the bundle attached to ``label``."""
    if label.kind == "two_dim":
        return 0 if label.m % 2 else 1
    return 0 if label.kind == "trivial" else 1


# ---------------------------------------------------------------------------
# NRep
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NRep:
    weights: tuple[int, ...]
    sigma: Matrix
    form: Matrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "sigma", _mat(self.sigma))
        if self.form is not None:
            object.__setattr__(self, "form", _mat(self.form))
        n = len(self.weights)
        if n == 0:
            raise ValueError("representation must be non-zero")
        if len(self.sigma) != n or any(len(r) != n for r in self.sigma):
            raise ValueError("sigma must be a dim x dim matrix")
        if self.form is not None and (len(self.form) != n or any(len(r) != n for r in self.form)):
            raise ValueError("form must be a dim x dim matrix")

    @property
    def dim(self) -> int:
        return len(self.weights)

    def check(self) -> None:
        """Raise ``ValueError`` unless σ swaps weights ``w ↔ -w`` and ``σ² = ι(-1)``."""
        n = self.dim
        for i in range(n):
            for j in range(n):
                if self.sigma[i][j] and self.weights[i] != -self.weights[j]:
                    raise ValueError(f"sigma maps weight {self.weights[j]} to {self.weights[i]}")
        sq = _matmul(self.sigma, self.sigma)
        for i in range(n):
            for j in range(n):
                want = (-1) ** (self.weights[j] % 2) if i == j else 0
                if sq[i][j] != want:
                    raise ValueError("sigma squared is not the action of ι(-1)")

    def determinant_sign(self) -> int:
        return int(sympy.Matrix(self.sigma).det())


def make_irrep(label: IrrepLabel) -> NRep:
    if label.kind == "trivial":
        return NRep((0,), ((1,),), ((1,),))
    if label.kind == "sign":
        return NRep((0,), ((-1,),), ((1,),))
    m, s = label.m, label.sign
    return NRep((m, -m), ((0, s), (s * (-1) ** m, 0)), ((0, 1), (-1, 0)))


def tensor(r1: NRep, r2: NRep) -> NRep:
    weights = tuple(a + b for a in r1.weights for b in r2.weights)
    form = None if r1.form is None or r2.form is None else _kron(r1.form, r2.form)
    return NRep(weights, _kron(r1.sigma, r2.sigma), form)


def direct_sum(r1: NRep, r2: NRep) -> NRep:
    form = None if r1.form is None or r2.form is None else _block_diag(r1.form, r2.form)
    return NRep(r1.weights + r2.weights, _block_diag(r1.sigma, r2.sigma), form)


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _linear_power_product(coeffs: list[list[Fraction]], alpha: tuple[int, ...], d: int) -> dict:
    # Π_i (Σ_j coeffs[i][j] y_j)^{alpha_i} as {exponent tuple: coefficient}
    result = {(0,) * d: Fraction(1)}
    for i, a in enumerate(alpha):
        if not a:
            continue
        lin = {}
        for j in range(d):
            if coeffs[i][j]:
                lin[tuple(int(t == j) for t in range(d))] = coeffs[i][j]
        for _ in range(a):
            result = _poly_mul(result, lin)
    return result


def sym_power(r: NRep, k: int) -> NRep:
    """``Sym^k`` in the monomial basis (multisets of basis indices, lexicographic).

    A monomial is identified with the averaged symmetric tensor, so the
    induced form is ``(β!/k!)·[y^β] Π_i (Σ_j form[i][j] y_j)^{α_i}``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    d = r.dim
    basis = list(combinations_with_replacement(range(d), k))
    exps = [tuple(c.count(i) for i in range(d)) for c in basis]
    index = {a: n for n, a in enumerate(exps)}
    weights = tuple(sum(r.weights[i] * a[i] for i in range(d)) for a in exps)
    n = len(exps)

    # σ(x_i) = Σ_j sigma[j][i] x_j, so row i of the transpose drives x_i
    sig_t = [[r.sigma[j][i] for j in range(d)] for i in range(d)]
    sigma = [[Fraction(0)] * n for _ in range(n)]
    for col, a in enumerate(exps):
        for b, c in _linear_power_product(sig_t, a, d).items():
            sigma[index[b]][col] = c

    form = None
    if r.form is not None:
        form_rows = [[r.form[i][j] for j in range(d)] for i in range(d)]
        fk = math.factorial(k)
        form = [[Fraction(0)] * n for _ in range(n)]
        for row, a in enumerate(exps):
            for b, c in _linear_power_product(form_rows, a, d).items():
                bf = math.prod(math.factorial(x) for x in b)
                form[row][index[b]] = c * bf / fk
    return NRep(weights, sigma, form)


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """Summands in canonical order with the ambient vectors spanning each.

    For a rank-2 summand the basis is ``(v, w)`` with ``v`` of weight ``+m``,
    ``form(v, w) = 1``, ``σv = b·w`` and ``σw = a·v``; ``scales`` records
    ``a``, whose sign is the label's sign.  Rank-1 summands store one vector
    and ``scale`` is the σ-eigenvalue.
    """

    summands: tuple[IrrepLabel, ...]
    bases: tuple[tuple[tuple[Fraction, ...], ...], ...]
    scales: tuple[Fraction, ...]

    @property
    def rank(self) -> int:
        return sum(s.rank for s in self.summands)

    def multiplicities(self) -> dict[IrrepLabel, int]:
        out: dict[IrrepLabel, int] = {}
        for s in self.summands:
            out[s] = out.get(s, 0) + 1
        return out

    def __str__(self):
        parts = []
        for label, k in self.multiplicities().items():
            parts.append(str(label) if k == 1 else f"{label}^{k}")
        return " + ".join(parts)


class DecompositionError(ValueError):
    pass


def _bilinear(q, x, y) -> Fraction:
    return sum((x[i] * q[i][j] * y[j] for i in range(len(x)) if x[i] for j in range(len(y)) if y[j]),
               Fraction(0))


def _orthogonal_basis(q: list[list[Fraction]]) -> list[list[Fraction]]:
    """A q-orthogonal basis of anisotropic vectors for a symmetric form q.

    Pivots prefer diagonal values ±1, then any non-zero diagonal value; an
    isotropic pair ``x, y`` is replaced by ``x ± y/(2q(x,y))``, which has
    values ±1.
    """
    n = len(q)
    vecs = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    out = []
    while vecs:
        vals = [_bilinear(q, v, v) for v in vecs]
        pick = next((i for i, v in enumerate(vals) if abs(v) == 1), None)
        if pick is None:
            pick = next((i for i, v in enumerate(vals) if v), None)
        if pick is None:
            pair = next(((i, j) for i in range(len(vecs)) for j in range(i + 1, len(vecs))
                         if _bilinear(q, vecs[i], vecs[j])), None)
            if pair is None:
                raise DecompositionError("degenerate orientation form on a weight space")
            i, j = pair
            t = 1 / (2 * _bilinear(q, vecs[i], vecs[j]))
            vecs[i] = [a + t * b for a, b in zip(vecs[i], vecs[j])]
            pick = i
        x = vecs.pop(pick)
        qxx = _bilinear(q, x, x)
        out.append(x)
        vecs = [[a - (_bilinear(q, y, x) / qxx) * b for a, b in zip(y, x)] for y in vecs]
        vecs = [y for y in vecs if any(y)]
    return out


def _apply(mat: Matrix, v) -> tuple[Fraction, ...]:
    return tuple(sum((mat[i][j] * v[j] for j in range(len(v)) if v[j]), Fraction(0))
                 for i in range(len(mat)))


def decompose(r: NRep) -> Decomposition:
    """Split ``r`` into two-dimensional irreps and σ-eigenlines.

    On the weight-``m`` space (``m > 0``) the form ``q(x, y) = form(x, σy)``
    is symmetric; each vector ``v`` of a q-orthogonal basis spans a summand
    together with ``w = σv / q(v, v)``.  Then ``form(v, w) = 1`` and
    ``σw = a·v`` with ``a = (-1)^m / q(v, v)``; the summand is ``O+(m)`` when
    ``a > 0`` and ``O-(m)`` when ``a < 0``.  The weight-0 space splits into
    σ-eigenlines: ``+1`` gives ``triv`` and ``-1`` gives ``sign``.
    """
    r.check()
    n = r.dim
    by_weight: dict[int, list[int]] = {}
    for i, w in enumerate(r.weights):
        by_weight.setdefault(w, []).append(i)

    found: list[tuple[IrrepLabel, tuple, Fraction]] = []

    positive = sorted(w for w in by_weight if w > 0)
    if positive and r.form is None:
        raise DecompositionError("an orientation form is needed to label rank-2 summands")
    fs = _matmul(r.form, r.sigma) if positive else None
    for m in positive:
        idx = by_weight[m]
        if len(by_weight.get(-m, ())) != len(idx):
            raise DecompositionError(f"weights {m} and {-m} have different multiplicities")
        q = [[fs[i][j] for j in idx] for i in idx]
        if any(q[a][b] != q[b][a] for a in range(len(idx)) for b in range(len(idx))):
            raise DecompositionError(f"form(x, σy) is not symmetric on weight {m}")
        for x in _orthogonal_basis(q):
            v = [Fraction(0)] * n
            for coord, i in zip(x, idx):
                v[i] = coord
            v = tuple(v)
            b = _bilinear(q, x, x)
            w = tuple(c / b for c in _apply(r.sigma, v))
            a = Fraction((-1) ** (m % 2)) / b
            found.append((IrrepLabel.two_dim(m, 1 if a > 0 else -1), (v, w), a))

    zero = by_weight.get(0, [])
    if zero:
        s0 = sympy.Matrix([[r.sigma[i][j] for j in zero] for i in zero])
        ident = sympy.eye(len(zero))
        for eigen, label in ((1, TRIVIAL), (-1, SIGN)):
            for col in (s0 - eigen * ident).nullspace():
                v = [Fraction(0)] * n
                for entry, i in zip(col, zero):
                    v[i] = Fraction(int(entry.p), int(entry.q))
                found.append((label, (tuple(v),), Fraction(eigen)))

    if sum(lab.rank for lab, _, _ in found) != n:
        raise DecompositionError("eigenstructure does not account for the whole space")
    found.sort(key=lambda item: item[0].sort_key())
    return Decomposition(
        tuple(f[0] for f in found), tuple(f[1] for f in found), tuple(f[2] for f in found)
    )


def label_of_summand(r: NRep, basis, m: int) -> IrrepLabel:
    """Re-derive the label of a rank-2 summand from its stored ``(v, w)`` basis."""
    v, w = basis
    sv, sw = _apply(r.sigma, v), _apply(r.sigma, w)
    pivot = next(i for i, x in enumerate(v) if x)
    a = sw[pivot] / v[pivot]
    if any(sw[i] != a * v[i] for i in range(len(v))):
        raise DecompositionError("σw is not a multiple of v")
    wp = next(i for i, x in enumerate(w) if x)
    b = sv[wp] / w[wp]
    if any(sv[i] != b * w[i] for i in range(len(w))):
        raise DecompositionError("σv is not a multiple of w")
    if r.form is not None and _bilinear(r.form, v, w) != 1:
        raise DecompositionError("basis is not normalised against the form")
    return IrrepLabel.two_dim(m, 1 if a > 0 else -1)


# ---------------------------------------------------------------------------
# expression grammar
# ---------------------------------------------------------------------------


class ExpressionError(ValueError):
    pass


_TOKEN = re.compile(r"O\+|O-|sym\^|triv|sign|\d+|[()*+]")


def parse_expression(text: str) -> NRep:
    """Parse ``O+(m)``, ``O-(m)``, ``triv``, ``sign``, ``a*b``, ``a+b``, ``sym^k(a)``."""
    src = "".join(text.split())
    tokens: list[tuple[str, int]] = []
    pos = 0
    while pos < len(src):
        mt = _TOKEN.match(src, pos)
        if not mt:
            raise ExpressionError(f"unexpected character {src[pos]!r} at position {pos}")
        tokens.append((mt.group(), pos))
        pos = mt.end()
    tokens.append(("", len(src)))
    state = {"i": 0}

    def peek() -> str:
        return tokens[state["i"]][0]

    def take(expected: str | None = None) -> str:
        tok, at = tokens[state["i"]]
        if expected is not None and tok != expected:
            shown = tok or "end of input"
            raise ExpressionError(f"expected {expected!r} at position {at}, found {shown!r}")
        state["i"] += 1
        return tok

    def number() -> int:
        tok, at = tokens[state["i"]]
        if not tok.isdigit():
            raise ExpressionError(f"expected an integer at position {at}")
        state["i"] += 1
        return int(tok)

    def summand() -> NRep:
        rep = factor()
        while peek() == "*":
            take()
            rep = tensor(rep, factor())
        return rep

    def expr() -> NRep:
        rep = summand()
        while peek() == "+":
            take()
            rep = direct_sum(rep, summand())
        return rep

    def factor() -> NRep:
        tok, at = tokens[state["i"]]
        if tok in ("O+", "O-"):
            take()
            take("(")
            m = number()
            take(")")
            if m < 1:
                raise ExpressionError(f"O±(m) needs m >= 1 (position {at})")
            return make_irrep(IrrepLabel.two_dim(m, 1 if tok == "O+" else -1))
        if tok == "triv":
            take()
            return make_irrep(TRIVIAL)
        if tok == "sign":
            take()
            return make_irrep(SIGN)
        if tok == "sym^":
            take()
            k = number()
            take("(")
            inner = expr()
            take(")")
            return sym_power(inner, k)
        if tok == "(":
            take()
            inner = expr()
            take(")")
            return inner
        raise ExpressionError(f"unexpected {tok or 'end of input'!r} at position {at}")

    rep = expr()
    if peek() != "":
        raise ExpressionError(f"trailing input at position {tokens[state['i']][1]}")
    return rep

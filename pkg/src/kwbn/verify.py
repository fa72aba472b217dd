"""Batch verification suites behind ``kwbn verify``."""

from __future__ import annotations

from dataclasses import dataclass

from .euler import (
    REFERENCE_ALPHA_ROWS,
    REFERENCE_BETA_ROWS,
    TotalBorel,
    alpha_row,
    b1_closed,
    b1_recursive,
    beta_row,
    cartan_total,
    consistency_check,
    double_factorial,
    sym_euler,
)
from .ring import GAMMA, BNElement

SUITES = ("recurrence", "tables", "ternary", "cartan", "sym", "gamma0")


@dataclass
class CheckResult:
    suite: str
    name: str
    status: str  # "pass", "fail" or "warn"
    message: str = ""

    def line(self) -> str:
        tag = {"pass": "PASS", "fail": "FAIL", "warn": "WARN"}[self.status]
        tail = f": {self.message}" if self.message else ""
        return f"[{tag}] {self.suite}/{self.name}{tail}"

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "status": self.status, "message": self.message}


def _ok(flag: bool) -> str:
    return "pass" if flag else "fail"


def check_recurrence(max_m: int, cap: int) -> list[CheckResult]:
    bad = []
    for m in range(1, max_m + 1):
        c = max(cap, 2 * m + 2)
        if b1_recursive(m, c) != b1_closed(m, c):
            bad.append(m)
    msg = f"m = 1..{max_m}" + (f", mismatches at {bad}" if bad else "")
    return [CheckResult("recurrence", "recursive_equals_closed", _ok(not bad), msg)]


def check_tables(max_m: int, cap: int) -> list[CheckResult]:
    out = []
    for n, row in REFERENCE_ALPHA_ROWS.items():
        got = alpha_row(n)
        out.append(CheckResult("tables", f"alpha_row_{n}", _ok(got == row), f"{list(got)}"))
    for n, row in REFERENCE_BETA_ROWS.items():
        got = beta_row(n)
        out.append(CheckResult("tables", f"beta_row_{n}", _ok(got == row), f"{list(got)}"))
    return out


def check_ternary(max_m: int, cap: int) -> list[CheckResult]:
    out = []
    for m in range(1, max_m + 1):
        ident = f"{'odd' if m % 2 else 'even'}_step({m})"
        r = consistency_check(ident, cap=max(cap, 2 * m + 6))
        status = "fail" if not r.holds else ("warn" if r.warnings else "pass")
        out.append(CheckResult("ternary", ident, status, "; ".join(r.warnings)))
    r = consistency_check("squared_two", cap=cap)
    good = r.holds and r.details["etilde_squared_matches"]
    status = "fail" if not good else ("warn" if r.warnings else "pass")
    out.append(CheckResult("ternary", "squared_two", status, "; ".join(r.warnings)))
    return out


def check_cartan(max_m: int, cap: int) -> list[CheckResult]:
    """Degree-1 Cartan sums of O(m+2) + O(m)^2 + O(m-2) against γ·b1(m)·e²."""
    out = []
    bad = []
    for m in range(2, max_m + 1):
        c = max(cap, 2 * m + 6)
        gamma_e2 = BNElement({2: GAMMA}, 0, c)
        parts = [TotalBorel.rank_two(b1_recursive(k, c)) for k in (m + 2, m, m, m - 2)]
        total = cartan_total(parts)
        if total[1] != gamma_e2 * b1_recursive(m, c):
            bad.append(m)
        if cartan_total(parts[::-1]) != total:
            bad.append(-m)
    msg = f"m = 2..{max_m}" + (f", failures at {bad}" if bad else "")
    out.append(CheckResult("cartan", "rank8_degree1", _ok(not bad), msg))
    return out


def check_sym(max_m: int, cap: int) -> list[CheckResult]:
    out = []
    zero_bad = [k for k in range(0, 21, 2) if not sym_euler(k, cap).is_zero()]
    out.append(CheckResult("sym", "even_vanish", _ok(not zero_bad), "k = 0..20 even"))
    for k in range(1, 16, 2):
        x = sym_euler(k, cap)
        low = x.min_e_exponent()
        coeff = x.coefficient(low) if low is not None else None
        good = (
            low == (k + 1) // 2
            and coeff is not None
            and set(coeff.terms) == {0}
            and abs(coeff.terms[0]) == double_factorial(k)
        )
        shown = f"lowest term {coeff}e^{low}" if low is not None else "zero"
        out.append(CheckResult("sym", f"k={k}", _ok(good), shown))
    return out


def check_gamma0(max_m: int, cap: int) -> list[CheckResult]:
    bad = []
    for m in range(1, max_m + 1):
        c = max(cap, m)
        got = b1_closed(m, c).specialize_gamma_zero()
        if m % 2:
            want = BNElement({1: (-1) ** ((m - 1) // 2) * m}, 0, c)
        else:
            want = BNElement({0: (-1) ** ((m + 2) // 2) * (m // 2)}, 1, c)
        if got != want:
            bad.append(m)
    msg = f"m = 1..{max_m}" + (f", mismatches at {bad}" if bad else "")
    return [CheckResult("gamma0", "witt_sheaf_values", _ok(not bad), msg)]


_RUNNERS = {
    "recurrence": check_recurrence,
    "tables": check_tables,
    "ternary": check_ternary,
    "cartan": check_cartan,
    "sym": check_sym,
    "gamma0": check_gamma0,
}


def run_suite(suite: str, max_m: int = 25, cap: int = 64) -> list[CheckResult]:
    if suite == "all":
        out = []
        for name in SUITES:
            out += _RUNNERS[name](max_m, cap)
        return out
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}")
    return _RUNNERS[suite](max_m, cap)

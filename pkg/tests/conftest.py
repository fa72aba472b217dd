from hypothesis import strategies as st

from kwbn.ring import BNElement, GammaScalar, MultiPoly, Var

SMALL_CAP = 12

small_int = st.integers(-6, 6)


@st.composite
def gamma_scalars(draw, max_terms=3):
    exps = draw(st.lists(st.integers(-3, 3), max_size=max_terms))
    return GammaScalar({k: draw(small_int) for k in exps})


@st.composite
def bn_elements(draw, twist=None, cap=SMALL_CAP, max_terms=3):
    tw = draw(st.integers(0, 1)) if twist is None else twist
    exps = draw(st.lists(st.integers(0, cap), max_size=max_terms))
    return BNElement({k: draw(gamma_scalars(2)) for k in exps}, tw, cap)


XY = (Var("x", 2), Var("y", 4))


@st.composite
def multipolys(draw, variables=XY, max_terms=3):
    monos = draw(
        st.lists(st.tuples(*[st.integers(0, 3) for _ in variables]), max_size=max_terms)
    )
    return MultiPoly(variables, {m: draw(gamma_scalars(2)) for m in monos})


# -- acceptance summary ------------------------------------------------------

_CRITERIA: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n, title = mark.args
    outcome = "PASS" if call.excinfo is None else "FAIL"
    _CRITERIA.setdefault(n, []).append((title, outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        parts = _CRITERIA[n]
        overall = "PASS" if all(o == "PASS" for _, o in parts) else "FAIL"
        if len(parts) == 1:
            terminalreporter.write_line(f"[{overall}] criterion {n:2d}: {parts[0][0]}")
            continue
        terminalreporter.write_line(f"[{overall}] criterion {n:2d}")
        for title, outcome in parts:
            terminalreporter.write_line(f"         {outcome}  {title}")

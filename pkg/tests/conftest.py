import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import settings, strategies as st

from superglinf.core import P_PLUS, P_ST, ParityFunction, SuperMatrix

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

bits = st.integers(0, 1)
words = st.lists(bits, min_size=1, max_size=4).map(tuple)

parity_functions = st.builds(
    ParityFunction,
    st.integers(-5, 5),
    st.lists(bits, max_size=6).map(tuple),
    words,
    words,
)
named_or_random = st.one_of(st.just(P_ST), st.just(P_PLUS), parity_functions)
scalars = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))
cells = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


@st.composite
def homogeneous(draw, p, degree=None, max_size=4):
    if degree is None:
        degree = draw(bits)
    entries = draw(st.dictionaries(cells, scalars, max_size=max_size))
    return SuperMatrix(p, {(i, j): v for (i, j), v in entries.items() if (p(i) + p(j)) % 2 == degree})


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

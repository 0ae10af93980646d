import os

from hypothesis import HealthCheck, settings, strategies as st

from rankcanon import BlockMatrix, ExactMatrix, GaussianRational

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


def small_ints(bound=2):
    return st.integers(-bound, bound)


@st.composite
def scalars(draw, complex_=True, bound=3, denominators=(1, 1, 2, 3)):
    re = draw(st.integers(-bound, bound))
    im = draw(st.integers(-bound, bound)) if complex_ else 0
    d = draw(st.sampled_from(denominators))
    return GaussianRational(re, im) / d


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=4, complex_=True, sparse=True):
    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = cols if cols is not None else draw(st.integers(1, max_dim))
    if sparse and draw(st.booleans()):
        elem = st.one_of(st.just(GaussianRational(0)), scalars(complex_))
    else:
        elem = scalars(complex_)
    return ExactMatrix(r, c, draw(st.lists(elem, min_size=r * c, max_size=r * c)))


@st.composite
def block_matrices(draw, max_outer=3, max_inner=3, complex_=True, nonzero=False):
    """Random grids, biased toward repeated and zero blocks so that mixing paths are hit."""
    m1, n1 = draw(st.integers(1, max_outer)), draw(st.integers(1, max_outer))
    m2, n2 = draw(st.integers(1, max_inner)), draw(st.integers(1, max_inner))
    pool = draw(st.lists(matrices(m2, n2, complex_=complex_), min_size=1, max_size=4))
    pool.append(ExactMatrix.zeros(m2, n2))
    picks = draw(st.lists(st.tuples(st.integers(0, len(pool) - 1), scalars(False, 2, (1,))),
                          min_size=m1 * n1, max_size=m1 * n1))
    grid = [[pool[i].scale(c) for i, c in picks[r * n1:(r + 1) * n1]] for r in range(m1)]
    B = BlockMatrix(grid, m2=m2, n2=n2, n1=n1)
    if nonzero and B.is_zero():
        g = [list(row) for row in grid]
        g[0][0] = ExactMatrix.unit(m2, n2, 0, 0)
        B = BlockMatrix(g, m2=m2, n2=n2, n1=n1)
    return B


@st.composite
def invertible(draw, n):
    """Unit lower times unit upper triangular, times a permutation: always invertible."""
    L = [[GaussianRational(1) if i == j else (draw(scalars(bound=2)) if j < i else GaussianRational(0))
          for j in range(n)] for i in range(n)]
    U = [[draw(st.sampled_from([1, 2, -1])) if i == j else (draw(scalars(bound=2)) if j > i else 0)
          for j in range(n)] for i in range(n)]
    perm = draw(st.permutations(range(n)))
    return ExactMatrix.from_rows(L) @ ExactMatrix.from_rows(U) @ ExactMatrix.permutation(perm)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA
    except ImportError:
        return
    outcome: dict[str, str] = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::" not in nodeid or rep.when not in ("call", "setup"):
                continue
            name = nodeid.split("::")[-1].split("[")[0]
            if status != "passed" or name not in outcome:
                outcome[name] = "FAIL" if status != "passed" else outcome.get(name, "PASS")
    if not outcome:
        return
    terminalreporter.section("acceptance criteria")
    for name, label in CRITERIA.items():
        terminalreporter.write_line(f"{outcome.get(name, 'NOT RUN'):7s} criterion {label}")

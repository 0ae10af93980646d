"""Rank-product checks of zero-entropy inequalities, saturation and marginal compatibility.

Every inequality ``sum_i S0(X_i) >= S0(Y)`` is evaluated in the equivalent
integer form ``prod_i r(X_i) >= r(Y)``; logarithms appear only in
rendered text.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import log2, prod
from typing import Callable, Iterable, Sequence

from .quantum_states import (
    DensityMatrix,
    StateError,
    _split_map,
    is_ppt,
    partial_trace,
    validate,
)
from .reports import Report

Subset = tuple[int, ...]


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: int
    rhs: int
    lhs_terms: tuple[str, ...]
    rhs_terms: tuple[str, ...]
    witness_ranks: dict = field(default_factory=dict, compare=False)

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs

    @property
    def saturated(self) -> bool:
        return self.lhs == self.rhs

    @property
    def slack(self) -> int:
        return self.lhs - self.rhs

    def formula(self) -> str:
        def side(terms):
            return "*".join(f"r({t})" for t in terms)
        return f"{side(self.lhs_terms)} >= {side(self.rhs_terms)}"

    def __str__(self):
        state = "saturated" if self.saturated else ("holds" if self.holds else "VIOLATED")
        return (f"{self.name}: {self.formula()}  {self.lhs} >= {self.rhs}  "
                f"[S0: {log2(self.lhs):.3f} >= {log2(self.rhs):.3f}] {state}")


class RankCache:
    """Memoized reduced ranks of one state, keyed by sorted subsystem tuples."""

    def __init__(self, rho: DensityMatrix):
        self.rho = rho
        self._ranks: dict[Subset, int] = {}

    def __call__(self, subset: Iterable[int]) -> int:
        key = tuple(sorted(set(subset)))
        if key not in self._ranks:
            self._ranks[key] = partial_trace(self.rho, key).rank()
        return self._ranks[key]

    def label(self, subset: Iterable[int]) -> str:
        return "".join(self.rho.labels[i] for i in sorted(set(subset)))


def _report(name: str, ranks: RankCache, lhs: Sequence[Iterable[int]],
            rhs: Sequence[Iterable[int]]) -> InequalityReport:
    lhs = [tuple(sorted(s)) for s in lhs]
    rhs = [tuple(sorted(s)) for s in rhs]
    witness = {ranks.label(s): ranks(s) for s in lhs + rhs}
    return InequalityReport(name, prod(ranks(s) for s in lhs), prod(ranks(s) for s in rhs),
                            tuple(ranks.label(s) for s in lhs), tuple(ranks.label(s) for s in rhs),
                            witness)


def _require_valid(rho: DensityMatrix, parties: int | None = None, at_least: int | None = None):
    if parties is not None and rho.parties != parties:
        raise StateError(f"a {parties}-party state is required, got {rho.parties}")
    if at_least is not None and rho.parties < at_least:
        raise StateError(f"at least {at_least} parties are required, got {rho.parties}")
    rep = validate(rho)
    if not rep.passed:
        raise StateError(f"invalid state: {rep.summary()}")


def check_rank_inequality(rho: DensityMatrix, ranks: RankCache | None = None,
                          validated: bool = False) -> list[InequalityReport]:
    """``r(XY) r(XZ) >= r(YZ)`` with each pair marginal on the right once."""
    if not validated:
        _require_valid(rho, parties=3)
    elif rho.parties != 3:
        raise StateError(f"a 3-party state is required, got {rho.parties}")
    ranks = ranks or RankCache(rho)
    out = []
    for x in range(3):
        y, z = (i for i in range(3) if i != x)
        out.append(_report("rank_triangle", ranks, [(x, y), (x, z)], [(y, z)]))
    return out


def check_tripartite_suite(rho: DensityMatrix, validated: bool = False) -> list[InequalityReport]:
    if not validated:
        _require_valid(rho, parties=3)
    ranks = RankCache(rho)
    out = []
    for x, y in combinations(range(3), 2):
        out.append(_report("subadditivity", ranks, [(x,), (y,)], [(x, y)]))
    for x in range(3):
        out.append(_report("pair_cycle", ranks, [(0, 1), (0, 2), (1, 2)], [(x,), (x,)]))
    out.extend(check_rank_inequality(rho, ranks, validated=True))
    for x in range(3):
        y, z = (i for i in range(3) if i != x)
        out.append(_report("pair_covers_single", ranks, [(x, y), (x, z)], [(x,)]))
    return out


def _multipartite_patterns(n: int) -> list[tuple[str, Callable[[Sequence[int]], tuple[list, list]]]]:
    """Inequality templates on an ordering ``a`` of ``n`` parties."""
    pats = [
        ("subadditivity_n", lambda a: ([(x,) for x in a], [tuple(a)])),
        ("cycle_n", lambda a: ([(a[j], a[(j + 1) % n]) for j in range(n)], [(a[0],), (a[0],)])),
        ("chain_n", lambda a: ([(a[j], a[j + 1]) for j in range(n - 1)], [(a[0], a[-1])])),
        ("coalition_cover", lambda a: ([tuple(x for x in a if x != k) for k in a], [(a[0],)])),
    ]
    return pats


def _triple_cover(a):
    return [(a[0], a[1], a[2]), (a[0], a[1], a[3]), (a[0], a[2], a[3])], [(a[1], a[2], a[3])]


def _quadruple_cover(a):
    return ([(a[0], a[1], a[2], a[3]), (a[0], a[1], a[2], a[4]), (a[0], a[1], a[3], a[4]),
             (a[0], a[2], a[3], a[4])], [(a[1], a[2], a[3], a[4])])


def check_multipartite_suite(rho: DensityMatrix, validated: bool = False) -> list[InequalityReport]:
    """Every multipartite rank inequality that applies to an ``n``-party state, over all orderings.

    The three- and four-set cover inequalities need four and five parties
    respectively; for larger states they are applied to every marginal of
    that size.  Identical instances reached by different orderings are
    reported once.
    """
    if not validated:
        _require_valid(rho, at_least=3)
    n = rho.parties
    ranks = RankCache(rho)
    out: list[InequalityReport] = []
    seen: set = set()

    def emit(name, lhs, rhs):
        key = (name, tuple(sorted(tuple(sorted(s)) for s in lhs)), tuple(sorted(tuple(sorted(s)) for s in rhs)))
        if key not in seen:
            seen.add(key)
            out.append(_report(name, ranks, lhs, rhs))

    for a in permutations(range(n)):
        for name, pat in _multipartite_patterns(n):
            emit(name, *pat(a))
    for size, name, pat in ((4, "triple_cover", _triple_cover), (5, "quadruple_cover", _quadruple_cover)):
        if n < size:
            continue
        for sub in combinations(range(n), size):
            for a in permutations(sub):
                emit(name, *pat(a))
    return out


# ---------------------------------------------------------------------------
# saturation

SATURATION_CASES = ("pure", "product_A_BC", "product_B_AC", "product_C_AB", "ppt")
_PRODUCT_FACTOR = {"product_A_BC": (0,), "product_B_AC": (1,), "product_C_AB": (2,)}


def is_product(rho: DensityMatrix, group: Sequence[int]) -> bool:
    """``tr(rho) rho == rho_S (x) rho_T`` entrywise, with ``S = group`` and ``T`` its complement."""
    group = tuple(sorted(group))
    rest = tuple(i for i in range(rho.parties) if i not in group)
    if not group or not rest:
        return True
    rs, rt = partial_trace(rho, group), partial_trace(rho, rest)
    si, _ = _split_map(rho.dims, group)
    ti, _ = _split_map(rho.dims, rest)
    tr = rho.trace()
    n, ds, dt = rho.size, rs.size, rt.size
    e, es, et = rho.matrix.entries, rs.matrix.entries, rt.matrix.entries
    for a in range(n):
        for b in range(n):
            if tr * e[a * n + b] != es[si[a] * ds + si[b]] * et[ti[a] * dt + ti[b]]:
                return False
    return True


def in_class(rho: DensityMatrix, case: str) -> bool:
    if case == "pure":
        return rho.rank() == 1
    if case in _PRODUCT_FACTOR:
        return is_product(rho, _PRODUCT_FACTOR[case])
    if case == "ppt":
        return is_ppt(rho)
    raise ValueError(f"unknown saturation case {case!r}; expected one of {SATURATION_CASES}")


@dataclass(frozen=True)
class SaturationReport:
    case: str
    equality: bool
    condition: bool | None
    ranks: dict

    @property
    def agree(self) -> bool | None:
        return None if self.condition is None else self.condition == self.equality

    def __str__(self):
        rk = " ".join(f"r_{k}={v}" for k, v in self.ranks.items())
        if self.condition is None:
            return f"case unknown: equality={self.equality}; no structural condition available ({rk})"
        return (f"case {self.case}: condition={self.condition} equality={self.equality} "
                f"agree={self.agree} ({rk})")


def _condition(case: str, r: dict) -> bool:
    if case == "pure":
        return r["B"] * r["C"] == r["A"]
    if case == "product_A_BC":
        return r["A"] == 1 and r["BC"] == r["B"] * r["C"]
    if case == "product_B_AC":
        return r["A"] * r["AC"] == r["C"]
    if case == "product_C_AB":
        return r["A"] * r["AB"] == r["B"]
    return r["AB"] == r["B"] and r["AC"] == r["C"] and r["B"] * r["C"] == r["BC"]


def check_saturation(rho: DensityMatrix, claimed_case: str | None = None) -> SaturationReport:
    """Compare ``r(AB) r(AC) = r(BC)`` against the structural condition of a state class.

    With no claimed case the first matching class is used; a state in none
    of them gets case ``"unknown"`` and no condition.
    """
    _require_valid(rho, parties=3)
    if claimed_case is None:
        claimed_case = next((c for c in SATURATION_CASES if in_class(rho, c)), "unknown")
    elif not in_class(rho, claimed_case):
        raise StateError(f"state fails the class test for {claimed_case!r}")
    cache = RankCache(rho)
    names = {"A": (0,), "B": (1,), "C": (2,), "AB": (0, 1), "AC": (0, 2), "BC": (1, 2)}
    r = {k: cache(v) for k, v in names.items()}
    equality = r["AB"] * r["AC"] == r["BC"]
    cond = None if claimed_case == "unknown" else _condition(claimed_case, r)
    return SaturationReport(claimed_case, equality, cond, r)


# ---------------------------------------------------------------------------
# marginal problem

NO_JOINT_STATE = "no joint state can exist"
NECESSARY_PASS = "necessary conditions pass"


@dataclass(frozen=True)
class MarginalReport:
    report: Report
    ranks: dict
    marginals_consistent: bool

    @property
    def verdict(self) -> str:
        return NECESSARY_PASS if self.report.passed else NO_JOINT_STATE

    @property
    def consistent(self) -> bool:
        return self.report.passed

    def __str__(self):
        return f"{self.report}\nverdict: {self.verdict}"


def _same_up_to_trace(x: DensityMatrix, y: DensityMatrix) -> bool:
    tx, ty = x.trace(), y.trace()
    return x.matrix.scale(ty) == y.matrix.scale(tx)


def marginal_necessary_check(ab: DensityMatrix, ac: DensityMatrix, bc: DensityMatrix) -> MarginalReport:
    """Necessary conditions for three pair operators to be marginals of one tripartite state."""
    for name, s in (("AB", ab), ("AC", ac), ("BC", bc)):
        if s.parties != 2:
            raise StateError(f"sigma_{name} must be a two-party operator")
        rep = validate(s)
        if not rep.passed:
            raise StateError(f"sigma_{name} is not a valid state: {rep.summary()}")
    dA, dB, dC = ab.dims[0], ab.dims[1], ac.dims[1]
    if ac.dims[0] != dA or bc.dims != (dB, dC):
        raise StateError(f"inconsistent dimensions: AB {list(ab.dims)}, AC {list(ac.dims)}, BC {list(bc.dims)}")

    rep = Report("marginal compatibility")
    pairs = {
        "A": (partial_trace(ab, [0]), partial_trace(ac, [0])),
        "B": (partial_trace(ab, [1]), partial_trace(bc, [0])),
        "C": (partial_trace(ac, [1]), partial_trace(bc, [1])),
    }
    consistent = True
    for party, (x, y) in pairs.items():
        consistent &= rep.add(f"marginal_{party}", _same_up_to_trace(x, y), "equal after trace normalization")
    r = {"AB": ab.rank(), "AC": ac.rank(), "BC": bc.rank()}
    for rhs, (p, q) in (("BC", ("AB", "AC")), ("AC", ("AB", "BC")), ("AB", ("AC", "BC"))):
        rep.add(f"rank_{p}_{q}_covers_{rhs}", r[p] * r[q] >= r[rhs], f"{r[p]}*{r[q]} >= {r[rhs]}")
    return MarginalReport(rep, r, consistent)

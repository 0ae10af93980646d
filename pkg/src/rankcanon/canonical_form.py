"""Staircase canonical form of a block matrix under local equivalence.

The canonical form ``N`` has, in block-column ``s`` (0-based), a run of
``k_s`` designated *head* blocks in rows ``0..k_s-1`` with
``k_0 >= k_1 >= ... >= k_{p-1} >= 1`` and ``sum k_s = Sr(M)``.  All heads
are linearly independent.  With ``t(i) = #{s : k_s > i}`` every other
block ``(i, j)`` has ``j >= t(i)`` and lies in the span of the heads of
columns ``0..min(j, t(i)+1)-1``.  In particular column 0 is zero below
its heads.

:func:`to_canonical` builds ``N`` column by column using only block-row
operations inside the active row range and block-column swaps/additions
among the not-yet-processed columns, so every move is a local transform
and the accumulated certificate replays ``M -> N`` exactly.
:func:`column_reduce` then right-multiplies by inner factors so that the
heads of column ``s`` occupy a fresh range of ``r_s`` flat columns, and
:func:`decompose` splits the result into the ``p`` column-range parts
used in the rank-inequality induction.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .block_matrix import (
    BlockMatrix,
    LocalTransform,
    apply_local,
    partial_transpose_A,
    partial_transpose_B,
    schmidt_rank,
)
from .exact_linalg import (
    ExactMatrix,
    GaussianRational,
    ONE,
    ZERO,
    SpanBasis,
    det,
    find_mixing_constant,
    rank,
    span_coefficients,
)
from .reports import Report


class CanonicalFormError(ValueError):
    """Input is outside the domain of a canonical-form operation."""


@dataclass(frozen=True)
class CanonicalProfile:
    """Shape data ``(p, k, r)`` of a canonical form.

    ``r`` is None until :func:`column_reduce` has run.
    """

    p: int
    k: tuple[int, ...]
    r: tuple[int, ...] | None = None

    @property
    def K(self) -> int:
        return sum(self.k)

    def offsets(self) -> list[int]:
        """Start of each part's flat-column range."""
        if self.r is None:
            raise CanonicalFormError("profile has no column widths")
        out, acc = [], 0
        for w in self.r:
            out.append(acc)
            acc += w
        return out

    def region(self, i: int, j: int) -> int:
        """Number of leading columns whose heads span the non-head block ``(i, j)``."""
        return min(j, sum(1 for ks in self.k if ks > i) + 1)

    def __str__(self):
        s = f"p={self.p} k={list(self.k)}"
        if self.r is not None:
            s += f" r={list(self.r)}"
        return s


@dataclass(frozen=True)
class CanonicalResult:
    source: BlockMatrix
    N: BlockMatrix
    profile: CanonicalProfile
    certificate: LocalTransform
    mixings: int = 0

    def replays(self) -> bool:
        return apply_local(self.source, self.certificate) == self.N


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[BlockMatrix, ...]
    tails: tuple[BlockMatrix, ...]


# ---------------------------------------------------------------------------
# Workspace of elementary local moves.

class _Workspace:
    """Mutable copy of the grid plus the accumulated outer factors."""

    def __init__(self, M: BlockMatrix):
        self.m1, self.n1, self.m2, self.n2 = M.grid_shape
        self.grid = [list(row) for row in M.blocks]
        self.U = [[ONE if i == j else ZERO for j in range(self.m1)] for i in range(self.m1)]
        self.W = [[ONE if i == j else ZERO for j in range(self.n1)] for i in range(self.n1)]

    def permute_rows(self, order: Sequence[int]) -> None:
        """New row ``t`` is old row ``order[t]`` for ``t < len(order)``."""
        n = len(order)
        self.grid[:n] = [self.grid[i] for i in order]
        self.U[:n] = [self.U[i] for i in order]

    def add_row(self, target: int, source: int, c: GaussianRational) -> None:
        """Block-row ``target += c * source``."""
        src = self.grid[source]
        self.grid[target] = [b + s.scale(c) for b, s in zip(self.grid[target], src)]
        self.U[target] = [u + c * v for u, v in zip(self.U[target], self.U[source])]

    def swap_cols(self, a: int, b: int) -> None:
        for row in self.grid:
            row[a], row[b] = row[b], row[a]
        for row in self.W:
            row[a], row[b] = row[b], row[a]

    def add_col(self, target: int, source: int, c: GaussianRational) -> None:
        """Block-column ``target += c * source``."""
        for row in self.grid:
            row[target] = row[target] + row[source].scale(c)
        for row in self.W:
            row[target] = row[target] + c * row[source]

    def block_matrix(self) -> BlockMatrix:
        return BlockMatrix(self.grid, m2=self.m2, n2=self.n2, n1=self.n1)

    def transform(self) -> LocalTransform:
        I = ExactMatrix.identity
        return LocalTransform(ExactMatrix.from_rows(self.U, self.m1), I(self.m2),
                              ExactMatrix.from_rows(self.W, self.n1), I(self.n2))


def _mixing_determinant(fixed: list[ExactMatrix], col_c: list[ExactMatrix],
                        col_j: list[ExactMatrix]):
    """Gram determinant of ``fixed + [col_c[l] + k col_j[l]]`` as a function of real ``k``.

    Nonzero exactly when those vectors are independent; for real ``k`` it
    is a polynomial of degree at most ``2*len(col_c)``.
    """
    def evaluate(k: GaussianRational) -> GaussianRational:
        rows = [b.entries for b in fixed]
        rows += [(a + b.scale(k)).entries for a, b in zip(col_c, col_j)]
        G = ExactMatrix(len(rows), len(rows[0]), [x for r in rows for x in r])
        return det(G @ G.dagger())
    return evaluate


def to_canonical(M: BlockMatrix) -> CanonicalResult:
    """Transform ``M`` to the staircase canonical form with a replayable certificate."""
    if M.is_empty() or M.is_zero():
        raise CanonicalFormError("the zero matrix has no canonical form")
    K = schmidt_rank(M)
    ws = _Workspace(M)
    m1, n1 = ws.m1, ws.n1
    dim = ws.m2 * ws.n2
    grid = ws.grid

    heads: list[tuple[int, int]] = []
    ks: list[int] = []
    mixings = 0
    c, R = 0, m1
    while True:
        if c >= n1:  # pragma: no cover - excluded by the Schmidt-rank count
            raise ArithmeticError("ran out of block-columns before reaching the Schmidt rank")
        # span of earlier heads is invariant under the moves of this stage
        hspan = SpanBasis(dim, [grid[i][j] for i, j in heads])

        def fresh_in(col: int) -> bool:
            return any(not hspan.contains(grid[i][col]) for i in range(R))

        if not fresh_in(c):
            j = next((j for j in range(c + 1, n1) if fresh_in(j)), None)
            if j is None:  # pragma: no cover
                raise ArithmeticError("no block-column carries a new independent block")
            ws.swap_cols(c, j)

        s_prev = 0
        while True:
            span = hspan.copy()
            chosen = [i for i in range(R) if span.add(grid[i][c])]
            s = len(chosen)
            if s <= s_prev and s_prev:  # pragma: no cover - mixing guarantee
                raise ArithmeticError("column mixing failed to raise the head count")
            rest = [i for i in range(R) if i not in set(chosen)]
            ws.permute_rows(chosen + rest)

            # rows below the heads: strip head components so they lie in span(H)
            prior = [grid[i][j] for i, j in heads]
            col_heads = [grid[l][c] for l in range(s)]
            for i in range(s, R):
                coeff = span_coefficients(grid[i][c], prior + col_heads)
                if coeff is None:  # pragma: no cover - greedy selection is maximal
                    raise ArithmeticError("dependent block outside the head span")
                for l, a in enumerate(coeff[len(prior):]):
                    if a:
                        ws.add_row(i, l, -a)

            offender = next(((i, j) for i in range(s, R) for j in range(c + 1, n1)
                             if not span.contains(grid[i][j])), None)
            if offender is None:
                break
            i, j = offender
            rows = list(range(s)) + [i]
            f = _mixing_determinant([grid[a][b] for a, b in heads],
                                    [grid[l][c] for l in rows], [grid[l][j] for l in rows])
            k = find_mixing_constant(f, 2 * (s + 1))
            ws.add_col(c, j, k)
            mixings += 1
            s_prev = s

        heads.extend((i, c) for i in range(s))
        ks.append(s)
        if len(heads) == K:
            break
        R = s
        c += 1

    profile = CanonicalProfile(p=len(ks), k=tuple(ks))
    return CanonicalResult(M, ws.block_matrix(), profile, ws.transform(), mixings)


def _head_blocks(N: BlockMatrix, profile: CanonicalProfile) -> list[ExactMatrix]:
    return [N.block(i, s) for s in range(profile.p) for i in range(profile.k[s])]


def verify_canonical_shape(N: BlockMatrix, profile: CanonicalProfile) -> Report:
    """Recheck every staircase constraint of ``N`` by direct elimination."""
    rep = Report("canonical shape")
    p, k = profile.p, profile.k
    m1, n1 = N.m1, N.n1
    ok = rep.add("profile_bounds",
                 len(k) == p and 1 <= p <= n1 and all(1 <= x <= m1 for x in k)
                 and all(a >= b for a, b in zip(k, k[1:])),
                 f"p={p}, k={list(k)}, grid {m1}x{n1}")
    if not ok:
        return rep
    dim = N.m2 * N.n2
    heads = _head_blocks(N, profile)
    basis = SpanBasis(dim)
    independent = all(basis.add(h) for h in heads)
    if not rep.add("heads_independent", independent, f"{len(heads)} designated blocks"):
        return rep
    K = schmidt_rank(N)
    if not rep.add("head_count", sum(k) == K, f"sum k = {sum(k)}, Sr = {K}"):
        return rep

    below = [i for i in range(k[0], m1) if not N.block(i, 0).is_zero()]
    if not rep.add("first_column_zero_below_heads", not below,
                   f"nonzero rows {below}" if below else ""):
        return rep

    # prefix spans: span of heads of columns 0..t-1
    spans = [SpanBasis(dim)]
    for s in range(p):
        nxt = spans[-1].copy()
        for i in range(k[s]):
            nxt.add(N.block(i, s))
        spans.append(nxt)
    for i, j, b in N.iter_blocks():
        if j < p and i < k[j]:
            continue
        t = profile.region(i, j)
        if not spans[min(t, p)].contains(b):
            rep.add("tail_span", False,
                    f"block ({i + 1},{j + 1}) outside the span of heads of columns 1..{t}")
            return rep
    rep.add("tail_span", True)
    return rep


def column_reduce(result: CanonicalResult) -> CanonicalResult:
    """Right-multiply by inner factors so each column's heads get a fresh column range."""
    N, profile = result.N, result.profile
    rep = verify_canonical_shape(N, profile)
    if not rep.passed:
        raise CanonicalFormError(f"input is not canonical: {rep.summary()}")
    m2, n2 = N.m2, N.n2
    grid = [list(row) for row in N.blocks]
    X_total = ExactMatrix.identity(n2)
    widths = []
    offset = 0
    for s in range(profile.p):
        free = n2 - offset
        heads = [grid[i][s] for i in range(profile.k[s])]
        cols = [tuple(e for h in heads for e in h.column(j)) for j in range(offset, n2)]
        basis = SpanBasis(len(cols[0]) if cols else 0)
        keep = [j for j, v in enumerate(cols) if basis.add(v)]
        rs = len(keep)
        widths.append(rs)
        if free == 0:
            continue
        # R has the kept unit columns first, then e_d - sum a_dj e_j for dependents
        kept_vecs = [cols[j] for j in keep]
        newcols = [[ONE if t == j else ZERO for t in range(free)] for j in keep]
        for d in range(free):
            if d in keep:
                continue
            a = span_coefficients(cols[d], kept_vecs)
            v = [ONE if t == d else ZERO for t in range(free)]
            for j, coef in zip(keep, a):
                v[j] = v[j] - coef
            newcols.append(v)
        Rs = ExactMatrix(free, free, [newcols[c][r] for r in range(free) for c in range(free)])
        Xs = ExactMatrix.block_diag(ExactMatrix.identity(offset), Rs)
        if Xs != ExactMatrix.identity(n2):
            grid = [[b @ Xs for b in row] for row in grid]
            X_total = X_total @ Xs
        offset += rs
    Np = BlockMatrix(grid, m2=m2, n2=n2, n1=N.n1)
    I = ExactMatrix.identity
    step = LocalTransform(I(N.m1), I(m2), I(N.n1), X_total)
    return replace(result, N=Np, profile=replace(profile, r=tuple(widths)),
                   certificate=result.certificate.then(step))


def _restrict_columns(B: ExactMatrix, lo: int, hi: int) -> ExactMatrix:
    e = list(B.entries)
    for a in range(B.rows):
        for b in range(B.cols):
            if not lo <= b < hi:
                e[a * B.cols + b] = ZERO
    return ExactMatrix._wrap(B.rows, B.cols, tuple(e))


def decompose(Np: CanonicalResult) -> Decomposition:
    """Split a column-reduced form into its column-range parts and their tails."""
    profile = Np.profile
    if profile.r is None:
        raise CanonicalFormError("decompose needs a column-reduced result")
    N = Np.N
    parts, tails = [], []
    for s, (off, w) in enumerate(zip(profile.offsets(), profile.r)):
        part = N.map_blocks(lambda b: _restrict_columns(b, off, off + w))
        parts.append(part)
        top = N.m1 if s == 0 else profile.k[s - 1]
        tails.append(part.subgrid(range(profile.k[s], top), range(s + 1, N.n1)))
    return Decomposition(tuple(parts), tuple(tails))


def _gamma_rank(B: BlockMatrix) -> int:
    return 0 if B.is_empty() else partial_transpose_B(B).rank()


def _rank(B: BlockMatrix) -> int:
    return 0 if B.is_empty() else B.rank()


def verify_induction_chain(Np: CanonicalResult, D: Decomposition) -> Report:
    """Check every rank relation of the inductive argument on a decomposed form."""
    rep = Report("induction chain")
    N, profile = Np.N, Np.profile
    p, k, r = profile.p, profile.k, profile.r
    K = profile.K
    n2 = N.n2

    total = D.parts[0]
    for part in D.parts[1:]:
        total = total + part
    rep.add("parts_sum", total == N, "sum of parts equals the column-reduced form")

    offsets = profile.offsets()
    rep.add("width_budget", sum(r) <= n2, f"sum r = {sum(r)}, n2 = {n2}")
    for i, j, b in N.iter_blocks():
        for c in range(offsets[-1] + r[-1], n2):
            if any(b[a, c] for a in range(b.rows)):
                rep.add("unused_columns_zero", False, f"block ({i + 1},{j + 1}) column {c + 1}")
                break
    if not any(c.name == "unused_columns_zero" for c in rep.checks):
        rep.add("unused_columns_zero", True)

    rN = _rank(N)
    gN = _gamma_rank(N)
    part_gamma = []
    for s in range(p):
        part, tail = D.parts[s], D.tails[s]
        lo, hi = offsets[s], offsets[s] + r[s]
        top = N.m1 if s == 0 else k[s - 1]
        layout_ok = True
        for i, j, b in part.iter_blocks():
            inside = j >= s and (i < k[s] or (j > s and i < top))
            if not inside and not b.is_zero():
                layout_ok = False
                break
            if inside and not _restrict_columns(b, lo, hi) == b:
                layout_ok = False
                break
        rep.add(f"part{s + 1}_layout", layout_ok, f"support in block-columns {s + 1}.. and flat columns {lo + 1}..{hi}")

        head_stack = [N.block(i, s) for i in range(k[s])]
        head_rank = rank(head_stack[0].vstack(*head_stack[1:]).submatrix(
            range(k[s] * N.m2), range(lo, hi))) if hi > lo else 0
        rep.add(f"part{s + 1}_head_width", head_rank == r[s], f"head column rank {head_rank}, r = {r[s]}")

        rq = _rank(part)
        gq = _gamma_rank(part)
        part_gamma.append(gq)
        rw = _rank(tail)
        gw = _gamma_rank(tail)
        srw = schmidt_rank(tail)
        rep.add(f"part{s + 1}_tail_rank_split", r[s] + rw <= rq, f"{r[s]} + {rw} <= {rq}")
        strict = p == 1 or k[s] < K
        rep.add(f"part{s + 1}_tail_schmidt_bound", srw <= k[s] and strict,
                f"Sr(tail) = {srw} <= k = {k[s]}" + ("" if p == 1 else f" < K = {K}"))
        rep.add(f"part{s + 1}_rank_bound", rN >= rq, f"{rN} >= {rq}")
        rep.add(f"part{s + 1}_transpose_split", gq <= k[s] * r[s] + gw, f"{gq} <= {k[s]}*{r[s]} + {gw}")
        rep.add(f"part{s + 1}_tail_conjecture", gw <= srw * rw, f"{gw} <= {srw}*{rw}")
        rep.add(f"part{s + 1}_conjecture", gq <= k[s] * rq, f"{gq} <= {k[s]}*{rq}")
    rep.add("transpose_subadditivity", gN <= sum(part_gamma), f"{gN} <= {sum(part_gamma)}")
    rep.add("conjecture", gN <= K * rN, f"{gN} <= {K}*{rN}")
    return rep


@dataclass(frozen=True)
class ConjectureReport:
    schmidt_rank: int
    rank: int
    rank_gamma_B: int
    rank_gamma_A: int

    @property
    def bound(self) -> int:
        return self.schmidt_rank * self.rank

    @property
    def slack_B(self) -> int:
        return self.bound - self.rank_gamma_B

    @property
    def slack_A(self) -> int:
        return self.bound - self.rank_gamma_A

    @property
    def holds_B(self) -> bool:
        return self.slack_B >= 0

    @property
    def holds_A(self) -> bool:
        return self.slack_A >= 0

    @property
    def holds(self) -> bool:
        return self.holds_A and self.holds_B

    def __str__(self):
        return (f"Sr={self.schmidt_rank} r={self.rank} "
                f"r(Gamma_B)={self.rank_gamma_B} r(Gamma_A)={self.rank_gamma_A} "
                f"bound={self.bound} slack_B={self.slack_B} slack_A={self.slack_A} "
                f"{'holds' if self.holds else 'VIOLATED'}")


def check_conjecture(M: BlockMatrix) -> ConjectureReport:
    """Exact ranks for ``r(M^Gamma) <= Sr(M) r(M)`` under both partial transposes."""
    return ConjectureReport(schmidt_rank(M), _rank(M),
                            _gamma_rank(M), _rank(partial_transpose_A(M)))


def pipeline_check(M: BlockMatrix) -> Report:
    """Run canonicalization through the induction chain and collect every check."""
    rep = Report("pipeline")
    res = to_canonical(M)
    rep.extend(verify_canonical_shape(res.N, res.profile), "canon.")
    rep.add("canon.replay", res.replays())
    a, b = check_conjecture(M), check_conjecture(res.N)
    rep.add("canon.invariants", (a.rank, a.schmidt_rank, a.rank_gamma_B, a.rank_gamma_A)
            == (b.rank, b.schmidt_rank, b.rank_gamma_B, b.rank_gamma_A))
    red = column_reduce(res)
    rep.extend(verify_canonical_shape(red.N, red.profile), "reduced.")
    rep.add("reduced.replay", red.replays())
    rep.extend(verify_induction_chain(red, decompose(red)), "chain.")
    rep.add("conjecture", a.holds, str(a))
    return rep

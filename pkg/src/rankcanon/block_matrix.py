"""Bipartite block matrices ``M = sum_ij |i><j| (x) M_ij``.

A :class:`BlockMatrix` is an ``m1 x n1`` grid of ``m2 x n2`` exact blocks.
Flattening uses row-major Kronecker order: block ``(i, j)`` entry
``(a, b)`` sits at flat position ``(i*m2 + a, j*n2 + b)`` (0-based).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .exact_linalg import (
    ExactMatrix,
    ShapeMismatchError,
    SpanBasis,
    ZERO,
    as_matrix,
    independent_subset,
    is_invertible,
    rank,
    span_coefficients,
)


class BlockMatrix:
    """Immutable grid of equally shaped exact blocks."""

    __slots__ = ("m1", "n1", "m2", "n2", "blocks")

    def __init__(self, blocks: Sequence[Sequence[ExactMatrix]], m2: int | None = None,
                 n2: int | None = None, n1: int | None = None):
        grid = tuple(tuple(as_matrix(b) for b in row) for row in blocks)
        m1 = len(grid)
        if n1 is None:
            n1 = len(grid[0]) if grid else 0
        if any(len(row) != n1 for row in grid):
            raise ShapeMismatchError("ragged block grid")
        if m2 is None or n2 is None:
            if not grid or not n1:
                raise ShapeMismatchError("inner block shape needed for an empty grid")
            m2, n2 = grid[0][0].shape
        for row in grid:
            for b in row:
                if b.shape != (m2, n2):
                    raise ShapeMismatchError(f"block of shape {b.shape}, expected {(m2, n2)}")
        self.m1, self.n1, self.m2, self.n2 = m1, n1, m2, n2
        self.blocks = grid

    # constructors ---------------------------------------------------------
    @classmethod
    def zeros(cls, m1: int, n1: int, m2: int, n2: int) -> "BlockMatrix":
        z = ExactMatrix.zeros(m2, n2)
        return cls([[z] * n1 for _ in range(m1)], m2=m2, n2=n2, n1=n1)

    @classmethod
    def from_flat(cls, F: ExactMatrix, m1: int, n1: int, m2: int, n2: int) -> "BlockMatrix":
        return unflatten(F, m1, n1, m2, n2)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[ExactMatrix, ExactMatrix]]) -> "BlockMatrix":
        """``sum R (x) B`` for pairs ``(R, B)`` of outer and inner factors."""
        terms = [(as_matrix(r), as_matrix(b)) for r, b in terms]
        if not terms:
            raise ValueError("at least one term is required")
        (r0, b0) = terms[0]
        m1, n1 = r0.shape
        m2, n2 = b0.shape
        grid = [[ExactMatrix.zeros(m2, n2) for _ in range(n1)] for _ in range(m1)]
        for r, b in terms:
            if r.shape != (m1, n1) or b.shape != (m2, n2):
                raise ShapeMismatchError("inconsistent term shapes")
            for i in range(m1):
                for j in range(n1):
                    c = r[i, j]
                    if c:
                        grid[i][j] = grid[i][j] + b.scale(c)
        return cls(grid, m2=m2, n2=n2, n1=n1)

    # access ---------------------------------------------------------------
    @property
    def grid_shape(self) -> tuple[int, int, int, int]:
        return self.m1, self.n1, self.m2, self.n2

    @property
    def flat_shape(self) -> tuple[int, int]:
        return self.m1 * self.m2, self.n1 * self.n2

    def block(self, i: int, j: int) -> ExactMatrix:
        return self.blocks[i][j]

    def iter_blocks(self):
        """Yield ``(i, j, block)`` in row-major order."""
        for i, row in enumerate(self.blocks):
            for j, b in enumerate(row):
                yield i, j, b

    def is_empty(self) -> bool:
        return self.m1 == 0 or self.n1 == 0

    def is_zero(self) -> bool:
        return all(b.is_zero() for _, _, b in self.iter_blocks())

    def subgrid(self, rows: Sequence[int], cols: Sequence[int]) -> "BlockMatrix":
        return BlockMatrix([[self.blocks[i][j] for j in cols] for i in rows],
                           m2=self.m2, n2=self.n2, n1=len(cols))

    def map_blocks(self, fn) -> "BlockMatrix":
        grid = [[fn(b) for b in row] for row in self.blocks]
        if self.is_empty():
            probe = fn(ExactMatrix.zeros(self.m2, self.n2))
            return BlockMatrix(grid, m2=probe.rows, n2=probe.cols, n1=self.n1)
        return BlockMatrix(grid, n1=self.n1)

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        if self.grid_shape != other.grid_shape:
            raise ShapeMismatchError("block grids differ")
        return BlockMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.blocks, other.blocks)],
                           m2=self.m2, n2=self.n2, n1=self.n1)

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return self.grid_shape == other.grid_shape and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.grid_shape, self.blocks))

    def __repr__(self):
        return f"BlockMatrix({self.m1}x{self.n1} grid of {self.m2}x{self.n2} blocks)"

    # derived quantities ---------------------------------------------------
    def flatten(self) -> ExactMatrix:
        return flatten(self)

    def rank(self) -> int:
        return rank(flatten(self))

    def schmidt_rank(self) -> int:
        return schmidt_rank(self)

    def transpose(self) -> "BlockMatrix":
        """Full transpose ``M^T``, again as a block matrix."""
        return BlockMatrix([[self.blocks[i][j].T for i in range(self.m1)] for j in range(self.n1)],
                           m2=self.n2, n2=self.m2, n1=self.m1)


def flatten(B: BlockMatrix) -> ExactMatrix:
    """The ``(m1*m2) x (n1*n2)`` matrix in row-major Kronecker layout."""
    m1, n1, m2, n2 = B.grid_shape
    out = []
    for i in range(m1):
        row_blocks = B.blocks[i]
        for a in range(m2):
            for j in range(n1):
                e = row_blocks[j].entries
                out.extend(e[a * n2:(a + 1) * n2])
    return ExactMatrix._wrap(m1 * m2, n1 * n2, tuple(out))


def unflatten(F: ExactMatrix, m1: int, n1: int, m2: int, n2: int) -> BlockMatrix:
    if F.shape != (m1 * m2, n1 * n2):
        raise ShapeMismatchError(f"flat shape {F.shape} does not factor as ({m1}*{m2}, {n1}*{n2})")
    grid = [[F.submatrix(range(i * m2, (i + 1) * m2), range(j * n2, (j + 1) * n2))
             for j in range(n1)] for i in range(m1)]
    return BlockMatrix(grid, m2=m2, n2=n2, n1=n1)


def schmidt_rank(B: BlockMatrix) -> int:
    """Number of linearly independent blocks."""
    if B.is_empty():
        return 0
    basis = SpanBasis(B.m2 * B.n2)
    for _, _, b in B.iter_blocks():
        basis.add(b)
    return len(basis)


def partial_transpose_B(B: BlockMatrix) -> BlockMatrix:
    """Transpose every block in place; inner shape becomes ``n2 x m2``."""
    return BlockMatrix([[b.T for b in row] for row in B.blocks], m2=B.n2, n2=B.m2, n1=B.n1)


def partial_transpose_A(B: BlockMatrix) -> BlockMatrix:
    """Transpose the outer grid; blocks are left unchanged."""
    return BlockMatrix([[B.blocks[i][j] for i in range(B.m1)] for j in range(B.n1)],
                       m2=B.m2, n2=B.n2, n1=B.m1)


@dataclass(frozen=True)
class SchmidtPairDecomposition:
    """``M = sum_i R_i (x) S_i^T`` with independent factor families.

    ``left_factors`` are ``m1 x n1``; ``right_factors`` are ``n2 x m2`` so
    that each transpose ``S_i^T`` has the block shape ``m2 x n2``.
    """

    left_factors: tuple[ExactMatrix, ...]
    right_factors: tuple[ExactMatrix, ...]

    @property
    def K(self) -> int:
        return len(self.left_factors)

    def reconstruct(self) -> BlockMatrix:
        return BlockMatrix.from_terms((r, s.T) for r, s in zip(self.left_factors, self.right_factors))


def schmidt_decompose(B: BlockMatrix) -> SchmidtPairDecomposition:
    """Decompose over the greedy (row-major) independent block basis."""
    if B.is_empty() or B.is_zero():
        raise ValueError("the zero block matrix has no Schmidt decomposition")
    flat_blocks = [b for _, _, b in B.iter_blocks()]
    idx = independent_subset(flat_blocks)
    basis = [flat_blocks[k] for k in idx]
    K = len(basis)
    coeff = [[ZERO] * (B.m1 * B.n1) for _ in range(K)]
    for pos, b in enumerate(flat_blocks):
        c = span_coefficients(b, basis)
        if c is None:  # pragma: no cover - basis is maximal
            raise ArithmeticError("block outside the span of the greedy basis")
        for l in range(K):
            coeff[l][pos] = c[l]
    lefts = tuple(ExactMatrix(B.m1, B.n1, coeff[l]) for l in range(K))
    if len(independent_subset(lefts)) != K:  # pragma: no cover - forced by maximality
        raise ArithmeticError("left factors are dependent")
    return SchmidtPairDecomposition(lefts, tuple(s.T for s in basis))


@dataclass(frozen=True)
class LocalTransform:
    """Invertible product factors: ``N = (U (x) V) M (W (x) X)``."""

    U: ExactMatrix
    V: ExactMatrix
    W: ExactMatrix
    X: ExactMatrix

    def __post_init__(self):
        for name in "UVWX":
            m = getattr(self, name)
            if not m.is_square():
                raise ShapeMismatchError(f"factor {name} is not square")
            if not is_invertible(m):
                raise ValueError(f"factor {name} is not invertible")

    @classmethod
    def identity(cls, m1: int, n1: int, m2: int, n2: int) -> "LocalTransform":
        I = ExactMatrix.identity
        return cls(I(m1), I(m2), I(n1), I(n2))

    def then(self, other: "LocalTransform") -> "LocalTransform":
        """The transform applying ``self`` first and ``other`` second."""
        return LocalTransform(other.U @ self.U, other.V @ self.V, self.W @ other.W, self.X @ other.X)


def apply_local(B: BlockMatrix, T: LocalTransform) -> BlockMatrix:
    """``(U (x) V) B (W (x) X)`` computed blockwise."""
    m1, n1, m2, n2 = B.grid_shape
    if T.U.rows != m1 or T.W.rows != n1 or T.V.rows != m2 or T.X.rows != n2:
        raise ShapeMismatchError(
            f"transform of sizes U{T.U.shape} V{T.V.shape} W{T.W.shape} X{T.X.shape} "
            f"does not fit a {m1}x{n1} grid of {m2}x{n2} blocks")
    inner = [[T.V @ b @ T.X for b in row] for row in B.blocks]
    # outer mixing: N_ij = sum_ab U[i,a] W[b,j] inner_ab
    mixed_cols = [[None] * n1 for _ in range(m1)]
    for a in range(m1):
        for j in range(n1):
            acc = ExactMatrix.zeros(m2, n2)
            for b in range(n1):
                w = T.W[b, j]
                if w:
                    acc = acc + inner[a][b].scale(w)
            mixed_cols[a][j] = acc
    grid = []
    for i in range(m1):
        row = []
        for j in range(n1):
            acc = ExactMatrix.zeros(m2, n2)
            for a in range(m1):
                u = T.U[i, a]
                if u:
                    acc = acc + mixed_cols[a][j].scale(u)
            row.append(acc)
        grid.append(row)
    return BlockMatrix(grid, m2=m2, n2=n2, n1=n1)

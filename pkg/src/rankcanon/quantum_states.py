"""Multipartite density operators over Gaussian rationals.

States are never trace-normalized: every quantity used downstream is a
rank, and ranks do not change under positive rescaling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .block_matrix import BlockMatrix
from .exact_linalg import (
    ExactMatrix,
    GaussianRational,
    ShapeMismatchError,
    ZERO,
    is_psd_hermitian,
    rank,
)
from .reports import Report

_DEFAULT_LABELS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


class StateError(ValueError):
    """A state fails a structural precondition (bad subsystem set, wrong rank, ...)."""


@dataclass(frozen=True)
class DensityMatrix:
    dims: tuple[int, ...]
    matrix: ExactMatrix
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ShapeMismatchError(f"invalid subsystem dimensions {list(dims)}")
        D = prod(dims)
        if self.matrix.shape != (D, D):
            raise ShapeMismatchError(f"matrix of shape {self.matrix.shape} for dims {list(dims)} (need {D}x{D})")
        labels = tuple(self.labels) or tuple(_DEFAULT_LABELS[i] if i < 26 else f"P{i}" for i in range(len(dims)))
        if len(labels) != len(dims):
            raise ShapeMismatchError("one label per subsystem is required")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "labels", labels)

    @property
    def parties(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return self.matrix.rows

    def rank(self) -> int:
        return rank(self.matrix)

    def trace(self) -> GaussianRational:
        return self.matrix.trace()

    def scaled(self, c) -> "DensityMatrix":
        return DensityMatrix(self.dims, self.matrix.scale(c), self.labels)

    def index(self, label: str | int) -> int:
        if isinstance(label, int):
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise StateError(f"no subsystem labelled {label!r}") from None

    def marginal(self, keep: Iterable[str | int]) -> "DensityMatrix":
        return partial_trace(self, [self.index(k) for k in keep])

    def __repr__(self):
        return f"DensityMatrix(dims={list(self.dims)}, labels={''.join(self.labels)})"


def validate(rho: DensityMatrix) -> Report:
    """Hermiticity, positive semidefiniteness and positive trace, all exact."""
    rep = Report("state validation")
    herm = rep.add("hermitian", rho.matrix.is_hermitian())
    if herm:
        rep.add("psd", is_psd_hermitian(rho.matrix), "characteristic-coefficient sign rule")
    else:
        rep.add("psd", False, "skipped: not Hermitian")
    tr = rho.trace()
    rep.add("trace_positive", tr.is_real() and tr.re > 0, f"trace = {tr}")
    return rep


def _strides(dims: Sequence[int]) -> list[int]:
    out, acc = [], 1
    for d in reversed(dims):
        out.append(acc)
        acc *= d
    return out[::-1]


def _split_map(dims: Sequence[int], keep: Sequence[int]) -> tuple[list[int], list[int]]:
    """For every flat index: its index inside the kept factor and inside the traced factor."""
    traced = [i for i in range(len(dims)) if i not in keep]
    ks, ts = _strides([dims[i] for i in keep]), _strides([dims[i] for i in traced])
    kept_idx, traced_idx = [], []
    for digits in product(*(range(d) for d in dims)):
        kept_idx.append(sum(digits[p] * s for p, s in zip(keep, ks)))
        traced_idx.append(sum(digits[p] * s for p, s in zip(traced, ts)))
    return kept_idx, traced_idx


def _normalize_keep(rho: DensityMatrix, keep: Iterable[int]) -> list[int]:
    keep = sorted(set(keep))
    if not keep:
        raise StateError("at least one subsystem must be kept")
    if keep[0] < 0 or keep[-1] >= rho.parties:
        raise StateError(f"subsystem index out of range for {rho.parties} parties: {keep}")
    return keep


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Trace out every subsystem not in ``keep``; kept order follows the original order."""
    keep = _normalize_keep(rho, keep)
    if len(keep) == rho.parties:
        return rho
    kept_idx, traced_idx = _split_map(rho.dims, keep)
    dk = prod(rho.dims[i] for i in keep)
    groups: dict[int, list[tuple[int, int]]] = {}
    for flat, (k, t) in enumerate(zip(kept_idx, traced_idx)):
        groups.setdefault(t, []).append((flat, k))
    n = rho.size
    e = rho.matrix.entries
    acc_re = [Fraction(0)] * (dk * dk)
    acc_im = [Fraction(0)] * (dk * dk)
    for members in groups.values():
        for fa, ka in members:
            base = fa * n
            for fb, kb in members:
                z = e[base + fb]
                if z:
                    pos = ka * dk + kb
                    acc_re[pos] += z.re
                    acc_im[pos] += z.im
    out = ExactMatrix._wrap(dk, dk, tuple(GaussianRational._raw(a, b) for a, b in zip(acc_re, acc_im)))
    return DensityMatrix(tuple(rho.dims[i] for i in keep), out, tuple(rho.labels[i] for i in keep))


def reduced_rank(rho: DensityMatrix, keep: Iterable[int]) -> int:
    return partial_trace(rho, keep).rank()


def partial_transpose(rho: DensityMatrix, subsystems: Iterable[int]) -> DensityMatrix:
    """Transpose the indices of the listed subsystems, leaving the others in place."""
    sub = set(subsystems)
    if any(not 0 <= s < rho.parties for s in sub):
        raise StateError(f"subsystem index out of range: {sorted(sub)}")
    dims = rho.dims
    strides = _strides(dims)
    digits = list(product(*(range(d) for d in dims)))
    n = rho.size
    e = rho.matrix.entries
    out = [ZERO] * (n * n)
    for a, da in enumerate(digits):
        for b, db in enumerate(digits):
            na = sum((db[p] if p in sub else da[p]) * strides[p] for p in range(len(dims)))
            nb = sum((da[p] if p in sub else db[p]) * strides[p] for p in range(len(dims)))
            out[na * n + nb] = e[a * n + b]
    return DensityMatrix(dims, ExactMatrix._wrap(n, n, tuple(out)), rho.labels)


def is_ppt(rho: DensityMatrix) -> bool:
    """PSD partial transpose across every single-party cut."""
    return all(is_psd_hermitian(partial_transpose(rho, [s]).matrix) for s in range(rho.parties))


@dataclass(frozen=True)
class ZeroEntropyVector:
    """Reduced ranks ``(A, B, C, D, AB, AC, AD)`` of a pure four-party state."""

    ranks: tuple[int, int, int, int, int, int, int]

    _NAMES = ("A", "B", "C", "D", "AB", "AC", "AD")

    def __getitem__(self, key):
        if isinstance(key, str):
            return self.ranks[self._NAMES.index(key)]
        return self.ranks[key]

    def entropies(self) -> tuple[float, ...]:
        """log2 of each rank, for display only."""
        return tuple(float(np.log2(r)) for r in self.ranks)

    def __str__(self):
        return "(" + ", ".join(str(r) for r in self.ranks) + ")"


def zero_entropy_vector(psi: DensityMatrix) -> ZeroEntropyVector:
    if psi.parties != 4:
        raise StateError(f"a four-party state is required, got {psi.parties}")
    r = psi.rank()
    if r != 1:
        raise StateError(f"a pure state (rank 1) is required, got rank {r}")
    subsets = [(0,), (1,), (2,), (3,), (0, 1), (0, 2), (0, 3)]
    return ZeroEntropyVector(tuple(reduced_rank(psi, s) for s in subsets))


# ---------------------------------------------------------------------------
# constructors

def ket(dims: Sequence[int], digits: Sequence[int]) -> ExactMatrix:
    """Computational basis column vector ``|digits>``."""
    if len(dims) != len(digits) or any(not 0 <= x < d for x, d in zip(digits, dims)):
        raise StateError(f"basis label {list(digits)} does not fit dims {list(dims)}")
    D = prod(dims)
    pos = sum(x * s for x, s in zip(digits, _strides(dims)))
    return ExactMatrix.unit(D, 1, pos, 0)


def pure_state(vector: ExactMatrix | Sequence, dims: Sequence[int], labels: Sequence[str] = ()) -> DensityMatrix:
    """Projector ``|v><v|`` onto an (unnormalized) vector."""
    if not isinstance(vector, ExactMatrix):
        vector = ExactMatrix(len(vector), 1, vector)
    if vector.cols != 1:
        vector = vector.T if vector.rows == 1 else vector
    return DensityMatrix(tuple(dims), vector @ vector.dagger(), tuple(labels))


def basis_state(dims: Sequence[int], digits: Sequence[int]) -> DensityMatrix:
    return pure_state(ket(dims, digits), dims)


def ghz(parties: int, d: int = 2) -> DensityMatrix:
    """Unnormalized projector onto ``sum_i |i...i>``."""
    dims = (d,) * parties
    v = ExactMatrix.zeros(d ** parties, 1)
    for i in range(d):
        v = v + ket(dims, (i,) * parties)
    return pure_state(v, dims)


def max_entangled(d: int = 2) -> DensityMatrix:
    """Unnormalized projector onto ``sum_i |ii>``."""
    return ghz(2, d)


def maximally_mixed(dims: Sequence[int]) -> DensityMatrix:
    return DensityMatrix(tuple(dims), ExactMatrix.identity(prod(dims)))


def tensor(*states: DensityMatrix) -> DensityMatrix:
    if not states:
        raise StateError("tensor of no states")
    mat, dims = states[0].matrix, list(states[0].dims)
    for s in states[1:]:
        mat = mat.kron(s.matrix)
        dims += s.dims
    return DensityMatrix(tuple(dims), mat)


def from_block_matrix(B: BlockMatrix) -> DensityMatrix:
    """Read a square block matrix with square blocks as a two-party operator."""
    if B.m1 != B.n1 or B.m2 != B.n2:
        raise ShapeMismatchError("a two-party operator needs square grid and square blocks")
    return DensityMatrix((B.m1, B.m2), B.flatten())


# ---------------------------------------------------------------------------
# seeded generators

_MAX_RETRIES = 64


def _gaussian_ints(rng: np.random.Generator, count: int, imag: bool = True) -> list[GaussianRational]:
    re = rng.integers(-2, 3, size=count)
    im = rng.integers(-2, 3, size=count) if imag else np.zeros(count, dtype=np.int64)
    return [GaussianRational(int(a), int(b)) for a, b in zip(re, im)]


def random_density(dims: Sequence[int], rank: int, seed: int) -> DensityMatrix:
    """``G G^dagger`` with a seeded ``D x rank`` Gaussian-integer ``G`` of exact rank ``rank``."""
    dims = tuple(dims)
    D = prod(dims)
    if not 1 <= rank <= D:
        raise StateError(f"rank {rank} outside 1..{D}")
    rng = np.random.default_rng(seed)
    for _ in range(_MAX_RETRIES):
        G = ExactMatrix(D, rank, _gaussian_ints(rng, D * rank))
        if G.rank() == rank:
            return DensityMatrix(dims, G @ G.dagger())
    raise StateError(f"no rank-{rank} sample in {_MAX_RETRIES} attempts (seed {seed})")


def random_block_matrix(m1: int, n1: int, m2: int, n2: int, schmidt_rank: int, seed: int,
                        complex_entries: bool = False) -> BlockMatrix:
    """``sum_i R_i (x) S_i^T`` from seeded small-integer factors with exact Schmidt rank."""
    top = min(m1 * n1, m2 * n2)
    if not 1 <= schmidt_rank <= top:
        raise StateError(f"Schmidt rank {schmidt_rank} outside 1..{top}")
    rng = np.random.default_rng(seed)
    for _ in range(_MAX_RETRIES):
        terms = []
        for _ in range(schmidt_rank):
            R = ExactMatrix(m1, n1, _gaussian_ints(rng, m1 * n1, complex_entries))
            S = ExactMatrix(n2, m2, _gaussian_ints(rng, n2 * m2, complex_entries))
            terms.append((R, S.T))
        B = BlockMatrix.from_terms(terms)
        if B.schmidt_rank() == schmidt_rank:
            return B
    raise StateError(f"no Schmidt-rank-{schmidt_rank} sample in {_MAX_RETRIES} attempts (seed {seed})")


def random_corpus(count: int, seed: int, sizes: Sequence[int] = (1, 2, 3)):
    """Yield ``(trial_seed, BlockMatrix)`` pairs covering every Schmidt rank of each drawn shape."""
    rng = np.random.default_rng(seed)
    for t in range(count):
        m1, n1, m2, n2 = (int(x) for x in rng.choice(sizes, size=4))
        top = min(m1 * n1, m2 * n2)
        K = 1 + t % top
        yield seed + t, random_block_matrix(m1, n1, m2, n2, K, seed + t)


def permute_subsystems(rho: DensityMatrix, order: Sequence[int]) -> DensityMatrix:
    """Reorder tensor factors: new subsystem ``t`` is old subsystem ``order[t]``."""
    if sorted(order) != list(range(rho.parties)):
        raise StateError(f"{list(order)} is not a permutation of the {rho.parties} subsystems")
    new_dims = tuple(rho.dims[i] for i in order)
    old_strides = _strides(rho.dims)
    # flat index in the new layout -> flat index in the old one
    remap = [sum(d * old_strides[order[t]] for t, d in enumerate(digits))
             for digits in product(*(range(d) for d in new_dims))]
    n = rho.size
    e = rho.matrix.entries
    out = tuple(e[remap[a] * n + remap[b]] for a in range(n) for b in range(n))
    return DensityMatrix(new_dims, ExactMatrix._wrap(n, n, out), tuple(rho.labels[i] for i in order))

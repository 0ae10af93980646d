"""Line-oriented text format for exact matrices.

A document is a header line followed by whitespace-separated scalar
tokens in row-major order; ``#`` starts a comment.  Headers::

    blockmatrix m1 n1 m2 n2        one (m1*m2) x (n1*n2) flat matrix
    density d1 d2 ... dn           one D x D matrix, D = d1*...*dn
    marginal-triple dA dB dC       three operators: AB, AC, BC
    certificate m1 n1 m2 n2        four factors: U, V, W, X

Scalars are ``3``, ``-1/2``, ``2+1/3i``, ``0-1i`` or a bare imaginary
``1/2i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .block_matrix import BlockMatrix, LocalTransform
from .exact_linalg import ExactMatrix, GaussianRational, format_scalar
from .quantum_states import DensityMatrix

_RAT = r"(-?\d+(?:/\d+)?)"
_UNSIGNED = r"(\d+(?:/\d+)?)"
_COMPLEX = re.compile(rf"{_RAT}(?:([+-]){_UNSIGNED}i)?")
_IMAG = re.compile(rf"{_RAT}i")

KINDS = ("blockmatrix", "density", "marginal-triple", "certificate")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class MatrixDocument:
    kind: str
    header: tuple[int, ...]
    payload: tuple[ExactMatrix, ...]

    # conversions ------------------------------------------------------------
    @classmethod
    def from_block_matrix(cls, B: BlockMatrix) -> "MatrixDocument":
        return cls("blockmatrix", B.grid_shape, (B.flatten(),))

    @classmethod
    def from_density(cls, rho: DensityMatrix) -> "MatrixDocument":
        return cls("density", rho.dims, (rho.matrix,))

    @classmethod
    def from_marginals(cls, ab: DensityMatrix, ac: DensityMatrix, bc: DensityMatrix) -> "MatrixDocument":
        return cls("marginal-triple", (ab.dims[0], ab.dims[1], ac.dims[1]), (ab.matrix, ac.matrix, bc.matrix))

    @classmethod
    def from_certificate(cls, T: LocalTransform) -> "MatrixDocument":
        return cls("certificate", (T.U.rows, T.W.rows, T.V.rows, T.X.rows), (T.U, T.V, T.W, T.X))

    def _expect(self, kind: str):
        if self.kind != kind:
            raise ValueError(f"expected a {kind} document, got {self.kind}")

    def block_matrix(self) -> BlockMatrix:
        self._expect("blockmatrix")
        return BlockMatrix.from_flat(self.payload[0], *self.header)

    def density(self) -> DensityMatrix:
        if self.kind == "blockmatrix":
            from .quantum_states import from_block_matrix
            return from_block_matrix(self.block_matrix())
        self._expect("density")
        return DensityMatrix(self.header, self.payload[0])

    def marginals(self) -> tuple[DensityMatrix, DensityMatrix, DensityMatrix]:
        self._expect("marginal-triple")
        dA, dB, dC = self.header
        ab, ac, bc = self.payload
        return (DensityMatrix((dA, dB), ab, ("A", "B")), DensityMatrix((dA, dC), ac, ("A", "C")),
                DensityMatrix((dB, dC), bc, ("B", "C")))

    def certificate(self) -> LocalTransform:
        self._expect("certificate")
        return LocalTransform(*self.payload)


def _payload_shapes(kind: str, header: tuple[int, ...]) -> list[tuple[int, int]]:
    if kind in ("blockmatrix", "certificate") and len(header) != 4:
        raise ValueError(f"{kind} takes 4 dimensions")
    if kind == "blockmatrix":
        m1, n1, m2, n2 = header
        return [(m1 * m2, n1 * n2)]
    if kind == "certificate":
        m1, n1, m2, n2 = header
        return [(m1, m1), (m2, m2), (n1, n1), (n2, n2)]
    if kind == "density":
        if not header:
            raise ValueError("density takes at least one dimension")
        D = prod(header)
        return [(D, D)]
    if kind == "marginal-triple":
        if len(header) != 3:
            raise ValueError("marginal-triple takes 3 dimensions")
        dA, dB, dC = header
        return [(dA * dB,) * 2, (dA * dC,) * 2, (dB * dC,) * 2]
    raise ValueError(f"unknown header {kind!r}")


def parse_scalar(token: str) -> GaussianRational:
    """Parse one scalar token; raises ValueError on malformed input or a zero denominator."""
    m = _COMPLEX.fullmatch(token)
    if m:
        re_part, sign, im_part = m.groups()
        im = Fraction(0)
        if sign:
            im = Fraction(im_part) if sign == "+" else -Fraction(im_part)
        return GaussianRational(Fraction(re_part), im)
    m = _IMAG.fullmatch(token)
    if m:
        return GaussianRational(0, Fraction(m.group(1)))
    raise ValueError(f"malformed scalar {token!r}")


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        for m in re.finditer(r"\S+", body):
            yield lineno, m.start() + 1, m.group()


def parse(text: str) -> MatrixDocument:
    toks = _tokens(text)
    first = next(toks, None)
    if first is None:
        raise ParseError("empty document", 1, 1)
    line, col, kind = first
    if kind not in KINDS:
        raise ParseError(f"unknown header {kind!r}", line, col)
    header = []
    rest = []
    for tok in toks:
        if tok[0] == line:
            header.append(tok)
        else:
            rest.append(tok)
    dims = []
    for hl, hc, h in header:
        if not h.isdigit() or int(h) < 1:
            raise ParseError(f"dimension must be a positive integer, got {h!r}", hl, hc)
        dims.append(int(h))
    try:
        shapes = _payload_shapes(kind, tuple(dims))
    except ValueError as exc:
        raise ParseError(str(exc), line, col) from None
    need = sum(r * c for r, c in shapes)
    if len(rest) != need:
        where = rest[need] if len(rest) > need else (rest[-1] if rest else (line, col, ""))
        raise ParseError(f"expected {need} scalar tokens, found {len(rest)}", where[0], where[1])
    values = []
    for tl, tc, t in rest:
        try:
            values.append(parse_scalar(t))
        except (ValueError, ZeroDivisionError) as exc:
            msg = "zero denominator" if isinstance(exc, ZeroDivisionError) else str(exc)
            raise ParseError(msg, tl, tc) from None
    payload, pos = [], 0
    for r, c in shapes:
        payload.append(ExactMatrix(r, c, values[pos:pos + r * c]))
        pos += r * c
    return MatrixDocument(kind, tuple(dims), tuple(payload))


def serialize(doc: MatrixDocument) -> str:
    shapes = _payload_shapes(doc.kind, doc.header)
    if [m.shape for m in doc.payload] != shapes:
        raise ValueError("payload shapes do not match the header")
    lines = [" ".join([doc.kind, *map(str, doc.header)])]
    for m in doc.payload:
        for i in range(m.rows):
            lines.append(" ".join(format_scalar(z) for z in m.row(i)))
    return "\n".join(lines) + "\n"


def read_document(path) -> MatrixDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_document(path, doc: MatrixDocument) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(doc))

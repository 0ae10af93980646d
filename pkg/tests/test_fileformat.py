import pytest
from hypothesis import given, strategies as st

from conftest import scalars
from corpus import generate_documents
from rankcanon.exact_linalg import ExactMatrix, GaussianRational as G, format_scalar
from rankcanon.fileformat import MatrixDocument, ParseError, parse, parse_scalar, serialize


class TestScalars:
    @pytest.mark.parametrize("token, value", [
        ("3", G(3)), ("-1/2", G(-1) / 2), ("2+1/3i", G(2) + G(0, 1) / 3),
        ("0-1i", G(0, -1)), ("1/2i", G(0, 1) / 2), ("6/4", G(3) / 2), ("-0", G(0)),
    ])
    def test_tokens(self, token, value):
        assert parse_scalar(token) == value

    @pytest.mark.parametrize("token", ["1.5", "i", "-i", "1+i", "2+-1i", "1/", "/2", "1/-2", "abc", "1++2i"])
    def test_malformed(self, token):
        with pytest.raises(ValueError):
            parse_scalar(token)

    @given(scalars(bound=50, denominators=(1, 2, 3, 7, 12)))
    def test_round_trip(self, z):
        assert parse_scalar(format_scalar(z)) == z


class TestDocuments:
    def test_identity_block(self):
        doc = parse("blockmatrix 1 1 2 2\n1 0 0 1\n")
        assert doc.block_matrix().block(0, 0) == ExactMatrix.identity(2)

    def test_maximally_mixed(self):
        text = "density 2 2\n" + "\n".join(" ".join("1/4" if i == j else "0" for j in range(4)) for i in range(4))
        rho = parse(text).density()
        assert rho.dims == (2, 2)
        assert rho.matrix == ExactMatrix.identity(4).scale(G(1) / 4)

    def test_comments_and_layout(self):
        text = "# heading\n\nblockmatrix 1 1 1 2  # trailing\n  1   # first\n 2/4\n"
        doc = parse(text)
        assert doc.payload[0] == ExactMatrix.from_rows([[1, G(1) / 2]])

    def test_lowest_terms_on_parse(self):
        doc = parse("density 1\n10/4")
        assert serialize(doc) == "density 1\n5/2\n"

    @pytest.mark.parametrize("text, line, col", [
        ("blockmatrix 1 1 2 2\n1 0 0\n", 2, 5),
        ("blockmatrix 1 1 1 1\n1 2\n", 2, 3),
        ("density 2\n1 0\n0 1/0\n", 3, 3),
        ("density 2\n1 0\n0 x\n", 3, 3),
        ("matrix 2 2\n", 1, 1),
        ("", 1, 1),
        ("density 0\n", 1, 9),
        ("blockmatrix 1 1 2\n1 0\n", 1, 1),
    ])
    def test_errors(self, text, line, col):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert (info.value.line, info.value.column) == (line, col)

    def test_marginal_triple(self):
        text = "marginal-triple 1 1 1\n1\n2\n3\n"
        ab, ac, bc = parse(text).marginals()
        assert [x.matrix[0, 0] for x in (ab, ac, bc)] == [G(1), G(2), G(3)]
        assert ab.labels == ("A", "B") and bc.labels == ("B", "C")

    def test_certificate(self):
        text = "certificate 1 2 1 1\n2\n1\n1 1\n0 1\n1\n"
        T = parse(text).certificate()
        assert T.W == ExactMatrix.from_rows([[1, 1], [0, 1]])

    def test_serialize_shape_mismatch(self):
        with pytest.raises(ValueError):
            serialize(MatrixDocument("density", (2,), (ExactMatrix.identity(3),)))

    def test_corpus_round_trip(self):
        for doc in generate_documents(40, 3):
            text = serialize(doc)
            assert parse(text) == doc
            assert serialize(parse(text)) == text

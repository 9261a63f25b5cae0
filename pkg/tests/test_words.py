from fractions import Fraction

import pytest

from core.errors import DecodeError, LevelError
from core.indices import ColorVector
from core.words.algebra import WordPoly, product, star_expansion
from core.words.decompose import decompose, reconstruct, shuffle_decompose, stuffle_decompose
from core.words.encoding import decode_binary, encode_binary, is_admissible_word, stuffle_word


def y(*exponents):
    return WordPoly.from_word("stuffle", tuple((k, 0) for k in exponents))


def x(*letters):
    return WordPoly.from_word("shuffle", letters)


class TestEncoding:
    def test_binary_words(self):
        assert encode_binary((1, 2)) == (1, 1, 0)
        assert encode_binary((2, 1)) == (1, 0, 1)

    def test_decode(self):
        k, colors = decode_binary((1, 0, 0))
        assert k == (3,)
        assert colors.is_trivial

    def test_colored_round_trip(self):
        colors = ColorVector(level=4, exponents=(1, 3, 2))
        k, decoded = decode_binary(encode_binary((2, 1, 3), colors), 4)
        assert k == (2, 1, 3)
        assert decoded == colors

    def test_decode_leading_x0(self):
        with pytest.raises(DecodeError):
            decode_binary((0, 1))

    def test_stuffle_word(self):
        assert stuffle_word((2, 1)) == ((2, 0), (1, 0))

    def test_admissibility(self):
        assert is_admissible_word((1, 0), "shuffle")
        assert not is_admissible_word((1, 0, 1), "shuffle")
        assert not is_admissible_word(((2, 0), (1, 0)), "stuffle")


class TestProducts:
    def test_stuffle_y2_y1(self):
        assert product(y(2), y(1)) == y(1, 2) + y(2, 1) + y(3)

    def test_stuffle_y1_y1(self):
        assert product(y(1), y(1)) == y(1, 1) * 2 + y(2)

    def test_shuffle_x1_x1(self):
        assert product(x(1), x(1)) == x(1, 1) * 2

    def test_shuffle_x1_x1x0(self):
        assert product(x(1), x(1, 0)) == x(1, 1, 0) * 2 + x(1, 0, 1)

    def test_colored_stuffle_merges_colors(self):
        a = WordPoly.from_word("stuffle", ((1, 1),), 2)
        merged = product(a, a)
        assert merged.coefficient(((2, 0),)) == 1
        assert merged.coefficient(((1, 1), (1, 1))) == 2

    def test_unit(self):
        assert product(WordPoly.unit("shuffle"), x(1, 0)) == x(1, 0)

    def test_level_mismatch(self):
        with pytest.raises(LevelError):
            product(y(1), WordPoly.from_word("stuffle", ((1, 0),), 2))

    def test_commutative_and_associative(self, generator):
        for kind, make in (("stuffle", y), ("shuffle", x)):
            for _ in range(20):
                letters = (1, 2, 3) if kind == "stuffle" else (0, 1)
                u, v, w = (make(*[generator.choice(letters) for _ in range(generator.randint(1, 2))]) for _ in range(3))
                assert product(u, v) == product(v, u)
                assert product(product(u, v), w) == product(u, product(v, w))

    def test_star_expansion(self):
        assert star_expansion(((1, 0), (2, 0))) == y(1, 2) + y(3)


class TestDecompose:
    def test_divergent_letter(self):
        assert stuffle_decompose(((1, 0),)) == [(1, WordPoly.unit("stuffle"))]

    def test_stuffle_y1y1(self):
        parts = decompose(y(1, 1))
        assert parts == [(0, y(2) * Fraction(-1, 2)), (2, WordPoly.unit("stuffle") * Fraction(1, 2))]

    def test_shuffle_x1x1(self):
        assert shuffle_decompose((1, 1)) == [(2, WordPoly.unit("shuffle") * Fraction(1, 2))]

    def test_shuffle_x1x0x1(self):
        # x1x0 ш x1 = 2 x1x1x0 + x1x0x1
        parts = decompose(x(1, 0, 1))
        assert parts == [(0, x(1, 1, 0) * -2), (1, x(1, 0))]

    def test_admissible_word_is_its_own_part(self):
        assert decompose(y(2, 3)) == [(0, y(2, 3))]

    @pytest.mark.parametrize("kind", ["stuffle", "shuffle"])
    def test_reconstruct(self, kind):
        for k in ((1,), (1, 1), (2, 1), (1, 2, 1, 1), (3, 1, 1), (1, 1, 1)):
            poly = WordPoly.from_index(kind, k)
            assert reconstruct(decompose(poly), kind) == poly

    def test_reconstruct_colored(self):
        colors = ColorVector(level=2, exponents=(1, 0, 0))
        for kind in ("stuffle", "shuffle"):
            poly = WordPoly.from_index(kind, (2, 1, 1), colors)
            assert reconstruct(decompose(poly), kind, 2) == poly

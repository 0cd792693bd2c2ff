"""Tests for the bit-packed matrix type, file formats and overlaps."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from scpbound import (
    BinaryMatrix,
    ParseError,
    from_rows,
    overlap_table,
    pair_overlap,
    parse_matrix,
    permute,
    row_profile,
    serialize_matrix,
    triple_overlap,
)
from scpbound.matrix import column_masks

matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.text(alphabet="01", min_size=n, max_size=n), min_size=1, max_size=6)
).map(from_rows)


class TestConstruction:
    def test_entries_round_trip(self):
        m = from_rows(["101", "010"])
        assert (m.m, m.n) == (2, 3)
        assert [[m.get(i, j) for j in range(3)] for i in range(2)] == [[1, 0, 1], [0, 1, 0]]

    def test_counts(self):
        m = from_rows(["1101", "0010"])
        assert m.row_ones(0) == 3
        assert m.row_ones(1) == 1
        assert m.total_ones() == 4

    def test_get_bounds_checked(self):
        m = from_rows(["10"])
        with pytest.raises(IndexError):
            m.get(0, 2)
        with pytest.raises(IndexError):
            m.get(1, 0)

    def test_rejects_bad_dimensions(self):
        with pytest.raises(ValueError):
            BinaryMatrix(0, 3, ())
        with pytest.raises(ValueError):
            BinaryMatrix(1, 0, (0,))

    def test_rejects_row_count_mismatch(self):
        with pytest.raises(ValueError):
            BinaryMatrix(2, 3, (0b101,))

    def test_rejects_stray_bits(self):
        with pytest.raises(ValueError):
            BinaryMatrix(1, 2, (0b100,))
        with pytest.raises(ValueError):
            BinaryMatrix(1, 2, (-1,))

    def test_from_rows_rejects_ragged_input(self):
        with pytest.raises(ValueError):
            from_rows(["10", "110"])

    def test_from_rows_rejects_bad_characters(self):
        with pytest.raises(ValueError):
            from_rows(["102"])

    def test_from_rows_rejects_empty(self):
        with pytest.raises(ValueError):
            from_rows([])


class TestParse:
    def test_dense(self):
        m = parse_matrix("2 3\n101\n010\n")
        assert m == from_rows(["101", "010"])

    def test_sparse(self):
        m = parse_matrix("3 4\n1: 1 3\n2:\n3: 2 3 4\n")
        assert m == from_rows(["1010", "0000", "0111"])

    def test_comments_and_blank_lines_ignored(self):
        text = "# instance\n\n2 2\n# rows follow\n11\n\n01\n"
        assert parse_matrix(text) == from_rows(["11", "01"])

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_matrix("  \n# only a comment\n")

    def test_header_errors_carry_line_numbers(self):
        with pytest.raises(ParseError) as err:
            parse_matrix("# x\n2\n11\n01\n")
        assert err.value.line == 2
        with pytest.raises(ParseError):
            parse_matrix("two three\n11\n")
        with pytest.raises(ParseError):
            parse_matrix("0 3\n")

    def test_wrong_row_length(self):
        with pytest.raises(ParseError) as err:
            parse_matrix("2 3\n101\n01\n")
        assert err.value.line == 3
        assert "expected 3" in str(err.value)

    def test_bad_character_reports_line(self):
        with pytest.raises(ParseError) as err:
            parse_matrix("1 3\n1x0\n")
        assert err.value.line == 2

    def test_missing_and_trailing_rows(self):
        with pytest.raises(ParseError) as err:
            parse_matrix("3 2\n11\n01\n")
        assert "expected 3 rows" in str(err.value)
        with pytest.raises(ParseError) as err:
            parse_matrix("1 2\n11\n01\n")
        assert "trailing" in str(err.value)

    def test_mixed_formats_rejected(self):
        with pytest.raises(ParseError):
            parse_matrix("2 2\n11\n2: 1\n")

    def test_sparse_row_label_must_match(self):
        with pytest.raises(ParseError) as err:
            parse_matrix("2 2\n1: 1\n3: 2\n")
        assert "expected row 2" in str(err.value)

    def test_sparse_column_range_and_order(self):
        with pytest.raises(ParseError):
            parse_matrix("1 2\n1: 3\n")
        with pytest.raises(ParseError):
            parse_matrix("1 3\n1: 2 2\n")
        with pytest.raises(ParseError):
            parse_matrix("1 3\n1: 3 1\n")

    def test_sparse_bad_tokens(self):
        with pytest.raises(ParseError):
            parse_matrix("1 2\n1: x\n")
        with pytest.raises(ParseError):
            parse_matrix("1 2\nq: 1\n")


class TestSerialize:
    def test_dense_golden(self):
        assert serialize_matrix(from_rows(["10", "11"])) == "2 2\n10\n11\n"

    def test_sparse_golden(self):
        m = from_rows(["1010", "0000"])
        assert serialize_matrix(m, fmt="sparse") == "2 4\n1: 1 3\n2:\n"

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            serialize_matrix(from_rows(["1"]), fmt="csv")

    @given(matrices)
    def test_round_trip_dense(self, m):
        assert parse_matrix(serialize_matrix(m, fmt="dense")) == m

    @given(matrices)
    def test_round_trip_sparse(self, m):
        assert parse_matrix(serialize_matrix(m, fmt="sparse")) == m


class TestRowProfile:
    def test_counts_and_densities(self):
        p = row_profile(from_rows(["1100", "1110", "0000"]))
        assert p.ones == (2, 3, 0)
        assert p.density(1) == 0.75
        assert p.densities() == (0.5, 0.75, 0.0)
        assert p.density_exact(0) == Fraction(1, 2)
        assert p.max_density == 0.75
        assert p.min_density == 0.0
        assert p.zero_rows() == (2,)
        assert p.m == 3


class TestOverlaps:
    def test_pair_and_triple_values(self):
        m = from_rows(["1101", "0111", "1011"])
        assert pair_overlap(m, 0, 1) == 2
        assert pair_overlap(m, 1, 0) == 2
        assert triple_overlap(m, 0, 1, 2) == 1

    def test_index_validation(self):
        m = from_rows(["11", "10"])
        with pytest.raises(IndexError):
            pair_overlap(m, 0, 0)
        with pytest.raises(IndexError):
            pair_overlap(m, 0, 2)
        with pytest.raises(IndexError):
            triple_overlap(m, 0, 1, 1)

    def test_table_matches_direct_functions(self):
        m = from_rows(["110101", "011110", "111000", "001011"])
        table = overlap_table(m)
        for i in range(4):
            for j in range(4):
                if i != j:
                    assert table.pair(i, j) == pair_overlap(m, i, j)
        assert table.triple(0, 1, 2) == triple_overlap(m, 0, 1, 2)
        assert table.triple(3, 1, 0) == triple_overlap(m, 0, 1, 3)

    def test_table_densities_are_exact(self):
        m = from_rows(["110", "011"])
        table = overlap_table(m)
        assert table.pair_density(0, 1) == Fraction(1, 3)
        with pytest.raises(IndexError):
            table.triple(0, 1, 1)

    @given(matrices.filter(lambda m: m.m >= 2))
    def test_pair_overlap_bounded_by_row_counts(self, m):
        g = pair_overlap(m, 0, 1)
        assert 0 <= g <= min(m.row_ones(0), m.row_ones(1))


class TestPermute:
    def test_identity_is_fixed_point(self):
        m = from_rows(["101", "110"])
        assert permute(m, [0, 1], [0, 1, 2]) == m

    def test_entry_relation(self):
        m = from_rows(["101", "110"])
        p = permute(m, [1, 0], [2, 0, 1])
        for i in range(2):
            for j in range(3):
                assert p.get(i, j) == m.get([1, 0][i], [2, 0, 1][j])

    def test_rejects_non_permutations(self):
        m = from_rows(["10", "01"])
        with pytest.raises(ValueError):
            permute(m, [0, 0], [0, 1])
        with pytest.raises(ValueError):
            permute(m, [0, 1], [1, 2])

    @given(matrices)
    def test_round_trip_through_inverse(self, m):
        row_perm = list(range(m.m))[::-1]
        col_perm = list(range(m.n))[::-1]
        assert permute(permute(m, row_perm, col_perm), row_perm, col_perm) == m


class TestColumnMasks:
    def test_masks_match_entries(self):
        m = from_rows(["101", "110", "011"])
        masks = column_masks(m)
        for j in range(m.n):
            for i in range(m.m):
                assert (masks[j] >> i) & 1 == m.get(i, j)

    @given(matrices)
    def test_total_popcount_preserved(self, m):
        assert sum(c.bit_count() for c in column_masks(m)) == m.total_ones()

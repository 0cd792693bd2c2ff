"""Tests for the seeded instance generators."""

import math

import pytest

from scpbound import (
    GenSpec,
    PlantedInstance,
    gen_constant_density,
    gen_karp,
    gen_planted,
    generate,
    serialize_matrix,
)


class TestGenSpec:
    def test_rejects_unknown_model(self):
        with pytest.raises(ValueError):
            GenSpec("uniform", 3, 3)

    def test_rejects_bad_dimensions(self):
        with pytest.raises(ValueError):
            GenSpec("karp", 0, 3)
        with pytest.raises(ValueError):
            GenSpec("karp", 3, -1)

    def test_rejects_out_of_range_densities(self):
        with pytest.raises(ValueError):
            GenSpec("constant-density", 3, 3, delta=1.2)
        with pytest.raises(ValueError):
            GenSpec("planted", 4, 4, d3=-0.5)


class TestConstantDensity:
    def test_deterministic_bytes(self):
        spec = GenSpec("constant-density", 12, 9, delta=0.4, seed=3)
        a = serialize_matrix(gen_constant_density(spec))
        b = serialize_matrix(gen_constant_density(spec))
        assert a == b

    def test_seed_changes_output(self):
        base = GenSpec("constant-density", 12, 9, delta=0.4, seed=3)
        other = GenSpec("constant-density", 12, 9, delta=0.4, seed=4)
        assert gen_constant_density(base) != gen_constant_density(other)

    def test_density_extremes(self):
        zeros = gen_constant_density(GenSpec("constant-density", 4, 5, delta=0.0))
        ones = gen_constant_density(GenSpec("constant-density", 4, 5, delta=1.0))
        assert zeros.total_ones() == 0
        assert ones.total_ones() == 20

    def test_unbiased_over_a_million_entries(self):
        """Global ones fraction within 3 standard errors of delta."""
        delta = 0.37
        matrix = gen_constant_density(GenSpec("constant-density", 1000, 1000, delta=delta, seed=1))
        entries = 1000 * 1000
        fraction = matrix.total_ones() / entries
        se = math.sqrt(delta * (1 - delta) / entries)
        assert abs(fraction - delta) <= 3 * se


class TestKarp:
    def test_exact_row_popcounts(self):
        for delta, n, expected_t in ((0.4, 10, 4), (0.5, 5, 3), (0.25, 6, 2), (0.3, 5, 2)):
            matrix = gen_karp(GenSpec("karp", 8, n, delta=delta, seed=2))
            assert all(matrix.row_ones(i) == expected_t for i in range(8))

    def test_half_up_boundary(self):
        """t = floor(delta*n + 0.5): 2.5 rounds to 3, not 2."""
        matrix = gen_karp(GenSpec("karp", 3, 5, delta=0.5, seed=0))
        assert all(matrix.row_ones(i) == 3 for i in range(3))

    def test_extremes(self):
        empty = gen_karp(GenSpec("karp", 3, 4, delta=0.0))
        full = gen_karp(GenSpec("karp", 3, 4, delta=1.0))
        assert empty.total_ones() == 0
        assert full.total_ones() == 12

    def test_deterministic(self):
        spec = GenSpec("karp", 6, 8, delta=0.5, seed=11)
        assert gen_karp(spec) == gen_karp(spec)

    def test_rows_vary(self):
        matrix = gen_karp(GenSpec("karp", 30, 10, delta=0.3, seed=4))
        assert len(set(matrix.rows)) > 1


class TestPlanted:
    def test_split_sizes(self):
        planted = gen_planted(GenSpec("planted", 10, 12, d1=0.5, d4=0.5, mu=0.2, nu=0.0))
        assert isinstance(planted, PlantedInstance)
        assert planted.r == 6  # round(10 * 1.2 / 2)
        assert planted.c == 6

    def test_zero_off_diagonal_is_exactly_block_diagonal(self):
        planted = gen_planted(GenSpec("planted", 8, 8, d1=0.9, d4=0.9, seed=5))
        left = (1 << planted.c) - 1
        for i, row in enumerate(planted.matrix.rows):
            if i < planted.r:
                assert row & ~left == 0
            else:
                assert row & left == 0

    def test_block_densities_near_targets(self):
        spec = GenSpec("planted", 60, 60, d1=0.7, d2=0.1, d3=0.2, d4=0.6, seed=8)
        planted = gen_planted(spec)
        r, c = planted.r, planted.c
        left = (1 << c) - 1
        blocks = {"d1": 0, "d2": 0, "d3": 0, "d4": 0}
        for i, row in enumerate(planted.matrix.rows):
            top = i < r
            blocks["d1" if top else "d3"] += (row & left).bit_count()
            blocks["d2" if top else "d4"] += (row >> c).bit_count()
        sizes = {"d1": r * c, "d2": r * (60 - c), "d3": (60 - r) * c, "d4": (60 - r) * (60 - c)}
        for name, count in blocks.items():
            target = getattr(spec, name)
            se = math.sqrt(target * (1 - target) / sizes[name])
            assert abs(count / sizes[name] - target) <= 4 * se

    def test_degenerate_split_rejected(self):
        with pytest.raises(ValueError):
            gen_planted(GenSpec("planted", 2, 4, d1=0.5, d4=0.5, mu=0.95))
        with pytest.raises(ValueError):
            gen_planted(GenSpec("planted", 4, 2, d1=0.5, d4=0.5, nu=-0.95))

    def test_deterministic(self):
        spec = GenSpec("planted", 9, 9, d1=0.6, d4=0.6, seed=13)
        assert gen_planted(spec) == gen_planted(spec)


class TestGenerateDispatch:
    def test_routes_by_model(self):
        cd = GenSpec("constant-density", 5, 5, delta=0.5, seed=1)
        karp = GenSpec("karp", 5, 5, delta=0.4, seed=1)
        planted = GenSpec("planted", 6, 6, d1=0.8, d4=0.8, seed=1)
        assert generate(cd) == gen_constant_density(cd)
        assert generate(karp) == gen_karp(karp)
        assert generate(planted) == gen_planted(planted).matrix

import pytest

from latfit import DegenerateInput, approximate_1d, approximate_axis, point_set

from datasets import PAIRED_2D, SHUFFLED_2D


class TestReference:
    def test_paired(self):
        result = approximate_axis(point_set(PAIRED_2D), 1e-3)
        assert result.per_axis[0].spacing == pytest.approx(0.4943, abs=1e-4)
        assert result.per_axis[1].spacing == pytest.approx(0.0240, abs=1e-4)
        assert result.report.norm_max == pytest.approx(9.3622, abs=1e-3)
        assert result.report.norm_l2 == pytest.approx(11.0453, abs=1e-3)

    def test_shuffled(self):
        result = approximate_axis(point_set(SHUFFLED_2D), 1e-3)
        assert result.per_axis[0].spacing == pytest.approx(0.4943, abs=1e-4)
        assert result.per_axis[1].spacing == pytest.approx(0.0240, abs=1e-4)
        assert result.report.norm_max == pytest.approx(8.6761, abs=1e-3)
        assert result.report.norm_l2 == pytest.approx(10.2364, abs=1e-3)

    def test_exact_grid(self):
        ps = point_set([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 3.0), (1.0, 3.0), (2.0, 3.0)])
        result = approximate_axis(ps, 1e-3)
        assert result.report.norm_max == pytest.approx(0.0, abs=1e-9)
        assert result.report.norm_l2 == pytest.approx(0.0, abs=1e-9)


class TestStructure:
    def test_basis_is_axis_aligned(self):
        result = approximate_axis(point_set(PAIRED_2D), 1e-3)
        for i, vec in enumerate(result.lattice.basis):
            for j, entry in enumerate(vec):
                if i != j:
                    assert entry == 0.0

    def test_origin_is_per_axis_minimum(self):
        result = approximate_axis(point_set(SHUFFLED_2D), 1e-3)
        xs = [p[0] for p in SHUFFLED_2D]
        ys = [p[1] for p in SHUFFLED_2D]
        assert result.lattice.origin[0] == pytest.approx(min(xs))
        assert result.lattice.origin[1] == pytest.approx(min(ys))

    def test_point_permutation_invariance(self):
        base = approximate_axis(point_set(PAIRED_2D), 1e-3)
        permuted = [PAIRED_2D[i] for i in (3, 0, 5, 2, 4, 1)]
        other = approximate_axis(point_set(permuted), 1e-3)
        for i in range(2):
            assert other.per_axis[i].spacing == pytest.approx(
                base.per_axis[i].spacing, rel=1e-9
            )
        assert other.report.norm_max == pytest.approx(base.report.norm_max, rel=1e-9)
        assert other.report.norm_l2 == pytest.approx(base.report.norm_l2, rel=1e-9)

    def test_axes_match_standalone_runs(self):
        result = approximate_axis(point_set(PAIRED_2D), 1e-3)
        for axis in range(2):
            standalone = approximate_1d([p[axis] for p in PAIRED_2D], 1e-3)
            assert result.per_axis[axis] == standalone.best

    def test_delta_is_geometric_mean(self):
        result = approximate_axis(point_set(PAIRED_2D), 1e-3)
        expected = (result.per_axis[0].spacing * result.per_axis[1].spacing) ** 0.5
        assert result.report.delta == pytest.approx(expected, rel=1e-12)

    def test_per_axis_eps(self):
        result = approximate_axis(point_set(PAIRED_2D), (1e-3, 1e-2))
        assert result.per_axis[0].spacing == pytest.approx(0.4943, abs=1e-4)

    def test_eps_count_mismatch(self):
        with pytest.raises(DegenerateInput):
            approximate_axis(point_set(PAIRED_2D), (1e-3, 1e-3, 1e-3))

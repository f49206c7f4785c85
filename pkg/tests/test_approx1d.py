import math

import pytest

from latfit import (
    DegenerateInput,
    Matrix,
    NoCandidate,
    Vector,
    approximate_1d,
    build_embedding_1d,
    extract_candidates_1d,
    guaranteed_norm_bound,
    normalize_1d,
    quality_floor,
    rational_approx_certificate,
)
from latfit.lll import ReductionResult

from datasets import NEAR_GRID_1D, ROOTS_1D


class TestNormalize:
    def test_near_grid(self):
        nz = normalize_1d(NEAR_GRID_1D)
        expected = (0.0, 0.0695, 0.2057, 0.2818, 0.5030, 1.0)
        for got, want in zip(nz.normalized, expected):
            assert got == pytest.approx(want, abs=5e-5)
        assert nz.origin == pytest.approx(0.814258)
        assert nz.scale == pytest.approx(6.919584)

    def test_roots(self):
        nz = normalize_1d(ROOTS_1D)
        expected = (0.0, 0.4804, 0.6202, 0.7338, 0.9199, 1.0)
        for got, want in zip(nz.normalized, expected):
            assert got == pytest.approx(want, abs=5e-5)

    def test_already_normalized(self):
        nz = normalize_1d((0.0, 0.5, 1.0))
        assert nz.normalized == (0.0, 0.5, 1.0)
        assert nz.order == (0, 1, 2)

    def test_unsorted_input_tracks_order(self):
        values = (4.295116, 0.814258, 7.733842)
        nz = normalize_1d(values)
        assert nz.order == (1, 0, 2)
        assert nz.normalized[0] == 0.0
        assert nz.normalized[-1] == 1.0

    def test_degenerate(self):
        with pytest.raises(DegenerateInput):
            normalize_1d((1.0, 1.0, 1.0))
        with pytest.raises(DegenerateInput):
            normalize_1d((1.0, 2.0))


class TestEmbedding:
    def test_near_grid_matrix(self):
        nz = normalize_1d(NEAR_GRID_1D)
        m = build_embedding_1d(nz, 1e-3)
        assert m.nrows == m.ncols == 5
        for i in range(4):
            assert m[i] == tuple(1.0 if j == i else 0.0 for j in range(5))
        assert m[4][:4] == nz.normalized[1:-1]
        assert m[4][4] == pytest.approx(1e-3)

    def test_smallest_case(self):
        nz = normalize_1d((0.0, 0.5, 1.0))
        m = build_embedding_1d(nz, 0.01)
        assert m.entries == ((1.0, 0.0), (0.5, 0.01))

    def test_eps_range(self):
        nz = normalize_1d((0.0, 0.5, 1.0))
        with pytest.raises(DegenerateInput):
            build_embedding_1d(nz, 0.0)
        with pytest.raises(DegenerateInput):
            build_embedding_1d(nz, 1.0)


def fake_reduction(rows):
    transform = Matrix(rows)
    return ReductionResult(reduced=transform, transform=transform, shortest_norm=1.0)


class TestExtract:
    def test_negative_last_entry(self):
        nz = normalize_1d(NEAR_GRID_1D)
        rr = fake_reduction([(1, 3, 4, 7, -14)])
        (cand,) = extract_candidates_1d(rr, nz)
        assert cand.numerators == (0, 1, 3, 4, 7, 14)
        assert cand.denominator == 14

    def test_positive_last_entry(self):
        nz = normalize_1d(NEAR_GRID_1D)
        rr = fake_reduction([(-9, -27, -37, -66, 131)])
        (cand,) = extract_candidates_1d(rr, nz)
        assert cand.numerators == (0, 9, 27, 37, 66, 131)
        assert cand.denominator == 131

    def test_zero_last_entry_skipped(self):
        nz = normalize_1d(NEAR_GRID_1D)
        rr = fake_reduction([(5, 0, 0, 0, 0), (1, 3, 4, 7, -14)])
        cands = extract_candidates_1d(rr, nz)
        assert [c.denominator for c in cands] == [14]

    def test_no_candidate(self):
        nz = normalize_1d(NEAR_GRID_1D)
        rr = fake_reduction([(1, 0, 0, 0, 0), (0, 1, 0, 0, 0)])
        with pytest.raises(NoCandidate):
            extract_candidates_1d(rr, nz)


class TestPipeline:
    def test_near_grid_small_eps(self):
        result = approximate_1d(NEAR_GRID_1D, 1e-3)
        assert result.best.denominator == 14
        assert result.best.norm_max == pytest.approx(0.2316, abs=1e-3)
        denominators = {c.denominator: c for c in result.candidates}
        assert denominators[131].norm_max == pytest.approx(0.3423, abs=1e-3)

    def test_near_grid_larger_eps(self):
        result = approximate_1d(NEAR_GRID_1D, 1e-2)
        assert min(c.norm_max for c in result.candidates) <= 0.2316 + 1e-3

    def test_roots_small_eps(self):
        result = approximate_1d(ROOTS_1D, 1e-3)
        denominators = {c.denominator: c for c in result.candidates}
        assert 150 in denominators
        assert denominators[150].norm_max <= 0.2447 + 1e-3

    def test_roots_larger_eps(self):
        result = approximate_1d(ROOTS_1D, 1e-2)
        assert min(c.norm_max for c in result.candidates) <= 0.6036 + 1e-3

    def test_candidates_sorted(self):
        result = approximate_1d(NEAR_GRID_1D, 1e-3)
        norms = [c.norm_max for c in result.candidates]
        assert norms == sorted(norms)
        assert result.candidates[0] == result.best

    def test_l2_selection(self):
        result = approximate_1d(NEAR_GRID_1D, 1e-3, norm_choice="l2")
        norms = [c.norm_l2 for c in result.candidates]
        assert norms == sorted(norms)

    def test_round_trip_rescore(self):
        # Candidate norms must match a fresh scoring from the raw values.
        from latfit import AffineLattice, point_set, score

        result = approximate_1d(NEAR_GRID_1D, 1e-3)
        best = result.best
        lat = AffineLattice(
            Vector((result.normalized.origin,)), (Vector((best.spacing,)),)
        )
        report = score(point_set([(v,) for v in NEAR_GRID_1D]), lat)
        assert report.norm_max == pytest.approx(best.norm_max, rel=1e-9)
        assert report.norm_l2 == pytest.approx(best.norm_l2, rel=1e-9)

    def test_sign_convention(self):
        # |p_i - q * normalized_i| equals the reduced-row residual entrywise.
        result = approximate_1d(ROOTS_1D, 1e-3)
        nz = result.normalized
        transform = result.reduction.transform
        embedding = build_embedding_1d(nz, result.eps)
        product = transform @ embedding
        for row_idx, row in enumerate(transform.entries):
            last = row[-1]
            if last == 0:
                continue
            q = abs(last)
            sign = 1 if last < 0 else -1
            for i in range(len(row) - 1):
                p_i = sign * row[i]
                lhs = abs(p_i - q * nz.normalized[i + 1])
                rhs = abs(product[row_idx][i])
                assert lhs == pytest.approx(rhs, abs=1e-8)

    def test_unsorted_input(self):
        shuffled = (2.764132, 7.733842, 0.814258, 4.295116, 1.294837, 2.237840)
        result = approximate_1d(shuffled, 1e-3)
        assert result.best.denominator == 14


class TestBound:
    def test_values(self):
        assert guaranteed_norm_bound(6) == pytest.approx(2.3784, abs=1e-4)
        assert guaranteed_norm_bound(5) == pytest.approx(2.0)
        assert guaranteed_norm_bound(3) == pytest.approx(math.sqrt(2.0))

    def test_envelope_smoke(self, np_rng):
        for _ in range(10):
            k = int(np_rng.integers(4, 11))
            values = np_rng.uniform(0.0, 1.0, size=k)
            best = None
            for eps in (1e-2, 1e-3, 1e-4, 1e-5, 1e-6):
                result = approximate_1d(values.tolist(), eps)
                if best is None or result.best.norm_max < best:
                    best = result.best.norm_max
            assert best < guaranteed_norm_bound(k)


class TestCertificates:
    def test_near_grid_denominator(self):
        cert = rational_approx_certificate(NEAR_GRID_1D, 0.4943, 0.814258)
        assert cert.denominator == 14
        assert cert.bound_ok

    def test_exact_lattice(self):
        k = 6
        values = [i / (k - 1) for i in range(k)]
        cert = rational_approx_certificate(values, 1.0 / (k - 1), 0.0)
        assert cert.max_frac_distance == pytest.approx(0.0, abs=1e-12)
        assert cert.bound_ok

    def test_roots_denominator(self):
        cert = rational_approx_certificate(ROOTS_1D, 0.0240, 0.0)
        assert cert.denominator == 150
        assert cert.bound_ok

    def test_floor_vanishes_with_eps(self):
        floor_small = quality_floor(0.18, 1e-9, 6)
        floor_large = quality_floor(0.18, 1e-3, 6)
        assert floor_small.spacing_threshold < floor_large.spacing_threshold
        assert floor_small.spacing_threshold == pytest.approx(0.0, abs=1e-6)

    def test_floor_reference_values(self):
        floor = quality_floor(0.1804, 1e-3, 6, denominators=(150,), pipeline_denominator=150)
        assert floor.spacing_threshold == pytest.approx(0.0543, abs=1e-4)
        q, value = floor.floors[0]
        assert q == 150
        assert value == pytest.approx(1.23e-4, rel=1e-2)
        assert floor.achieved_bound == pytest.approx(0.1804 / 150, rel=1e-12)

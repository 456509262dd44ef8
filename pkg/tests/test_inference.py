import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import hypersub as hs
from hypersub import config
from hypersub.inference import (covariance_from_values,
                                default_subsample_size, result_record)


def test_covariance_of_identical_values_is_zero():
    assert np.all(covariance_from_values(np.ones((10, 2)), 7) == 0)


def test_covariance_of_two_subsamples():
    # b (a - c)^2 / 4 with one statistic and two subsamples.
    assert covariance_from_values([3.0, 1.0], 10)[0, 0] == pytest.approx(10.0)


@given(st.lists(st.floats(-100, 100), min_size=2, max_size=20),
       st.floats(0.1, 10))
def test_covariance_scales_quadratically(values, c):
    base = covariance_from_values(values, 5)[0, 0]
    scaled = covariance_from_values([c * x for x in values], 5)[0, 0]
    assert scaled == pytest.approx(c * c * base, rel=1e-9, abs=1e-9)


def test_covariance_is_symmetric_psd():
    rng = np.random.default_rng(0)
    matrix = covariance_from_values(rng.normal(size=(50, 3)), 4)
    assert np.array_equal(matrix, matrix.T)
    assert np.all(np.linalg.eigvalsh(matrix) >= -1e-12)


def test_default_subsample_size():
    assert default_subsample_size(1000, 1.5) == 217
    with pytest.warns(UserWarning):
        assert default_subsample_size(10, 0.1, r_max=2) == 2
    with pytest.raises(hs.SubsampleError):
        default_subsample_size(1, 1.5)


def test_config_defaults_come_from_the_configuration_file(config_home):
    with open(config._get_config_file(), "a") as f:
        f.write("[subsampling]\nC = 2.0\nsubsamples = 30\n")
    cfg = hs.subsample_config(1000)
    assert cfg.b == int(math.floor(2.0 * 1000 / math.log(1000)))
    assert cfg.n_subsamples == 30
    assert cfg.exponent == 1.1


def test_config_validation():
    with pytest.raises(hs.SubsampleError):
        hs.subsample_config(10, b=11, n_subsamples=10)
    with pytest.raises(hs.SubsampleError):
        hs.subsample_config(10, b=5, n_subsamples=1)
    cfg = hs.subsample_config(10, b=5, n_subsamples=10)
    assert cfg.C is None


def test_normal_ci():
    ci = hs.normal_ci(10.0, 4.0, 100, level=0.95)
    assert ci.lo == pytest.approx(9.608, abs=1e-3)
    assert ci.hi == pytest.approx(10.392, abs=1e-3)
    assert ci.se == pytest.approx(0.2)

    degenerate = hs.normal_ci(10.0, 0.0, 100)
    assert degenerate.lo == degenerate.hi == 10.0

    wide = hs.normal_ci(0.0, 1.0, 1, level=0.999999)
    assert math.isfinite(wide.lo) and math.isfinite(wide.hi)

    for level in (0.0, 1.0, 1.5):
        with pytest.raises(hs.SubsampleError):
            hs.normal_ci(0.0, 1.0, 1, level=level)


def test_ratio_ci():
    same = hs.ratio_ci((1.0, 0.0), (1.0, 0.0))
    assert (same.lo, same.hi) == (1.0, 1.0)

    ci = hs.ratio_ci((2.0, 0.04), (1.0, 0.01))
    assert ci.point == 2.0
    assert ci.lo == pytest.approx(1.4456, abs=1e-3)
    assert ci.hi == pytest.approx(2.5544, abs=1e-3)

    with pytest.raises(hs.UndefinedRatioError):
        hs.ratio_ci((1.0, 0.1), (0.0, 0.1))


def test_delta_ci_reduces_to_normal_ci():
    lam = np.array([[4.0, 1.0], [1.0, 2.0]])
    ci = hs.delta_ci([10.0, 3.0], lam, 100, func=lambda p: p[0],
                     gradient=lambda p: [1.0, 0.0])
    ref = hs.normal_ci(10.0, 4.0, 100)
    assert (ci.lo, ci.hi) == pytest.approx((ref.lo, ref.hi))


def test_subsample_covariance_is_reproducible(generated):
    stats = [hs.statistic('twostar2'), hs.statistic('triangle2')]
    cfg = hs.subsample_config(generated.m, 2, n_subsamples=20, seed=5)
    a = hs.subsample_covariance(generated, stats, cfg)
    b = hs.subsample_covariance(generated, stats, cfg)
    assert a.matrix.shape == (2, 2)
    assert np.array_equal(a.matrix, b.matrix)
    assert np.array_equal(a.matrix, a.matrix.T)
    assert a.statistics == ['twostar2', 'triangle2']
    assert a.values.shape == (20, 2)


def test_subsample_covariance_ignores_n_jobs(generated):
    stats = [hs.statistic('twostar2')]
    cfg = hs.subsample_config(generated.m, 2, n_subsamples=12, seed=2)
    serial = hs.subsample_covariance(generated, stats, cfg, n_jobs=1)
    parallel = hs.subsample_covariance(generated, stats, cfg, n_jobs=2)
    assert np.array_equal(serial.values, parallel.values)


def test_subsample_covariance_accepts_functions(generated):
    cfg = hs.subsample_config(generated.m, n_subsamples=10, seed=1)
    cov = hs.subsample_covariance(generated, [_pairs], cfg)
    assert cov.statistics == ['_pairs']


def _pairs(sample):
    return hs.unique_k_count(sample, 2)


def test_subsample_below_order(generated):
    cfg = hs.subsample_config(generated.m, b=2, n_subsamples=10)
    with pytest.raises(hs.SubsampleError):
        hs.subsample_covariance(generated, [hs.statistic('triangle3')], cfg)


def test_constant_statistic_warns():
    sample = hs.build_sample(["1 2 3"] * 20)
    cfg = hs.subsample_config(sample.m, 2, b=5, n_subsamples=10)
    with pytest.warns(UserWarning):
        cov = hs.subsample_covariance(sample, [hs.statistic('twostar2')], cfg)
    assert cov.matrix[0, 0] == 0


def test_infer(generated):
    stat = hs.statistic('twostar2')
    cfg = hs.subsample_config(generated.m, 2, n_subsamples=20, seed=3)
    est, cov, ci = hs.infer(generated, stat, cfg)
    assert ci.lo <= est.value <= ci.hi
    rec = result_record(est, cov, ci)
    assert rec['statistic'] == 'twostar2'
    assert rec['config']['N_sub'] == 20
    assert rec['ci'] == [ci.lo, ci.hi]


def test_clustering_ci(generated):
    cfg = hs.subsample_config(generated.m, 2, n_subsamples=20, seed=3)
    ci, cov = hs.clustering_ci(generated, cfg)
    assert ci.lo <= ci.point <= ci.hi
    assert ci.point == pytest.approx(hs.clustering_coefficient(generated))
    assert cov.matrix.shape == (2, 2)


@pytest.mark.slow
def test_subsampling_variance_matches_monte_carlo():
    model = hs.GeneratorModel(alpha=2.0, n_vertices=1000)
    stat = hs.statistic('twostar2')
    m = 1000
    values = []
    for k in range(200):
        sample = hs.generate(model, m, seed=np.random.SeedSequence([9, k]))
        design = hs.incomplete(seed=k, exponent=1.1)
        values.append(math.sqrt(m) * hs.evaluate(stat, sample, design).value)
    mc_var = np.var(values, ddof=1)

    sample = hs.generate(model, m, seed=np.random.SeedSequence([9, 0]))
    cfg = hs.subsample_config(m, 2, C=1.5, n_subsamples=1000, seed=0)
    lam = hs.subsample_covariance(sample, [stat], cfg).matrix[0, 0]
    assert mc_var / 2 <= lam <= 2 * mc_var


def test_filtered_subsamples_use_full_sample_degrees():
    # Every vertex has hyperdegree 45, so a threshold of 30 removes nothing
    # from the full sample even though it exceeds any subsample degree.
    sample = hs.build_sample(["1 2", "2 3", "1 3", "1 2 3"] * 15)
    cfg = hs.subsample_config(sample.m, 2, b=20, n_subsamples=50, seed=1,
                              exponent=None)
    plain = hs.subsample_covariance(sample, [hs.statistic('twostar2')], cfg)
    cut = hs.subsample_covariance(
        sample, [hs.statistic('twostar2', filter_d=30)], cfg)
    assert cut.statistics == ['twostar2(d=30)']
    assert np.array_equal(cut.values, plain.values)
    assert cut.matrix[0, 0] == plain.matrix[0, 0] > 0


def test_filtered_subsamples_drop_low_degree_vertices():
    sample = hs.build_sample(["1 2", "2 3", "1 3", "1 2 3"] * 15 + ["1 4"])
    cfg = hs.subsample_config(sample.m, 2, b=20, n_subsamples=30, seed=2,
                              exponent=None)
    cut = hs.subsample_covariance(
        sample, [hs.statistic('twostar2', filter_d=2),
                 hs.statistic('twostar2')], cfg)
    by_hand = hs.subsample_covariance(sample.filtered(2),
                                      [hs.statistic('twostar2')], cfg)
    assert np.array_equal(cut.values[:, 0], by_hand.values[:, 0])


def _binarized_clustering(sample):
    return hs.clustering_coefficient(sample, 'binarized')


def test_undefined_ratios_on_subsamples_are_left_out():
    # Only the two triples make two-stars; subsamples without one have no
    # binarized clustering coefficient.
    sample = hs.build_sample(["%d %d" % (2 * i, 2 * i + 1) for i in range(10)]
                             + ["100 101 102", "200 201 202"])
    cfg = hs.subsample_config(sample.m, 2, b=5, n_subsamples=40, seed=0,
                              exponent=None)
    with pytest.warns(UserWarning, match='undefined ratios'):
        cov = hs.subsample_covariance(
            sample, [_binarized_clustering, hs.statistic('twostar2')], cfg)
    col = cov.values[:, 0]
    assert np.isnan(col).any()
    assert set(col[~np.isnan(col)]) == {1.0}
    assert cov.matrix[0, 0] == 0.0
    assert cov.matrix[1, 1] == pytest.approx(
        covariance_from_values(cov.values[:, 1], cfg.b)[0, 0])


def test_covariance_with_too_few_defined_rows_is_nan():
    values = np.array([[1.0, 2.0], [np.nan, 3.0], [np.nan, 5.0]])
    matrix = covariance_from_values(values, 4)
    assert np.isnan(matrix[0, 0]) and np.isnan(matrix[0, 1])
    assert matrix[1, 1] == pytest.approx(4 * np.var([2.0, 3.0, 5.0]))


def _type2_clustering(sample):
    return hs.clustering_coefficient(sample, 'type2')


@pytest.mark.slow
def test_clustering_interval_matches_direct_ratio_subsampling():
    model = hs.GeneratorModel(alpha=2.0, n_vertices=1000)
    sample = hs.generate(model, 1000, seed=4)
    cfg = hs.subsample_config(sample.m, 2, C=1.5, n_subsamples=300, seed=6,
                              exponent=None)
    ci, _ = hs.clustering_ci(sample, cfg)
    direct = hs.subsample_covariance(sample, [_type2_clustering], cfg)
    direct_se = math.sqrt(direct.matrix[0, 0] / sample.m)
    assert ci.se == pytest.approx(direct_se, rel=0.2)

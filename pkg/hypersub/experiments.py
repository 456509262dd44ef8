"""
Simulation experiments: interval coverage, unbiasedness of incomplete
designs, stability of degree filtering and normality of unique-k counts.

Every replication `k` of an experiment with master seed `seed` draws its
sample from `SeedSequence([seed, k])`, so results do not depend on `n_jobs`.
"""
import math
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from scipy.stats import skew, kurtosis
from tqdm import tqdm

from .counting import evaluate, incomplete, complete, unique_k_count
from .generators import generate, ModelTruth
from .inference import (SubsampleError, subsample_covariance,
                        subsample_config, normal_ci)


COVERAGE_FIELDS = ['m', 'C', 'coverage', 'reps', 'seed']


def _rep_seed(seed, k):
    return np.random.SeedSequence([int(seed), int(k)])


def _int_seed(seed_seq):
    return int(seed_seq.generate_state(1, dtype=np.uint64)[0] >> 2)


def _truth_value(truth, stat):
    if isinstance(truth, ModelTruth):
        try:
            return truth.values[stat.label]
        except KeyError:
            raise ValueError("The truth has no value for `%s`; it has %s."
                             % (stat.label, sorted(truth.values)))
    return float(truth)


def _coverage_rep(model, m, stat, C_grid, level, seed, k, n_subsamples,
                  exponent, truth):
    ss = _rep_seed(seed, k)
    sample_ss, design_ss, sub_ss = ss.spawn(3)
    sample = generate(model, m, seed=sample_ss)
    design = incomplete(seed=_int_seed(design_ss), exponent=exponent)
    point = evaluate(stat, sample, design).value
    covered = []
    for C in C_grid:
        cfg = subsample_config(m, stat.r, C=C, n_subsamples=n_subsamples,
                               seed=_int_seed(sub_ss), exponent=exponent)
        cov = subsample_covariance(sample, [stat], cfg)
        ci = normal_ci(point, float(cov.matrix[0, 0]), m, level)
        covered.append(ci.lo <= truth <= ci.hi)
    return covered


def run_coverage_experiment(model, m, C_grid, reps, level=0.95, seed=0,
                            stat=None, truth=None, n_subsamples=1000,
                            exponent=1.1, n_jobs=1, verbose=False):
    """
    Empirical coverage of nominal `level` normal intervals.

    For every replication a sample of `m` hyperedges is generated, the
    statistic is estimated with `ceil(m**exponent)` random tuples, and for
    every `C` in `C_grid` its variance is estimated by subsampling with
    `b = C m / log m`. Each `C` reuses the same replicated samples.

    Parameters
    ----------
    model: GeneratorModel

    stat: Statistic

    truth: ModelTruth or float
        The parameter the intervals should cover.

    Returns
    -------
    rows: list of dict
        One row per `C` with keys `m`, `C`, `coverage`, `reps`, `seed`,
        `statistic` and `level`.
    """
    if reps < 1:
        raise ValueError("`reps` must be >= 1.")
    if stat is None or truth is None:
        raise ValueError("Both `stat` and `truth` are required.")
    for C in C_grid:
        b = int(math.floor(C * m / math.log(m)))
        if b < stat.r:
            raise SubsampleError("C=%g gives subsample size %d below the "
                                 "statistic order %d." % (C, b, stat.r))
    value = _truth_value(truth, stat)

    args = (model, m, stat, list(C_grid), level, seed)
    tail = (n_subsamples, exponent, value)
    pbar = tqdm(total=reps, disable=not verbose, desc='coverage m=%d' % m)
    results = []
    if n_jobs == 1:
        for k in range(reps):
            results.append(_coverage_rep(*args, k, *tail))
            pbar.update(1)
    else:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            futures = [pool.submit(_coverage_rep, *args, k, *tail)
                       for k in range(reps)]
            for fut in futures:
                results.append(fut.result())
                pbar.update(1)
    pbar.close()

    hits = np.array(results, dtype=bool).reshape(reps, len(C_grid))
    return [{'m': m, 'C': C, 'coverage': float(hits[:, i].mean()),
             'reps': reps, 'seed': seed, 'statistic': stat.label,
             'level': level}
            for i, C in enumerate(C_grid)]


UnbiasednessCheck = namedtuple('UnbiasednessCheck', ['complete', 'mean', 'se',
                                                     'z', 'n_seeds'])


def incomplete_unbiasedness(sample, stat, n_seeds=500, seed=0, exponent=1.1,
                            verbose=False):
    """
    Compare the mean of `n_seeds` incomplete estimates of `stat` on one
    sample with its complete estimate.

    Returns
    -------
    check: UnbiasednessCheck
        `z` is the difference of the two in Monte Carlo standard errors.
    """
    exact = evaluate(stat, sample, complete()).value
    values = np.empty(n_seeds)
    for k in tqdm(range(n_seeds), disable=not verbose, desc='designs'):
        design = incomplete(seed=_int_seed(_rep_seed(seed, k)),
                            exponent=exponent)
        values[k] = evaluate(stat, sample, design).value
    mean = float(values.mean())
    se = float(values.std(ddof=1) / math.sqrt(n_seeds))
    z = 0.0 if se == 0 else (mean - exact) / se
    return UnbiasednessCheck(complete=exact, mean=mean, se=se, z=z,
                             n_seeds=n_seeds)


def default_filter_level(m):
    """:math:`\\lfloor m / (4 \\log m) \\rfloor`."""
    return int(math.floor(m / (4 * math.log(m))))


def filter_stability_curve(model, stat, m_grid, reps, seed=0, d_rule=None,
                           exponent=1.5, verbose=False):
    """
    Mean of :math:`\\sqrt{m} |T - T_d|` over `reps` samples for every `m`
    in `m_grid`, both statistics averaged over the same random tuples.

    Parameters
    ----------
    d_rule: callable, default=:func:`default_filter_level`
        Maps `m` to the filter level `d`.

    Returns
    -------
    rows: list of dict
        Keys `m`, `d`, `mean_scaled_gap` and `reps`.
    """
    d_rule = default_filter_level if d_rule is None else d_rule
    base = stat._replace(filter_d=None)
    rows = []
    for m in m_grid:
        d = int(d_rule(m))
        gaps = np.empty(reps)
        for k in tqdm(range(reps), disable=not verbose, desc='m=%d' % m):
            ss = _rep_seed(seed, k)
            sample_ss, design_ss = ss.spawn(2)
            sample = generate(model, m, seed=sample_ss)
            design = incomplete(seed=_int_seed(design_ss), exponent=exponent)
            full = evaluate(base, sample, design).exact
            cut = evaluate(base._replace(filter_d=d), sample, design).exact
            gaps[k] = math.sqrt(m) * abs(float(full - cut))
        rows.append({'m': m, 'd': d, 'mean_scaled_gap': float(gaps.mean()),
                     'reps': reps})
    return rows


UniqueKMoments = namedtuple('UniqueKMoments', ['mean', 'sd', 'skewness',
                                               'excess_kurtosis', 'values'])


def unique_k_moments(model, m, k, reps, seed=0, verbose=False):
    """
    Moments of the unique `k`-set count over `reps` generated samples.
    Skewness and excess kurtosis are those of the standardized values.
    """
    values = np.empty(reps)
    for i in tqdm(range(reps), disable=not verbose, desc='unique-k'):
        values[i] = unique_k_count(generate(model, m, seed=_rep_seed(seed, i)),
                                   k)
    return UniqueKMoments(mean=float(values.mean()),
                          sd=float(values.std(ddof=1)) if reps > 1 else 0.0,
                          skewness=float(skew(values)),
                          excess_kurtosis=float(kurtosis(values, fisher=True)),
                          values=values)


SamplingDistributions = namedtuple('SamplingDistributions',
                                   ['sampling', 'subsampling', 'lambda_hat',
                                    'mc_variance'])


def sampling_distributions(model, stat, m, reps, C=1.5, n_subsamples=1000,
                           seed=0, exponent=1.1, verbose=False):
    """
    Standardized Monte Carlo distribution of :math:`\\sqrt{m} T` over
    `reps` samples, and the standardized subsampling distribution
    :math:`\\sqrt{b}(S_j - \\bar S)` of the first sample.

    Returns
    -------
    dists: SamplingDistributions
        `lambda_hat` is the subsampling estimate on the first sample and
        `mc_variance` the Monte Carlo variance of :math:`\\sqrt{m} T`.
    """
    scaled = np.empty(reps)
    first = None
    for k in tqdm(range(reps), disable=not verbose, desc='sampling'):
        sample_ss, design_ss = _rep_seed(seed, k).spawn(2)
        sample = generate(model, m, seed=sample_ss)
        design = incomplete(seed=_int_seed(design_ss), exponent=exponent)
        scaled[k] = math.sqrt(m) * evaluate(stat, sample, design).value
        if first is None:
            first = sample

    cfg = subsample_config(m, stat.r, C=C, n_subsamples=n_subsamples,
                           seed=seed, exponent=exponent)
    cov = subsample_covariance(first, [stat], cfg, verbose=verbose)
    sub = math.sqrt(cfg.b) * (cov.values[:, 0] - cov.values[:, 0].mean())
    lam = float(cov.matrix[0, 0])
    mc_var = float(scaled.var(ddof=1)) if reps > 1 else 0.0

    sampling = (scaled - scaled.mean()) / math.sqrt(mc_var) if mc_var > 0 \
        else np.zeros(reps)
    subsampling = sub / math.sqrt(lam) if lam > 0 else np.zeros_like(sub)
    return SamplingDistributions(sampling=sampling, subsampling=subsampling,
                                 lambda_hat=lam, mc_variance=mc_var)

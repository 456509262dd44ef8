"""
Subsampling covariance estimates and normal confidence intervals.

The covariance of :math:`\\sqrt{m}` times a vector of subgraph statistics
is estimated by recomputing the statistics on `N_sub` random subsamples of
`b` hyperedges,

.. math::

    \\hat\\Lambda = \\frac{b}{N_{sub}} \\sum_j (S_j - \\bar S)(S_j - \\bar S)^T,

and intervals use the normal approximation
:math:`\\hat T \\pm z \\sqrt{\\hat\\Lambda / m}`.
"""
import math
import warnings
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from scipy.special import ndtri
from tqdm import tqdm

from . import config
from .counting import (UndefinedRatioError, complete, evaluate, incomplete,
                       statistic)


class SubsampleError(ValueError):
    """Raised for an invalid subsampling configuration or interval level."""


SubsampleConfig = namedtuple('SubsampleConfig', ['b', 'n_subsamples', 'C',
                                                 'seed', 'exponent'])
SubsampleConfig.__doc__ = """
b: subsample size.
n_subsamples: number of subsamples `N_sub`.
C: multiplier in `b = C m / log m` (None when `b` was given directly).
seed: master seed; subsample `j` uses `SeedSequence([seed, j])`.
exponent: statistics on subsamples average over `ceil(b**exponent)` random
    tuples; None averages over all tuples.
"""

CovarianceEstimate = namedtuple('CovarianceEstimate', ['matrix', 'statistics',
                                                       'config', 'values'])
CovarianceEstimate.__doc__ = """
matrix: ndarray, shape=(p, p), the estimate of the covariance of the
    sqrt(m)-scaled statistics.
statistics: list of statistic labels, in matrix order.
config: the SubsampleConfig used.
values: ndarray, shape=(N_sub, p), the statistics on every subsample.
"""

ConfidenceInterval = namedtuple('ConfidenceInterval', ['lo', 'hi', 'level',
                                                       'point', 'se'])


def default_subsample_size(m, C, r_max=1):
    """:math:`\\max(r_{max}, \\lfloor C m / \\log m \\rfloor)`."""
    if m < 2:
        raise SubsampleError("Subsampling needs m >= 2, got %d." % m)
    b = int(math.floor(C * m / math.log(m)))
    if b < r_max:
        warnings.warn("Subsample size %d raised to the statistic order %d."
                      % (b, r_max))
        b = r_max
    return b


def subsample_config(m, r_max=1, C=None, n_subsamples=None, seed=0, b=None,
                     exponent='config'):
    """
    Build a :class:`SubsampleConfig` for a sample of size `m`. Missing
    values come from the `[subsampling]` section of the configuration file.

    Parameters
    ----------
    r_max: int, default=1
        Largest tuple length among the statistics; `b` is never below it.

    exponent: float or None, default from configuration
        None evaluates subsample statistics over all tuples.
    """
    if C is None:
        C = config.getfloat('subsampling', 'C')
    if n_subsamples is None:
        n_subsamples = config.getint('subsampling', 'subsamples')
    if exponent == 'config':
        exponent = config.getfloat('subsampling', 'exponent')
    if b is None:
        b = default_subsample_size(m, C, r_max)
    else:
        C = None
    cfg = SubsampleConfig(b=int(b), n_subsamples=int(n_subsamples), C=C,
                          seed=int(seed), exponent=exponent)
    _validate(cfg, m)
    return cfg


def _validate(cfg, m):
    if not 1 <= cfg.b <= m:
        raise SubsampleError("Subsample size must be in 1..m=%d, got %d."
                             % (m, cfg.b))
    if cfg.n_subsamples < 2:
        raise SubsampleError("At least 2 subsamples are needed, got %d."
                             % cfg.n_subsamples)


def covariance_from_values(values, b):
    """
    :math:`\\frac{b}{N}\\sum_j (S_j - \\bar S)(S_j - \\bar S)^T` for the
    `N x p` array `values`, made exactly symmetric.

    NaN entries (undefined ratios) are left out pairwise: entry `(i, k)`
    uses the rows where both statistics are defined, and is NaN when fewer
    than two such rows remain.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    defined = ~np.isnan(values)
    if defined.all():
        centered = values - values.mean(axis=0)
        matrix = b * (centered.T @ centered) / values.shape[0]
        return (matrix + matrix.T) / 2

    p = values.shape[1]
    matrix = np.full((p, p), np.nan)
    for i in range(p):
        for k in range(i, p):
            rows = defined[:, i] & defined[:, k]
            if rows.sum() < 2:
                continue
            x = values[rows, i] - values[rows, i].mean()
            y = values[rows, k] - values[rows, k].mean()
            matrix[i, k] = matrix[k, i] = b * float(x @ y) / rows.sum()
    return matrix


def _value(stat, sample, design):
    # Plain callables are functions of the whole sample.
    if callable(stat):
        return float(stat(sample))
    return evaluate(stat, sample, design).value


def _label(stat):
    if callable(stat):
        return stat.__name__
    return stat.label


def _subsample_views(sample, statistics):
    """
    The filtered samples the degree-filtered statistics subsample from,
    keyed by threshold, and the statistics to evaluate on each subsample.
    Filtering keeps `m` and uses the hyperdegrees of the full sample, so a
    filtered subsample is a subsample of the filtered sample.
    """
    filtered = {}
    views = []
    for stat in statistics:
        if callable(stat) or stat.filter_d is None:
            views.append((None, stat))
            continue
        d = stat.filter_d
        if d not in filtered:
            filtered[d] = sample.filtered(d)
        views.append((d, stat._replace(filter_d=None)))
    return filtered, views


def _subsample_task(sample, filtered, views, cfg, indices):
    out = np.empty((len(indices), len(views)))
    for row, j in enumerate(indices):
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, int(j)]))
        idx = rng.choice(sample.m, size=cfg.b, replace=False)
        subs = {None: sample.subsample(idx)}
        for d, fsample in filtered.items():
            subs[d] = fsample.subsample(idx)
        if cfg.exponent is None:
            design = complete()
        else:
            design = incomplete(seed=int(rng.integers(2**62)),
                                exponent=cfg.exponent)
        for col, (d, stat) in enumerate(views):
            try:
                out[row, col] = _value(stat, subs[d], design)
            except UndefinedRatioError:
                out[row, col] = np.nan
    return out


def subsample_covariance(sample, statistics, cfg, n_jobs=1, verbose=False):
    """
    Subsampling estimate of the covariance of :math:`\\sqrt{m}` times the
    vector of `statistics`.

    Each subsample is `cfg.b` hyperedges drawn without replacement; the
    subsamples are drawn independently of one another. The result does not
    depend on `n_jobs`.

    Parameters
    ----------
    sample: HypergraphSample

    statistics: list of Statistic or callable
        A callable maps a sample to a float and is evaluated as is.
        Degree filters use the hyperdegrees of `sample`, not those of the
        subsample. A subsample on which a statistic raises
        :class:`UndefinedRatioError` records NaN for it, with a warning.

    cfg: SubsampleConfig

    n_jobs: int, default=1
        Number of worker processes.

    verbose: bool, default=False
        Show a progress bar on stderr.

    Returns
    -------
    cov: CovarianceEstimate
    """
    _validate(cfg, sample.m)
    r_max = max(getattr(stat, 'r', 1) for stat in statistics)
    if cfg.b < r_max:
        raise SubsampleError("Subsample size %d is below the statistic order "
                             "%d." % (cfg.b, r_max))

    tasks = np.array_split(np.arange(cfg.n_subsamples),
                           min(cfg.n_subsamples, max(1, 4 * n_jobs)))
    filtered, views = _subsample_views(sample, statistics)
    pbar = tqdm(total=cfg.n_subsamples, disable=not verbose,
                desc='subsampling')
    if n_jobs == 1:
        parts = []
        for idx in tasks:
            parts.append(_subsample_task(sample, filtered, views, cfg, idx))
            pbar.update(len(idx))
    else:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            futures = [pool.submit(_subsample_task, sample, filtered,
                                   views, cfg, idx) for idx in tasks]
            parts = []
            for fut, idx in zip(futures, tasks):
                parts.append(fut.result())
                pbar.update(len(idx))
    pbar.close()

    values = np.vstack(parts)
    n_undefined = int(np.isnan(values).sum())
    if n_undefined:
        warnings.warn("%d subsample values are undefined ratios; they are "
                      "left out of the covariance estimate." % n_undefined)
    matrix = covariance_from_values(values, cfg.b)
    if not np.any(np.diag(matrix) > 0):
        warnings.warn("All subsample statistics are identical; the "
                      "covariance estimate is zero.")
    return CovarianceEstimate(matrix=matrix,
                              statistics=[_label(stat) for stat in statistics],
                              config=cfg, values=values)


def _z(level):
    if not 0 < level < 1:
        raise SubsampleError("`level` must be in (0, 1), got %s." % level)
    return float(ndtri((1 + level) / 2))


def normal_ci(point, lambda_hat, m, level=0.95):
    """
    :math:`\\hat T \\pm z_{(1+level)/2} \\sqrt{\\hat\\Lambda/m}`.

    Example
    -------
    An example::

        import hypersub as hs

        ci = hs.normal_ci(10.0, 4.0, 100, level=0.95)
        print(round(ci.lo, 3), round(ci.hi, 3))
        # => 9.608 10.392
    """
    z = _z(level)
    if lambda_hat < 0:
        raise ValueError("`lambda_hat` must be >= 0, got %s." % lambda_hat)
    se = math.sqrt(lambda_hat / m)
    return ConfidenceInterval(lo=point - z * se, hi=point + z * se,
                              level=level, point=point, se=se)


def ratio_ci(num, den, cov=0.0, level=0.95):
    """
    Delta-method interval for `A/B`.

    Parameters
    ----------
    num, den: (float, float)
        Point estimate and estimator variance of `A` and of `B`.

    cov: float, default=0.0
        Covariance of the two estimators; zero for independent networks.
    """
    a, var_a = num
    b, var_b = den
    if b == 0:
        raise UndefinedRatioError("The denominator estimate is zero.")
    if var_a < 0 or var_b < 0:
        raise ValueError("Variances must be >= 0.")
    z = _z(level)
    var = var_a / b**2 + a**2 * var_b / b**4 - 2 * a * cov / b**3
    se = math.sqrt(max(var, 0.0))
    ratio = a / b
    return ConfidenceInterval(lo=ratio - z * se, hi=ratio + z * se,
                              level=level, point=ratio, se=se)


def delta_ci(points, lambda_hat, m, func, gradient, level=0.95):
    """
    Normal interval for a smooth function of a vector of statistics, with
    the plug-in gradient.

    Parameters
    ----------
    points: sequence of float
        Point estimates of the statistics.

    lambda_hat: ndarray, shape=(p, p)
        Covariance estimate of the :math:`\\sqrt{m}`-scaled statistics.

    func: callable
        `func(points)` is the function value.

    gradient: callable
        `gradient(points)` is its gradient, shape `(p,)`.
    """
    points = np.asarray(points, dtype=float)
    g = np.asarray(gradient(points), dtype=float)
    var = float(g @ np.asarray(lambda_hat, dtype=float) @ g)
    return normal_ci(float(func(points)), max(var, 0.0), m, level)


def clustering_ci(sample, cfg, level=0.95, design=None, n_jobs=1,
                  verbose=False):
    """
    Interval for the Type 2 clustering coefficient of one network, with the
    covariance of numerator and denominator from subsampling.

    Returns
    -------
    ci, cov: ConfidenceInterval, CovarianceEstimate
    """
    stats = [statistic('triangle2'), statistic('twostar2')]
    num, den = (evaluate(s, sample, design).value for s in stats)
    if den == 0:
        raise UndefinedRatioError("No Type 2 two-stars in the sample.")
    cov = subsample_covariance(sample, stats, cfg, n_jobs=n_jobs,
                               verbose=verbose)
    ci = delta_ci([num, den], cov.matrix, sample.m,
                  func=lambda p: p[0] / p[1],
                  gradient=lambda p: [1 / p[1], -p[0] / p[1]**2],
                  level=level)
    return ci, cov


def result_record(estimate, cov, ci, index=0):
    """
    The JSON-ready result of one statistic: keys `statistic`, `pattern`,
    `m`, `estimate`, `lambda_hat`, `ci`, `level` and `config`.
    """
    cfg = cov.config
    return {
        'statistic': cov.statistics[index],
        'pattern': estimate.pattern,
        'm': estimate.m,
        'estimate': estimate.value,
        'lambda_hat': float(cov.matrix[index, index]),
        'ci': [ci.lo, ci.hi],
        'level': ci.level,
        'config': {'b': cfg.b, 'N_sub': cfg.n_subsamples, 'C': cfg.C,
                   'seed': cfg.seed},
    }


def infer(sample, stat, cfg, level=0.95, design=None, n_jobs=1,
          verbose=False):
    """
    Point estimate, subsampling covariance and normal interval of one
    statistic.

    Returns
    -------
    estimate, cov, ci: Estimate, CovarianceEstimate, ConfidenceInterval
    """
    estimate = evaluate(stat, sample, design)
    cov = subsample_covariance(sample, [stat], cfg, n_jobs=n_jobs,
                               verbose=verbose)
    ci = normal_ci(estimate.value, float(cov.matrix[0, 0]), sample.m, level)
    return estimate, cov, ci

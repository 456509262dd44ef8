import numpy as np
import matplotlib.pyplot as plt
from scipy.stats import gaussian_kde, norm

from .Hypergraph import hyperdegrees


def distribution_plot(dists, ax=None, show=False, bins=200):
    """
    Overlay the standardized sampling and subsampling distributions with
    the standard normal density.

    Parameters
    ----------
    dists: SamplingDistributions
        As returned by :func:`hypersub.experiments.sampling_distributions`.

    ax: matplotlib axes, default=None
        A new figure is made if not given.

    show: bool, default=False
        Call `plt.show()` before returning.

    Returns
    -------
    fig, ax

    Example
    -------
    An example::

        import hypersub as hs
        from hypersub.experiments import sampling_distributions
        from hypersub.utils import distribution_plot

        model = hs.GeneratorModel(alpha=2.0, n_vertices=1000)
        dists = sampling_distributions(model, hs.statistic('twostar2'),
                                       m=500, reps=200, seed=1)
        fig, ax = distribution_plot(dists, show=True)
    """
    if ax is None:
        fig, ax = plt.subplots(1, 1, figsize=(5, 4))
    else:
        fig = ax.figure

    grid = np.linspace(-4, 4, bins)
    ax.plot(grid, norm.pdf(grid), '-k', lw=1, label='N(0,1)')

    for values, style, label in ((dists.sampling, '-b', 'sampling'),
                                 (dists.subsampling, '--r', 'subsampling')):
        values = np.asarray(values, dtype=float)
        if values.size > 1 and values.std() > 0:
            ax.plot(grid, gaussian_kde(values)(grid), style, lw=1.5,
                    label=label)

    ax.set_xlim(grid[0], grid[-1])
    ax.set_xlabel('standardized value')
    ax.set_ylabel('density')
    ax.legend()

    if show:
        plt.show()
    return fig, ax


def degree_plot(sample, ax=None, show=False):
    """
    Log-log plot of the number of vertices against hyperdegree.

    Returns
    -------
    fig, ax
    """
    if ax is None:
        fig, ax = plt.subplots(1, 1, figsize=(5, 4))
    else:
        fig = ax.figure

    degrees = hyperdegrees(sample).degrees
    degrees = degrees[degrees > 0]
    values, counts = np.unique(degrees, return_counts=True)
    ax.loglog(values, counts, 'o', ms=3)
    ax.set_xlabel('hyperdegree')
    ax.set_ylabel('number of vertices')
    ax.set_title('m = %d, n = %d' % (sample.m, sample.n_vertices))

    if show:
        plt.show()
    return fig, ax

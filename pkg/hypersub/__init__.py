"""
This python module computes subgraph statistics of samples of hyperedges
(papers and their authors, movies and their casts) and quantifies their
uncertainty.

The hyperedges of a sample are treated as exchangeable draws. A small
colored pattern is counted across tuples of hyperedges, the position of a
hyperedge being its color, and the counts are averaged into a U-statistic.
Colorless, total-copy, degree-filtered and binarized variants are also
available. Variances come from subsampling, and intervals from the normal
approximation.

Results can be kept in an sqlite store through three ORM models:

:class:`EstimateRecord`, :class:`CoverageRecord`, and :class:`TruthRecord`

For more information, see the modules themselves.
"""
__version__ = '0.1.0'

# Hidden stuff.
from sqlalchemy import create_engine as _create_engine
from sqlalchemy.orm import sessionmaker as _sessionmaker

from . import config as _config
from ._Base import Base as _DeclBase

_engine  = None
_session = None


def open_store(path=None):
    """
    Open (creating if needed) the sqlite results store at `path`, or at the
    configured `[store] path` when `path` is None.
    """
    global _engine, _session
    path = _config.store_path() if path is None else path
    _engine  = _create_engine('sqlite:///' + path)
    _DeclBase.metadata.create_all(_engine)
    _session = _sessionmaker(bind=_engine)()
    return _session


def _get_session():
    if _session is None:
        open_store()
    return _session


# Public stuff.
from .Hypergraph import (HypergraphSample, DegreeIndex, SampleError,
                         build_sample, read_hyperedges, write_hyperedges,
                         hyperdegrees, binarize)
from .Pattern import (ColoredPattern, PatternStats, PatternError,
                      builtin_pattern, colorless_pattern, load_pattern,
                      structure_stats, with_overrides, quoted_stats)
from .counting import (Design, Estimate, Statistic, DesignError,
                       UndefinedRatioError, complete, incomplete,
                       colored_kernel, colorless_kernel, estimate_colored,
                       estimate_colorless, estimate_degree_filtered,
                       total_copies, unique_k_count, binarized_count,
                       binarized_density, clustering_coefficient, statistic,
                       evaluate)
from .inference import (SubsampleConfig, CovarianceEstimate,
                        ConfidenceInterval, SubsampleError, subsample_config,
                        subsample_covariance, normal_ci, ratio_ci, delta_ci,
                        clustering_ci, infer)
from .generators import (GeneratorModel, ModelTruth, GeneratorError,
                         cardinality_pmf, generate, calibrate_truth,
                         finite_vertex_model)
from .stability import (StabilityError, beta_exponent, triangle_exponent,
                        stability_report)
from .oracle import OracleCapError, brute_force_count
from .Result import EstimateRecord, CoverageRecord, TruthRecord


def query(*args):
    """
    Wraps the sqlalchemy session object of the results store. Some example
    usage::

        import hypersub as hs

        recs = hs.query(hs.CoverageRecord).filter(hs.CoverageRecord.m == 500)
        print(recs.count())
        # => 3

        truth = hs.query(hs.TruthRecord).first()
        print(truth.statistic, truth.calibration_m)
        # => twostar2 1000000
    """
    return _get_session().query(*args)


def save(*records):
    """Add `records` to the results store and commit."""
    session = _get_session()
    session.add_all(records)
    session.commit()

import json
import datetime

import sqlalchemy as sq
from sqlalchemy.orm import relationship
from ._Base import Base
from .counting import resolve_n_tuples


class EstimateRecord(Base):
    """
    A stored point estimate, optionally with its subsampling interval.

    Attributes
    ----------
    statistic: str
        Statistic label, e.g. `twostar2` or `triangle(r=3)`.

    pattern: str
        Pattern label.

    source: str
        Where the sample came from (a file path or a model description).

    m: int
        Sample size.

    value: float
        The estimate.

    exact: str
        The exact rational value, e.g. `2/3`.

    design: str
        `complete` or `incomplete`.

    n_tuples, seed: int
        Number of tuples and seed of an incomplete design.

    filter_d: int
        Degree threshold, if any.

    lambda_hat, ci_lo, ci_hi, level, b, n_subsamples, C, subsample_seed:
        Inference results, if the estimate came with an interval.

    Example
    -------
    Stored estimates are queried like any other model::

        import hypersub as hs

        recs = hs.query(hs.EstimateRecord).filter(
                    hs.EstimateRecord.statistic == 'twostar2',
                    hs.EstimateRecord.m >= 500)
        for rec in recs:
            print(rec.source, rec.value, rec.ci)
    """
    __tablename__  = 'estimates'
    id             = sq.Column('id', sq.Integer, primary_key=True)
    statistic      = sq.Column('statistic', sq.String)
    pattern        = sq.Column('pattern', sq.String)
    source         = sq.Column('source', sq.String)
    m              = sq.Column('m', sq.Integer)
    value          = sq.Column('value', sq.Float)
    exact          = sq.Column('exact', sq.String)
    design         = sq.Column('design', sq.String)
    n_tuples       = sq.Column('n_tuples', sq.Integer)
    seed           = sq.Column('seed', sq.Integer)
    filter_d       = sq.Column('filter_d', sq.Integer)
    lambda_hat     = sq.Column('lambda_hat', sq.Float)
    ci_lo          = sq.Column('ci_lo', sq.Float)
    ci_hi          = sq.Column('ci_hi', sq.Float)
    level          = sq.Column('level', sq.Float)
    b              = sq.Column('b', sq.Integer)
    n_subsamples   = sq.Column('n_subsamples', sq.Integer)
    C              = sq.Column('C', sq.Float)
    subsample_seed = sq.Column('subsample_seed', sq.Integer)
    created        = sq.Column('created', sq.DateTime,
                               default=datetime.datetime.utcnow)

    def __repr__(self):
        return "EstimateRecord(id=%s,statistic=%s,m=%s,value=%s)" % \
               (self.id, self.statistic, self.m, self.value)

    @property
    def ci(self):
        """`(lo, hi)` or None."""
        if self.ci_lo is None:
            return None
        return (self.ci_lo, self.ci_hi)

    @classmethod
    def from_estimate(cls, estimate, source=None, cov=None, ci=None,
                      index=0, label=None):
        """
        Build a record from an :class:`hypersub.Estimate`, with the
        :class:`hypersub.CovarianceEstimate` and interval if given.
        """
        design = estimate.design
        rec = cls(statistic=label or estimate.pattern,
                  pattern=estimate.pattern, source=source, m=estimate.m,
                  value=estimate.value, exact=str(estimate.exact),
                  design=design.kind, seed=design.seed,
                  filter_d=estimate.filter_d)
        if design.kind == 'incomplete':
            rec.n_tuples = resolve_n_tuples(design, estimate.m)
        if cov is not None:
            cfg = cov.config
            rec.statistic = cov.statistics[index]
            rec.lambda_hat = float(cov.matrix[index, index])
            rec.b = cfg.b
            rec.n_subsamples = cfg.n_subsamples
            rec.C = cfg.C
            rec.subsample_seed = cfg.seed
        if ci is not None:
            rec.ci_lo, rec.ci_hi, rec.level = ci.lo, ci.hi, ci.level
        return rec


class TruthRecord(Base):
    """
    A plug-in parameter value of one statistic under a generator model,
    from a calibration run.

    Attributes
    ----------
    statistic: str

    value: float

    calibration_m: int

    seed: int

    model: str
        The generator model as JSON.
    """
    __tablename__ = 'truths'
    id            = sq.Column('id', sq.Integer, primary_key=True)
    statistic     = sq.Column('statistic', sq.String)
    value         = sq.Column('value', sq.Float)
    calibration_m = sq.Column('calibration_m', sq.Integer)
    seed          = sq.Column('seed', sq.Integer)
    model         = sq.Column('model', sq.String)

    def __repr__(self):
        return "TruthRecord(id=%s,statistic=%s,value=%s)" % \
               (self.id, self.statistic, self.value)

    @property
    def model_dict(self):
        return json.loads(self.model)

    @classmethod
    def from_truth(cls, truth):
        """One record per statistic of a :class:`hypersub.ModelTruth`."""
        model = json.dumps(truth.model, sort_keys=True)
        return [cls(statistic=label, value=value,
                    calibration_m=truth.calibration_m, seed=truth.seed,
                    model=model)
                for label, value in sorted(truth.values.items())]


class CoverageRecord(Base):
    """
    One cell of a coverage experiment: the fraction of `reps` nominal
    `level` intervals that covered the calibrated truth.

    Attributes
    ----------
    statistic: str

    m: int

    C: float

    coverage: float

    reps: int

    seed: int

    level: float

    truth: TruthRecord
        The truth the intervals were checked against, when it is stored.
    """
    __tablename__ = 'coverage'
    id            = sq.Column('id', sq.Integer, primary_key=True)
    truth_id      = sq.Column(sq.Integer, sq.ForeignKey('truths.id'))
    truth         = relationship('TruthRecord', back_populates='coverage')
    statistic     = sq.Column('statistic', sq.String)
    m             = sq.Column('m', sq.Integer)
    C             = sq.Column('C', sq.Float)
    coverage      = sq.Column('coverage', sq.Float)
    reps          = sq.Column('reps', sq.Integer)
    seed          = sq.Column('seed', sq.Integer)
    level         = sq.Column('level', sq.Float)

    def __repr__(self):
        return "CoverageRecord(statistic=%s,m=%s,C=%s,coverage=%s)" % \
               (self.statistic, self.m, self.C, self.coverage)

    @classmethod
    def from_row(cls, row, truth=None):
        """Build a record from a row of a coverage table."""
        return cls(statistic=row['statistic'], m=row['m'], C=row['C'],
                   coverage=row['coverage'], reps=row['reps'],
                   seed=row['seed'], level=row['level'], truth=truth)


# Add the relationship to the TruthRecord model.
TruthRecord.coverage = relationship('CoverageRecord',
                                    order_by=CoverageRecord.id,
                                    back_populates='truth')

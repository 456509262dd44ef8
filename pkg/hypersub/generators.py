"""
Exchangeable hyperedge models for simulation.

A :class:`GeneratorModel` draws i.i.d. hyperedges: a cardinality from a
distribution on `{2, 3, ...}`, then that many distinct vertices by
successive weighted draws, each proportional to the weights of the
vertices not yet chosen.
"""
import io
import json
import warnings
from collections import namedtuple

import numpy as np
import scipy.sparse as sp
from scipy.stats import poisson
from tqdm import tqdm

from .Hypergraph import HypergraphSample
from .counting import evaluate, incomplete


class GeneratorError(ValueError):
    """Raised for an invalid generator model."""


DEFAULT_CARDINALITY = 'poisson6_trunc2'
MAX_CARDINALITY = 60
POISSON_RATE = 6


def cardinality_pmf(n):
    """
    :math:`P(|h| = n) \\propto 6^n/n!` for `n >= 2`, normalized over the
    whole tail (the constant is :math:`e^6 - 7`).

    Example
    -------
    An example::

        import hypersub as hs

        print(round(hs.cardinality_pmf(2), 5))
        # => 0.0454
    """
    if n < 2:
        raise GeneratorError("The cardinality law is supported on n >= 2, "
                             "got %s." % n)
    return float(poisson.pmf(n, POISSON_RATE) / poisson.sf(1, POISSON_RATE))


class GeneratorModel(object):
    """
    Parameters
    ----------
    alpha: float, default=2.0
        Vertex `j = 1, ..., n_vertices` has weight :math:`j^{-\\alpha}`.
        `alpha=0` gives uniform weights.

    n_vertices: int, default=1000

    cardinality: str or dict, default='poisson6_trunc2'
        Either 'poisson6_trunc2' (:func:`cardinality_pmf`, truncated at
        `min(60, n_vertices)`) or `{"pmf": [p_0, p_1, ...]}` where `p_n` is
        the probability of cardinality `n`.

    seed: int, default=None
        Seed used by :func:`generate` when none is passed.

    weights: sequence of float, default=None
        Explicit vertex weights, overriding `alpha`.

    Example
    -------
    An example::

        import hypersub as hs

        model = hs.GeneratorModel(alpha=2.0, n_vertices=1000, seed=7)
        sample = hs.generate(model, 500)
        print(sample.m)
        # => 500
    """
    def __init__(self, alpha=2.0, n_vertices=1000,
                 cardinality=DEFAULT_CARDINALITY, seed=None, weights=None):
        n_vertices = int(n_vertices)
        if n_vertices < 2:
            raise GeneratorError("`n_vertices` must be >= 2.")
        self.alpha = float(alpha)
        self.n_vertices = n_vertices
        self.cardinality = cardinality
        self.seed = seed

        if weights is None:
            weights = np.arange(1, n_vertices + 1, dtype=float) ** -self.alpha
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (n_vertices,):
            raise GeneratorError("Expected %d weights, got shape %s."
                                 % (n_vertices, weights.shape))
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
            raise GeneratorError("Vertex weights must be finite and > 0.")
        self.weights = weights

        self.support, self.pmf = self._cardinality_law(cardinality)

    def __repr__(self):
        return "GeneratorModel(alpha=%g,n_vertices=%d)" % (self.alpha,
                                                           self.n_vertices)

    @property
    def probabilities(self):
        """Normalized vertex appearance weights."""
        return self.weights / self.weights.sum()

    def _cardinality_law(self, cardinality):
        if cardinality == DEFAULT_CARDINALITY:
            top = min(MAX_CARDINALITY, self.n_vertices)
            if top < MAX_CARDINALITY:
                msg = ("Cardinality law truncated at n_vertices={}; mass {:.3g} "
                       "above it is dropped.")
                warnings.warn(msg.format(self.n_vertices,
                                         float(poisson.sf(top, POISSON_RATE) /
                                               poisson.sf(1, POISSON_RATE))))
            support = np.arange(2, top + 1)
            pmf = np.array([cardinality_pmf(n) for n in support])
        elif isinstance(cardinality, dict) and 'pmf' in cardinality:
            probs = np.asarray(cardinality['pmf'], dtype=float)
            if probs.ndim != 1 or np.any(probs < 0) or probs.sum() <= 0:
                raise GeneratorError("`pmf` must be a nonnegative list with "
                                     "positive total.")
            support = np.flatnonzero(probs)
            if support.max() > self.n_vertices:
                raise GeneratorError("Cardinality support reaches %d but there "
                                     "are only %d vertices."
                                     % (support.max(), self.n_vertices))
            pmf = probs[support]
        else:
            raise GeneratorError("Unknown cardinality law `%s`." % (cardinality,))
        return support, pmf / pmf.sum()

    def to_dict(self):
        return {'alpha': self.alpha, 'n_vertices': self.n_vertices,
                'cardinality': self.cardinality, 'seed': self.seed}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, obj):
        return cls(alpha=obj.get('alpha', 2.0),
                   n_vertices=obj.get('n_vertices', 1000),
                   cardinality=obj.get('cardinality', DEFAULT_CARDINALITY),
                   seed=obj.get('seed'))

    @classmethod
    def from_json(cls, text):
        """
        Parse the model JSON `{"alpha": float, "n_vertices": int,
        "cardinality": "poisson6_trunc2" | {"pmf": [...]}, "seed": int}`.
        """
        try:
            return cls.from_dict(json.loads(text))
        except (TypeError, AttributeError, json.JSONDecodeError) as e:
            raise GeneratorError("Malformed model JSON: %s" % e)


def load_model(path):
    with io.open(path, 'r', encoding='utf-8') as f:
        return GeneratorModel.from_json(f.read())


def _successive_draws(rng, p, k, rows):
    """
    `rows` independent ordered draws of `k` distinct indices, each index
    chosen with probability proportional to `p` among those left.

    Repeats of an already chosen index are discarded, which is the same as
    renormalizing over the remaining indices.
    """
    out = np.empty((rows, k), dtype=np.int64)
    if rows == 0 or k == 0:
        return out
    width = 3 * k
    cand = rng.choice(len(p), size=(rows, width), p=p)

    # First occurrences, in draw order.
    order = np.argsort(cand, axis=1, kind='stable')
    srt = np.take_along_axis(cand, order, axis=1)
    first_sorted = np.ones_like(srt, dtype=bool)
    first_sorted[:, 1:] = srt[:, 1:] != srt[:, :-1]
    first = np.zeros_like(first_sorted)
    np.put_along_axis(first, order, first_sorted, axis=1)
    rank = np.cumsum(first, axis=1)

    done = rank[:, -1] >= k
    take = first & (rank <= k)
    out[done] = cand[done][take[done]].reshape(-1, k)

    for i in np.flatnonzero(~done):
        row = list(dict.fromkeys(cand[i].tolist()))[:k]
        while len(row) < k:
            j = int(rng.choice(len(p), p=p))
            if j not in row:
                row.append(j)
        out[i] = row
    return out


def generate(model, m, seed=None):
    """
    Draw `m` i.i.d. hyperedges from `model`.

    Parameters
    ----------
    model: GeneratorModel

    m: int

    seed: int or numpy.random.SeedSequence, default=None
        Falls back to `model.seed`.

    Returns
    -------
    sample: HypergraphSample
        Vertex labels are the 1-based vertex indices as strings.
    """
    if m < 0:
        raise GeneratorError("`m` must be >= 0.")
    seed = model.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    p = model.probabilities

    sizes = rng.choice(model.support, size=m, p=model.pmf).astype(np.int64)
    indptr = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(sizes, out=indptr[1:])
    flat = np.empty(indptr[-1], dtype=np.int64)
    for k in np.unique(sizes):
        rows = np.flatnonzero(sizes == k)
        draws = _successive_draws(rng, p, int(k), rows.size)
        flat[indptr[rows][:, None] + np.arange(k)] = draws

    # Dense ids in order of first appearance.
    used, first_at = np.unique(flat, return_index=True)
    used = used[np.argsort(first_at)]
    remap = np.empty(model.n_vertices, dtype=np.int64)
    remap[used] = np.arange(used.size)
    X = sp.csr_matrix((np.ones(flat.size, dtype=np.int32), remap[flat],
                       indptr), shape=(m, used.size))
    return HypergraphSample(X, [str(j + 1) for j in used])


ModelTruth = namedtuple('ModelTruth', ['values', 'calibration_m', 'seed',
                                       'model'])
ModelTruth.__doc__ = """
Plug-in parameter values from one large calibration sample.

values: dict, statistic label -> float.
calibration_m: number of hyperedges of the calibration sample.
seed: seed of the calibration sample and tuple draw.
model: dict form of the GeneratorModel.
"""


def calibrate_truth(model, statistics, calibration_m=10**6, seed=20240101,
                    verbose=False):
    """
    Approximate the parameters of `statistics` under `model` by an
    incomplete estimate on one generated sample of `calibration_m`
    hyperedges, averaging over `calibration_m` random tuples.

    Parameters
    ----------
    statistics: list of Statistic

    Returns
    -------
    truth: ModelTruth
    """
    sample = generate(model, calibration_m, seed=seed)
    design = incomplete(n_tuples=calibration_m, seed=seed)
    values = {}
    for stat in tqdm(statistics, disable=not verbose, desc='calibrating'):
        values[stat.label] = evaluate(stat, sample, design).value
    return ModelTruth(values=values, calibration_m=int(calibration_m),
                      seed=seed, model=model.to_dict())


def truth_to_json(truth):
    return json.dumps(truth._asdict(), sort_keys=True)


def truth_from_json(text):
    obj = json.loads(text)
    return ModelTruth(values=obj['values'], calibration_m=obj['calibration_m'],
                      seed=obj['seed'], model=obj['model'])


def inclusion_probability(p, j, k):
    """
    Exact probability that index `j` is among `k` successive weighted draws
    without replacement from weights `p`, by summation over ordered draws.
    Only practical for small `k`.
    """
    p = np.asarray(p, dtype=float)
    p = p / p.sum()
    total = 0.0

    def walk(chosen, mass_left, prob, depth):
        nonlocal total
        if depth == k:
            return
        for i in range(len(p)):
            if i in chosen:
                continue
            q = prob * p[i] / mass_left
            if i == j:
                total += q
            else:
                walk(chosen | {i}, mass_left - p[i], q, depth + 1)

    walk(frozenset(), 1.0, 1.0, 0)
    return total


def finite_vertex_model(n_vertices, cardinality=DEFAULT_CARDINALITY, seed=None):
    """Uniform vertex weights over a small vertex set."""
    return GeneratorModel(alpha=0.0, n_vertices=n_vertices,
                          cardinality=cardinality, seed=seed)
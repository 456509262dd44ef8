"""
Kernels and estimators for hypergraph subgraph frequencies.

Every kernel rests on one identity: an edge `{u, w}` lies in hyperedge
`h_c` exactly when both `u` and `w` do. Label the pattern edges by tuple
positions with a labeling `lam`; then a vertex `j` of the pattern must be
mapped into :math:`S_j = \\bigcap_{e \\ni j} h_{lam(e)}`, and the number of
injective maps with `x_j in S_j` is an inclusion-exclusion over the set
partitions of the pattern vertices of products of intersection sizes.
Summing over the admissible labelings and dividing by the number of
automorphisms of the pattern counts every colored subgraph once.

Colored kernels admit the labelings whose edge partition is an
automorphic image of the pattern's color classes, assigned bijectively to
the `r` positions. Colorless kernels admit every labeling.
"""
import math
import itertools
from fractions import Fraction
from collections import namedtuple

import numpy as np
import scipy.sparse as sp
import networkx as nx
from networkx.algorithms import isomorphism

from .Hypergraph import build_sample
from .Pattern import PatternError, builtin_pattern, builtin_specs


class DesignError(ValueError):
    """Raised when an estimator design cannot be applied to a sample."""


class UndefinedRatioError(ZeroDivisionError):
    """Raised when a ratio statistic has a zero denominator."""


MAX_LABELINGS = 200000
DEFAULT_EXPONENT = 1.1

Design = namedtuple('Design', ['kind', 'n_tuples', 'seed', 'exponent'])
Design.__doc__ = """
How the average over hyperedge tuples is taken.

kind: 'complete' or 'incomplete'.
n_tuples: number of tuples for incomplete designs; an int or 'auto'
    (`ceil(m**exponent)`).
seed: seed of the tuple draw for incomplete designs.
exponent: exponent used when `n_tuples` is 'auto'.
"""


def complete():
    """The complete design: all `C(m, r)` increasing tuples."""
    return Design('complete', None, None, None)


def incomplete(n_tuples='auto', seed=None, exponent=DEFAULT_EXPONENT):
    """
    An incomplete design averaging over `n_tuples` tuples drawn uniformly
    with replacement from the `C(m, r)` combinations.
    """
    if seed is None:
        raise DesignError("Incomplete designs need a `seed`.")
    if n_tuples != 'auto':
        n_tuples = int(n_tuples)
        if n_tuples < 1:
            raise DesignError("`n_tuples` must be >= 1, got %d." % n_tuples)
    return Design('incomplete', n_tuples, int(seed), float(exponent))


def resolve_n_tuples(design, m):
    """Number of tuples an incomplete `design` draws on a sample of size `m`."""
    if design.n_tuples == 'auto':
        return max(1, int(math.ceil(m ** design.exponent)))
    return design.n_tuples


Estimate = namedtuple('Estimate', ['value', 'exact', 'statistic', 'pattern',
                                   'design', 'filter_d', 'm', 'r'])
Estimate.__doc__ = """
Point value of a subgraph statistic with its provenance.

value: float.
exact: fractions.Fraction, the exact average (kernel total over the number
    of tuples).
statistic: 'colored', 'colorless', 'filtered', ...
pattern: pattern label.
design: the Design used.
filter_d: degree threshold or None.
m: sample size.
r: number of hyperedges per tuple.
"""


#####################################################################
# { Begin kernel plan

def _set_partitions(items):
    """Yield all set partitions of the list `items` as lists of lists."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k+1:]
        yield [[first]] + part


def _mobius(partition):
    """Mobius coefficient of a set partition against the finest one."""
    coef = 1
    for block in partition:
        size = len(block)
        coef *= (-1) ** (size - 1) * math.factorial(size - 1)
    return coef


class KernelPlan(object):
    """
    The labelings and inclusion-exclusion terms of one kernel.

    Parameters
    ----------
    pattern: ColoredPattern

    r: int
        Tuple length. For colored kernels this must equal `pattern.r`.

    colored: bool, default=True
        If False, the colorless kernel over `r` hyperedges is planned.
    """
    def __init__(self, pattern, r, colored=True):
        if pattern.e == 0:
            raise PatternError("Patterns without edges have no kernel.")
        if colored and r != pattern.r:
            raise PatternError("A colored kernel of %s takes %d hyperedges, "
                               "not %d." % (pattern, pattern.r, r))
        if r < 1:
            raise PatternError("`r` must be >= 1.")

        self.pattern = pattern
        self.r = r
        self.colored = colored
        self.n_automorphisms = len(pattern.automorphisms())

        if colored:
            labelings = self._colored_labelings(pattern)
        else:
            if r ** pattern.e > MAX_LABELINGS:
                raise PatternError("Colorless kernel of %s over %d hyperedges "
                                   "needs %d labelings (limit %d)."
                                   % (pattern, r, r ** pattern.e,
                                      MAX_LABELINGS))
            labelings = itertools.product(range(r), repeat=pattern.e)

        # Labelings that constrain the vertices identically share terms.
        weights = {}
        for lam in labelings:
            masks = [0] * pattern.v
            for (a, b), pos in zip(pattern.edges, lam):
                masks[a] |= 1 << pos
                masks[b] |= 1 << pos
            masks = tuple(masks)
            weights[masks] = weights.get(masks, 0) + 1

        partitions = [(p, _mobius(p))
                      for p in _set_partitions(list(range(pattern.v)))]

        # Collapse into {tuple of block masks: coefficient}.
        terms = {}
        for masks, weight in weights.items():
            for partition, mu in partitions:
                key = []
                for block in partition:
                    union = 0
                    for j in block:
                        union |= masks[j]
                    key.append(union)
                key = tuple(sorted(key))
                terms[key] = terms.get(key, 0) + weight * mu
        self.terms = [(k, c) for k, c in sorted(terms.items()) if c != 0]

    def __repr__(self):
        kind = 'colored' if self.colored else 'colorless'
        return "KernelPlan(%s,%s,r=%d,terms=%d)" % (self.pattern, kind,
                                                    self.r, len(self.terms))

    @staticmethod
    def _colored_labelings(pattern):
        r = pattern.r
        for partition in sorted(pattern.partition_orbit(),
                                key=lambda p: sorted(sorted(b) for b in p)):
            blocks = sorted(sorted(b) for b in partition)
            for positions in itertools.permutations(range(r)):
                lam = [0] * pattern.e
                for block, pos in zip(blocks, positions):
                    for k in block:
                        lam[k] = pos
                yield tuple(lam)

    def evaluate(self, incidence, tuples, universe):
        """
        Kernel values for a batch of tuples.

        Parameters
        ----------
        incidence: scipy.sparse.csr_matrix, shape=(m, n)

        tuples: ndarray of int, shape=(B, r)
            Row indices into `incidence`.

        universe: int
            Number of vertices an unconstrained pattern vertex may take.

        Returns
        -------
        values: ndarray of int64, shape=(B,)
            Of Python ints (dtype object) when the terms could exceed the
            int64 range.
        """
        tuples = np.asarray(tuples, dtype=np.int64).reshape(-1, self.r)
        sizes = _IntersectionSizes(incidence, tuples, universe)
        n = tuples.shape[0]
        if n == 0:
            return np.zeros(0, dtype=np.int64)

        bound = 0
        for key, coef in self.terms:
            term = abs(coef)
            for mask in key:
                term *= int(sizes[mask].max())
            bound += term
        dtype = np.int64 if bound < 2**62 else object

        total = np.zeros(n, dtype=dtype)
        for key, coef in self.terms:
            term = np.full(n, coef, dtype=dtype)
            for mask in key:
                term *= sizes[mask].astype(dtype)
            total += term
        if np.any(total % self.n_automorphisms):
            raise ArithmeticError("Kernel total not divisible by the "
                                  "automorphism count.")
        return total // self.n_automorphisms

# } End kernel plan
#####################################################################


class _IntersectionSizes(object):
    """
    Lazily computed :math:`|\\bigcap_{c \\in mask} h_{t_c}|` for every
    tuple `t` of a batch, keyed by bit mask over tuple positions.
    """
    def __init__(self, incidence, tuples, universe):
        self.incidence = incidence
        self.tuples = tuples
        self.universe = universe
        self._rows = {}
        self._products = {}
        self._sizes = {}

    def _row(self, pos):
        if pos not in self._rows:
            self._rows[pos] = self.incidence[self.tuples[:, pos]]
        return self._rows[pos]

    def _product(self, mask):
        if mask not in self._products:
            high = mask.bit_length() - 1
            rest = mask & ~(1 << high)
            if rest == 0:
                prod = self._row(high)
            else:
                prod = self._product(rest).multiply(self._row(high))
                prod = sp.csr_matrix(prod)
            self._products[mask] = prod
        return self._products[mask]

    def __getitem__(self, mask):
        if mask not in self._sizes:
            if mask == 0:
                size = np.full(self.tuples.shape[0], self.universe,
                               dtype=np.int64)
            else:
                prod = self._product(mask)
                size = np.asarray(prod.sum(axis=1)).ravel().astype(np.int64)
            self._sizes[mask] = size
        return self._sizes[mask]


_plans = {}


def kernel_plan(pattern, r=None, colored=True):
    """Cached :class:`KernelPlan` for `pattern`."""
    r = pattern.r if r is None else r
    key = (pattern.v, pattern.edges, pattern.colors, r, colored)
    if key not in _plans:
        _plans[key] = KernelPlan(pattern, r, colored=colored)
    return _plans[key]


#####################################################################
# { Begin tuple designs

def _combination_chunks(m, r, chunk_size):
    it = itertools.combinations(range(m), r)
    while True:
        block = list(itertools.islice(it, chunk_size))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(-1, r)


def draw_tuples(m, r, n_tuples, seed):
    """
    Draw `n_tuples` increasing `r`-tuples from `range(m)`, each uniform
    over the `C(m, r)` combinations, independently (with replacement).

    Parameters
    ----------
    seed: int or numpy.random.SeedSequence or numpy.random.Generator
    """
    if m < r:
        raise DesignError("Cannot draw %d-tuples from %d hyperedges." % (r, m))
    rng = np.random.default_rng(seed)
    tuples = rng.integers(0, m, size=(n_tuples, r))
    if r > 1:
        while True:
            srt = np.sort(tuples, axis=1)
            bad = np.any(srt[:, 1:] == srt[:, :-1], axis=1)
            if not bad.any():
                break
            tuples[bad] = rng.integers(0, m, size=(int(bad.sum()), r))
    return np.sort(tuples, axis=1)


def _kernel_total(plan, sample, design, chunk_size=20000):
    """Sum of kernel values over the design's tuples and their number."""
    m = sample.m
    r = plan.r
    X = sample.incidence
    universe = sample.n_observed
    if design is None or design.kind == 'complete':
        if m < r:
            raise DesignError("Complete design needs m >= r, got m=%d, r=%d."
                              % (m, r))
        total = 0
        for tuples in _combination_chunks(m, r, chunk_size):
            total += int(plan.evaluate(X, tuples, universe).sum())
        return total, math.comb(m, r)
    elif design.kind == 'incomplete':
        n = resolve_n_tuples(design, m)
        tuples = draw_tuples(m, r, n, design.seed)
        total = 0
        for start in range(0, n, chunk_size):
            block = tuples[start:start + chunk_size]
            total += int(plan.evaluate(X, block, universe).sum())
        return total, n
    raise DesignError("Unknown design kind `%s`." % (design.kind,))

# } End tuple designs
#####################################################################


def _estimate(plan, sample, design, kind, filter_d=None):
    total, count = _kernel_total(plan, sample, design)
    exact = Fraction(total, count)
    return Estimate(value=float(exact), exact=exact, statistic=kind,
                    pattern=plan.pattern.label,
                    design=design if design is not None else complete(),
                    filter_d=filter_d, m=sample.m, r=plan.r)


def _tuple_sample(tuple_edges):
    return build_sample([[str(v) for v in edge] for edge in tuple_edges])


def colored_kernel(pattern, tuple_edges):
    """
    The kernel :math:`C(h_{i_1}, \\ldots, h_{i_r}; H_\\mathfrak{C})`: the
    number of simple colored subgraphs color isomorphic to `pattern` whose
    colors are exactly the `r` given hyperedges.

    Parameters
    ----------
    pattern: ColoredPattern

    tuple_edges: sequence of `r` iterables of vertices

    Example
    -------
    An example::

        import hypersub as hs

        tri3 = hs.builtin_pattern('triangle3')
        print(hs.colored_kernel(tri3, [{1, 2}, {2, 3}, {1, 3}]))
        # => 1
    """
    if len(tuple_edges) != pattern.r:
        raise PatternError("%s takes %d hyperedges, got %d."
                           % (pattern, pattern.r, len(tuple_edges)))
    sample = _tuple_sample(tuple_edges)
    plan = kernel_plan(pattern)
    tuples = np.arange(pattern.r).reshape(1, -1)
    return int(plan.evaluate(sample.incidence, tuples, sample.n_observed)[0])


def colorless_kernel(pattern, tuple_edges):
    """
    The colorless kernel over `len(tuple_edges)` hyperedges: the number of
    simple colored subgraphs using colors among the given hyperedges whose
    colorless restriction is isomorphic to `pattern`.
    """
    r = len(tuple_edges)
    sample = _tuple_sample(tuple_edges)
    plan = kernel_plan(pattern, r=r, colored=False)
    tuples = np.arange(r).reshape(1, -1)
    return int(plan.evaluate(sample.incidence, tuples, sample.n_observed)[0])


def estimate_colored(sample, pattern, design=None):
    """
    Colored subgraph frequency :math:`T(H_\\mathfrak{C})`: the average of
    :func:`colored_kernel` over hyperedge tuples.

    Parameters
    ----------
    sample: HypergraphSample

    pattern: ColoredPattern

    design: Design, default=None
        `None` or :func:`complete` averages over all `C(m, r)` tuples;
        :func:`incomplete` over a random draw.

    Returns
    -------
    estimate: Estimate

    Example
    -------
    An example::

        import hypersub as hs

        sample = hs.build_sample(["1 2 3", "1 2"])
        est = hs.estimate_colored(sample, hs.builtin_pattern('twostar2'))
        print(est.exact)
        # => 2
    """
    return _estimate(kernel_plan(pattern), sample, design, 'colored')


def estimate_colorless(sample, pattern, r, design=None):
    """
    Colorless frequency :math:`T(H; r)`: over `r`-tuples, the number of
    simple colored subgraphs on 1..r of the tuple's colors whose colorless
    restriction is isomorphic to `pattern`, averaged.
    """
    plan = kernel_plan(pattern, r=r, colored=False)
    return _estimate(plan, sample, design, 'colorless')


def estimate_degree_filtered(sample, pattern, d, design=None):
    """
    Degree-filtered colored frequency :math:`T_d(H_\\mathfrak{C})`: as
    :func:`estimate_colored`, counting only embeddings whose vertices all
    have hyperdegree at least `d` in `sample`.

    Note
    ----
    Restricting every vertex of an embedding to hyperdegree `>= d` is the
    same as deleting the low-degree vertices from every hyperedge while
    keeping `m` unchanged, which is how it is computed.
    """
    if d < 0:
        raise ValueError("`d` must be >= 0.")
    est = _estimate(kernel_plan(pattern), sample.filtered(d), design,
                    'filtered', filter_d=d)
    return est._replace(m=sample.m)


def estimate_colorless_filtered(sample, pattern, r, d, design=None):
    """Degree-filtered version of :func:`estimate_colorless`."""
    if d < 0:
        raise ValueError("`d` must be >= 0.")
    plan = kernel_plan(pattern, r=r, colored=False)
    return _estimate(plan, sample.filtered(d), design, 'colorless_filtered',
                     filter_d=d)


#####################################################################
# { Begin weighted subgraph counts on the pair graph

def _weighted_count(W, pattern):
    """
    Sum over the copies of `pattern` in the graph with (symmetric, zero
    diagonal) weight matrix `W` of the product of the copy's edge weights.
    """
    name = pattern.colorless().name
    W = sp.csr_matrix(W, dtype=np.int64)
    if name == 'triangle':
        return int((W @ W).multiply(W).sum()) // 6
    if name == 'twostar':
        strength = np.asarray(W.sum(axis=1)).ravel().astype(object)
        squares = np.asarray(W.multiply(W).sum(axis=1)).ravel().astype(object)
        return int(sum(strength * strength - squares)) // 2
    if name == 'edge':
        return int(W.sum()) // 2

    graph = nx.Graph()
    graph.add_nodes_from(range(W.shape[0]))
    coo = sp.triu(W, k=1).tocoo()
    graph.add_weighted_edges_from(zip(coo.row.tolist(), coo.col.tolist(),
                                      coo.data.tolist()))
    target = pattern.graph
    matcher = isomorphism.GraphMatcher(graph, target)
    total = 0
    for mapping in matcher.subgraph_monomorphisms_iter():
        inverse = {h: g for g, h in mapping.items()}
        weight = 1
        for a, b in pattern.edges:
            weight *= graph[inverse[a]][inverse[b]]['weight']
        total += weight
    return total // len(pattern.automorphisms())

# } End weighted subgraph counts
#####################################################################


def total_copies(sample, pattern):
    """
    Total number :math:`S(H)` of simple colored subgraphs of the sample's
    colored graph whose colorless restriction is isomorphic to `pattern`,
    over all color sets. Each copy of `pattern` in the binarized graph
    contributes the product of its edge multiplicities.

    Example
    -------
    An example::

        import hypersub as hs

        sample = hs.build_sample(["1 2 3", "1 2 3"])
        print(hs.total_copies(sample, hs.colorless_pattern('triangle')))
        # => 8
    """
    return _weighted_count(sample.multiplicity_matrix(), pattern)


def binarized_count(sample, pattern):
    """
    Without-multiplicity count :math:`\\widetilde{T}(H)`: the number of
    subgraphs of the binarized graph isomorphic to `pattern`, each copy
    counted once.
    """
    W = sample.multiplicity_matrix()
    A = sp.csr_matrix((W > 0).astype(np.int64))
    return _weighted_count(A, pattern)


def binarized_density(sample, pattern):
    """
    :func:`binarized_count` over the number of copies of `pattern` in the
    complete graph on the sample's observed vertices.
    """
    n = sample.n_observed
    v = pattern.v
    if n < v:
        raise UndefinedRatioError("Fewer than %d observed vertices." % v)
    possible = math.perm(n, v) // len(pattern.automorphisms())
    return binarized_count(sample, pattern) / possible


def unique_k_count(sample, k):
    """
    :math:`\\widetilde{T}_k`: the number of distinct vertex sets of
    cardinality exactly `k` that occur as a whole hyperedge.
    """
    if k < 1:
        raise ValueError("`k` must be >= 1.")
    return len(set(edge for edge in sample.edges if len(edge) == k))


def clustering_coefficient(sample, kind='type2', design=None):
    """
    Clustering coefficients.

    Parameters
    ----------
    kind: str, default='type2'
        'type2' is the Type 2 triangle frequency over the Type 2 two-star
        frequency, both under `design`. 'binarized' is three times the
        number of triangles over the number of two-stars of the binarized
        graph.

    Returns
    -------
    value: float
    """
    if kind == 'type2':
        num = estimate_colored(sample, builtin_pattern('triangle2'), design)
        den = estimate_colored(sample, builtin_pattern('twostar2'), design)
        if den.exact == 0:
            raise UndefinedRatioError("No Type 2 two-stars in the sample.")
        return float(num.exact / den.exact)
    elif kind == 'binarized':
        tri = binarized_count(sample, builtin_pattern('triangle'))
        two = binarized_count(sample, builtin_pattern('twostar'))
        if two == 0:
            raise UndefinedRatioError("No two-stars in the binarized graph.")
        return 3.0 * tri / two
    raise ValueError("`kind` should be 'type2' or 'binarized'.")


def binarized_twostar_density(sample):
    """Binarized two-star count over `n C(n-1, 2)`."""
    return binarized_density(sample, builtin_pattern('twostar'))


def binarized_clustering(sample):
    """`clustering_coefficient(sample, 'binarized')`."""
    return clustering_coefficient(sample, 'binarized')


class Statistic(namedtuple('Statistic', ['kind', 'pattern', 'r', 'filter_d'])):
    """
    A subgraph statistic that can be recomputed on any sample, as used by
    subsampling, calibration and the experiments.

    kind: 'colored' or 'colorless'.
    pattern: ColoredPattern.
    r: tuple length (the pattern's `r` for colored statistics).
    filter_d: degree threshold or None.
    """
    __slots__ = ()

    @property
    def label(self):
        label = self.pattern.label
        if self.kind == 'colorless':
            label += '(r=%d)' % self.r
        if self.filter_d is not None:
            label += '(d=%d)' % self.filter_d
        return label


def statistic(name, r=None, filter_d=None):
    """
    Build a :class:`Statistic` from a built-in pattern name. Colored names
    (`twostar2`, ...) give colored statistics; colorless names (`triangle`,
    `twostar`, `edge`) give colorless statistics over `r` hyperedges.

    Example
    -------
    An example::

        import hypersub as hs

        print(hs.statistic('triangle', r=3).label)
        # => triangle(r=3)
    """
    pattern = builtin_pattern(name)
    if name in builtin_specs:
        if r is not None and r != pattern.r:
            raise PatternError("%s is colored with r=%d; got r=%s."
                               % (name, pattern.r, r))
        return Statistic('colored', pattern, pattern.r, filter_d)
    if r is None:
        raise PatternError("Colorless statistic `%s` needs `r`." % name)
    return Statistic('colorless', pattern, int(r), filter_d)


def evaluate(stat, sample, design=None):
    """Evaluate the :class:`Statistic` `stat` on `sample`."""
    if stat.kind == 'colored':
        if stat.filter_d is None:
            return estimate_colored(sample, stat.pattern, design)
        return estimate_degree_filtered(sample, stat.pattern, stat.filter_d,
                                        design)
    if stat.filter_d is None:
        return estimate_colorless(sample, stat.pattern, stat.r, design)
    return estimate_colorless_filtered(sample, stat.pattern, stat.r,
                                       stat.filter_d, design)

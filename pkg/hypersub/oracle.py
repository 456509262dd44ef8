"""
Brute-force reference counts, enumerated straight from the definitions.

Nothing here is shared with :mod:`hypersub.counting`: colored subgraphs
are built explicitly as a vertex set with a set of `(edge, color)` pairs
and deduplicated, so the two implementations can be checked against each
other on small samples. Only exact integer and rational arithmetic is used.
"""
import itertools
from fractions import Fraction
from math import comb

from .Hypergraph import HypergraphSample


class OracleCapError(ValueError):
    """Raised when an input is too large for exhaustive enumeration."""


MAX_M = 8
MAX_VERTICES = 10
MAX_PATTERN_VERTICES = 4

MODES = ('colored_kernel', 'colored_complete', 'colorless', 'total_copies',
         'degree_filtered', 'unique_k', 'binarized')


def _as_edges(sample):
    if isinstance(sample, HypergraphSample):
        return [frozenset(e) for e in sample.edges]
    return [frozenset(e) for e in sample]


def _check_caps(edges, pattern):
    vertices = set().union(*edges) if edges else set()
    if len(edges) > MAX_M:
        raise OracleCapError("Oracle handles m <= %d, got %d."
                             % (MAX_M, len(edges)))
    if len(vertices) > MAX_VERTICES:
        raise OracleCapError("Oracle handles at most %d vertices, got %d."
                             % (MAX_VERTICES, len(vertices)))
    if pattern is not None and pattern.v > MAX_PATTERN_VERTICES:
        raise OracleCapError("Oracle handles patterns with v <= %d, got %d."
                             % (MAX_PATTERN_VERTICES, pattern.v))
    return sorted(vertices)


def _colored_copies(tuple_edges, pattern, vertices):
    """Distinct colored subgraphs color isomorphic to `pattern` whose
    colors are exactly the positions of `tuple_edges`."""
    r = pattern.r
    found = set()
    for sigma in itertools.permutations(vertices, pattern.v):
        for pi in itertools.permutations(range(r)):
            copy = []
            for (a, b), c in zip(pattern.edges, pattern.colors):
                pair = frozenset((sigma[a], sigma[b]))
                pos = pi[c]
                if not pair <= tuple_edges[pos]:
                    break
                copy.append((pair, pos))
            else:
                found.add((frozenset(sigma), frozenset(copy)))
    return len(found)


def _any_color_copies(colors_of, pattern, vertices):
    """
    Distinct colored subgraphs whose colorless restriction is isomorphic
    to `pattern`. `colors_of(pair)` lists the colors that may label `pair`.
    """
    found = set()
    for sigma in itertools.permutations(vertices, pattern.v):
        choices = []
        for a, b in pattern.edges:
            pair = frozenset((sigma[a], sigma[b]))
            options = colors_of(pair)
            if not options:
                break
            choices.append([(pair, c) for c in options])
        else:
            for copy in itertools.product(*choices):
                found.add((frozenset(sigma), frozenset(copy)))
    return len(found)


def _average(edges, r, kernel):
    m = len(edges)
    if m < r:
        raise ValueError("Need m >= r, got m=%d, r=%d." % (m, r))
    total = 0
    for idx in itertools.combinations(range(m), r):
        total += kernel([edges[i] for i in idx])
    return Fraction(total, comb(m, r))


def brute_force_count(sample, pattern=None, mode='colored_complete', r=None,
                      d=None, k=None):
    """
    Exhaustive reference value of a subgraph statistic.

    Parameters
    ----------
    sample: HypergraphSample or sequence of vertex sets
        For `mode='colored_kernel'` the sample IS the tuple, so its length
        must be `pattern.r`.

    pattern: ColoredPattern
        Not used by `unique_k`.

    mode: str
        One of 'colored_kernel', 'colored_complete', 'colorless',
        'total_copies', 'degree_filtered', 'unique_k', 'binarized'.

    r: int
        Tuple length for 'colorless'.

    d: int
        Degree threshold for 'degree_filtered'.

    k: int
        Cardinality for 'unique_k'.

    Returns
    -------
    value: int or fractions.Fraction
        Averages over tuples are Fractions, counts are ints.
    """
    if mode not in MODES:
        raise ValueError("Unknown mode `%s`." % mode)
    edges = _as_edges(sample)
    vertices = _check_caps(edges, pattern if mode != 'unique_k' else None)
    if not edges:
        return 0 if mode in ('colored_kernel', 'total_copies', 'unique_k',
                             'binarized') else Fraction(0)

    if mode == 'unique_k':
        if k is None or k < 1:
            raise ValueError("`k` must be >= 1.")
        present = set(edges)
        return sum(1 for s in itertools.combinations(vertices, k)
                   if frozenset(s) in present)

    if mode == 'colored_kernel':
        if len(edges) != pattern.r:
            raise ValueError("The kernel takes %d hyperedges, got %d."
                             % (pattern.r, len(edges)))
        return _colored_copies(edges, pattern, vertices)

    if mode == 'colored_complete':
        return _average(edges, pattern.r,
                        lambda t: _colored_copies(t, pattern, vertices))

    if mode == 'degree_filtered':
        if d is None or d < 0:
            raise ValueError("`d` must be >= 0.")
        degree = {j: sum(1 for e in edges if j in e) for j in vertices}
        kept = [j for j in vertices if degree[j] >= d]
        return _average(edges, pattern.r,
                        lambda t: _colored_copies(t, pattern, kept))

    if mode == 'colorless':
        if r is None or r < 1:
            raise ValueError("`r` must be >= 1.")

        def kernel(t):
            return _any_color_copies(
                lambda pair: [c for c in range(r) if pair <= t[c]],
                pattern, vertices)
        return _average(edges, r, kernel)

    if mode == 'total_copies':
        return _any_color_copies(
            lambda pair: [c for c in range(len(edges)) if pair <= edges[c]],
            pattern, vertices)

    # binarized
    adjacent = set()
    for e in edges:
        for pair in itertools.combinations(sorted(e), 2):
            adjacent.add(frozenset(pair))
    found = set()
    for sigma in itertools.permutations(vertices, pattern.v):
        image = frozenset(frozenset((sigma[a], sigma[b]))
                          for a, b in pattern.edges)
        if image <= adjacent:
            found.add((frozenset(sigma), image))
    return len(found)

from fractions import Fraction
from math import comb, perm

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import hypersub as hs
from hypersub.counting import draw_tuples, kernel_plan


small_sets = st.sets(st.integers(0, 7), min_size=0, max_size=6)
samples = st.lists(st.sets(st.integers(0, 8), min_size=1, max_size=5),
                   min_size=2, max_size=7)


def _sample(edges):
    return hs.build_sample([[str(v) for v in e] for e in edges])


def _exact(name, edges, design=None):
    return hs.estimate_colored(_sample(edges), hs.builtin_pattern(name),
                               design).exact


#####################################################################
# Kernels

def test_type3_triangle_kernel():
    tri3 = hs.builtin_pattern('triangle3')
    assert hs.colored_kernel(tri3, [{1, 2}, {2, 3}, {1, 3}]) == 1
    assert hs.colored_kernel(tri3, [{1, 2}, {2, 3}, {3, 4}]) == 0


def test_type1_triangle_kernel_on_a_four_set():
    assert hs.colored_kernel(hs.builtin_pattern('triangle1'),
                             [{1, 2, 3, 4}]) == 4


def test_disjoint_two_star_kernel():
    assert hs.colored_kernel(hs.builtin_pattern('twostar2'),
                             [{1, 2}, {3, 4}]) == 0


def test_kernel_beyond_int64_is_exact():
    # One edge and four isolated vertices on a 2000-set: about 6e19
    # embeddings before dividing by the 48 automorphisms.
    pattern = hs.ColoredPattern(6, [(0, 1)])
    value = hs.colored_kernel(pattern, [range(2000)])
    assert value == perm(2000, 6) // 48
    assert value > 2**63 // 48


def test_kernel_wrong_tuple_length():
    with pytest.raises(hs.PatternError):
        hs.colored_kernel(hs.builtin_pattern('twostar2'), [{1, 2}])


@given(small_sets, small_sets)
def test_two_star_kernel_closed_form(A, B):
    a, b, k = len(A), len(B), len(A & B)
    expected = k * ((a - 1) * (b - 1) - (k - 1)) if k else 0
    assert hs.colored_kernel(hs.builtin_pattern('twostar2'),
                             [A, B]) == expected


@given(small_sets, small_sets)
def test_type2_triangle_kernel_closed_form(A, B):
    a, b, k = len(A), len(B), len(A & B)
    expected = comb(k, 2) * (a + b - 4) if k >= 2 else 0
    assert hs.colored_kernel(hs.builtin_pattern('triangle2'),
                             [A, B]) == expected


@given(small_sets)
def test_single_color_kernels_closed_form(A):
    s = len(A)
    assert hs.colored_kernel(hs.builtin_pattern('triangle1'), [A]) == comb(s, 3)
    assert hs.colored_kernel(hs.builtin_pattern('twostar1'), [A]) == \
        3 * comb(s, 3)


@given(small_sets, small_sets, small_sets)
@settings(max_examples=50)
def test_type3_triangle_kernel_closed_form(A, B, C):
    # Choose one vertex in each pairwise intersection, all distinct.
    p, q, r = len(A & B), len(B & C), len(A & C)
    t = len(A & B & C)
    assert hs.colored_kernel(hs.builtin_pattern('triangle3'),
                             [A, B, C]) == p*q*r - t*(p + q + r) + 2*t


def test_colorless_kernel():
    tri = hs.colorless_pattern('triangle')
    assert hs.colorless_kernel(tri, [{1, 2, 3}, {1, 2}]) == 2
    assert hs.colorless_kernel(tri, [{1, 2}]) == 0


def test_plan_caches():
    p = hs.builtin_pattern('twostar2')
    assert kernel_plan(p) is kernel_plan(p)
    assert kernel_plan(p).terms


def test_colorless_labeling_cap():
    with pytest.raises(hs.PatternError):
        kernel_plan(hs.colorless_pattern('triangle'), r=100, colored=False)


#####################################################################
# Estimators

def test_two_star_on_nested_pair():
    sample = hs.build_sample(["1 2 3", "1 2"])
    est = hs.estimate_colored(sample, hs.builtin_pattern('twostar2'))
    assert est.exact == 2
    assert est.value == 2.0
    assert est.m == 2
    assert est.design.kind == 'complete'


def test_type2_triangle_on_nested_pair():
    assert _exact('triangle2', [{1, 2}, {1, 2, 3}]) == 1


def test_type1_triangle_average():
    assert _exact('triangle1', [{1, 2, 3}] * 3) == 1


def test_complete_design_needs_m_at_least_r():
    with pytest.raises(hs.DesignError):
        _exact('triangle3', [{1, 2}, {2, 3}])


def test_colorless_estimate():
    sample = hs.build_sample(["1 2 3", "1 2"])
    est = hs.estimate_colorless(sample, hs.colorless_pattern('triangle'), 2)
    assert est.exact == 2


def test_total_copies():
    tri = hs.colorless_pattern('triangle')
    assert hs.total_copies(hs.build_sample(["1 2 3"]), tri) == 1
    assert hs.total_copies(hs.build_sample(["1 2 3", "1 2 3"]), tri) == 8
    assert hs.total_copies(hs.build_sample(["1 2", "2 3"]), tri) == 0
    two = hs.colorless_pattern('twostar')
    # Three two-stars per triangle, each with 2*2 colorings.
    assert hs.total_copies(hs.build_sample(["1 2 3", "1 2 3"]), two) == 12


def test_degree_filtered_two_star():
    sample = hs.build_sample(["1 2", "1 2", "1 3"])
    two2 = hs.builtin_pattern('twostar2')
    assert hs.estimate_colored(sample, two2).exact == Fraction(2, 3)
    est = hs.estimate_degree_filtered(sample, two2, 2)
    assert est.exact == 0
    assert est.filter_d == 2
    assert est.m == 3


def test_degree_filter_zero_is_unfiltered(papers):
    for name in ('twostar2', 'triangle2', 'twostar1'):
        p = hs.builtin_pattern(name)
        assert hs.estimate_degree_filtered(papers, p, 0).exact == \
            hs.estimate_colored(papers, p).exact


def test_degree_filter_above_m_is_zero(papers):
    p = hs.builtin_pattern('twostar2')
    assert hs.estimate_degree_filtered(papers, p, papers.m + 1).exact == 0


@given(samples)
@settings(max_examples=40, deadline=None)
def test_degree_filter_is_monotone(edges):
    sample = _sample(edges)
    p = hs.builtin_pattern('twostar2')
    values = [hs.estimate_degree_filtered(sample, p, d).exact
              for d in range(0, 5)]
    assert all(x >= y for x, y in zip(values, values[1:]))


@given(samples, st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_complete_estimate_ignores_edge_order(edges, rnd):
    shuffled = list(edges)
    rnd.shuffle(shuffled)
    for name in ('twostar2', 'triangle2'):
        assert _exact(name, edges) == _exact(name, shuffled)


def test_unique_k_count(papers):
    assert hs.unique_k_count(papers, 2) == 2
    assert hs.unique_k_count(papers, 3) == 1
    assert hs.unique_k_count(papers, 4) == 0
    with pytest.raises(ValueError):
        hs.unique_k_count(papers, 0)


@given(samples, st.integers(1, 5))
def test_unique_k_at_most_edges_of_size_k(edges, k):
    sample = _sample(edges)
    assert hs.unique_k_count(sample, k) <= sum(1 for e in edges if len(e) == k)


def test_binarized_counts():
    tri = hs.colorless_pattern('triangle')
    assert hs.binarized_count(hs.build_sample(["1 2 3 4"]), tri) == 4
    assert hs.binarized_count(hs.build_sample(["1 2", "2 3", "1 3"]), tri) == 1
    assert hs.binarized_count(hs.build_sample(["1 2 3", "1 2 3"]), tri) == 1
    assert hs.binarized_count(hs.build_sample(["1 2"]),
                              hs.colorless_pattern('twostar')) == 0


def test_binarized_density():
    tri = hs.colorless_pattern('triangle')
    assert hs.binarized_density(hs.build_sample(["1 2 3"]), tri) == 1.0
    with pytest.raises(hs.UndefinedRatioError):
        hs.binarized_density(hs.build_sample(["1 2"]), tri)


def test_generic_weighted_count_matches_matcher():
    # A path on four vertices has no fast path and goes through the matcher.
    # Six of the twelve paths use the doubled pair.
    path = hs.ColoredPattern(4, [(0, 1), (1, 2), (2, 3)])
    sample = hs.build_sample(["1 2 3 4"])
    assert hs.binarized_count(sample, path) == 12
    assert hs.total_copies(hs.build_sample(["1 2 3 4", "1 2"]), path) == 12 + 6


def test_clustering():
    sample = hs.build_sample(["1 2 3", "1 2"])
    assert hs.clustering_coefficient(sample) == 0.5
    assert hs.clustering_coefficient(hs.build_sample(["1 2 3"]),
                                     'binarized') == 1.0
    with pytest.raises(hs.UndefinedRatioError):
        hs.clustering_coefficient(hs.build_sample(["1 2", "3 4"]))
    with pytest.raises(ValueError):
        hs.clustering_coefficient(sample, 'type9')


#####################################################################
# Designs

def test_incomplete_design_is_seeded(generated):
    p = hs.builtin_pattern('twostar2')
    a = hs.estimate_colored(generated, p, hs.incomplete(seed=3))
    b = hs.estimate_colored(generated, p, hs.incomplete(seed=3))
    assert a.exact == b.exact
    assert a.exact.denominator <= int(np.ceil(generated.m ** 1.1))


def test_incomplete_design_arguments():
    with pytest.raises(hs.DesignError):
        hs.incomplete()
    with pytest.raises(hs.DesignError):
        hs.incomplete(n_tuples=0, seed=1)
    assert hs.incomplete(n_tuples=5, seed=1).n_tuples == 5


def test_draw_tuples():
    tuples = draw_tuples(10, 3, 500, seed=4)
    assert tuples.shape == (500, 3)
    assert np.all(tuples[:, 1:] > tuples[:, :-1])
    assert np.array_equal(tuples, draw_tuples(10, 3, 500, seed=4))
    with pytest.raises(hs.DesignError):
        draw_tuples(2, 3, 1, seed=0)


def test_statistic_labels():
    assert hs.statistic('twostar2').label == 'twostar2'
    assert hs.statistic('triangle', r=3).label == 'triangle(r=3)'
    assert hs.statistic('twostar2', filter_d=2).label == 'twostar2(d=2)'
    with pytest.raises(hs.PatternError):
        hs.statistic('triangle')
    with pytest.raises(hs.PatternError):
        hs.statistic('twostar2', r=3)


def test_evaluate_dispatch():
    sample = hs.build_sample(["1 2", "1 2", "1 3"])
    assert hs.evaluate(hs.statistic('twostar2'), sample).exact == \
        Fraction(2, 3)
    assert hs.evaluate(hs.statistic('twostar2', filter_d=2), sample).exact == 0
    tri = hs.build_sample(["1 2 3", "1 2"])
    assert hs.evaluate(hs.statistic('triangle', r=2), tri).exact == 2


@given(st.lists(st.sets(st.integers(0, 5), min_size=2, max_size=2),
                min_size=1, max_size=8))
def test_unique_pairs_equal_edges_iff_distinct(edges):
    sample = _sample(edges)
    distinct = len(set(map(frozenset, edges))) == len(edges)
    assert (hs.unique_k_count(sample, 2) == len(edges)) == distinct

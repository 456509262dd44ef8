import pytest
from hypothesis import given, strategies as st

import hypersub as hs
from hypersub.Pattern import builtin_specs


def test_builtins():
    tri3 = hs.builtin_pattern('triangle3')
    assert (tri3.v, tri3.e, tri3.r) == (3, 3, 3)
    assert tri3.is_rainbow

    two2 = hs.builtin_pattern('twostar2')
    assert (two2.v, two2.e, two2.r) == (3, 2, 2)
    assert two2.is_rainbow

    assert hs.builtin_pattern('triangle1').r == 1
    assert sorted(hs.builtin_pattern('triangle2').class_sizes()) == [1, 2]
    assert hs.builtin_pattern('edge').v == 2


def test_unknown_pattern():
    with pytest.raises(hs.PatternError):
        hs.builtin_pattern('square')
    with pytest.raises(hs.PatternError):
        hs.colorless_pattern('triangle2')


@pytest.mark.parametrize('v,edges,colors', [
    (3, [(0, 0)], None),
    (3, [(0, 1), (1, 0)], None),
    (3, [(0, 3)], None),
    (7, [(0, 1)], None),
    (3, [(0, 1), (1, 2)], [0, 2]),
    (3, [(0, 1), (1, 2)], [0]),
])
def test_malformed_patterns(v, edges, colors):
    with pytest.raises(hs.PatternError):
        hs.ColoredPattern(v, edges, colors)


def test_color_isomorphism():
    p = hs.ColoredPattern(3, [(0, 1), (1, 2), (0, 2)], [1, 0, 1])
    assert p.is_color_isomorphic(hs.builtin_pattern('triangle2'))
    assert not p.is_color_isomorphic(hs.builtin_pattern('triangle3'))
    assert not p.is_color_isomorphic(hs.builtin_pattern('triangle1'))


@given(st.sampled_from(sorted(builtin_specs)), st.permutations([0, 1, 2]),
       st.permutations([0, 1, 2]))
def test_relabeling_preserves_canonical_form(name, perm, recolor):
    p = hs.builtin_pattern(name)
    edges = [(perm[a], perm[b]) for a, b in p.edges]
    # Renaming the color classes of a 3-colored pattern keeps it
    # color isomorphic; other patterns keep their colors.
    colors = [recolor[c] for c in p.colors] if p.r == 3 else p.colors
    q = hs.ColoredPattern(p.v, edges, colors)
    assert q.is_color_isomorphic(p)
    assert q.canonical_form() == p.canonical_form()


def test_automorphisms():
    assert len(hs.colorless_pattern('triangle').automorphisms()) == 6
    assert len(hs.colorless_pattern('twostar').automorphisms()) == 2
    assert len(hs.colorless_pattern('edge').automorphisms()) == 2


def test_partition_orbit():
    # The single edge of a Type 2 triangle's small class can be any edge.
    assert len(hs.builtin_pattern('triangle2').partition_orbit()) == 3
    assert len(hs.builtin_pattern('triangle3').partition_orbit()) == 1
    assert len(hs.builtin_pattern('twostar2').partition_orbit()) == 1


def test_json(tmp_path):
    p = hs.builtin_pattern('twostar2')
    q = hs.ColoredPattern.from_json(p.to_json())
    assert q == p

    path = tmp_path / 'p.json'
    path.write_text('{"v": 3, "edges": [[0, 1], [1, 2], [0, 2]]}')
    assert hs.load_pattern(str(path)).r == 1

    with pytest.raises(hs.PatternError):
        hs.ColoredPattern.from_json('{"edges": []}')
    with pytest.raises(hs.PatternError):
        hs.ColoredPattern.from_json('not json')


def test_structure_stats():
    tri = hs.structure_stats(hs.colorless_pattern('triangle'))
    assert tri.min_degree == 2
    assert tri.nk == (2, 3)

    two = hs.structure_stats(hs.colorless_pattern('twostar'))
    assert two.min_degree == 1
    assert two.nk == (2, 2)

    edge = hs.structure_stats(hs.colorless_pattern('edge'))
    assert edge.min_degree == 1
    assert edge.nk == (1,)


def test_quoted_stats():
    tri3 = hs.quoted_stats(hs.builtin_pattern('triangle3'))
    assert (tri3.min_degree, tri3.nk) == (2, (3, 3))
    two2 = hs.quoted_stats(hs.builtin_pattern('twostar2'))
    assert (two2.min_degree, two2.nk) == (2, (2, 2))
    # No quoted values: literal ones.
    tri1 = hs.quoted_stats(hs.builtin_pattern('triangle1'))
    assert tri1 == hs.structure_stats(hs.builtin_pattern('triangle1'))


def test_with_overrides():
    stats = hs.structure_stats(hs.colorless_pattern('triangle'))
    assert hs.with_overrides(stats, n1=5).nk == (5, 3)
    assert hs.with_overrides(stats, nk=[1, 1]).nk == (1, 1)
    assert hs.with_overrides(stats, min_degree=4).min_degree == 4

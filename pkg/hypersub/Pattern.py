import io
import json
import itertools
from collections import namedtuple

import networkx as nx
from networkx.algorithms import isomorphism


class PatternError(ValueError):
    """Raised for unknown or malformed subgraph patterns."""


MAX_VERTICES = 6
MAX_EDGES = 8

_off_limits = ['v', 'edges', 'colors', 'name']

_TRIANGLE = ((0, 1), (1, 2), (0, 2))
_TWOSTAR = ((0, 1), (1, 2))

# name -> (v, edges, colors)
builtin_specs = {
    'triangle1': (3, _TRIANGLE, (0, 0, 0)),
    'triangle2': (3, _TRIANGLE, (0, 1, 1)),
    'triangle3': (3, _TRIANGLE, (0, 1, 2)),
    'twostar1':  (3, _TWOSTAR, (0, 0)),
    'twostar2':  (3, _TWOSTAR, (0, 1)),
}

colorless_specs = {
    'triangle': (3, _TRIANGLE),
    'twostar':  (3, _TWOSTAR),
    'edge':     (2, ((0, 1),)),
}

# Structure values quoted alongside the Type-3 triangle and rainbow
# two-star stability thresholds. They are not the literal minimum degree
# and N_1 of these graphs (2 and 2 for the triangle, 1 and 2 for the
# two-star), so they are only ever applied on request.
quoted_structure = {
    'triangle3': {'min_degree': 2, 'n1': 3},
    'twostar2':  {'min_degree': 2, 'n1': 2},
}


class ColoredPattern(object):
    """
    A small simple colored subgraph template :math:`H_\\mathfrak{C}`.

    Attributes
    ----------
    v: int
        Number of vertices, labeled `0, ..., v-1`.

    edges: tuple of (int, int)
        The `e` edges as sorted pairs.

    colors: tuple of int
        `colors[k]` is the color class of `edges[k]`. The classes are
        exactly `0, ..., r-1`.

    name: str or None
        Built-in name, if any.

    Example
    -------
    A Type 2 triangle built by hand is color isomorphic to the built-in::

        import hypersub as hs

        p = hs.ColoredPattern(3, [(0, 1), (1, 2), (0, 2)], [1, 0, 1])
        print(p.v, p.e, p.r)
        # => 3 3 2

        print(p.is_color_isomorphic(hs.builtin_pattern('triangle2')))
        # => True
    """
    def __init__(self, v, edges, colors=None, name=None):
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeError("`v` must be an integer.")
        if not 1 <= v <= MAX_VERTICES:
            raise PatternError("`v` must be in 1..%d, got %d."
                               % (MAX_VERTICES, v))

        norm = []
        for edge in edges:
            a, b = (int(x) for x in edge)
            if a == b:
                raise PatternError("Self loop on vertex %d." % a)
            if not (0 <= a < v and 0 <= b < v):
                raise PatternError("Edge %s outside vertices 0..%d."
                                   % ((a, b), v-1))
            norm.append((min(a, b), max(a, b)))
        if len(set(norm)) != len(norm):
            raise PatternError("Duplicate edges; only simple colored "
                               "patterns are supported.")
        if len(norm) > MAX_EDGES:
            raise PatternError("At most %d edges are supported." % MAX_EDGES)

        if colors is None:
            colors = [0] * len(norm)
        colors = tuple(int(c) for c in colors)
        if len(colors) != len(norm):
            raise PatternError("Expected %d colors, got %d."
                               % (len(norm), len(colors)))
        if colors and set(colors) != set(range(max(colors) + 1)):
            raise PatternError("Color classes must be exactly 0..r-1, "
                               "got %s." % sorted(set(colors)))

        self.v = v
        self.edges = tuple(norm)
        self.colors = colors
        self.name = name
        self._automorphisms = None

    def __repr__(self):
        if self.name is not None:
            return "ColoredPattern(%s)" % self.name
        return "ColoredPattern(v=%d,e=%d,r=%d)" % (self.v, self.e, self.r)

    def __setattr__(self, name, value):
        if name in _off_limits and name in self.__dict__:
            msg = "Trying to assign read-only ColoredPattern attribute \
                   `%s` a value of `%s`." % (name, value)
            raise ValueError(msg)
        else:
            super(ColoredPattern, self).__setattr__(name, value)

    def __eq__(self, other):
        if not isinstance(other, ColoredPattern):
            return NotImplemented
        return (self.v, self.edges, self.colors) == \
               (other.v, other.edges, other.colors)

    def __hash__(self):
        return hash((self.v, self.edges, self.colors))

    @property
    def e(self):
        return len(self.edges)

    @property
    def r(self):
        return max(self.colors) + 1 if self.colors else 0

    @property
    def is_rainbow(self):
        return self.e > 0 and self.r == self.e

    @property
    def label(self):
        """Short name used in reports."""
        if self.name is not None:
            return self.name
        return 'v%de%dr%d' % (self.v, self.e, self.r)

    @property
    def graph(self):
        """The colorless restriction as a `networkx.Graph` on `range(v)`."""
        g = nx.Graph()
        g.add_nodes_from(range(self.v))
        g.add_edges_from(self.edges)
        return g

    @property
    def degrees(self):
        deg = [0] * self.v
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    @property
    def isolated(self):
        """Vertices not covered by any edge."""
        return [j for j, d in enumerate(self.degrees) if d == 0]

    def class_sizes(self):
        """Number of edges in each color class."""
        return [self.colors.count(c) for c in range(self.r)]

    def colorless(self):
        """The same graph with every edge in a single class."""
        name = None
        if self.name is not None:
            name = self.name.rstrip('0123456789') or None
        return ColoredPattern(self.v, self.edges, None, name=name)

    def automorphisms(self):
        """
        All automorphisms of the colorless restriction, each as a tuple
        `perm` with `perm[j]` the image of vertex `j`.
        """
        if self._automorphisms is None:
            g = self.graph
            matcher = isomorphism.GraphMatcher(g, g)
            self._automorphisms = sorted(
                tuple(iso[j] for j in range(self.v))
                for iso in matcher.isomorphisms_iter())
        return self._automorphisms

    def partition(self):
        """The color classes as a frozenset of frozensets of edge indices."""
        return frozenset(frozenset(k for k in range(self.e)
                                   if self.colors[k] == c)
                         for c in range(self.r))

    def partition_orbit(self):
        """
        The images of :meth:`partition` under all automorphisms, with
        edges renumbered by their index in `edges`.
        """
        index = {edge: k for k, edge in enumerate(self.edges)}
        orbit = set()
        for perm in self.automorphisms():
            image = []
            for k in range(self.e):
                a, b = self.edges[k]
                pa, pb = perm[a], perm[b]
                image.append(index[(min(pa, pb), max(pa, pb))])
            orbit.add(frozenset(frozenset(image[k] for k in block)
                                for block in self.partition()))
        return orbit

    def canonical_form(self):
        """
        A hashable form shared exactly by color-isomorphic patterns: the
        smallest relabeled edge-color list over all vertex permutations,
        with color classes renumbered in order of first use.
        """
        best = None
        for perm in itertools.permutations(range(self.v)):
            relabeled = sorted(
                (min(perm[a], perm[b]), max(perm[a], perm[b]), c)
                for (a, b), c in zip(self.edges, self.colors))
            first = {}
            form = []
            for a, b, c in relabeled:
                if c not in first:
                    first[c] = len(first)
                form.append((a, b, first[c]))
            form = tuple(form)
            if best is None or form < best:
                best = form
        return (self.v, best)

    def is_color_isomorphic(self, other):
        return self.canonical_form() == other.canonical_form()

    def to_json(self):
        return json.dumps({'v': self.v,
                           'edges': [list(e) for e in self.edges],
                           'colors': list(self.colors)})

    @classmethod
    def from_json(cls, text):
        """
        Parse the pattern JSON `{"v": int, "edges": [[a,b],...],
        "colors": [c_0,...,c_{e-1}]}`. `colors` may be omitted for a
        colorless pattern.
        """
        try:
            obj = json.loads(text)
            return cls(obj['v'], obj['edges'], obj.get('colors'),
                       name=obj.get('name'))
        except (KeyError, TypeError, json.JSONDecodeError) as e:
            raise PatternError("Malformed pattern JSON: %s" % e)


PatternStats = namedtuple('PatternStats', ['min_degree', 'nk', 'v', 'e', 'r'])
PatternStats.__doc__ = """
Structural quantities of a pattern's colorless restriction.

min_degree: smallest vertex degree.
nk: tuple `(N_1, ..., N_{v-1})`, `N_k` the largest number of edges with an
    endpoint in a `k`-subset of vertices.
"""


def builtin_pattern(name):
    """
    Return a built-in colored pattern.

    Parameters
    ----------
    name: str
        One of `triangle1`, `triangle2`, `triangle3`, `twostar1`, `twostar2`
        (the Type 1/2/3 triangles and Type 1/2 two-stars), or one of the
        colorless names `triangle`, `twostar`, `edge`.
    """
    if name in builtin_specs:
        v, edges, colors = builtin_specs[name]
        return ColoredPattern(v, edges, colors, name=name)
    if name in colorless_specs:
        return colorless_pattern(name)
    msg = "Unknown pattern `%s`. Built-ins are: %s."
    raise PatternError(msg % (name, ', '.join(sorted(builtin_specs) +
                                             sorted(colorless_specs))))


def colorless_pattern(name):
    """Return a built-in colorless pattern (`triangle`, `twostar`, `edge`)."""
    if name not in colorless_specs:
        raise PatternError("Unknown colorless pattern `%s`." % name)
    v, edges = colorless_specs[name]
    return ColoredPattern(v, edges, None, name=name)


def load_pattern(path):
    """Read a pattern JSON file."""
    with io.open(path, 'r', encoding='utf-8') as f:
        return ColoredPattern.from_json(f.read())


def structure_stats(pattern):
    """
    Minimum degree and the edge-coverage maxima :math:`N_k` of the
    colorless restriction of `pattern`, by exhaustive search over vertex
    subsets.

    Example
    -------
    An example::

        import hypersub as hs

        print(hs.structure_stats(hs.colorless_pattern('triangle')))
        # => PatternStats(min_degree=2, nk=(2, 3), v=3, e=3, r=1)
    """
    v = pattern.v
    nk = []
    for k in range(1, v):
        best = 0
        for subset in itertools.combinations(range(v), k):
            inside = set(subset)
            covered = sum(1 for a, b in pattern.edges
                          if a in inside or b in inside)
            best = max(best, covered)
        nk.append(best)
    return PatternStats(min_degree=min(pattern.degrees), nk=tuple(nk),
                        v=v, e=pattern.e, r=pattern.r)


def with_overrides(stats, min_degree=None, n1=None, nk=None):
    """
    Replace structure values of `stats`. `n1` replaces `N_1` only; `nk`
    replaces the whole vector.
    """
    if nk is not None:
        stats = stats._replace(nk=tuple(nk))
    if n1 is not None:
        rest = stats.nk[1:] if stats.nk else ()
        stats = stats._replace(nk=(n1,) + tuple(rest))
    if min_degree is not None:
        stats = stats._replace(min_degree=min_degree)
    return stats


def quoted_stats(pattern):
    """
    :func:`structure_stats` with the quoted structure values applied when
    `pattern` is a built-in that has them, else the literal values.
    """
    stats = structure_stats(pattern)
    return with_overrides(stats, **quoted_structure.get(pattern.name, {}))

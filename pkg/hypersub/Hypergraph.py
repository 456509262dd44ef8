import io
import warnings

import numpy as np
import scipy.sparse as sp
import networkx as nx


class SampleError(ValueError):
    """Raised when a hyperedge sample cannot be read or indexed."""


_off_limits = ['labels', 'incidence']


def _tokenize(line):
    """
    Split one line of the hyperedge-list format into tokens. Everything
    after a `#` is a comment.
    """
    if not isinstance(line, str):
        return [str(tok) for tok in line]
    line = line.split('#', 1)[0]
    return line.split()


class HypergraphSample(object):
    """
    An ordered sample of hyperedges :math:`h_1, \\ldots, h_m`. The
    position of a hyperedge in the sample is its color.

    Vertices are stored under dense integer ids `0, ..., n-1` assigned in
    order of first appearance; the original tokens are kept in `labels`.
    The hyperedges are the rows of a sparse `m x n` incidence matrix.

    Attributes
    ----------
    labels: tuple of str
        `labels[j]` is the original token of the vertex with id `j`.

    incidence: scipy.sparse.csr_matrix, shape=(m, n)
        `incidence[i, j] == 1` iff hyperedge `i` contains vertex `j`.
        Column indices are sorted within each row.

    Example
    -------
    A short example::

        import hypersub as hs

        sample = hs.build_sample(["1 2 3", "2 3", "# a comment", "4 4 1"])
        print(sample.m, sample.n_vertices)
        # => 3 4

        print(sample.edges)
        # => ((0, 1, 2), (1, 2), (0, 3))

        print(sample.label_of(3))
        # => 4
    """
    def __init__(self, incidence, labels):
        incidence = sp.csr_matrix(incidence, dtype=np.int32)
        incidence.sort_indices()
        if incidence.shape[1] != len(labels):
            raise SampleError("Incidence has %d columns but %d labels given."
                              % (incidence.shape[1], len(labels)))
        incidence.data.setflags(write=False)
        self.incidence = incidence
        self.labels = tuple(labels)
        self._ids = None

    def __repr__(self):
        return "HypergraphSample(m=%d,n_vertices=%d)" % (self.m,
                                                         self.n_vertices)

    def __setattr__(self, name, value):
        if name in _off_limits and name in self.__dict__:
            msg = "Trying to assign read-only HypergraphSample attribute \
                   `%s` a value of `%s`." % (name, value)
            raise ValueError(msg)
        else:
            super(HypergraphSample, self).__setattr__(name, value)

    def __len__(self):
        return self.m

    def __eq__(self, other):
        if not isinstance(other, HypergraphSample):
            return NotImplemented
        return self.labels == other.labels and self.edges == other.edges

    def __hash__(self):
        return hash((self.labels, self.edges))

    @property
    def m(self):
        """Number of hyperedges in the sample."""
        return self.incidence.shape[0]

    @property
    def n_vertices(self):
        """Number of distinct vertices."""
        return self.incidence.shape[1]

    @property
    def sizes(self):
        """Cardinalities :math:`|h_i|` as an integer array."""
        return np.diff(self.incidence.indptr).astype(np.int64)

    @property
    def edges(self):
        """The hyperedges as a tuple of sorted tuples of vertex ids."""
        X = self.incidence
        return tuple(tuple(int(j) for j in X.indices[X.indptr[i]:X.indptr[i+1]])
                     for i in range(self.m))

    @property
    def n_observed(self):
        """Number of vertices that lie in at least one hyperedge."""
        return int(np.count_nonzero(np.diff(self.incidence.tocsc().indptr)))

    def label_of(self, vid):
        """The original token of vertex `vid`."""
        return self.labels[vid]

    def id_of(self, label):
        """The dense id of the vertex with token `label`."""
        if self._ids is None:
            self._ids = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return self._ids[str(label)]
        except KeyError:
            raise SampleError("Unknown vertex label `%s`." % label)

    def vertex_mapping(self):
        """List of `(id, label)` pairs in id order."""
        return list(enumerate(self.labels))

    def write_mapping(self, path):
        """
        Write the id mapping as two-column text, one `id label` pair
        per line.
        """
        with io.open(path, 'w', encoding='utf-8') as f:
            for vid, label in self.vertex_mapping():
                f.write(u'%d\t%s\n' % (vid, label))

    def to_lines(self):
        """The sample in the hyperedge-list format, one string per edge."""
        return [' '.join(self.labels[j] for j in edge) for edge in self.edges]

    def multiplicity_matrix(self):
        """
        Sparse symmetric `n x n` matrix `W` where `W[a,b]` is the number of
        hyperedges containing both `a` and `b` (zero diagonal).
        """
        X = self.incidence
        W = (X.T @ X).tocsr()
        W = sp.csr_matrix(W - sp.diags(W.diagonal()))
        W.eliminate_zeros()
        return W

    def subsample(self, indices):
        """
        The sample formed by the hyperedges at `indices`, in that order.
        Vertex ids are re-assigned densely over the vertices that remain.

        Parameters
        ----------
        indices: sequence of int
            Positions in `range(m)`. Repeats are allowed.
        """
        indices = np.asarray(indices, dtype=np.int64)
        if indices.ndim != 1:
            raise SampleError("`indices` must be one dimensional.")
        if indices.size and (indices.min() < 0 or indices.max() >= self.m):
            raise SampleError("`indices` out of range for m=%d." % self.m)

        rows = self.incidence[indices]
        used = np.unique(rows.indices)
        remap = np.full(self.n_vertices, -1, dtype=np.int64)
        remap[used] = np.arange(used.size)
        X = sp.csr_matrix((np.ones(rows.nnz, dtype=np.int32),
                           remap[rows.indices], rows.indptr.copy()),
                          shape=(indices.size, used.size))
        return HypergraphSample(X, [self.labels[j] for j in used])

    def filtered(self, d):
        """
        Remove every vertex of hyperdegree less than `d` from every
        hyperedge. The number of hyperedges is unchanged; degrees are those
        of this sample.
        """
        if d < 0:
            raise ValueError("`d` must be >= 0.")
        if d == 0:
            return self
        keep = hyperdegrees(self).degrees >= d
        X = self.incidence @ sp.diags(keep.astype(np.int32))
        X = sp.csr_matrix(X)
        X.eliminate_zeros()
        used = np.flatnonzero(keep)
        return HypergraphSample(X[:, used], [self.labels[j] for j in used])


def build_sample(lines):
    """
    Build a :class:`HypergraphSample` from hyperedge lines.

    Parameters
    ----------
    lines: iterable of str or of token sequences
        Each item is one hyperedge. Strings are split on whitespace and
        `#` starts a comment. Blank and comment-only lines are skipped.
        Duplicate tokens within a line are collapsed.

    Returns
    -------
    sample: HypergraphSample
        Vertex ids are assigned in order of first appearance.

    Example
    -------
    An example::

        import hypersub as hs

        sample = hs.build_sample([["a", "b"], ["b", "c", "b"]])
        print(sample.edges, sample.labels)
        # => ((0, 1), (1, 2)) ('a', 'b', 'c')
    """
    ids = {}
    labels = []
    indptr = [0]
    indices = []

    for line in lines:
        tokens = _tokenize(line)
        if isinstance(line, str) and len(tokens) == 0:
            continue
        row = []
        for tok in dict.fromkeys(tokens):
            if tok not in ids:
                ids[tok] = len(labels)
                labels.append(tok)
            row.append(ids[tok])
        indices.extend(sorted(row))
        indptr.append(len(indices))

    m = len(indptr) - 1
    X = sp.csr_matrix((np.ones(len(indices), dtype=np.int32),
                       np.asarray(indices, dtype=np.int64),
                       np.asarray(indptr, dtype=np.int64)),
                      shape=(m, len(labels)))
    return HypergraphSample(X, labels)


def read_hyperedges(path):
    """
    Read a UTF-8 hyperedge-list file: one hyperedge per line, tokens
    separated by spaces or tabs, `#` to end-of-line is a comment.
    """
    try:
        with io.open(path, 'r', encoding='utf-8') as f:
            return build_sample(f.read().splitlines())
    except UnicodeDecodeError as e:
        raise SampleError("Could not decode `%s` as UTF-8: %s" % (path, e))


def write_hyperedges(sample, path, header=None):
    """
    Write `sample` in the hyperedge-list format. Empty hyperedges cannot be
    represented and are dropped with a warning.
    """
    lines = sample.to_lines()
    n_empty = sum(1 for line in lines if not line)
    if n_empty:
        warnings.warn("Dropping %d empty hyperedges on write." % n_empty)
    with io.open(path, 'w', encoding='utf-8') as f:
        if header is not None:
            for hline in header.splitlines():
                f.write(u'# %s\n' % hline)
        for line in lines:
            if line:
                f.write(line + u'\n')


class DegreeIndex(object):
    """
    Hyperdegrees :math:`D_j = \\sum_i 1\\{h_i \\ni j\\}` of every vertex.

    Attributes
    ----------
    degrees: ndarray of int, shape=(n,)
        `degrees[j]` is the hyperdegree of vertex id `j`.
    """
    def __init__(self, degrees):
        degrees = np.asarray(degrees, dtype=np.int64)
        degrees.setflags(write=False)
        self.degrees = degrees

    def __repr__(self):
        return "DegreeIndex(n=%d,total=%d)" % (len(self.degrees), self.total)

    def __getitem__(self, vid):
        return int(self.degrees[vid])

    def __len__(self):
        return len(self.degrees)

    @property
    def total(self):
        """:math:`\\sum_j D_j`, equal to :math:`\\sum_i |h_i|`."""
        return int(self.degrees.sum())

    def at_least(self, d):
        """Ids of the vertices with hyperdegree at least `d`."""
        return np.flatnonzero(self.degrees >= d)


def hyperdegrees(sample):
    """
    Return the :class:`DegreeIndex` of `sample`.
    """
    X = sample.incidence.tocsc()
    return DegreeIndex(np.diff(X.indptr))


def binarize(sample):
    """
    The simple colorless graph of `sample`: vertices `a` and `b` are
    adjacent iff some hyperedge contains both.

    Returns
    -------
    graph: networkx.Graph
        Nodes are vertex ids carrying a `label` attribute; each edge carries
        its `multiplicity`, the number of hyperedges that contain it.

    Example
    -------
    An example::

        import hypersub as hs

        g = hs.binarize(hs.build_sample(["1 2 3", "1 2"]))
        print(sorted(g.edges(data='multiplicity')))
        # => [(0, 1, 2), (0, 2, 1), (1, 2, 1)]
    """
    graph = nx.Graph()
    graph.add_nodes_from((j, {'label': lab})
                         for j, lab in enumerate(sample.labels))
    W = sp.triu(sample.multiplicity_matrix(), k=1).tocoo()
    graph.add_edges_from((int(a), int(b), {'multiplicity': int(w)})
                         for a, b, w in zip(W.row, W.col, W.data))
    return graph

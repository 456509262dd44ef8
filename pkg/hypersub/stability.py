"""
Deletion-stability exponents for degree filtering.

Under polynomial decay of the vertex appearance probabilities
(:math:`p_{(j)} \\ll j^{-\\alpha}`), removing every vertex of hyperdegree
below `d` leaves the :math:`\\sqrt{m}`-scale limit of a rainbow subgraph
frequency unchanged whenever :math:`d \\ll m^{1-\\beta}`. The functions
here compute :math:`\\beta` from the structure of the pattern, and the
known thresholds for colored triangles.

All values are exact :class:`fractions.Fraction` objects (or `inf` for an
unbounded term).

Note
----
Type 1 triangles additionally need the probability that a hyperedge meets
the set of vertices filtered away to be :math:`o(1/m)`, which depends on
the unknown appearance probabilities and so cannot be computed from data.
"""
from fractions import Fraction

from .Pattern import structure_stats, quoted_stats, with_overrides


class StabilityError(ValueError):
    """Raised when a stability exponent is undefined for the inputs."""


DECAYS = ('polynomial', 'exponential')
INF = float('inf')

HALF = Fraction(1, 2)


def _exact(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return Fraction(str(x))


def _check(alpha, decay):
    if decay not in DECAYS:
        raise StabilityError("`decay` should be one of %s, got `%s`."
                             % (', '.join(DECAYS), decay))
    alpha = _exact(alpha)
    if decay == 'polynomial' and alpha <= 2:
        raise StabilityError("Polynomial decay needs alpha > 2, got %s." % alpha)
    if decay == 'exponential' and alpha <= 1:
        raise StabilityError("Exponential decay needs alpha > 1, got %s."
                             % alpha)
    return alpha


def beta_terms(stats, alpha, decay='polynomial'):
    """
    The individual terms whose maximum is the stability exponent.

    Returns
    -------
    terms: list of (str, Fraction or float)
        Term names are 'min_degree', 'n1', 'edges' and 'n<k>' for
        `k = 2, ..., v-2`. A term with `N_1 = 1` is `inf`.
    """
    alpha = _check(alpha, decay)
    v, e = stats.v, stats.e
    d_bar = stats.min_degree
    n1 = stats.nk[0] if stats.nk else 0
    if d_bar < 1 or e < 1:
        raise StabilityError("Stability exponents need a pattern with edges "
                             "and no isolated vertices.")

    terms = []
    if decay == 'polynomial':
        terms.append(('min_degree', Fraction(2, d_bar) * (HALF + 1 / alpha)))
        if n1 == 1:
            terms.append(('n1', INF))
        else:
            terms.append(('n1', Fraction(1, n1 - 1) *
                          (HALF + Fraction(v - 1) / alpha)))
        terms.append(('edges', Fraction(1, e) * (HALF + Fraction(v) / alpha)))
        for k in range(2, v - 1):
            nk = stats.nk[k - 1]
            terms.append(('n%d' % k, Fraction(1, nk) *
                          (HALF + Fraction(v - k) / alpha)))
    else:
        terms.append(('min_degree', Fraction(1, d_bar)))
        terms.append(('n1', INF if n1 == 1 else Fraction(1, 2 * (n1 - 1))))
        terms.append(('edges', Fraction(1, 2 * e)))
        for k in range(2, v - 1):
            terms.append(('n%d' % k, Fraction(1, 2 * stats.nk[k - 1])))
    return terms


def beta_exponent(stats, alpha, decay='polynomial'):
    """
    Deletion-stability exponent :math:`\\beta` of a pattern with structure
    `stats` (see :func:`hypersub.structure_stats`).

    Example
    -------
    The Type 3 triangle with minimum degree 2 and :math:`N_1 = 3`::

        import hypersub as hs

        stats = hs.structure_stats(hs.builtin_pattern('triangle3'))
        stats = hs.with_overrides(stats, min_degree=2, n1=3)
        print(hs.beta_exponent(stats, 4))
        # => 3/4
    """
    return max(value for _, value in beta_terms(stats, alpha, decay))


def triangle_exponent(kind, alpha, decay='polynomial'):
    """
    Exponent :math:`\\gamma` such that filtering at :math:`d \\ll m^\\gamma`
    leaves the limit of a degree-filtered colored triangle frequency
    unchanged.

    Parameters
    ----------
    kind: int
        2 or 3, the number of colors of the triangle.
    """
    alpha = _check(alpha, decay)
    if kind == 1:
        raise StabilityError("Type 1 triangles need a condition on the "
                             "probability that a hyperedge meets the filtered "
                             "vertex set, which depends on the unknown "
                             "appearance probabilities. No exponent is "
                             "computed.")
    if kind not in (2, 3):
        raise StabilityError("`kind` must be 2 or 3, got %s." % (kind,))

    if decay == 'exponential':
        return Fraction(1, 3) if kind == 2 else HALF
    if kind == 2:
        return min(Fraction(1, 3) - 1 / alpha, HALF - 2 / alpha)
    return HALF - 1 / alpha


def _number(value):
    if value == INF:
        return None
    return float(value)


def stability_report(pattern, alpha, decay='polynomial', quoted=False,
                     min_degree=None, n1=None, nk=None):
    """
    JSON-ready stability report of `pattern`.

    Parameters
    ----------
    quoted: bool, default=False
        Use the quoted structure values of the built-in patterns that have
        them instead of the literal ones.

    min_degree, n1, nk: optional
        Explicit structure overrides, applied last.

    Returns
    -------
    report: dict
        Keys `pattern`, `alpha`, `decay`, `beta`, `safe_d_exponent`,
        `terms` and `structure`. `beta` is None when unbounded.
    """
    stats = quoted_stats(pattern) if quoted else structure_stats(pattern)
    stats = with_overrides(stats, min_degree=min_degree, n1=n1, nk=nk)
    terms = beta_terms(stats, alpha, decay)
    beta = max(value for _, value in terms)
    return {
        'pattern': pattern.label,
        'alpha': float(_exact(alpha)),
        'decay': decay,
        'beta': _number(beta),
        'beta_exact': None if beta == INF else str(beta),
        'safe_d_exponent': None if beta == INF else float(1 - beta),
        'terms': [{'term': name, 'value': _number(value)}
                  for name, value in terms],
        'structure': {'min_degree': stats.min_degree,
                      'nk': list(stats.nk),
                      'v': stats.v, 'e': stats.e, 'r': stats.r,
                      'quoted': bool(quoted)},
    }

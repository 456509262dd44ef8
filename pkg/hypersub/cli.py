"""
Command line interface.

Every subcommand writes JSON (keys sorted) to stdout or to `--json PATH`,
and is deterministic given `--seed`. Progress bars, when asked for with
`--verbose`, go to stderr.

Example
-------
Type 2 two-star frequency of a file, then an interval for it::

    hypersub count papers.txt --pattern twostar2
    hypersub infer papers.txt --pattern twostar2 --incomplete auto --seed 1
"""
import io
import sys
import csv
import json
import math
import argparse
import itertools
from fractions import Fraction

import numpy as np

from . import __version__
from . import counting, inference, generators, stability, experiments
from .Hypergraph import read_hyperedges, write_hyperedges, hyperdegrees
from .Pattern import builtin_pattern, builtin_specs, colorless_specs


PATTERN_CHOICES = sorted(builtin_specs) + ['triangle', 'twostar']
COMPARE_EXPONENT = 1.5


def _to_json(obj):
    def default(o):
        if isinstance(o, Fraction):
            return str(o)
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.floating):
            return float(o)
        raise TypeError("Not JSON serializable: %r" % (o,))
    return json.dumps(obj, sort_keys=True, indent=2, default=default) + '\n'


def _emit(args, obj):
    text = _to_json(obj)
    if args.json:
        with io.open(args.json, 'w', encoding='utf-8') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _store(args, records):
    if getattr(args, 'store', None):
        import hypersub
        hypersub.open_store(args.store)
        hypersub.save(*records)


def _design(args, exponent=counting.DEFAULT_EXPONENT):
    if args.incomplete is None:
        return counting.complete()
    n = args.incomplete
    if n != 'auto':
        try:
            n = int(n)
        except ValueError:
            raise counting.DesignError("--incomplete takes an integer or "
                                       "`auto`, got `%s`." % n)
    return counting.incomplete(n_tuples=n, seed=args.seed, exponent=exponent)


def _design_json(design, m):
    out = {'kind': design.kind}
    if design.kind == 'incomplete':
        out['n_tuples'] = counting.resolve_n_tuples(design, m)
        out['seed'] = design.seed
    return out


def _statistic(args):
    if args.pattern in colorless_specs:
        if args.r is None:
            raise counting.PatternError("Colorless pattern `%s` needs --r."
                                        % args.pattern)
        return counting.statistic(args.pattern, r=args.r,
                                  filter_d=args.filter_d)
    return counting.statistic(args.pattern, filter_d=args.filter_d)


def _estimate_json(est, sample_m):
    return {'statistic': est.statistic, 'pattern': est.pattern,
            'm': sample_m, 'estimate': est.value, 'exact': est.exact,
            'design': _design_json(est.design, sample_m),
            'filter_d': est.filter_d}


#####################################################################
# { Begin subcommands

def cmd_count(args):
    sample = read_hyperedges(args.file)
    if args.unique_k is not None:
        value = counting.unique_k_count(sample, args.unique_k)
        _emit(args, {'statistic': 'unique_k', 'k': args.unique_k,
                     'm': sample.m, 'estimate': value})
        return
    if args.pattern is None:
        raise counting.PatternError("--pattern or --unique-k is required.")

    pattern = builtin_pattern(args.pattern)
    if args.pattern in colorless_specs and args.r is None:
        if args.binarized:
            value = counting.binarized_count(sample, pattern)
            kind = 'binarized'
        else:
            value = counting.total_copies(sample, pattern)
            kind = 'total_copies'
        _emit(args, {'statistic': kind, 'pattern': pattern.label,
                     'm': sample.m, 'estimate': value})
        return

    stat = _statistic(args)
    est = counting.evaluate(stat, sample, _design(args))
    _store(args, [_record(est, args.file, label=stat.label)])
    _emit(args, _estimate_json(est, sample.m))


def _record(est, source, **kw):
    from .Result import EstimateRecord
    return EstimateRecord.from_estimate(est, source=source, **kw)


def _subsample_cfg(args, m, r_max, exponent='config'):
    return inference.subsample_config(m, r_max, C=args.subsample_C,
                                      n_subsamples=args.subsamples,
                                      seed=args.seed, exponent=exponent)


def cmd_infer(args):
    sample = read_hyperedges(args.file)
    stat = _statistic(args)
    cfg = _subsample_cfg(args, sample.m, stat.r)
    est, cov, ci = inference.infer(sample, stat, cfg, level=args.level,
                                   design=_design(args),
                                   n_jobs=args.jobs, verbose=args.verbose)
    _store(args, [_record(est, args.file, cov=cov, ci=ci)])
    _emit(args, inference.result_record(est, cov, ci))


def _split(sample, fraction, seed):
    """Selection and inference parts of `sample`, chosen at random."""
    if not 0 < fraction < 1:
        raise ValueError("--split must be in (0, 1), got %s." % fraction)
    perm = np.random.default_rng(seed).permutation(sample.m)
    cut = int(math.floor(fraction * sample.m))
    return sample.subsample(np.sort(perm[:cut])), \
        sample.subsample(np.sort(perm[cut:]))


def _features(sample, design):
    """Network features of `sample`; undefined ratios are None."""
    out = {}
    try:
        out['type2_clustering'] = counting.clustering_coefficient(
            sample, 'type2', design)
    except counting.UndefinedRatioError:
        out['type2_clustering'] = None
    out['twostar2'] = counting.estimate_colored(
        sample, builtin_pattern('twostar2'), design).value
    try:
        out['binarized_clustering'] = counting.binarized_clustering(sample)
    except counting.UndefinedRatioError:
        out['binarized_clustering'] = None
    try:
        out['binarized_twostar_density'] = \
            counting.binarized_twostar_density(sample)
    except counting.UndefinedRatioError:
        out['binarized_twostar_density'] = None
    return out


COMPARE_STATISTICS = ['twostar2', 'type2_clustering',
                      'binarized_twostar_density', 'binarized_clustering']


def _compare_one(path, args):
    full = read_hyperedges(path)
    net = {'file': path, 'm': full.m}
    if args.split is not None:
        selection, sample = _split(full, args.split, args.split_seed)
        net['m_selection'] = selection.m
        design = counting.incomplete(seed=args.seed,
                                     exponent=COMPARE_EXPONENT)
        net['features'] = _features(selection, design) \
            if selection.m >= 2 else None
    else:
        sample = full
    net['m_inference'] = sample.m

    design = counting.incomplete(seed=args.seed, exponent=COMPARE_EXPONENT)
    tri2, two2 = counting.statistic('triangle2'), counting.statistic('twostar2')
    funcs = [tri2, two2, counting.binarized_twostar_density,
             counting.binarized_clustering]
    cfg = _subsample_cfg(args, sample.m, 2, exponent=COMPARE_EXPONENT)
    cov = inference.subsample_covariance(sample, funcs, cfg,
                                         n_jobs=args.jobs,
                                         verbose=args.verbose)
    m = sample.m
    lam = cov.matrix
    a = counting.evaluate(tri2, sample, design).value
    b = counting.evaluate(two2, sample, design).value

    stats = {}
    stats['twostar2'] = (b, max(float(lam[1, 1]), 0.0) / m)
    if b != 0:
        grad = np.array([1 / b, -a / b**2])
        var = max(float(grad @ lam[:2, :2] @ grad), 0.0)
        stats['type2_clustering'] = (a / b, var / m)
    else:
        stats['type2_clustering'] = None
    for i, name in ((2, 'binarized_twostar_density'),
                    (3, 'binarized_clustering')):
        try:
            point = funcs[i](sample)
        except counting.UndefinedRatioError:
            stats[name] = None
            continue
        if np.isnan(lam[i, i]):
            # Undefined on all but at most one subsample.
            stats[name] = None
            continue
        stats[name] = (point, max(float(lam[i, i]), 0.0) / m)

    net['statistics'] = {name: None if val is None else
                         {'estimate': val[0], 'variance': val[1]}
                         for name, val in stats.items()}
    net['config'] = {'b': cfg.b, 'N_sub': cfg.n_subsamples, 'C': cfg.C,
                     'seed': cfg.seed}
    return net, stats


def cmd_compare(args):
    if len(args.files) < 2:
        raise ValueError("compare needs at least two files.")
    nets, stats = [], []
    for path in args.files:
        net, st = _compare_one(path, args)
        nets.append(net)
        stats.append(st)

    ratios = []
    for i, j in itertools.combinations(range(len(args.files)), 2):
        for name in COMPARE_STATISTICS:
            num, den = stats[i][name], stats[j][name]
            row = {'numerator': args.files[i], 'denominator': args.files[j],
                   'statistic': name, 'level': args.level}
            if num is None or den is None or den[0] == 0:
                row.update({'ratio': None, 'ci': None})
            else:
                ci = inference.ratio_ci(num, den, cov=0.0, level=args.level)
                row.update({'ratio': ci.point, 'ci': [ci.lo, ci.hi]})
            ratios.append(row)
    _emit(args, {'networks': nets, 'ratios': ratios})


def _model(args):
    if args.model is not None:
        model = generators.load_model(args.model)
    else:
        model = generators.GeneratorModel(alpha=args.alpha,
                                          n_vertices=args.n_vertices,
                                          seed=args.seed)
    return model


def cmd_simulate(args):
    model = _model(args)
    sample = generators.generate(model, args.m, seed=args.seed)
    write_hyperedges(sample, args.out,
                     header='model: %s\nm: %d, seed: %d'
                     % (model.to_json(), args.m, args.seed))
    _emit(args, {'out': args.out, 'm': sample.m,
                 'n_vertices': sample.n_vertices, 'seed': args.seed,
                 'model': model.to_dict()})


def _calibration(args):
    from . import config
    m = args.calibration_m
    if m is None:
        m = config.getint('calibration', 'm')
    seed = args.calibration_seed
    if seed is None:
        seed = config.getint('calibration', 'seed')
    return m, seed


def _coverage_stat(name):
    if name == 'triangle':
        return counting.statistic('triangle', r=3)
    return counting.statistic(name)


def cmd_coverage(args):
    model = _model(args)
    stat = _coverage_stat(args.statistic)
    if args.truth is not None:
        with io.open(args.truth, 'r', encoding='utf-8') as f:
            truth = generators.truth_from_json(f.read())
    else:
        cal_m, cal_seed = _calibration(args)
        truth = generators.calibrate_truth(model, [stat], cal_m,
                                           seed=cal_seed,
                                           verbose=args.verbose)
    subsamples = args.subsamples
    if subsamples is None:
        from . import config
        subsamples = config.getint('subsampling', 'subsamples')

    rows = []
    for m in args.m:
        rows.extend(experiments.run_coverage_experiment(
            model, m, args.C, args.reps, level=args.level, seed=args.seed,
            stat=stat, truth=truth, n_subsamples=subsamples,
            n_jobs=args.jobs, verbose=args.verbose))

    if args.csv:
        with io.open(args.csv, 'w', encoding='utf-8', newline='') as f:
            writer = csv.DictWriter(f, fieldnames=experiments.COVERAGE_FIELDS,
                                    extrasaction='ignore',
                                    lineterminator='\n')
            writer.writeheader()
            writer.writerows(rows)

    if getattr(args, 'store', None):
        from .Result import CoverageRecord, TruthRecord
        truths = TruthRecord.from_truth(truth)
        match = [t for t in truths if t.statistic == stat.label]
        _store(args, truths + [CoverageRecord.from_row(row, match[0])
                               for row in rows])
    _emit(args, {'statistic': stat.label, 'truth': truth.values[stat.label],
                 'calibration_m': truth.calibration_m, 'rows': rows})


def cmd_stability(args):
    pattern = builtin_pattern(args.pattern)
    literal = stability.stability_report(pattern, args.alpha, args.decay,
                                         min_degree=args.min_degree,
                                         n1=args.n1)
    quoted = stability.stability_report(pattern, args.alpha, args.decay,
                                        quoted=True,
                                        min_degree=args.min_degree,
                                        n1=args.n1)
    out = dict(literal)
    out['quoted'] = quoted
    if pattern.name in ('triangle2', 'triangle3'):
        gamma = stability.triangle_exponent(pattern.r, args.alpha, args.decay)
        out['triangle_exponent'] = float(gamma)
        out['triangle_exponent_exact'] = str(gamma)
    _emit(args, out)


def cmd_calibrate(args):
    model = _model(args)
    stats = [_coverage_stat(name) for name in args.statistic]
    cal_m, cal_seed = _calibration(args)
    truth = generators.calibrate_truth(model, stats, cal_m, seed=cal_seed,
                                       verbose=args.verbose)
    if getattr(args, 'store', None):
        from .Result import TruthRecord
        _store(args, TruthRecord.from_truth(truth))
    _emit(args, truth._asdict())


def cmd_describe(args):
    sample = read_hyperedges(args.file)
    sizes = sample.sizes
    degrees = hyperdegrees(sample).degrees

    def summary(x):
        if len(x) == 0:
            return None
        return {'min': int(x.min()), 'max': int(x.max()),
                'mean': float(x.mean()), 'median': float(np.median(x))}

    _emit(args, {'file': args.file, 'm': sample.m,
                 'n_vertices': sample.n_vertices,
                 'cardinality': summary(sizes),
                 'hyperdegree': summary(degrees),
                 'unique_k': {str(k): counting.unique_k_count(sample, k)
                              for k in (2, 3)}})

# } End subcommands
#####################################################################


def _add_common(p):
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--json', metavar='PATH', default=None,
                   help='write the JSON result here instead of stdout')
    p.add_argument('--jobs', type=int, default=1,
                   help='worker processes')
    p.add_argument('--store', metavar='PATH', default=None,
                   help='also save results in this sqlite store')
    p.add_argument('--verbose', action='store_true')


def _add_statistic(p, required=True):
    p.add_argument('--pattern', choices=PATTERN_CHOICES, required=required)
    p.add_argument('--r', type=int, default=None,
                   help='tuple length for colorless patterns')
    p.add_argument('--filter-d', dest='filter_d', type=int, default=None)
    p.add_argument('--incomplete', metavar='N|auto', default=None)


def _add_subsampling(p):
    p.add_argument('--level', type=float, default=0.95)
    p.add_argument('--subsample-C', dest='subsample_C', type=float,
                   default=None)
    p.add_argument('--subsamples', type=int, default=None)


def _add_model(p):
    p.add_argument('--model', metavar='PATH', default=None,
                   help='model JSON file')
    p.add_argument('--alpha', type=float, default=2.0)
    p.add_argument('--n-vertices', dest='n_vertices', type=int, default=1000)


def build_parser():
    parser = argparse.ArgumentParser(
        prog='hypersub',
        description='Subgraph statistics of hyperedge samples.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('count', help='a statistic of a hyperedge file')
    p.add_argument('file')
    _add_statistic(p, required=False)
    p.add_argument('--binarized', action='store_true',
                   help='count on the binarized graph (colorless patterns)')
    p.add_argument('--unique-k', dest='unique_k', type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser('infer', help='a statistic with its interval')
    p.add_argument('file')
    _add_statistic(p)
    _add_subsampling(p)
    _add_common(p)
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser('compare', help='ratio intervals between networks')
    p.add_argument('files', nargs='+')
    p.add_argument('--split', type=float, default=None,
                   help='fraction of hyperedges kept aside for selection')
    p.add_argument('--split-seed', dest='split_seed', type=int, default=0)
    _add_subsampling(p)
    _add_common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser('simulate', help='write a generated sample')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--out', required=True)
    _add_model(p)
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser('coverage', help='interval coverage experiment')
    p.add_argument('--statistic', choices=['twostar2', 'triangle'],
                   default='twostar2')
    p.add_argument('--m', type=int, nargs='+', default=[500])
    p.add_argument('--C', type=float, nargs='+', default=[1.0, 1.4, 2.0])
    p.add_argument('--reps', type=int, default=200)
    p.add_argument('--truth', metavar='PATH', default=None,
                   help='ModelTruth JSON written by `calibrate`')
    p.add_argument('--calibration-m', dest='calibration_m', type=int,
                   default=None)
    p.add_argument('--calibration-seed', dest='calibration_seed', type=int,
                   default=None)
    p.add_argument('--csv', metavar='PATH', default=None)
    p.add_argument('--level', type=float, default=0.95)
    p.add_argument('--subsamples', type=int, default=None)
    _add_model(p)
    _add_common(p)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser('stability', help='deletion-stability exponents')
    p.add_argument('--pattern', choices=sorted(builtin_specs), required=True)
    p.add_argument('--alpha', type=float, required=True)
    p.add_argument('--decay', choices=stability.DECAYS, default='polynomial')
    p.add_argument('--min-degree', dest='min_degree', type=int, default=None)
    p.add_argument('--n1', type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser('calibrate', help='plug-in truth of a model')
    p.add_argument('--statistic', choices=['twostar2', 'triangle'] +
                   sorted(builtin_specs), nargs='+', default=['twostar2'])
    p.add_argument('--calibration-m', dest='calibration_m', type=int,
                   default=None)
    p.add_argument('--calibration-seed', dest='calibration_seed', type=int,
                   default=None)
    _add_model(p)
    _add_common(p)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser('describe', help='summary of a hyperedge file')
    p.add_argument('file')
    _add_common(p)
    p.set_defaults(func=cmd_describe)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, ZeroDivisionError, OSError) as e:
        sys.stderr.write('hypersub: error: %s\n' % e)
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())

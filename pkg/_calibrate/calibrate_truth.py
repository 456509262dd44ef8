import os
import sys

import hypersub as hs
from hypersub import config
from hypersub.generators import truth_to_json


# Change these. The truth file is what `hypersub coverage --truth` reads.
out_path = os.path.join(os.path.curdir, 'truth_alpha2_n1000.json')
model = hs.GeneratorModel(alpha=2.0, n_vertices=1000)
statistics = [hs.statistic('twostar2'), hs.statistic('triangle', r=3)]

assert not os.path.exists(out_path), "`%s` already exists. Aborting." % out_path

calibration_m = config.getint('calibration', 'm')
seed = config.getint('calibration', 'seed')

sys.stdout.write('Calibrating %s on m=%d, seed=%d\n'
                 % (', '.join(s.label for s in statistics), calibration_m,
                    seed))
truth = hs.calibrate_truth(model, statistics, calibration_m, seed=seed,
                           verbose=True)

with open(out_path, 'w') as f:
    f.write(truth_to_json(truth))

hs.save(*hs.TruthRecord.from_truth(truth))

for label, value in sorted(truth.values.items()):
    sys.stdout.write('%-16s %.6g\n' % (label, value))

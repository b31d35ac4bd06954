"""Empirical failure rate of hidden-point recovery as a function of the sample count.

Usage: python3 scripts/recovery_trials.py --flavor PSL --field 7 --samples 10 20 40 60 --trials 1000
"""

import argparse

import numpy as np

from borelhsp import hsp
from borelhsp.ff import parse_field


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--flavor", default="PSL")
    ap.add_argument("--field", default="7")
    ap.add_argument("--samples", type=int, nargs="+", default=[5, 10, 20, 40, 60])
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed0", type=int, default=0, help="trial t uses seed seed0 + t")
    args = ap.parse_args(argv)

    ctx = parse_field(args.field)
    oracles = {b: hsp.make_stabilizer_oracle(args.flavor, ctx, ctx.element(b)) for b in range(ctx.q)}
    default = hsp.default_sample_count(args.flavor, ctx)
    print(f"{args.flavor}(2,{ctx.q}): default sample count {default} (union Chernoff bound < 1e-6)")
    print("samples  failures  rate      mean confidence  extra character shots")
    for m in args.samples:
        fails, conf, chars = 0, [], 0
        for t in range(args.trials):
            b = t % ctx.q
            res = hsp.recover_hidden_point(oracles[b], args.flavor, ctx, samples=m, seed=args.seed0 + t)
            fails += res.recovered != ctx.element(b)
            conf.append(res.confidence)
            chars += res.character_shots
        print(f"{m:7d}  {fails:8d}  {fails / args.trials:.2e}  {np.mean(conf):15.6f}  {chars:8d}")


if __name__ == "__main__":
    main()

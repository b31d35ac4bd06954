"""Off-peak PSL probabilities with denominator 2q(q-1) versus 4q(q-1).

Prints the total probability each variant assigns, next to the brute-force
oracle, for every q in the sweep.
"""

import argparse

from borelhsp import hsp
from borelhsp.ff import parse_field


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fields", nargs="+", default=["5", "7", "3^2", "11", "13", "17", "19", "5^2"])
    args = ap.parse_args(argv)
    print(f"{'q':>4} {'d':>5} {'P(b)':>8} {'sum 2q(q-1)':>12} {'sum 4q(q-1)':>12} {'brute off-peak':>15} {'2q(q-1) off':>12}")
    for spec in args.fields:
        ctx = parse_field(spec)
        two, four = hsp.psl_offpeak_forms(ctx, 2), hsp.psl_offpeak_forms(ctx, 4)
        brute = hsp.brute_force_distribution_oracle("PSL", ctx, 0)
        off_brute = brute.total - brute[0]
        off_two = two.total - float(two.peak)
        print(f"{ctx.q:>4} {two.d_parity:>5} {float(two.peak):8.5f} {two.total:12.9f} {four.total:12.9f} "
              f"{off_brute:15.9f} {off_two:12.9f}")


if __name__ == "__main__":
    main()

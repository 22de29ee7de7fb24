"""Local-global isotropy round trip for q = X^2 - Y^2 + x Z^2 on a few seeded perturbations."""

import argparse
import random

from fieldpatch import generators as gen
from fieldpatch.charts import cayley_chart
from fieldpatch.patching import isotropy_local_global_demo
from fieldpatch.rational import RationalF
from fieldpatch.scalars import QQ


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tprec", type=int, default=12)
    args = ap.parse_args()

    one, zero = RationalF.const(QQ, 1), RationalF.const(QQ, 0)
    Q = [[one, zero, zero], [zero, -one, zero], [zero, zero, RationalF.x(QQ)]]
    y0 = (one, one, zero)
    ch = cayley_chart(Q)
    rng = random.Random(args.seed)
    for k in range(args.cases):
        z = gen.product_perturbation(ch, rng, args.tprec, 10)
        rep = isotropy_local_global_demo(Q, y0, z, args.tprec, (4, 4), 10)
        print(f"case {k}")
        for line in rep.lines():
            print("  " + line)


if __name__ == "__main__":
    main()

"""Write sample CLI inputs into scripts/inputs/ (deterministic)."""

import random
from pathlib import Path

from fieldpatch import generators as gen
from fieldpatch.charts import cayley_chart, gl_chart, weil_restrict_chart
from fieldpatch.patching import Tensor, TensorObject
from fieldpatch.rational import RationalF
from fieldpatch.scalars import QQ
from fieldpatch.series import PatchSeries, Tag
from fieldpatch.textio import fmt

OUT = Path(__file__).resolve().parent / "inputs"
N = 12


def r(c):
    return RationalF.const(QQ, c)


def main():
    OUT.mkdir(exist_ok=True)
    rng = random.Random(2024)
    x = RationalF.x(QQ)
    Q = [[r(1), r(0), r(0)], [r(0), r(-1), r(0)], [r(0), r(0), x]]
    so = cayley_chart(Q)
    files = {
        "series.pk": gen.rand_series(QQ, rng, 6, 6, emin=-2, emax=2),
        "rational.pk": gen.rand_rational(QQ, rng, 2, 2),
        "gl2.pk": gen.rand_gl_input(QQ, rng, 2, N),
        "gl.chart": gl_chart(2, QQ),
        "so3.chart": so,
        "weil.chart": weil_restrict_chart(gl_chart(1, QQ), (-x, r(0), r(1))),
        "z_so3.pk": gen.product_perturbation(so, rng, N, 10),
        "z_weil.pk": [gen.rand_small(QQ, rng, N, nterms=2) for _ in range(2)],
        "gram3.pk": Q,
        "witness3.pk": [r(1), r(1), r(0)],
        "zero3.pk": [PatchSeries.zero(QQ, Tag.F0, N)] * 3,
        "problem.pk": gen.product_problem(QQ, rng, TensorObject(2, (Tensor.gram(gen.rand_symmetric(QQ, rng, 2)),)), N),
    }
    for name, obj in files.items():
        (OUT / name).write_text(fmt(obj) + "\n", encoding="utf-8")
        print(f"wrote {OUT / name}")


if __name__ == "__main__":
    main()

"""Compare the compiled and pure-Python contraction kernels.

    python benchmarks/bench_kernels.py [--dims 4 8 12] [--repeat 5]

Times the full law suite and a raw pair table over F_7 on generated
instances, and checks that both backends give identical results.
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from bhpc import kernels
from bhpc.axioms import check_bihom_poisson
from bhpc.catalog import GeneratorConfig, generate_pipeline
from bhpc.glinalg import pair_table
from bhpc.scalars import FieldSpec


def instance(dim: int):
    orders = {2: (2,), 4: (2, 2), 6: (3,), 8: (2, 2), 12: (3, 2)}.get(dim, (2,))
    base = "group_algebra" if dim in (2, 4) else "dual_group"
    cfg = GeneratorConfig(seed=dim, orders=orders, field=FieldSpec.prime(7), base=base, max_dim=12, twist_depth=1)
    return generate_pipeline(cfg).bundle


def timed(fn, repeat: int) -> float:
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[4, 8, 12])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not kernels.compiled_available():
        print("compiled kernels not built; only the Python backend will run")
    print(f"{'dim':>4} {'task':<10} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for dim in args.dims:
        P = instance(dim)
        for task, fn in (("pair", lambda: pair_table(P.mu, P.alpha, P.beta)),
                         ("suite", lambda: check_bihom_poisson(P))):
            kernels.set_backend("python")
            ref = fn()
            t_py = timed(fn, args.repeat)
            if kernels.compiled_available():
                kernels.set_backend("compiled")
                got = fn()
                if task == "pair":
                    assert np.array_equal(ref, got), "backends disagree"
                else:
                    assert ref.passed == got.passed, "backends disagree"
                t_c = timed(fn, args.repeat)
                print(f"{P.dim:>4} {task:<10} {t_py * 1e3:>10.2f} {t_c * 1e3:>12.2f} {t_py / t_c:>7.1f}x")
            else:
                print(f"{P.dim:>4} {task:<10} {t_py * 1e3:>10.2f} {'-':>12} {'-':>8}")
    kernels.set_backend("auto")


if __name__ == "__main__":
    main()

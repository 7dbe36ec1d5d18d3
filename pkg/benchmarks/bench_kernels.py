"""Time the compiled kernels against their pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from kummer3 import _kernels_py as py

try:
    from kummer3 import _kernels as cy
except ImportError:
    cy = None


def workloads():
    rng = random.Random(0)
    imag = [-4 * m for m in (157019, 1400529, 3647, 63199)]
    real = [471057, 4 * 10941, 4 * 906, 4 * 297057]
    cubics = [(rng.randrange(10**6), rng.randrange(10**6), rng.randrange(10**6)) for _ in range(2000)]
    primes = [100003, 1000003, 99991]

    def roots(k):
        for q in primes:
            for c2, c1, c0 in cubics:
                k.cubic_has_root(c2 % q, c1 % q, c0 % q, q)

    return {
        "imag_class_number": lambda k: [k.imag_class_number(D) for D in imag],
        "real_class_number": lambda k: [k.real_class_number(D) for D in real],
        "cubic_has_root x6000": roots,
        "minus_log_mod x200": lambda k: [k.minus_log_mod(1 + 3 * i, 3 * i + 3, 157019, 40, 20)
                                          for i in range(200)],
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    print(f"{'kernel':<24}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for name, fn in workloads().items():
        tp = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        if cy is None:
            print(f"{name:<24}{tp:>12.4f}{'n/a':>12}{'':>10}")
            continue
        assert fn(cy) == fn(py)
        tc = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        print(f"{name:<24}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()

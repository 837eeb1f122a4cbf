"""Time the compiled CNF kernel against the pure-Python one.

Run after ``pip install -e . --no-build-isolation``:

    python3 benchmarks/bench_kernels.py [--n 2000] [--repeat 5]
"""
import argparse
import random
import timeit

from ordgraph import _kernel_py

try:
    from ordgraph import _kernel_c
except ImportError:
    _kernel_c = None


def random_raw(rng: random.Random, depth: int = 2, terms: int = 3) -> tuple:
    if depth == 0:
        n = rng.randint(0, 5)
        return (((), n),) if n else ()
    exps = sorted({random_raw(rng, depth - 1, terms) for _ in range(rng.randint(0, terms))}, reverse=True)
    return tuple((e, rng.randint(1, 5)) for e in exps)


def workload(n: int, seed: int = 0):
    rng = random.Random(seed)
    pairs = [(random_raw(rng), random_raw(rng)) for _ in range(n)]
    # left_sub needs a <= b; a + b always qualifies
    subs = [(a, _kernel_py.add(a, b)) for a, b in pairs]
    levels = [sorted((rng.randint(0, 4) for _ in range(rng.randint(1, 12))), reverse=True) for _ in range(n)]
    return pairs, subs, levels


def bench(mod, pairs, subs, levels, repeat: int) -> dict[str, float]:
    jobs = {
        "add": lambda: [mod.add(a, b) for a, b in pairs],
        "mul": lambda: [mod.mul(a, b) for a, b in pairs],
        "left_sub": lambda: [mod.left_sub(a, b) for a, b in subs],
        "from_levels": lambda: [mod.from_levels(lv) for lv in levels],
    }
    return {name: min(timeit.repeat(fn, number=1, repeat=repeat)) for name, fn in jobs.items()}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    pairs, subs, levels = workload(args.n)
    py = bench(_kernel_py, pairs, subs, levels, args.repeat)
    if _kernel_c is None:
        print("compiled kernel not built; python timings only")
        c = {}
    else:
        c = bench(_kernel_c, pairs, subs, levels, args.repeat)
    print(f"{'op':<12}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, t in py.items():
        if name in c:
            print(f"{name:<12}{t * 1e3:>12.2f}{c[name] * 1e3:>12.2f}{t / c[name]:>9.2f}x")
        else:
            print(f"{name:<12}{t * 1e3:>12.2f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()

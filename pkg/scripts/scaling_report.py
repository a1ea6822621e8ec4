"""Mean update time against n, for random and adversarial traces.

The random-trace ratio between the largest and the smallest n is the
number the acceptance suite checks.  The adversarial rows are informational:
those traces flush after almost every step, so they time the batch updates
of the promise structures rather than the bare splittance tracker.

    python scripts/scaling_report.py --n 1024 16384 131072 --steps 2000
"""

import argparse
import csv
import sys
from dataclasses import asdict, dataclass

from splitcomp.cli import bench_one


@dataclass
class ScalingConfig:
    ns: tuple[int, ...] = (2**10, 2**13, 2**17)
    k: int = 3
    d: int = 2
    steps: int = 2000
    adversarial_steps: int = 300
    seed: int = 0


def run(cfg: ScalingConfig, out=sys.stdout) -> dict[str, float]:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["mode", "n", "mean_update_us", "p99_update_us", "query_us", "failures"])
    means: dict[str, dict[int, float]] = {"random": {}, "adversarial": {}}
    for mode, steps in (("random", cfg.steps), ("adversarial", cfg.adversarial_steps)):
        for n in cfg.ns:
            row = bench_one(n, cfg.k, cfg.d, steps, cfg.seed, mode)
            means[mode][n] = row.mean_update_us
            w.writerow([mode, n, f"{row.mean_update_us:.1f}", f"{row.p99_update_us:.1f}",
                        f"{row.query_us:.1f}", row.failures])
            out.flush()
    lo, hi = min(cfg.ns), max(cfg.ns)
    return {mode: m[hi] / m[lo] for mode, m in means.items()}


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    defaults = ScalingConfig()
    p.add_argument("--n", type=int, nargs="+", default=list(defaults.ns))
    p.add_argument("--k", type=int, default=defaults.k)
    p.add_argument("--d", type=int, default=defaults.d)
    p.add_argument("--steps", type=int, default=defaults.steps)
    p.add_argument("--adversarial-steps", type=int, default=defaults.adversarial_steps)
    p.add_argument("--seed", type=int, default=defaults.seed)
    a = p.parse_args()
    cfg = ScalingConfig(tuple(a.n), a.k, a.d, a.steps, a.adversarial_steps, a.seed)
    print(f"# {asdict(cfg)}", file=sys.stderr)
    ratios = run(cfg)
    for mode, r in ratios.items():
        print(f"# {mode}: mean update ratio n={max(cfg.ns)} / n={min(cfg.ns)} = {r:.2f}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

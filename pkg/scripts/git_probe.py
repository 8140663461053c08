"""Probe the torus stability argument on random basepoint-free binary forms.

For each (d, q) the script draws seeded basepoint-free tuples with k = 1,
probes them, and records the smallest witness value seen. It then scans
q = k+1 to show how many weight vectors lose a positive witness there.

    python3 scripts/git_probe.py --tuples 25 --q 3 --q 4 --seed 7
"""

import argparse
import itertools
import random
from dataclasses import dataclass, field

from chowring import git


@dataclass
class ProbeExperiment:
    d_values: tuple = (1, 2, 3)
    q_values: tuple = (3, 4)
    tuples: int = 25
    samples: int = 20
    basis_changes: int = 10
    seed: int = git.DEFAULT_SEED
    boundary_range: int = 3


@dataclass
class ProbeSummary:
    d: int
    q: int
    probes: int = 0
    failures: int = 0
    min_witness: int | None = None
    witness_cases: dict = field(default_factory=lambda: {1: 0, 2: 0})


def run(exp: ProbeExperiment) -> list[ProbeSummary]:
    rng = random.Random(exp.seed)
    config = git.ProbeConfig(samples=exp.samples, basis_changes=exp.basis_changes, seed=exp.seed)
    out = []
    for d in exp.d_values:
        tuples = [git.random_free_tuple(1, rng.randint(1, 3), d, rng) for _ in range(exp.tuples)]
        for q in exp.q_values:
            summary = ProbeSummary(d, q)
            for m in tuples:
                rep = git.torus_stable(m, q, config)
                summary.probes += rep.probes
                summary.failures += len(rep.failures)
                for w in git.extremal_fan(2):
                    wit = git.proof_witness(m, w, q)
                    summary.witness_cases[wit.case] += 1
                    if summary.min_witness is None or wit.value < summary.min_witness:
                        summary.min_witness = wit.value
            out.append(summary)
    return out


def boundary_scan(exp: ProbeExperiment):
    """Weight vectors in a small cube whose witness is <= 0 at q = k+1, d = 1."""
    bad = []
    m = git.MapTuple.from_terms(1, 1, 1, [{(1, 0): 1}, {(0, 1): 1}])
    span = range(-exp.boundary_range, exp.boundary_range + 1)
    for w in itertools.product(span, repeat=2):
        if any(w):
            wit = git.proof_witness(m, w, 2)
            if wit.value <= 0:
                bad.append((w, wit.value))
    return bad


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--d", type=int, action="append")
    parser.add_argument("--q", type=int, action="append")
    parser.add_argument("--tuples", type=int, default=ProbeExperiment.tuples)
    parser.add_argument("--samples", type=int, default=ProbeExperiment.samples)
    parser.add_argument("--basis-changes", type=int, default=ProbeExperiment.basis_changes)
    parser.add_argument("--seed", type=int, default=ProbeExperiment.seed)
    args = parser.parse_args(argv)
    exp = ProbeExperiment(
        d_values=tuple(args.d or ProbeExperiment.d_values),
        q_values=tuple(args.q or ProbeExperiment.q_values),
        tuples=args.tuples,
        samples=args.samples,
        basis_changes=args.basis_changes,
        seed=args.seed,
    )
    if any(q <= 2 for q in exp.q_values):
        parser.error("q must exceed k+1 = 2 for the probe")

    print(f"seed {exp.seed}, {exp.tuples} tuples per d")
    print(f"{'d':>2} {'q':>2} {'probes':>7} {'fail':>5} {'min witness':>12}  cases(1/2)")
    summaries = run(exp)
    for s in summaries:
        print(f"{s.d:>2} {s.q:>2} {s.probes:>7} {s.failures:>5} {s.min_witness:>12}  {s.witness_cases[1]}/{s.witness_cases[2]}")

    bad = boundary_scan(exp)
    print(f"\nq = k+1 = 2, m = (S, T): {len(bad)} weight vectors with witness <= 0")
    for w, value in bad:
        print(f"  w={w} value={value}")
    return 0 if all(s.failures == 0 for s in summaries) else 1


if __name__ == "__main__":
    raise SystemExit(main())

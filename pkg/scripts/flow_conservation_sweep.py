#!/usr/bin/env python3
"""Conservation sweep for the bundled quadratic models.

For each model: evolve a random phase point and the operator frame over a
tau grid, then report the symplecticity defect, the pairing-invariant
drift and the energy drift.  All three are zero in exact arithmetic; the
printed numbers are pure roundoff.
"""

import argparse

import numpy as np

from cliffield.dynamics import (
    classical_trajectory,
    energy_drift,
    heisenberg_frames,
    model_factory,
    pairing_invariant,
    symplecticity_deviation,
)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--tau-max", type=float, default=10.0)
    ap.add_argument("--steps", type=int, default=81)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    taus = np.linspace(0.0, args.tau_max, args.steps)
    models = [
        model_factory("oscillator", n=1, omega=1.0),
        model_factory("oscillator", n=3, omega=0.7),
        model_factory("massless", n=4, lam=1.0),
        model_factory("bars", n=4, A=[[0.2, 0.9], [-0.3, -0.2]]),
    ]
    print(f"{'model':<12} {'n':>2} {'symplectic':>12} {'pairing':>12} {'energy':>12}")
    for m in models:
        z0 = rng.normal(size=2 * m.n)
        traj = classical_trajectory(m, z0, taus)
        frames = heisenberg_frames(m, taus)
        print(f"{m.kind:<12} {m.n:>2} "
              f"{symplecticity_deviation(m, taus):>12.3e} "
              f"{pairing_invariant(traj, frames):>12.3e} "
              f"{energy_drift(m, z0, taus):>12.3e}")


if __name__ == "__main__":
    main()

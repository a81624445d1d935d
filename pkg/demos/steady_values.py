#!/usr/bin/env python3
"""Print the long-time negativity for each named state across theta.

Shows the two regimes of the steady state: for |theta| < 1 every
initial state relaxes to the same value (sqrt(2) - 1)/2 because only
the antisymmetric halves survive, while at |theta| = 1 one collective
branch is decoherence-free and the limit depends on the initial state.
"""

from vqutrits import (
    ModelParams,
    named_initial_state,
    negativity,
    steady_amplitudes,
    steady_report,
)

THETAS = (0.0, 0.5, 0.9, 0.99, 1.0, -1.0)
STATES = ("maximal", "partial", "product")


def main():
    print(f"{'theta':>6}  " + "".join(f"{name:>10}" for name in STATES))
    for theta in THETAS:
        params = ModelParams(gamma0=1.0, theta=theta)
        row = [f"{theta:>6g}  "]
        for name in STATES:
            amps = steady_amplitudes(params, named_initial_state(name))
            row.append(f"{negativity(amps):>10.6f}")
        print("".join(row))

    print()
    print("full report for the product state at theta = 1:")
    report = steady_report(ModelParams(gamma0=10.0, theta=1.0),
                           named_initial_state("product"), init_label="product")
    for key, value in report.items():
        print(f"  {key}: {value}")


if __name__ == "__main__":
    main()

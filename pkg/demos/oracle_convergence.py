#!/usr/bin/env python3
"""Show fourth-order convergence of the RK4 cross-check integrator.

Integrates one strong-coupling parameter set at a ladder of step sizes,
compares against the closed-form amplitudes, prints the observed order
between neighboring steps, and saves a log-log error plot with a dt^4
reference line.
"""

import math
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from vqutrits import ModelParams, cross_validate, named_initial_state

# step guard: dt * max(kappa, gamma0, 2*Omega, 1) must stay under 0.025
DTS = (1e-3, 5e-4, 2.5e-4, 1.25e-4)


def main():
    params = ModelParams(gamma0=10.0, theta=0.9, omega_dd=12.0)
    init = named_initial_state("partial")
    print(f"gamma0={params.gamma0} theta={params.theta} "
          f"Omega={params.omega_dd}, t_end=10")

    errors = []
    for dt in DTS:
        err = cross_validate(params, init, t_end=10.0, dt=dt)
        errors.append(err)
        line = f"dt={dt:.2e}  max|closed form - RK4| = {err:.3e}"
        if len(errors) > 1:
            order = math.log2(errors[-2] / errors[-1])
            line += f"  observed order {order:.2f}"
        print(line)

    out_dir = pathlib.Path(__file__).resolve().parent / "output"
    out_dir.mkdir(exist_ok=True)
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    ax.loglog(DTS, errors, "o-", label="measured")
    ref = [errors[0] * (dt / DTS[0]) ** 4 for dt in DTS]
    ax.loglog(DTS, ref, "--", label="dt^4 reference")
    ax.set_xlabel("dt")
    ax.set_ylabel("max amplitude error")
    ax.legend()
    fig.tight_layout()
    png_path = out_dir / "oracle_convergence.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    print(f"wrote {png_path}")


if __name__ == "__main__":
    main()

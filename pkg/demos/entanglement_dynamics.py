#!/usr/bin/env python3
"""Reproduce the figure-style negativity curves and save PNG + CSV.

Runs a handful of named presets (weak and strong coupling, with and
without the dipole-dipole shift), writes one CSV per preset via the
library's deterministic writer, and draws the curve families with
matplotlib.  Outputs land in demos/output/.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from vqutrits import run_preset, write_csv

PRESETS = ("fig2a", "fig2b", "fig5a", "fig5b", "fig8a", "fig8b")

TITLES = {
    "fig2a": "maximal state, weak coupling (gamma0 = 0.1)",
    "fig2b": "maximal state, strong coupling (gamma0 = 10)",
    "fig5a": "maximal state, weak coupling, Omega = 12*gamma0",
    "fig5b": "maximal state, strong coupling, Omega = 12*gamma0",
    "fig8a": "product state, Omega sweep, weak coupling",
    "fig8b": "product state, Omega sweep, strong coupling",
}


def main():
    out_dir = pathlib.Path(__file__).resolve().parent / "output"
    out_dir.mkdir(exist_ok=True)

    for name in PRESETS:
        trajectories = run_preset(name)
        csv_path = out_dir / f"{name}.csv"
        with open(csv_path, "w", encoding="utf-8", newline="") as stream:
            write_csv(trajectories, stream)

        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for traj in trajectories:
            ax.plot(traj.times, traj.negativity, label=traj.label)
        ax.set_xlabel("kappa * t")
        ax.set_ylabel("negativity")
        ax.set_title(TITLES[name])
        ax.set_xlim(0.0, 20.0 if name.startswith("fig2") else 50.0)
        ax.set_ylim(-0.02, 1.02)
        ax.legend()
        fig.tight_layout()
        png_path = out_dir / f"{name}.png"
        fig.savefig(png_path, dpi=150)
        plt.close(fig)
        print(f"{name}: wrote {csv_path.name} and {png_path.name} "
              f"({len(trajectories)} curves)")

    print(f"done, see {out_dir}")


if __name__ == "__main__":
    main()

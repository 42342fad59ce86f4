"""Plot concurrence curves written by `vicsim curve`.

    vicsim curve --eta 1.4142135623730951 --bell psi --output vic.csv
    vicsim curve --p 0 --bell psi --output novic.csv
    python3 docs/plot_curves.py vic.csv novic.csv -o psi.png
"""

import argparse

import matplotlib.pyplot as plt
import pandas as pd


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("csv", nargs="+")
    parser.add_argument("-o", "--output", default="concurrence.png")
    args = parser.parse_args()

    fig, ax = plt.subplots(figsize=(5, 3.5))
    for path in args.csv:
        df = pd.read_csv(path)
        ax.plot(df["gamma_t"], df["concurrence"], label=path)
    ax.set_xlabel(r"$\gamma t$")
    ax.set_ylabel("C(t)")
    ax.set_ylim(0, 1.02)
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()

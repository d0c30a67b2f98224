"""Regenerate the synthetic datasets shipped in src/epdist/data/.

The real-data examples these stand in for (vote shares, census proportions,
literacy rates) are not redistributed; each stand-in only mimics the shape.
"""

from pathlib import Path

import numpy as np

from epdist import dataio

OUT = Path(__file__).resolve().parents[1] / "src" / "epdist" / "data"


def rounded(family, params, n, seed, decimals):
    values = dataio.simulate_dataset(family, params, n, seed).values
    return np.maximum(np.round(values, decimals), 10.0**-decimals)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    sets = {
        "unity_votes": rounded("gepd", (0.0, 0.0, 2.0), 63, 1953, 3),
        "minority_share": rounded("gepd", (0.07, 0.0, 0.0, 0.02), 348, 2011, 4),
        "literacy": rounded("epd2", (6.53, 0.0), 149, 2015, 2),
        "example6": dataio.simulate_dataset("gepd", (1.0, 0.001, 4.0), 1000, 7).values,
    }
    for name, values in sets.items():
        dataio.write_csv(values, OUT / f"{name}.csv")
        print(f"{name}: n={values.size} ones={int(np.sum(values == 1))}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Build the bundled 1000-node edge-list fixture.

Draws a four-cluster APPM graph with the tvsample CLI, then rewrites it in
SNAP style: scrambled sparse external ids, shuffled lines, some reversed
duplicate pairs and a few self-loops. The signal is a per-cluster rating
in [1, 5].
"""

import argparse
import csv
import random
import subprocess
import tempfile
from pathlib import Path


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cli", required=True, help="path to the tvsample binary")
    parser.add_argument("--out-dir", required=True)
    parser.add_argument("--seed", type=int, default=2016)
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        subprocess.run(
            [args.cli, "generate-appm", "--sizes", "100,200,300,400", "--p", "0.03", "--q", "0.001",
             "--seed", str(args.seed), "--require-connected",
             "--out-graph", tmp / "g.txt", "--out-partition", tmp / "p.csv", "--out-signal", tmp / "x.csv"],
            check=True)
        edges = [tuple(map(int, line.split())) for line in (tmp / "g.txt").read_text().splitlines()
                 if line and not line.startswith("#")]
        with open(tmp / "x.csv") as f:
            signal = {int(row["node_id"]): float(row["value"]) for row in csv.DictReader(f)}

    nodes = sorted(signal)
    external = dict(zip(nodes, rng.sample(range(10_000, 10_000_000), len(nodes))))

    lines = []
    for a, b in edges:
        a, b = external[a], external[b]
        if rng.random() < 0.5:
            a, b = b, a
        lines.append(f"{a}\t{b}")
        if rng.random() < 0.2:
            lines.append(f"{b}\t{a}")
    for node in rng.sample(nodes, 5):
        lines.append(f"{external[node]}\t{external[node]}")
    rng.shuffle(lines)

    with open(out_dir / "synthetic_1000.txt", "w") as f:
        f.write("# Synthetic co-purchase style graph: four planted clusters\n")
        f.write("# FromNodeId\tToNodeId\n")
        f.write("\n".join(lines) + "\n")
    with open(out_dir / "synthetic_1000_signal.csv", "w") as f:
        f.write("node_id,value\n")
        for node in sorted(nodes, key=lambda n: external[n]):
            f.write(f"{external[node]},{repr(1.0 + 4.0 * signal[node])}\n")


if __name__ == "__main__":
    main()

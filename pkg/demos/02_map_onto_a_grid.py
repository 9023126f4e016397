"""Map a random netlist onto a 2 x 4 processor grid.

The direct multilevel mapper optimizes the Steiner metric at every level.
The two-phase baseline partitions for connectivity first and only then
places the blocks, which is what most toolchains do today.
"""

import random

from steinermap import Config, map_hypergraph
from steinermap.instances import random_hypergraph
from steinermap.io import generate_grid

rng = random.Random(42)
hg = random_hypergraph(2500, 3750, rng, max_net_size=4, large_net_prob=0.02)
grid = generate_grid(2, 4, weight_seed=1)

for label, config in [
    ("two-phase", Config(mode="two-phase", seed=1)),
    ("direct, default", Config(seed=1)),
    ("direct, quality", Config(preset="quality", seed=1)),
]:
    res = map_hypergraph(hg, grid, config)
    print(f"{label:16s} steiner={res.objective:6d} connectivity={res.connectivity:5d} "
          f"levels={res.levels} time={res.times['total']:.2f}s")

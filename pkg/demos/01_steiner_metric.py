"""Why the Steiner metric differs from the connectivity metric.

A net spanning blocks {0, 2} on a path 0 - 1 - 2 must be routed through
block 1, so its cost is the weight of a Steiner tree, not the number of
extra blocks it touches.
"""

from steinermap import SteinerTable, TargetGraph, complete_target
from steinermap.blocksets import from_blocks

path = TargetGraph(3, [(0, 1, 1), (1, 2, 2)])
table = SteinerTable(path)
print("dist({0,2}) on the weighted path:", table.distance(from_blocks([0, 2])))
print("connectivity would charge        :", 2 - 1)

# Exact answers come from a subset table for sets of up to `size_limit`
# blocks. Larger sets fall back to an MST of the shortest-path closure,
# which is at most twice the optimum.
star = TargetGraph(4, [(0, 1, 1), (0, 2, 2), (0, 3, 3)])
leaves = from_blocks([1, 2, 3])
print("star leaves, exact (t=4):", SteinerTable(star, 4).distance(leaves))
print("star leaves, MST   (t=2):", SteinerTable(star, 2).distance(leaves))

# On a complete graph with unit edges both metrics coincide.
unit = SteinerTable(complete_target(5))
print("complete K5, four blocks:", unit.distance(from_blocks([0, 1, 3, 4])))

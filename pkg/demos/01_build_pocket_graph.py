"""Assemble a pocket graph and inspect its block layout.

A pocket graph starts from a base graph F and glues a copy of a small
gadget onto each chosen attachment vertex. The gadget is given in two
parts: H1 (the neighbours of the glued vertex) and H2 (the rest). Here we
take a 4-cycle as the base, attach at two of its vertices, and use a
single-edge gadget.
"""

from pocket_kirch import Graph, PocketSpec, build_pocket_graph, complete_graph

cycle4 = Graph(4, frozenset([(0, 1), (1, 2), (2, 3), (0, 3)]))
spec = PocketSpec(
    F=cycle4,
    attach=(0, 2),
    H1=complete_graph(1),
    H2=complete_graph(1),
)

g, layout = build_pocket_graph(spec)

print(f"base order n = {spec.n}, copies k = {spec.k}, gadget order m = {spec.m}")
print(f"pocket graph: {g.order} vertices, {g.size} edges")
print()
print("edges:", sorted(g.edges))
print()

# every vertex has a home block: the base, an H1 slot, or an H2 slot
for v in range(g.order):
    block, local, copy = layout.locate(v)
    print(f"  vertex {v:2d} -> block {block:>2}, local index {local}, copy {copy}")

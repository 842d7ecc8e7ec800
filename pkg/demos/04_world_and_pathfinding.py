"""Walkthrough: the environment tree, stale views, and grid pathfinding."""

from townsim.environment import (
    AgentEnvView, CollisionMap, EnvNode, EnvTree, path_find, perceive,
    render_containment, render_subtree,
)

root = EnvNode("Smallville", "world")
house = root.add(EnvNode("The Lin family's house", "area"))
kitchen = house.add(EnvNode("kitchen", "subarea", footprint=[(1, 1)]))
kitchen.add(EnvNode("stove", "object", status="off", footprint=[(1, 1)]))
kitchen.add(EnvNode("refrigerator", "object", status="stocked", footprint=[(1, 2)]))
tree = EnvTree(root)

stove = tree.resolve("The Lin family's house: kitchen: stove")
print("containment as language:", repr(render_containment(stove)))
print("whole kitchen:", repr(render_subtree(kitchen)))

view = AgentEnvView("john")
view.learn(tree, stove.path(), now=0, status="off")
stove.status = "burning"
print("\nauthoritative stove:", stove.status,
      "| john remembers:", view.remembered_status[stove.path()])
perceive(view, tree, "john", (1, 2), {}, now=30, radius=4)
print("after walking back in, john remembers:",
      view.remembered_status[stove.path()])

grid = CollisionMap([
    "##########",
    "#........#",
    "#.####.#.#",
    "#.#..#.#.#",
    "#.#..#.#.#",
    "#....#...#",
    "##########",
])
path = path_find(grid, (1, 1), (5, 8))
print(f"\nshortest path around the walls ({len(path)} steps):")
for r in range(grid.height):
    print("".join("o" if (r, c) in path else grid.rows[r][c]
                  for c in range(grid.width)))

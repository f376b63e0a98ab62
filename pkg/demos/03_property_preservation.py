"""How often does each augmentation keep a graph connected?

DropEdge is calibrated so it changes about as many edges as the mask
variant, which keeps the comparison fair.
"""
from dualprism import AugmentConfig
from dualprism.datasets import random_graph
from dualprism.experiments import band_resilience, compare_dp_dropedge, connected_random_graphs

graphs = [random_graph(20, 0.4, 900 + k) for k in range(40)]
res = compare_dp_dropedge(graphs, AugmentConfig("mask", r_f=0.4, r_a=0.3), seeds=5)
for key in ("dp", "drop_edge"):
    r = res[key]
    print(f"{r['method']:10s} preserved {r['preservation_rate']:.3f}, "
          f"{r['mean_edge_changes']:.2f} edges changed on average")
print("change ratio (drop-edge / dp):", round(res["change_ratio"], 3))

# Random edge drops move the high end of the spectrum more than the low end.
low, high = band_resilience(connected_random_graphs(20, 30, 0.3, seed=8), ratio=0.2, seeds=5)
print(f"mean |dl| bottom quartile {low:.3f}, top quartile {high:.3f}")

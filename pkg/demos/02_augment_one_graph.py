"""Augment one graph with the noise and mask variants and a DropEdge baseline."""
import numpy as np

from dualprism import AugmentConfig, dp_augment, drop_edge, property_profile
from dualprism.augment import num_augmented
from dualprism.datasets import random_graph

np.set_printoptions(precision=2, suppress=True)
rng = np.random.default_rng(0)

g = random_graph(16, 0.35, 3)
print(f"n={g.n}, m={g.num_edges}")
print("before:", property_profile(g).as_dict())

noise = dp_augment(g, AugmentConfig("noise", r_f=0.5, r_a=0.5, sigma=1.0), rng)
print("original spectrum:", noise.original_eigenvalues)
print("noised spectrum:  ", noise.new_eigenvalues)
print("perturbed indices:", noise.perturbed)

mask = dp_augment(g, AugmentConfig("mask", r_f=0.4, r_a=0.3), rng)
base = drop_edge(g, 0.2, rng)

for name, rec in (("noise", noise), ("mask", mask), ("drop-edge", base)):
    prof = property_profile(rec.augmented)
    print(f"{name:10s} -{rec.edges_dropped} +{rec.edges_added} edges, "
          f"connected={prof.connected} diameter={prof.diameter} radius={prof.radius}")

# everything below the top half is left untouched, bit for bit
k = g.n - num_augmented(g.n, 0.5)
assert np.array_equal(noise.new_eigenvalues[:k], noise.original_eigenvalues[:k])
print(f"lowest {k} eigenvalues unchanged")

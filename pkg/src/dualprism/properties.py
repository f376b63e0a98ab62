"""Structural graph properties and their spectral counterparts.

Distances come from one breadth-first search per node. Disconnected graphs
report infinite diameter and radius (``math.inf``) but keep a finite ASPL,
averaged over the node pairs that are joined by some path.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DegenerateGraph, DimensionTooSmall, DisconnectedGraph
from .graph import Graph, max_degree
from .spectral import ZERO_TOL, Spectrum, laplacian_spectrum, zero_eigenvalue_multiplicity

INF = math.inf


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distance from ``source`` to every node; -1 marks unreachable."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    nbrs = g.neighbors
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for w in nbrs[v]:
            if dist[w] < 0:
                dist[w] = dv
                queue.append(w)
    return dist


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [v for v, d in enumerate(bfs_distances(g, s)) if d >= 0]
        for v in comp:
            seen[v] = True
        comps.append(comp)
    return comps


def component_count(g: Graph) -> int:
    return len(components(g))


@dataclass(frozen=True)
class PropertyProfile:
    connected: bool
    components: int
    diameter: float
    radius: float
    periphery_size: int
    aspl: float
    fiedler: float

    def as_dict(self) -> dict:
        return asdict(self)


def fiedler_value(s) -> float:
    """Second-smallest Laplacian eigenvalue (algebraic connectivity)."""
    w = s.eigenvalues if isinstance(s, Spectrum) else np.asarray(s, dtype=float)
    if w.size < 2:
        raise DimensionTooSmall("the Fiedler value needs at least two nodes")
    return float(w[1])


def property_profile(g: Graph, s: Spectrum | None = None) -> PropertyProfile:
    """Connectivity, distance statistics and Fiedler value of ``g``.

    Every node of a disconnected graph has infinite eccentricity, so its
    periphery is the whole node set. ASPL is 0 when no pair of distinct
    nodes is connected; the Fiedler value is NaN for a single node.
    """
    if g.n == 0:
        raise DegenerateGraph("property profile of an empty graph")
    if s is None:
        s = laplacian_spectrum(g)

    ecc = []
    path_sum = 0
    pairs = 0
    for v in range(g.n):
        dist = bfs_distances(g, v)
        reach = [d for d in dist if d > 0]
        path_sum += sum(reach)
        pairs += len(reach)
        if len(reach) + 1 == g.n:
            ecc.append(max(reach, default=0))
        else:
            ecc.append(INF)
    n_comp = component_count(g)

    connected = n_comp == 1
    diameter = max(ecc)
    radius = min(ecc) if connected else INF
    return PropertyProfile(
        connected=connected,
        components=n_comp,
        diameter=diameter,
        radius=radius,
        periphery_size=sum(1 for e in ecc if e == diameter),
        aspl=path_sum / pairs if pairs else 0.0,
        fiedler=fiedler_value(s) if g.n >= 2 else math.nan,
    )


def diameter_bounds(n: int, m: int, lambda1: float, tol: float = ZERO_TOL):
    """Spectral lower and upper bounds on the diameter of a connected graph.

    ``4 / (n * lambda1) <= diameter <= 2 * ceil(sqrt(2 * m / lambda1) * log2(n))``
    where ``m`` is the maximum degree and ``lambda1`` the Fiedler value.
    """
    if lambda1 <= tol:
        raise DisconnectedGraph(f"Fiedler value {lambda1:.3g} is not positive")
    if n < 2 or m < 1:
        raise DimensionTooSmall("diameter bounds need n >= 2 and max degree >= 1")
    lower = 4.0 / (n * lambda1)
    upper = 2.0 * math.ceil(math.sqrt(2.0 * m / lambda1) * math.log2(n))
    return lower, upper


def graph_diameter_bounds(g: Graph, s: Spectrum | None = None):
    if s is None:
        s = laplacian_spectrum(g)
    return diameter_bounds(g.n, max_degree(g), fiedler_value(s))


def _diff(after: float, before: float) -> float:
    if math.isinf(after) or math.isinf(before):
        return 0.0 if after == before else (INF if after > before else -INF)
    return after - before


@dataclass(frozen=True)
class PropertyDelta:
    """Field-wise ``after - before``; connectivity as a transition label.

    ``connectivity`` is ``"preserved"`` when the connected flag did not
    change, ``"broken"`` for connected -> disconnected and ``"restored"``
    for the reverse.
    """

    connectivity: str
    components: int
    diameter: float
    radius: float
    periphery_size: int
    aspl: float
    fiedler: float

    @property
    def preserved(self) -> bool:
        return self.connectivity == "preserved"

    def as_dict(self) -> dict:
        return asdict(self)


def property_delta(before: PropertyProfile, after: PropertyProfile) -> PropertyDelta:
    if before.connected == after.connected:
        conn = "preserved"
    elif before.connected:
        conn = "broken"
    else:
        conn = "restored"
    return PropertyDelta(
        connectivity=conn,
        components=after.components - before.components,
        diameter=_diff(after.diameter, before.diameter),
        radius=_diff(after.radius, before.radius),
        periphery_size=after.periphery_size - before.periphery_size,
        aspl=after.aspl - before.aspl,
        fiedler=after.fiedler - before.fiedler,
    )


def is_connected_spectrally(s: Spectrum, tol: float = ZERO_TOL) -> bool:
    return zero_eigenvalue_multiplicity(s, tol) == 1

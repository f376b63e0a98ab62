"""DP spectral augmentation (noise and mask) and the random structural baselines.

DP-Noise and DP-Mask perturb only the high-frequency end of the Laplacian
spectrum, rebuild the Laplacian from the original eigenvectors, and read
the augmented edge set off the negated off-diagonal part.

Random draws are taken from a :class:`numpy.random.Generator` (PCG64) in a
fixed order: the Bernoulli mask vector first, then, for the noise branch,
the standard-normal vector. Both vectors have length ``N_a`` whether or
not any entry ends up selected.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateGraph
from .graph import Graph
from .spectral import laplacian_spectrum, reconstruct, spectral_l2_distance

# reconstructed weights this close to tau count as "no edge"
TIE_EPS = 1e-12


class AugType(str, enum.Enum):
    NOISE = "noise"
    MASK = "mask"


@dataclass(frozen=True)
class AugmentConfig:
    """Parameters of one DP (noise or mask) augmentation.

    ``band`` selects which end of the ascending spectrum is eligible:
    ``"high"`` (the method proper) or ``"low"`` (for contrast studies).
    ``noise_mode="additive"`` is ``max(0, lam + sigma * eps)``;
    ``"relative"`` is ``max(0, 1 + sigma * eps) * lam``, which keeps the
    perturbation on the same scale for both bands.
    """

    aug_type: AugType = AugType.NOISE
    r_f: float = 0.5
    r_a: float = 0.5
    sigma: float = 1.0
    tau: float = 0.5
    seed: int = 0
    band: str = "high"
    noise_mode: str = "additive"

    def __post_init__(self):
        try:
            object.__setattr__(self, "aug_type", AugType(self.aug_type))
        except ValueError:
            raise ConfigError(f"unknown augmentation type {self.aug_type!r}") from None
        for name in ("r_f", "r_a"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {v}")
        if not self.sigma >= 0:
            raise ConfigError(f"sigma must be non-negative, got {self.sigma}")
        if not self.tau > 0:
            raise ConfigError(f"tau must be positive, got {self.tau}")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if self.band not in ("high", "low"):
            raise ConfigError(f"band must be 'high' or 'low', got {self.band!r}")
        if self.noise_mode not in ("additive", "relative"):
            raise ConfigError(f"unknown noise_mode {self.noise_mode!r}")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(int(self.seed))


@dataclass(frozen=True, eq=False)
class AugmentationRecord:
    """One original/augmented pair and what changed between them.

    For DP runs ``delta_l2`` is the distance between the original spectrum
    and the edited one (``new_eigenvalues``); for the baselines it is the
    distance between the Laplacian spectra of the two graphs, or NaN when
    the node count changed.
    """

    original: Graph
    augmented: Graph
    edges_dropped: int
    edges_added: int
    delta_l2: float
    original_eigenvalues: np.ndarray | None = None
    new_eigenvalues: np.ndarray | None = None
    perturbed: np.ndarray | None = None
    pre_binarization_laplacian: np.ndarray | None = None
    kept_nodes: tuple[int, ...] | None = None

    @property
    def edges_changed(self) -> int:
        return self.edges_dropped + self.edges_added


def num_augmented(n: int, r_f: float) -> int:
    """``N_a``: how many eigenvalues are eligible for perturbation."""
    return int(math.floor(n * r_f))


def band_indices(n: int, n_a: int, band: str = "high") -> np.ndarray:
    """0-based spectrum positions of the eligible eigenvalues.

    Position ``k`` of the result is the ``(k+1)``-th largest eigenvalue for
    the high band and the ``(k+1)``-th smallest for the low band.
    """
    if band == "high":
        return np.arange(n - 1, n - 1 - n_a, -1)
    return np.arange(n_a)


def binarize(w, tau: float = 0.5) -> Graph:
    """Edge set ``{(i, j) : i < j, w[i, j] > tau}`` of a weighted matrix.

    The diagonal is ignored. Entries within ``1e-12`` of ``tau`` are
    treated as not exceeding it.
    """
    w = np.asarray(w, dtype=float)
    n = w.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    hit = w[iu, ju] > tau + TIE_EPS
    return Graph(n, zip(iu[hit].tolist(), ju[hit].tolist()))


def _edit_spectrum(lam, cfg, rng):
    n = lam.size
    n_a = num_augmented(n, cfg.r_f)
    idx = band_indices(n, n_a, cfg.band)
    mask = rng.random(n_a) < cfg.r_a
    new = lam.copy()
    if cfg.aug_type is AugType.NOISE:
        eps = rng.standard_normal(n_a)
        sel = idx[mask]
        if cfg.noise_mode == "additive":
            new[sel] = np.maximum(0.0, lam[sel] + cfg.sigma * eps[mask])
        else:
            new[sel] = np.maximum(0.0, 1.0 + cfg.sigma * eps[mask]) * lam[sel]
    else:
        new[idx[mask]] = 0.0
    return new, idx[mask]


def dp_augment(g: Graph, cfg: AugmentConfig, rng=None, keep_laplacian=False):
    """DP augmentation of a single graph.

    Parameters
    ----------
    g : Graph
    cfg : AugmentConfig
    rng : numpy.random.Generator, optional
        Defaults to a fresh generator seeded with ``cfg.seed``.
    keep_laplacian : bool
        Retain the real-valued reconstructed Laplacian on the record.

    Returns
    -------
    AugmentationRecord
        The augmented graph keeps ``g.label`` and ``g.features``.
    """
    if g.n == 0:
        raise DegenerateGraph("cannot augment a graph with no nodes")
    if rng is None:
        rng = cfg.rng()
    spec = laplacian_spectrum(g)
    lam = spec.eigenvalues
    new, touched = _edit_spectrum(lam, cfg, rng)

    l_hat = reconstruct(spec, new)
    a_hat = -l_hat
    np.fill_diagonal(a_hat, 0.0)
    aug = g.with_edges(binarize(a_hat, cfg.tau).edges)

    return AugmentationRecord(
        original=g,
        augmented=aug,
        edges_dropped=len(g.edges - aug.edges),
        edges_added=len(aug.edges - g.edges),
        delta_l2=spectral_l2_distance(lam, new),
        original_eigenvalues=lam,
        new_eigenvalues=new,
        perturbed=np.sort(touched),
        pre_binarization_laplacian=l_hat if keep_laplacian else None,
    )


def _check_ratio(ratio):
    if not 0.0 <= ratio <= 1.0:
        raise ConfigError(f"ratio must lie in [0, 1], got {ratio}")


def _laplacian_distance(a: Graph, b: Graph) -> float:
    return spectral_l2_distance(
        laplacian_spectrum(a).eigenvalues, laplacian_spectrum(b).eigenvalues
    )


def drop_edge(g: Graph, ratio: float, rng) -> AugmentationRecord:
    """Remove ``floor(ratio * |E|)`` edges chosen uniformly without replacement."""
    _check_ratio(ratio)
    edges = g.sorted_edges()
    k = int(math.floor(ratio * len(edges)))
    drop = set(rng.choice(len(edges), size=k, replace=False).tolist()) if k else set()
    aug = g.with_edges(e for t, e in enumerate(edges) if t not in drop)
    return AugmentationRecord(
        original=g,
        augmented=aug,
        edges_dropped=k,
        edges_added=0,
        delta_l2=_laplacian_distance(g, aug) if g.n else 0.0,
    )


def drop_node(g: Graph, ratio: float, rng) -> AugmentationRecord:
    """Remove ``floor(ratio * n)`` uniformly chosen nodes and their edges.

    Survivors are renumbered densely in their original order; the mapping
    is kept in ``kept_nodes`` (new index -> old index). ``edges_dropped``
    counts the original edges that lost an endpoint.
    """
    _check_ratio(ratio)
    k = int(math.floor(ratio * g.n))
    removed = set(rng.choice(g.n, size=k, replace=False).tolist()) if k else set()
    kept = [v for v in range(g.n) if v not in removed]
    new_id = {old: new for new, old in enumerate(kept)}
    edges = [(new_id[i], new_id[j]) for i, j in g.edges if i in new_id and j in new_id]
    aug = Graph(len(kept), edges, g.label, g.features)
    return AugmentationRecord(
        original=g,
        augmented=aug,
        edges_dropped=g.num_edges - aug.num_edges,
        edges_added=0,
        delta_l2=0.0 if k == 0 else math.nan,
        kept_nodes=tuple(kept),
    )

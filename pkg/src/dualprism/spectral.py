"""Symmetric eigendecomposition, reconstruction and spectral distances."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EdgeStateMismatch, NonConvergence
from .graph import Graph, laplacian, symmetrize

DEFAULT_TOL = 1e-10
ZERO_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Ascending eigenvalues and the matching orthonormal eigenvectors.

    ``eigenvectors[:, k]`` is the unit eigenvector for ``eigenvalues[k]``.
    Both arrays are read-only.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        w = np.array(self.eigenvalues, dtype=float)
        u = np.array(self.eigenvectors, dtype=float)
        if w.ndim != 1 or u.shape != (w.size, w.size):
            raise DimensionMismatch(
                f"eigenvalues {w.shape} do not match eigenvectors {u.shape}"
            )
        w.setflags(write=False)
        u.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", u)

    @property
    def n(self) -> int:
        return self.eigenvalues.size


def _fix_signs(u: np.ndarray) -> np.ndarray:
    # the largest-magnitude entry of every column is made nonnegative
    if u.size == 0:
        return u
    rows = np.argmax(np.abs(u), axis=0)
    signs = np.where(u[rows, np.arange(u.shape[1])] < 0, -1.0, 1.0)
    return u * signs


def eigendecompose(m, tol: float = DEFAULT_TOL) -> Spectrum:
    """Full eigendecomposition of a real symmetric matrix.

    Backed by LAPACK ``syevd`` through :func:`numpy.linalg.eigh`, which is
    deterministic for a given input. The reconstruction residual is
    checked against ``tol * n`` (scaled by the matrix magnitude when that
    exceeds one); exceeding it raises :class:`NonConvergence`.

    Parameters
    ----------
    m : array_like, shape (n, n)
        Symmetric matrix. Integer Laplacians are converted to float here.
    tol : float
        Per-entry tolerance.

    Returns
    -------
    Spectrum
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return Spectrum(np.zeros(0), np.zeros((0, 0)))
    if not np.all(np.isfinite(a)):
        raise NonConvergence("matrix has non-finite entries")
    scale = max(1.0, float(np.abs(a).max()))
    if np.abs(a - a.T).max() > tol * scale:
        raise ValueError("matrix is not symmetric")
    a = symmetrize(a)
    try:
        w, u = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc
    u = _fix_signs(u)
    residual = np.abs((u * w) @ u.T - a).max()
    if not residual <= tol * n * scale:
        raise NonConvergence(
            f"reconstruction residual {residual:.3e} exceeds {tol * n * scale:.3e}"
        )
    return Spectrum(w, u)


def laplacian_spectrum(g: Graph, tol: float = DEFAULT_TOL) -> Spectrum:
    """Spectrum of the graph Laplacian.

    The Laplacian is positive semidefinite, so round-off negatives (the
    zero eigenvalues come back as about -1e-16) are clamped to 0.
    """
    s = eigendecompose(laplacian(g), tol)
    return Spectrum(np.maximum(s.eigenvalues, 0.0), s.eigenvectors)


def reconstruct(s: Spectrum, new_eigenvalues) -> np.ndarray:
    """Return ``U diag(new_eigenvalues) U^T``, symmetrized."""
    lam = np.asarray(new_eigenvalues, dtype=float)
    if lam.shape != (s.n,):
        raise DimensionMismatch(f"expected {s.n} eigenvalues, got shape {lam.shape}")
    u = s.eigenvectors
    return symmetrize((u * lam) @ u.T)


def _values(x) -> np.ndarray:
    return x.eigenvalues if isinstance(x, Spectrum) else np.asarray(x, dtype=float)


def spectral_l2_distance(a, b) -> float:
    """Euclidean distance between two ascending eigenvalue vectors.

    Accepts :class:`Spectrum` objects or plain eigenvalue arrays.
    """
    wa, wb = _values(a), _values(b)
    if wa.shape != wb.shape:
        raise DimensionMismatch(f"spectra of size {wa.size} and {wb.size}")
    return float(np.sqrt(np.sum((wa - wb) ** 2)))


def flip_edge(g: Graph, flip: tuple[int, int], add: bool) -> Graph:
    i, j = flip
    present = g.has_edge(i, j)
    if add and present:
        raise EdgeStateMismatch(f"edge ({i}, {j}) already present")
    if not add and not present:
        raise EdgeStateMismatch(f"edge ({i}, {j}) not present")
    e = (min(i, j), max(i, j))
    return g.with_edges(g.edges | {e} if add else g.edges - {e})


def edge_flip_deltas(g: Graph, flip: tuple[int, int], add: bool) -> np.ndarray:
    """Per-eigenvalue ``|lambda_k(g') - lambda_k(g)|`` after one edge flip."""
    before = laplacian_spectrum(g).eigenvalues
    after = laplacian_spectrum(flip_edge(g, flip, add)).eigenvalues
    return np.abs(after - before)


def zero_eigenvalue_multiplicity(s, tol: float = ZERO_TOL) -> int:
    """Number of eigenvalues with magnitude at most ``tol``.

    For a Laplacian this is the number of connected components.
    """
    return int(np.count_nonzero(np.abs(_values(s)) <= tol))

import logging
import math
from typing import Optional, Tuple

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
from scipy.sparse.csgraph import breadth_first_order

from spectral_sketch.core.config import get_settings
from spectral_sketch.core.exceptions import (
    DisconnectedGraphError,
    EigensolverError,
    GraphValidationError,
)
from spectral_sketch.models.graph import Cut, WeightedGraph
from spectral_sketch.schemas.report import EigenMethod, SpectralCertificate

logger = logging.getLogger(__name__)


def _require_connected(compact: WeightedGraph) -> None:
    if compact.n < 2:
        raise GraphValidationError("Spectral quantities need a graph with at least one edge")
    order = breadth_first_order(compact.adjacency(), 0, directed=False, return_predecessors=False)
    if order.size != compact.n:
        raise DisconnectedGraphError(
            f"Graph is disconnected: BFS reached {order.size} of {compact.n} vertices"
        )


def _dense_fiedler(compact: WeightedGraph) -> Tuple[float, np.ndarray]:
    deg = compact.weighted_degrees()
    inv_sqrt = 1.0 / np.sqrt(deg)
    adj = compact.adjacency().toarray()
    lhat = np.eye(compact.n) - inv_sqrt[:, None] * adj * inv_sqrt[None, :]
    vals, vecs = sla.eigh(lhat)
    return float(vals[1]), vecs[:, 1]


def _power_fiedler(compact: WeightedGraph, tol: float, max_iter: int, rng: np.random.Generator) -> Tuple[float, np.ndarray]:
    """Second eigenpair of the normalized Laplacian via power iteration.

    Iterates on ``M = I + D^-1/2 A D^-1/2`` (spectrum in [0, 2]) with the top
    eigenvector ``D^1/2 1`` projected out, so the dominant remaining eigenvalue
    is ``2 - lambda_1``.
    """
    deg = compact.weighted_degrees()
    inv_sqrt = 1.0 / np.sqrt(deg)
    norm_adj = sp.diags(inv_sqrt) @ compact.adjacency() @ sp.diags(inv_sqrt)
    top = np.sqrt(deg)
    top /= np.linalg.norm(top)

    z = rng.standard_normal(compact.n)
    z -= top * (top @ z)
    z /= np.linalg.norm(z)
    rho = 0.0
    for it in range(max_iter):
        y = z + norm_adj @ z
        y -= top * (top @ y)
        nrm = np.linalg.norm(y)
        if nrm == 0.0:
            raise EigensolverError("Power iteration collapsed to the zero vector")
        new_rho = float(z @ y)
        z = y / nrm
        if it > 0 and abs(new_rho - rho) <= tol * max(abs(new_rho), 1e-12):
            logger.debug(f"Power iteration converged after {it + 1} steps")
            return 2.0 - new_rho, z
        rho = new_rho
    raise EigensolverError(f"Power iteration did not converge within {max_iter} steps")


def _fiedler(compact: WeightedGraph, seed: Optional[int] = None) -> Tuple[float, np.ndarray, EigenMethod]:
    settings = get_settings()
    _require_connected(compact)
    if compact.n <= settings.DENSE_EIG_LIMIT:
        lam, vec = _dense_fiedler(compact)
        method = EigenMethod.DENSE_EIG
    else:
        rng = np.random.default_rng(0 if seed is None else seed)
        lam, vec = _power_fiedler(compact, settings.POWER_ITERATION_TOL,
                                  settings.POWER_ITERATION_MAX_ITER, rng)
        method = EigenMethod.POWER_ITERATION
    if lam <= 1e-12:
        raise EigensolverError(f"lambda_1 = {lam:.3e} on a connected graph")
    return lam, vec, method


def lambda1(g: WeightedGraph) -> SpectralCertificate:
    """Second-smallest eigenvalue of the normalized Laplacian of a connected graph."""
    compact, _ = g.relabel()
    lam, _, method = _fiedler(compact)
    return SpectralCertificate(lambda1=lam, method=method)


def spectral_split(g: WeightedGraph) -> Tuple[SpectralCertificate, Cut]:
    """Certificate and sweep cut from a single eigen-solve."""
    compact, ids = g.relabel()
    lam, vec, method = _fiedler(compact)
    cert = SpectralCertificate(lambda1=lam, method=method)
    return cert, _sweep(g, compact, ids, vec)


def sweep_cut(g: WeightedGraph) -> Cut:
    """Best prefix cut of the vertices ordered by the ``D^-1/2``-scaled Fiedler vector."""
    return spectral_split(g)[1]


def _sweep(g: WeightedGraph, compact: WeightedGraph, ids: np.ndarray, vec: np.ndarray) -> Cut:
    k = compact.n
    deg = compact.weighted_degrees()
    f = vec / np.sqrt(deg)
    f = np.round(f / np.max(np.abs(f)), 12)
    order = np.lexsort((ids, f))
    pos = np.empty(k, dtype=np.int64)
    pos[order] = np.arange(k)

    vol_prefix = np.cumsum(deg[order])[:-1]
    total = float(deg.sum())
    # edge (a, b) crosses prefix cuts of size min(pa, pb) + 1 .. max(pa, pb)
    pa = np.minimum(pos[compact.u], pos[compact.v])
    pb = np.maximum(pos[compact.u], pos[compact.v])
    diff = np.zeros(k + 1)
    np.add.at(diff, pa + 1, compact.w)
    np.add.at(diff, pb + 1, -compact.w)
    cut_prefix = np.cumsum(diff)[1:k]
    phi = cut_prefix / np.minimum(vol_prefix, total - vol_prefix)
    best = int(np.argmin(phi))
    cut = Cut.from_side(g, ids[order[: best + 1]])

    # sweep guarantee against the Rayleigh quotient of the vector actually swept
    centered = f - (deg @ f) / total
    lap = compact.laplacian()
    rayleigh = float(centered @ (lap @ centered)) / float(deg @ (centered * centered))
    bound = math.sqrt(2.0 * max(rayleigh, 0.0))
    if cut.conductance > bound * (1.0 + 1e-6) + 1e-9:
        raise EigensolverError(
            f"Sweep cut conductance {cut.conductance:.6g} exceeds sqrt(2 R) = {bound:.6g}"
        )
    return cut

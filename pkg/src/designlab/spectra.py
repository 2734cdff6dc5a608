"""Laplacian, Dirichlet form and Dirichlet eigenvalues of vertex subsets.

The Dirichlet eigenvalue of a subset is the minimum Rayleigh quotient over
functions supported on it.  Two routes are provided: dense restriction of
the Laplacian, and, for unions of spheres in a scheme, the quotient matrix
built from intersection numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .spaces import DEFAULT_TOL, Space


@dataclass(frozen=True)
class SubsetEig:
    """A subset with its Dirichlet eigenvalue and first eigenfunction.

    The eigenfunction is nonnegative, unit-norm, and zero outside the
    subset.  ``method`` records which route produced it.
    """

    omega: np.ndarray              # sorted vertex ids
    value: float
    eigenfunction: np.ndarray      # (N,)
    method: str                    # "dense" | "quotient"
    origin: int | None = None
    spheres: tuple[int, ...] | None = None


def laplacian_apply(space: Space, f: np.ndarray) -> np.ndarray:
    """Apply the Laplacian of the chosen relation class to f."""
    f = np.asarray(f, dtype=float)
    if f.shape != (space.n_vertices,):
        raise ValueError("function has wrong length")
    return space.degree * f - space.adjacency(space.laplacian_class) @ f


def dirichlet_form(space: Space, f: np.ndarray, g: np.ndarray | None = None) -> float:
    """Dirichlet energy <f, Lap g> (g defaults to f)."""
    f = np.asarray(f, dtype=float)
    if g is None:
        g = f
    return float(f @ laplacian_apply(space, g))


def dirichlet_form_edges(space: Space, f: np.ndarray) -> float:
    """Edge-sum form of the Dirichlet energy, for cross-checking."""
    f = np.asarray(f, dtype=float)
    adj = space.classes == space.laplacian_class
    diff = f[:, None] - f[None, :]
    # adj holds ordered pairs, so each edge is counted twice
    return float(0.5 * (diff[adj] ** 2).sum())


def _sign_normalize(vec: np.ndarray, tol: float) -> np.ndarray:
    peak = np.argmax(np.abs(vec))
    if vec[peak] < 0:
        vec = -vec
    vec = vec.copy()
    vec[(vec < 0) & (vec >= -tol)] = 0.0
    return vec


def _min_block_eigen(matrix: np.ndarray, adjacency: np.ndarray, tol: float):
    """Smallest eigenvalue over connected blocks of a restricted matrix.

    Blocks are iterated in order of lowest member, so a tie keeps the block
    with the lowest minimum index.  Returns (value, vector) with the vector
    in the coordinates of ``matrix``.
    """
    n = matrix.shape[0]
    n_comp, comp = connected_components(csr_matrix(adjacency), directed=False)
    order = sorted(range(n_comp), key=lambda c: int(np.flatnonzero(comp == c)[0]))
    best_val, best_vec = None, None
    for c in order:
        idx = np.flatnonzero(comp == c)
        sub = matrix[np.ix_(idx, idx)]
        w, v = np.linalg.eigh(sub)
        if best_val is None or w[0] < best_val - tol:
            best_val = float(w[0])
            best_vec = np.zeros(n)
            best_vec[idx] = v[:, 0]
    return best_val, best_vec


def subset_eigen(space: Space, omega, tol: float = DEFAULT_TOL) -> SubsetEig:
    """Dirichlet eigenvalue of a subset by dense restriction.

    The smallest eigenvalue of the principal Laplacian submatrix on omega;
    if the restriction is reducible, the minimising block's Perron vector
    is used and the others are set to zero.
    """
    omega = np.unique(np.asarray(omega, dtype=int))
    if omega.size == 0:
        raise ValueError("omega is empty")
    if omega.min() < 0 or omega.max() >= space.n_vertices:
        raise ValueError("omega contains out-of-range vertices")
    lap = space.laplacian()
    sub = lap[np.ix_(omega, omega)]
    adj = space.classes[np.ix_(omega, omega)] == space.laplacian_class
    val, vec = _min_block_eigen(sub, adj, tol)
    if -tol * space.degree < val < 0:
        val = 0.0
    psi = np.zeros(space.n_vertices)
    psi[omega] = _sign_normalize(vec, tol)
    psi /= np.linalg.norm(psi)
    return SubsetEig(omega=omega, value=val, eigenfunction=psi, method="dense")


def quotient_matrix(space: Space, spheres) -> tuple[np.ndarray, np.ndarray]:
    """Symmetrised quotient Laplacian on a set of sphere indices.

    Row/column a of the raw quotient is  deg*delta_ab - p^a_{r,b};
    conjugation by diag(sqrt(n_a)) makes it symmetric, which is asserted
    via the identity n_a p^a_{r,b} = n_b p^b_{r,a}.  Returns the symmetric
    matrix and the sqrt-valency weights.
    """
    if space.intersection_numbers is None:
        raise ValueError("space has no intersection numbers; validate it first")
    spheres = sorted(set(int(s) for s in spheres))
    if not spheres:
        raise ValueError("sphere set is empty")
    if spheres[0] < 0 or spheres[-1] > space.n_classes:
        raise ValueError("sphere index out of range")
    p = space.intersection_numbers
    r = space.laplacian_class
    nval = space.valencies
    for a in spheres:
        if nval[a] == 0:
            raise ValueError(f"sphere {a} is empty")
        for b in spheres:
            if nval[a] * p[a, r, b] != nval[b] * p[b, r, a]:
                raise RuntimeError(
                    f"valency-intersection symmetry fails at classes {a},{b}")
    idx = np.array(spheres)
    raw = space.degree * np.eye(len(idx)) - p[np.ix_(idx, [r], idx)][:, 0, :]
    root = np.sqrt(nval[idx].astype(float))
    sym = raw * (root[:, None] / root[None, :])
    return sym, root


def spherical_subset_eigen(space: Space, origin: int, spheres,
                           tol: float = DEFAULT_TOL) -> SubsetEig:
    """Dirichlet eigenvalue of a union of spheres via the quotient matrix.

    Classes outside the sphere set are dropped (Dirichlet condition); the
    returned eigenfunction is the zero-extended sphere-constant vector.
    """
    sym, root = quotient_matrix(space, spheres)
    spheres = tuple(sorted(set(int(s) for s in spheres)))
    adj = np.abs(sym) > tol * max(1.0, space.degree)
    np.fill_diagonal(adj, True)
    val, u = _min_block_eigen(sym, adj, tol)
    if -tol * space.degree < val < 0:
        val = 0.0
    v = u / root                       # back to sphere-function coordinates
    ring = space.classes[origin]
    psi = np.zeros(space.n_vertices)
    for a, va in zip(spheres, v):
        psi[ring == a] = va
    psi = _sign_normalize(psi, tol)
    psi /= np.linalg.norm(psi)
    omega = np.flatnonzero(np.isin(ring, spheres))
    return SubsetEig(omega=omega, value=val, eigenfunction=psi,
                     method="quotient", origin=origin, spheres=spheres)


def load_subset(path: str) -> np.ndarray:
    """Read a subset file: one vertex id per line."""
    with open(path, encoding="utf-8") as fh:
        ids = [int(ln.split()[0]) for ln in fh if ln.strip() and not ln.startswith("#")]
    if not ids:
        raise ValueError(f"{path}: empty subset file")
    return np.array(sorted(set(ids)), dtype=int)

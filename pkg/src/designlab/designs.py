"""Designs, the spectral lower bound, and the covering-chain certificate.

A design of strength t is a weighted vertex set on which every Laplacian
eigenfunction with eigenvalue in (0, t) sums to zero.  The main bound says
|D| >= (t - lambda)/t * N/|Omega| for any subset Omega with Dirichlet
eigenvalue lambda < t; the mechanism behind it is made explicit by summing
translated copies of Omega's first eigenfunction and checking the chain

    |D| * |Omega| >= |union Omega_i| >= |supp F| >= (t - lambda)/t * N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spaces import DEFAULT_TOL, Space, SpectralData
from .spectra import SubsetEig, dirichlet_form, spherical_subset_eigen, subset_eigen

STRENGTH_UNBOUNDED = math.inf


@dataclass(frozen=True)
class Design:
    """A weighted finite vertex set."""

    points: np.ndarray             # sorted vertex ids, no duplicates
    weights: np.ndarray            # positive integers

    @property
    def size(self) -> int:
        """Total weight (cardinality for an unweighted design)."""
        return int(self.weights.sum())

    def indicator(self, n: int) -> np.ndarray:
        w = np.zeros(n)
        w[self.points] = self.weights
        return w


def make_design(points, weights=None, n_vertices: int | None = None) -> Design:
    points = np.asarray(list(points), dtype=int)
    if weights is None:
        weights = np.ones(len(points), dtype=int)
    else:
        weights = np.asarray(list(weights), dtype=int)
    if len(points) == 0:
        raise ValueError("design is empty")
    if len(np.unique(points)) != len(points):
        raise ValueError("duplicate design points; use weights instead")
    if (weights < 1).any():
        raise ValueError("weights must be >= 1")
    if n_vertices is not None and (points.min() < 0 or points.max() >= n_vertices):
        raise ValueError("design point out of range")
    order = np.argsort(points)
    return Design(points=points[order], weights=weights[order])


def load_design(path: str, n_vertices: int | None = None) -> Design:
    """Read a design file: one ``<vertex-id> [weight]`` per line."""
    pts, wts = [], []
    with open(path, encoding="utf-8") as fh:
        for ln in fh:
            tok = ln.split()
            if not tok or tok[0].startswith("#"):
                continue
            pts.append(int(tok[0]))
            wts.append(int(tok[1]) if len(tok) > 1 else 1)
    return make_design(pts, wts, n_vertices)


@dataclass(frozen=True)
class StrengthReport:
    strength: float                          # inf when all residuals vanish
    per_eigenspace: list[tuple[float, float]]   # (theta_j, ||E_j w_D|| / ||w_D||)


def _below(theta: float, t: float, tol: float) -> bool:
    # strict theta < t, robust to eigensolver noise at theta == t
    return theta < t - tol * max(1.0, t)


def _eigenspace_residuals(spectral: SpectralData, w: np.ndarray):
    norm = np.linalg.norm(w)
    out = []
    for j in range(1, spectral.n_eigenspaces):
        res = np.linalg.norm(spectral.projectors[j] @ w) / norm
        out.append((float(spectral.eigenvalues[j]), float(res)))
    return out


def verify_design(space: Space, spectral: SpectralData, design: Design,
                  t: float, tol: float = DEFAULT_TOL):
    """Check the strength-t condition; returns (ok, residual list).

    ok is True iff ||E_j w_D|| <= tol * ||w_D|| for every eigenspace with
    eigenvalue strictly between 0 and t.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    residuals = _eigenspace_residuals(spectral, design.indicator(space.n_vertices))
    ok = all(res <= tol for theta, res in residuals if _below(theta, t, tol))
    return ok, residuals


def design_strength(space: Space, spectral: SpectralData, design: Design,
                    tol: float = DEFAULT_TOL) -> StrengthReport:
    """Largest t for which the design verifies (inf if all residuals vanish)."""
    residuals = _eigenspace_residuals(spectral, design.indicator(space.n_vertices))
    for theta, res in residuals:
        if res > tol:
            return StrengthReport(strength=theta, per_eigenspace=residuals)
    return StrengthReport(strength=STRENGTH_UNBOUNDED, per_eigenspace=residuals)


@dataclass(frozen=True)
class BoundReport:
    t: float
    omega: str                     # human-readable subset descriptor
    lam: float
    vol_omega: int
    vol_space: int
    bound: float
    vacuous: bool
    subset_eig: SubsetEig = field(repr=False, default=None)


def _bound_from_eig(space: Space, t: float, desc: str, eig: SubsetEig,
                    tol: float = DEFAULT_TOL) -> BoundReport:
    n = space.n_vertices
    vol = int(len(eig.omega))
    vacuous = eig.value >= t - tol
    bound = 0.0 if vacuous else (t - eig.value) / t * n / vol
    return BoundReport(t=t, omega=desc, lam=eig.value, vol_omega=vol,
                       vol_space=n, bound=bound, vacuous=vacuous,
                       subset_eig=eig)


def design_bound(space: Space, spectral: SpectralData, t: float,
                 subset=None, spheres=None, tol: float = DEFAULT_TOL) -> BoundReport:
    """Evaluate the lower bound for one subset.

    Unions of spheres go through the quotient route when the space carries
    intersection numbers; arbitrary subsets use the dense route.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    if (subset is None) == (spheres is None):
        raise ValueError("give exactly one of subset or spheres")
    if spheres is not None:
        spheres = tuple(sorted(set(int(s) for s in spheres)))
        if space.is_scheme and space.intersection_numbers is not None:
            eig = spherical_subset_eigen(space, spectral.origin, spheres, tol)
        else:
            omega = np.flatnonzero(np.isin(space.classes[spectral.origin], spheres))
            eig = subset_eigen(space, omega, tol)
        desc = "spheres " + ",".join(map(str, spheres))
    else:
        eig = subset_eigen(space, subset, tol)
        desc = f"set of {len(eig.omega)} vertices"
    return _bound_from_eig(space, t, desc, eig, tol)


def design_bound_auto(space: Space, spectral: SpectralData, t: float,
                      tol: float = DEFAULT_TOL):
    """Sweep balls of radius 0..m; returns (reports, best_report).

    best maximises the bound; ties go to the smallest radius.  All-vacuous
    sweeps return best = None.
    """
    reports = []
    best = None
    for radius in range(space.n_classes + 1):
        rep = design_bound(space, spectral, t, spheres=range(radius + 1), tol=tol)
        rep = BoundReport(**{**rep.__dict__, "omega": f"ball {radius}"})
        reports.append(rep)
        if not rep.vacuous and (best is None or rep.bound > best.bound + tol):
            best = rep
    return reports, best


# ---------------------------------------------------------------------------
# isometries and the function F


@dataclass(frozen=True)
class IsometryAction:
    """One relation-preserving vertex permutation per design point.

    ``permutations[i]`` maps design point i to the origin; row p is the
    image array, i.e. tau_i(x) = permutations[i][x].
    """

    permutations: np.ndarray       # (d, N) int
    validated: bool


def _validate_action(space: Space, design: Design, origin: int,
                     perms: np.ndarray, sample_cap: int = 100_000) -> None:
    classes = space.classes
    n = space.n_vertices
    for i, (y, perm) in enumerate(zip(design.points, perms)):
        if sorted(perm) != list(range(n)):
            raise ValueError(f"isometry {i} is not a permutation")
        if perm[y] != origin:
            raise ValueError(f"isometry {i} does not map point {y} to the origin")
        if n <= 1024:
            if (classes[np.ix_(perm, perm)] != classes).any():
                raise ValueError(f"isometry {i} does not preserve relations")
        else:
            rng = np.random.default_rng(0)
            xs = rng.integers(0, n, size=sample_cap)
            ys = rng.integers(0, n, size=sample_cap)
            if (classes[perm[xs], perm[ys]] != classes[xs, ys]).any():
                raise ValueError(f"isometry {i} does not preserve relations")


def translations_to_origin(space: Space, design: Design,
                           origin: int = 0) -> IsometryAction:
    """Canonical isometries taking each design point to the origin.

    Hamming: coordinatewise group translation.  Cycle: rotation.  Johnson:
    the order-preserving swap of the symmetric difference with the origin
    set.  Other spaces need a user-supplied isometry file.
    """
    n = space.n_vertices
    perms = np.empty((len(design.points), n), dtype=int)
    if space.kind == "hamming":
        words = np.array(space.labels)            # (N, n_coords)
        q = int(words.max()) + 1                  # every digit value occurs
        weights = q ** np.arange(words.shape[1])
        o_word = words[origin]
        for i, y in enumerate(design.points):
            shifted = (words - words[y] + o_word) % q
            perms[i] = shifted @ weights
    elif space.kind == "cycle":
        idx = np.arange(n)
        for i, y in enumerate(design.points):
            perms[i] = (idx - y + origin) % n
    elif space.kind == "johnson":
        labels = space.labels
        rank = {s: v for v, s in enumerate(labels)}
        o_set = set(labels[origin])
        ground = set()
        for s in labels:
            ground |= set(s)
        for i, y in enumerate(design.points):
            y_set = set(labels[y])
            src = sorted(y_set - o_set)
            dst = sorted(o_set - y_set)
            sigma = {e: e for e in ground}
            for a, b in zip(src, dst):
                sigma[a], sigma[b] = b, a
            for v, s in enumerate(labels):
                perms[i, v] = rank[tuple(sorted(sigma[e] for e in s))]
    else:
        raise ValueError(
            f"no built-in isometry action for kind {space.kind!r}; "
            "supply an isometry file")
    _validate_action(space, design, origin, perms)
    return IsometryAction(permutations=perms, validated=True)


def load_isometries(path: str, space: Space, design: Design,
                    origin: int = 0) -> IsometryAction:
    """Read an isometry file: ``perm <N>`` then N image lines per point."""
    n = space.n_vertices
    with open(path, encoding="utf-8") as fh:
        tokens = [ln.split() for ln in fh if ln.strip() and not ln.startswith("#")]
    perms = []
    pos = 0
    while pos < len(tokens):
        if tokens[pos][0] != "perm" or int(tokens[pos][1]) != n:
            raise ValueError(f"{path}: expected 'perm {n}' header at block {len(perms)}")
        block = [int(tok[0]) for tok in tokens[pos + 1:pos + 1 + n]]
        if len(block) != n:
            raise ValueError(f"{path}: truncated permutation block {len(perms)}")
        perms.append(block)
        pos += 1 + n
    if len(perms) != len(design.points):
        raise ValueError(
            f"{path}: {len(perms)} permutations for {len(design.points)} points")
    perms = np.array(perms, dtype=int)
    _validate_action(space, design, origin, perms)
    return IsometryAction(permutations=perms, validated=True)


def build_F(space: Space, subset_eig: SubsetEig, action: IsometryAction,
            weights=None) -> np.ndarray:
    """Sum of translated copies of the subset eigenfunction.

    F(x) = sum_i w_i * psi(tau_i x); its support lies in the union of the
    pulled-back subsets.
    """
    psi = subset_eig.eigenfunction
    if psi.shape != (space.n_vertices,):
        raise ValueError("eigenfunction has wrong length")
    d = action.permutations.shape[0]
    if weights is None:
        weights = np.ones(d)
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (d,):
        raise ValueError("weights do not match the number of isometries")
    F = np.zeros(space.n_vertices)
    for w, perm in zip(weights, action.permutations):
        F += w * psi[perm]
    return F


@dataclass(frozen=True)
class CoverReport:
    F: np.ndarray = field(repr=False)
    chain: tuple[float, float, float, float]
    dirichlet_lhs: float
    dirichlet_rhs: float
    max_design_residual: float
    rayleigh_lhs: float            # D[F,F]
    rayleigh_rhs: float            # t*(<F,F> - <F,1>^2/N)
    cauchy_lhs: float              # <F,F> * |supp F|
    cauchy_rhs: float              # <F,1>^2


def verify_cover_chain(space: Space, spectral: SpectralData, design: Design,
                       t: float, subset_eig: SubsetEig,
                       action: IsometryAction | None = None,
                       tol: float = DEFAULT_TOL) -> CoverReport:
    """Build F and verify the covering chain and its supporting inequalities.

    Raises if the design does not verify at strength t, if the subset
    eigenvalue is not below t, or if any chain invariant fails.
    """
    n = space.n_vertices
    lam = subset_eig.value
    if lam >= t:
        raise ValueError(f"vacuous: lambda(Omega) = {lam:.6g} >= t = {t:.6g}")
    ok, _ = verify_design(space, spectral, design, t, tol)
    if not ok:
        raise ValueError(f"design does not verify at strength t = {t:.6g}")
    if action is None:
        action = translations_to_origin(space, design, spectral.origin)

    F = build_F(space, subset_eig, action, design.weights)
    omega = subset_eig.omega
    in_omega = np.zeros(n, dtype=bool)
    in_omega[omega] = True
    union = np.zeros(n, dtype=bool)
    for perm in action.permutations:
        union |= in_omega[perm]               # x is in tau_i^{-1}(Omega)
    supp = np.abs(F) > 1e-9 * np.abs(F).max()

    chain = (
        float(design.size * len(omega)),
        float(union.sum()),
        float(supp.sum()),
        (t - lam) / t * n,
    )
    ff = float(F @ F)
    f1 = float(F.sum())
    lhs = dirichlet_form(space, F)
    rhs = lam * ff
    residuals = _eigenspace_residuals(spectral, F)
    max_res = max((res for theta, res in residuals if _below(theta, t, tol)),
                  default=0.0)
    report = CoverReport(
        F=F,
        chain=chain,
        dirichlet_lhs=lhs,
        dirichlet_rhs=rhs,
        max_design_residual=max_res,
        rayleigh_lhs=lhs,
        rayleigh_rhs=t * (ff - f1 ** 2 / n),
        cauchy_lhs=ff * float(supp.sum()),
        cauchy_rhs=f1 ** 2,
    )
    scale = max(1.0, abs(chain[0]))
    if not (chain[0] >= chain[1] - tol * scale
            and chain[1] >= chain[2] - tol * scale
            and chain[2] >= chain[3] - tol * scale):
        raise RuntimeError(f"covering chain not nonincreasing: {chain}")
    if lhs > rhs + tol * max(1.0, ff):
        raise RuntimeError(f"Dirichlet inequality fails: {lhs} > {rhs}")
    if max_res > 1e-8:
        raise RuntimeError(f"F is not design-like: residual {max_res:.3e}")
    return report


# ---------------------------------------------------------------------------
# exhaustive search


def min_design_search(space: Space, spectral: SpectralData, t: float,
                      max_size: int, tol: float = DEFAULT_TOL):
    """Smallest unweighted design of strength t, by pruned exhaustive search.

    Returns (Design, size) or (None, None) when nothing of size <= max_size
    works.  Capped at N <= 32 and max_size <= 8.
    """
    n = space.n_vertices
    if n > 32 or max_size > 8:
        raise ValueError("search caps: N <= 32 and max_size <= 8")
    if t <= 0:
        raise ValueError("t must be positive")
    active = [j for j in range(1, spectral.n_eigenspaces)
              if _below(spectral.eigenvalues[j], t, tol)]
    if not active:
        return make_design([0], n_vertices=n), 1
    proj = [spectral.projectors[j] for j in active]
    # worst-case norm a single added point can cancel, per eigenspace
    col_norm = [max(np.linalg.norm(P[:, x]) for x in range(n)) for P in proj]

    for size in range(1, max_size + 1):
        found = _search_rec(n, size, 0, [np.zeros(n) for _ in proj],
                            [], proj, col_norm, tol * math.sqrt(size))
        if found is not None:
            return make_design(found, n_vertices=n), size
    return None, None


def _search_rec(n, size, start, partial, chosen, proj, col_norm, tol):
    remaining = size - len(chosen)
    if remaining == 0:
        if all(np.linalg.norm(s) <= tol for s in partial):
            return list(chosen)
        return None
    for s, c in zip(partial, col_norm):
        if np.linalg.norm(s) > remaining * c + tol:
            return None                       # cannot be cancelled any more
    for x in range(start, n - remaining + 1):
        nxt = [s + P[:, x] for s, P in zip(partial, proj)]
        hit = _search_rec(n, size, x + 1, nxt, chosen + [x], proj, col_norm, tol)
        if hit is not None:
            return hit
    return None

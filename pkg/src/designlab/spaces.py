"""Finite symmetric spaces: graphs and symmetric association schemes.

A space is a finite vertex set together with a classification of every
unordered pair into relation classes 0..m, class 0 being equality.  Graphs
are the degenerate 3-class case {equal, adjacent, other}.  The Bose-Mesner
spectral algebra (projectors, eigenmatrix, zonal sphere functions) is
computed here as well.
"""

from __future__ import annotations

import dataclasses
import math
import re
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

SIZE_CAP = 4096          # dense projectors; O(N^3) decomposition
DEFAULT_TOL = 1e-9


class SchemeError(ValueError):
    """Invalid space construction or scheme axiom violation."""


@dataclass(frozen=True)
class Space:
    """A vertex set with a symmetric pair classification.

    ``classes[x, y]`` is the relation class of the pair (x, y); class 0 is
    the diagonal.  ``valencies[i]`` counts the class-i partners of any
    vertex.  ``intersection_numbers[k, i, j]`` is p^k_ij when the scheme
    structure has been established (None otherwise).
    """

    kind: str                      # "graph", "scheme", "hamming", "johnson", "cycle"
    n_vertices: int
    n_classes: int                 # m: classes are 0..m
    classes: np.ndarray            # (N, N) int
    valencies: np.ndarray          # (m+1,) int
    laplacian_class: int = 1
    intersection_numbers: np.ndarray | None = None   # (m+1, m+1, m+1) int
    labels: tuple | None = None    # optional per-vertex labels (words, subsets)

    @property
    def is_scheme(self) -> bool:
        return self.kind != "graph"

    @property
    def degree(self) -> int:
        """Valency of the relation used to define the Laplacian."""
        return int(self.valencies[self.laplacian_class])

    def adjacency(self, i: int) -> np.ndarray:
        """Dense 0/1 adjacency matrix of relation class i."""
        return (self.classes == i).astype(float)

    def laplacian(self) -> np.ndarray:
        r = self.laplacian_class
        return self.degree * np.eye(self.n_vertices) - self.adjacency(r)

    def sphere(self, origin: int, i: int) -> np.ndarray:
        """Vertices in relation class i with ``origin``."""
        return np.flatnonzero(self.classes[origin] == i)

    def ball(self, origin: int, radius: int) -> np.ndarray:
        """Vertices in classes 0..radius around ``origin``."""
        return np.flatnonzero(self.classes[origin] <= radius)


@dataclass(frozen=True)
class SpectralData:
    """Laplacian eigenstructure of a space, anchored at an origin vertex.

    ``eigenvalues`` are the distinct Laplacian eigenvalues, ascending from
    0.  ``projectors[j]`` is the orthogonal projector onto eigenspace j,
    ``eigenmatrix[i, j]`` the eigenvalue of adjacency class i on that
    eigenspace, and ``zonal[j, i]`` the value of the j-th zonal sphere
    function on class-i vertices (normalised to 1 at the origin).
    """

    origin: int
    eigenvalues: np.ndarray        # (k,)
    multiplicities: np.ndarray     # (k,) int
    eigenmatrix: np.ndarray        # (m+1, k)
    projectors: np.ndarray         # (k, N, N)
    zonal: np.ndarray              # (k, m+1)

    @property
    def n_eigenspaces(self) -> int:
        return len(self.eigenvalues)


@dataclass
class ValidationReport:
    valid: bool
    failures: list[str]
    intersection_numbers: np.ndarray | None = None


# ---------------------------------------------------------------------------
# built-in families


def _check_connected(classes: np.ndarray, r: int) -> None:
    adj = csr_matrix(classes == r)
    n_comp, _ = connected_components(adj, directed=False)
    if n_comp != 1:
        raise SchemeError(
            f"relation class {r} is disconnected ({n_comp} components); "
            "pick another --relation"
        )


def _finish_space(kind, classes, m, laplacian_class, labels=None,
                  intersection_numbers=None) -> Space:
    n = classes.shape[0]
    counts = np.stack([(classes == i).sum(axis=1) for i in range(m + 1)], axis=1)
    if not (counts == counts[0]).all():
        bad = int(np.argwhere((counts != counts[0]).any(axis=1))[0, 0])
        raise SchemeError(f"space is not regular: witness vertex {bad}")
    if not 1 <= laplacian_class <= m:
        raise SchemeError(f"laplacian class {laplacian_class} out of range 1..{m}")
    _check_connected(classes, laplacian_class)
    return Space(
        kind=kind,
        n_vertices=n,
        n_classes=m,
        classes=classes,
        valencies=counts[0].copy(),
        laplacian_class=laplacian_class,
        intersection_numbers=intersection_numbers,
        labels=labels,
    )


def _intersection_numbers_regular(classes: np.ndarray, m: int) -> np.ndarray:
    """p^k_ij read off one representative pair per class.

    Correct for genuine schemes (built-ins); ``validate_scheme`` performs
    the full constancy check.
    """
    n = classes.shape[0]
    p = np.zeros((m + 1, m + 1, m + 1), dtype=int)
    for k in range(m + 1):
        pair = np.argwhere(classes == k)
        if len(pair) == 0:
            continue
        x, y = pair[0]
        hist = np.zeros((m + 1, m + 1), dtype=int)
        np.add.at(hist, (classes[x], classes[y]), 1)
        p[k] = hist
    return p


def hamming(n: int, q: int, laplacian_class: int = 1) -> Space:
    """Hamming scheme H(n, q): words of length n over {0..q-1}.

    Vertex x encodes the word with digit i equal to (x // q**i) % q; the
    relation class of a pair is its Hamming distance.
    """
    if q < 2 or n < 1:
        raise SchemeError("hamming requires q >= 2 and n >= 1")
    size = q ** n
    if size > SIZE_CAP:
        raise SchemeError(f"hamming({n},{q}) has {size} vertices > cap {SIZE_CAP}")
    digits = (np.arange(size)[:, None] // q ** np.arange(n)[None, :]) % q
    classes = (digits[:, None, :] != digits[None, :, :]).sum(axis=2)
    p = _intersection_numbers_regular(classes, n)
    return _finish_space("hamming", classes, n, laplacian_class,
                         labels=tuple(map(tuple, digits)),
                         intersection_numbers=p)


def _colex_rank(subset: tuple[int, ...]) -> int:
    # subset is 1-based and sorted ascending
    return sum(math.comb(c - 1, k + 1) for k, c in enumerate(subset))


def johnson(n: int, w: int, laplacian_class: int = 1) -> Space:
    """Johnson scheme J(n, w): w-subsets of {1..n} in colex rank order.

    Pair class i means the subsets share w - i elements.
    """
    if not 1 <= w <= n // 2:
        raise SchemeError("johnson requires 1 <= w <= n/2")
    size = math.comb(n, w)
    if size > SIZE_CAP:
        raise SchemeError(f"johnson({n},{w}) has {size} vertices > cap {SIZE_CAP}")
    subsets = sorted((tuple(c) for c in combinations(range(1, n + 1), w)),
                     key=_colex_rank)
    masks = np.zeros((size, n), dtype=bool)
    for v, s in enumerate(subsets):
        masks[v, [e - 1 for e in s]] = True
    inter = masks.astype(int) @ masks.astype(int).T
    classes = w - inter
    p = _intersection_numbers_regular(classes, w)
    return _finish_space("johnson", classes, w, laplacian_class,
                         labels=tuple(subsets), intersection_numbers=p)


def cycle(n: int, laplacian_class: int = 1) -> Space:
    """Cycle graph C_n as a scheme; the pair class is circular distance."""
    if n < 3:
        raise SchemeError("cycle requires n >= 3")
    idx = np.arange(n)
    diff = np.abs(idx[:, None] - idx[None, :])
    classes = np.minimum(diff, n - diff)
    m = n // 2
    p = _intersection_numbers_regular(classes, m)
    return _finish_space("cycle", classes, m, laplacian_class,
                         intersection_numbers=p)


def build_named_space(spec: str, laplacian_class: int = 1) -> Space:
    """Build a space from a spec string.

    Accepts ``hamming:n=<n>,q=<q>``, ``johnson:n=<n>,w=<w>``,
    ``cycle:n=<N>`` and ``file:<path>``.
    """
    if spec.startswith("file:"):
        return load_space(spec[5:], laplacian_class=laplacian_class)
    m = re.fullmatch(r"(\w+):([\w=,]+)", spec)
    if not m:
        raise SchemeError(f"cannot parse space spec {spec!r}")
    family, args = m.group(1), m.group(2)
    kv = {}
    for part in args.split(","):
        key, _, val = part.partition("=")
        if not val.lstrip("-").isdigit():
            raise SchemeError(f"bad parameter {part!r} in spec {spec!r}")
        kv[key] = int(val)
    try:
        if family == "hamming":
            return hamming(kv["n"], kv["q"], laplacian_class)
        if family == "johnson":
            return johnson(kv["n"], kv["w"], laplacian_class)
        if family == "cycle":
            return cycle(kv["n"], laplacian_class)
    except KeyError as exc:
        raise SchemeError(f"spec {spec!r} missing parameter {exc}") from None
    raise SchemeError(f"unknown space family {family!r}")


# ---------------------------------------------------------------------------
# file format


def load_space(path: str, laplacian_class: int = 1) -> Space:
    """Load a space file.

    ``scheme <N> <m>`` followed by ``rel <u> <v> <c>`` for every unordered
    pair, or ``graph <N>`` followed by ``edge <u> <v>`` lines.  Scheme files
    are validated against the scheme axioms on load.
    """
    with open(path, encoding="utf-8") as fh:
        lines = [ln.split() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise SchemeError(f"{path}: empty space file")
    header = lines[0]
    if header[0] == "scheme":
        if len(header) != 3:
            raise SchemeError(f"{path}: bad scheme header")
        n, m = int(header[1]), int(header[2])
        classes = -np.ones((n, n), dtype=int)
        np.fill_diagonal(classes, 0)
        for tok in lines[1:]:
            if tok[0] != "rel" or len(tok) != 4:
                raise SchemeError(f"{path}: bad line {' '.join(tok)!r}")
            u, v, c = int(tok[1]), int(tok[2]), int(tok[3])
            if not (0 <= u < n and 0 <= v < n and 1 <= c <= m and u != v):
                raise SchemeError(f"{path}: bad rel line {u} {v} {c}")
            classes[u, v] = classes[v, u] = c
        if (classes < 0).any():
            u, v = np.argwhere(classes < 0)[0]
            raise SchemeError(f"{path}: pair ({u},{v}) has no classification")
        space = _finish_space("scheme", classes, m, laplacian_class)
        report = validate_scheme(space)
        if not report.valid:
            raise SchemeError(f"{path}: scheme axiom violation: {report.failures[0]}")
        return dataclasses.replace(
            space, intersection_numbers=report.intersection_numbers)
    if header[0] == "graph":
        if len(header) != 2:
            raise SchemeError(f"{path}: bad graph header")
        n = int(header[1])
        classes = np.full((n, n), 2, dtype=int)
        np.fill_diagonal(classes, 0)
        for tok in lines[1:]:
            if tok[0] != "edge" or len(tok) != 3:
                raise SchemeError(f"{path}: bad line {' '.join(tok)!r}")
            u, v = int(tok[1]), int(tok[2])
            if not (0 <= u < n and 0 <= v < n and u != v):
                raise SchemeError(f"{path}: bad edge {u} {v}")
            classes[u, v] = classes[v, u] = 1
        return _finish_space("graph", classes, 2, laplacian_class)
    raise SchemeError(f"{path}: unknown header {header[0]!r}")


def save_space(space: Space, path: str) -> None:
    """Write a space in the scheme (or graph) file format."""
    n = space.n_vertices
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if space.is_scheme:
            fh.write(f"scheme {n} {space.n_classes}\n")
            for u in range(n):
                for v in range(u + 1, n):
                    fh.write(f"rel {u} {v} {space.classes[u, v]}\n")
        else:
            fh.write(f"graph {n}\n")
            for u in range(n):
                for v in range(u + 1, n):
                    if space.classes[u, v] == 1:
                        fh.write(f"edge {u} {v}\n")


# ---------------------------------------------------------------------------
# validation


def validate_scheme(space: Space) -> ValidationReport:
    """Check the symmetric association scheme axioms exhaustively.

    Violations are reported with concrete witnesses; on success the report
    carries the intersection numbers p^k_ij.
    """
    classes = space.classes
    n, m = space.n_vertices, space.n_classes
    failures: list[str] = []

    if (np.diag(classes) != 0).any():
        x = int(np.flatnonzero(np.diag(classes) != 0)[0])
        failures.append(f"diagonal vertex {x} not in class 0")
    off = classes.copy()
    np.fill_diagonal(off, 1)
    if (off == 0).any():
        x, y = np.argwhere(off == 0)[0]
        failures.append(f"off-diagonal pair ({x},{y}) in class 0")
    if (classes != classes.T).any():
        x, y = np.argwhere(classes != classes.T)[0]
        failures.append(f"classification not symmetric at pair ({x},{y})")
    counts = np.stack([(classes == i).sum(axis=1) for i in range(m + 1)], axis=1)
    if (counts != counts[0]).any():
        x = int(np.argwhere((counts != counts[0]).any(axis=1))[0, 0])
        failures.append(
            f"valency of class "
            f"{int(np.flatnonzero(counts[x] != counts[0])[0])} not constant: "
            f"witness vertex {x}")
    if failures:
        return ValidationReport(False, failures)

    adj = [(classes == i).astype(float) for i in range(m + 1)]
    p = np.zeros((m + 1, m + 1, m + 1), dtype=int)
    for i in range(m + 1):
        for j in range(i, m + 1):
            prod = np.rint(adj[i] @ adj[j]).astype(int)
            for k in range(m + 1):
                mask = classes == k
                if not mask.any():
                    continue
                vals = prod[mask]
                if vals.min() != vals.max():
                    x, y = np.argwhere(mask)[0]
                    failures.append(
                        f"p^{k}_{{{i},{j}}} not constant: witness triple "
                        f"(i={i}, j={j}, k={k}) at pair ({x},{y})")
                else:
                    p[k, i, j] = p[k, j, i] = int(vals[0])
    if failures:
        return ValidationReport(False, failures)
    return ValidationReport(True, [], intersection_numbers=p)


# ---------------------------------------------------------------------------
# spectral algebra


def spectral_decomposition(space: Space, origin: int = 0,
                           tol: float = DEFAULT_TOL) -> SpectralData:
    """Eigenspaces, projectors, eigenmatrix and zonal table of a space.

    Eigenspaces are grouped by Laplacian eigenvalue; an inter-group gap
    below 10x the grouping tolerance is reported as ambiguous rather than
    silently merged or split.
    """
    n = space.n_vertices
    if not 0 <= origin < n:
        raise SchemeError(f"origin {origin} out of range")
    lap = space.laplacian()
    try:
        w, vecs = np.linalg.eigh(lap)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigensolver failed to converge: {exc}") from exc

    scale = max(1.0, float(space.degree))
    group_tol = tol * scale
    gaps = np.diff(w)
    ambiguous = (gaps > group_tol) & (gaps < 10 * group_tol)
    if ambiguous.any():
        i = int(np.flatnonzero(ambiguous)[0])
        raise RuntimeError(
            f"eigenvalue grouping ambiguous: gap {gaps[i]:.3e} between "
            f"{w[i]:.12g} and {w[i + 1]:.12g} is below 10x tolerance")
    boundaries = np.flatnonzero(gaps > group_tol) + 1
    groups = np.split(np.arange(n), boundaries)

    k = len(groups)
    eigenvalues = np.array([w[g].mean() for g in groups])
    near_int = np.abs(eigenvalues - np.rint(eigenvalues)) <= group_tol
    eigenvalues[near_int] = np.rint(eigenvalues[near_int])
    eigenvalues[0] = 0.0
    eigenvalues = np.maximum(eigenvalues, 0.0)
    multiplicities = np.array([len(g) for g in groups])
    projectors = np.empty((k, n, n))
    for j, g in enumerate(groups):
        basis = vecs[:, g]
        projectors[j] = basis @ basis.T

    m = space.n_classes
    eigenmatrix = np.full((m + 1, k), np.nan)
    class_rows = range(m + 1) if space.is_scheme else range(2)
    for i in class_rows:
        ai = space.adjacency(i)
        for j in range(k):
            eigenmatrix[i, j] = np.sum(projectors[j] * ai) / multiplicities[j]

    # zonal table from projector columns, checked class-constant
    ring = space.classes[origin]
    sphere_sizes = np.bincount(ring, minlength=m + 1)
    zonal = np.zeros((k, m + 1))
    for j in range(k):
        col = (n / multiplicities[j]) * projectors[j][:, origin]
        sums = np.bincount(ring, weights=col, minlength=m + 1)
        avg = np.divide(sums, sphere_sizes, out=np.zeros(m + 1),
                        where=sphere_sizes > 0)
        if space.is_scheme:
            spread = np.abs(col - avg[ring]).max()
            if spread > 100 * tol * scale:
                raise RuntimeError(
                    f"zonal function {j} not constant on spheres "
                    f"(spread {spread:.3e}); space is not 1-transitive "
                    "or eigenspaces merged")
        zonal[j] = avg
    return SpectralData(
        origin=origin,
        eigenvalues=eigenvalues,
        multiplicities=multiplicities,
        eigenmatrix=eigenmatrix,
        projectors=projectors,
        zonal=zonal,
    )


def spherical_projection(space: Space, spectral: SpectralData,
                         f: np.ndarray) -> np.ndarray:
    """Project f onto the sphere-constant functions around the origin.

    Replaces f by its average over each sphere; idempotent, self-adjoint,
    and commutes with every adjacency operator of the scheme.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != (space.n_vertices,):
        raise ValueError("function has wrong length")
    ring = space.classes[spectral.origin]
    sizes = np.bincount(ring, minlength=space.n_classes + 1)
    sums = np.bincount(ring, weights=f, minlength=space.n_classes + 1)
    avg = np.divide(sums, sizes, out=np.zeros_like(sums), where=sizes > 0)
    return avg[ring]

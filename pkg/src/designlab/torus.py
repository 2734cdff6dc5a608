"""Flat-torus specialization: Bessel ball tones, covolume and packing bounds.

For a lattice with shortest nonzero vector of length s, every point of the
dual torus is a design of strength t = 4 pi^2 s^2, so a Euclidean ball with
fundamental tone below t essentially covers the torus.  Optimising the ball
radius gives an upper bound on the dual covolume and hence on lattice
sphere-packing density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq, minimize_scalar
from scipy.special import jv


def bessel_first_zero(order: float, max_steps: int = 10_000) -> float:
    """First positive zero of the Bessel function J_order, order >= -1/2."""
    if order < -0.5:
        raise ValueError("order must be >= -1/2")
    # J is positive on (0, j_1); march until the sign flips, then refine
    lo = 1e-6
    step = 0.25
    x = lo + step
    for _ in range(max_steps):
        if jv(order, x) < 0:
            break
        lo = x
        x += step
    else:
        raise RuntimeError(f"no sign change found for J_{order}")
    return float(brentq(lambda z: jv(order, z), lo, x, xtol=1e-15, rtol=8.9e-16))


def unit_ball_volume(dim: int) -> float:
    return math.pi ** (dim / 2) / math.gamma(dim / 2 + 1)


def ball_fundamental_tone(dim: int, radius: float) -> float:
    """Smallest Dirichlet eigenvalue of a Euclidean ball: (j_{n/2-1,1}/r)^2."""
    if dim < 1 or radius <= 0:
        raise ValueError("need dim >= 1 and radius > 0")
    return (bessel_first_zero(dim / 2 - 1) / radius) ** 2


@dataclass(frozen=True)
class TorusBound:
    """Optimised covolume/packing bound for a given dimension and shortest vector."""

    dim: int
    shortest: float
    t: float                       # spectral threshold 4 pi^2 s^2
    rho_star: float                # optimal lambda/t ratio, n/(n+2)
    r_star: float                  # optimal ball radius
    covolume_bound: float          # upper bound on covol of the dual lattice
    density_bound: float           # upper bound on lattice packing density
    rho_grid: float                # grid-search minimiser, for auditing
    covolume_grid: float           # grid-search bound value


def _ratio_objective(rho: float, dim: int) -> float:
    return rho ** (-dim / 2) / (1.0 - rho)


def torus_covolume_bound(dim: int, shortest: float) -> TorusBound:
    """Upper bound on the covolume of the dual of a lattice with shortest
    vector length ``shortest``.

    The bound is min over ball radii r of t/(t - lambda(r)) * v_n r^n with
    lambda(r) the ball tone; substituting rho = lambda/t reduces it to
    minimising rho^(-n/2)/(1 - rho), whose minimiser is n/(n+2).  The
    closed form is cross-checked against a numeric minimisation.
    """
    if dim < 1 or shortest <= 0:
        raise ValueError("need dim >= 1 and shortest > 0")
    n = dim
    s = shortest
    t = 4 * math.pi ** 2 * s ** 2
    j1 = bessel_first_zero(n / 2 - 1)
    vn = unit_ball_volume(n)
    base = vn * (j1 / (2 * math.pi * s)) ** n

    rho_star = n / (n + 2)
    covolume = base * _ratio_objective(rho_star, n)
    r_star = j1 / math.sqrt(rho_star * t)

    res = minimize_scalar(_ratio_objective, bounds=(1e-9, 1 - 1e-9), args=(n,),
                          method="bounded", options={"xatol": 1e-10})
    rho_grid = float(res.x)
    covolume_grid = base * _ratio_objective(rho_grid, n)

    density = unit_ball_volume(n) * (s / 2) ** n * covolume
    return TorusBound(
        dim=n,
        shortest=s,
        t=t,
        rho_star=rho_star,
        r_star=r_star,
        covolume_bound=covolume,
        density_bound=density,
        rho_grid=rho_grid,
        covolume_grid=covolume_grid,
    )


def lattice_density_bound(dim: int) -> float:
    """Upper bound on lattice sphere-packing density in dimension ``dim``.

    Scale-invariant closed form:
    v_n^2 (j_{n/2-1,1} / 4 pi)^n ((n+2)/n)^(n/2) (n+2)/2.
    """
    if dim < 1:
        raise ValueError("need dim >= 1")
    n = dim
    j1 = bessel_first_zero(n / 2 - 1)
    vn = unit_ball_volume(n)
    return vn ** 2 * (j1 / (4 * math.pi)) ** n * ((n + 2) / n) ** (n / 2) * (n + 2) / 2

"""Command-line front end: designlab <command> ...

Exit status 0 on success, 1 on failed verification or invalid input (with a
machine-readable ``error: ...`` line), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import designs, spaces, spectra, torus


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


class Reporter:
    """Stable-ordered key/value (or tabular) output in text or csv."""

    def __init__(self, fmt: str):
        self.fmt = fmt

    def rows(self, pairs):
        for key, value in pairs:
            if self.fmt == "csv":
                print(f"{key},{_fmt(value)}")
            else:
                print(f"{key} = {_fmt(value)}")

    def table(self, header, rows):
        if self.fmt == "csv":
            print(",".join(header))
            for row in rows:
                print(",".join(_fmt(v) for v in row))
        else:
            print("  ".join(header))
            for row in rows:
                print("  ".join(_fmt(v) for v in row))


def _global_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=1e-9)
    parser.add_argument("--format", choices=("text", "csv"), default="text")
    parser.add_argument("--threads", type=int, default=0,
                        help="0 = auto; results are thread-count independent")
    parser.add_argument("--relation", type=int, default=1,
                        help="relation class defining the Laplacian")
    parser.add_argument("--origin", type=int, default=0)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="designlab", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("space", help="inspect or validate a space")
    p.add_argument("action", choices=("info", "validate"))
    p.add_argument("spec")
    _global_flags(p)

    p = sub.add_parser("spectrum", help="Laplacian eigenvalues and multiplicities")
    p.add_argument("spec")
    _global_flags(p)

    p = sub.add_parser("subset-eig", help="Dirichlet eigenvalue of a subset")
    p.add_argument("spec")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--ball", type=int)
    grp.add_argument("--spheres")
    grp.add_argument("--set", dest="set_file")
    _global_flags(p)

    p = sub.add_parser("design", help="design verification, strength, search")
    p.add_argument("action", choices=("verify", "strength", "search"))
    p.add_argument("spec")
    p.add_argument("--design")
    p.add_argument("--t", type=float)
    p.add_argument("--max-size", type=int, default=8)
    _global_flags(p)

    p = sub.add_parser("bound", help="evaluate the design lower bound")
    p.add_argument("spec")
    p.add_argument("--t", type=float, required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--ball", type=int)
    grp.add_argument("--auto", action="store_true")
    grp.add_argument("--set", dest="set_file")
    _global_flags(p)

    p = sub.add_parser("cover", help="verify the covering chain for a design")
    p.add_argument("spec")
    p.add_argument("--design", required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--ball", type=int, required=True)
    p.add_argument("--isometries")
    _global_flags(p)

    p = sub.add_parser("torus", help="flat-torus covolume and packing bounds")
    p.add_argument("action", choices=("density-bound", "covolume-bound"))
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--shortest", type=float)
    _global_flags(p)
    return top


def _load(args) -> spaces.Space:
    return spaces.build_named_space(args.spec, laplacian_class=args.relation)


def _spheres_arg(args, space) -> list[int]:
    if getattr(args, "ball", None) is not None:
        if args.ball < 0 or args.ball > space.n_classes:
            raise ValueError(f"ball radius out of range 0..{space.n_classes}")
        return list(range(args.ball + 1))
    return [int(s) for s in args.spheres.split(",")]


def _cmd_space(args, out: Reporter) -> int:
    space = _load(args)
    pairs = [
        ("kind", space.kind),
        ("vertices", space.n_vertices),
        ("classes", space.n_classes),
        ("laplacian_class", space.laplacian_class),
        ("degree", space.degree),
        ("valencies", " ".join(map(str, space.valencies))),
    ]
    if args.action == "info":
        out.rows(pairs)
        return 0
    report = spaces.validate_scheme(space)
    out.rows(pairs + [("valid", report.valid)])
    if not report.valid:
        for failure in report.failures:
            print(f"error: {failure}")
        return 1
    return 0


def _cmd_spectrum(args, out: Reporter) -> int:
    space = _load(args)
    spec = spaces.spectral_decomposition(space, args.origin, args.tol)
    out.table(
        ["eigenvalue", "multiplicity"],
        [(spec.eigenvalues[j], int(spec.multiplicities[j]))
         for j in range(spec.n_eigenspaces)],
    )
    return 0


def _cmd_subset_eig(args, out: Reporter) -> int:
    space = _load(args)
    if args.set_file is not None:
        eig = spectra.subset_eigen(space, spectra.load_subset(args.set_file),
                                   args.tol)
    else:
        sph = _spheres_arg(args, space)
        if space.is_scheme and space.intersection_numbers is not None:
            eig = spectra.spherical_subset_eigen(space, args.origin, sph, args.tol)
        else:
            omega = np.flatnonzero(np.isin(space.classes[args.origin], sph))
            eig = spectra.subset_eigen(space, omega, args.tol)
    out.rows([
        ("method", eig.method),
        ("volume", len(eig.omega)),
        ("lambda", eig.value),
    ])
    return 0


def _cmd_design(args, out: Reporter) -> int:
    space = _load(args)
    spec = spaces.spectral_decomposition(space, args.origin, args.tol)
    if args.action == "search":
        if args.t is None:
            raise ValueError("design search requires --t")
        design, size = designs.min_design_search(space, spec, args.t,
                                                 args.max_size, args.tol)
        if design is None:
            out.rows([("found", False), ("max_size", args.max_size)])
            return 0
        out.rows([
            ("found", True),
            ("size", size),
            ("points", " ".join(map(str, design.points))),
        ])
        return 0
    if args.design is None:
        raise ValueError(f"design {args.action} requires --design FILE")
    design = designs.load_design(args.design, space.n_vertices)
    if args.action == "strength":
        rep = designs.design_strength(space, spec, design, args.tol)
        out.rows([("strength", rep.strength)])
        out.table(["eigenvalue", "residual"], rep.per_eigenspace)
        return 0
    if args.t is None:
        raise ValueError("design verify requires --t")
    ok, residuals = designs.verify_design(space, spec, design, args.t, args.tol)
    out.rows([("verified", ok)])
    if not ok:
        worst = max((r for th, r in residuals if th < args.t), default=0.0)
        print(f"error: design fails strength {args.t:g} "
              f"(max residual {worst:.3e})")
        return 1
    return 0


def _cmd_bound(args, out: Reporter) -> int:
    space = _load(args)
    spec = spaces.spectral_decomposition(space, args.origin, args.tol)
    if args.auto:
        reports, best = designs.design_bound_auto(space, spec, args.t, args.tol)
        rows = [(r.omega.split()[1], r.lam, r.vol_omega, r.bound, r.vacuous)
                for r in reports]
        if best is not None:
            rows.append(("best", best.lam, best.vol_omega, best.bound,
                         best.vacuous))
        out.table(["radius", "lambda", "vol_omega", "bound", "vacuous"], rows)
        return 0
    if args.set_file is not None:
        rep = designs.design_bound(space, spec, args.t,
                                   subset=spectra.load_subset(args.set_file),
                                   tol=args.tol)
    else:
        rep = designs.design_bound(space, spec, args.t,
                                   spheres=_spheres_arg(args, space),
                                   tol=args.tol)
    out.rows([
        ("omega", rep.omega),
        ("lambda", rep.lam),
        ("vol_omega", rep.vol_omega),
        ("vol_space", rep.vol_space),
        ("bound", rep.bound),
        ("vacuous", rep.vacuous),
    ])
    return 0


def _cmd_cover(args, out: Reporter) -> int:
    space = _load(args)
    spec = spaces.spectral_decomposition(space, args.origin, args.tol)
    design = designs.load_design(args.design, space.n_vertices)
    sph = list(range(args.ball + 1))
    if space.is_scheme and space.intersection_numbers is not None:
        eig = spectra.spherical_subset_eigen(space, args.origin, sph, args.tol)
    else:
        omega = np.flatnonzero(np.isin(space.classes[args.origin], sph))
        eig = spectra.subset_eigen(space, omega, args.tol)
    action = None
    if args.isometries:
        action = designs.load_isometries(args.isometries, space, design,
                                         args.origin)
    rep = designs.verify_cover_chain(space, spec, design, args.t, eig, action,
                                     args.tol)
    out.rows([
        ("lambda", eig.value),
        ("chain_design_volume", rep.chain[0]),
        ("chain_union_volume", rep.chain[1]),
        ("chain_support_volume", rep.chain[2]),
        ("chain_spectral_volume", rep.chain[3]),
        ("dirichlet_lhs", rep.dirichlet_lhs),
        ("dirichlet_rhs", rep.dirichlet_rhs),
        ("max_design_residual", rep.max_design_residual),
    ])
    return 0


def _cmd_torus(args, out: Reporter) -> int:
    if args.action == "density-bound":
        value = torus.lattice_density_bound(args.dim)
        bound = torus.torus_covolume_bound(args.dim, 1.0)
        grid_density = (torus.unit_ball_volume(args.dim) * 0.5 ** args.dim
                        * bound.covolume_grid)
        out.rows([
            ("dim", args.dim),
            ("density_bound", value),
            ("density_bound_grid", grid_density),
            ("rho_star", bound.rho_star),
            ("rho_grid", bound.rho_grid),
        ])
        return 0
    if args.shortest is None:
        raise ValueError("covolume-bound requires --shortest")
    bound = torus.torus_covolume_bound(args.dim, args.shortest)
    out.rows([
        ("dim", bound.dim),
        ("shortest", bound.shortest),
        ("t", bound.t),
        ("rho_star", bound.rho_star),
        ("rho_grid", bound.rho_grid),
        ("r_star", bound.r_star),
        ("covolume_bound", bound.covolume_bound),
        ("covolume_bound_grid", bound.covolume_grid),
        ("density_bound", bound.density_bound),
    ])
    return 0


_DISPATCH = {
    "space": _cmd_space,
    "spectrum": _cmd_spectrum,
    "subset-eig": _cmd_subset_eig,
    "design": _cmd_design,
    "bound": _cmd_bound,
    "cover": _cmd_cover,
    "torus": _cmd_torus,
}


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.tol <= 0:
        raise ValueError("tolerance must be positive")
    if args.threads < 0:
        raise ValueError("threads must be >= 0")
    out = Reporter(args.format)
    return _DISPATCH[args.command](args, out)


def main(argv=None) -> int:
    try:
        return run(argv)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: dispatch, config files, CSV/JSON output, cache."""
import argparse
import json
import sys

import numpy as np

from . import __version__, analysis
from . import tightbinding as tb
from .basis import preset_basis
from .cache import ResultCache, config_key
from .hartree_fock import hf_binding_energy
from .optimizer import optimize
from .quadrature import QuadratureSpec
from .solver import binding_energy, exciton_ground, trion_spectrum
from .units import Environment, to_physical_energy


def _pyify(obj):
    """Recursively convert numpy scalars/arrays to plain Python types."""
    if isinstance(obj, dict):
        return {k: _pyify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_pyify(v) for v in obj]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def emit(metadata, rows, fmt, stream):
    if fmt == "json":
        json.dump({"metadata": metadata, "rows": rows}, stream, indent=2,
                  default=_fmt)
        stream.write("\n")
        return
    for key in sorted(metadata):
        stream.write(f"# {key}: {_fmt(metadata[key])}\n")
    if rows:
        cols = list(rows[0].keys())
        stream.write(",".join(cols) + "\n")
        for row in rows:
            stream.write(",".join(_fmt(row[c]) for c in cols) + "\n")


def parse_chirality(text):
    try:
        n, m = (int(p) for p in text.split(","))
        return tb.ChiralIndex(n, m)
    except Exception as exc:
        raise ValueError(f"bad chirality {text!r}: {exc}") from None


def _tb_params(args):
    return tb.TightBindingParams(t=args.t, s=args.s, a=args.a)


def _quad(args):
    kwargs = {}
    if args.rel_tol is not None:
        kwargs["rel_tol"] = args.rel_tol
    if args.angular_order is not None:
        kwargs["angular_order"] = args.angular_order
    if args.outer_order is not None:
        kwargs["outer_order"] = args.outer_order
    return QuadratureSpec(**kwargs)


def _context(args):
    """Resolve (r in a_B*, sigma, units or None) from CLI inputs."""
    if args.chirality:
        ch = parse_chirality(args.chirality)
        masses, u, _, r = analysis.species_units(
            ch, Environment(args.epsilon), _tb_params(args))
        sigma = args.sigma if args.sigma is not None else masses.sigma
        return r, sigma, u
    if args.radius is None:
        raise ValueError("either --chirality or --radius is required")
    return args.radius, (args.sigma if args.sigma is not None else 0.0), None


# --- subcommand handlers (return metadata, rows) ----------------------------
def cmd_masses(args):
    ch = parse_chirality(args.chirality)
    masses = tb.effective_masses(ch, _tb_params(args))
    rows = [{"n": ch.n, "m": ch.m, "r_A": tb.radius(ch, _tb_params(args)),
             "gap_eV": masses.gap, "m_e_m0": masses.m_e,
             "m_h_m0": masses.m_h, "mu_m0": masses.mu,
             "sigma": masses.sigma}]
    return {"fermi_velocity_m_s": tb.fermi_velocity(_tb_params(args))}, rows


def cmd_bands(args):
    ch = parse_chirality(args.chirality)
    p = _tb_params(args)
    _, _, _, _, N, Tlen = tb._fold(ch, p)
    ks = np.linspace(-np.pi / Tlen, np.pi / Tlen, args.points)
    rows = []
    for mu_idx in range(N):
        ec, ev = tb.subband_energies(ch, mu_idx, ks, p)
        for k, c, v in zip(ks, ec, ev):
            rows.append({"subband": mu_idx, "k_invA": k, "E_c_eV": c,
                         "E_v_eV": v})
    return {"subbands": N}, rows


def cmd_exciton(args):
    r, _, u = _context(args)
    e_x = -exciton_ground(r, args.model, quad=_quad(args))
    row = {"r_aB": r, "model": args.model, "E_X_Ry": e_x}
    if u is not None:
        row["E_X_meV"] = to_physical_energy(e_x, u) * 1e3
    return {}, [row]


def cmd_trion(args):
    r, sigma, u = _context(args)
    res = binding_energy(r, sigma, args.charge, args.model, quad=_quad(args))
    row = {"r_aB": r, "sigma": sigma, "model": args.model,
           "charge": args.charge, "E_X_Ry": res.E_X, "E_T_Ry": res.E_T,
           "E_B_Ry": res.E_B}
    if u is not None:
        row["E_B_meV"] = to_physical_energy(res.E_B, u) * 1e3
    return {}, [row]


def cmd_hf(args):
    r, _, u = _context(args)
    res, state = hf_binding_energy(r, args.model, quad=_quad(args))
    row = {"r_aB": r, "model": args.model, "E_X_Ry": res.E_X,
           "E_T_HF_Ry": res.E_T, "E_B_HF_Ry": res.E_B,
           "iterations": state.iterations, "converged": state.converged}
    if u is not None:
        row["E_B_HF_meV"] = to_physical_energy(res.E_B, u) * 1e3
    return {"exciton_reference": "exact variational"}, [row]


def cmd_optimize(args):
    preset = preset_basis(args.problem + args.model)
    ax = preset.axial
    if args.problem == "trion" and args.model == "2d":
        initial = (ax.alphas_i, ax.alphas_k)
    else:
        initial = (ax.alphas_i,)
    run = optimize(args.problem, args.model, initial, r0=args.r0,
                   max_steps=args.max_steps, quad=_quad(args))
    rows = [{"step": i, "objective_Ry": e} for i, e in enumerate(run.history)]
    meta = {"converged": run.converged, "accepted": run.accepted,
            "rejected": run.rejected,
            "final_exponents": json.dumps(run.final)}
    return meta, rows


def cmd_probability(args):
    r, sigma, _ = _context(args)
    quad = _quad(args)
    if args.kind == "exciton":
        from .solver import exciton_spectrum
        spec, basis = exciton_spectrum(r, args.model, quad=quad)
        grid = analysis.exciton_probability(spec, basis, args.grid, r=r)
        rows = [{"theta": t, "P": v}
                for t, v in zip(grid.theta, grid.values)]
        return {"kind": "exciton"}, rows
    spec, basis = trion_spectrum(r, sigma, "-", args.model, quad=quad)
    grid = analysis.trion_probability(spec, basis, args.grid, r=r)
    rows = []
    for i, t1 in enumerate(grid.theta):
        for j, t2 in enumerate(grid.theta):
            rows.append({"theta1": t1, "theta2": t2,
                         "P": grid.values[i, j]})
    return {"kind": "trion"}, rows


def cmd_sweep_radius(args):
    grid = np.linspace(args.start, args.stop, args.points)
    rows = analysis.sweep_radius(grid, sigmas=(args.sigma or 0.0,),
                                 models=tuple(args.models.split(",")),
                                 methods=tuple(args.methods.split(",")),
                                 quad=_quad(args))
    return {}, rows


def cmd_sweep_sigma(args):
    grid = np.linspace(args.start, args.stop, args.points)
    rows = analysis.sweep_sigma(args.radius, grid, args.model, _quad(args))
    return {}, rows


def cmd_sweep_epsilon(args):
    ch = parse_chirality(args.chirality)
    grid = np.linspace(args.start, args.stop, args.points)
    rows, eb_fit, ex_fit = analysis.sweep_epsilon(ch, grid, _tb_params(args),
                                                  _quad(args))
    meta = {"fit_A_eV": eb_fit.A, "fit_p": eb_fit.p, "fit_C_eV": eb_fit.C,
            "exciton_fit_p": ex_fit.p,
            "fit_units_note": "fit constants in eV"}
    return meta, rows


def cmd_sweep_species(args):
    rows = analysis.sweep_species(args.rmin, args.rmax,
                                  Environment(args.epsilon),
                                  _tb_params(args), quad=_quad(args))
    return {"species": len(rows)}, rows


HANDLERS = {
    "masses": cmd_masses, "bands": cmd_bands, "exciton": cmd_exciton,
    "trion": cmd_trion, "hf": cmd_hf, "optimize": cmd_optimize,
    "probability": cmd_probability, "sweep-radius": cmd_sweep_radius,
    "sweep-sigma": cmd_sweep_sigma, "sweep-epsilon": cmd_sweep_epsilon,
    "sweep-species": cmd_sweep_species,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="trionlab",
        description="Exciton and trion binding energies of carbon nanotubes")
    parser.add_argument("--version", action="version", version=__version__)
    subparsers = parser.add_subparsers(dest="command", required=True)
    parser.command_parsers = {}

    class _Sub:
        def add_parser(self, name, **kwargs):
            p = subparsers.add_parser(name, **kwargs)
            parser.command_parsers[name] = p
            return p

    sub = _Sub()

    def common(p, chirality=False):
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="output path (default stdout)")
        p.add_argument("--cache-dir", help="cache directory "
                       "(default $TRIONLAB_CACHE)")
        p.add_argument("--no-cache", action="store_true")
        p.add_argument("--rel-tol", type=float)
        p.add_argument("--angular-order", type=int)
        p.add_argument("--outer-order", type=int)
        p.add_argument("--t", type=float, default=-2.89)
        p.add_argument("--s", type=float, default=0.1)
        p.add_argument("--a", type=float, default=2.46)
        if chirality:
            p.add_argument("--chirality", required=True, help="n,m")

    def physics(p):
        common(p)
        p.add_argument("--chirality", help="n,m")
        p.add_argument("--epsilon", type=float, default=3.5)
        p.add_argument("--radius", type=float, help="radius in a_B*")
        p.add_argument("--sigma", type=float)
        p.add_argument("--model", choices=("1d", "2d"), default="2d")

    p = sub.add_parser("masses", help="effective masses of one species")
    common(p, chirality=True)

    p = sub.add_parser("bands", help="folded subband structure")
    common(p, chirality=True)
    p.add_argument("--points", type=int, default=201)

    p = sub.add_parser("exciton", help="exciton binding energy")
    physics(p)

    p = sub.add_parser("trion", help="trion binding energy")
    physics(p)
    p.add_argument("--charge", choices=("-", "+"), default="-")

    p = sub.add_parser("hf", help="mean-field trion binding energy")
    physics(p)

    p = sub.add_parser("optimize", help="optimize basis exponents")
    common(p)
    p.add_argument("--problem", choices=("exciton", "trion", "hf"),
                   required=True)
    p.add_argument("--model", choices=("1d", "2d"), default="2d")
    p.add_argument("--r0", type=float, default=0.1)
    p.add_argument("--max-steps", type=int, default=100)

    p = sub.add_parser("probability", help="angular probability grid")
    physics(p)
    p.add_argument("--kind", choices=("exciton", "trion"), default="trion")
    p.add_argument("--grid", type=int, default=201)

    p = sub.add_parser("sweep-radius", help="binding energies vs radius")
    common(p)
    p.add_argument("--start", type=float, default=0.02)
    p.add_argument("--stop", type=float, default=0.3)
    p.add_argument("--points", type=int, default=30)
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--models", default="1d,2d")
    p.add_argument("--methods", default="full")

    p = sub.add_parser("sweep-sigma", help="binding energies vs mass fraction")
    common(p)
    p.add_argument("--radius", type=float, default=0.1)
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=1.0)
    p.add_argument("--points", type=int, default=11)
    p.add_argument("--model", choices=("1d", "2d"), default="2d")

    p = sub.add_parser("sweep-epsilon",
                       help="binding energies vs dielectric constant")
    common(p, chirality=True)
    p.add_argument("--start", type=float, default=2.0)
    p.add_argument("--stop", type=float, default=5.0)
    p.add_argument("--points", type=int, default=13)

    p = sub.add_parser("sweep-species",
                       help="all semiconducting species in a radius range")
    common(p)
    p.add_argument("--rmin", type=float, default=3.0)
    p.add_argument("--rmax", type=float, default=15.0)
    p.add_argument("--epsilon", type=float, default=3.5)

    return parser


def _coerce(text):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    return text


def load_config_file(path, parser, argv, command):
    """Apply key = value lines as defaults (flags still override)."""
    overrides = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            overrides[key.replace("-", "_")] = _coerce(value)
    # defaults live on the active subcommand parser, not the root
    parser.command_parsers[command].set_defaults(**overrides)
    return parser.parse_args(argv)


def run(argv, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        args = load_config_file(args.config, parser, argv, args.command)
    config = {k: v for k, v in sorted(vars(args).items())
              if k not in ("output", "cache_dir", "no_cache", "config")}
    key = config_key(config)
    cache = ResultCache.from_environment(getattr(args, "cache_dir", None),
                                         getattr(args, "no_cache", False))
    payload = cache.get(key)
    if payload is None:
        metadata, rows = HANDLERS[args.command](args)
        payload = _pyify({"metadata": metadata, "rows": rows})
        cache.put(key, payload)
    metadata = dict(payload["metadata"])
    metadata["version"] = __version__
    metadata["config_hash"] = key
    metadata["units_note"] = "energies Ry* unless suffixed; lengths a_B*/A"
    if args.output:
        with open(args.output, "w") as fh:
            emit(metadata, payload["rows"], args.format, fh)
    else:
        emit(metadata, payload["rows"], args.format, stdout)
    return 0


def main(argv=None):
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 2 design-domain error, 3 unreadable or malformed
input, 4 bad configuration (including argument errors).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import fileio
from .chain import eigendecompose, is_persymmetric, spectral_data
from .designer import design, verify_design
from .dynamics import RevivalTarget, detect_fractional_revival, detect_pst, evolve
from .exceptions import ChainError
from .fileio import FormatError
from .inverse import fr_weights, gamma_from, pst_weights, reconstruct_jacobi
from .models import bilattice_midpoint, fit_bilattice, fr_chain_psi_half, krawtchouk_chain, para_krawtchouk_chain, wrap_phase
from .surgery import remove_level, remove_pair

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_IO = 3
EXIT_CONFIG = 4


class ConfigError(ValueError):
    """Arguments are individually well-formed but jointly unusable."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which is reserved for domain errors here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _angle(args, value):
    return math.radians(value) if args.degrees else value


def _emit(text: str, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise FormatError(f"cannot write {out}: {exc}") from exc


def _positive(name, value):
    if not value > 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def cmd_design(args) -> int:
    T = _positive("T", args.T)
    d = design(args.n, _angle(args, args.theta), _angle(args, args.psi), T)
    _emit(fileio.dumps({"chain": d.chain.to_dict(), "record": d.record.to_dict()}), args.out)
    return EXIT_OK


def time_grid(args) -> np.ndarray:
    if args.times is not None:
        items = [s for s in args.times.split(",") if s.strip()]
        if not items:
            raise ConfigError("time grid is empty")
        try:
            return np.array([float(s) for s in items])
        except ValueError as exc:
            raise ConfigError(f"bad time list: {exc}") from exc
    if args.n_steps < 1:
        raise ConfigError(f"n_steps must be >= 1, got {args.n_steps}")
    if args.n_steps == 1:
        return np.array([args.t_start])
    return np.linspace(args.t_start, args.t_end, args.n_steps)


def cmd_simulate(args) -> int:
    chain = fileio.load_chain(args.chain)
    t = time_grid(args)
    if not 0 <= args.start <= chain.n:
        raise ConfigError(f"start site {args.start} outside 0..{chain.n}")
    amp = evolve(chain, t, args.start)
    _emit(fileio.amplitudes_csv(t, amp), args.out)
    return EXIT_OK


def verify_report(chain, T: float, tol: float, target: RevivalTarget | None = None) -> dict:
    pst = detect_pst(chain, T, tol)
    fr = detect_fractional_revival(chain, T, tol)
    fit = fit_bilattice(eigendecompose(chain).eigenvalues, T)
    report = {
        "n": chain.n,
        "T": T,
        "persymmetric": is_persymmetric(chain, 1e-10 * max(chain.scale, 1e-300)),
        "pst": bool(pst),
        "pst_fidelity": pst.fidelity,
        "revival": ({"theta": fr.theta, "psi": fr.psi, "phi": fr.phi, "leak": fr.residual}
                    if fr else None),
        "leak": fr.residual,
        "bilattice": asdict(fit),
    }
    if target is not None:
        report["target_residual"] = verify_design(chain, target, tol).residual
    return report


def cmd_verify(args) -> int:
    chain = fileio.load_chain(args.chain)
    T = _positive("T", args.T)
    tol = _positive("tol", args.tol)
    target = None
    if args.theta is not None:
        psi = _angle(args, args.psi or 0.0)
        target = RevivalTarget(_angle(args, args.theta), psi, _angle(args, args.phi or 0.0), T)
    _emit(fileio.dumps(verify_report(chain, T, tol, target)), args.out)
    return EXIT_OK


def cmd_surgery(args) -> int:
    chain = fileio.load_chain(args.chain)
    if args.level is not None:
        i = args.level if args.level >= 0 else chain.n + 1 + args.level
        out = remove_level(chain, i)
    else:
        out = remove_pair(chain, args.pair)
    sd = spectral_data(eigendecompose(out))
    _emit(fileio.dumps({"chain": out.to_dict(), "spectral_data": sd.to_dict()}), args.out)
    return EXIT_OK


def cmd_models(args) -> int:
    T = _positive("T", args.T)
    phi = None
    if args.kind == "krawtchouk":
        chain = krawtchouk_chain(args.n, T)
    elif args.kind == "para-krawtchouk":
        # scale defaults to revival time T, shift to the centered spectrum
        a = math.pi / T if args.a is None else args.a
        b = -a * bilattice_midpoint(args.n, args.delta) if args.b is None else args.b
        chain = para_krawtchouk_chain(args.n, args.delta, a, b)
    elif args.kind == "fr-half":
        chain, phi = fr_chain_psi_half(args.n, _angle(args, args.theta), T)
    else:  # reconstruct
        if args.spectrum is None:
            raise ConfigError("reconstruct needs --spectrum")
        obj = fileio.read_json(args.spectrum)
        if args.weights == "given":
            measure = fileio.spectral_from_obj(obj)
        else:
            pts = obj.get("points") if isinstance(obj, dict) else obj
            if pts is None:
                raise FormatError("spectrum file needs a 'points' list")
            if args.weights == "pst":
                measure = pst_weights(pts)
            else:
                measure = fr_weights(pts, gamma_from(_angle(args, args.theta), _angle(args, args.psi)))
        chain = reconstruct_jacobi(measure)
    payload = {"chain": chain.to_dict(), "spectral_data": spectral_data(eigendecompose(chain)).to_dict()}
    if phi is not None:
        payload["phi"] = wrap_phase(phi)
    _emit(fileio.dumps(payload), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spinrevival", description="Design and simulate XX chains with perfect transfer or fractional revival.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, angles=True):
        sp.add_argument("-o", "--out", default=None, help="output file (default stdout)")
        if angles:
            sp.add_argument("--degrees", action="store_true", help="angles are in degrees")

    d = sub.add_parser("design", help="two-site revival chain for (N, theta, psi, T)")
    d.add_argument("--n", type=int, required=True, help="N, so the chain has N+1 sites")
    d.add_argument("--theta", type=float, required=True)
    d.add_argument("--psi", type=float, required=True)
    d.add_argument("--T", type=float, default=math.pi)
    common(d)
    d.set_defaults(func=cmd_design)

    s = sub.add_parser("simulate", help="amplitude CSV on a time grid")
    s.add_argument("chain")
    s.add_argument("--t-start", type=float, default=0.0)
    s.add_argument("--t-end", type=float, default=math.pi)
    s.add_argument("--n-steps", type=int, default=101)
    s.add_argument("--times", default=None, help="comma-separated times; overrides the grid")
    s.add_argument("--start", type=int, default=0)
    common(s, angles=False)
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("verify", help="persymmetry, bi-lattice fit and revival verdicts")
    v.add_argument("chain")
    v.add_argument("--T", type=float, default=math.pi)
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--theta", type=float, default=None, help="target theta; enables the residual check")
    v.add_argument("--psi", type=float, default=None)
    v.add_argument("--phi", type=float, default=None)
    common(v)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("surgery", help="remove an extremal level or an interior pair")
    g.add_argument("chain")
    which = g.add_mutually_exclusive_group(required=True)
    which.add_argument("--level", type=int, help="0 or N (negative counts from the top)")
    which.add_argument("--pair", type=int, help="i, removing levels i and i+1")
    common(g, angles=False)
    g.set_defaults(func=cmd_surgery)

    m = sub.add_parser("models", help="closed-form and reconstructed chains")
    m.add_argument("kind", choices=["krawtchouk", "para-krawtchouk", "fr-half", "reconstruct"])
    m.add_argument("--n", type=int, default=4)
    m.add_argument("--T", type=float, default=math.pi)
    m.add_argument("--delta", type=float, default=1.0)
    m.add_argument("--a", type=float, default=None, help="lattice scale (default pi/T)")
    m.add_argument("--b", type=float, default=None, help="lattice shift (default: centered; 0 gives raw coefficients)")
    m.add_argument("--theta", type=float, default=0.0)
    m.add_argument("--psi", type=float, default=0.0)
    m.add_argument("--spectrum", default=None, help="JSON with 'points' (and 'weights' for --weights given)")
    m.add_argument("--weights", choices=["pst", "fr", "given"], default="pst")
    common(m)
    m.set_defaults(func=cmd_models)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ChainError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

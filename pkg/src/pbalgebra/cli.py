"""Command-line front end: ``pbalgebra {gen,closure,verify,susy,mass}``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
Reports go to stdout (or --output), diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import os
import sys
from math import factorial, sqrt

import numpy as np

from . import closure, gellmann, lepton, oscillator, susy
from .errors import DomainError
from .linalg import build_span_basis, frobenius
from .serialize import dumps, encode_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CLOSURE_SIZE_GUARD = 30
TOLERANCE_ENV = "PB_ALGEBRA_TOLERANCE"


class UsageError(Exception):
    pass


def _tolerance(args, default):
    if args.tolerance_override is not None:
        return args.tolerance_override
    env = os.environ.get(TOLERANCE_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"{TOLERANCE_ENV}={env!r} is not a number") from None
    return default


def _fmt_entry(z: complex) -> str:
    if abs(z.imag) < 5e-7:
        return f"{z.real:.6f}"
    return f"{z.real:.6f}{z.imag:+.6f}i"


def format_matrix(name: str, x: np.ndarray) -> str:
    cells = [[_fmt_entry(complex(v)) for v in row] for row in x]
    width = max(len(c) for row in cells for c in row)
    lines = [f"{name}:"]
    lines += ["  " + "  ".join(c.rjust(width) for c in row) for row in cells]
    return "\n".join(lines)


def _row(cols, widths):
    return "  ".join(str(c).ljust(w) for c, w in zip(cols, widths)).rstrip()


def format_table(header, rows) -> str:
    rows = [[("" if c is None else c) for c in r] for r in rows]
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    out = [_row(header, widths), _row(["-" * w for w in widths], widths)]
    out += [_row(r, widths) for r in rows]
    return "\n".join(out)


def _f6(x):
    return None if x is None else f"{x:.6f}"


def _e(x):
    return None if x is None else f"{x:.3e}"


# --- gen -------------------------------------------------------------------

def cmd_gen(args):
    if args.s is None or args.s < 0:
        raise UsageError("gen needs --s >= 0")
    pb = oscillator.build_pb_operators(args.s)
    ops = {"a": pb.a, "adag": pb.adag, "A": pb.A, "number": pb.number}
    gens = {}
    if args.s >= 2:
        g = gellmann.build_named_generators(args.s)
        gens = {"M": g.M, "Mdag": g.Mdag, "K": g.K, "F": g.F, "Fdag": g.Fdag}
    payload = {
        "s": args.s,
        "operators": {k: encode_matrix(v) for k, v in ops.items()},
    }
    if gens:
        payload["generators"] = {k: encode_matrix(v) for k, v in gens.items()}
    text = "\n\n".join(format_matrix(k, v) for k, v in {**ops, **gens}.items())
    return payload, f"s = {args.s}\n\n{text}", EXIT_OK


# --- closure ---------------------------------------------------------------

def cmd_closure(args):
    s = args.s
    if s is None or s < 1:
        raise UsageError("closure needs --s >= 1")
    if s > CLOSURE_SIZE_GUARD and not args.force:
        raise UsageError(
            f"closure at s={s} costs O(s^7) work; pass --force to run above s={CLOSURE_SIZE_GUARD}"
        )
    pb = oscillator.build_pb_operators(s)
    tol = _tolerance(args, None)
    res = closure.lie_closure(closure.hermitian_seeds(pb), tol=tol)
    recon = closure.reconstruction_residual(res.basis, res.structure_constants)
    payload = {
        "s": s,
        "dim_algebra": res.dim_algebra,
        "expected": (s + 1) ** 2 - 1,
        "is_su_n": res.is_su_n,
        "iterations": res.iterations,
        "max_relation_residual": recon,
        "span_residual": res.span_residual,
    }
    rows = [[k, v if not isinstance(v, float) else _e(v)] for k, v in payload.items()]
    text = format_table(["quantity", "value"], rows)
    return payload, text, EXIT_OK if res.is_su_n else EXIT_FAIL


# --- verify ----------------------------------------------------------------

def _hermitian_generator_basis(pb, g):
    mats = closure.hermitian_seeds(pb) + [g.M + g.Mdag, 1j * (g.Mdag - g.M), g.K]
    if g.F is not None:
        mats += [g.F + g.Fdag, 1j * (g.Fdag - g.F)]
    return build_span_basis(mats)


def cmd_verify(args):
    s = args.s
    if s is None or s < 1:
        raise UsageError("verify needs --s >= 1 (full suite needs s >= 2)")
    tol = _tolerance(args, None)
    rel_tol = 1e-12 if tol is None else tol
    grp_tol = 1e-10 if tol is None else tol
    pb = oscillator.build_pb_operators(s)
    g = gellmann.build_named_generators(s)
    report = gellmann.verify_generator_relations(g, pb)
    checks = []
    for name, r in report.residuals.items():
        checks.append((f"relation {name}", r, rel_tol * report.scale))

    ext = gellmann.extract_named_generators(pb)
    for field in ("M", "K", "F"):
        mine, theirs = getattr(g, field), getattr(ext, field)
        if mine is not None:
            checks.append((f"entry formula vs commutator extraction: {field}",
                           float(np.max(np.abs(mine - theirs))), rel_tol * report.scale))

    basis = _hermitian_generator_basis(pb, g)
    rng = np.random.default_rng(args.seed)
    worst_u = worst_d = 0.0
    for _ in range(args.samples):
        u, d = closure.group_element_check(basis, rng.uniform(-1, 1, len(basis)))
        worst_u, worst_d = max(worst_u, u), max(worst_d, d)
    checks.append(("group element unitarity ||U+U - I||", worst_u, grp_tol))
    checks.append(("group element |det U - 1|", worst_d, grp_tol))

    if s >= 2:
        d = s - 1
        win = oscillator.bosonic_limit_window(s, d)
        checks.append((f"bosonic window d={d}: A - I",
                       float(np.max(np.abs(win["A"] - np.eye(d)))), 0.0))
        for k in ("M", "K", "F"):
            checks.append((f"bosonic window d={d}: {k}", float(np.max(np.abs(win[k]))), 0.0))

    results = [
        {"check": n, "residual": r, "tolerance": t, "passed": bool(r <= t)}
        for n, r, t in checks
    ]
    ok = all(r["passed"] for r in results)
    worst = max(results, key=lambda r: (not r["passed"], r["residual"] - r["tolerance"]))
    payload = {"s": s, "passed": ok, "checks": results, "worst": worst["check"]}
    text = format_table(
        ["check", "residual", "tolerance", "status"],
        [[r["check"], _e(r["residual"]), _e(r["tolerance"]), "ok" if r["passed"] else "FAIL"]
         for r in results],
    )
    if not ok:
        print(f"verification failed; worst: {worst['check']} "
              f"(residual {worst['residual']:.3e} > {worst['tolerance']:.3e})", file=sys.stderr)
    return payload, text, EXIT_OK if ok else EXIT_FAIL


# --- susy ------------------------------------------------------------------

def cmd_susy(args):
    s, k = args.s, args.k
    if s is None or k is None or k < 1 or s < k:
        raise UsageError(f"susy needs s >= k >= 1 (got s={s}, k={k})")
    tol = _tolerance(args, 1e-12)
    ss = susy.build_susy_set(s, k)
    scale = susy.susy_scale(ss)
    rels = susy.verify_susy_algebra(ss)
    ok = all(r.interior_residual <= tol * scale for r in rels)

    doublets = []
    for m in range(s - k + 1):
        d = susy.doublet_spectrum(ss, m)
        qa = susy.verify_quasialgebra(ss, d)
        ok = ok and d.eigen_residual == 0.0 and all(v <= tol * d.eigenvalue for v in qa.values())
        doublets.append({"m": m, "eigenvalue": d.eigenvalue, "eigen_residual": d.eigen_residual,
                         "quasialgebra": qa})

    omega, omega0, gc = 1.0, 0.8, complex(0.3, 0.1)
    jc = susy.build_jc_hamiltonian(omega, omega0, gc, k, s)
    gt = susy.coupling_map(gc, k)
    sh = susy.build_susy_hamiltonian(omega, k * omega - omega0, gt, ss)
    ham_res = frobenius(jc.H - sh.H) / frobenius(jc.H)
    ok = ok and ham_res <= tol

    payload = {
        "s": s,
        "k": k,
        "passed": ok,
        "relations": [r.as_dict() for r in rels],
        "doublets": doublets,
        "hamiltonian_equivalence": {
            "omega": omega, "omega0": omega0, "g": [gc.real, gc.imag],
            "coupling_map": "g_susy = g * sqrt(k!)",
            "sqrt_k_factorial": sqrt(factorial(k)),
            "relative_residual": ham_res,
        },
    }
    text = format_table(
        ["relation", "interior", "boundary"],
        [[r.name, _e(r.interior_residual), _e(r.boundary_residual)] for r in rels],
    )
    text += "\n\n" + format_table(
        ["m", "C(m+k,m)", "[Q,Q+]", "{Q,Q+}", "(Q+-Q)^2"],
        [[d["m"], f"{d['eigenvalue']:.0f}", *(_e(v) for v in d["quasialgebra"].values())]
         for d in doublets],
    )
    text += (f"\n\nHamiltonian equivalence with g_susy = g * sqrt(k!) = g * {sqrt(factorial(k)):.6f}: "
             f"relative residual {ham_res:.3e}")
    return payload, text, EXIT_OK if ok else EXIT_FAIL


# --- mass ------------------------------------------------------------------

def cmd_mass(args):
    source = "shipped"
    if args.config:
        try:
            cfg = lepton.load_constants(args.config)
            inv_alpha = float(cfg.get("inverse_alpha", lepton.DEFAULT_INVERSE_ALPHA))
            exp = {k: float(v) for k, v in
                   cfg.get("experimental_ratios", lepton.DEFAULT_EXPERIMENTAL).items()}
        except (OSError, ValueError, TypeError, AttributeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        source = args.config
        alpha_source = "config"
    else:
        inv_alpha = lepton.DEFAULT_INVERSE_ALPHA
        exp = dict(lepton.DEFAULT_EXPERIMENTAL)
        alpha_source = "default"
    if args.inverse_alpha is not None:
        inv_alpha, alpha_source = args.inverse_alpha, "flag"
    table = lepton.build_mass_table(lepton.MassModel(inv_alpha), exp)
    payload = {
        "inverse_alpha": inv_alpha,
        "provenance": {"inverse_alpha": alpha_source, "experimental_ratios": source},
        "rows": [
            {"n": r.n, "label": r.label, "predicted_ratio": r.predicted_ratio,
             "experimental_ratio": r.experimental_ratio,
             "relative_deviation": r.relative_deviation}
            for r in table.rows
        ],
    }
    text = f"1/alpha = {inv_alpha}\n\n" + format_table(
        ["n", "lepton", "predicted m/m_e", "experimental", "rel. deviation"],
        [[r.n, r.label, _f6(r.predicted_ratio), _f6(r.experimental_ratio),
          _f6(r.relative_deviation)] for r in table.rows],
    )
    return payload, text, EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "closure": cmd_closure,
    "verify": cmd_verify,
    "susy": cmd_susy,
    "mass": cmd_mass,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=None,
                        help="output format (default: table on a terminal, json otherwise)")
    common.add_argument("--output", "-o", default=None, help="write the report to this file")
    common.add_argument("--tolerance-override", type=float, default=None)

    p = argparse.ArgumentParser(prog="pbalgebra", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    g = sub.add_parser("gen", parents=[common], help="print oscillator and named generator matrices")
    g.add_argument("--s", type=int, required=True)

    c = sub.add_parser("closure", parents=[common], help="Lie closure of the oscillator seeds")
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--force", action="store_true", help=f"allow s > {CLOSURE_SIZE_GUARD}")

    v = sub.add_parser("verify", parents=[common], help="commutation relation suite")
    v.add_argument("--s", type=int, required=True)
    v.add_argument("--samples", type=int, default=100, help="random group elements to test")
    v.add_argument("--seed", type=int, default=0)

    su = sub.add_parser("susy", parents=[common], help="superalgebra, doublets, Hamiltonian")
    su.add_argument("--s", type=int, required=True)
    su.add_argument("--k", type=int, default=1)

    m = sub.add_parser("mass", parents=[common], help="charged-lepton mass table")
    m.add_argument("--inverse-alpha", type=float, default=None)
    m.add_argument("--config", default=None, help="JSON constants file")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or ("table" if sys.stdout.isatty() else "json")
    try:
        payload, text, code = COMMANDS[args.subcommand](args)
    except (UsageError, DomainError) as exc:
        print(f"pbalgebra {args.subcommand}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = dumps(payload) if fmt == "json" else text + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

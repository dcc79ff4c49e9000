"""Command-line interface: `qg <command> ...`.

Every command emits a JSON report (default) or aligned text (`--text`).
Exit code 0 when no check fails, 1 when one does, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import classical as cl
from . import gerbe as gb
from . import qgroups as qg
from . import selftest as st
from .ncpoly import NCPolynomial
from .parser import format_expr, parse_expr, parse_gaussian, parse_matrix
from .report import Report
from .scalars import format_scalar


def _common_flags(p):
    p.add_argument("--json", action="store_true", help="JSON output (default)")
    p.add_argument("--text", action="store_true", help="aligned text output")
    p.add_argument("--seed", type=int, default=0)


def build_argparser():
    top = argparse.ArgumentParser(prog="qg",
                                  description="quantum-group gerbe toolkit")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="rewrite an expression to normal form")
    p.add_argument("--alg", required=True, choices=qg.PRESET_LABELS)
    p.add_argument("--expr", required=True)
    p.add_argument("--max-degree", type=int, default=None)
    _common_flags(p)

    p = sub.add_parser("verify", help="check lhs = rhs in a preset algebra")
    p.add_argument("--alg", required=True, choices=qg.PRESET_LABELS)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--q", default=None,
                   help="echoed only; symbolic checks are exact in q")
    _common_flags(p)

    p = sub.add_parser("hopf", help="coproduct, counit, antipode, or axiom suite")
    p.add_argument("what", choices=("delta", "epsilon", "antipode", "axioms"))
    p.add_argument("--alg", required=True, choices=qg.PRESET_LABELS)
    p.add_argument("--expr", default=None)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--samples", type=int, default=10)
    _common_flags(p)

    p = sub.add_parser("detq", help="quantum determinant and its centrality")
    p.add_argument("--alg", required=True, choices=("mq:2", "mq:3", "suq:2", "suq:3"))
    _common_flags(p)

    p = sub.add_parser("presets", help="list the built-in algebra presets")
    _common_flags(p)

    p = sub.add_parser("gerbe", help="exact quantum-gerbe constructions")
    p.add_argument("what", choices=("x", "projection", "xext", "loop",
                                    "resolvent", "transition"))
    p.add_argument("--deformed", action="store_true",
                   help="use the q-deformed extension for xext")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--cuts", nargs="+", default=None,
                   help="exact unit scalars like 'i' or '3/5 + 4/5 i'")
    _common_flags(p)

    p = sub.add_parser("classical", help="numeric SU(n) gerbe verification")
    p.add_argument("what", choices=("log", "section", "transition", "cocycle",
                                    "loop", "degree", "dirac", "match"))
    p.add_argument("--g", default=None,
                   help="matrix literal: diag(i,-i) or a JSON array")
    p.add_argument("--cuts", nargs="+", type=float, default=None,
                   help="cut angles in radians")
    p.add_argument("--window", nargs=2, type=float, default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--variant", choices=cl.SECTION_VARIANTS, default="affine")
    p.add_argument("--method", choices=("analytic", "finite_difference"),
                   default="analytic")
    p.add_argument("--x3", default="0,0,1", help="unit 3-vector, comma separated")
    p.add_argument("--samples", type=int, default=16)
    _common_flags(p)

    p = sub.add_parser("selftest", help="run the full acceptance suite")
    _common_flags(p)

    return top


# -- symbolic commands -------------------------------------------------------

def _report_for_alg(command, alg, inputs, seed):
    pres = qg.build_preset(alg)
    rep = Report(command, algebra=alg, convention=pres.convention,
                 inputs=inputs, seed=seed)
    return pres, rep


def cmd_normalize(args):
    pres, rep = _report_for_alg("normalize", args.alg, {"expr": args.expr}, args.seed)
    p = parse_expr(args.expr, pres)
    if args.max_degree is not None and p.degree() > args.max_degree:
        raise SystemExit2(f"expression degree {p.degree()} exceeds "
                          f"--max-degree {args.max_degree}")
    nf = pres.normalize(p)
    rep.add("normal_form", "holds", format_expr(nf, pres))
    return rep


def cmd_verify(args):
    inputs = {"lhs": args.lhs, "rhs": args.rhs}
    if args.q is not None:
        inputs["q"] = args.q
        inputs["note"] = "symbolic checks are exact in q; no specialization"
    pres, rep = _report_for_alg("verify", args.alg, inputs, args.seed)
    lhs = parse_expr(args.lhs, pres)
    rhs = parse_expr(args.rhs, pres)
    holds, residual = pres.verify_identity(lhs, rhs)
    rep.add("lhs = rhs", "holds" if holds else "fails",
            None if holds else format_expr(residual, pres))
    return rep


def _tensor_str(t, pres):
    parts = []
    for key, c in sorted(t.terms.items()):
        slots = " (x) ".join(
            format_expr(NCPolynomial.monomial(w), pres) for w in key)
        parts.append(f"({format_scalar(c)}) * {slots}")
    return " + ".join(parts) if parts else "0"


def cmd_hopf(args):
    inputs = {"what": args.what}
    if args.expr:
        inputs["expr"] = args.expr
    pres, rep = _report_for_alg("hopf", args.alg, inputs, args.seed)
    if args.what == "axioms":
        import random
        rng = random.Random(args.seed)
        rep.add_checks(qg.verify_hopf_axioms(pres, max_degree=args.max_degree,
                                             rng=rng, samples=args.samples))
        return rep
    if not args.expr:
        raise SystemExit2(f"hopf {args.what} needs --expr")
    p = parse_expr(args.expr, pres)
    if args.what == "delta":
        rep.add("coproduct", "holds", _tensor_str(qg.hopf_coproduct(p, pres), pres))
    elif args.what == "epsilon":
        rep.add("counit", "holds", format_scalar(qg.hopf_counit(p, pres)))
    else:
        out = pres.normalize(qg.hopf_antipode(p, pres))
        rep.add("antipode", "holds", format_expr(out, pres))
    return rep


def cmd_detq(args):
    pres, rep = _report_for_alg("detq", args.alg, {}, args.seed)
    det = qg.quantum_determinant(pres)
    rep.add("det_q", "holds", format_expr(det, pres))
    rep.add_checks(qg.verify_det_central(pres))
    return rep


def cmd_presets(args):
    rep = Report("presets", inputs={}, seed=args.seed)
    blurbs = {
        "mq:2": "2x2 quantum matrix bialgebra",
        "mq:3": "3x3 quantum matrix bialgebra",
        "suq:2": "quantum SU(2) from the matrix algebra with antipode star",
        "suq:3": "quantum SU(3) from the matrix algebra with antipode star",
        "suq2": "quantum SU(2) with the standard a,b,c,d relations",
        "s2q": "standard Podles sphere, the quantum equator",
    }
    for label in qg.PRESET_LABELS:
        rep.add(label, "holds", blurbs[label])
    return rep


def cmd_gerbe(args):
    rep = Report(f"gerbe {args.what}", algebra="s2q", inputs={}, seed=args.seed)
    if args.what == "x":
        rep.add_checks(gb.verify_x_involution(gb.build_x_equator()))
    elif args.what == "projection":
        x = gb.build_x_equator()
        rep.add_checks(gb.verify_projection(gb.build_projection(x)))
    elif args.what == "loop":
        x = gb.build_x_equator()
        rep.add_checks(gb.verify_loop_unitary(gb.build_equator_loop(x)))
    elif args.what == "xext":
        x, pres = gb.build_x_extended(args.deformed)
        rep.algebra = pres.label
        rep.inputs["deformed"] = args.deformed
        rep.add_checks(gb.verify_x_extended(x))
    elif args.what == "resolvent":
        cut = parse_gaussian(args.cuts[0]) if args.cuts else parse_gaussian("i")
        rep.algebra = f"suq:{args.n}"
        rep.inputs["cut"] = str(cut)
        ext = gb.adjoin_resolvent(qg.build_suqn(args.n), cut)
        rep.add_checks(ext.verify())
    else:  # transition
        cuts = args.cuts or ["i", "-i"]
        if len(cuts) != 2:
            raise SystemExit2("gerbe transition needs exactly two --cuts")
        a, b = (parse_gaussian(c) for c in cuts)
        rep.algebra = f"suq:{args.n}"
        rep.inputs["cuts"] = [str(a), str(b)]
        rep.add_checks(gb.formal_transition(args.n, a, b))
    return rep


# -- numeric commands --------------------------------------------------------

def _need(args, flag, value):
    if value is None:
        raise SystemExit2(f"classical {args.what} needs {flag}")
    return value


def cmd_classical(args):
    rep = Report(f"classical {args.what}", inputs={}, seed=args.seed)
    what = args.what
    if what == "degree":
        grid = args.grid or 64
        rep.inputs["grid"] = grid
        deg = cl.suspension_degree(grid)
        ok = abs(deg - round(deg)) <= 0.1
        rep.add("suspension degree", "holds" if ok else "fails", f"{deg:.6f}")
        return rep
    if what == "loop":
        x3 = tuple(float(v) for v in args.x3.split(","))
        rep.inputs["x3"] = list(x3)
        worst = 0.0
        for t in np.linspace(0, 1, args.samples + 1):
            U = cl.su2_basic_loop(x3, t)
            worst = max(worst, np.linalg.norm(U.conj().T @ U - np.eye(2)),
                        abs(np.linalg.det(U) - 1))
        rep.add("unitary with det 1 along the loop",
                "holds" if worst < 1e-12 else "fails", f"max deviation {worst:.2e}")
        based = max(np.linalg.norm(cl.su2_basic_loop(x3, t) - np.eye(2))
                    for t in (0.0, 1.0))
        rep.add("based at t=0 and t=1", "holds" if based < 1e-12 else "fails",
                f"{based:.2e}")
        return rep

    g = cl.check_unitary(parse_matrix(_need(args, "--g", args.g)))
    rep.inputs["g"] = [[[float(z.real), float(z.imag)] for z in row] for row in g]
    if what == "log":
        cuts = _need(args, "--cuts", args.cuts)
        cut = cl.SpectralCut(cuts[0])
        rep.inputs["cut"] = cut.angle
        from scipy.linalg import expm
        X = cl.matrix_log_spectral(g, cut)
        err = np.linalg.norm(expm(X) - g)
        rep.add("exp(log g) = g", "holds" if err < 1e-10 else "fails", f"{err:.2e}")
        Xc = cl.matrix_log_contour(g, cut, quad_points=args.grid or 1024)
        cerr = np.linalg.norm(Xc - X)
        rep.add("contour log = spectral log",
                "holds" if cerr < 1e-6 else "fails", f"{cerr:.2e}")
        rep.add("log", "holds",
                str([[f"{z.real:.12g}{z.imag:+.12g}i" for z in row] for row in X]))
    elif what == "section":
        cuts = _need(args, "--cuts", args.cuts)
        cut = cl.SpectralCut(cuts[0])
        rep.inputs.update(cut=cut.angle, t=args.t, variant=args.variant)
        s = cl.local_section(g, cut, args.t, args.variant)
        rep.add("section value", "holds",
                str([[f"{z.real:.12g}{z.imag:+.12g}i" for z in row] for row in s]))
    elif what == "transition":
        cuts = _need(args, "--cuts", args.cuts)
        a, b = (cl.SpectralCut(c) for c in cuts[:2])
        N = args.grid or 64
        rep.inputs.update(cuts=[a.angle, b.angle], grid=N, variant=args.variant)
        path = cl.transition_path(g, a, b, N=N, variant=args.variant)
        eye = np.eye(g.shape[0])
        based = max(np.linalg.norm(path.mats[0] - eye),
                    np.linalg.norm(path.mats[-1] - eye))
        rep.add("based loop", "holds" if based < 1e-10 else "fails", f"{based:.2e}")
        uerr = max(np.linalg.norm(m.conj().T @ m - eye) for m in path.mats)
        rep.add("unitary along the path", "holds" if uerr < 1e-8 else "fails",
                f"{uerr:.2e}")
        rep.add("continuity bound L", "holds", f"{path.continuity_bound():.4f}")
    elif what == "cocycle":
        cuts = _need(args, "--cuts", args.cuts)
        if len(cuts) != 3:
            raise SystemExit2("classical cocycle needs three --cuts angles")
        triple = tuple(cl.SpectralCut(c) for c in cuts)
        N = args.grid or 64
        rep.inputs.update(cuts=[c.angle for c in triple], grid=N,
                          variant=args.variant)
        res = cl.cocycle_residual(g, triple, N=N, variant=args.variant)
        rep.add("phi_ab phi_bc = phi_ac", "holds" if res < 1e-10 else "fails",
                f"residual {res:.2e}")
    elif what == "dirac":
        window = _need(args, "--window", args.window)
        rep.inputs.update(window=list(window), method=args.method)
        kw = {}
        if args.method == "finite_difference":
            kw["N"] = args.grid or 1024
            rep.inputs["grid"] = kw["N"]
        spec = cl.dirac_spectrum(g, window, args.method, **kw)
        rep.add("spectrum", "holds",
                str([round(e, 10) for e in spec.eigenvalues]))
    elif what == "match":
        cuts = _need(args, "--cuts", args.cuts)
        a, b = (cl.SpectralCut(c) for c in cuts[:2])
        rep.inputs["cuts"] = [a.angle, b.angle]
        m = cl.spectral_window_match(g, a, b)
        rep.add("eigenvalue counts match", "holds" if m["counts_equal"] else "fails",
                f"g angles {m['g_eigen_angles_in_arc']}, "
                f"dirac {m['dirac_eigenvalues_in_window']}")
    return rep


def cmd_selftest(args):
    return st.run_all(seed=args.seed)


class SystemExit2(Exception):
    """Usage error surfaced with exit code 2."""


_DISPATCH = {
    "normalize": cmd_normalize,
    "verify": cmd_verify,
    "hopf": cmd_hopf,
    "detq": cmd_detq,
    "presets": cmd_presets,
    "gerbe": cmd_gerbe,
    "classical": cmd_classical,
    "selftest": cmd_selftest,
}


def run_command(argv) -> int:
    parser = build_argparser()
    args = parser.parse_args(argv)
    try:
        rep = _DISPATCH[args.command](args)
    except SystemExit2 as exc:
        print(f"qg: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"qg: {exc}", file=sys.stderr)
        return 2
    print(rep.to_text() if args.text else rep.to_json())
    return 1 if rep.failed else 0


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()

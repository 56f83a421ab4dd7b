"""Command-line runner: one subcommand per module operation, results as Reports.

Exit codes: 0 success, 1 verdict false, 2 usage or parse error, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from ..core.algebra import Algebra, Element, adjoint
from ..core.coeffs import GaussianRational
from ..core.corep import (
    CorepMatrix,
    character,
    cor24_check,
    cor24_symbolic_sum,
    corep_check,
    fundamental_corep,
    group_like_corep,
    tensor_corep,
)
from ..core.hopf import antipode, conditional_expectation, coproduct, counit, haar_state, invariant_part
from ..params import parse_q, parse_theta
from ..report import Report
from .grammar import ParseError, format_scalar, parse_expression, print_element, print_tensor

__all__ = ["build_parser", "run_command", "main", "EXIT_OK", "EXIT_VERDICT", "EXIT_USAGE", "EXIT_NUMERIC"]

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

SYMBOLIC = ("nf", "adjoint", "delta", "counit", "antipode", "haar", "condexp", "invariant")
ALGEBRA_NAMES = {"suq2": Algebra.SUQ2, "gqtheta": Algebra.GQTHETA, "torus": Algebra.TORUS, "circle": Algebra.CIRCLE}


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser, *, text_default: bool) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="text" if text_default else "json")
    p.add_argument("--out", metavar="FILE", default=None)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qglab", description="Computational lab for Pol(SU_q(2)) and its relatives.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    for name, helptext in (
        ("nf", "normal form of an expression"),
        ("adjoint", "adjoint x*"),
        ("delta", "coproduct"),
        ("counit", "counit"),
        ("antipode", "antipode"),
        ("haar", "Haar state (rational function of q)"),
        ("condexp", "conditional expectation onto span{u^l}"),
        ("invariant", "circle-invariant part (t-degree zero)"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("expression")
        p.add_argument("--algebra", type=str.lower, choices=sorted(ALGEBRA_NAMES), default=None)
        p.add_argument("--q", default=None, help="substitute an exact rational q")
        _common(p, text_default=True)

    p = sub.add_parser("corepcheck", help="exact corepresentation and unitarity check")
    p.add_argument("--corep", default="fundamental", help="factors joined by 'x': fundamental, u, u^k")
    _common(p, text_default=False)

    p = sub.add_parser("cor24", help="sum_p u*_{j,p} u_{i,p} in a character")
    p.add_argument("--z", default="1", help="image of alpha (modulus one)")
    p.add_argument("--w", default="1", help="image of u_theta (modulus one)")
    p.add_argument("--q", default="1/2")
    p.add_argument("--corep", default="fundamental")
    _common(p, text_default=False)

    p = sub.add_parser("spectrum", help="spectrum of pi(gamma* gamma) in the truncation")
    p.add_argument("--q", default="1/2")
    p.add_argument("--levels", type=int, default=12)
    p.add_argument("--modes", type=int, default=64)
    p.add_argument("--origin", action="store_true")
    p.add_argument("--tol", type=float, default=1e-12)
    _common(p, text_default=False)

    p = sub.add_parser("norm", help="operator norm of an element in the truncated representation")
    p.add_argument("expression")
    p.add_argument("--algebra", type=str.lower, choices=sorted(ALGEBRA_NAMES), default=None)
    p.add_argument("--q", default="1/2")
    p.add_argument("--theta", default=None, help="L/N with N dividing --modes (GqTheta only)")
    p.add_argument("--levels", type=int, default=12)
    p.add_argument("--modes", type=int, default=64)
    p.add_argument("--origin", action="store_true")
    _common(p, text_default=False)

    p = sub.add_parser("exp-thm31", help="norm separation: full truncation vs half-circle grid")
    p.add_argument("--q", default="0.5")
    p.add_argument("--levels", type=int, default=12)
    p.add_argument("--modes", type=int, default=64)
    p.add_argument("--grid", type=int, default=2048)
    p.add_argument("--cheb-degree", type=int, default=64)
    p.add_argument("--target", choices=("ramp", "gamma", "zero"), default="ramp")
    p.add_argument("--localizer", type=int, default=None)
    p.add_argument("--threshold", type=float, default=10.0)
    _common(p, text_default=False)

    p = sub.add_parser("exp-lemma44", help="shift decomposition of powers of alpha*")
    p.add_argument("--q", default="0.5")
    p.add_argument("--levels", type=int, default=12)
    p.add_argument("--modes", type=int, default=64)
    p.add_argument("--theta", default=None, help="clock angle L/N for u_theta (default 1/modes)")
    p.add_argument("--cutoff", type=int, default=8, help="largest index m, n, k")
    p.add_argument("--tol", type=float, default=1e-10)
    _common(p, text_default=False)

    for name, helptext in (
        ("exp-thm46", "crossed-product matrix form: assembly check and norm agreement"),
        ("exp-torus", "norm agreement for Pol(T_theta) elements across clock models"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--theta", default="golden")
        p.add_argument("--q", default="0.5")
        p.add_argument("--levels", type=int, default=10)
        p.add_argument("--cutoff", type=int, default=None, help="block cutoff M (default: levels)")
        p.add_argument("--suite-size", type=int, default=10)
        p.add_argument("--min-size", type=int, default=89, help="smallest clock size among convergents")
        p.add_argument("--tol", type=float, default=0.05)
        _common(p, text_default=False)

    p = sub.add_parser("fusion-lf", help="local finiteness of a generated fusion subring")
    p.add_argument("--ring", default="product", help="su2 | integers | cyclic:n | product")
    p.add_argument("--gens", action="append", required=True, help="label; repeat or separate with ';'")
    p.add_argument("--cap", type=int, default=10_000)
    _common(p, text_default=False)
    return ap


# ---------------------------------------------------------------------------
# helpers


def _algebra(name):
    return None if name is None else ALGEBRA_NAMES[name]


def _parse(text: str, algebra_name) -> Element:
    return parse_expression(text, _algebra(algebra_name))


def _q_float(text) -> float:
    return float(parse_q(text))


def _q_param(text):
    q = parse_q(text)
    return str(q) if q.denominator != 1 else int(q)


def _scalar(text: str):
    """Exact Gaussian rational from the grammar, or a float complex literal."""
    try:
        x = parse_expression(text)
    except ParseError:
        try:
            return complex(text.replace("i", "j"))
        except ValueError:
            raise UsageError(f"cannot read scalar {text!r}") from None
    if not x:
        return GaussianRational(0)
    if len(x.terms) != 1:
        raise UsageError(f"{text!r} is not a scalar")
    (m, c), = x.terms.items()
    if getattr(m, "degree", 1) != 0 or set(c.terms) != {(0, 0)}:
        raise UsageError(f"{text!r} is not a scalar")
    return c.terms[(0, 0)]


def _corep(text: str) -> CorepMatrix:
    factors = []
    for part in text.replace(" ", "").split("x"):
        if part == "fundamental":
            factors.append("F")
        elif part.startswith("u"):
            k = 1 if part == "u" else int(part.split("^", 1)[1])
            factors.append(group_like_corep(k))
        else:
            raise UsageError(f"unknown corepresentation factor {part!r}")
    alg = Algebra.GQTHETA if any(not isinstance(f, str) for f in factors) else Algebra.SUQ2
    mats = [fundamental_corep(alg) if isinstance(f, str) else f for f in factors]
    U = mats[0]
    for V in mats[1:]:
        U = tensor_corep(U, V)
    return U


def _symbolic_report(cmd: str, args) -> tuple:
    x = _parse(args.expression, args.algebra)
    q = parse_q(args.q) if args.q is not None else None
    params = {"expression": args.expression, "algebra": x.algebra.value, "q": None if q is None else str(q)}
    if cmd == "nf":
        text = print_element(x, q=q)
    elif cmd == "adjoint":
        text = print_element(adjoint(x), q=q)
    elif cmd == "antipode":
        text = print_element(antipode(x), q=q)
    elif cmd == "invariant":
        text = print_element(invariant_part(x), q=q)
    elif cmd == "delta":
        text = print_tensor(coproduct(x))
    elif cmd == "counit":
        c = counit(x)
        text = print_element(Element(x.algebra, {_unit_monomial(x): c}) if c.terms else x * 0, q=q)
    elif cmd == "haar":
        v = haar_state(x)
        text = str(v) if q is None else format_scalar(v.evaluate(q))
    elif cmd == "condexp":
        parts = conditional_expectation(x)
        if not parts:
            text = "0"
        else:
            rendered = []
            for l, v in parts:
                val = str(v) if q is None else format_scalar(v.evaluate(q))
                rendered.append(f"({val}) u^{l}" if l else f"({val})")
            text = " + ".join(rendered)
    else:  # pragma: no cover
        raise UsageError(cmd)
    return Report(cmd, params, {"result": text}, [], {"pass": True}), text


def _unit_monomial(x: Element):
    from ..core.algebra import one

    (m,) = one(x.algebra).terms
    return m


# ---------------------------------------------------------------------------
# numeric commands


def _cmd_corepcheck(args) -> Report:
    U = _corep(args.corep)
    res = corep_check(U)
    metrics = {
        "dim": U.dim,
        "algebra": U.algebra.value,
        "coproductDefects": len(res.coproduct_defects),
        "unitarityDefects": len(res.unitarity_defects),
    }
    items = [{"kind": "coproduct", "i": i, "j": j} for i, j in res.coproduct_defects]
    items += [{"kind": k, "i": i, "j": j} for k, i, j in res.unitarity_defects]
    return Report("corepcheck", {"corep": args.corep}, metrics, items, {"isUnitaryCorep": res.ok, "pass": res.ok})


def _cmd_character(args) -> Report:
    U = _corep(args.corep)
    z, w = _scalar(args.z), _scalar(args.w)
    q = parse_q(args.q)
    exact = not isinstance(z, complex) and not isinstance(w, complex)
    if exact:
        rep = character(z, w, q=GaussianRational(q))
    else:
        rep = character(complex(z), complex(w), q=float(q), zeta=1.0)
    res = cor24_check(rep, U)
    items = []
    for i in range(U.dim):
        for j in range(U.dim):
            M = res.table[i][j]
            val = M[0, 0] if M.shape == (1, 1) else None
            items.append(
                {
                    "i": i,
                    "j": j,
                    "value": format_scalar(val) if exact and val is not None else (complex(val) if val is not None else None),
                    "symbolic": print_element(cor24_symbolic_sum(U, i, j)),
                }
            )
    params = {"corep": args.corep, "z": args.z, "w": args.w, "q": str(q), "exact": exact}
    metrics = {"maxDefect": res.max_defect, "dim": U.dim}
    return Report("cor24", params, metrics, items, {"identity": res.ok, "pass": res.ok})


def _cmd_spectrum(args) -> Report:
    from ..replab import build_full_rep, spectrum_gamma_star_gamma

    qf = _q_float(args.q)
    rep = build_full_rep(qf, args.levels, args.modes, origin=args.origin)
    result = spectrum_gamma_star_gamma(rep)
    expected = [(qf ** (2 * k), args.modes) for k in range(args.levels, -1, -1)]
    if args.origin:
        expected = [(0.0, 1)] + expected
    expected.sort()
    ok = len(expected) == len(result.blocks) and all(
        abs(v - ev) <= args.tol and m == em for (v, m), (ev, em) in zip(result.blocks, expected)
    )
    worst = max((abs(v - ev) for (v, _), (ev, _) in zip(result.blocks, expected)), default=0.0)
    items = [{"value": v, "multiplicity": m} for v, m in result.blocks]
    params = {"q": _q_param(args.q), "levels": args.levels, "modes": args.modes, "origin": args.origin, "tol": args.tol}
    metrics = {"distinct": len(result.blocks), "dim": rep.dim, "maxDeviation": worst, "boundaryDefect": rep.boundary_defect}
    return Report("spectrum", params, metrics, items, {"matchesClosedForm": ok, "pass": ok})


def _cmd_norm(args) -> Report:
    from ..replab import build_full_rep, eval_element, operator_norm

    x = _parse(args.expression, args.algebra)
    if x.algebra not in (Algebra.SUQ2, Algebra.GQTHETA):
        raise UsageError("norm supports SUq2 and GqTheta expressions")
    q = parse_q(args.q)
    rep = build_full_rep(float(q), args.levels, args.modes, origin=args.origin, algebra=x.algebra, theta=args.theta)
    M = eval_element(rep, x, q=q)
    nrm = operator_norm(M)
    params = {
        "expression": args.expression,
        "algebra": x.algebra.value,
        "q": _q_param(args.q),
        "levels": args.levels,
        "modes": args.modes,
        "origin": args.origin,
        "theta": None if rep.theta is None else rep.theta.label,
    }
    return Report("norm", params, {"norm": nrm, "dim": rep.dim, "boundaryDefect": rep.boundary_defect}, [], {"pass": True})


def _cmd_separation(args) -> Report:
    from ..replab import norm_separation_experiment

    return norm_separation_experiment(
        _q_float(args.q),
        args.levels,
        args.modes,
        args.grid,
        args.cheb_degree,
        target=args.target,
        localizer=args.localizer,
        threshold=args.threshold,
    )


def _cmd_shift(args) -> Report:
    from ..crossedlab import cq, cq_squared_exact, shift_decomposition
    from ..replab import build_full_rep

    q = parse_q(args.q)
    theta = args.theta if args.theta is not None else Fraction(1, args.modes)
    rep = build_full_rep(float(q), args.levels, args.modes, algebra=Algebra.GQTHETA, theta=theta)
    dec = shift_decomposition(rep, args.cutoff)
    metrics = dict(dec.residuals)
    metrics["maxResidual"] = dec.max_residual
    metrics["cq20"] = cq(2, 0, float(q))
    metrics["cq20SquaredExact"] = str(cq_squared_exact(2, 0, q))
    ok = dec.max_residual <= args.tol
    params = {
        "q": _q_param(args.q),
        "levels": args.levels,
        "modes": args.modes,
        "theta": rep.theta.label,
        "cutoff": min(args.cutoff, args.levels - 1),
        "tol": args.tol,
    }
    return Report("exp-lemma44", params, metrics, dec.per_item, {"decomposition": ok, "pass": ok})


def _models(args):
    from ..crossedlab import convergent_models

    models = convergent_models(parse_theta(args.theta), 2, args.min_size)
    if len(models) < 2:
        raise UsageError("theta has fewer than two convergents of the requested size")
    return models


def _cmd_crossed(args) -> Report:
    from ..core.sampling import random_suite
    from ..crossedlab import assembly_crosscheck, norm_agreement_experiment

    qf = _q_float(args.q)
    M = args.levels if args.cutoff is None else args.cutoff
    ma, mb = _models(args)
    suite = random_suite(args.seed, args.suite_size, Algebra.GQTHETA)
    rep = norm_agreement_experiment(suite, ma, mb, qf, M, args.tol)
    worst = 0.0
    for item, Q in zip(rep.per_item, suite):
        r = assembly_crosscheck(Q, ma, args.levels, qf, M)
        item["assemblyResidual"] = r
        worst = max(worst, r)
    rep.metrics["maxAssemblyResidual"] = worst
    rep.parameters.update({"theta": args.theta, "levels": args.levels, "seed": args.seed, "suiteSize": args.suite_size})
    assembly_ok = worst <= 1e-8
    rep.verdict["assembly"] = assembly_ok
    rep.verdict["pass"] = bool(rep.verdict["pass"] and assembly_ok)
    return rep


def _cmd_torus(args) -> Report:
    from ..core.sampling import random_suite
    from ..crossedlab import torus_uniqueness_demo

    ma, mb = _models(args)
    suite = random_suite(args.seed, args.suite_size, Algebra.TORUS)
    rep = torus_uniqueness_demo(suite, ma, mb, args.tol)
    rep.parameters.update({"theta": args.theta, "seed": args.seed, "suiteSize": args.suite_size})
    return rep


def _cmd_fusion(args) -> Report:
    from ..fusion import CapExceeded, local_finiteness_check, make_fusion_ring, parse_label

    kind, _, param = args.ring.partition(":")
    ring = make_fusion_ring(kind, int(param) if param else None)
    labels = []
    for chunk in args.gens:
        for piece in chunk.split(";"):
            if piece.strip():
                labels.append(parse_label(ring, piece))
    res = local_finiteness_check(ring, labels, args.cap)
    params = {"ring": ring.kind, "parameter": ring.parameter, "generators": [list(g) if isinstance(g, tuple) else g for g in labels], "cap": args.cap}
    if isinstance(res, CapExceeded):
        metrics = {"result": "CapExceeded", "count": res.count, "waves": len(res.chain), "strictlyGrowing": res.strictly_growing}
        verdict = {"notLocallyFinite": True, "strictlyGrowing": res.strictly_growing, "pass": res.strictly_growing}
    else:
        metrics = {"result": "Finite", "count": res.size, "waves": len(res.chain), "labels": [list(a) if isinstance(a, tuple) else a for a in res.labels]}
        verdict = {"notLocallyFinite": False, "sound": res.sound, "pass": res.sound}
    items = [{"wave": i, "size": s} for i, s in enumerate(res.chain)]
    return Report("fusion-lf", params, metrics, items, verdict)


NUMERIC = {
    "corepcheck": _cmd_corepcheck,
    "cor24": _cmd_character,
    "spectrum": _cmd_spectrum,
    "norm": _cmd_norm,
    "exp-thm31": _cmd_separation,
    "exp-lemma44": _cmd_shift,
    "exp-thm46": _cmd_crossed,
    "exp-torus": _cmd_torus,
    "fusion-lf": _cmd_fusion,
}


# ---------------------------------------------------------------------------
# rendering and dispatch


def _text(report: Report) -> str:
    lines = [f"{report.command}"]
    for k in sorted(report.metrics):
        v = report.metrics[k]
        if isinstance(v, list) and len(v) > 12:
            v = "[" + ", ".join(map(str, v[:6])) + f", ... ({len(v)} entries)]"
        lines.append(f"  {k}: {v}")
    lines.append("  verdict: " + ", ".join(f"{k}={str(v).lower()}" for k, v in sorted(report.verdict.items())))
    return "\n".join(lines)


def _render(report: Report, fmt: str, text: str | None) -> str:
    if fmt == "json":
        return report.to_json() + "\n"
    if fmt == "csv":
        return report.to_csv()
    return (text if text is not None else _text(report)) + "\n"


def execute(argv) -> tuple:
    """Parse and run; returns (exit code, Report or None, rendered output)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (EXIT_USAGE if e.code else EXIT_OK), None, ""
    try:
        if args.command in SYMBOLIC:
            report, text = _symbolic_report(args.command, args)
        else:
            report, text = NUMERIC[args.command](args), None
    # LinAlgError subclasses ValueError, so it must be caught first
    except (ArithmeticError, RuntimeError, np.linalg.LinAlgError) as e:
        sys.stderr.write(f"qglab {args.command}: numeric failure: {e}\n")
        return EXIT_NUMERIC, None, ""
    except (ParseError, UsageError, ValueError, KeyError) as e:
        sys.stderr.write(f"qglab {args.command}: error: {e}\n")
        return EXIT_USAGE, None, ""
    out = _render(report, args.format, text)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return (EXIT_OK if report.passed else EXIT_VERDICT), report, out


def run_command(argv) -> int:
    return execute(argv)[0]


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

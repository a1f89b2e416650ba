"""``nilpex`` command line.

Every command prints a deterministic report (text or JSON) on stdout.  On
failure a one-line JSON error record goes to stderr and the exit status is
nonzero: 2 for bad input files or arguments, 1 for mathematical
preconditions (identity violations, non-cocycles), 3 for exhausted budgets.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from . import data
from .algebra import AlgebraFormatError, check_identities, compute_annihilator, format_algebra, \
    format_element, is_nilpotent, load_algebra
from .arith import ExpressionError, parse_scalar
from .automorphism import FamilyFormatError, automorphism_equations, groebner_of, is_automorphism, \
    load_family, sample_automorphisms, verify_parametric_family
from .cohomology import CoboundaryError, IdentityViolation, compute_b2, compute_h2, compute_z2, \
    format_form, parse_form
from .extension import CocycleError, CohomologySubspace, act_parametric, ann_of_form, \
    annihilator_symbols, central_extension, check_tm_membership, intersection_conditions
from .groebner import DEFAULT_MAX_DEGREE, BudgetExhausted
from .identities import IdentityError, load_identities
from .report import algebra_payload, check_payload, dumps, forms_of, grid, h2_payload, \
    render_check, render_matrix, render_spaces

COMMANDS = ("check", "z2", "b2", "h2", "ann", "aut-eqs", "aut-verify", "aut-sample", "act",
            "ann-theta", "tm-check", "extend", "pipeline")


class CliError(Exception):
    def __init__(self, kind: str, message: str, status: int = 2, **extra):
        self.kind = kind
        self.status = status
        self.extra = extra
        super().__init__(message)


# -- inputs ------------------------------------------------------------------

def resolve(path: str) -> Path:
    """The given path, or a bundled data file of that name."""
    p = Path(path)
    if p.exists():
        return p
    bundled = data.path(p.name)
    if bundled is not None and p.parent == Path("."):
        return bundled
    raise CliError("file_not_found", f"file not found: {path}")


def _load(loader, path, what):
    p = resolve(path)
    try:
        return loader(p)
    except (AlgebraFormatError, IdentityError, FamilyFormatError) as e:
        extra = {"file": str(path)}
        if getattr(e, "line", None) is not None:
            extra["line"] = e.line
        col = getattr(e, "column", None)
        if col is None and getattr(e, "position", None) is not None:
            col = e.position + 1
        if col is not None:
            extra["column"] = col
        raise CliError(f"{what}_format", str(e), **extra) from None


def _algebra(args):
    if not args.algebra:
        raise CliError("usage", "--algebra is required")
    return _load(load_algebra, args.algebra, "algebra")


def _identities(args, required=True):
    if not args.identities:
        if required:
            raise CliError("usage", "--identities is required")
        return None
    return _load(load_identities, args.identities, "identities")


def _family(args):
    if not args.family:
        raise CliError("usage", "--family is required")
    return _load(load_family, args.family, "family")


def _forms(args, a):
    if not args.theta:
        raise CliError("usage", "--theta is required")
    out = []
    for text in args.theta:
        try:
            out.append(parse_form(text, a.dim, a.params))
        except ValueError as e:
            raise CliError("form_format", str(e)) from None
    return out


def _assignment(text: str) -> Dict[str, Fraction]:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in item:
            raise CliError("usage", f"bad assignment {item!r}; expected name=value")
        k, v = (s.strip() for s in item.split("=", 1))
        try:
            val = parse_scalar(v)
        except ExpressionError as e:
            raise CliError("usage", f"bad value for {k}: {e}") from None
        if not val.is_rational():
            raise CliError("usage", f"value for {k} must be rational")
        out[k] = val.to_fraction()
    return out


def _h2(args, a, ids):
    try:
        return compute_h2(a, ids)
    except IdentityViolation as e:
        raise CliError("identity_violation", str(e), status=1) from None
    except CoboundaryError as e:
        raise CliError("coboundary_mismatch", str(e), status=1) from None


# -- commands ----------------------------------------------------------------

def cmd_check(args):
    a, ids = _algebra(args), _identities(args)
    payload = check_payload(a, ids, check_identities(a, ids))
    return payload, render_check(payload)


def cmd_spaces(args, which):
    a, ids = _algebra(args), _identities(args, required=which != "b2")
    if which == "b2":
        b2 = compute_b2(a)
        payload = {"b2": [grid(f) for f in forms_of(b2, a.dim)], "case_splits": []}
        text = f"algebra: {a.name} (dim {a.dim})\nB2 (dim {b2.dim}): " + \
            (", ".join(format_form(f) for f in forms_of(b2, a.dim)) or "0") + "\n"
        return payload, text
    if which == "z2":
        try:
            z2 = compute_z2(a, ids)
        except IdentityViolation as e:
            raise CliError("identity_violation", str(e), status=1) from None
        payload = {"z2": [grid(f) for f in forms_of(z2, a.dim)],
                   "case_splits": [str(p) for p in z2.case_splits]}
        text = f"algebra: {a.name} (dim {a.dim})\nZ2 (dim {z2.dim}): " + \
            (", ".join(format_form(f) for f in forms_of(z2, a.dim)) or "0") + \
            "\ncase splits: " + (", ".join(f"{p} != 0" for p in z2.case_splits) or "none") + "\n"
        return payload, text
    h = _h2(args, a, ids)
    return h2_payload(h), render_spaces(h)


def cmd_ann(args):
    a = _algebra(args)
    ann = compute_annihilator(a)
    nil, index = is_nilpotent(a)
    basis = [format_element(v) for v in ann.basis]
    payload = {"algebra": a.name, "annihilator": basis,
               "case_splits": [str(p) for p in ann.case_splits],
               "nilpotent": nil, "nilpotency_index": index}
    text = (f"algebra: {a.name} (dim {a.dim})\n"
            f"Ann (dim {ann.dim}): {{{', '.join(basis)}}}\n"
            f"nilpotent: {str(nil).lower()}" + (f" (index {index})" if nil else "") + "\n")
    return payload, text


def _groebner(args, system):
    try:
        return groebner_of(system, args.order, max_pairs=args.max_pairs,
                           max_degree=args.max_degree)
    except BudgetExhausted as e:
        raise CliError("budget_exhausted", str(e), status=3) from None


def cmd_aut_eqs(args):
    a = _algebra(args)
    system = automorphism_equations(a)
    payload = {"algebra": a.name, "unknowns": list(system.unknowns),
               "convention": "F(e_i) = sum_j l_ij e_j",
               "equations": [{"pair": [f"e{e.pair[0] + 1}", f"e{e.pair[1] + 1}"],
                              "coord": f"e{e.coord + 1}", "poly": str(e.poly)}
                             for e in system.equations]}
    lines = [f"algebra: {a.name} (dim {a.dim})",
             "convention: F(e_i) = sum_j l_ij e_j",
             f"equations ({len(system)}):"]
    lines += [f"  {e.label()}: {e.poly} = 0" for e in system.equations]
    if args.groebner:
        gb = _groebner(args, system)
        payload["groebner"] = {"order": args.order, "generators": [str(g) for g in gb]}
        lines.append(f"reduced Groebner basis ({args.order}, {len(gb)} generators):")
        lines += [f"  {g}" for g in gb]
    return payload, "\n".join(lines) + "\n"


def _family_report(a, fam):
    rep = verify_parametric_family(a, fam)
    payload = {"is_automorphism_family": rep.is_automorphism_family, "det": str(rep.det),
               "det_certified": rep.det_certified,
               "nonvanishing": [str(p) for p in fam.nonvanishing],
               "residuals": rep.describe_residuals()}
    lines = [f"automorphism family: {str(rep.is_automorphism_family).lower()}",
             f"det: {rep.det}",
             f"det divides a power of the nonvanishing conditions: {str(rep.det_certified).lower()}"]
    lines += [f"  residual {r}" for r in rep.describe_residuals()]
    return payload, lines


def cmd_aut_verify(args):
    a, fam = _algebra(args), _family(args)
    payload, lines = _family_report(a, fam)
    payload = {"algebra": a.name, **payload}
    return payload, f"algebra: {a.name} (dim {a.dim})\n" + "\n".join(lines) + "\n"


def cmd_aut_sample(args):
    a, fam = _algebra(args), _family(args)
    assignments = [_assignment(t) for t in (args.assign or [])]
    if args.random:
        rng = random.Random(args.seed)
        for _ in range(args.random):
            assignments.append({p: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for p in fam.params})
    samples = []
    for asg in assignments:
        got = sample_automorphisms(a, fam, [asg])
        samples.append((asg, got[0] if got else None))
    payload = {"algebra": a.name, "samples": [
        {"assignment": {k: str(v) for k, v in asg.items()},
         "matrix": grid(m) if m is not None else None,
         "skipped": m is None,
         "verified": is_automorphism(a, m) if m is not None else False}
        for asg, m in samples]}
    lines = [f"algebra: {a.name} (dim {a.dim})"]
    for (asg, m), item in zip(samples, payload["samples"]):
        label = ", ".join(f"{k}={v}" for k, v in item["assignment"].items()) or "(empty)"
        if m is None:
            lines.append(f"{label}: skipped (nonvanishing condition violated or singular)")
        else:
            lines.append(f"{label}: automorphism {str(item['verified']).lower()}")
            lines.append(render_matrix(m))
    return payload, "\n".join(lines) + "\n"


def _action_block(fam, h, index):
    reps = h.h2_reps if index is None else (h.h2_reps[index],)
    w = CohomologySubspace(h, tuple(reps))
    table = act_parametric(fam, w)
    return w, table


def cmd_act(args):
    a, ids, fam = _algebra(args), _identities(args), _family(args)
    h = _h2(args, a, ids)
    index = args.h2_index
    if index is not None and not 0 <= index < h.dim_h2:
        raise CliError("usage", f"--h2-index must be in [0, {h.dim_h2 - 1}]")
    fam_payload, fam_lines = _family_report(a, fam)
    w, table = _action_block(fam, h, index)
    payload = {"algebra": a.name, "family": fam_payload,
               "h2_form": grid(w.general_form()), "coefficients": list(w.coeff_symbols),
               "action": grid(table)}
    lines = [f"algebra: {a.name} (dim {a.dim})", *fam_lines,
             "matrix form of H2:", render_matrix(w.general_form()),
             "action of the family:", render_matrix(table)]
    return payload, "\n".join(lines) + "\n"


def cmd_ann_theta(args):
    a = _algebra(args)
    ann = compute_annihilator(a)
    ann_basis = [format_element(v) for v in ann.basis]
    payload = {"algebra": a.name, "annihilator": ann_basis}
    lines = [f"algebra: {a.name} (dim {a.dim})", f"Ann: {{{', '.join(ann_basis)}}}"]
    if args.theta:
        payload["forms"] = []
        for text, theta in zip(args.theta, _forms(args, a)):
            s = ann_of_form(theta)
            basis = [format_element(v) for v in s.basis]
            payload["forms"].append({"theta": text, "ann_theta": basis})
            lines.append(f"Ann({text}): {{{', '.join(basis)}}}")
    if args.identities:
        ids = _identities(args)
        h = _h2(args, a, ids)
        w = CohomologySubspace.whole(h)
        conds = intersection_conditions(a, h, w)
        syms = annihilator_symbols(ann)
        payload["theta"] = format_form(w.general_form()) if w.span else "0"
        payload["u"] = _general_element(ann, syms)
        payload["conditions"] = [str(c) for c in conds]
        lines.append(f"theta = {payload['theta']}")
        lines.append(f"u = {payload['u']}")
        lines.append("conditions for Ann(A) and Ann(theta) to meet: " +
                     (", ".join(f"{c} = 0" for c in conds) or "none"))
    return payload, "\n".join(lines) + "\n"


def _general_element(ann, syms) -> str:
    if not ann.basis:
        return "0"
    terms = []
    for s, v in zip(syms, ann.basis):
        terms.append(f"{s}*({format_element(v)})" if sum(not c.is_zero() for c in v) > 1
                     else f"{s}*{format_element(v)}")
    return " + ".join(terms)


def cmd_tm_check(args):
    a = _algebra(args)
    forms = _forms(args, a)
    member = check_tm_membership(a, CohomologySubspace(None, tuple(forms)))
    payload = {"algebra": a.name, "forms": list(args.theta), "in_T_m": member}
    text = (f"algebra: {a.name} (dim {a.dim})\n"
            f"W = <{', '.join(args.theta)}>\n"
            f"Ann(A) meets the Ann(theta_i) only in 0: {str(member).lower()}\n")
    return payload, text


def cmd_extend(args):
    a = _algebra(args)
    ids = _identities(args, required=False)
    forms = _forms(args, a)
    try:
        ext = central_extension(a, forms, ids, name=args.name)
    except CocycleError as e:
        raise CliError("not_a_cocycle", str(e), status=1) from None
    text = format_algebra(ext.algebra)
    if args.out:
        Path(args.out).write_text(text)
    payload = {"parent": a.name, "validated": ids is not None,
               "algebra": algebra_payload(ext.algebra), "text": text}
    return payload, text


def cmd_pipeline(args):
    a, ids = _algebra(args), _identities(args)
    check = check_identities(a, ids)
    if not check.holds:
        first = check.failures[0].describe(ids)
        raise CliError("identity_violation", f"identities do not hold: {first}", status=1)
    h = _h2(args, a, ids)
    system = automorphism_equations(a)
    ann = compute_annihilator(a)
    syms = annihilator_symbols(ann)
    w = CohomologySubspace.whole(h)
    conds = intersection_conditions(a, h, w)
    n = a.dim
    payload = {
        "algebra": algebra_payload(a),
        "identities_hold": True,
        "z2": [grid(f) for f in forms_of(h.z2, n)],
        "b2": [grid(f) for f in forms_of(h.b2, n)],
        "h2": [grid(f) for f in h.h2_reps],
        "dims": {"z2": h.z2.dim, "b2": h.b2.dim, "h2": h.dim_h2},
        "case_splits": [str(p) for p in h.case_splits],
        "aut_equations": [str(e.poly) for e in system.equations],
        "annihilator": [format_element(v) for v in ann.basis],
        "u": _general_element(ann, syms),
        "theta": format_form(w.general_form()) if w.span else "0",
        "intersection_conditions": [str(c) for c in conds],
    }
    lines = [render_spaces(h).rstrip("\n"),
             f"Aut equations ({len(system)}), F(e_i) = sum_j l_ij e_j:"]
    lines += [f"  {e.poly} = 0" for e in system.equations]
    if args.groebner:
        gb = _groebner(args, system)
        payload["groebner"] = [str(g) for g in gb]
        lines.append(f"reduced Groebner basis ({args.order}):")
        lines += [f"  {g}" for g in gb]
    lines.append(f"Ann (dim {ann.dim}): {{{', '.join(payload['annihilator'])}}}")
    lines.append(f"theta = {payload['theta']}")
    lines.append(f"u = {payload['u']}")
    lines.append("conditions: " + (", ".join(f"{c} = 0" for c in conds) or "none"))
    if args.family:
        fam = _family(args)
        fam_payload, fam_lines = _family_report(a, fam)
        table = act_parametric(fam, w)
        payload["family"] = fam_payload
        payload["action"] = grid(table)
        lines += fam_lines
        lines += ["matrix form of H2:", render_matrix(w.general_form()),
                  "action of the family on H2:", render_matrix(table)]
    lines.append("next: Aut-orbits on T_m and orbit representatives (by hand)")
    return payload, "\n".join(lines) + "\n"


HANDLERS = {
    "check": cmd_check,
    "z2": lambda a: cmd_spaces(a, "z2"),
    "b2": lambda a: cmd_spaces(a, "b2"),
    "h2": lambda a: cmd_spaces(a, "h2"),
    "ann": cmd_ann,
    "aut-eqs": cmd_aut_eqs,
    "aut-verify": cmd_aut_verify,
    "aut-sample": cmd_aut_sample,
    "act": cmd_act,
    "ann-theta": cmd_ann_theta,
    "tm-check": cmd_tm_check,
    "extend": cmd_extend,
    "pipeline": cmd_pipeline,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="algebra definition file (.alg)")
    common.add_argument("--identities", help="identity file (.ids)")
    common.add_argument("--family", help="parametric automorphism family (.fam)")
    common.add_argument("--theta", action="append", help="form literal, e.g. d13+d22+d31 (repeatable)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--verbose", action="store_true", help="timing on stderr")
    common.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    common.add_argument("--max-pairs", type=int, default=None,
                        help="Buchberger pair budget (default: $NILPEX_BUDGET_PAIRS or 100000)")
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)

    parser = argparse.ArgumentParser(prog="nilpex", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("aut-eqs", "pipeline"):
            p.add_argument("--groebner", action="store_true", help="also compute the reduced Groebner basis")
        if name == "aut-sample":
            p.add_argument("--assign", action="append", help="e.g. l11=2,l21=0,l31=0 (repeatable)")
            p.add_argument("--random", type=int, default=0, help="number of random rational samples")
            p.add_argument("--seed", type=int, default=0)
        if name == "act":
            p.add_argument("--h2-index", type=int, default=None)
        if name == "extend":
            p.add_argument("--out", help="write the extension here")
            p.add_argument("--name", default=None)
    return parser


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    start = time.perf_counter()
    try:
        payload, text = HANDLERS[args.command](args)
    except CliError as e:
        record = {"error": {"kind": e.kind, "message": str(e), **e.extra}}
        stderr.write(json.dumps(record) + "\n")
        return e.status
    except BudgetExhausted as e:
        stderr.write(json.dumps({"error": {"kind": "budget_exhausted", "message": str(e)}}) + "\n")
        return 3
    stdout.write(dumps(payload) if args.format == "json" else text)
    if args.verbose:
        stderr.write(f"{args.command}: {time.perf_counter() - start:.3f}s\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

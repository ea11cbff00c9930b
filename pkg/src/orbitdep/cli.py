"""Command-line surface.

Every library operation is reachable through a subcommand; outputs are
human text by default, machine-readable with --json (validating against
schemas/cli_output.schema.json) or --csv where tabular.  Exit codes:
0 computed, 1 domain error, 2 budget or effort exhausted, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import dynamics, multdep, poly, structure
from .errors import BudgetError, DomainError
from .exactmath import FactorEffort, as_rational
from .poly import Domain, Polynomial, parse_polynomial

USAGE_EXIT = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _domain(args) -> Domain:
    return Domain.QI if getattr(args, "domain", "q") == "qi" else Domain.Q


def _poly(text: str, args) -> Polynomial:
    return parse_polynomial(text, _domain(args))


def _config() -> dict:
    path = os.environ.get("ORBITDEP_CONFIG")
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise DomainError(f"config file {path} must hold a JSON object")
    return data


def _setting(args, name: str, default):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return _config().get(name, default)


def _effort(args) -> FactorEffort:
    base = FactorEffort()
    return FactorEffort(
        trial_bound=int(_setting(args, "trial_bound", base.trial_bound)),
        rho_iterations=int(_setting(args, "rho_iterations", base.rho_iterations)),
        seed=int(_setting(args, "seed", base.seed)),
    )


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (payload, csv_text, exit_code)


def _cmd_orbit(args):
    f = _poly(args.f, args)
    cap = int(_setting(args, "bit_cap", dynamics.DEFAULT_BIT_CAP))
    table = dynamics.orbit(f, as_rational(args.x), args.N, bit_cap=cap)
    payload = {
        "values": [str(v) for v in table.values],
        "preperiodic": table.preperiodic,
        "repeat": list(table.repeat) if table.repeat else None,
    }
    csv_lines = ["m,value"] + [f"{m},{v}" for m, v in enumerate(table.values, start=1)]
    human = "\n".join(f"f^{m}({args.x}) = {v}" for m, v in enumerate(table.values, start=1))
    if table.preperiodic:
        human += f"\npreperiodic: repeat at m={table.repeat[0]} equals m={table.repeat[1]}"
    return payload, "\n".join(csv_lines) + "\n", human, 0


def _cmd_multdep(args):
    verdict = multdep.test_dependence([as_rational(v) for v in args.values])
    payload = {"status": verdict.status.value}
    if verdict.relation is not None:
        payload["k"] = list(verdict.relation.k)
    if verdict.rank is not None:
        payload["rank"] = verdict.rank
    human = f"status: {verdict.status.value}"
    if verdict.relation:
        human += f"\nk = {list(verdict.relation.k)}"
    if verdict.rank is not None:
        human += f"\nrank = {verdict.rank}"
    return payload, None, human, 0


def _cmd_rank(args):
    r = multdep.mult_rank([as_rational(v) for v in args.values])
    return {"rank": r}, None, f"rank = {r}", 0


def _cmd_leveque(args):
    f = _poly(args.f, args)
    profile = structure.leveque_profile(f, args.m)
    ok = profile.satisfies()
    payload = {
        "m": args.m,
        "profile": [list(entry) for entry in profile.entries],
        "satisfies": ok,
    }
    human = f"profile (m_i, count): {list(profile.entries)}\nsatisfies condition: {ok}"
    return payload, None, human, 0


def _case_payload(case) -> dict:
    payload = {"case": case.kind.value}
    if case.form is not None:
        payload["s"] = case.form.s
        payload["p"] = case.form.p.to_string()
        payload["content"] = str(case.form.content)
        payload["content_is_power"] = case.form.content_is_power
    if case.square is not None:
        payload["square"] = case.square.to_string()
    if case.j is not None:
        payload["j"] = case.j
    return payload


def _cmd_classify(args):
    f = _poly(args.poly, args)
    case = structure.classify_leveque_case(f, args.m)
    payload = _case_payload(case)
    human = "\n".join(f"{k}: {v}" for k, v in payload.items())
    return payload, None, human, 0


def _cmd_exceptional(args):
    f = _poly(args.f, args)
    ef = sorted(structure.exceptional_exponents(f))
    payload = {"e_f": ef}
    human = f"E(f) = {ef}"
    if args.g:
        g = _poly(args.g, args)
        eg = sorted(structure.exceptional_exponents(g))
        pairs = sorted(structure.exceptional_pairs(f, g))
        payload["e_g"] = eg
        payload["pairs"] = [list(p) for p in pairs]
        human += f"\nE(g) = {eg}\nE(f,g) = {pairs}"
    return payload, None, human, 0


def _cmd_hat(args):
    f = _poly(args.poly, args)
    form = structure.exceptional_form(f, args.ell)
    if form is None:
        raise DomainError(
            f"polynomial is not of the shape X^s * p(X)^{args.ell}, no semiconjugate exists"
        )
    f_hat = structure.build_hat(form)
    payload = {
        "s": form.s,
        "p": form.p.to_string(),
        "content": str(form.content),
        "f_hat": f_hat.to_string(),
    }
    human = f"s = {form.s}\np = {form.p}\ncontent = {form.content}\nf_hat = {f_hat}"
    return payload, None, human, 0


def _cmd_verify_semiconj(args):
    f = _poly(args.f, args)
    f_hat = _poly(args.fhat, args)
    holds = structure.verify_semiconjugacy(f, f_hat, args.ell, args.N)
    return {"holds": holds}, None, f"identity holds: {holds}", 0


def _cmd_common_iterate(args):
    f = _poly(args.f, args)
    g = _poly(args.g, args)
    maxdeg = int(_setting(args, "maxdeg", 10**6))
    found = structure.common_iterate_search(f, g, maxdeg)
    if found is None:
        return {"found": False}, None, f"no common iterate within degree {maxdeg}", 0
    payload = {"found": True, "n": found[0], "m": found[1]}
    return payload, None, f"f^{found[0]} = g^{found[1]}", 0


_KINDS = {k.value: k for k in structure.StandardPairKind}


def _cmd_standard_pair(args):
    kind = _KINDS.get(args.kind)
    if kind is None:
        raise DomainError(f"unknown standard pair kind {args.kind!r}")
    p = _poly(args.p, args) if args.p else None
    pair = structure.make_standard_pair(
        kind,
        m=args.m,
        n=args.n,
        r=args.r,
        a=as_rational(args.a) if args.a is not None else None,
        b=as_rational(args.b) if args.b is not None else None,
        p=p,
        switched=args.switched,
        domain=_domain(args),
    )
    payload = {
        "kind": pair.kind.value,
        "f1": pair.f1.to_string(),
        "g1": pair.g1.to_string(),
    }
    return payload, None, f"f1 = {pair.f1}\ng1 = {pair.g1}", 0


def _cmd_scan_solutions(args):
    f = _poly(args.f, args)
    g = _poly(args.g, args)
    sols = structure.scan_separated_solutions(f, g, args.H)
    payload = {"solutions": [list(s) for s in sols]}
    csv_text = "x,y\n" + "".join(f"{x},{y}\n" for x, y in sols)
    human = "\n".join(f"({x}, {y})" for x, y in sols) or "no solutions in the box"
    return payload, csv_text, human, 0


def _cmd_rds_check(args):
    f = _poly(args.f, args)
    cap = int(_setting(args, "bit_cap", dynamics.DEFAULT_BIT_CAP))
    table = dynamics.orbit(f, as_rational(args.x), args.terms, bit_cap=cap)
    if not table.is_integral:
        raise DomainError("divisibility checks need an integer orbit")
    div = dynamics.check_divisibility_sequence(table.values)
    bound = int(_setting(args, "prime_bound", 10**5))
    rigid = dynamics.check_rigid(table.values, bound)
    payload = {
        "divisibility": div.ok,
        "divisibility_violation": list(div.violation) if div.violation else None,
        "rigid": rigid.ok,
        "exponents": {str(p): e for p, e in rigid.exponents.items()},
        "rigid_violation": list(map(str, rigid.violation)) if rigid.violation else None,
    }
    human = (
        f"divisibility sequence: {div.ok}"
        + (f" (violation at {div.violation})" if div.violation else "")
        + f"\nrigid: {rigid.ok}"
        + (f" (violation {rigid.violation})" if rigid.violation else "")
        + f"\nexponents: {rigid.exponents}"
    )
    return payload, None, human, 0


def _cmd_ppd(args):
    f = _poly(args.f, args)
    upto = args.upto if args.upto is not None else args.m
    if upto is None:
        raise DomainError("ppd needs --m or --upto")
    cap = int(_setting(args, "bit_cap", dynamics.DEFAULT_BIT_CAP))
    table = dynamics.orbit(f, as_rational(args.x), upto, bit_cap=cap)
    targets = range(1, upto + 1) if args.upto is not None else [args.m]
    parts = [(m, dynamics.primitive_part(table, m)) for m in targets]
    payload = {"parts": [[m, str(part)] for m, part in parts]}
    csv_text = "m,primitive_part\n" + "".join(f"{m},{part}\n" for m, part in parts)
    human = "\n".join(f"m={m}: {part}" for m, part in parts)
    return payload, csv_text, human, 0


def _cmd_sqfree(args):
    text = args.target.strip()
    try:
        value = int(text)
        is_int = True
    except ValueError:
        is_int = False
    if is_int:
        result = dynamics.largest_squarefree_factor(value, _effort(args))
        if isinstance(result, dynamics.PartialSquarefree):
            payload = {
                "partial": True,
                "known": str(result.known),
                "unfactored": str(result.unfactored),
            }
            human = (
                f"effort exhausted: squarefree part {result.known} of the factored "
                f"portion, unfactored cofactor {result.unfactored}"
            )
            return payload, None, human, 2
        return (
            {"partial": False, "squarefree": str(result)},
            None,
            f"largest squarefree factor: {result}",
            0,
        )
    f = _poly(text, args)
    decomp = poly.squarefree_decompose(f)
    payload = {
        "content": str(decomp.content),
        "parts": [[g.to_string(), e] for g, e in decomp.parts],
    }
    human = f"content: {decomp.content}\n" + "\n".join(
        f"({g})^{e}" for g, e in decomp.parts
    )
    return payload, None, human, 0


def _cmd_count(args):
    polys = [_poly(text, args) for text in args.f]
    points = [as_rational(x) for x in args.x]
    if args.n is not None:
        if len(polys) == 1:
            polys = polys * args.n
        if len(points) == 1:
            points = points * args.n
    report = dynamics.count_multdep(
        polys,
        points,
        args.N,
        budget=int(_setting(args, "budget", dynamics.DEFAULT_COUNT_BUDGET)),
        rank_filter=args.rank_filter,
        threads=args.threads,
        bit_cap=int(_setting(args, "bit_cap", dynamics.DEFAULT_BIT_CAP)),
    )
    payload = report.summary()
    payload["certificates"] = [
        {"m": list(indices), "k": list(relation.k)}
        for indices, relation in report.certificates
    ]
    human = (
        f"count = {report.count} over [1,{report.N}]^{report.n}\n"
        f"count/N^(n-1) = {report.ratio_power:.6g}\n"
        f"count*log(N)/N^n = {report.ratio_log:.6g}"
    )
    return payload, report.to_csv(), human, 0


def _cmd_abc_check(args):
    if args.random:
        rng = random.Random(int(_setting(args, "seed", 20090)))
        max_deg = args.max_deg
        trials = 0
        failures = []
        while trials < args.random:
            a = _random_poly(rng, max_deg)
            b = _random_poly(rng, max_deg)
            if a.is_zero or b.is_zero or (a + b).is_zero:
                continue
            if a.degree == 0 and b.degree == 0:
                continue
            if poly.poly_gcd(a, b).degree != 0:
                continue
            trials += 1
            if not _abc_holds(a, b):
                failures.append((a.to_string(), b.to_string()))
        payload = {"trials": trials, "holds_all": not failures, "failures": failures}
        human = f"{trials} random coprime pairs checked; all hold: {not failures}"
        return payload, None, human, 0
    if not args.A or not args.B:
        raise DomainError("abc-check needs --A and --B, or --random COUNT")
    a = _poly(args.A, args)
    b = _poly(args.B, args)
    if (a + b).is_zero:
        raise DomainError("A + B must be nonzero")
    if poly.poly_gcd(a, b).degree != 0:
        raise DomainError("A and B must be coprime")
    c = -(a + b)
    rad = poly.radical(a * b * c)
    max_degree = max(a.degree, b.degree, c.degree)
    holds = rad.degree >= max_degree + 1
    payload = {
        "deg_a": a.degree,
        "deg_b": b.degree,
        "deg_c": c.degree,
        "rad_degree": rad.degree,
        "max_degree": max_degree,
        "holds": holds,
    }
    human = (
        f"deg A = {a.degree}, deg B = {b.degree}, deg C = {c.degree}\n"
        f"deg rad(ABC) = {rad.degree} >= {max_degree + 1}: {holds}"
    )
    return payload, None, human, 0


def _random_poly(rng, max_deg):
    deg = rng.randint(0, max_deg)
    coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(deg + 1)]
    return Polynomial(coeffs)


def _abc_holds(a, b) -> bool:
    c = -(a + b)
    if a.degree <= 0 and b.degree <= 0 and c.degree <= 0:
        return True
    rad = poly.radical(a * b * c)
    return rad.degree >= max(a.degree, b.degree, c.degree) + 1


# ---------------------------------------------------------------------------
# Parser assembly


def _add_output_flags(sub):
    sub.add_argument("--json", action="store_true", help="emit a JSON object")
    sub.add_argument("--csv", action="store_true", help="emit CSV where supported")


def _add_domain_flag(sub):
    sub.add_argument("--domain", choices=("q", "qi"), default="q", help="coefficient domain")


def build_parser() -> _Parser:
    parser = _Parser(prog="orbitdep", description=__doc__)
    subs = parser.add_subparsers(dest="command")

    sub = subs.add_parser("orbit", help="exact orbit values f^m(x)")
    sub.add_argument("--f", required=True)
    sub.add_argument("--x", required=True)
    sub.add_argument("--N", type=int, required=True)
    sub.add_argument("--bit-cap", dest="bit_cap", type=int)
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_orbit)

    sub = subs.add_parser("multdep", help="multiplicative dependence of rationals")
    sub.add_argument("values", nargs="+")
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_multdep)

    sub = subs.add_parser("rank", help="multiplicative rank of nonzero rationals")
    sub.add_argument("values", nargs="+")
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_rank)

    sub = subs.add_parser("leveque", help="reduced multiplicity profile and condition")
    sub.add_argument("--f", required=True)
    sub.add_argument("--m", type=int, required=True)
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_leveque)

    sub = subs.add_parser("classify", help="exceptional-form / iterate classification")
    sub.add_argument("poly")
    sub.add_argument("--m", type=int, required=True)
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_classify)

    sub = subs.add_parser("exceptional", help="exceptional exponent sets E(f), E(f,g)")
    sub.add_argument("--f", required=True)
    sub.add_argument("--g")
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_exceptional)

    sub = subs.add_parser("hat", help="build the semiconjugate X^s ftilde(X^l)")
    sub.add_argument("poly")
    sub.add_argument("--ell", type=int, required=True)
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_hat)

    sub = subs.add_parser("verify-semiconj", help="check f^N(X^l) = fhat^N(X)^l")
    sub.add_argument("--f", required=True)
    sub.add_argument("--fhat", required=True)
    sub.add_argument("--ell", type=int, required=True)
    sub.add_argument("--N", type=int, required=True)
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_verify_semiconj)

    sub = subs.add_parser("common-iterate", help="search for f^n = g^m by degree")
    sub.add_argument("--f", required=True)
    sub.add_argument("--g", required=True)
    sub.add_argument("--maxdeg", type=int)
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_common_iterate)

    sub = subs.add_parser("standard-pair", help="construct a standard pair")
    sub.add_argument("kind", choices=sorted(_KINDS))
    sub.add_argument("--m", type=int)
    sub.add_argument("--n", type=int)
    sub.add_argument("--r", type=int)
    sub.add_argument("--a")
    sub.add_argument("--b")
    sub.add_argument("--p")
    sub.add_argument("--switched", action="store_true")
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_standard_pair)

    sub = subs.add_parser("scan-solutions", help="integer solutions of f(x) = g(y) in a box")
    sub.add_argument("--f", required=True)
    sub.add_argument("--g", required=True)
    sub.add_argument("--H", type=int, required=True)
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_scan_solutions)

    sub = subs.add_parser("rds-check", help="divisibility and rigidity of an orbit")
    sub.add_argument("--f", required=True)
    sub.add_argument("--x", required=True)
    sub.add_argument("--terms", type=int, required=True)
    sub.add_argument("--prime-bound", dest="prime_bound", type=int)
    sub.add_argument("--bit-cap", dest="bit_cap", type=int)
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_rds_check)

    sub = subs.add_parser("ppd", help="primitive parts by gcd stripping")
    sub.add_argument("--f", required=True)
    sub.add_argument("--x", required=True)
    sub.add_argument("--m", type=int)
    sub.add_argument("--upto", type=int)
    sub.add_argument("--bit-cap", dest="bit_cap", type=int)
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_ppd)

    sub = subs.add_parser("sqfree", help="largest squarefree factor, or a polynomial decomposition")
    sub.add_argument("target")
    sub.add_argument("--trial-bound", dest="trial_bound", type=int)
    sub.add_argument("--rho-iterations", dest="rho_iterations", type=int)
    sub.add_argument("--seed", type=int)
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_sqfree)

    sub = subs.add_parser("count", help="count multiplicatively dependent index tuples")
    sub.add_argument("--f", action="append", required=True)
    sub.add_argument("--x", action="append", required=True)
    sub.add_argument("--n", type=int, help="replicate a single --f/--x n times")
    sub.add_argument("--N", type=int, required=True)
    sub.add_argument("--budget", type=int)
    sub.add_argument("--threads", type=int, default=1)
    sub.add_argument("--rank-filter", dest="rank_filter", action="store_true")
    sub.add_argument("--bit-cap", dest="bit_cap", type=int)
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_count)

    sub = subs.add_parser("abc-check", help="polynomial ABC inequality check")
    sub.add_argument("--A")
    sub.add_argument("--B")
    sub.add_argument("--random", type=int, help="check this many random coprime pairs")
    sub.add_argument("--max-deg", dest="max_deg", type=int, default=8)
    sub.add_argument("--seed", type=int)
    _add_domain_flag(sub)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_abc_check)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return USAGE_EXIT
    except SystemExit as exc:  # --help and friends
        return 0 if exc.code in (0, None) else USAGE_EXIT
    if getattr(args, "command", None) is None:
        parser.print_usage(sys.stderr)
        return USAGE_EXIT
    try:
        payload, csv_text, human, code = args.handler(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        if exc.info:
            print(f"details: {exc.info}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(payload))
    elif args.csv:
        if csv_text is None:
            print("error: this subcommand has no CSV form", file=sys.stderr)
            return USAGE_EXIT
        sys.stdout.write(csv_text)
    else:
        print(human)
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import git, verify
from .algebra import ProfileError
from .expr import NonlinearBuilder, ParseError, SchubertBuilder, parse
from .nonlinear import (
    NonlinearElement,
    NonlinearRing,
    lambda_inverse,
    lambda_map,
    scaled_relations,
)
from .projbundle import XiPolynomial, bilt_expected, pushforward
from .schubert import GrassmannRing, SchubertElement, poincare_dims


class UsageError(Exception):
    pass


def _seed_default() -> int:
    env = os.environ.get("CHOW_SEED")
    if env is None:
        return git.DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"CHOW_SEED must be an integer, got {env!r}")


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _read_json_arg(text: str):
    """JSON literal, a path to a JSON file, or None for an expression."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return json.loads(stripped)
    if stripped.endswith(".json") and Path(stripped).is_file():
        return json.loads(Path(stripped).read_text())
    return None


def _check_krd(args, need_d: bool = True) -> None:
    if not 1 <= args.k <= args.r:
        raise UsageError(f"need 1 <= k <= r, got k={args.k}, r={args.r}")
    if need_d and args.d < 1:
        raise UsageError(f"need d >= 1, got d={args.d}")


def load_nonlinear(text: str, ring: NonlinearRing) -> NonlinearElement:
    data = _read_json_arg(text)
    if data is not None:
        return NonlinearElement.from_json(data, ring)
    return parse(text, NonlinearBuilder(ring))


def load_schubert(text: str, ring: GrassmannRing) -> SchubertElement:
    data = _read_json_arg(text)
    if data is not None:
        return SchubertElement.from_json(data, ring)
    return parse(text, SchubertBuilder(ring))


def _relations_payload(k: int, r: int, d: int) -> list[dict]:
    ngens = r - k
    names = [f"s{j}" for j in range(1, ngens + 1)]
    return [{"text": rel.format(names), "terms": rel.to_json()} for rel in scaled_relations(k, r, d)]


# -- subcommands -------------------------------------------------------------------


def cmd_ring(args) -> int:
    _check_krd(args)
    grass = GrassmannRing(args.k, args.r)
    gens = [{"name": f"s{j}", "degree": j} for j in range(1, args.r - args.k + 1)]
    rels = _relations_payload(args.k, args.r, args.d)
    dims = poincare_dims(grass)
    payload = {"k": args.k, "r": args.r, "d": args.d, "generators": gens, "relations": rels, "poincare_dims": dims}
    gen_text = ", ".join(f"{g['name']} (deg {g['degree']})" for g in gens) or "none (point)"
    rel_text = "; ".join(rel["text"] for rel in rels) or "none"
    lines = [
        f"Ch({args.k},{args.r},{args.d})",
        f"  generators     : {gen_text}",
        f"  relations      : {rel_text}",
        f"  poincare dims  : {dims}",
        f"  total dimension: {sum(dims)}",
    ]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_relations(args) -> int:
    _check_krd(args)
    rels = _relations_payload(args.k, args.r, args.d)
    _emit(args, {"k": args.k, "r": args.r, "d": args.d, "relations": rels}, "\n".join(r["text"] for r in rels) or "none")
    return 0


def cmd_multiply(args) -> int:
    _check_krd(args)
    if args.d == 1:
        grass = GrassmannRing(args.k, args.r)
        a, b = load_schubert(args.a, grass), load_schubert(args.b, grass)
    else:
        ring = NonlinearRing(args.k, args.r, args.d)
        a, b = load_nonlinear(args.a, ring), load_nonlinear(args.b, ring)
    result = a * b
    _emit(args, result.to_json(), result.format())
    return 0


def cmd_lambda(args) -> int:
    _check_krd(args)
    ring = NonlinearRing(args.k, args.r, args.d)
    y = lambda_map(load_nonlinear(args.element, ring))
    _emit(args, y.to_json(), y.format())
    return 0


def cmd_lambda_inv(args) -> int:
    _check_krd(args)
    ring = NonlinearRing(args.k, args.r, args.d)
    x = lambda_inverse(load_schubert(args.element, ring.grass), ring)
    _emit(args, x.to_json(), x.format())
    return 0


def cmd_pushforward(args) -> int:
    if not 0 <= args.k <= args.n:
        raise UsageError(f"need 0 <= k <= n, got k={args.k}, n={args.n}")
    ring = GrassmannRing(args.k, args.n)
    if args.power is not None:
        if args.power < 0 or args.scale < 1:
            raise UsageError("need --power >= 0 and --scale >= 1")
        result = pushforward(XiPolynomial.xi_power(ring, args.power, args.scale ** args.power))
        _emit(args, result.to_json(), result.format())
        return 0
    if args.r is None:
        raise UsageError("give either --power or --r (with --scale as d and --alpha)")
    if args.r < args.k or args.alpha < 0 or args.scale < 1:
        raise UsageError("need r >= k, alpha >= 0, scale >= 1")
    lhs = pushforward(XiPolynomial.xi_power(ring, args.r + 1 + args.alpha, args.scale ** (args.r + 1 + args.alpha)))
    rhs = bilt_expected(ring, args.r, args.scale, args.alpha)
    payload = {"pushforward": lhs.to_json(), "scaled_p_class": rhs.to_json(), "agree": lhs == rhs}
    _emit(args, payload, f"pi_*(c1(L)^{args.r + 1 + args.alpha}) = {lhs.format()}\nscaled p-class      = {rhs.format()}\nagree: {lhs == rhs}")
    return 0 if lhs == rhs else 1


_BOUND_FIELDS = ("k", "r", "n", "d", "alpha", "order", "samples", "basis_changes", "tuples", "random_elements")


def cmd_verify(args) -> int:
    if args.suite not in verify.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES)}")
    bounds = verify.Bounds(seed=args.seed if args.seed is not None else _seed_default())
    for name in _BOUND_FIELDS:
        value = getattr(args, name)
        if value is not None:
            if value < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be non-negative")
            setattr(bounds, name, value)
    if args.q:
        bounds.q = tuple(args.q)
    if args.suite == "git" and any(q <= 2 for q in bounds.q):
        raise UsageError("git suite needs q > k+1 = 2")
    if bounds.r > 8 or bounds.n > 9 or bounds.k > 4 or bounds.order > 30 or bounds.d > 6:
        raise UsageError("bounds beyond desk scale (r<=8, n<=9, k<=4, order<=30, d<=6)")
    cases = verify.run_suite(args.suite, bounds)
    failed = [c for c in cases if not c.passed]
    if args.format == "json":
        print(
            json.dumps(
                {
                    "suite": args.suite,
                    "seed": bounds.seed,
                    "passed": not failed,
                    "cases": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in cases],
                },
                indent=2,
            )
        )
    else:
        for c in cases:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  [{c.detail}]" if c.detail else ""))
        print(f"{args.suite}: {len(cases) - len(failed)}/{len(cases)} passed (seed {bounds.seed})")
    return 1 if failed else 0


def cmd_stability(args) -> int:
    try:
        data = json.loads(Path(args.input).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}")
    m = git.MapTuple.from_json(data)
    seed = args.seed if args.seed is not None else _seed_default()
    config = git.ProbeConfig(samples=args.samples, basis_changes=args.basis_changes, seed=seed)
    try:
        report = git.torus_stable(m, args.q, config)
    except git.PreconditionError as exc:
        _emit(args, {"verdict": "precondition violation", "reason": str(exc), "seed": seed}, f"precondition violation: {exc}")
        return 2
    lines = [f"verdict: {report.verdict}", f"probes : {report.probes}", f"seed   : {report.seed}"]
    lines += [f"counterexample w={f['w']} basis={f['basis']}" for f in report.failures]
    _emit(args, report.to_json(), "\n".join(lines))
    return 0 if report.passed else 1


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    krd = argparse.ArgumentParser(add_help=False)
    krd.add_argument("--k", type=int, required=True)
    krd.add_argument("--r", type=int, required=True)
    krd.add_argument("--d", type=int, default=1)

    parser = argparse.ArgumentParser(prog="chowring", description="Chow rings of linear and nonlinear Grassmannians.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ring", parents=[common, krd], help="generators, relations and dimensions of Ch(k,r,d)")
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("relations", parents=[common, krd], help="scaled relations of Ch(k,r,d)")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("multiply", parents=[common, krd], help="product of two elements")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("lambda", parents=[common, krd], help="image of an element of Ch(k,r,d) in Ch(k,r,1)")
    p.add_argument("element")
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("lambda-inv", parents=[common, krd], help="preimage of a Schubert-class combination")
    p.add_argument("element")
    p.set_defaults(func=cmd_lambda_inv)

    p = sub.add_parser("pushforward", parents=[common], help="push-forward from P(S) over G(P^k,P^n)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--power", type=int, help="exponent l in pi_*((scale*xi)^l)")
    p.add_argument("--scale", type=int, default=1, help="multiple of xi (the degree d of L = O(d))")
    p.add_argument("--r", type=int, help="with --alpha: compare pi_*(c1(L)^(r+1+alpha)) with the scaled p-class")
    p.add_argument("--alpha", type=int, default=0)
    p.set_defaults(func=cmd_pushforward)

    p = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    p.add_argument("suite", help=", ".join(verify.SUITES))
    for name in _BOUND_FIELDS:
        p.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int)
    p.add_argument("--q", type=int, action="append", help="GIT exponent(s); repeatable")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stability", parents=[common], help="probe GIT stability of a map tuple (JSON file)")
    p.add_argument("--input", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--basis-changes", type=int, default=10)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_stability)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, ProfileError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"chowring {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

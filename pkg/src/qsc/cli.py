"""Command-line front end.

Subcommands expose the ring operations (product, euler, power, postnikov,
invariant), the bound certificates (bound-cpn, bound-grass, stable-norm,
aspherical, spectral) and the symplectic path numerics (sp-tau, sp-survey).
Default output is a small aligned table or a single value; --json emits the
documented JSON schemas.  Exit codes: 0 success, 2 parse error, 3 domain
error, 4 assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

import numpy as np

from . import cl_bounds, qh_ring, sp_quasimorphism
from .errors import DomainError
from .qh_ring import QHClass, RingParams


class CliParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliParseError(message)


def _parse_ring(args) -> RingParams:
    area = Fraction(args.area)
    if getattr(args, "cpn", None) is not None:
        return RingParams.cpn(int(args.cpn), area)
    if getattr(args, "ring", None) is None:
        raise CliParseError("one of --ring or --cpn is required")
    pieces = args.ring.split(",")
    if len(pieces) != 2:
        raise CliParseError(f"--ring expects 'r,n', got {args.ring!r}")
    return RingParams(int(pieces[0]), int(pieces[1]), area)


def _add_ring_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ring", help="ring as 'r,n', e.g. 2,4")
    parser.add_argument("--cpn", help="projective space shorthand: --cpn m means ring 1,m+1")
    parser.add_argument("--area", default="1", help="area of the line class (rational)")


def _add_json_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="emit JSON output")


def _profile(args) -> cl_bounds.HamiltonianProfile:
    return cl_bounds.HamiltonianProfile(Fraction(args.sup), Fraction(args.w))


def _emit_class(value: QHClass, as_json: bool) -> None:
    if as_json:
        print(json.dumps(value.to_json_dict()))
    else:
        print(value.to_text())


def _emit_certificate(cert: cl_bounds.BoundCertificate, as_json: bool) -> None:
    if as_json:
        print(json.dumps(cert.to_json_dict()))
    elif cert.certified:
        print(f"certified      cl > {cert.g}")
        print(f"threshold      {cert.threshold}")
        print(f"theorem        {cert.theorem}")
    else:
        print("certified      none")
        print(f"threshold      {cert.threshold}")
        print(f"theorem        {cert.theorem}")


def _parse_generator_spec(spec: str) -> tuple[str, dict]:
    name, _, rest = spec.partition(":")
    options = {}
    if rest:
        for piece in rest.split(","):
            key, sep, value = piece.partition("=")
            if not sep:
                raise CliParseError(f"bad generator option {piece!r} in {spec!r}")
            options[key.strip()] = value.strip()
    return name.strip(), options


def _build_path(spec: str, dim: int, num_samples: int) -> sp_quasimorphism.SymplecticPath:
    name, opts = _parse_generator_spec(spec)
    if name == "identity":
        return sp_quasimorphism.SymplecticPath.identity(dim, num_samples)
    if name == "rotation":
        if dim != 1:
            raise CliParseError("rotation generator is only defined for --dim 1")
        return sp_quasimorphism.SymplecticPath.rotation(
            float(opts.get("theta", "1.0")), num_samples
        )
    if name == "shear":
        if dim != 1:
            raise CliParseError("shear generator is only defined for --dim 1")
        return sp_quasimorphism.SymplecticPath.shear(
            float(opts.get("c", "1.0")), num_samples
        )
    if name == "random":
        if "seed" not in opts:
            raise CliParseError("random generator requires an explicit seed")
        rng = np.random.default_rng(int(opts["seed"]))
        return sp_quasimorphism.SymplecticPath.random(dim, rng, num_samples)
    raise CliParseError(f"unknown generator {name!r}")


def _build_pairs(
    spec: str, dim: int, num_samples: int
) -> list[tuple[sp_quasimorphism.SymplecticPath, sp_quasimorphism.SymplecticPath]]:
    name, opts = _parse_generator_spec(spec)
    count = int(opts.get("count", "20"))
    if count < 1:
        raise CliParseError("count must be >= 1")
    make = sp_quasimorphism.SymplecticPath
    if name == "random":
        if "seed" not in opts:
            raise CliParseError("random surveys require an explicit seed")
        rng = np.random.default_rng(int(opts["seed"]))
        return [
            (make.random(dim, rng, num_samples), make.random(dim, rng, num_samples))
            for _ in range(count)
        ]
    if dim != 1:
        raise CliParseError(f"{name} surveys are only defined for --dim 1")
    if name == "rotation":
        theta = float(opts.get("theta", "1.0"))
        return [
            (
                make.rotation(theta * (i + 1) / count, num_samples),
                make.rotation(theta * (count - i) / count, num_samples),
            )
            for i in range(count)
        ]
    if name == "shear":
        c = float(opts.get("c", "1.0"))
        return [
            (
                make.shear(c * (i + 1) / count, num_samples),
                make.shear(c * (count - i) / count, num_samples),
            )
            for i in range(count)
        ]
    raise CliParseError(f"unknown generator {name!r}")


def _load_path_file(path: str) -> sp_quasimorphism.SymplecticPath:
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    return sp_quasimorphism.SymplecticPath(np.asarray(data, dtype=float))


def build_parser() -> _Parser:
    parser = _Parser(prog="qsc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("product", help="quantum product of two classes")
    _add_ring_flags(p)
    p.add_argument("--a", required=True, help='class expression, e.g. "s[1]"')
    p.add_argument("--b", required=True, help='class expression, e.g. "s[2,1]"')
    _add_json_flag(p)

    p = sub.add_parser("euler", help="Euler class of the ring")
    _add_ring_flags(p)
    _add_json_flag(p)

    p = sub.add_parser("power", help="quantum power of a class")
    _add_ring_flags(p)
    p.add_argument("--a", required=True, help="class expression")
    p.add_argument("--g", required=True, type=int, help="exponent")
    _add_json_flag(p)

    p = sub.add_parser("postnikov", help="check closed forms for point-class powers")
    _add_ring_flags(p)
    p.add_argument("--g", required=True, type=int)
    _add_json_flag(p)

    p = sub.add_parser("invariant", help="splitting invariant I_g, or its limit")
    _add_ring_flags(p)
    p.add_argument("--g", type=int, help="power; omit with --limit")
    p.add_argument("--limit", action="store_true", help="emit the g->inf limit of I_g/g")
    _add_json_flag(p)

    p = sub.add_parser("bound-cpn", help="largest certified commutator-length bound on CP^n")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--area", default="1")
    p.add_argument("--sup", default="0", help="integral of sup F (rational)")
    p.add_argument("--w", required=True, help="bump weight (rational)")
    _add_json_flag(p)

    p = sub.add_parser("bound-grass", help="commutator-length certificate on Gr(r,n)")
    _add_ring_flags(p)
    p.add_argument("--sup", default="0")
    p.add_argument("--w", required=True)
    p.add_argument("--g", required=True, type=int)
    _add_json_flag(p)

    p = sub.add_parser("stable-norm", help="stable commutator norm lower bound")
    _add_ring_flags(p)
    p.add_argument("--w", required=True)
    _add_json_flag(p)

    p = sub.add_parser("aspherical", help="cl > 1 certificate for aspherical targets")
    p.add_argument("--sup", default="0")
    p.add_argument("--w", required=True)
    _add_json_flag(p)

    p = sub.add_parser("spectral", help="lower bound for the spectral number of E^g")
    _add_ring_flags(p)
    p.add_argument("--sup", default="0")
    p.add_argument("--w", required=True)
    p.add_argument("--g", required=True, type=int)
    _add_json_flag(p)

    p = sub.add_parser("sp-tau", help="rotation number of a symplectic path")
    p.add_argument("--generator", help='e.g. "rotation:theta=1.2" or "random:seed=7"')
    p.add_argument("--path", help="JSON file with a list of 2n x 2n matrices")
    p.add_argument("--dim", type=int, default=1, help="n for Sp(2n)")
    p.add_argument("--samples", type=int, default=65)
    p.add_argument("--kmax", type=int, default=32)
    p.add_argument("--det-only", action="store_true", help="skip homogenization")
    _add_json_flag(p)

    p = sub.add_parser("sp-survey", help="additivity-defect survey over path pairs")
    p.add_argument("--generator", required=True, help='e.g. "random:seed=42,count=200"')
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--samples", type=int, default=33)
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--threads", type=int, default=None, help="fan out pairs over threads")
    _add_json_flag(p)

    return parser


def _run_ring_command(args) -> None:
    ring = _parse_ring(args)
    if args.command == "product":
        a = QHClass.from_text(ring, args.a)
        b = QHClass.from_text(ring, args.b)
        _emit_class(qh_ring.quantum_product(a, b), args.json)
    elif args.command == "euler":
        _emit_class(qh_ring.euler_class(ring), args.json)
    elif args.command == "power":
        a = QHClass.from_text(ring, args.a)
        _emit_class(qh_ring.power(a, args.g), args.json)
    elif args.command == "postnikov":
        report = qh_ring.verify_postnikov(ring, args.g)
        if args.json:
            print(json.dumps(report.to_json_dict()))
        else:
            print(f"ring           Gr({ring.r},{ring.n})")
            print(f"g              {args.g}")
            print(f"computed       {report.computed.to_text()}")
            for label, applies, closed, match in (
                ("case I", report.case_i_applies, report.case_i_class, report.case_i_match),
                ("case II", report.case_ii_applies, report.case_ii_class, report.case_ii_match),
            ):
                if applies:
                    status = "match" if match else "MISMATCH"
                    print(f"{label:<14} {closed.to_text()}  [{status}]")
                else:
                    print(f"{label:<14} not applicable")
            if report.cases_agree is not None:
                print(f"cases agree    {report.cases_agree}")
            print(f"match          {report.matches}")
    elif args.command == "invariant":
        if args.limit:
            value = qh_ring.asymptotic_invariant(ring)
            label = "limit"
        else:
            if args.g is None:
                raise CliParseError("invariant needs --g or --limit")
            value = qh_ring.euler_power_invariant(ring, args.g)
            label = f"I_{args.g}"
        if args.json:
            print(json.dumps({"ring": ring.to_json_dict(), "name": label, "value": str(value)}))
        else:
            print(value)


def _run_bound_command(args) -> None:
    if args.command == "bound-cpn":
        cert = cl_bounds.cl_lower_bound_cpn(args.n, Fraction(args.area), _profile(args))
        _emit_certificate(cert, args.json)
    elif args.command == "bound-grass":
        ring = _parse_ring(args)
        cert = cl_bounds.cl_lower_bound_grassmannian(ring, _profile(args), args.g)
        _emit_certificate(cert, args.json)
    elif args.command == "stable-norm":
        ring = _parse_ring(args)
        value = cl_bounds.stable_norm_lower_bound(ring, Fraction(args.w))
        if args.json:
            print(json.dumps({"ring": ring.to_json_dict(), "w": args.w, "value": str(value)}))
        else:
            print(value)
    elif args.command == "aspherical":
        cert = cl_bounds.aspherical_bound(_profile(args))
        _emit_certificate(cert, args.json)
    elif args.command == "spectral":
        ring = _parse_ring(args)
        value = cl_bounds.spectral_lower_bound(ring, _profile(args), args.g)
        if args.json:
            print(json.dumps({"ring": ring.to_json_dict(), "g": args.g, "value": str(value)}))
        else:
            print(value)


def _run_sp_command(args) -> None:
    if args.command == "sp-tau":
        if (args.generator is None) == (args.path is None):
            raise CliParseError("sp-tau needs exactly one of --generator or --path")
        if args.path is not None:
            path = _load_path_file(args.path)
        else:
            path = _build_path(args.generator, args.dim, args.samples)
        if args.det_only:
            value = sp_quasimorphism.tau_det(path)
            estimates = []
        else:
            estimates = sp_quasimorphism.tau_estimates(path, args.kmax)
            value = estimates[-1]
        if args.json:
            print(json.dumps({"tau": value, "k_max": args.kmax, "estimates": estimates}))
        else:
            print(repr(value))
    elif args.command == "sp-survey":
        pairs = _build_pairs(args.generator, args.dim, args.samples)
        survey = sp_quasimorphism.defect_survey(
            pairs, k_max=args.kmax, max_workers=args.threads
        )
        if args.json:
            print(json.dumps(survey.to_json_dict()))
        else:
            print(f"pairs          {len(survey.defects)}")
            print(f"max defect     {survey.max_defect!r}")
            print(f"mean defect    {survey.mean_defect!r}")
            print(f"histogram      {list(survey.histogram_counts)}")


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command in {"product", "euler", "power", "postnikov", "invariant"}:
            _run_ring_command(args)
        elif args.command in {
            "bound-cpn",
            "bound-grass",
            "stable-norm",
            "aspherical",
            "spectral",
        }:
            _run_bound_command(args)
        else:
            _run_sp_command(args)
        return 0
    except CliParseError as exc:
        print(f"error:parse:{exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error:domain:{exc}", file=sys.stderr)
        return 3
    except AssertionError as exc:
        print(f"error:assertion:{exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error:parse:{exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

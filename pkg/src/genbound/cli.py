"""Command-line front end.

One process runs one job. Subcommands parse group/presentation documents,
dispatch the computation, and emit a report (JSON with --json, a compact
text rendering otherwise). Exit codes: 0 success, 2 verification failure,
1 error. All exact values in reports are decimal strings; floats appear
only in display fields. --reproducible omits the timestamp so reports
diff byte-for-byte.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import sys
from pathlib import Path

from .bounds import (
    CertificateError,
    certificate_from_doc,
    certificate_to_doc,
    certify_formula,
    check_certificate,
    lower_bound_explicit,
    weak_bound,
)
from .constructions import (
    ConstructionError,
    VerificationFailure,
    abelianization_split,
    coprime_family,
    family_to_doc,
    metabelian_target,
    min_m_for_conclusion,
    reduce_cyclic_orders,
    semidirect_target,
)
from .groups import ClosureOverflowError, FiniteGroup
from .homcount import (
    HomSearchBudgetError,
    WitnessWidthError,
    count_homs,
    witness_quotient,
)
from .io import FileFormatError, dump_document, parse_group_file
from .modules import find_simple_module
from .presentations import Presentation
from .subgroups import d_min_generators, largest_normal_p_subgroup

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFICATION = 2


class JobError(RuntimeError):
    pass


def _require_presentations(paths, role: str) -> list[Presentation]:
    out = []
    for path in paths:
        obj = parse_group_file(path)
        if not isinstance(obj, Presentation):
            raise JobError(f"{role} {path} must be a presentation document")
        out.append(obj)
    return out


def _require_group(path, role: str) -> FiniteGroup:
    obj = parse_group_file(path)
    if isinstance(obj, Presentation):
        raise JobError(f"{role} {path} must be a realized group, not a presentation")
    return obj


def _parse_primes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise JobError(f"bad --primes value {text!r}: {exc}") from exc


# -- subcommand handlers -----------------------------------------------------


def _cmd_homcount(args) -> tuple[int, dict]:
    factors = _require_presentations(args.factors, "factor")
    target = _require_group(args.target, "target")
    per_factor = []
    product = 1
    for f in factors:
        result = count_homs(f, target)
        product *= result.count
        per_factor.append(
            {
                "factor": f.describe(),
                "count": str(result.count),
                "target_order": str(result.target_order),
                "h": result.h,
            }
        )
    ratio = 0.0 if target.order == 1 else math.log(product) / math.log(target.order)
    report = {
        "per_factor": per_factor,
        "combined_count": str(product),
        "combined_h": ratio,
        "target": target.describe(),
    }
    return EXIT_OK, report


def _cmd_bound(args) -> tuple[int, dict]:
    factors = _require_presentations(args.factors, "factor")
    target = _require_group(args.target, "target")
    cert = lower_bound_explicit(factors, target)
    check_certificate(cert)
    return EXIT_OK, {"certificate": certificate_to_doc(cert)}


def _cmd_witness(args) -> tuple[int, dict]:
    factors = _require_presentations(args.factors, "factor")
    target = _require_group(args.target, "target")
    witness = witness_quotient(
        factors, target, width_cap=args.width_cap, dedup_kernels=args.dedup
    )
    report = {
        "source": witness.source.describe(),
        "hom_count": str(witness.hom_count_used),
        "width_used": str(witness.width_used),
        "deduplicated": witness.deduplicated,
        "witness_order": str(witness.group.order),
    }
    if witness.group.order <= args.dmin_cap:
        result = d_min_generators(witness.group)
        report["witness_d"] = result.value
        report["witness_d_exact"] = result.exact
    return EXIT_OK, report


def _cmd_dmin(args) -> tuple[int, dict]:
    group = _require_group(args.group, "group")
    result = d_min_generators(group)
    report = {
        "group": group.describe(),
        "order": str(group.order),
        "d": result.value,
        "exact": result.exact,
    }
    if result.witness is not None:
        report["witness"] = [repr(x) for x in result.witness]
    return EXIT_OK, report


def _cmd_opsub(args) -> tuple[int, dict]:
    group = _require_group(args.group, "group")
    handle = largest_normal_p_subgroup(group, args.prime)
    return EXIT_OK, {
        "group": group.describe(),
        "prime": args.prime,
        "order": str(handle.order),
        "index": str(group.order // handle.order),
    }


def _cmd_construct_solsol(args) -> tuple[int, dict]:
    orders = _parse_primes(args.primes)
    primes = reduce_cyclic_orders(orders)
    result = metabelian_target(primes, m=args.m)
    check_certificate(result.certificate)
    report = {
        "primes": [str(q) for q in result.primes],
        "dirichlet_prime": str(result.p),
        "target": result.target.describe(),
        "target_order": str(result.target.order),
        "construction": {
            "p": str(result.target.p),
            "l": str(result.target.l),
            "m": str(result.target.m),
            "r": str(result.target.r),
        },
        "metabelian": result.metabelian,
        "certificate": certificate_to_doc(result.certificate),
    }
    return EXIT_OK, report


def _cmd_construct_thm1(args) -> tuple[int, dict]:
    factors = _require_presentations(args.factors, "factor")
    if args.prime is None:
        raise JobError("construct-thm1 needs --prime")
    modules = []
    for f in factors:
        search = find_simple_module(f, args.prime, args.dmax)
        if search.found is None:
            skipped = "; ".join(f"dim {d}: {why}" for d, why in search.skipped)
            raise JobError(
                f"no nontrivial irreducible action of {f.describe()} over "
                f"F_{args.prime} up to dimension {args.dmax}"
                + (f" ({skipped})" if skipped else "")
            )
        modules.append(search.found)
    m = args.m
    if m is None:
        probe, _ = semidirect_target(modules, 1)
        m = min_m_for_conclusion(len(factors), probe.p, probe.l, probe.r)
    target, contributions = semidirect_target(modules, m)
    cert = certify_formula(
        [f.describe() for f in factors],
        target.describe(),
        target.order,
        contributions,
    )
    check_certificate(cert)
    report = {
        "target": target.describe(),
        "target_order": str(target.order),
        "construction": {
            "p": str(target.p),
            "l": str(target.l),
            "m": str(target.m),
            "r": str(target.r),
            "module_dims": list(target.module_dims),
        },
        "certificate": certificate_to_doc(cert),
    }
    return EXIT_OK, report


def _cmd_construct_thm4(args) -> tuple[int, dict]:
    instance = coprime_family(
        args.n, sieve_bound=args.sieve_bound, sum_cap=args.sum_cap
    )
    check_certificate(instance.certificate)
    return EXIT_OK, {"family": family_to_doc(instance)}


def _cmd_decompose_thm3(args) -> tuple[int, dict]:
    groups = [_require_group(p, "factor") for p in args.factors]
    split = abelianization_split(groups, d_max=args.dmax, m=args.m)
    report = {
        "s_prime": split.s_prime,
        "p": str(split.p),
        "t": split.t,
        "parts": list(split.reduced_names),
        "residual_rank": split.residual_rank,
        "conditional": split.conditional,
    }
    if split.conditional:
        report["missing_modules"] = list(split.missing)
        return EXIT_VERIFICATION, report
    report["m"] = str(split.m)
    report["target_order"] = str(split.target.order)
    report["construction"] = {
        "p": str(split.target.p),
        "l": str(split.target.l),
        "m": str(split.target.m),
        "r": str(split.target.r),
    }
    report["certificate"] = certificate_to_doc(split.certificate)
    check_certificate(split.certificate)
    return EXIT_OK, report


def _cmd_verify(args) -> tuple[int, dict]:
    if args.certificate:
        doc = json.loads(Path(args.certificate).read_text())
        if "certificate" in doc:
            doc = doc["certificate"]
        if "family" in doc:
            doc = doc["family"]["certificate"]
        cert = certificate_from_doc(doc)
        try:
            check_certificate(cert)
        except CertificateError as exc:
            return EXIT_VERIFICATION, {"valid": False, "reason": str(exc)}
        return EXIT_OK, {"valid": True, "conclusion": cert.conclusion}
    return _builtin_suite()


def _builtin_suite() -> tuple[int, dict]:
    """Fast internal invariant battery; exit 2 on the first failure."""
    from fractions import Fraction

    from .groups import PermGroup, power_group
    from .homcount import count_homs_cyclic, free_product_count
    from .numtheory import crt_solve, dirichlet_prime
    from .presentations import cyclic_presentation, free_product

    checks: list[tuple[str, bool]] = []
    s3 = PermGroup(3, [(1, 2, 0), (1, 0, 2)])
    s4 = PermGroup(4, [(1, 2, 3, 0), (1, 0, 2, 3)])
    c2, c3 = cyclic_presentation(2, "a"), cyclic_presentation(3, "b")
    checks.append(("closure order of sym(3) is 6", s3.order == 6))
    checks.append(
        ("hom counts multiply over free products",
         free_product_count([c2, c3], s4).count
         == count_homs(c2, s4).count * count_homs(c3, s4).count)
    )
    checks.append(
        ("combined presentation matches the product",
         count_homs(free_product([c2, c3]), s4).count == 90)
    )
    checks.append(
        ("power invariance at n=2",
         count_homs(c2, power_group(s3, 2)).count == count_homs(c2, s3).count ** 2)
    )
    checks.append(
        ("cyclic fast path agrees", count_homs_cyclic(2, s4).count == 10)
    )
    checks.append(("dirichlet prime for 1 mod 6", dirichlet_prime(1, 6) == 7))
    checks.append(("crt smallest solution", crt_solve([1, 2], [3, 5]) == 7))
    checks.append(("weak bound arithmetic", weak_bound([2, 3]) == Fraction(7, 6)))
    solsol = metabelian_target([2, 3], m=1)
    try:
        check_certificate(solsol.certificate)
        cert_ok = solsol.certificate.conclusion == 2
    except CertificateError:
        cert_ok = False
    checks.append(("metabelian target certificate validates", cert_ok))
    failed = [name for name, ok in checks if not ok]
    report = {
        "checks": [{"name": name, "ok": ok} for name, ok in checks],
        "failed": failed,
    }
    return (EXIT_VERIFICATION if failed else EXIT_OK), report


# -- argument parsing and dispatch -------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genbound",
        description=(
            "Certified lower bounds on the number of generators of the "
            "profinite completion of a free product of finite groups."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("--json", action="store_true", help="emit the JSON report")
        p.add_argument(
            "--reproducible",
            action="store_true",
            help="omit volatile fields (timestamp) from the report",
        )
        p.add_argument("--output", type=Path, help="write the report to this path")
        p.add_argument(
            "--threads",
            type=int,
            default=1,
            help="upper bound on worker threads (evaluation is deterministic)",
        )

    p = sub.add_parser("homcount", help="per-factor and combined hom counts")
    p.add_argument("--factors", nargs="+", required=True)
    p.add_argument("--target", required=True)
    common(p)
    p.set_defaults(handler=_cmd_homcount)

    p = sub.add_parser("bound", help="exact-count lower-bound certificate")
    p.add_argument("--factors", nargs="+", required=True)
    p.add_argument("--target", required=True)
    common(p)
    p.set_defaults(handler=_cmd_bound)

    p = sub.add_parser("witness", help="witness quotient order and d")
    p.add_argument("--factors", nargs="+", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--width-cap", type=int, default=512)
    p.add_argument("--dedup", action="store_true", help="deduplicate homs by kernel")
    p.add_argument("--dmin-cap", type=int, default=512)
    common(p)
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("dmin", help="minimal number of generators")
    p.add_argument("group")
    common(p)
    p.set_defaults(handler=_cmd_dmin)

    p = sub.add_parser("opsub", help="largest normal p-subgroup")
    p.add_argument("group")
    p.add_argument("--prime", type=int, required=True)
    common(p)
    p.set_defaults(handler=_cmd_opsub)

    p = sub.add_parser(
        "construct-solsol", help="metabelian target for cyclic factors"
    )
    p.add_argument("--primes", required=True, help="comma-separated cyclic orders")
    p.add_argument("--m", type=int, default=None)
    common(p)
    p.set_defaults(handler=_cmd_construct_solsol)

    p = sub.add_parser(
        "construct-thm1", help="semidirect power target from module actions"
    )
    p.add_argument("--factors", nargs="+", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--dmax", type=int, default=4)
    common(p)
    p.set_defaults(handler=_cmd_construct_thm1)

    p = sub.add_parser(
        "construct-thm4", help="coprime family on a common symmetric target"
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sieve-bound", type=int, default=2000)
    p.add_argument("--sum-cap", type=int, default=10**4)
    common(p)
    p.set_defaults(handler=_cmd_construct_thm4)

    p = sub.add_parser(
        "decompose-thm3", help="split factors through abelianizations"
    )
    p.add_argument("--factors", nargs="+", required=True)
    p.add_argument("--dmax", type=int, default=4)
    p.add_argument("--m", type=int, default=None)
    common(p)
    p.set_defaults(handler=_cmd_decompose_thm3)

    p = sub.add_parser("verify", help="re-validate a certificate or run self-checks")
    p.add_argument("--certificate", type=Path, default=None)
    common(p)
    p.set_defaults(handler=_cmd_verify)

    return parser


def _render_text(doc: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render_text(value, indent + 1))
        elif isinstance(value, list):
            rendered = json.dumps(value)
            if len(rendered) <= 100:
                lines.append(f"{pad}{key}: {rendered}")
            else:
                lines.append(f"{pad}{key}:")
                for item in value:
                    lines.append(f"{pad}  - {json.dumps(item)}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    try:
        status, report = args.handler(args)
    except (
        JobError,
        FileFormatError,
        ConstructionError,
        VerificationFailure,
        ClosureOverflowError,
        HomSearchBudgetError,
        WitnessWidthError,
        CertificateError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION if isinstance(exc, VerificationFailure) else EXIT_ERROR
    report = {"command": args.command, **report}
    if not args.reproducible:
        report["generated_at"] = (
            datetime.datetime.now(datetime.timezone.utc).isoformat()
        )
    text = dump_document(report) if args.json else _render_text(report) + "\n"
    if args.output:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: construct, verify, cross-validate, enumerate.

Commands
--------
field-info   print the arithmetic context for (p, h) or q
puncture     basis of P(C) by one or both methods, optional minimum weight
construct    run one of the named polynomial families (or a custom g)
verify       recheck a serialized code record independently of its origin
sweep        per-k summary table of P(C) minimum weights for one field

Output is UTF-8 JSON (schema 1) or CSV; diagnostics go to stderr only.
Exit codes: 0 success, 2 validation refusal (a math-level precondition),
3 enumeration cap exceeded, 4 malformed input file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from datetime import datetime, timezone

from . import constructions, grscode, puncture
from .errors import CapExceeded, MalformedInput, ValidationRefused
from .field import FieldCtx, make_field
from .poly import Poly

SCHEMA = 1

SWEEP_COLUMNS = [
    "p", "h", "q", "k", "dim", "formula", "witness_weight",
    "exhaustive_weight", "mode", "agrees",
]


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValidationRefused(f"q={q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            h = 0
            m = q
            while m % p == 0:
                m //= p
                h += 1
            if m != 1:
                raise ValidationRefused(f"q={q} is not a prime power")
            return p, h
    raise ValidationRefused(f"q={q} is not a prime power")


def _resolve_field(args: argparse.Namespace) -> FieldCtx:
    if getattr(args, "q", None) is not None:
        if getattr(args, "p", None) is not None or getattr(args, "h", None) is not None:
            raise ValidationRefused("give either --q or both --p and --h, not both")
        p, h = _factor_prime_power(args.q)
        return make_field(p, h)
    if getattr(args, "p", None) is None or getattr(args, "h", None) is None:
        raise ValidationRefused("a field is required: --q Q, or --p P --h H")
    return make_field(args.p, args.h)


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ValidationRefused(f"expected a comma-separated integer list, got {text!r}") from exc


def _envelope(command: str, config: dict, result: dict | list) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "config": config,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "result": result,
    }


def _emit(args: argparse.Namespace, payload: str) -> None:
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(payload)


def _emit_json(args: argparse.Namespace, command: str, config: dict, result: dict | list) -> None:
    _emit(args, json.dumps(_envelope(command, config, result), indent=2) + "\n")


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------
def cmd_field_info(args: argparse.Namespace) -> int:
    ctx = _resolve_field(args)
    result = {
        "p": ctx.p,
        "h": ctx.h,
        "q": ctx.q,
        "q2": ctx.q2,
        "modulus": list(ctx.modulus),
        "primitive": ctx.w.index,
        "subfield_size": ctx.q,
        "element_count": ctx.q2,
    }
    config = {"p": ctx.p, "h": ctx.h}
    _emit_json(args, "field-info", config, result)
    return 0


def cmd_puncture(args: argparse.Namespace) -> int:
    ctx = _resolve_field(args)
    k = args.k
    config = {
        "p": ctx.p, "h": ctx.h, "k": k, "method": args.method,
        "check_min_weight": args.check_min_weight, "min_weight_cap": args.min_weight_cap,
        "direct_cap_q": args.direct_cap_q, "g_samples": args.g_samples,
        "distribution": args.distribution, "distribution_cap": args.distribution_cap,
        "seed": args.seed, "threads": args.threads,
    }
    bases = {}
    if args.method in ("direct", "all"):
        bases["direct"] = puncture.puncture_direct(ctx, k, max_q=args.direct_cap_q)
    if args.method in ("u-space", "all"):
        bases["u_space"] = puncture.u_space_basis(ctx, k)
    primary = bases.get("direct") or bases["u_space"]
    result: dict = {
        "q": ctx.q,
        "k": k,
        "method": args.method,
        "dim": primary.dim,
        "expected_dim": ctx.q2 + 1 - k * k if k <= ctx.q else 0,
        "basis": [row.serialized() for row in primary.rows()],
    }
    if len(bases) == 2:
        result["methods_agree"] = bases["direct"].row_space_equals(bases["u_space"])
    if args.check_min_weight:
        r = puncture.min_weight_pc(ctx, k, cap=args.min_weight_cap, threads=args.threads)
        result["min_weight"] = {
            "value": r.weight,
            "mode": r.mode,
            "witness": r.witness.serialized() if r.witness is not None else None,
            "scanned": r.scanned,
            "note": r.note,
        }
        result["formula_value"] = r.formula
        result["agrees"] = r.agrees
    if args.distribution:
        counts = puncture.weight_distribution(ctx, k, cap=args.distribution_cap, threads=args.threads)
        result["weight_distribution"] = {
            str(w): int(c) for w, c in enumerate(counts) if c
        }
    if args.g_samples:
        if k > ctx.q:
            result["g_form_samples"] = {"count": 0, "all_members": True,
                                        "note": "P(C) is trivial for k > q"}
        else:
            rng = random.Random(args.seed)
            bound = (ctx.q - k) * ctx.q - 1
            ok = True
            for _ in range(args.g_samples):
                coeffs = [rng.randrange(ctx.q2) for _ in range(bound + 1)] if bound >= 0 else []
                g = Poly.from_indices(ctx, coeffs)
                c = ctx.compact_to_felt(rng.randrange(ctx.q))
                ok = ok and puncture.membership(primary, puncture.g_form_vector(ctx, k, g, c))
            result["g_form_samples"] = {"count": args.g_samples, "all_members": ok}
    _emit_json(args, "puncture", config, result)
    return 0


def _parse_poly(ctx: FieldCtx, text: str) -> Poly:
    return Poly.from_indices(ctx, _int_list(text))


def _parse_felts(ctx: FieldCtx, text: str):
    return [ctx.felt(i) for i in _int_list(text)]


def cmd_construct(args: argparse.Namespace) -> int:
    ctx = _resolve_field(args)
    family = args.family
    if family == "example1":
        report = constructions.build_example1(ctx, args.k, args.t, _parse_poly(ctx, args.f))
    elif family == "example2":
        report = constructions.build_example2(ctx, args.k, args.t, _parse_felts(ctx, args.r))
    elif family == "example3":
        report = constructions.build_example3(ctx, args.k, args.t, _parse_felts(ctx, args.r))
    elif family == "even-min":
        R = _parse_felts(ctx, args.r) if args.r is not None else None
        report = constructions.build_even_q_min(ctx, args.k, R)
    elif family == "odd-min":
        R = _parse_felts(ctx, args.r) if args.r is not None else None
        report = constructions.build_odd_q_min(ctx, args.k, R)
    elif family == "qsq-plus-one":
        e = ctx.felt(args.e) if args.e is not None else None
        report = constructions.build_qsq_plus_one(ctx, e)
    elif family == "custom":
        report = constructions.build_custom(ctx, args.k, _parse_poly(ctx, args.g), ctx.felt(args.c))
    else:  # pragma: no cover - argparse restricts choices
        raise ValidationRefused(f"unknown family {family}")
    config = {"p": ctx.p, "h": ctx.h, "family": family}
    for name in ("k", "t", "f", "r", "g", "c", "e"):
        if hasattr(args, name) and getattr(args, name) is not None:
            config[name] = getattr(args, name)
    _emit_json(args, "construct", config, report.to_dict())
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        with open(args.code_file, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {args.code_file}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{args.code_file} is not valid JSON: {exc}") from exc
    record = obj.get("result", obj) if isinstance(obj, dict) else None
    if not isinstance(record, dict):
        raise MalformedInput("no code record found in the file")
    code = grscode.code_from_dict(record)
    self_orth = grscode.is_hermitian_self_orthogonal(code)
    mds = grscode.mds_status(code, mds_cap=args.mds_cap, enum_cap=args.enum_cap)
    result = {
        "q": code.ctx.q,
        "n": code.n,
        "k": code.k,
        "self_orthogonal": self_orth,
        "mds": mds,
        "params": {
            "n": code.n, "k": code.k, "d": code.n - code.k + 1,
            "verified_d": mds in ("minors", "enumeration"),
        },
        "quantum": list(grscode.quantum_params(code).quantum) if self_orth else None,
    }
    claims = {}
    if "self_orthogonal" in record:
        claims["self_orthogonal"] = bool(record["self_orthogonal"]) == self_orth
    if record.get("quantum") is not None and result["quantum"] is not None:
        claims["quantum"] = list(record["quantum"]) == result["quantum"]
    result["matches_file"] = claims
    if args.include_generator:
        result["generator"] = grscode.generator_rows(code)
    config = {"code_file": args.code_file, "mds_cap": args.mds_cap, "enum_cap": args.enum_cap}
    _emit_json(args, "verify", config, result)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    ctx = _resolve_field(args)
    config = {
        "p": ctx.p, "h": ctx.h, "min_weight_cap": args.min_weight_cap,
        "threads": args.threads, "format": args.format,
    }
    rows = []
    for k in range(1, ctx.q + 1):
        r = puncture.min_weight_pc(ctx, k, cap=args.min_weight_cap, threads=args.threads)
        witness_w = puncture.constructive_witness(ctx, k).weight()
        rows.append(
            {
                "p": ctx.p,
                "h": ctx.h,
                "q": ctx.q,
                "k": k,
                "dim": r.dim,
                "formula": r.formula,
                "witness_weight": witness_w,
                "exhaustive_weight": r.weight if r.mode == "exhaustive" else None,
                "mode": r.mode,
                "agrees": r.agrees,
            }
        )
    if args.format == "json":
        _emit_json(args, "sweep", config, rows)
        return 0
    buf = io.StringIO()
    buf.write(f"# schema: {SCHEMA}\n")
    buf.write(f"# command: sweep\n# config: {json.dumps(config)}\n")
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS)
    writer.writeheader()
    for row in rows:
        out = dict(row)
        if out["exhaustive_weight"] is None:
            out["exhaustive_weight"] = ""
        writer.writerow(out)
    _emit(args, buf.getvalue())
    return 0


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------
def _add_field_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, help="prime characteristic")
    p.add_argument("--h", type=int, help="extension degree of GF(q) over GF(p)")
    p.add_argument("--q", type=int, help="q as a prime power (alternative to --p/--h)")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", default="-", help="output path, '-' for stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
    p.add_argument("--threads", type=int, default=1, help="worker threads for enumeration")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermgrs",
        description="Hermitian self-orthogonal truncated generalised Reed-Solomon codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("field-info", help="describe the GF(q^2) arithmetic context")
    _add_field_args(p_info)
    _add_output_args(p_info)
    p_info.set_defaults(func=cmd_field_info)

    p_punc = sub.add_parser("puncture", help="basis and minimum weight of the puncture code")
    _add_field_args(p_punc)
    p_punc.add_argument("--k", type=int, required=True, help="dimension of the Reed-Solomon code")
    p_punc.add_argument("--method", choices=["direct", "u-space", "all"], default="all")
    p_punc.add_argument("--check-min-weight", action="store_true")
    p_punc.add_argument("--min-weight-cap", type=int, default=10**8)
    p_punc.add_argument("--direct-cap-q", type=int, default=puncture.DIRECT_MAX_Q)
    p_punc.add_argument("--g-samples", type=int, default=0,
                        help="membership-check this many random (g, c) pairs")
    p_punc.add_argument("--distribution", action="store_true",
                        help="emit the full weight distribution of P(C)")
    p_punc.add_argument("--distribution-cap", type=int, default=10**7)
    _add_output_args(p_punc)
    p_punc.set_defaults(func=cmd_puncture)

    p_cons = sub.add_parser("construct", help="run a polynomial construction family")
    fam = p_cons.add_subparsers(dest="family", required=True)

    def family_parser(name: str, **flags) -> argparse.ArgumentParser:
        fp = fam.add_parser(name)
        _add_field_args(fp)
        for flag, (ftype, required, helptext) in flags.items():
            fp.add_argument(f"--{flag}", type=ftype, required=required, help=helptext)
        _add_output_args(fp)
        fp.set_defaults(func=cmd_construct)
        return fp

    family_parser(
        "example1",
        k=(int, True, "code dimension"),
        t=(int, True, "divisor of q+1"),
        f=(str, True, "coefficients of f over GF(q), low degree first, as element indices"),
    )
    family_parser(
        "example2",
        k=(int, True, "code dimension"),
        t=(int, True, "divisor of q+1"),
        r=(str, True, "elements r of GF(q)* as element indices"),
    )
    family_parser(
        "example3",
        k=(int, True, "code dimension"),
        t=(int, True, "t; t-|R| must divide q+1"),
        r=(str, True, "inversion-closed (q+1)-st roots of unity as element indices"),
    )
    family_parser(
        "even-min",
        k=(int, True, "code dimension, q/2 <= k <= q-1"),
        r=(str, False, "trace-one elements (defaults to the first q-k-1)"),
    )
    family_parser(
        "odd-min",
        k=(int, True, "code dimension, (q+1)/2 <= k <= q-1"),
        r=(str, False, "nonzero squares (defaults to the first q-k-1)"),
    )
    family_parser(
        "qsq-plus-one",
        e=(int, False, "element index of e (defaults to the canonical choice)"),
    )
    family_parser(
        "custom",
        k=(int, True, "code dimension"),
        g=(str, True, "coefficients of g, low degree first, as element indices"),
        c=(int, True, "element index of c in GF(q)"),
    )

    p_ver = sub.add_parser("verify", help="recheck a serialized code record")
    p_ver.add_argument("code_file", help="JSON file produced by construct (or a bare code record)")
    p_ver.add_argument("--mds-cap", type=int, default=grscode.MDS_CAP)
    p_ver.add_argument("--enum-cap", type=int, default=10**6)
    p_ver.add_argument("--include-generator", action="store_true",
                       help="embed the generator matrix (row-major element indices)")
    _add_output_args(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="P(C) minimum-weight table for k = 1..q")
    _add_field_args(p_sweep)
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.add_argument("--min-weight-cap", type=int, default=10**8)
    _add_output_args(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    for cmd_parser in (p_info, p_punc, p_ver):
        cmd_parser.add_argument("--format", choices=["json"], default="json", help=argparse.SUPPRESS)
    for fp in fam.choices.values():
        fp.add_argument("--format", choices=["json"], default="json", help=argparse.SUPPRESS)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except MalformedInput as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())

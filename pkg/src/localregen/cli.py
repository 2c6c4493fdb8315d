"""Command-line interface.

Subcommands: construct, verify, dmin, bounds, repair-sim, compare.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds as bounds_mod
from . import descriptor, simulate
from .constructions import FAMILIES, ConstructedCode, build, stack
from .errors import CodingError
from .field import FiniteField, prime_power
from .regen import pm_msr_construct, rbt_mbr_construct, trivial_msr
from .scalar import (
    parity_split_construct,
    pyramid_construct,
    random_all_symbol_construct,
)
from .vectorcode import check_optimal_structure, validate_locality


def _field_from_args(args) -> FiniteField:
    if args.field is None:
        raise CodingError("--field is required")
    pm = prime_power(args.field)
    if pm is None:
        raise CodingError(f"--field {args.field} is not a prime power")
    poly = [int(c) for c in args.poly.split(",")] if args.poly else None
    return FiniteField(*pm, poly=poly)


_SCALAR_FAMILIES = {"pyramid", "parity_split", "random_all_symbol"}
_REGEN_FAMILIES = {"rbt_mbr", "pm_msr", "trivial_msr"}


def _construct(args) -> int:
    if args.spec:
        with open(args.spec) as fh:
            spec = json.load(fh)
        family = spec.pop("family")
        base_path = spec.pop("base", None)
        field = None
        if family != "stack":
            field_q = spec.pop("field")
            pm = prime_power(field_q)
            if pm is None:
                raise CodingError(f"field {field_q} is not a prime power")
            field = FiniteField(*pm, poly=spec.pop("poly", None))
        params = spec
    else:
        family = args.family
        if family is None:
            raise CodingError("construct needs --family or --spec")
        base_path = args.base
        field = _field_from_args(args) if family != "stack" else None
        params = {
            name: getattr(args, name)
            for name in ("r", "delta", "m", "Delta", "ell", "d", "n", "kappa",
                         "k", "dmin", "seed", "max_attempts", "alpha")
            if getattr(args, name) is not None
        }
    if family == "stack":
        if not base_path:
            raise CodingError("stack needs --base pointing at a scalar descriptor")
        built = stack(descriptor.load(base_path), params["alpha"])
    else:
        built = _dispatch_construction(family, field, params)
    descriptor.save(built, args.out)
    claimed = built.claimed_dmin
    print(f"{family}: n={built.code.n} K={built.code.K} alpha={built.code.alpha} "
          f"claimed_dmin={claimed} -> {args.out}")
    return 0


def _dispatch_construction(family, field, params) -> ConstructedCode:
    params = dict(params)
    params.pop("alpha_stack", None)
    if family in FAMILIES:
        params.pop("dmin", None)
        params.pop("k", None)
        params.pop("alpha", None)
        if family in ("rbt_mbr_local", "rbt_mbr_all_symbol", "product_cyclic"):
            params.pop("d", None)
        if family in ("rbt_mbr_local", "product_cyclic"):
            params.pop("seed", None)
            params.pop("max_attempts", None)
        if family == "rbt_mbr_local":
            params.pop("ell", None)
        elif family == "product_cyclic":
            for extra in ("m", "Delta", "ell"):
                params.pop(extra, None)
        elif family in ("sum_parity_msr", "pyramid_msr"):
            params.pop("ell", None)
            params.pop("max_attempts", None)
        elif family == "random_msr_local":
            params.pop("ell", None)
        elif family in ("random_msr_all_symbol", "rbt_mbr_all_symbol"):
            params.pop("Delta", None)
        return build(family, field, **params)
    if family == "pyramid":
        code, loc = pyramid_construct(params["k"], params["r"], params["delta"],
                                      params["dmin"], field)
        return ConstructedCode(code, loc, family, code.metadata["target_dmin"],
                               params=params)
    if family == "parity_split":
        code, loc = parity_split_construct(params["k"], params["r"],
                                           params["delta"], field)
        return ConstructedCode(code, loc, family, code.metadata["target_dmin"],
                               params=params)
    if family == "random_all_symbol":
        code, loc, _ = random_all_symbol_construct(
            params["n"], params["k"], params["r"], params["delta"], field,
            seed=params.get("seed", 0),
            max_attempts=params.get("max_attempts", 10))
        claimed = bounds_mod.scalar_locality_bound(params["n"], params["k"],
                                                   params["r"], params["delta"])
        return ConstructedCode(code, loc, family, claimed, params=params)
    if family == "rbt_mbr":
        regen = rbt_mbr_construct(params["n"], params["k"], field)
        return ConstructedCode(regen.code, None, family,
                               regen.params.n - regen.params.k + 1,
                               regen=regen, params=params)
    if family == "pm_msr":
        regen = pm_msr_construct(params["n"], params["k"], params["d"], field,
                                 seed=params.get("seed", 0))
        return ConstructedCode(regen.code, None, family,
                               regen.params.n - regen.params.k + 1,
                               regen=regen, params=params)
    if family == "trivial_msr":
        regen = trivial_msr(params["n"], params["k"], field)
        return ConstructedCode(regen.code, None, family,
                               regen.params.n - regen.params.k + 1,
                               regen=regen, params=params)
    raise CodingError(f"unknown family {family!r}")


def _cmd_verify(args) -> int:
    built = descriptor.load(args.descriptor)
    code = built.code
    ok = True
    d_oracle = code.min_distance(force=args.force)
    claimed = built.claimed_dmin
    if claimed is None:
        print(f"d_min={d_oracle} (no claim recorded)")
    elif d_oracle == claimed:
        print(f"d_min={d_oracle} == bound={claimed}")
    else:
        print(f"d_min={d_oracle} != claimed={claimed}: MISMATCH")
        ok = False
    if built.locality is not None:
        try:
            validate_locality(code, built.locality, force=args.force)
            print(f"locality: valid ({built.locality.kind}, r={built.locality.r}, "
                  f"delta={built.locality.delta})")
        except (CodingError, ValueError) as exc:
            print(f"locality: INVALID ({exc})")
            ok = False
        if ok and built.locality.exact and claimed is not None:
            try:
                report = check_optimal_structure(code, built.locality,
                                                 force=args.force)
                print(f"structure: {'pass' if report.passed else 'FAIL'}")
                ok = ok and report.passed
            except CodingError as exc:
                print(f"structure: skipped ({exc})")
    if built.local_regen or built.regen:
        try:
            simulate.repair_sweep(built, force=args.force, dmin=d_oracle)
            print("repair contracts: pass")
        except CodingError as exc:
            print(f"repair contracts: FAIL ({exc})")
            ok = False
    return 0 if ok else 1


def _cmd_dmin(args) -> int:
    built = descriptor.load(args.descriptor)
    d_oracle = built.code.min_distance(force=args.force)
    print(d_oracle)
    if built.claimed_dmin is not None and built.claimed_dmin != d_oracle:
        print(f"mismatch: descriptor claims {built.claimed_dmin}", file=sys.stderr)
        return 1
    return 0


def _cmd_bounds(args) -> int:
    name = args.name
    vals = {}
    profile = None
    if args.profile:
        profile = bounds_mod.ProfileCalculator(
            tuple(int(x) for x in args.profile.split(","))
        )
    if name == "scalar-locality":
        vals[name] = bounds_mod.scalar_locality_bound(args.n, args.k, args.r, args.delta)
    elif name == "ura":
        vals[name] = bounds_mod.ura_bound(args.n, args.K, profile)
    elif name == "msr-k":
        vals[name] = bounds_mod.msr_k_bound(args.n, args.K, args.alpha, args.r, args.delta)
    elif name == "mbr":
        vals[name] = bounds_mod.mbr_bound(args.n, args.K, args.r, args.delta)
    elif name == "rate":
        vals[name] = bounds_mod.rate_bound(args.n, args.dmin, profile)
    elif name == "kappa":
        vals[name] = bounds_mod.kappa_bound(args.n, args.kappa, args.r, args.delta)
    elif name == "structural":
        vals.update(bounds_mod.structural_bounds(
            args.n, args.r, args.delta, K=args.K, alpha=args.alpha,
            kappa=args.kappa, i0=args.i0))
    elif name == "cutset":
        vals[name] = bounds_mod.cutset_bound(args.k, args.d, args.alpha, args.beta)
    elif name == "concatenated":
        vals[name] = bounds_mod.concatenated_bound(args.n1, args.k1, args.d1,
                                                   args.n2, args.k2, args.d2)
    elif name == "erasure-singleton":
        s, e = bounds_mod.erasure_and_singleton(args.n, args.K, args.alpha, args.kappa)
        vals["singleton"] = s
        vals["erasure"] = e
    else:
        raise CodingError(f"unknown bound {name!r}")
    print(json.dumps(vals, sort_keys=True))
    return 0


def _cmd_repair_sim(args) -> int:
    built = descriptor.load(args.descriptor)
    record, transcripts = simulate.repair_sweep(
        built, gamma_k=args.gamma_k, gamma_s=args.gamma_s, force=args.force)
    out = {
        "record": {
            "family": record.family, "n": record.n, "K": record.K,
            "alpha": record.alpha, "dmin": record.dmin,
            "omega_bar": record.omega_bar, "Omega": record.Omega,
            "xi": record.xi, "h": record.h, "cost": record.cost,
        },
        "transcripts": [
            {
                "failed": tr.failed,
                "helpers": list(tr.helpers),
                "downloads": list(tr.downloads),
                "total": tr.total,
                "method": tr.method,
            }
            for tr in transcripts
        ],
    }
    print(json.dumps(out, sort_keys=True))
    return 0


def _cmd_compare(args) -> int:
    builts = [descriptor.load(p) for p in args.descriptors]
    table = simulate.compare(builts, gamma_k=args.gamma_k, gamma_s=args.gamma_s,
                             force=args.force)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(table)
    else:
        sys.stdout.write(table)
    return 0


def _parser():
    ap = argparse.ArgumentParser(
        prog="localregen",
        description="Construct, certify and benchmark storage codes with "
                    "locality and local regeneration.")
    sub = ap.add_subparsers(dest="command", required=True)

    families = (sorted(FAMILIES) + sorted(_SCALAR_FAMILIES)
                + sorted(_REGEN_FAMILIES) + ["stack"])
    c = sub.add_parser("construct", help="build a code and write its descriptor")
    c.add_argument("--family", choices=families)
    c.add_argument("--spec", help="JSON file with family, field and parameters")
    c.add_argument("--field", type=int, help="field order q (prime power)")
    c.add_argument("--poly", help="reduction polynomial coefficients, low-first")
    c.add_argument("--base", help="base descriptor for the stack family")
    for name in ("r", "delta", "m", "Delta", "ell", "d", "n", "kappa", "k",
                 "dmin", "seed", "max-attempts", "alpha"):
        c.add_argument(f"--{name}", type=int, dest=name.replace("-", "_"),
                       default=None)
    c.add_argument("--out", "-o", required=True)
    c.set_defaults(fn=_construct)

    v = sub.add_parser("verify", help="re-certify a descriptor's claims")
    v.add_argument("descriptor")
    v.add_argument("--force", action="store_true",
                   help="ignore the exhaustive-search work cap")
    v.set_defaults(fn=_cmd_verify)

    dm = sub.add_parser("dmin", help="exhaustive minimum distance of a descriptor")
    dm.add_argument("descriptor")
    dm.add_argument("--force", action="store_true")
    dm.set_defaults(fn=_cmd_dmin)

    b = sub.add_parser("bounds", help="evaluate a named bound")
    b.add_argument("name", choices=["scalar-locality", "ura", "msr-k", "mbr",
                                    "rate", "kappa", "structural", "cutset",
                                    "concatenated", "erasure-singleton"])
    for name in ("n", "k", "K", "r", "delta", "alpha", "beta", "d", "dmin",
                 "kappa", "i0", "n1", "k1", "d1", "n2", "k2", "d2"):
        b.add_argument(f"--{name}", type=int, default=None)
    b.add_argument("--profile", help="comma-separated rank profile, e.g. 4,3,2,0,0")
    b.set_defaults(fn=_cmd_bounds)

    rs = sub.add_parser("repair-sim", help="single-failure repair sweep")
    rs.add_argument("descriptor")
    rs.add_argument("--gamma-k", type=float, default=1.0)
    rs.add_argument("--gamma-s", type=float, default=1.0)
    rs.add_argument("--force", action="store_true")
    rs.set_defaults(fn=_cmd_repair_sim)

    cp = sub.add_parser("compare", help="CSV comparison of several descriptors")
    cp.add_argument("descriptors", nargs="*")
    cp.add_argument("--gamma-k", type=float, default=1.0)
    cp.add_argument("--gamma-s", type=float, default=1.0)
    cp.add_argument("--force", action="store_true")
    cp.add_argument("--out", "-o")
    cp.set_defaults(fn=_cmd_compare)
    return ap


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (CodingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

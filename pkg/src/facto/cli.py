"""Command-line front end.

Every command reads/writes the JSON formats declared by the library types.
Output files are written atomically (temp file + rename) so an error never
leaves a partial file behind.  Exit codes: 0 success, 1 invalid input,
2 property or census failure.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import tempfile

from .census import Bounds, MatchFailure, class_census, hom_dim_compare
from .chains import MonoChain, chain_iso_test, chain_stable_hom_dim
from .factorizations import (
    Factorization,
    Invalid,
    fac_stable_hom_dim,
    fac_validate,
    nu,
    nu_resolution,
    rotate,
    termwise_split_check,
    zigzag_check,
)
from .fields import FieldError, field_from_spec
from .functors import cok, cok_exactness_check, reconstruct
from .modules import HypersurfaceConfig
from .polymat import GradedMatrix


class InputError(Exception):
    """Bad flags, unreadable file, malformed JSON, invariant violation."""


class CheckFailure(Exception):
    """A verified property or the census failed."""


def _config(args) -> HypersurfaceConfig:
    try:
        field = field_from_spec(args.field)
    except FieldError as e:
        raise InputError(str(e))
    if args.d is None:
        raise InputError("--d is required for this command")
    if args.d < 1:
        raise InputError("--d must be >= 1")
    return HypersurfaceConfig(args.d, field)


def _load_json(path):
    if path is None:
        raise InputError("--in is required for this command")
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON in {path}: {e}")


def _emit(text: str, out_path):
    """Print to stdout, or atomically write to --out."""
    if out_path is None:
        print(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".facto-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text + "\n")
        os.replace(tmp, out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def _load_fac(cfg, path) -> Factorization:
    data = _load_json(path)
    try:
        return Factorization.from_json(cfg, data)
    except (ValueError, KeyError, TypeError) as e:
        raise InputError(f"{path}: {e}")


def _load_chain(cfg, path) -> MonoChain:
    data = _load_json(path)
    try:
        return MonoChain.from_json(cfg, data)
    except (ValueError, KeyError, TypeError) as e:
        raise InputError(f"{path}: {e}")


# commands ---------------------------------------------------------------------


def _cmd_validate(args):
    cfg = _config(args)
    data = _load_json(args.infile)
    try:
        maps = [GradedMatrix.from_json(cfg.field, a) for a in data["maps"]]
    except (ValueError, KeyError, TypeError) as e:
        raise InputError(f"{args.infile}: {e}")
    out = fac_validate(maps, cfg, twist=data.get("twist", 0))
    if isinstance(out, Invalid):
        raise InputError(f"invalid factorization: {out.reason}")
    report = {"valid": True, "m": out.m, "closing": out.closing.to_json()}
    _emit(_dumps(report), args.out)
    return 0


def _cmd_cok(args):
    cfg = _config(args)
    x = _load_fac(cfg, args.infile)
    _emit(_dumps(cok(x).to_json()), args.out)
    return 0


def _cmd_reconstruct(args):
    cfg = _config(args)
    u = _load_chain(cfg, args.infile)
    _emit(_dumps(reconstruct(u).to_json()), args.out)
    return 0


def _cmd_rotate(args):
    cfg = _config(args)
    x = _load_fac(cfg, args.infile)
    steps = args.steps
    for _ in range(abs(steps)):
        x = rotate(x, inverse=steps < 0)
    _emit(_dumps(x.to_json()), args.out)
    return 0


def _cmd_nu(args):
    cfg = _config(args)
    if args.l is None or args.k is None or args.degs is None:
        raise InputError("nu requires --l, --k and --degs")
    try:
        degs = [int(s) for s in args.degs.split(",")]
    except ValueError:
        raise InputError(f"bad --degs {args.degs!r} (comma-separated integers)")
    if not (0 <= args.k <= args.l):
        raise InputError("--k must lie in [0, l]")
    _emit(_dumps(nu(cfg, args.l, args.k, degs).to_json()), args.out)
    return 0


def _cmd_resolve(args):
    cfg = _config(args)
    x = _load_fac(cfg, args.infile)
    res = nu_resolution(x, side=args.side)
    ok = termwise_split_check(res, args.side)
    report = {
        "side": args.side,
        "middle": res.middle.to_json(),
        "map": res.map.to_json(),
        "termwise_split_exact": bool(ok),
    }
    _emit(_dumps(report), args.out)
    if not ok:
        raise CheckFailure("resolution is not termwise split exact")
    return 0


def _cmd_stable_hom(args):
    cfg = _config(args)
    data = _load_json(args.infile)
    try:
        xd, yd = data["x"], data["y"]
    except (KeyError, TypeError):
        raise InputError(f'{args.infile}: expected an object with "x" and "y"')
    if "objects" in xd:
        x = MonoChain.from_json(cfg, xd)
        y = MonoChain.from_json(cfg, yd)
        dim = chain_stable_hom_dim(x, y)
    else:
        x = Factorization.from_json(cfg, xd)
        y = Factorization.from_json(cfg, yd)
        dim = fac_stable_hom_dim(x, y)
    _emit(_dumps({"stable_hom_dim": dim}), args.out)
    return 0


def _cmd_census(args):
    cfg = _config(args)
    if args.l is None:
        raise InputError("--l is required for census")
    try:
        bounds = Bounds.parse(args.bounds)
    except ValueError as e:
        raise InputError(str(e))
    try:
        report = class_census(cfg, args.l, bounds, seed=args.seed)
    except ValueError as e:
        raise InputError(str(e))
    except MatchFailure as e:
        raise CheckFailure(f"census failed: {e}")
    print(report.to_table())
    if args.out is not None:
        _emit(_dumps(report.to_json()), args.out)
    return 0


def _cmd_selftest(args):
    cfg = _config(args)
    from .randgen import random_chain, random_factorization, random_split_ses

    rng = random.Random(args.seed)
    l = args.l if args.l is not None else 2
    failures = []

    def check(name, fn):
        try:
            ok = fn()
        except Exception as e:  # noqa: BLE001 - report, do not crash
            ok = False
            name = f"{name} ({e})"
        print(f"{'pass' if ok else 'FAIL'}  {name}")
        if not ok:
            failures.append(name)

    xs = [random_factorization(cfg, l, rng) for _ in range(5)]
    check("zigzag", lambda: all(zigzag_check(x) is True for x in xs))

    def full_rotation():
        for x in xs:
            y = x
            for _ in range(l + 1):
                y = rotate(y)
            if not (y.twist == x.twist + 1 and y.maps == x.maps):
                return False
        return True

    check("rotation", full_rotation)
    check(
        "resolutions",
        lambda: all(
            termwise_split_check(nu_resolution(x, side), side)
            for x in xs
            for side in ("epic", "monic")
        ),
    )
    us = [random_chain(cfg, l, rng) for _ in range(5)]
    check(
        "round trip",
        lambda: all(chain_iso_test(cok(reconstruct(u)), u) for u in us),
    )
    check(
        "exactness",
        lambda: all(
            cok_exactness_check(*random_split_ses(cfg, l, rng))
            for _ in range(3)
        ),
    )
    check(
        "hom comparison",
        lambda: all(
            hom_dim_compare(x, y)[2] for x in xs[:3] for y in xs[:3]
        ),
    )
    if failures:
        raise CheckFailure(f"{len(failures)} selftest group(s) failed")
    return 0


# entry point --------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="facto",
        description="graded matrix factorizations of x^d and chains of "
        "monomorphisms over k[x]/(x^d)",
    )
    sub = p.add_subparsers(dest="command", required=True)
    specs = {
        "validate": "validate a factorization file and print its closing map",
        "cok": "apply the cokernel functor to a factorization",
        "reconstruct": "rebuild a factorization from a chain of monos",
        "rotate": "rotate a factorization (--steps, negative for inverse)",
        "nu": "build the projective factorization nu^k on given degrees",
        "resolve": "nu-resolution of a factorization (--side epic|monic)",
        "stable-hom": "stable hom dimension between two objects in a file",
        "census": "classify both sides within bounds and match them",
        "selftest": "run randomized property checks",
    }
    for name, help_text in specs.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--field", default="fp:5",
                        help="q or fp:<p> (default fp:5)")
        sp.add_argument("--d", type=int, default=None, help="exponent of x^d")
        sp.add_argument("--l", type=int, default=None,
                        help="factorizations have l+1 factors")
        sp.add_argument("--in", dest="infile", default=None,
                        help="input JSON file")
        sp.add_argument("--out", default=None, help="output file (atomic)")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for randomized searches")
        if name == "rotate":
            sp.add_argument("--steps", type=int, default=1)
        if name == "nu":
            sp.add_argument("--k", type=int, default=None)
            sp.add_argument("--degs", default=None,
                            help="comma-separated generator degrees")
        if name == "resolve":
            sp.add_argument("--side", choices=("epic", "monic"),
                            default="epic")
        if name == "census":
            sp.add_argument("--bounds", default="m=1,dim=2,window=2",
                            help="m=<int>,dim=<int>,window=<int>")
    return p


_COMMANDS = {
    "validate": _cmd_validate,
    "cok": _cmd_cok,
    "reconstruct": _cmd_reconstruct,
    "rotate": _cmd_rotate,
    "nu": _cmd_nu,
    "resolve": _cmd_resolve,
    "stable-hom": _cmd_stable_hom,
    "census": _cmd_census,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except CheckFailure as e:
        print(f"failure: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

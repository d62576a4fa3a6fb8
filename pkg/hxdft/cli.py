#!/usr/bin/env python

"""
hxdft command line

    hxdft roots --list
    hxdft roots quaternion 0.577350269 0.577350269 0.577350269 -o mu.json
    hxdft fwd signal.csv mu.json --scale unitary -o spectrum.csv
    hxdft inv spectrum.csv mu.json --scale unitary
    hxdft fwd2d grid.csv j.json k.json
    hxdft verify --all
    hxdft ellipse bc.json --m 64 --u0 1 --coeff 1,0
    hxdft bench --algebra quaternion --sizes 16,64,256
"""

import argparse
import logging
import math
import sys
from pathlib import Path

import logfire

from hxdft.core import formats
from hxdft.core.algebra import AlgebraTag, HValue
from hxdft.core.bench import DEFAULT_SIZES, format_table, run_benchmark
from hxdft.core.config import HxdftConfig, get_config, set_config
from hxdft.core.conic import fit_conic
from hxdft.core.dft import Direction, ScaleConvention, Signal1D, Signal2D, dft1d, dft2d_two_sided, phasor_path
from hxdft.core.errors import AgreementError, HxdftError, SignalFormatError
from hxdft.core.roots import (biquaternion_root, builtin_roots, cl11_root, cl20_root, complex_root,
                              quaternion_root, root2x2_ab, root2x2_ac, root2x2_bc)
from hxdft.core.utils import make_rng
from hxdft.core.verify import GROUPS, build_default_engine

logger = logging.getLogger(__name__)

ROOT_KINDS = ("complex", "quaternion", "biquaternion", "cl11", "cl20", "param-ab", "param-ac", "param-bc")


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
        logger.info(f"Wrote {output}")
    else:
        sys.stdout.write(text)


def _floats(values: list[str], count: int, kind: str) -> list[float]:
    if len(values) != count:
        raise HxdftError(f"roots {kind} takes {count} parameters, got {len(values)}")
    try:
        return [float(v) for v in values]
    except ValueError as e:
        raise HxdftError(f"roots {kind}: {e}") from e


def _snap(kind: str, params: list[float], config: HxdftConfig, strict: bool) -> list[float]:
    """
    Move parameters printed with a few digits onto the constraint surface.

    Only applies when the relative distance is within config.snap_tol.
    """
    if strict or not config.snap_parameters:
        return params

    if kind == "quaternion":
        norm = math.sqrt(sum(p * p for p in params))
        if norm == 0 or abs(norm - 1.0) > config.snap_tol or abs(norm * norm - 1.0) <= config.constraint_tol:
            return params
        snapped = [p / norm for p in params]
    elif kind in ("cl11", "cl20"):
        b1, b2, beta = params
        # Cl(1,1): b2 = +-sqrt(b1^2 + beta^2 + 1); Cl(2,0): beta = +-sqrt(b1^2 + b2^2 + 1)
        index = 1 if kind == "cl11" else 2
        others = [b1, beta] if kind == "cl11" else [b1, b2]
        target = math.copysign(math.sqrt(sum(p * p for p in others) + 1.0), params[index])
        if params[index] == target or abs(params[index] - target) > config.snap_tol * abs(target):
            return params
        snapped = list(params)
        snapped[index] = target
    else:
        return params

    logger.warning(f"Snapped {kind} parameters {params} onto the constraint surface: {snapped}")
    return snapped


def _make_root(kind: str, values: list[str], config: HxdftConfig, strict: bool):
    if kind == "complex":
        _floats(values, 0, kind)
        return complex_root()
    if kind == "quaternion":
        return quaternion_root(*_snap(kind, _floats(values, 3, kind), config, strict))
    if kind == "biquaternion":
        if len(values) not in (3, 4):
            raise HxdftError(f"roots biquaternion takes 3 or 4 parameters (x y z [w]), got {len(values)}")
        try:
            x, y, z, *w = [complex(v) for v in values]
        except ValueError as e:
            raise HxdftError(f"roots biquaternion: {e}") from e
        q = HValue.from_coeffs(AlgebraTag.BIQUATERNION, [w[0] if w else 0.0, x, y, z])
        return biquaternion_root(q)
    if kind == "cl11":
        return cl11_root(*_snap(kind, _floats(values, 3, kind), config, strict))
    if kind == "cl20":
        return cl20_root(*_snap(kind, _floats(values, 3, kind), config, strict))
    if kind == "param-ab":
        return root2x2_ab(*_floats(values, 2, kind))
    if kind == "param-ac":
        return root2x2_ac(*_floats(values, 2, kind))
    if kind == "param-bc":
        if len(values) not in (2, 3):
            raise HxdftError(f"roots param-bc takes b c [+|-], got {len(values)} parameters")
        b, c = _floats(values[:2], 2, kind)
        sign = -1 if len(values) == 3 and values[2].strip() in ("-", "-1") else 1
        if len(values) == 3 and values[2].strip() not in ("+", "-", "+1", "-1", "1"):
            raise HxdftError(f"roots param-bc sign must be + or -, got {values[2]!r}")
        return root2x2_bc(b, c, sign)
    raise HxdftError(f"Unknown root kind '{kind}'")


def cmd_roots(args: argparse.Namespace) -> int:
    if args.list:
        lines = []
        for name, root in builtin_roots().items():
            lines.append(f"# {name}: {root}")
            lines.append(formats.format_root(root).rstrip())
        _emit("\n".join(lines) + "\n", args.output)
        return 0

    if args.kind is None:
        raise HxdftError("roots needs a kind (or --list)")
    root = _make_root(args.kind, args.params, get_config(), args.strict)
    logger.info(f"Constructed {root}")
    _emit(formats.format_root(root), args.output)
    return 0


def _read_signal(path: str, kind: type):
    signal = formats.read_signal(path)
    if not isinstance(signal, kind):
        raise SignalFormatError(f"{path}: expected a {'1D' if kind is Signal1D else '2D'} signal file")
    return signal


def _transform_1d(args: argparse.Namespace, direction: Direction) -> int:
    signal = _read_signal(args.signal, Signal1D)
    root = formats.read_root(args.root)
    result = dft1d(signal, root, direction, ScaleConvention(args.scale), workers=args.workers)
    _emit(formats.format_signal(result), args.output)
    return 0


def _transform_2d(args: argparse.Namespace, direction: Direction) -> int:
    signal = _read_signal(args.signal, Signal2D)
    j_root = formats.read_root(args.j_root)
    k_root = formats.read_root(args.k_root)
    result = dft2d_two_sided(signal, j_root, k_root, direction, ScaleConvention(args.scale), workers=args.workers)
    _emit(formats.format_signal(result), args.output)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    config = get_config()
    groups = None if args.all or not args.algebra else args.algebra
    seed = config.seed if args.seed is None else args.seed

    engine = build_default_engine(config)
    ok = engine.run(groups, make_rng(seed))
    summary = engine.get_status_summary()
    selected = engine.get_all_properties(groups)
    passed = sum(p.passed for p in selected)
    report = engine.format_report(groups)
    _emit(f"{report}\n# {passed}/{len(selected)} properties passed (seed {seed}, "
          f"{summary['errors']} errors)\n", args.output)
    return 0 if ok else 1


def _parse_coeff(text: str) -> tuple[float, float]:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError as e:
        raise HxdftError(f"--coeff must be two comma-separated numbers, got {text!r}") from e
    return x, y


def cmd_ellipse(args: argparse.Namespace) -> int:
    root = formats.read_root(args.root)
    points = phasor_path(root, args.u0, args.m, _parse_coeff(args.coeff))
    fit = fit_conic(points)

    lines = [
        "# conic " + " ".join(f"{k}={v:.17g}" for k, v in zip("ABCDEF", fit.coefficients)),
        f"# residual {fit.residual:.3e}",
        f"# discriminant {fit.discriminant:.17g}",
        "x,y",
    ]
    lines += [f"{float(x.real):.17g},{float(y.real):.17g}" for x, y in points]
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        sizes = [int(v) for v in args.sizes.split(",")] if args.sizes else list(DEFAULT_SIZES)
    except ValueError as e:
        raise HxdftError(f"--sizes must be comma-separated integers, got {args.sizes!r}") from e
    if any(s < 1 for s in sizes):
        raise HxdftError("--sizes must be positive")

    try:
        results = run_benchmark(args.algebra, sizes, args.repeat, make_rng(args.seed), args.workers)
    except AgreementError as e:
        print(f"hxdft: {e}", file=sys.stderr)
        return 1
    _emit(format_table(results) + "\n", args.output)
    return 0


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        '-o', '--output', metavar='PATH', default=None,
        help='write to PATH instead of standard output')


def _add_transform_args(parser: argparse.ArgumentParser, two_sided: bool) -> None:
    parser.add_argument('signal', help='signal file')
    if two_sided:
        parser.add_argument('j_root', help='left root file (J)')
        parser.add_argument('k_root', help='right root file (K)')
    else:
        parser.add_argument('root', help='root file')
    parser.add_argument(
        '--scale', choices=[s.value for s in ScaleConvention], default=ScaleConvention.INVERSE_SCALED.value,
        help='which direction carries the 1/M factor (default: inverse)')
    parser.add_argument(
        '--workers', metavar='N', type=int, default=None,
        help='worker threads (default: HXDFT_WORKERS or 1)')
    _add_output(parser)


def build_parser() -> argparse.ArgumentParser:
    argparser = argparse.ArgumentParser(
        prog='hxdft',
        description='Matrix-exponential complex and hypercomplex DFTs')
    argparser.add_argument(
        '-v', '--verbose', action='store_true', dest='debug',
        help='print debug information')
    argparser.add_argument(
        '--profile', choices=['default', 'strict', 'desk'], default='default',
        help='configuration preset (default: default)')
    sub = argparser.add_subparsers(dest='command', required=True)

    roots = sub.add_parser('roots', help='construct a root of -1')
    roots.add_argument('kind', nargs='?', choices=ROOT_KINDS, help='root constructor')
    roots.add_argument('params', nargs='*', help='constructor parameters')
    roots.add_argument('--list', action='store_true', help='print the built-in catalog')
    roots.add_argument('--strict', action='store_true', help='do not snap parameters onto the constraint')
    _add_output(roots)
    roots.set_defaults(func=cmd_roots)

    for name, direction, two_sided in (('fwd', Direction.FORWARD, False), ('inv', Direction.INVERSE, False),
                                       ('fwd2d', Direction.FORWARD, True), ('inv2d', Direction.INVERSE, True)):
        parser = sub.add_parser(name, help=f"{direction.value} {'2D two-sided' if two_sided else '1D'} transform")
        _add_transform_args(parser, two_sided)
        handler = _transform_2d if two_sided else _transform_1d
        parser.set_defaults(func=lambda args, h=handler, d=direction: h(args, d))

    verify = sub.add_parser('verify', help='run the verification suite')
    verify.add_argument('--all', action='store_true', help='run every group')
    verify.add_argument('--algebra', action='append', choices=GROUPS, help='run one group (repeatable)')
    verify.add_argument('--seed', type=int, default=None, help='random seed (default: HXDFT_SEED or built-in)')
    _add_output(verify)
    verify.set_defaults(func=cmd_verify)

    ellipse = sub.add_parser('ellipse', help='phasor path of a 2x2 root and its conic fit')
    ellipse.add_argument('root', help='root file (2x2)')
    ellipse.add_argument('--m', type=int, default=64, help='number of points (default: 64)')
    ellipse.add_argument('--u0', type=int, default=1, help='frequency index (default: 1)')
    ellipse.add_argument('--coeff', default='1,0', help='spectral line value x,y (default: 1,0)')
    _add_output(ellipse)
    ellipse.set_defaults(func=cmd_ellipse)

    bench = sub.add_parser('bench', help='time reference against table-driven transforms')
    bench.add_argument('--algebra', choices=ROOT_KINDS, default='quaternion', help='catalog root (default: quaternion)')
    bench.add_argument('--sizes', default=None, help='comma-separated lengths (default: 16,64,256)')
    bench.add_argument('--repeat', type=int, default=3, help='runs of the fast path per size (default: 3)')
    bench.add_argument('--seed', type=int, default=0, help='random seed (default: 0)')
    bench.add_argument('--workers', type=int, default=None, help='worker threads for the fast path')
    _add_output(bench)
    bench.set_defaults(func=cmd_bench)

    return argparser


def main(argv: list[str] | None = None) -> int:
    """Parses the arguments received from the command line and runs the command"""
    args = build_parser().parse_args(argv)

    log_level = logging.DEBUG if args.debug else logging.INFO
    logging.basicConfig(format='%(levelname)s: %(message)s', level=log_level)
    logfire.configure(send_to_logfire='if-token-present', console=False)

    set_config(HxdftConfig.for_profile(args.profile))

    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"hxdft: {e}", file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())

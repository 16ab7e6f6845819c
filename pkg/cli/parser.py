"""Argument parsing: argv -> Job.

Values that begin with '-' followed by a comma list must use the
``--flag=value`` form, e.g. ``--raw=-1,-1,-1``.
"""

from __future__ import annotations

import argparse
from pathlib import Path
from typing import Any, Optional, Sequence

from cli import grammar
from cli.grammar import UsageError
from cli.runner import COMMAND_FORMULAS, HALL_FORMULAS, SUITE_FORMULAS
from core.lgroup import WeightType
from core.tubes import ExceptionalIndec
from models.schemas import Command, HallCase, Job, OutputFormat, VerifySuite
from services.quiverside import ANCHORS, QuiverCase, QuiverHallCase, weight_of_type
from utils.constants import (
    ASSOC_MAX_DIM,
    DIMS_MAX_LENGTH,
    GREEN_MAX_DIM,
    IDENTITY_F_MAX_N,
    IDENTITY_S_MAX_N,
    N_INVARIANT_MAX_LENGTH,
    PROG_NAME,
    ROTATION_MAX_DIM,
    RP_MAX_DIM,
    S_ENUM_FIELDS,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _at_least(minimum: int):
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}, got {value}")
        return value

    return convert


def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default="text")
    common.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")
    noise = common.add_mutually_exclusive_group()
    noise.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    noise.add_argument("--quiet", action="store_true", help="warnings only on stderr")
    return common


def _weighted() -> argparse.ArgumentParser:
    weighted = _Parser(add_help=False)
    weighted.add_argument("--weights", required=True, help="weight type, e.g. 2,3,5")
    return weighted


def _add_bundle_args(parser: argparse.ArgumentParser, suffix: str = "") -> None:
    parser.add_argument(f"--base{suffix}", required=True, help="L(p) element l1,..,lt;lc")
    parser.add_argument(f"--offset{suffix}", required=True, help="offset 0 <= x <= sum (p_i - 2) x_i")


def build_parser() -> argparse.ArgumentParser:
    common, weighted = _common(), _weighted()
    root = _Parser(prog=PROG_NAME, description="Exact Hall polynomials for weighted projective lines.")
    commands = root.add_subparsers(dest="command", required=True, metavar="COMMAND")

    f = commands.add_parser("f", parents=[common], help=COMMAND_FORMULAS[Command.F])
    f.add_argument("--n", type=int, required=True)

    s = commands.add_parser("s", parents=[common], help=COMMAND_FORMULAS[Command.S])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True, choices=range(4))

    lgroup = commands.add_parser("lgroup", help="operations in L(p)")
    lgroup_actions = lgroup.add_subparsers(dest="action", required=True, metavar="ACTION")
    nf = lgroup_actions.add_parser(
        "normal-form", parents=[common, weighted], help=COMMAND_FORMULAS[Command.NORMAL_FORM]
    )
    nf.add_argument("--raw", required=True, help="raw coefficients of x_1..x_t")
    nf.add_argument("--c", type=int, default=0, help="raw coefficient of c")

    euler = commands.add_parser("euler", parents=[common, weighted], help=COMMAND_FORMULAS[Command.EULER])
    euler.add_argument("--a", required=True, help="class, e.g. L:0,0,0;0+E:1,0,1")
    euler.add_argument("--b", required=True)

    hall = commands.add_parser("hall", help="closed-form Hall polynomials")
    cases = hall.add_subparsers(dest="case", required=True, metavar="CASE")
    parents = [common, weighted]

    lt = cases.add_parser("line-torsion", parents=parents, help=HALL_FORMULAS[HallCase.LINE_TORSION])
    lt.add_argument("--x", required=True, help="subobject O(x)")
    lt.add_argument("--y", required=True, help="middle term O(y)")
    lt.add_argument("--s", default="0", help="torsion quotient")

    sm = cases.add_parser("split-middle", parents=parents, help=HALL_FORMULAS[HallCase.SPLIT_MIDDLE])
    sm.add_argument("--line", required=True)
    sm.add_argument("--line-mid", required=True)
    sm.add_argument("--s", required=True, help="indecomposable torsion quotient")
    sm.add_argument("--s-mid", default="0", help="torsion summand of the middle term")

    sb = cases.add_parser("split-both", parents=parents, help=HALL_FORMULAS[HallCase.SPLIT_BOTH])
    sb.add_argument("--line", required=True)
    sb.add_argument("--line-mid", required=True)
    sb.add_argument("--s-sub", default="0")
    sb.add_argument("--s-mid", default="0")
    sb.add_argument("--s-quot", default="0")

    el = cases.add_parser("ext-lines", parents=parents, help=HALL_FORMULAS[HallCase.EXT_LINES])
    _add_bundle_args(el)
    el.add_argument("--l1", required=True, help="line subobject")
    el.add_argument("--l2", required=True, help="line quotient")

    eh = cases.add_parser("ext-homog", parents=parents, help=HALL_FORMULAS[HallCase.EXT_HOMOG])
    _add_bundle_args(eh)
    _add_bundle_args(eh, "2")
    eh.add_argument("--d", type=int, required=True)
    eh.add_argument("--n", type=int, required=True)

    ee = cases.add_parser("ext-exceptional", parents=parents, help=HALL_FORMULAS[HallCase.EXT_EXCEPTIONAL])
    _add_bundle_args(ee)
    _add_bundle_args(ee, "2")
    ee.add_argument("--s", required=True, help="exceptional torsion quotient")

    quiver = commands.add_parser("quiver", help="tame quiver side")
    quiver_actions = quiver.add_subparsers(dest="action", required=True, metavar="ACTION")
    qw = quiver_actions.add_parser("weight", parents=[common], help=COMMAND_FORMULAS[Command.QUIVER_WEIGHT])
    qw.add_argument("--family", required=True, help="A~:p,q | D~:n | E~6 | E~7 | E~8")
    case_help = "; ".join(f"{c.value}: {ANCHORS[c]}" for c in QuiverCase)
    qh = quiver_actions.add_parser("hall", parents=[common], help="Hall polynomials of quiver modules")
    qh.add_argument("--family", required=True)
    qh.add_argument("--case", required=True, choices=[c.value for c in QuiverCase], help=case_help)
    for flag in ("--line", "--line-mid", "--l1", "--l2", "--base", "--offset", "--base2", "--offset2"):
        qh.add_argument(flag)
    for flag in ("--torsion", "--s-sub", "--s-mid", "--s-quot", "--r1", "--r2"):
        qh.add_argument(flag)
    for flag in ("--n", "--d", "--N", "--pairing", "--hom-dim"):
        qh.add_argument(flag, type=int)
    qh.add_argument("--assume-exists", action="store_true", help="the exact sequence is known to exist")

    suite_help = "; ".join(f"{s.value}: {SUITE_FORMULAS[s]}" for s in VerifySuite)
    verify = commands.add_parser("verify", parents=[common], help="oracle and identity sweeps")
    verify.add_argument("--suite", required=True, choices=[s.value for s in VerifySuite], help=suite_help)
    verify.add_argument("--p", type=_at_least(1), default=2, help="tube rank")
    verify.add_argument("--q", type=_at_least(2), default=None, help="field size")
    verify.add_argument("--max-dim", type=_at_least(1), default=None)
    verify.add_argument("--max-length", type=_at_least(1), default=None)
    verify.add_argument("--weights", default=None)
    verify.add_argument("--n", type=int, default=None)
    verify.add_argument("--k", type=int, default=None, choices=range(4))
    verify.add_argument("--sigma", default=None, help="'+'-joined exceptional classes")
    verify.add_argument("--f-max", type=_at_least(0), default=IDENTITY_F_MAX_N)
    verify.add_argument("--s-max", type=_at_least(1), default=IDENTITY_S_MAX_N)
    return root


# --- Namespace -> Job ---


def _log_level(ns: argparse.Namespace) -> str:
    if ns.verbose:
        return "DEBUG"
    if ns.quiet:
        return "WARNING"
    return "INFO"


def _hall_arguments(ns: argparse.Namespace, w: WeightType) -> dict[str, Any]:
    case = HallCase(ns.case)
    args: dict[str, Any] = {"weights": w}
    if case is HallCase.LINE_TORSION:
        args.update(
            x=grammar.parse_element(w, ns.x),
            y=grammar.parse_element(w, ns.y),
            s=grammar.parse_torsion(w, ns.s),
        )
    elif case is HallCase.SPLIT_MIDDLE:
        args.update(
            line=grammar.parse_element(w, ns.line),
            line_mid=grammar.parse_element(w, ns.line_mid),
            s=grammar.parse_indec(w, ns.s),
            s_mid=grammar.parse_optional_indec(w, ns.s_mid),
        )
    elif case is HallCase.SPLIT_BOTH:
        args.update(
            line=grammar.parse_element(w, ns.line),
            line_mid=grammar.parse_element(w, ns.line_mid),
            s_sub=grammar.parse_optional_indec(w, ns.s_sub),
            s_mid=grammar.parse_optional_indec(w, ns.s_mid),
            s_quot=grammar.parse_optional_indec(w, ns.s_quot),
        )
    else:
        args["bundle"] = grammar.bundle_from(
            w, grammar.parse_element(w, ns.base), grammar.parse_element(w, ns.offset)
        )
        if case is HallCase.EXT_LINES:
            args.update(l1=grammar.parse_element(w, ns.l1), l2=grammar.parse_element(w, ns.l2))
        else:
            args["bundle2"] = grammar.bundle_from(
                w, grammar.parse_element(w, ns.base2), grammar.parse_element(w, ns.offset2)
            )
            if case is HallCase.EXT_HOMOG:
                args.update(d=ns.d, n=ns.n)
            else:
                args["s"] = grammar.parse_indec(w, ns.s)
    return args


def _optional(parse, w: WeightType, text: Optional[str]):
    return None if text is None else parse(w, text)


def _quiver_case(ns: argparse.Namespace) -> QuiverHallCase:
    family = grammar.parse_family(ns.family)
    w = weight_of_type(family)
    bundle = bundle2 = None
    if ns.base is not None or ns.offset is not None:
        bundle = grammar.bundle_from(w, grammar.parse_element(w, ns.base or ""), grammar.parse_element(w, ns.offset or ""))
    if ns.base2 is not None or ns.offset2 is not None:
        bundle2 = grammar.bundle_from(w, grammar.parse_element(w, ns.base2 or ""), grammar.parse_element(w, ns.offset2 or ""))
    return QuiverHallCase(
        case=QuiverCase(ns.case),
        family=family,
        line=_optional(grammar.parse_element, w, ns.line),
        line_mid=_optional(grammar.parse_element, w, ns.line_mid),
        torsion=_optional(grammar.parse_torsion, w, ns.torsion),
        s_sub=_optional(grammar.parse_optional_indec, w, ns.s_sub),
        s_mid=_optional(grammar.parse_optional_indec, w, ns.s_mid),
        s_quot=_optional(grammar.parse_optional_indec, w, ns.s_quot),
        r1=_optional(grammar.parse_optional_indec, w, ns.r1),
        r2=_optional(grammar.parse_torsion, w, ns.r2),
        bundle=bundle,
        bundle2=bundle2,
        l1=_optional(grammar.parse_element, w, ns.l1),
        l2=_optional(grammar.parse_element, w, ns.l2),
        n=ns.n,
        d=ns.d,
        n_value=ns.N,
        pairing=ns.pairing,
        hom_dim=ns.hom_dim,
        assume_exists=ns.assume_exists,
    )


_MAX_DIM_DEFAULTS = {
    VerifySuite.GREEN: GREEN_MAX_DIM,
    VerifySuite.RP: RP_MAX_DIM,
    VerifySuite.ROTATION: ROTATION_MAX_DIM,
    VerifySuite.ASSOC: ASSOC_MAX_DIM,
}


def _verify_params(ns: argparse.Namespace) -> dict[str, Any]:
    suite = VerifySuite(ns.suite)
    if suite in _MAX_DIM_DEFAULTS:
        max_dim = ns.max_dim if ns.max_dim is not None else _MAX_DIM_DEFAULTS[suite]
        return {"p": ns.p, "q": ns.q or 2, "max_dim": max_dim}
    if suite in (VerifySuite.DIMS, VerifySuite.AUTS):
        max_length = ns.max_length if ns.max_length is not None else DIMS_MAX_LENGTH
        return {"p": ns.p, "q": ns.q or 2, "max_length": max_length}
    if suite is VerifySuite.S_ENUM:
        w = grammar.parse_weights(ns.weights or "2,2,2")
        params: dict[str, Any] = {"w": w}
        if ns.n is not None:
            params["n_values"] = (ns.n,)
        if ns.q is not None:
            params["q_values"] = (ns.q,)
        if ns.sigma is not None:
            sigma = tuple(grammar.parse_indec(w, part) for part in ns.sigma.split("+"))
            if not all(isinstance(s, ExceptionalIndec) for s in sigma):
                raise UsageError("sigma classes must be exceptional 'E:i,j,n'", "sigma")
            if ns.k is not None and ns.k != len(sigma):
                raise UsageError(f"--k {ns.k} does not match {len(sigma)} sigma classes", "k")
            params.update(sigma=sigma, k_values=(len(sigma),))
        elif ns.k is not None:
            params["k_values"] = (ns.k,)
        params.setdefault("q_values", S_ENUM_FIELDS)
        return params
    if suite is VerifySuite.SWEEP_EXT:
        params = {
            "max_length": ns.max_length if ns.max_length is not None else N_INVARIANT_MAX_LENGTH
        }
        if ns.weights is not None:
            w = grammar.parse_weights(ns.weights)
            params.update(weight_types=(w,), n_invariant_weights=(w,))
        return params
    return {"f_max": ns.f_max, "s_max": ns.s_max}


def parse_args(argv: Sequence[str]) -> Job:
    ns = build_parser().parse_args(list(argv))
    common = {
        "output_format": OutputFormat(ns.format),
        "out": ns.out,
        "log_level": _log_level(ns),
    }
    weights = getattr(ns, "weights", None)
    if ns.command == "f":
        return Job(command=Command.F, arguments={"n": ns.n}, **common)
    if ns.command == "s":
        return Job(command=Command.S, arguments={"n": ns.n, "k": ns.k}, **common)
    if ns.command == "lgroup":
        w = grammar.parse_weights(weights)
        raw = grammar.parse_ints(ns.raw, "raw coefficients")
        if len(raw) != w.t:
            raise UsageError(f"expected {w.t} raw coefficients, got {len(raw)}", "raw")
        return Job(
            command=Command.NORMAL_FORM,
            weights=str(w),
            arguments={"weights": w, "raw": raw, "c": ns.c},
            **common,
        )
    if ns.command == "euler":
        w = grammar.parse_weights(weights)
        arguments = {"weights": w, "a": grammar.parse_class(w, ns.a), "b": grammar.parse_class(w, ns.b)}
        return Job(command=Command.EULER, weights=str(w), arguments=arguments, **common)
    if ns.command == "hall":
        w = grammar.parse_weights(weights)
        return Job(
            command=Command.HALL,
            weights=str(w),
            subcase=ns.case,
            arguments=_hall_arguments(ns, w),
            **common,
        )
    if ns.command == "quiver":
        if ns.action == "weight":
            family = grammar.parse_family(ns.family)
            return Job(command=Command.QUIVER_WEIGHT, arguments={"family": family}, **common)
        case = _quiver_case(ns)
        return Job(
            command=Command.QUIVER_HALL,
            weights=str(case.weights),
            subcase=ns.case,
            arguments={"family": case.family, "case": case},
            **common,
        )
    params = _verify_params(ns)
    return Job(
        command=Command.VERIFY,
        weights=str(params["w"]) if "w" in params else weights,
        subcase=ns.suite,
        arguments={"params": params},
        **common,
    )

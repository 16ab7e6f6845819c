"""Execute parsed jobs against the engine."""

from __future__ import annotations

import logging
import time
from typing import Any, Callable

from core.lgroup import normal_form
from core.sheafcat import euler_form
from models.schemas import Command, HallCase, Job, Report, VerifySuite
from services import hall, quiverside
from services.verification import run_suite

logger = logging.getLogger(__name__)


# --- Formula anchors ---

COMMAND_FORMULAS: dict[Command, str] = {
    Command.F: "f_n polynomial",
    Command.S: "s_n^(k) polynomial",
    Command.NORMAL_FORM: "normal form in L(p)",
    Command.EULER: "Euler form on K_0",
    Command.QUIVER_WEIGHT: "tame quiver type to weight type",
}

HALL_FORMULAS: dict[HallCase, str] = {
    HallCase.LINE_TORSION: "line bundle over torsion quotient",
    HallCase.SPLIT_MIDDLE: "line plus torsion middle term over indecomposable torsion",
    HallCase.SPLIT_BOTH: "line plus torsion sub and middle terms",
    HallCase.EXT_LINES: "extension bundle from two line bundles",
    HallCase.EXT_HOMOG: "extension bundle over homogeneous torsion quotient",
    HallCase.EXT_EXCEPTIONAL: "extension bundle over exceptional torsion quotient",
}

SUITE_FORMULAS: dict[VerifySuite, str] = {
    VerifySuite.GREEN: "Green's formula",
    VerifySuite.RP: "Riedtmann-Peng formula",
    VerifySuite.ROTATION: "derived Hall rotation on the heart",
    VerifySuite.ASSOC: "Hall algebra associativity",
    VerifySuite.S_ENUM: "torsion shape enumeration against s_n^(k)",
    VerifySuite.DIMS: "tube Hom and Ext dimensions",
    VerifySuite.AUTS: "tube automorphism counts",
    VerifySuite.SWEEP_EXT: "extension bundle orthogonality and N invariant",
    VerifySuite.IDENTITIES: "f and s polynomial identities",
}


def formula_of(job: Job) -> str:
    if job.command is Command.HALL:
        return HALL_FORMULAS[HallCase(job.subcase)]
    if job.command is Command.QUIVER_HALL:
        return quiverside.ANCHORS[job.arguments["case"].case]
    if job.command is Command.VERIFY:
        return SUITE_FORMULAS[VerifySuite(job.subcase)]
    return COMMAND_FORMULAS[job.command]


# --- Handlers ---


def _hall(job: Job) -> Any:
    a = job.arguments
    case = HallCase(job.subcase)
    if case is HallCase.LINE_TORSION:
        return hall.hall_line_quotient_torsion(a["weights"], a["x"], a["y"], a["s"])
    if case is HallCase.SPLIT_MIDDLE:
        return hall.hall_split_middle(a["weights"], a["line"], a["line_mid"], a["s"], a["s_mid"])
    if case is HallCase.SPLIT_BOTH:
        return hall.hall_split_both(
            a["weights"], a["line"], a["line_mid"], a["s_sub"], a["s_mid"], a["s_quot"]
        )
    if case is HallCase.EXT_LINES:
        return hall.hall_ext_from_lines(a["bundle"], a["l1"], a["l2"])
    if case is HallCase.EXT_HOMOG:
        return hall.hall_ext_homog_torsion(a["bundle"], a["bundle2"], a["d"], a["n"])
    return hall.hall_ext_except_torsion(a["bundle"], a["bundle2"], a["s"])


_HANDLERS: dict[Command, Callable[[Job], Any]] = {
    Command.F: lambda job: hall.f_poly(job.arguments["n"]),
    Command.S: lambda job: hall.s_poly(job.arguments["n"], job.arguments["k"]),
    Command.NORMAL_FORM: lambda job: normal_form(
        job.arguments["weights"], job.arguments["raw"], job.arguments["c"]
    ),
    Command.EULER: lambda job: euler_form(job.arguments["a"], job.arguments["b"]),
    Command.HALL: _hall,
    Command.QUIVER_WEIGHT: lambda job: quiverside.weight_of_type(job.arguments["family"]),
    Command.QUIVER_HALL: lambda job: quiverside.quiver_hall(job.arguments["case"]),
}


def _show(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return str(value)


def _inputs(job: Job) -> dict[str, str]:
    arguments = dict(job.arguments)
    arguments.update(arguments.pop("params", {}))
    return {
        key: _show(value)
        for key, value in arguments.items()
        if key not in ("weights", "w", "case") and value is not None
    }


def execute(job: Job) -> Report:
    """Run the job; engine errors propagate to the caller."""
    started = time.perf_counter()
    report = Report(
        command=job.command,
        formula=formula_of(job),
        weights=job.weights,
        inputs=_inputs(job),
    )
    if job.command is Command.VERIFY:
        records = run_suite(VerifySuite(job.subcase), **job.arguments["params"])
        report.records = records
        # a suite that ran nothing has not passed
        report.verdict = bool(records) and all(r.verdict for r in records)
    else:
        report.result = str(_HANDLERS[job.command](job))
    report.elapsed_ms = (time.perf_counter() - started) * 1000.0
    logger.info("%s finished in %.1f ms", job.command.value, report.elapsed_ms)
    return report

"""Verification suites.

Each suite sweeps a family of small instances, evaluates both sides of an
identity exactly and returns one ``CheckRecord`` per instance. Instances
are evaluated on the worker pool from ``utils.parallel``; record order
follows the sweep order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Optional, Sequence

from core.extbundle import (
    ExtensionBundle,
    admissible_offsets,
    k0_class_ext,
    locate_extension_bundle,
    orthogonal_pair_check,
)
from core.lgroup import WeightType
from core.polyring import poly_eval
from core.tubes import (
    ExceptionalIndec,
    HomogeneousIndec,
    aut_count,
    hom_line_to_top,
    iter_exceptional,
    k0_class_torsion,
    tube_hom_ext_dims,
)
from models.schemas import CheckRecord, VerifySuite
from services import hall, oracle
from services.oracle import IsoType
from services.quiverside import derived_rotation_check
from utils.constants import (
    ASSOC_MAX_DIM,
    BUNDLE_SEARCH_RADIUS,
    DIMS_MAX_LENGTH,
    GREEN_MAX_DIM,
    IDENTITY_F_MAX_N,
    IDENTITY_S_MAX_N,
    N_INVARIANT_MAX_LENGTH,
    N_INVARIANT_WEIGHTS,
    ROTATION_MAX_DIM,
    RP_MAX_DIM,
    S_ENUM_FIELDS,
    SWEEP_EXT_WEIGHTS,
)
from utils.parallel import ordered_map

logger = logging.getLogger(__name__)


def format_value(value) -> str:
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)
    return str(value)


def _record(suite: VerifySuite, inputs: str, lhs, rhs, verdict: bool, note: str = "") -> CheckRecord:
    return CheckRecord(
        suite=suite,
        inputs=inputs,
        lhs=format_value(lhs),
        rhs=format_value(rhs),
        verdict=bool(verdict),
        note=note,
    )


# --- Tube oracle suites ---


def _pairs_up_to(p: int, max_dim: int) -> list[tuple[IsoType, IsoType]]:
    types = oracle.iso_types_up_to(p, max_dim)
    return [(a, b) for a in types for b in types if a.total_dim + b.total_dim <= max_dim]


def green_suite(p: int, q: int, max_dim: int = GREEN_MAX_DIM) -> list[CheckRecord]:
    """Green's formula on every quadruple whose middle terms have total dimension <= max_dim."""
    pairs = _pairs_up_to(p, max_dim)
    by_class: dict[tuple[int, ...], list[tuple[IsoType, IsoType]]] = {}
    for a, b in pairs:
        key = tuple(u + v for u, v in zip(a.dimension_vector, b.dimension_vector))
        by_class.setdefault(key, []).append((a, b))
    instances = [
        (m, n, x, y)
        for group in by_class.values()
        for m, n in group
        for x, y in group
    ]

    def check(instance) -> CheckRecord:
        m, n, x, y = instance
        result = oracle.green_identity_check(m, n, x, y, q)
        inputs = f"p={p} q={q} M={m} N={n} X={x} Y={y}"
        return _record(VerifySuite.GREEN, inputs, result.lhs, result.rhs, result.holds, result.note)

    logger.info("green: %d instances for p=%d q=%d", len(instances), p, q)
    return ordered_map(check, instances)


def rp_suite(p: int, q: int, max_dim: int = RP_MAX_DIM) -> list[CheckRecord]:
    def check(pair) -> CheckRecord:
        a, b = pair
        result = oracle.riedtmann_peng_check(a, b, q)
        return _record(VerifySuite.RP, f"p={p} q={q} A={a} B={b}", result.lhs, result.rhs, result.holds)

    return ordered_map(check, _pairs_up_to(p, max_dim))


def rotation_suite(p: int, q: int, max_dim: int = ROTATION_MAX_DIM) -> list[CheckRecord]:
    def check(pair) -> CheckRecord:
        x, y = pair
        result = derived_rotation_check(x, y, q)
        inputs = f"p={p} q={q} X={x} Y={y}"
        return _record(VerifySuite.ROTATION, inputs, result.lhs, result.rhs, result.holds, result.note)

    return ordered_map(check, _pairs_up_to(p, max_dim))


def assoc_suite(p: int, q: int, max_dim: int = ASSOC_MAX_DIM) -> list[CheckRecord]:
    types = oracle.iso_types_up_to(p, max_dim)
    instances = []
    for a, b, c in product(types, repeat=3):
        if a.total_dim + b.total_dim + c.total_dim > max_dim:
            continue
        target = tuple(
            u + v + w for u, v, w in zip(a.dimension_vector, b.dimension_vector, c.dimension_vector)
        )
        instances.extend((a, b, c, m) for m in oracle.iso_types_of_dimension(p, target))

    def check(instance) -> CheckRecord:
        a, b, c, m = instance
        result = oracle.associativity_check(a, b, c, m, q)
        inputs = f"p={p} q={q} A={a} B={b} C={c} M={m}"
        return _record(VerifySuite.ASSOC, inputs, result.lhs, result.rhs, result.holds)

    return ordered_map(check, instances)


def _indecomposables(p: int, max_length: int) -> list[IsoType]:
    return [IsoType(p, ((j, n),)) for n in range(1, max_length + 1) for j in range(p)]


def dims_suite(p: int, q: int, max_length: int = DIMS_MAX_LENGTH) -> list[CheckRecord]:
    """Hom and Ext dimensions: intertwiner rank and quiver Euler form against the tube formulas."""
    indecs = _indecomposables(p, max_length)

    def check(pair) -> CheckRecord:
        a, b = pair
        source, target = oracle.build_rep(a, q), oracle.build_rep(b, q)
        hom = oracle.hom_dim(source, target)
        ext = hom - oracle.quiver_euler(p, a.dimension_vector, b.dimension_vector)
        expected = tube_hom_ext_dims(p, a.parts[0], b.parts[0])
        lhs = f"hom={hom},ext={ext}"
        rhs = f"hom={expected.dim_hom},ext={expected.dim_ext_a_to_b}"
        return _record(VerifySuite.DIMS, f"p={p} q={q} A={a} B={b}", lhs, rhs, lhs == rhs)

    return ordered_map(check, [(a, b) for a in indecs for b in indecs])


def auts_suite(p: int, q: int, max_length: int = DIMS_MAX_LENGTH) -> list[CheckRecord]:
    def check(iso: IsoType) -> CheckRecord:
        (j, n), = iso.parts
        indec = HomogeneousIndec(1, n) if p == 1 else ExceptionalIndec(1, j, n, p)
        brute = oracle.aut_size(iso, q)
        closed = aut_count(indec).evaluate(q)
        return _record(VerifySuite.AUTS, f"p={p} q={q} S={iso}", brute, closed, brute == closed)

    return ordered_map(check, _indecomposables(p, max_length))


# --- Closed-point enumeration ---


@dataclass(frozen=True, slots=True)
class SEnumInstance:
    weights: WeightType
    n: int
    k: int
    sigma: tuple[ExceptionalIndec, ...]
    q: int

    def describe(self) -> str:
        sigma = "+".join(str(s) for s in self.sigma) or "-"
        return f"weights={self.weights} n={self.n} k={self.k} sigma={sigma} q={self.q}"


def sigma_choices(w: WeightType, k: int) -> list[tuple[ExceptionalIndec, ...]]:
    """Every choice of k exceptional classes below delta in distinct tubes."""
    choices = []
    for tubes in combinations(range(1, w.t + 1), k):
        per_tube = [
            [ExceptionalIndec(i, j, m, w.p(i)) for m in range(1, w.p(i)) for j in range(w.p(i))]
            for i in tubes
        ]
        choices.extend(product(*per_tube))
    return choices


def s_enum_suite(
    w: WeightType,
    n_values: Sequence[int] = (0, 1, 2),
    k_values: Sequence[int] = (0, 1, 2, 3),
    q_values: Sequence[int] = S_ENUM_FIELDS,
    sigma: Optional[Sequence[ExceptionalIndec]] = None,
) -> list[CheckRecord]:
    """Weighted enumeration of torsion shapes against s_n^(k) evaluated at q."""
    instances = []
    for n, k, q in product(n_values, k_values, q_values):
        options = [tuple(sigma)] if sigma is not None else sigma_choices(w, k)
        instances.extend(SEnumInstance(w, n, k, choice, q) for choice in options)

    def check(instance: SEnumInstance) -> CheckRecord:
        enumerated = oracle.s_enumerate_at(
            instance.weights, instance.n, instance.k, instance.sigma, instance.q
        )
        closed = poly_eval(hall.s_poly(instance.n, instance.k), instance.q)
        return _record(VerifySuite.S_ENUM, instance.describe(), enumerated, closed, enumerated == closed)

    return ordered_map(check, instances)


# --- Extension bundle sweeps ---


def _orthogonality_records(w: WeightType) -> list[CheckRecord]:
    records = []
    for offset in admissible_offsets(w):
        e = ExtensionBundle(w.zero, offset)
        report = orthogonal_pair_check(e)
        lhs = (
            f"hom={report.hom_quotient_to_sub},{report.hom_sub_to_quotient}"
            f" ext={report.ext_sub_to_quotient},{report.ext_quotient_to_sub}"
        )
        records.append(
            _record(
                VerifySuite.SWEEP_EXT,
                f"weights={w} orthogonal {e}",
                lhs,
                "hom=0,0 ext=0,1",
                report.is_orthogonal,
            )
        )
        forward = hall.hall_ext_from_lines(e, e.sub_line, e.quotient_line)
        backward = hall.hall_ext_from_lines(e, e.quotient_line, e.sub_line)
        records.append(
            _record(
                VerifySuite.SWEEP_EXT,
                f"weights={w} degenerate {e}",
                f"{forward},{backward}",
                "1,0",
                forward == 1 and backward == 0,
            )
        )
    return records


def _n_invariant_records(w: WeightType, max_length: int) -> list[CheckRecord]:
    records = []
    for offset in admissible_offsets(w):
        e = ExtensionBundle(w.zero, offset)
        for s in iter_exceptional(w, max_length):
            if hom_line_to_top(w, e.quotient_line, s) + hom_line_to_top(w, e.sub_line, s) == 0:
                continue
            target = k0_class_ext(e) - k0_class_torsion(w, s)
            e2 = locate_extension_bundle(w, target, around=e.base, radius=BUNDLE_SEARCH_RADIUS)
            if e2 is None:
                logger.debug("no extension bundle of class [%s] - [%s]", e, s)
                continue
            report = hall.n_invariant_check(e, e2, s)
            records.append(
                _record(
                    VerifySuite.SWEEP_EXT,
                    f"weights={w} n-invariant E={e} E'={e2} S={s}",
                    report.n_from_tube,
                    report.n_from_euler,
                    report.consistent,
                    f"case {report.case}",
                )
            )
    return records


def sweep_ext_suite(
    weight_types: Sequence[WeightType] = tuple(WeightType(ws) for ws in SWEEP_EXT_WEIGHTS),
    n_invariant_weights: Sequence[WeightType] = tuple(WeightType(ws) for ws in N_INVARIANT_WEIGHTS),
    max_length: int = N_INVARIANT_MAX_LENGTH,
) -> list[CheckRecord]:
    records = [r for chunk in ordered_map(_orthogonality_records, list(weight_types)) for r in chunk]
    for w in n_invariant_weights:
        records.extend(_n_invariant_records(w, max_length))
    return records


# --- Polynomial identities ---


def identities_suite(f_max: int = IDENTITY_F_MAX_N, s_max: int = IDENTITY_S_MAX_N) -> list[CheckRecord]:
    records = []
    for n in range(f_max + 1):
        holds = hall.f_tail_identity_holds(n)
        lhs = "(q - 1)*sum q^t f(n-2t)"
        records.append(_record(VerifySuite.IDENTITIES, f"f-tail n={n}", lhs, "f(n+1) + (-1)^n", holds))
    for n in range(1, s_max + 1):
        for name, holds in hall.s_f_bridge(n).items():
            lhs, rhs = name.split(" = ")
            records.append(_record(VerifySuite.IDENTITIES, f"s-f n={n}", lhs, rhs, holds))
    return records


SuiteRunner = Callable[..., list[CheckRecord]]

SUITES: dict[VerifySuite, SuiteRunner] = {
    VerifySuite.GREEN: green_suite,
    VerifySuite.RP: rp_suite,
    VerifySuite.ROTATION: rotation_suite,
    VerifySuite.ASSOC: assoc_suite,
    VerifySuite.S_ENUM: s_enum_suite,
    VerifySuite.DIMS: dims_suite,
    VerifySuite.AUTS: auts_suite,
    VerifySuite.SWEEP_EXT: sweep_ext_suite,
    VerifySuite.IDENTITIES: identities_suite,
}


def run_suite(suite: VerifySuite, **params) -> list[CheckRecord]:
    records = SUITES[suite](**params)
    failed = sum(1 for r in records if not r.verdict)
    if failed:
        logger.warning("%s: %d of %d checks failed", suite.value, failed, len(records))
    else:
        logger.info("%s: %d checks passed", suite.value, len(records))
    return records

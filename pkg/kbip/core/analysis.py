#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Cycle-structure checks for the K_{p^2,p^2} coloring.

For every factor (a,b) the permutation P_(a,b) = inverse(m) o pi_(a,b) is
computed and compared against its closed-form description:

- exactly one fixed point, the top end of the common edge
  (ay', bx') -> (-ax', -by')
- P_(a,b) = p2 o p1 o p0 with p0(c,d) = (x(a+c), y(b+d)), p1 adding ya to
  the second coordinate on column c = xa and p2 adding x^2 b to the first
  coordinate on row d = 0
- P_(xa,xb) = s^-1 o P_(a,b) o s for s(c,d) = (yc, yd)
- the cycle type of each case (zero_zero, zero_star, star_zero, star_star)

The permutation engine is the oracle; the formulas are expected values.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from ..config import AnalysisError, Config
from ..utils.labels import decode_label, encode_pair, format_label
from .coloring import CLASS_TWO, LabelPartition, p_squared_partition
from .factorization import FamilyKind, p_squared_matching, transversal_matching
from .field import FieldContext, discrete_log
from .perm import (
    CycleDecomposition,
    Permutation,
    compose,
    conjugate,
    cycle_decomposition,
    fixed_points,
    format_cycles,
    inverse,
)

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class CaseKind(Enum):
    """Which of a and b vanish mod p; each case has its own cycle structure."""

    ZERO_ZERO = "zero_zero"
    ZERO_STAR = "zero_star"
    STAR_ZERO = "star_zero"
    STAR_STAR = "star_star"


def classify(ctx: FieldContext, a: int, b: int) -> CaseKind:
    """
    Case of the factor labelled (a,b).

    Args:
        ctx: Field context
        a, b: Factor label, reduced mod p first

    Returns:
        ZERO_ZERO, ZERO_STAR (a = 0), STAR_ZERO (b = 0) or STAR_STAR

    Example:
        >>> classify(make_context(5), 0, 3), classify(make_context(5), 6, 5)
        (<CaseKind.ZERO_STAR: 'zero_star'>, <CaseKind.STAR_ZERO: 'star_zero'>)
    """
    a, b = a % ctx.p, b % ctx.p
    if a == 0:
        return CaseKind.ZERO_ZERO if b == 0 else CaseKind.ZERO_STAR
    return CaseKind.STAR_ZERO if b == 0 else CaseKind.STAR_STAR


@dataclass
class CaseReport:
    """
    Cycle structure of inverse(m) o pi_(a,b).

    cycles holds the canonical cycles of length >= 2; class2_per_cycle is
    aligned with it. t, f1_zero_row and f2_zero_row are set for star_star
    only and count the labels (c,0) in F1 and F2.
    """

    p: int
    a: int
    b: int
    case_kind: CaseKind
    fixed_label: int
    cycles: Tuple[Tuple[int, ...], ...]
    class2_per_cycle: List[int]
    partition_ok: bool
    t: Optional[int] = None
    f1_zero_row: Optional[int] = None
    f2_zero_row: Optional[int] = None
    class2_labels: Tuple[int, ...] = field(default=(), repr=False)

    @property
    def cycle_lengths(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    @property
    def label(self) -> int:
        return encode_pair(self.a, self.b, self.p)

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "a": self.a,
            "b": self.b,
            "case": self.case_kind.value,
            "fixed": list(decode_label(self.fixed_label, self.p)),
            "cycles": [{"len": len(c), "class2": k} for c, k in zip(self.cycles, self.class2_per_cycle)],
        }
        if self.t is not None:
            payload["t"] = self.t
        payload["partition_ok"] = self.partition_ok
        return payload


def _pair_perm(ctx: FieldContext, fn) -> Permutation:
    p = ctx.p
    return Permutation.from_function(p * p, lambda v: encode_pair(*fn(*divmod(v, p)), p))


def factor_product(ctx: FieldContext, a: int, b: int) -> Permutation:
    """
    The permutation whose cycles are the cycles of M u M_(a,b).

    Args:
        ctx: Field context
        a, b: Factor label

    Returns:
        inverse(m) o pi_(a,b) on the labels c*p+d: apply pi_(a,b), then inverse(m)
    """
    m = transversal_matching(FamilyKind.P_SQUARED, ctx)
    return compose(inverse(m), p_squared_matching(ctx, a, b))


def common_edge(ctx: FieldContext, a: int, b: int) -> Tuple[Pair, Pair]:
    """
    The unique edge shared by M and M_(a,b): (ay', bx') -> (-ax', -by').

    Example:
        >>> common_edge(make_context(5), 1, 1)
        ((3, 1), (4, 2))
    """
    source = (ctx.mul(a, ctx.y_prime), ctx.mul(b, ctx.x_prime))
    target = (ctx.neg(ctx.mul(a, ctx.x_prime)), ctx.neg(ctx.mul(b, ctx.y_prime)))
    return source, target


def decompose_factor_perm(ctx: FieldContext, a: int, b: int) -> Tuple[Permutation, Permutation, Permutation]:
    """
    The three factors with inverse(m) o pi_(a,b) = p2 o p1 o p0.

    Returns:
        (p0, p1, p2) where p0(c,d) = (x(a+c), y(b+d)), p1 adds ya to d on
        column c = xa and p2 adds x^2 b to c on row d = 0
    """
    p, x, y = ctx.p, ctx.x, ctx.y
    column = (x * a) % p
    p0 = _pair_perm(ctx, lambda c, d: (x * (a + c), y * (b + d)))
    p1 = _pair_perm(ctx, lambda c, d: (c, d + y * a) if c == column else (c, d))
    p2 = _pair_perm(ctx, lambda c, d: (c + x * x * b, d) if d == 0 else (c, d))
    return p0, p1, p2


def scaling(ctx: FieldContext, factor: int) -> Permutation:
    """
    Scaling of both coordinates, (c,d) -> (factor*c, factor*d).

    Args:
        ctx: Field context
        factor: Nonzero residue; scaling by 0 is not a permutation

    Returns:
        Permutation of the p^2 labels

    Raises:
        PermutationError: If factor is 0 mod p
    """
    return _pair_perm(ctx, lambda c, d: (factor * c, factor * d))


def conjugation_check(ctx: FieldContext, a: int, b: int) -> bool:
    """
    True iff P_(xa,xb) = s^-1 o P_(a,b) o s with s(c,d) = (yc, yd).

    When this holds the cycles of (xa,xb) are those of (a,b) scaled by x,
    which is what lets survey reason about one representative per orbit.
    """
    lhs = factor_product(ctx, ctx.x * a, ctx.x * b)
    rhs = conjugate(factor_product(ctx, a, b), scaling(ctx, ctx.y))
    return lhs == rhs


def zero_star_anchors(ctx: FieldContext, b: int) -> Tuple[int, int]:
    """Class-2 labels (x^s, bx') and (x^(s-1), bx') of the short cycle, with bx' = x^s."""
    p = ctx.p
    d = (b * ctx.x_prime) % p
    s = discrete_log(ctx, d)
    return encode_pair(pow(ctx.x, s, p), d, p), encode_pair(pow(ctx.x, s - 1, p) if s else ctx.y, d, p)


def star_zero_anchors(ctx: FieldContext, a: int) -> Tuple[int, int]:
    """Class-2 labels (ay', y^s) and (ay', y^(s-1)) of the short cycle, with ay' = y^s."""
    p = ctx.p
    c = (a * ctx.y_prime) % p
    s = discrete_log(ctx, c, base=ctx.y)
    return encode_pair(c, pow(ctx.y, s, p), p), encode_pair(c, pow(ctx.y, s - 1, p) if s else ctx.x, p)


def star_star_t(ctx: FieldContext, a: int, b: int) -> int:
    """t = (x b'^2 - 1)^-1 with b' = b/a, as an integer in 1..p-1."""
    b_norm = ctx.mul(b, ctx.inv(a))
    return ctx.inv(ctx.mul(ctx.x, b_norm, b_norm) - 1)


def _fail(ctx: FieldContext, a: int, b: int, message: str,
          decomposition: Optional[CycleDecomposition] = None, class2: Sequence[int] = ()):
    if decomposition is not None:
        rendered = format_cycles(decomposition, show_singletons=True,
                                 label_fmt=lambda v: format_label(v, ctx.p), flagged=class2)
        message = f"{message}\n  cycles: {rendered}"
    logger.error(message)
    raise AnalysisError(message, a=a, b=b)


def _check_short_cycle(ctx, a, b, short, anchors, class2, decomposition):
    short_class2 = sorted(v for v in short if v in class2)
    if short_class2 != sorted(anchors):
        _fail(ctx, a, b, f"Short cycle class-2 labels {[format_label(v, ctx.p) for v in short_class2]}, "
                         f"expected {[format_label(v, ctx.p) for v in sorted(anchors)]}", decomposition, class2)


def case_report(ctx: FieldContext, a: int, b: int, partition: Optional[LabelPartition] = None,
                enforce_partition: Optional[bool] = None) -> CaseReport:
    """
    Compute and check the cycle structure of inverse(m) o pi_(a,b).

    Args:
        ctx: Field context
        a, b: Factor label
        partition: Label partition (the standard p^2 partition by default)
        enforce_partition: Require both classes in every cycle of length >= 2;
            defaults to p >= MIN_PRIME_P_SQUARED

    Returns:
        CaseReport

    Raises:
        AnalysisError: If any structural expectation fails; the message shows
            the cycles with class-2 labels marked '*'
    """
    p = ctx.p
    a, b = a % p, b % p
    n = p * p
    partition = partition or p_squared_partition(ctx)
    if enforce_partition is None:
        enforce_partition = p >= Config.get_p_squared_range()[0]
    class2 = frozenset(partition.members(CLASS_TWO))
    kind = classify(ctx, a, b)

    product = factor_product(ctx, a, b)
    decomposition = cycle_decomposition(product)

    p0, p1, p2 = decompose_factor_perm(ctx, a, b)
    if compose(p2, compose(p1, p0)) != product:
        _fail(ctx, a, b, "p2 o p1 o p0 differs from inverse(m) o pi_(a,b)")

    # Unique common edge
    source, target = common_edge(ctx, a, b)
    source_label = encode_pair(*source, p)
    fixed = fixed_points(product)
    if fixed != [source_label]:
        _fail(ctx, a, b, f"Fixed points {[format_label(v, p) for v in fixed]}, expected {source}",
              decomposition, class2)
    factor = p_squared_matching(ctx, a, b)
    if factor(source_label) != encode_pair(*target, p):
        _fail(ctx, a, b, f"Common edge {source} -> {target} is not an edge of the factor")

    cycles = decomposition.nontrivial()
    lengths = sorted(len(c) for c in cycles)
    counts = [sum(1 for v in c if v in class2) for c in cycles]
    partition_ok = all(0 < k < len(c) for c, k in zip(cycles, counts))

    report = CaseReport(p=p, a=a, b=b, case_kind=kind, fixed_label=source_label, cycles=cycles,
                        class2_per_cycle=counts, partition_ok=partition_ok,
                        class2_labels=tuple(sorted(class2)))

    if kind is CaseKind.ZERO_ZERO:
        if lengths != [p - 1] * (p + 1):
            _fail(ctx, a, b, f"Expected {p + 1} cycles of length {p - 1}, got {lengths}", decomposition, class2)
        through = decomposition.cycle_containing(encode_pair(0, 1, p))
        if sum(1 for v in through if v in class2) != 1:
            _fail(ctx, a, b, "Cycle through (0,1) must hold exactly one class-2 label", decomposition, class2)

    elif kind in (CaseKind.ZERO_STAR, CaseKind.STAR_ZERO):
        if lengths != [p - 1, p * (p - 1)]:
            _fail(ctx, a, b, f"Expected cycle lengths {[p - 1, p * (p - 1)]}, got {lengths}",
                  decomposition, class2)
        if kind is CaseKind.ZERO_STAR:
            row = source[1]
            expected_short = {encode_pair(c, row, p) for c in range(1, p)}
            anchors = zero_star_anchors(ctx, b)
        else:
            column = source[0]
            expected_short = {encode_pair(column, d, p) for d in range(1, p)}
            anchors = star_zero_anchors(ctx, a)
        short = next(c for c in cycles if len(c) == p - 1)
        if set(short) != expected_short:
            _fail(ctx, a, b, "Short cycle differs from its closed form", decomposition, class2)
        _check_short_cycle(ctx, a, b, short, anchors, class2, decomposition)

    else:
        _check_star_star(ctx, report, decomposition, class2)

    if not partition_ok:
        if enforce_partition:
            _fail(ctx, a, b, "A cycle holds labels of only one class", decomposition, class2)
        logger.debug(f"({a},{b}): single-class cycle at p={p}")
    return report


def _check_star_star(ctx: FieldContext, report: CaseReport, decomposition: CycleDecomposition, class2):
    p, a, b = ctx.p, report.a, report.b
    if len(report.cycles) != 2 or sum(report.cycle_lengths) != p * p - 1:
        _fail(ctx, a, b, f"Expected two cycles covering {p * p - 1} labels, got {sorted(report.cycle_lengths)}",
              decomposition, class2)

    b_norm = ctx.mul(b, ctx.inv(a))
    t = star_star_t(ctx, a, b)
    x = ctx.x
    x_over_b = ctx.mul(x, ctx.inv(b_norm))
    # Both identities reduce to t (x b'^2 - 1) = 1
    if (t * x * x * b_norm - (t + 1) * x_over_b) % p or \
            ((p - t) * x * x * b_norm - (p - t - 1) * x_over_b) % p:
        _fail(ctx, a, b, f"t={t} violates the defining identities")

    source_c, source_d = decode_label(report.fixed_label, p)
    f2 = decomposition.cycle_containing(encode_pair(source_c, 0, p))
    f1 = decomposition.cycle_containing(encode_pair(ctx.mul(a, ctx.add(ctx.y_prime, x_over_b)), 0, p))
    if f1 == f2:
        _fail(ctx, a, b, "F1 and F2 anchors share a cycle", decomposition, class2)

    f1_set, f2_set = set(f1), set(f2)
    if any(encode_pair(source_c, d, p) not in f2_set for d in range(p) if d != source_d):
        _fail(ctx, a, b, "F2 must contain the column of the fixed point", decomposition, class2)
    if any(encode_pair(c, source_d, p) not in f1_set for c in range(p) if c != source_c):
        _fail(ctx, a, b, "F1 must contain the row of the fixed point", decomposition, class2)

    f1_zero = sum(1 for v in f1 if v % p == 0)
    f2_zero = sum(1 for v in f2 if v % p == 0)
    if (f1_zero, f2_zero) != (t, p - t):
        _fail(ctx, a, b, f"F1/F2 hold {f1_zero}/{f2_zero} labels (c,0), expected {t}/{p - t}",
              decomposition, class2)

    report.t = t
    report.f1_zero_row = f1_zero
    report.f2_zero_row = f2_zero


def orbit_representatives(ctx: FieldContext) -> List[Pair]:
    """(0,0), (0,1), (1,0) and (1,b) for b != 0; every (a,b) is x^i times one of these."""
    return [(0, 0), (0, 1), (1, 0)] + [(1, b) for b in range(1, ctx.p)]


def _scaled_cycles(cycles, factor: int, p: int):
    return {frozenset(encode_pair(c * factor, d * factor, p) for c, d in (divmod(v, p) for v in cycle))
            for cycle in cycles}


def _check_orbits(ctx: FieldContext, reports: Sequence[CaseReport]):
    p = ctx.p
    reached = {encode_pair(a * pow(ctx.x, i, p), b * pow(ctx.x, i, p), p)
               for a, b in orbit_representatives(ctx) for i in range(p - 1)}
    if reached != set(range(p * p)):
        raise AnalysisError(f"Representatives miss {sorted(set(range(p * p)) - reached)[:10]}")

    for report in reports:
        image = reports[encode_pair(report.a * ctx.x, report.b * ctx.x, p)]
        if _scaled_cycles(report.cycles, ctx.x, p) != {frozenset(c) for c in image.cycles}:
            _fail(ctx, report.a, report.b, f"Cycles do not map onto those of ({image.a},{image.b}) under scaling")


def survey(ctx: FieldContext, threads: Optional[int] = None, show_progress: bool = False,
           enforce_partition: Optional[bool] = None) -> List[CaseReport]:
    """
    Case reports for all p^2 factors, ordered by label a*p+b.

    Also checks that scaling every label by x carries the cycles of (a,b)
    onto those of (xa,xb), so each orbit behaves like its representative.

    Args:
        ctx: Field context
        threads: Worker count, resolved through Config.get_thread_count
        show_progress: Show a tqdm bar
        enforce_partition: Passed to case_report

    Returns:
        List of p^2 CaseReports, index a*p+b

    Raises:
        AnalysisError: If any factor fails its case checks or the orbit check
    """
    p = ctx.p
    partition = p_squared_partition(ctx)
    workers = Config.get_thread_count(threads)
    labels = list(range(p * p))

    def run(label):
        return case_report(ctx, *divmod(label, p), partition=partition, enforce_partition=enforce_partition)

    with ThreadPoolExecutor(max_workers=workers) as executor:
        reports = list(tqdm(executor.map(run, labels), total=len(labels), desc=f"Survey p={p}",
                            disable=not show_progress))

    _check_orbits(ctx, reports)
    failing = sum(1 for r in reports if not r.partition_ok)
    logger.info(f"Survey p={p}: {len(reports)} factors, {failing} with single-class cycles")
    return reports


def render_case(report: CaseReport) -> str:
    """Human-readable case summary; class-2 labels carry a trailing '*'."""
    p = report.p
    header = f"({report.a},{report.b}) {report.case_kind.value}: fixed {format_label(report.fixed_label, p)}"
    if report.t is not None:
        header += f", t={report.t} (F1 {report.f1_zero_row} / F2 {report.f2_zero_row} labels (c,0))"
    decomposition = CycleDecomposition(n=p * p, cycles=report.cycles)
    body = format_cycles(decomposition, label_fmt=lambda v: format_label(v, p), flagged=report.class2_labels)
    lines = [header, f"  lengths {list(report.cycle_lengths)}, class-2 {report.class2_per_cycle}", f"  {body}"]
    return "\n".join(lines)

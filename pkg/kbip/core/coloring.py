#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Acyclic (n+2)-edge-colorings of K_{n,n} from a factorization and a transversal.

Given factors M_0..M_{n-1} and a perfect matching M meeting every factor in
exactly one edge e_i, the edges of M_i minus e_i get color i. The edges of M
are split by a partition of the labels: (v -> m(v)) gets color n when v is in
class 1 and n+1 when v is in class 2. The coloring is acyclic when every
cycle of length >= 2 of inverse(m) o pi_i holds labels of both classes.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..config import Config, ColoringError
from .edge_coloring import EdgeColoring, UNCOLORED
from .factorization import (
    Factorization,
    FamilyKind,
    common_edges,
    cyclic_factorization,
    latin_square,
    p_squared_factorization,
    transversal_matching,
)
from .field import FieldContext
from .perm import Permutation, compose, cycle_decomposition, inverse
from ..utils.labels import encode_pair

logger = logging.getLogger(__name__)

CLASS_ONE = 1
CLASS_TWO = 2

KPP_VARIANTS = ("uniform", "original")


@dataclass(frozen=True)
class LabelPartition:
    """
    Split of the labels 0..n-1 into class 1 and class 2.

    A partition may be degenerate (one class empty); frame_coloring rejects
    those, check_partition_condition reports them as failing.
    """

    n: int
    class_of: Tuple[int, ...]

    def __post_init__(self):
        if len(self.class_of) != self.n:
            raise ColoringError(f"Partition covers {len(self.class_of)} labels, expected {self.n}")
        if any(c not in (CLASS_ONE, CLASS_TWO) for c in self.class_of):
            raise ColoringError("Partition classes must be 1 or 2")

    @classmethod
    def from_class_two(cls, n: int, labels: Iterable[int]) -> "LabelPartition":
        """
        Build a partition from its class-2 labels; every other label is class 1.

        Args:
            n: Number of labels
            labels: Class-2 labels in 0..n-1

        Returns:
            LabelPartition, possibly degenerate

        Raises:
            ColoringError: If a label lies outside 0..n-1
        """
        labels = set(int(v) for v in labels)
        if any(not 0 <= v < n for v in labels):
            raise ColoringError(f"Class-2 labels must lie in 0..{n - 1}", offending=sorted(labels))
        return cls(n=n, class_of=tuple(CLASS_TWO if v in labels else CLASS_ONE for v in range(n)))

    def members(self, klass: int) -> List[int]:
        """Labels of class klass (CLASS_ONE or CLASS_TWO), ascending."""
        return [v for v, c in enumerate(self.class_of) if c == klass]

    def is_degenerate(self) -> bool:
        # One class empty
        return len(set(self.class_of)) < 2


@dataclass
class PartitionReport:
    """Per-cycle outcome of the two-class condition."""

    ok: bool
    cycles_checked: int
    violations: List[Tuple[int, Tuple[int, ...]]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "cycles_checked": self.cycles_checked,
            "violations": [{"factor": i, "cycle": list(cycle)} for i, cycle in self.violations],
        }


def cyclic_partition(n: int, class_two: Sequence[int] = (0, 1)) -> LabelPartition:
    """Partition of Z_n with the given class-2 labels ({0, 1} by default)."""
    return LabelPartition.from_class_two(n, class_two)


def p_squared_partition(ctx: FieldContext) -> LabelPartition:
    """
    Partition of Z_p x Z_p with class 2 = {(0,1), (1,0)} plus (z,z) and (z,zx) for z != 0.

    Class 2 has exactly 2p labels.
    """
    p, x = ctx.p, ctx.x
    class_two = {encode_pair(0, 1, p), encode_pair(1, 0, p)}
    for z in range(1, p):
        class_two.add(encode_pair(z, z, p))
        class_two.add(encode_pair(z, z * x, p))
    return LabelPartition.from_class_two(p * p, class_two)


def frame_coloring(f: Factorization, m: Permutation, part: LabelPartition,
                   full_factor: Optional[int] = None, construction: str = "frame",
                   p: Optional[int] = None, x: Optional[int] = None) -> EdgeColoring:
    """
    Color M_i minus its common edge with i and split M over colors n and n+1.

    Args:
        f: Factorization of K_{n,n}
        m: Transversal matching
        part: Label partition; v in class rho sends (v -> m(v)) to color n + rho - 1
        full_factor: Factor that keeps its common edge; that edge's top label is
            then left out of the transversal classes
        construction: Name recorded in the certificate
        p: Prime recorded in the certificate
        x: Generator recorded in the certificate

    Returns:
        EdgeColoring with n + 2 colors

    Raises:
        ColoringError: If some factor does not meet m in exactly one edge,
            or the partition is degenerate
    """
    n = f.n
    if m.n != n or part.n != n:
        raise ColoringError(f"Size mismatch: family {n}, transversal {m.n}, partition {part.n}",
                            construction=construction)
    if n > Config.get_instance().MAX_SIDE:
        raise ColoringError(f"n={n} exceeds MAX_SIDE", construction=construction)
    if part.is_degenerate():
        raise ColoringError("Both partition classes must be non-empty", construction=construction)

    hits = common_edges(f, m)
    offending = [i for i, sources in enumerate(hits) if len(sources) != 1]
    if offending:
        error_msg = f"Transversal meets {len(offending)} factor(s) in other than one edge: {offending[:10]}"
        logger.debug(error_msg)
        raise ColoringError(error_msg, construction=construction, offending=offending)

    square = latin_square(f)
    colors = np.full((n, n), UNCOLORED, dtype=np.int32)
    tops = np.broadcast_to(np.arange(n), (n, n))
    factor_ids = np.broadcast_to(np.arange(n)[:, None], (n, n))
    colors[tops, square] = factor_ids

    transversal_tops = np.arange(n)
    if full_factor is not None:
        if not 0 <= full_factor < n:
            raise ColoringError(f"full_factor {full_factor} outside 0..{n - 1}", construction=construction)
        transversal_tops = transversal_tops[transversal_tops != hits[full_factor][0]]

    class_of = np.asarray(part.class_of)
    colors[transversal_tops, m.image[transversal_tops]] = np.where(
        class_of[transversal_tops] == CLASS_ONE, n, n + 1)

    logger.debug(f"Frame coloring {construction}: n={n}, class 2 size {len(part.members(CLASS_TWO))}")
    return EdgeColoring(n=n, num_colors=n + 2, colors=colors, construction=construction, p=p, x=x)


def color_kpp(ctx: FieldContext, variant: Optional[str] = None) -> EdgeColoring:
    """
    (p+2)-coloring of K_{p,p} from the cyclic family and m: a -> a*x.

    Variants:
        uniform: every factor drops its common edge, class 2 = {0, 1}
        original: factor 0 keeps its common edge (0 -> 0), class 2 = {1}

    Without a variant, p = 3 gets "original" and larger p get "uniform": at
    p = 3 the uniform cycle of factor 2 is (0 1), entirely class 2.
    """
    if variant is None:
        variant = "original" if ctx.p == 3 else "uniform"
    if variant not in KPP_VARIANTS:
        raise ColoringError(f"Unknown variant {variant!r}; choose from {KPP_VARIANTS}", construction="kpp")
    family = cyclic_factorization(ctx.p)
    m = transversal_matching(FamilyKind.CYCLIC, ctx)
    if variant == "uniform":
        return frame_coloring(family, m, cyclic_partition(ctx.p, (0, 1)),
                              construction="kpp", p=ctx.p, x=ctx.x)
    return frame_coloring(family, m, cyclic_partition(ctx.p, (1,)), full_factor=0,
                          construction="kpp-original", p=ctx.p, x=ctx.x)


def color_kp2(ctx: FieldContext, allow_p3: bool = False) -> EdgeColoring:
    """
    (p^2+2)-coloring of K_{p^2,p^2}: factor (a,b) gets color a*p+b.

    Raises:
        ColoringError: If p < MIN_PRIME_P_SQUARED and allow_p3 is not set
    """
    min_p, _ = Config.get_p_squared_range()
    if ctx.p < min_p and not (allow_p3 and ctx.p == 3):
        error_msg = f"K_{{p^2,p^2}} construction needs p >= {min_p}, got p={ctx.p}"
        logger.debug(error_msg)
        raise ColoringError(error_msg, construction="kp2")
    if ctx.p < min_p:
        logger.warning(f"Building the p={ctx.p} coloring on request; it is not expected to be acyclic")

    family = p_squared_factorization(ctx)
    m = transversal_matching(FamilyKind.P_SQUARED, ctx)
    return frame_coloring(family, m, p_squared_partition(ctx), construction="kp2", p=ctx.p, x=ctx.x)


def check_partition_condition(f: Factorization, m: Permutation, part: LabelPartition) -> PartitionReport:
    """
    Check that every cycle of length >= 2 of inverse(m) o pi_i mixes both classes.

    Returns:
        PartitionReport listing each single-class cycle with its factor
    """
    m_inv = inverse(m)
    class_of = part.class_of
    violations = []
    checked = 0
    for i, factor in enumerate(f.matchings):
        for cycle in cycle_decomposition(compose(m_inv, factor)).nontrivial():
            checked += 1
            if len({class_of[v] for v in cycle}) < 2:
                violations.append((i, cycle))
    if violations:
        logger.debug(f"Partition condition fails on {len(violations)} of {checked} cycles")
    return PartitionReport(ok=not violations, cycles_checked=checked, violations=violations)


def derive_subcoloring(c: EdgeColoring, drop_top: Iterable[int] = (),
                       drop_bottom: Iterable[int] = ()) -> EdgeColoring:
    """
    Restrict a coloring to K_{n-k,n-k} by deleting k vertices per side.

    Surviving labels are renumbered densely in ascending order; the palette
    size is kept.

    Raises:
        ColoringError: If the drop sets differ in size, repeat or leave no vertex
    """
    drop_top = sorted(set(int(v) for v in drop_top))
    drop_bottom = sorted(set(int(v) for v in drop_bottom))
    if len(drop_top) != len(drop_bottom):
        raise ColoringError(f"Drop sets must have equal size, got {len(drop_top)} and {len(drop_bottom)}",
                            construction=c.construction)
    if any(not 0 <= v < c.n for v in drop_top + drop_bottom):
        raise ColoringError(f"Dropped vertices must lie in 0..{c.n - 1}", construction=c.construction,
                            offending=drop_top + drop_bottom)
    if len(drop_top) >= c.n:
        raise ColoringError("Cannot drop every vertex", construction=c.construction)
    if not drop_top:
        return c

    keep_top = np.setdiff1d(np.arange(c.n), drop_top)
    keep_bottom = np.setdiff1d(np.arange(c.n), drop_bottom)
    colors = c.colors[np.ix_(keep_top, keep_bottom)]
    logger.debug(f"Derived K_{{{keep_top.size},{keep_top.size}}} from {c.construction}")
    return EdgeColoring(n=int(keep_top.size), num_colors=c.num_colors, colors=colors,
                        construction=f"{c.construction}-minus-{len(drop_top)}", p=c.p, x=c.x)


def color_histogram(c: EdgeColoring) -> List[int]:
    """
    Number of edges per color id.

    Returns:
        List of length num_colors; uncolored edges are not counted
    """
    present = c.colors[c.colors != UNCOLORED]
    return np.bincount(present, minlength=c.num_colors).tolist()

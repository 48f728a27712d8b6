#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Perfect 1-factorizations of K_{n,n} as families of permutations.

Two families are built here:
- cyclic: matching i sends a to a+i (mod n); perfect for prime n
- p_squared: matching (a,b) of K_{p^2,p^2} on labels c*p+d, a four-case
  map over Z_p x Z_p

A family is a perfect 1-factorization (P1F) when inverse(pi_i) o pi_j is a
full cycle for every pair i < j.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from ..config import Config, FactorizationError
from .field import FieldContext, make_context
from .perm import Permutation, compose, inverse, cycle_decomposition, cycle_type, is_full_cycle

logger = logging.getLogger(__name__)


class FamilyKind(Enum):
    CYCLIC = "cyclic"
    P_SQUARED = "p_squared"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Factorization:
    """
    Ordered family of n matchings of K_{n,n}.

    Matching i is indexed by its label: i itself for the cyclic family,
    a*p+b for the p_squared family. Construction checks that the family
    partitions the n^2 edges (every column of the latin square is a
    permutation).
    """

    n: int
    kind: FamilyKind
    matchings: Tuple[Permutation, ...]
    context: Optional[FieldContext] = None

    def __post_init__(self):
        if len(self.matchings) != self.n:
            raise FactorizationError(
                f"Expected {self.n} matchings, got {len(self.matchings)}", n=self.n, kind=self.kind.value)
        for i, m in enumerate(self.matchings):
            if m.n != self.n:
                raise FactorizationError(
                    f"Matching {i} acts on {m.n} labels", n=self.n, kind=self.kind.value)
        square = latin_square(self)
        expected = np.arange(self.n)[:, None]
        if not np.array_equal(np.sort(square, axis=0), np.broadcast_to(expected, square.shape)):
            clashes = np.flatnonzero(np.any(np.sort(square, axis=0) != expected, axis=0)).tolist()
            error_msg = f"Matchings are not edge-disjoint; clashing top vertices {clashes[:10]}"
            logger.debug(error_msg)
            raise FactorizationError(error_msg, n=self.n, kind=self.kind.value)

    def __getitem__(self, index: int) -> Permutation:
        return self.matchings[index]

    def __len__(self) -> int:
        return self.n

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"n": self.n, "kind": self.kind.value}
        if self.context is not None:
            payload["p"] = self.context.p
            payload["x"] = self.context.x
        payload["matchings"] = [m.to_list() for m in self.matchings]
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "Factorization":
        """
        Rebuild a factorization from its JSON form.

        Raises:
            FactorizationError: If the payload is malformed
        """
        try:
            n = int(payload["n"])
            kind = FamilyKind(payload["kind"])
            matchings = tuple(Permutation(images) for images in payload["matchings"])
        except (KeyError, TypeError, ValueError) as e:
            raise FactorizationError(f"Malformed factorization payload: {e}") from e
        context = make_context(int(payload["p"]), payload.get("x")) if "p" in payload else None
        return cls(n=n, kind=kind, matchings=matchings, context=context)


@dataclass
class P1FReport:
    """Result of a perfect 1-factorization check."""

    ok: bool
    pairs_checked: int
    failing_pairs: List[Tuple[int, int, Tuple[int, ...]]] = field(default_factory=list)
    exhaustive: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "exhaustive": self.exhaustive,
            "pairs_checked": self.pairs_checked,
            "failing_pairs": [[i, j, list(lengths)] for i, j, lengths in self.failing_pairs],
        }


@dataclass(frozen=True)
class GraphCycle:
    """
    Cycle of K_{n,n} inside the union of two matchings.

    labels is the cycle (i_0 ... i_{l-1}) of inverse(mA) o mB; edges are the
    2l edges (top, bottom), alternating mA and mB starting with mA.
    """

    labels: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.edges)


def latin_square(f: Factorization) -> np.ndarray:
    """n x n array L with L[i, v] = pi_i(v)."""
    return np.stack([m.image for m in f.matchings])


def factorization_from_matchings(matchings: Sequence[Permutation],
                                 kind: FamilyKind = FamilyKind.CUSTOM,
                                 context: Optional[FieldContext] = None) -> Factorization:
    """Wrap a user-supplied family; raises FactorizationError unless it partitions the edges."""
    matchings = tuple(matchings)
    if not matchings:
        raise FactorizationError("A factorization needs at least one matching", kind=kind.value)
    return Factorization(n=matchings[0].n, kind=kind, matchings=matchings, context=context)


def cyclic_factorization(n: int) -> Factorization:
    """
    Cyclic family on Z_n: matching i maps a to a+i (mod n).

    Args:
        n: Odd side size >= 3

    Returns:
        Factorization of K_{n,n} (a P1F exactly when n is prime)

    Raises:
        FactorizationError: If n is even or smaller than 3
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 3 or n % 2 == 0:
        error_msg = f"Cyclic family needs an odd n >= 3, got {n!r}"
        logger.debug(error_msg)
        raise FactorizationError(error_msg, n=n, kind=FamilyKind.CYCLIC.value)
    if n > Config.get_instance().MAX_SIDE:
        raise FactorizationError(f"n exceeds MAX_SIDE={Config.MAX_SIDE}", n=n, kind=FamilyKind.CYCLIC.value)

    base = np.arange(n, dtype=np.int64)
    square = (base[None, :] + base[:, None]) % n
    matchings = tuple(Permutation._trusted(row) for row in square)
    logger.debug(f"Built cyclic family with n={n}")
    return Factorization(n=n, kind=FamilyKind.CYCLIC, matchings=matchings)


def _p_squared_images(ctx: FieldContext, factors: np.ndarray) -> np.ndarray:
    p, x = ctx.p, ctx.x
    labels = np.arange(p * p, dtype=np.int64)
    # rows: factor (a,b); columns: source (c,d)
    a, b = np.divmod(np.asarray(factors, dtype=np.int64), p)
    a, b = a[:, None], b[:, None]
    c, d = np.divmod(labels, p)
    c, d = c[None, :], d[None, :]

    top_sum = (a + b + d) % p
    low_sum = (b + d) % p
    shifted = (a + x * b) % p

    out_c = np.where(
        c == 0,
        np.where(top_sum != 0, a, shifted),
        np.where(low_sum == 0, (shifted + c) % p, (a + c) % p),
    )
    out_d = np.where(c == 0, top_sum, low_sum)
    return out_c * p + out_d


def p_squared_factorization(ctx: FieldContext) -> Factorization:
    """
    Family {M_(a,b)} of K_{p^2,p^2}, matching a*p+b sending (c,d) to:

        c = 0, a+b+d != 0  ->  (a, a+b+d)
        c = 0, a+b+d  = 0  ->  (a+xb, 0)
        c != 0, b+d   = 0  ->  (a+c+xb, 0)
        c != 0, b+d  != 0  ->  (a+c, b+d)

    Raises:
        FactorizationError: If p lies above Config.MAX_PRIME_P_SQUARED
    """
    config = Config.get_instance()
    if ctx.p > config.MAX_PRIME_P_SQUARED:
        error_msg = f"p={ctx.p} exceeds MAX_PRIME_P_SQUARED={config.MAX_PRIME_P_SQUARED}"
        logger.debug(error_msg)
        raise FactorizationError(error_msg, n=ctx.p * ctx.p, kind=FamilyKind.P_SQUARED.value)

    square = _p_squared_images(ctx, np.arange(ctx.p * ctx.p))
    matchings = tuple(Permutation._trusted(row) for row in square)
    logger.debug(f"Built p_squared family with p={ctx.p}, x={ctx.x}")
    return Factorization(n=ctx.p * ctx.p, kind=FamilyKind.P_SQUARED, matchings=matchings, context=ctx)


def p_squared_matching(ctx: FieldContext, a: int, b: int) -> Permutation:
    """Single matching M_(a,b) of the p_squared family."""
    factor = (a % ctx.p) * ctx.p + (b % ctx.p)
    return Permutation._trusted(_p_squared_images(ctx, np.array([factor]))[0])


def transversal_matching(kind: FamilyKind, ctx: Union[FieldContext, int]) -> Permutation:
    """
    The special matching M used as transversal by the colorings.

    cyclic: a -> a*x on Z_p. p_squared: (c,d) -> (y*c, x*d).
    An integer argument is read as p with the default generator.
    """
    if not isinstance(ctx, FieldContext):
        ctx = make_context(ctx)
    kind = FamilyKind(kind)
    p = ctx.p
    if kind is FamilyKind.CYCLIC:
        return Permutation._trusted((np.arange(p, dtype=np.int64) * ctx.x) % p)
    if kind is FamilyKind.P_SQUARED:
        c, d = np.divmod(np.arange(p * p, dtype=np.int64), p)
        return Permutation._trusted(((ctx.y * c) % p) * p + (ctx.x * d) % p)
    raise FactorizationError("Custom families have no built-in transversal", kind=kind.value)


def _failures_for_row(i: int, inverses: Sequence[Permutation], matchings: Sequence[Permutation]):
    failures = []
    for j in range(i + 1, len(matchings)):
        product = compose(inverses[i], matchings[j])
        if not is_full_cycle(product):
            failures.append((i, j, cycle_type(product)))
    return failures


def validate_p1f(f: Factorization, fast: bool = False, threads: Optional[int] = None,
                 show_progress: bool = False) -> P1FReport:
    """
    Check every pair i < j for a Hamiltonian union.

    Args:
        f: Factorization to check
        fast: Stop at the first failing pair
        threads: Worker count for the full check (Config resolution when None)
        show_progress: Show a tqdm bar over rows

    Returns:
        P1FReport; failing pairs carry the cycle type of inverse(pi_i) o pi_j.
        In fast mode pairs_checked counts pairs up to and including the first failure.
    """
    n = f.n
    total = n * (n - 1) // 2
    inverses = [inverse(m) for m in f.matchings]

    if fast:
        checked = 0
        for i in range(n):
            for j in range(i + 1, n):
                checked += 1
                product = compose(inverses[i], f.matchings[j])
                if not is_full_cycle(product):
                    logger.debug(f"P1F fails at pair ({i},{j})")
                    return P1FReport(ok=False, pairs_checked=checked,
                                     failing_pairs=[(i, j, cycle_type(product))])
        return P1FReport(ok=True, pairs_checked=checked)

    workers = Config.get_thread_count(threads)
    failures = []
    with ThreadPoolExecutor(max_workers=workers) as executor:
        rows = executor.map(lambda i: _failures_for_row(i, inverses, f.matchings), range(n))
        for row in tqdm(rows, total=n, desc="P1F pairs", disable=not show_progress):
            failures.extend(row)

    logger.debug(f"P1F check n={n}: {len(failures)} failing of {total} pairs")
    return P1FReport(ok=not failures, pairs_checked=total, failing_pairs=failures)


def spot_check_p1f(f: Factorization, samples: Optional[int] = None,
                   seed: Optional[int] = None) -> P1FReport:
    """
    Check a seeded random sample of pairs.

    Used for families too large for the exhaustive check.
    """
    config = Config.get_instance()
    samples = config.P1F_SPOT_CHECK_PAIRS if samples is None else samples
    seed = config.RANDOM_SEED if seed is None else seed
    rng = np.random.default_rng(seed)

    failures = []
    for _ in range(samples):
        i, j = sorted(int(v) for v in rng.choice(f.n, size=2, replace=False))
        product = compose(inverse(f.matchings[i]), f.matchings[j])
        if not is_full_cycle(product):
            failures.append((i, j, cycle_type(product)))
    return P1FReport(ok=not failures, pairs_checked=samples, failing_pairs=failures, exhaustive=False)


def check_p1f(f: Factorization, fast: bool = False, threads: Optional[int] = None,
              show_progress: bool = False) -> P1FReport:
    """Exhaustive check, except spot checks for p_squared families with p outside P1F_EXHAUSTIVE_PRIMES."""
    config = Config.get_instance()
    if f.kind is FamilyKind.P_SQUARED and f.context.p not in config.P1F_EXHAUSTIVE_PRIMES:
        logger.info(f"p={f.context.p}: spot-checking {config.P1F_SPOT_CHECK_PAIRS} pairs")
        return spot_check_p1f(f)
    return validate_p1f(f, fast=fast, threads=threads, show_progress=show_progress)


def union_cycles(mA: Permutation, mB: Permutation) -> List[GraphCycle]:
    """
    Graph cycles of the union of two matchings.

    Each cycle (i_0 ... i_{l-1}) of length l >= 2 of inverse(mA) o mB gives the
    2l-cycle (i_0, mA(i_0)), (i_0, mB(i_0)), (i_1, mA(i_1)), ... where
    mB(i_k) = mA(i_{k+1}).
    """
    product = compose(inverse(mA), mB)
    cycles = []
    for labels in cycle_decomposition(product).nontrivial():
        edges = []
        for i in labels:
            edges.append((i, mA(i)))
            edges.append((i, mB(i)))
        cycles.append(GraphCycle(labels=labels, edges=tuple(edges)))
    return cycles


def common_edges(f: Factorization, m: Permutation) -> List[List[int]]:
    """For each factor i, the top vertices v with pi_i(v) = m(v)."""
    if m.n != f.n:
        raise FactorizationError(f"Transversal acts on {m.n} labels", n=f.n, kind=f.kind.value)
    hits = latin_square(f) == m.image[None, :]
    return [np.flatnonzero(row).tolist() for row in hits]

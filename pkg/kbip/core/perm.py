#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Permutation algebra on the label set 0..n-1.

A perfect matching of K_{n,n} is the permutation sending each top label to
the bottom label it is matched with, so every matching, transversal and
product of matchings in kbip is a Permutation.

Composition convention: compose(f, g) applies g first, i.e. maps i to f(g(i)).
The product pi^-1 o pi_i is therefore written compose(inverse(pi), pi_i).
"""

import re
import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Tuple

import numpy as np

from ..config import PermutationError

logger = logging.getLogger(__name__)

_CYCLE_PATTERN = re.compile(r'\(([^()]*)\)')


class Permutation:
    """
    Immutable bijection on {0..n-1}.

    The image is kept as a read-only integer array; image[i] is the image
    of label i.

    Example:
        >>> f = Permutation([1, 2, 0, 4, 3])
        >>> f(0)
        1
        >>> str(f)
        '(0 1 2)(3 4)'
    """

    __slots__ = ("_image",)

    def __init__(self, image: Sequence[int]):
        arr = np.array(image)
        if arr.ndim != 1 or arr.size < 1:
            raise PermutationError("Permutation image must be a non-empty sequence")
        if arr.dtype.kind not in "iu":
            if arr.dtype.kind == "f" and np.all(np.mod(arr, 1) == 0):
                arr = arr.astype(np.int64)
            else:
                raise PermutationError(f"Permutation image must hold integers, got {arr.dtype}", size=arr.size)
        n = arr.size
        arr = arr.astype(np.int64, copy=False)
        if arr.min() < 0 or arr.max() >= n or not np.all(np.bincount(arr, minlength=n) == 1):
            raise PermutationError("Image is not a bijection on 0..n-1", size=n)
        self._image = _freeze(arr)

    @classmethod
    def _trusted(cls, arr: np.ndarray) -> "Permutation":
        perm = cls.__new__(cls)
        perm._image = _freeze(arr.astype(np.int64, copy=False))
        return perm

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        """Identity permutation on n labels."""
        if n < 1:
            raise PermutationError("Label set must be non-empty", size=n)
        return cls._trusted(np.arange(n, dtype=np.int64))

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], int]) -> "Permutation":
        """Tabulate fn over 0..n-1; the result must be a bijection."""
        return cls([fn(i) for i in range(n)])

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """
        Build a permutation from disjoint cycles; unlisted labels are fixed.

        Raises:
            PermutationError: If cycles overlap or mention labels outside 0..n-1
        """
        image = list(range(n))
        seen = set()
        for cycle in cycles:
            cycle = [int(v) for v in cycle]
            for v in cycle:
                if not 0 <= v < n:
                    raise PermutationError(f"Label {v} outside 0..{n - 1}", size=n)
                if v in seen:
                    raise PermutationError(f"Label {v} appears in more than one cycle", size=n)
                seen.add(v)
            for k, v in enumerate(cycle):
                image[v] = cycle[(k + 1) % len(cycle)]
        return cls._trusted(np.array(image, dtype=np.int64))

    @classmethod
    def from_notation(cls, text: str, n: Optional[int] = None) -> "Permutation":
        """Parse cycle notation such as "(0)(1 3 4 2)"."""
        return parse_cycles(text, n)

    @property
    def n(self) -> int:
        return int(self._image.size)

    @property
    def image(self) -> np.ndarray:
        """Read-only image array."""
        return self._image

    def to_list(self):
        return self._image.tolist()

    def __call__(self, label: int) -> int:
        return int(self._image[label])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._image, other._image))

    def __hash__(self) -> int:
        return hash(self._image.tobytes())

    def __str__(self) -> str:
        return format_cycles(cycle_decomposition(self), show_singletons=False) or "()"

    def __repr__(self) -> str:
        return f"Permutation(n={self.n}, {format_cycles(cycle_decomposition(self))})"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.int64, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class CycleDecomposition:
    """
    Canonical disjoint cycle decomposition.

    Each cycle starts with its smallest label and cycles are ordered by
    their leading label; singleton cycles are kept.
    """

    n: int
    cycles: Tuple[Tuple[int, ...], ...]

    def lengths(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    def cycle_type(self) -> Tuple[int, ...]:
        """Sorted multiset of cycle lengths."""
        return tuple(sorted(self.lengths()))

    def nontrivial(self) -> Tuple[Tuple[int, ...], ...]:
        """Cycles of length >= 2."""
        return tuple(c for c in self.cycles if len(c) >= 2)

    def cycle_containing(self, label: int) -> Tuple[int, ...]:
        for cycle in self.cycles:
            if label in cycle:
                return cycle
        raise PermutationError(f"Label {label} outside 0..{self.n - 1}", size=self.n)

    def to_permutation(self) -> Permutation:
        return Permutation.from_cycles(self.n, self.cycles)

    def __len__(self) -> int:
        return len(self.cycles)

    def __str__(self) -> str:
        return format_cycles(self)


def _check_same_size(f: Permutation, g: Permutation, op: str):
    if f.n != g.n:
        error_msg = f"Cannot {op} permutations of different sizes: {f.n} and {g.n}"
        logger.debug(error_msg)
        raise PermutationError(error_msg, size=f.n)


def compose(f: Permutation, g: Permutation) -> Permutation:
    """
    Product f o g: maps i to f(g(i)) (g is applied first).

    Raises:
        PermutationError: If the sizes differ

    Example:
        >>> str(compose(inverse(Permutation([1, 2, 0, 4, 3])), Permutation([1, 0, 2, 3, 4])))
        '(1 2)(3 4)'
    """
    _check_same_size(f, g, "compose")
    return Permutation._trusted(f.image[g.image])


def inverse(f: Permutation) -> Permutation:
    """Inverse permutation."""
    inv = np.empty(f.n, dtype=np.int64)
    inv[f.image] = np.arange(f.n, dtype=np.int64)
    return Permutation._trusted(inv)


def conjugate(f: Permutation, s: Permutation) -> Permutation:
    """
    Conjugate s^-1 o f o s.

    The cycles of the result are the cycles of f with every label v replaced
    by s^-1(v).
    """
    _check_same_size(f, s, "conjugate")
    return compose(inverse(s), compose(f, s))


def cycle_decomposition(f: Permutation) -> CycleDecomposition:
    """Canonical disjoint cycle decomposition of f."""
    image = f.image.tolist()
    seen = [False] * f.n
    cycles = []
    # Scanning labels in ascending order makes every cycle start at its minimum
    for start in range(f.n):
        if seen[start]:
            continue
        cycle = []
        v = start
        while not seen[v]:
            seen[v] = True
            cycle.append(v)
            v = image[v]
        cycles.append(tuple(cycle))
    return CycleDecomposition(n=f.n, cycles=tuple(cycles))


def cycle_type(f: Permutation) -> Tuple[int, ...]:
    """Sorted multiset of cycle lengths of f."""
    return cycle_decomposition(f).cycle_type()


def fixed_points(f: Permutation):
    """Labels i with f(i) = i, ascending."""
    return np.flatnonzero(f.image == np.arange(f.n)).tolist()


def is_full_cycle(f: Permutation) -> bool:
    """True iff f is a single cycle of length n."""
    image = f.image.tolist()
    v = image[0]
    steps = 1
    while v != 0:
        v = image[v]
        steps += 1
    return steps == f.n


def format_cycles(decomposition: CycleDecomposition, show_singletons: bool = True,
                  label_fmt: Optional[Callable[[int], str]] = None,
                  flagged: Optional[Iterable[int]] = None) -> str:
    """
    Render cycles as "(0)(1 3 4 2)".

    Args:
        decomposition: Canonical decomposition
        show_singletons: Include fixed points
        label_fmt: Label renderer (defaults to str)
        flagged: Labels to mark with a trailing '*'

    Returns:
        Cycle notation string
    """
    label_fmt = label_fmt or str
    flagged = set(flagged or ())
    parts = []
    for cycle in decomposition.cycles:
        if len(cycle) == 1 and not show_singletons:
            continue
        tokens = [label_fmt(v) + ("*" if v in flagged else "") for v in cycle]
        parts.append("(" + " ".join(tokens) + ")")
    return "".join(parts)


def parse_cycles(text: str, n: Optional[int] = None) -> Permutation:
    """
    Parse cycle notation with space-separated integer labels.

    Args:
        text: Notation such as "(0)(1 3 4 2)"; omitted labels are fixed
        n: Label-set size (defaults to the largest label + 1)

    Returns:
        Parsed permutation

    Raises:
        PermutationError: If the text is not valid cycle notation
    """
    stripped = _CYCLE_PATTERN.sub("", text)
    if stripped.strip():
        raise PermutationError(f"Unexpected text outside cycles: {stripped.strip()!r}")

    cycles = []
    for body in _CYCLE_PATTERN.findall(text):
        tokens = body.replace(",", " ").split()
        if not tokens:
            continue
        try:
            cycles.append([int(t) for t in tokens])
        except ValueError as e:
            raise PermutationError(f"Non-integer label in cycle ({body})") from e

    largest = max((v for c in cycles for v in c), default=-1)
    if n is None:
        n = largest + 1
    if n < 1:
        raise PermutationError("Cannot infer a non-empty label set from notation")
    return Permutation.from_cycles(n, cycles)

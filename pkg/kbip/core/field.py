#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Prime-field context for the K_{p,p} and K_{p^2,p^2} constructions.

A FieldContext fixes an odd prime p and a generator x of Z_p^* and carries
every constant derived from them: y = x^-1, x' = (x-1)^-1, y' = (y-1)^-1 and
the partial geometric sums x_i = x + ... + x^i, y_i = y + ... + y^i.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from sympy import isprime, primitive_root, is_primitive_root
from sympy import mod_inverse as _sympy_mod_inverse
from sympy.ntheory import discrete_log as _sympy_discrete_log

from ..config import Config, FieldError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldContext:
    """
    Prime p, generator x and derived constants, all reduced mod p.

    Attributes:
        p: Odd prime
        x: Generator of Z_p^*
        y: x^-1
        x_prime: (x-1)^-1
        y_prime: (y-1)^-1
        x_partial: (x_1, ..., x_{p-2})
        y_partial: (y_1, ..., y_{p-2})
    """

    p: int
    x: int
    y: int
    x_prime: int
    y_prime: int
    x_partial: Tuple[int, ...]
    y_partial: Tuple[int, ...]

    def add(self, *values: int) -> int:
        return sum(values) % self.p

    def mul(self, *values: int) -> int:
        result = 1
        for v in values:
            result = (result * v) % self.p
        return result

    def neg(self, value: int) -> int:
        return (-value) % self.p

    def inv(self, value: int) -> int:
        return mod_inverse(value, self.p)

    def to_dict(self) -> Dict[str, int]:
        return {"p": self.p, "x": self.x}


def _require_int(value, name: str, p=None, x=None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        error_msg = f"{name} must be an integer, got {value!r}"
        logger.debug(error_msg)
        raise FieldError(error_msg, p=p, x=x)
    return value


def is_generator(x: int, p: int) -> bool:
    """
    True iff x generates the multiplicative group mod the prime p.

    Example:
        >>> is_generator(2, 5), is_generator(4, 5)
        (True, False)
    """
    if x % p == 0:
        return False
    return bool(is_primitive_root(x % p, p))


def mod_inverse(a: int, p: int) -> int:
    """
    Multiplicative inverse of a modulo the prime p.

    Raises:
        FieldError: If a is divisible by p

    Example:
        >>> mod_inverse(7, 11)
        8
    """
    if a % p == 0:
        error_msg = f"{a} has no inverse modulo {p}"
        logger.debug(error_msg)
        raise FieldError(error_msg, p=p)
    return int(_sympy_mod_inverse(a % p, p))


def _partial_sums(base: int, p: int) -> Tuple[int, ...]:
    sums = []
    total = 0
    power = 1
    for _ in range(p - 2):
        power = (power * base) % p
        total = (total + power) % p
        sums.append(total)
    return tuple(sums)


def make_context(p: int, x: Optional[int] = None) -> FieldContext:
    """
    Build the field context for an odd prime p.

    Args:
        p: Odd prime below Config.MAX_PRIME
        x: Generator override; the smallest primitive root when omitted

    Returns:
        Fully populated FieldContext

    Raises:
        FieldError: If p is not an odd prime or x does not generate Z_p^*

    Example:
        >>> ctx = make_context(5)
        >>> (ctx.x, ctx.y, ctx.x_prime, ctx.y_prime)
        (2, 3, 1, 3)
    """
    config = Config.get_instance()
    p = _require_int(p, "p", p=p)

    if p < 3 or p % 2 == 0:
        error_msg = f"p must be an odd prime, got {p}"
        logger.debug(error_msg)
        raise FieldError(error_msg, p=p)
    if p > config.MAX_PRIME:
        error_msg = f"p exceeds the supported bound {config.MAX_PRIME}"
        logger.debug(error_msg)
        raise FieldError(error_msg, p=p)
    if not isprime(p):
        error_msg = f"p must be an odd prime, {p} is composite"
        logger.debug(error_msg)
        raise FieldError(error_msg, p=p)

    if x is None:
        x = int(primitive_root(p))
    else:
        x = _require_int(x, "x", p=p, x=x) % p
        if not is_generator(x, p):
            error_msg = f"{x} does not generate the multiplicative group mod {p}"
            logger.debug(error_msg)
            raise FieldError(error_msg, p=p, x=x)

    y = mod_inverse(x, p)
    ctx = FieldContext(
        p=p,
        x=x,
        y=y,
        x_prime=mod_inverse(x - 1, p),
        y_prime=mod_inverse(y - 1, p),
        x_partial=_partial_sums(x, p),
        y_partial=_partial_sums(y, p),
    )
    logger.debug(f"Field context p={p}: x={ctx.x}, y={ctx.y}, x'={ctx.x_prime}, y'={ctx.y_prime}")
    return ctx


def power_table(ctx: FieldContext, base: Optional[int] = None) -> Tuple[int, ...]:
    """Powers base^0 .. base^(p-2) of a generator (x by default)."""
    base = ctx.x if base is None else base % ctx.p
    powers = [1]
    for _ in range(ctx.p - 2):
        powers.append((powers[-1] * base) % ctx.p)
    return tuple(powers)


def discrete_log(ctx: FieldContext, value: int, base: Optional[int] = None) -> int:
    """
    Exponent s in 0..p-2 with base^s = value (base defaults to x).

    Raises:
        FieldError: If value is zero mod p or base is not a generator
    """
    base = ctx.x if base is None else base % ctx.p
    if value % ctx.p == 0:
        raise FieldError("Zero has no discrete logarithm", p=ctx.p, x=base)
    if not is_generator(base, ctx.p):
        raise FieldError(f"Base {base} is not a generator", p=ctx.p, x=base)
    return int(_sympy_discrete_log(ctx.p, value % ctx.p, base))

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Composite label utilities for kbip.

Labels of the K_{p^2,p^2} constructions are residue pairs (a, b) in Z_p x Z_p.
They are stored as dense integers a*p + b so that every permutation, factor
index and color id lives on the same flat label set 0..p^2-1.
"""

import re
import logging

logger = logging.getLogger(__name__)

_PAIR_PATTERN = re.compile(r'^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$')


def encode_pair(a, b, p):
    """
    Encode a residue pair as a dense label.

    Args:
        a (int): First coordinate (reduced mod p)
        b (int): Second coordinate (reduced mod p)
        p (int): Modulus

    Returns:
        int: Label a*p + b

    Example:
        >>> encode_pair(1, 2, 5)
        7
        >>> encode_pair(-1, 0, 5)
        20
    """
    return (a % p) * p + (b % p)


def decode_label(label, p):
    """
    Decode a dense label back to its residue pair.

    Args:
        label (int): Label in 0..p^2-1
        p (int): Modulus

    Returns:
        tuple: (a, b)

    Raises:
        ValueError: If the label is outside 0..p^2-1

    Example:
        >>> decode_label(7, 5)
        (1, 2)
    """
    if not is_valid_label(label, p):
        error_msg = f"Label {label} outside 0..{p * p - 1}"
        logger.debug(error_msg)
        raise ValueError(error_msg)
    return divmod(int(label), p)


def is_valid_label(label, p):
    """
    Check that a label belongs to the p^2 label set.

    Example:
        >>> is_valid_label(24, 5)
        True
        >>> is_valid_label(25, 5)
        False
    """
    try:
        value = int(label)
    except (TypeError, ValueError):
        return False
    return 0 <= value < p * p


def format_label(label, p=None):
    """
    Format a label for display.

    Plain integers are used for flat label sets; with a modulus the label is
    rendered as its residue pair.

    Example:
        >>> format_label(7, 5)
        '(1,2)'
        >>> format_label(7)
        '7'
    """
    if p is None:
        return str(int(label))
    a, b = decode_label(label, p)
    return f"({a},{b})"


def parse_label(text, p=None):
    """
    Parse a label written as an integer or as a pair "(a,b)".

    Args:
        text (str): Label text
        p (int, optional): Modulus, required for pair syntax

    Returns:
        int: Dense label

    Raises:
        ValueError: If the text is not a label
    """
    text = text.strip()
    match = _PAIR_PATTERN.match(text)
    if match:
        if p is None:
            raise ValueError(f"Pair label {text!r} needs a modulus")
        return encode_pair(int(match.group(1)), int(match.group(2)), p)
    try:
        return int(text)
    except ValueError as e:
        raise ValueError(f"Not a label: {text!r}") from e

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
File I/O utilities for kbip.

Every artifact the toolkit emits (factorizations, certificates, reports) is
JSON on disk. Writes are deterministic: dictionaries keep insertion order,
no key sorting, one trailing newline.
"""

import os
import json
import logging

from ..config.exceptions import CertificateError

logger = logging.getLogger(__name__)


def ensure_directory(directory):
    """
    Ensure a directory exists, creating it if necessary.

    Args:
        directory (str): Directory path to create

    Returns:
        str: Path to the directory

    Raises:
        CertificateError: If directory creation fails
    """
    if not directory:
        return directory

    logger.debug(f"Ensuring directory exists: {directory}")

    if not os.path.exists(directory):
        try:
            os.makedirs(directory, exist_ok=True)
            logger.debug(f"Created directory: {directory}")
        except OSError as e:
            error_msg = f"Error creating directory {directory}: {str(e)}"
            logger.error(error_msg)
            raise CertificateError(error_msg, filename=directory) from e

    return directory


def write_json(path, payload):
    """
    Write a JSON artifact.

    Args:
        path (str): Output file path
        payload: JSON-serializable object

    Returns:
        str: Path written

    Raises:
        CertificateError: If the file cannot be written
    """
    ensure_directory(os.path.dirname(os.path.abspath(path)))
    try:
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(payload, f)
            f.write('\n')
    except (OSError, TypeError, ValueError) as e:
        error_msg = f"Error writing {os.path.basename(path)}: {str(e)}"
        logger.error(error_msg)
        raise CertificateError(error_msg, filename=path) from e

    logger.debug(f"Wrote {path}")
    return path


def read_json(path):
    """
    Read a JSON artifact.

    Args:
        path (str): Input file path

    Returns:
        Parsed JSON value

    Raises:
        CertificateError: If the file is missing, not UTF-8 or not valid JSON
    """
    logger.debug(f"Reading JSON file: {path}")

    if not os.path.exists(path):
        error_msg = f"File does not exist: {path}"
        logger.error(error_msg)
        raise CertificateError(error_msg, filename=path)

    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except (ValueError, RecursionError) as e:
        # JSONDecodeError and UnicodeDecodeError are both ValueErrors
        error_msg = f"Invalid JSON in {os.path.basename(path)}: {str(e)}"
        logger.error(error_msg)
        raise CertificateError(error_msg, filename=path) from e
    except OSError as e:
        error_msg = f"Error reading {os.path.basename(path)}: {str(e)}"
        logger.error(error_msg)
        raise CertificateError(error_msg, filename=path) from e

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Configuration modules for kbip.

This package provides:
- Core configuration settings and singleton pattern
- Logging setup for the command-line tool
- Custom exception classes for error handling
"""

from .config import Config
from .logging_config import setup_logging, cleanup_old_log_files
from .exceptions import (
    kbipError,
    ConfigError,
    PermutationError,
    FieldError,
    FactorizationError,
    ColoringError,
    AnalysisError,
    VerificationError,
    CertificateError
)

__all__ = [
    # Core configuration
    "Config",
    "setup_logging",
    "cleanup_old_log_files",

    # Exception classes
    "kbipError",
    "ConfigError",
    "PermutationError",
    "FieldError",
    "FactorizationError",
    "ColoringError",
    "AnalysisError",
    "VerificationError",
    "CertificateError"
]

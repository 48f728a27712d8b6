#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Custom exceptions for the kbip toolkit.
"""

class kbipError(Exception):
    """Base exception class for all kbip-related errors."""
    pass

class ConfigError(kbipError):
    """Exception raised for configuration-related errors."""

    def __init__(self, message, config_key=None, config_value=None):
        super().__init__(message)
        self.config_key = config_key
        self.config_value = config_value

    def __str__(self):
        base_msg = super().__str__()
        if self.config_key:
            return f"{base_msg} (config key: {self.config_key})"
        return base_msg

class PermutationError(kbipError):
    """Exception raised for invalid permutations or mismatched label sets."""

    def __init__(self, message, size=None):
        super().__init__(message)
        self.size = size

    def __str__(self):
        base_msg = super().__str__()
        if self.size is not None:
            return f"{base_msg} (n: {self.size})"
        return base_msg

class FieldError(kbipError):
    """Exception raised for invalid prime or generator parameters."""

    def __init__(self, message, p=None, x=None):
        super().__init__(message)
        self.p = p
        self.x = x

    def __str__(self):
        base_msg = super().__str__()
        details = []
        if self.p is not None:
            details.append(f"p: {self.p}")
        if self.x is not None:
            details.append(f"x: {self.x}")

        if details:
            return f"{base_msg} ({', '.join(details)})"
        return base_msg

class FactorizationError(kbipError):
    """Exception raised when a matching family cannot be built or is malformed."""

    def __init__(self, message, n=None, kind=None):
        super().__init__(message)
        self.n = n
        self.kind = kind

    def __str__(self):
        base_msg = super().__str__()
        details = []
        if self.kind:
            details.append(f"family: {self.kind}")
        if self.n is not None:
            details.append(f"n: {self.n}")

        if details:
            return f"{base_msg} ({', '.join(details)})"
        return base_msg

class ColoringError(kbipError):
    """Exception raised when a coloring cannot be constructed from its inputs."""

    def __init__(self, message, construction=None, offending=None):
        super().__init__(message)
        self.construction = construction
        self.offending = offending

    def __str__(self):
        base_msg = super().__str__()
        if self.construction:
            return f"{base_msg} (construction: {self.construction})"
        return base_msg

class AnalysisError(kbipError):
    """Exception raised when a cycle-structure check on a factor fails."""

    def __init__(self, message, a=None, b=None):
        super().__init__(message)
        self.a = a
        self.b = b

    def __str__(self):
        base_msg = super().__str__()
        if self.a is not None and self.b is not None:
            return f"{base_msg} (factor: ({self.a},{self.b}))"
        return base_msg

class VerificationError(kbipError):
    """Exception raised when verifier input violates the checker's contract."""
    pass

class CertificateError(kbipError):
    """Exception raised for unreadable or malformed JSON artifacts."""

    def __init__(self, message, filename=None):
        super().__init__(message)
        self.filename = filename

    def __str__(self):
        base_msg = super().__str__()
        if self.filename:
            return f"{base_msg} (file: {self.filename})"
        return base_msg


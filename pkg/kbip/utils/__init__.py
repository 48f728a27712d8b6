"""
Utility modules for kbip
"""

from .labels import (
    encode_pair,
    decode_label,
    is_valid_label,
    format_label,
    parse_label
)
from .file_io import (
    ensure_directory,
    write_json,
    read_json
)

__all__ = [
    # Label utilities
    'encode_pair',
    'decode_label',
    'is_valid_label',
    'format_label',
    'parse_label',

    # File I/O utilities
    'ensure_directory',
    'write_json',
    'read_json'
]

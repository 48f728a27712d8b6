#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Configuration module for the kbip toolkit.

This module provides configuration management for:
1. Prime and side-size limits of the constructions
2. Perfect 1-factorization validation strategy
3. Exhaustive lower-bound search limits
4. Worker threads and progress display
5. Log file management

The Config class implements a singleton pattern so that every module
reads the same limits.
"""

import os
import json
import logging
from multiprocessing import cpu_count
from typing import Dict, Any, Optional, Tuple

from ..config.exceptions import ConfigError

logger = logging.getLogger(__name__)

THREADS_ENV_VAR = "KBIP_THREADS"


class Config:
    """
    Central configuration settings for kbip with singleton pattern.

    Settings are class attributes so that a JSON override file can update
    them in place for every module at once.

    Attributes:
        DEBUG_MODE: Enable debug logging mode
        MAX_PRIME_P_SQUARED: Largest p accepted by the p^2 constructions
        THREADS: Worker count (None resolves via KBIP_THREADS, then cpu count)

    Example:
        >>> config = Config.get_instance()
        >>> config.get_thread_count(2)
        2
    """

    # Singleton instance
    _instance = None

    DEBUG_MODE = False

    #############################################################################
    #                           Field Limits
    #############################################################################
    # Deterministic primality testing is guaranteed below this bound
    MAX_PRIME = 2**31 - 1

    # p range for the K_{p^2,p^2} constructions (n = p^2 <= 9409)
    MIN_PRIME_P_SQUARED = 5
    MAX_PRIME_P_SQUARED = 97

    # Largest side accepted by any coloring constructor
    MAX_SIDE = 9409

    #############################################################################
    #                           Factorization Validation
    #############################################################################
    # p^2 families validated over every pair; larger p are spot-checked
    P1F_EXHAUSTIVE_PRIMES = [3, 5, 7]
    P1F_SPOT_CHECK_PAIRS = 200
    RANDOM_SEED = 20240101

    #############################################################################
    #                           Lower Bound Search
    #############################################################################
    LOWER_BOUND_MAX_N = 3

    #############################################################################
    #                           Execution
    #############################################################################
    THREADS = None
    SHOW_PROGRESS = True

    #############################################################################
    #                           File Management
    #############################################################################
    LOG_DIR_NAME = ".kbip"
    MAX_LOG_FILES = 10

    def __init__(self):
        """Initialize Config instance."""
        logger.debug("Config instance created")

    @classmethod
    def get_instance(cls) -> 'Config':
        """
        Get the singleton instance of Config.

        Returns:
            Config: Singleton instance
        """
        if cls._instance is None:
            cls._instance = cls()
        return cls._instance

    @classmethod
    def get_thread_count(cls, override: Optional[int] = None) -> int:
        """
        Resolve the worker count for parallel sections.

        Resolution order: explicit override, KBIP_THREADS environment
        variable, the THREADS setting, then the available CPU count.

        Args:
            override: Explicit thread count (e.g. from --threads)

        Returns:
            Positive worker count

        Raises:
            ConfigError: If a supplied value is not a positive integer
        """
        source = "override"
        value = override
        if value is None:
            env_value = os.environ.get(THREADS_ENV_VAR)
            if env_value:
                source = THREADS_ENV_VAR
                try:
                    value = int(env_value)
                except ValueError as e:
                    error_msg = f"Invalid {THREADS_ENV_VAR} value: {env_value!r}"
                    logger.error(error_msg)
                    raise ConfigError(error_msg, config_key=THREADS_ENV_VAR, config_value=env_value) from e
        if value is None and cls.THREADS is not None:
            source = "THREADS"
            value = cls.THREADS
        if value is None:
            return cpu_count()

        if not isinstance(value, int) or value < 1:
            error_msg = f"Thread count must be a positive integer, got {value!r}"
            logger.error(error_msg)
            raise ConfigError(error_msg, config_key=source, config_value=value)
        return value

    @classmethod
    def get_p_squared_range(cls) -> Tuple[int, int]:
        """Get the (min, max) prime accepted by the p^2 constructions."""
        return cls.MIN_PRIME_P_SQUARED, cls.MAX_PRIME_P_SQUARED

    @classmethod
    def load_from_file(cls, filepath: str) -> bool:
        """
        Load settings from a configuration file.

        Args:
            filepath: Path to the JSON configuration file

        Returns:
            True if settings were loaded successfully

        Raises:
            ConfigError: If configuration file is invalid or cannot be loaded
        """
        if not os.path.exists(filepath):
            error_msg = f"Configuration file not found: {filepath}"
            logger.error(error_msg)
            raise ConfigError(error_msg, config_key="filepath")

        if not filepath.endswith('.json'):
            error_msg = f"Unsupported config file format: {filepath}"
            logger.error(error_msg)
            raise ConfigError(error_msg, config_key="file_format")

        cls.get_instance()
        return cls._load_from_json(filepath)

    @classmethod
    def _load_from_json(cls, filepath: str) -> bool:
        """
        Load settings from a JSON file.

        Args:
            filepath: Path to the JSON file

        Returns:
            True if settings were loaded successfully
        """
        logger.debug(f"Loading configuration from JSON file: {filepath}")

        try:
            with open(filepath, 'r') as f:
                settings = json.load(f)
        except json.JSONDecodeError as e:
            error_msg = f"Invalid JSON format in {filepath}: {str(e)}"
            logger.error(error_msg)
            raise ConfigError(error_msg, config_key="json_format") from e
        except OSError as e:
            error_msg = f"Error loading JSON settings from {filepath}: {str(e)}"
            logger.error(error_msg)
            raise ConfigError(error_msg) from e

        if not isinstance(settings, dict):
            error_msg = f"Configuration root must be an object: {filepath}"
            logger.error(error_msg)
            raise ConfigError(error_msg, config_key="json_format")

        for key, value in settings.items():
            if key.startswith('#'):  # Skip comment keys
                continue

            if key.isupper() and hasattr(cls, key):
                old_value = getattr(cls, key)
                setattr(cls, key, value)
                logger.debug(f"Updated config: {key} = {value} (was: {old_value})")
            else:
                logger.debug(f"Ignoring unknown config key: {key}")

        logger.debug(f"Successfully loaded configuration from {filepath}")
        return True

    @classmethod
    def save_to_file(cls, filepath: str) -> bool:
        """
        Save current settings to a JSON file.

        Args:
            filepath: Path to save the configuration file

        Returns:
            True if settings were saved successfully

        Raises:
            ConfigError: If file cannot be written
        """
        logger.debug(f"Saving configuration to file: {filepath}")

        try:
            with open(filepath, 'w') as f:
                json.dump(cls.get_all_settings(), f, indent=4)
        except OSError as e:
            error_msg = f"Error saving settings to {filepath}: {str(e)}"
            logger.error(error_msg)
            raise ConfigError(error_msg) from e

        logger.info(f"Successfully saved configuration to {filepath}")
        return True

    @classmethod
    def get_all_settings(cls) -> Dict[str, Any]:
        """
        Get all settings as a dictionary.

        Returns:
            Dictionary of all serializable UPPER_CASE settings
        """
        settings = {}
        for key in dir(cls):
            if key.isupper() and not key.startswith('_'):
                value = getattr(cls, key)
                if isinstance(value, (str, int, float, bool, list, dict, tuple)) or value is None:
                    settings[key] = value
        return settings

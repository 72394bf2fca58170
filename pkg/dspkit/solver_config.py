# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import json
import logging
import os
from argparse import Namespace
from typing import NamedTuple, Optional

import yaml
from cerberus import Validator

from .constants import LOGGER_NAME, DEFAULT_GUESS_BUDGET, DEFAULT_CHUNK_SIZE, DEFAULT_MAX_PATHS, \
    DEFAULT_MAX_TUPLES, DEFAULT_TIME_BUDGET, DEFAULT_MCC_BUDGET, DEFAULT_GEN_RETRIES
from .utils import InvalidConfigurationError


logger = logging.getLogger(LOGGER_NAME)


solver_schema = {
    "guess_budget": {
        "type": "integer",
        "default": DEFAULT_GUESS_BUDGET,
        "min": 1
    },
    "require_complete": {
        "type": "boolean",
        "default": False
    },
    "threads": {
        "type": "integer",
        "default": 1,
        "min": 1,
        "max": 256
    },
    "chunk_size": {
        "type": "integer",
        "default": DEFAULT_CHUNK_SIZE,
        "min": 1
    },
    "max_paths": {
        "type": "integer",
        "default": DEFAULT_MAX_PATHS,
        "min": 1
    },
    "max_tuples": {
        "type": "integer",
        "default": DEFAULT_MAX_TUPLES,
        "min": 1
    },
    "time_budget": {
        "type": "float",
        "default": DEFAULT_TIME_BUDGET,
        "min": 0.01,
        "coerce": lambda x: float(x) if isinstance(x, int) and not isinstance(x, bool) else x
    },
    "mcc_budget": {
        "type": "integer",
        "default": DEFAULT_MCC_BUDGET,
        "min": 1
    },
    "gen_retries": {
        "type": "integer",
        "default": DEFAULT_GEN_RETRIES,
        "min": 1
    },
    "profile": {
        "type": "boolean",
        "default": False
    }
}


def default_config() -> dict:
    return Validator(solver_schema).normalized(dict())


def load_configuration(config_file, strict_validation=False) -> dict:
    """
    Load the solver configuration settings
    :param config_file: configuration file (*.yaml, *.yml or *.json)
    :param strict_validation: whether to fail in the case of a bad configuration file
    :return: dictionary with normalized configuration data
    """
    config_data = dict()
    error_str = None
    if not os.path.isfile(config_file):
        error_str = "Configuration file {0} does not exist".format(config_file)
        logger.error(error_str)
        logger.info("Defaulting to the built-in solver configuration")
    elif os.path.splitext(config_file)[1].lower() == ".json":
        try:
            with open(config_file) as cf:
                config_data = json.load(cf)
        except Exception as e:
            error_str = "Could not load configuration file {0}: {1}".format(config_file, e)
            logger.error(error_str)
    elif os.path.splitext(config_file)[1].lower() in [".yaml", ".yml"]:
        try:
            with open(config_file) as cf:
                config_data = yaml.safe_load(cf)
        except Exception as e:
            error_str = "Could not load configuration file {0}: {1}".format(config_file, e)
            logger.error(error_str)
    else:
        error_str = "Unsupported configuration file extension. Supported: *.yaml or *.json"
        logger.error(error_str)

    if strict_validation and error_str is not None:
        raise InvalidConfigurationError(error_str)

    # An empty YAML document loads as None.
    if config_data is None:
        config_data = dict()
    return normalize_validate_config(config_data, strict_validation)


def normalize_validate_config(config_data, strict_validation=False) -> dict:
    """
    Normalize and validate a solver configuration
    :param config_data: dictionary with solver settings
    :param strict_validation: whether to fail in the case of a bad configuration entry
    :return: dictionary with normalized and validated settings, the defaults if validation failed
    """
    v = Validator(solver_schema)
    validated = None
    if isinstance(config_data, dict):
        normalized = v.normalized(config_data)
        if normalized is not None:
            validated = v.validated(normalized)
        errors = v.errors
    else:
        errors = {"document": "expected a mapping, got {0}".format(type(config_data).__name__)}

    if validated is None:
        error_str = "Schema failed to validate the solver configuration, using defaults. Errors: {0}".format(
            json.dumps(errors, indent=2, sort_keys=True, default=str))
        logger.error(error_str)
        if strict_validation:
            raise InvalidConfigurationError(error_str)
        return default_config()

    logger.debug("Normalized solver configuration: {0}".format(json.dumps(validated, indent=2, sort_keys=True)))
    return validated


class EnumLimits(NamedTuple):
    max_paths: int = DEFAULT_MAX_PATHS
    max_tuples: int = DEFAULT_MAX_TUPLES
    time_budget: float = DEFAULT_TIME_BUDGET


class SolverConfig(object):
    def __init__(self, settings: Optional[dict] = None):
        settings = default_config() if settings is None else settings
        self.guess_budget: int = settings["guess_budget"]
        self.require_complete: bool = settings["require_complete"]
        self.threads: int = settings["threads"]
        self.chunk_size: int = settings["chunk_size"]
        self.max_paths: int = settings["max_paths"]
        self.max_tuples: int = settings["max_tuples"]
        self.time_budget: float = settings["time_budget"]
        self.mcc_budget: int = settings["mcc_budget"]
        self.gen_retries: int = settings["gen_retries"]
        self.profile: bool = settings["profile"]

    @property
    def limits(self) -> EnumLimits:
        return EnumLimits(self.max_paths, self.max_tuples, self.time_budget)

    @staticmethod
    def from_args(args: Namespace):
        """
        Create a SolverConfig from the configuration file named on the command
        line (if any), with explicitly given command-line flags taking precedence.
        """
        config_file = getattr(args, "configuration_file", None)
        strict = getattr(args, "strict_configuration_validation", False)
        settings = load_configuration(config_file, strict) if config_file else default_config()
        config = SolverConfig(settings)

        overrides = {
            "budget": "guess_budget",
            "threads": "threads",
            "max_paths": "max_paths",
            "max_tuples": "max_tuples",
            "time_budget": "time_budget",
        }
        for arg_name, attr in overrides.items():
            value = getattr(args, arg_name, None)
            if value is not None:
                setattr(config, attr, value)
        if getattr(args, "require_complete", False):
            config.require_complete = True
        if getattr(args, "profile", False):
            config.profile = True
        return config

    def __repr__(self):
        return "{0}({1})".format(type(self).__name__, str(self.__dict__))

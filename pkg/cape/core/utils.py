#
# SPDX-License-Identifier: Apache-2.0
import logging
import os

from cape.core import constants

LOG = logging.getLogger(__name__)


"""Various helper functions."""


class CapeError(Exception):
    """Base class for every error raised by cape."""


class ConfigError(CapeError):
    """Raised when the config file fails validation."""

    def __init__(self, message, config_file):
        self.config_file = config_file
        self.message = f"{config_file} : {message}"
        super().__init__(self.message)


class ProfileNotFound(CapeError):
    """Raised when chosen augmentation profile cannot be found."""

    def __init__(self, config_file, profile):
        self.config_file = config_file
        self.profile = profile
        message = "Unable to find profile ({}) in config file: {}".format(
            self.profile,
            self.config_file,
        )
        super().__init__(message)


class InvalidSpecError(CapeError):
    """Raised for an unusable frequency spec or embedding width."""


class InvalidInputError(CapeError):
    """Raised when positions, durations or indices violate preconditions."""


class ShapeMismatchError(CapeError):
    """Raised when arrays that must agree in shape do not."""


def warnings_formatter(
    message, category=UserWarning, filename="", lineno=-1, line=""
):
    """Monkey patch for warnings.warn to suppress cruft output."""
    return f"{message}\n"


def parse_int_list(text):
    """Parse a comma-separated list of positive integers.

    :param text: String such as ``"10,100,1000"``
    :return: list of ints
    :raises InvalidInputError: on empty items, non-integers or values < 1
    """
    items = [item.strip() for item in (text or "").split(",")]
    if not items or any(not item for item in items):
        raise InvalidInputError(f"Invalid integer list: '{text}'")
    try:
        values = [int(item) for item in items]
    except ValueError:
        raise InvalidInputError(f"Invalid integer list: '{text}'")
    if any(value < 1 for value in values):
        raise InvalidInputError(f"Values must be positive: '{text}'")
    return values


def parse_seed(value, source="seed"):
    """Validate a seed as a 64-bit unsigned integer."""
    try:
        seed = int(value)
    except (TypeError, ValueError):
        raise InvalidInputError(f"Invalid {source}: {value!r}")
    if isinstance(value, bool) or not 0 <= seed < 2**64:
        raise InvalidInputError(
            f"Invalid {source}: {value!r} is not a 64-bit unsigned integer"
        )
    return seed


def resolve_seed(flag_value=None, config_value=None, default=0):
    """Pick the seed from flag, config, environment, then default.

    An explicit flag always wins; the ``CAPE_SEED`` environment variable
    is only a fallback.
    """
    if flag_value is not None:
        return parse_seed(flag_value, "--seed")
    if config_value is not None:
        return parse_seed(config_value, "config seed")
    env_value = os.environ.get(constants.SEED_ENV)
    if env_value:
        LOG.debug("using seed from %s", constants.SEED_ENV)
        return parse_seed(env_value, constants.SEED_ENV)
    return default

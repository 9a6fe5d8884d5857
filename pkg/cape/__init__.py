#
# SPDX-License-Identifier: Apache-2.0
"""Continuous augmented positional embeddings.

Importing the package stays cheap: numpy is only loaded with the
``cape.core`` modules that need it, so ``cape-bench`` can pin the BLAS
thread count first.
"""
from importlib import metadata

try:
    __version__ = metadata.version("cape")
except metadata.PackageNotFoundError:
    __version__ = "0.0.0"

#!/usr/bin/env python
# SPDX-License-Identifier: Apache-2.0
"""Run the cape invariant suite.

Every property the embeddings, augmentation, batching and attention code
promise is registered as a check plugin; this runs the selected checks and
reports pass or fail with the measured error for each.
"""
from cape.cli import main

main.main()

#
# SPDX-License-Identifier: Apache-2.0
from cape.core import rng as cape_rng


class CheckContext:
    """State handed to a check: its own random stream and run flags."""

    def __init__(self, check_id, seed=0, negative=False):
        self.check_id = check_id
        self.seed = seed
        self.negative = negative
        self._index = int("".join(c for c in check_id if c.isdigit()) or 0)

    def __repr__(self):
        return (
            f"<CheckContext check_id={self.check_id} seed={self.seed} "
            f"negative={self.negative}>"
        )

    def stream(self):
        """Fresh stream for this check; the same on every call."""
        return cape_rng.RngStream(self.seed).spawn(self._index)

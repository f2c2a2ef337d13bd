"""Affine point record shared by the fast stack and the reference oracle.

Coordinates are plain Python ints.  (0, 0) encodes the group identity: no
real point has x = y = 0 on any bundled curve, because y^2 = b and y = 0
would force b = 0, and b = 0 never validates.  Keeping the record free of
any arithmetic lets both implementations share it without coupling.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class AffinePoint:
    x: int
    y: int

    @property
    def is_identity(self):
        return self.x == 0 and self.y == 0


IDENTITY = AffinePoint(0, 0)

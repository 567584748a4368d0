"""Size budgets for the expensive computations.

Three knobs, all expressed as the largest admissible field size q:

* ``field``  -- fields with a full discrete-log table (hard ceiling 2**24)
* ``plane``  -- O(q^2) scans of the affine plane (brute-force point counts)
* ``linear`` -- O(q) scans (Jacobi sums, direct affine Fermat counts)
"""

from __future__ import annotations

import contextlib
import dataclasses

from .errors import BudgetExceeded

FIELD_CEILING = 2**24


@dataclasses.dataclass
class Budgets:
    field: int = FIELD_CEILING
    plane: int = 2**12
    linear: int = 2**20

    def validate(self) -> None:
        if not 2 <= self.field <= FIELD_CEILING:
            raise ValueError(f"field budget must lie in [2, 2**24], got {self.field}")
        if self.plane < 64:
            raise ValueError(f"plane budget must be at least 64, got {self.plane}")
        if self.linear < 4096:
            raise ValueError(f"linear budget must be at least 4096, got {self.linear}")


BUDGETS = Budgets()


def check(kind: str, q: int) -> None:
    limit = getattr(BUDGETS, kind)
    if q > limit:
        raise BudgetExceeded(f"q = {q} exceeds the {kind} budget {limit}")


@contextlib.contextmanager
def budgets(**overrides):
    """Temporarily override budgets, e.g. ``with budgets(plane=2**14): ...``."""
    saved = dataclasses.replace(BUDGETS)
    try:
        for key, value in overrides.items():
            if not hasattr(BUDGETS, key):
                raise TypeError(f"unknown budget {key!r}")
            setattr(BUDGETS, key, value)
        BUDGETS.validate()
        yield BUDGETS
    finally:
        for f in dataclasses.fields(Budgets):
            setattr(BUDGETS, f.name, getattr(saved, f.name))

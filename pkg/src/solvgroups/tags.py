"""Group tags naming the relatively free groups handled by the library."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class BudgetExceeded(RuntimeError):
    """A configured size or search budget was exhausted."""


class Family(str, Enum):
    METABELIAN = "Metabelian"
    SOLVABLE = "Solvable"
    METABELIAN_NILPOTENT = "MetabelianNilpotent"


_TAG_RE = re.compile(r"^\s*(MN|M|S)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$")


@dataclass(frozen=True)
class GroupTag:
    """A free metabelian ``M(r)``, free solvable ``S(r,d)`` or free
    metabelian-nilpotent ``MN(r,k)`` group.

    ``cls`` is the derived length for the solvable family, the nilpotency
    class for the metabelian-nilpotent family, and always 2 for ``M(r)``.
    """

    family: Family
    rank: int
    cls: int = 2

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        if self.cls < 1:
            raise ValueError(f"class must be positive, got {self.cls}")
        if self.family is Family.METABELIAN and self.cls != 2:
            raise ValueError("free metabelian groups have derived length 2")

    @classmethod
    def metabelian(cls, rank: int) -> "GroupTag":
        return cls(Family.METABELIAN, rank, 2)

    @classmethod
    def solvable(cls, rank: int, d: int) -> "GroupTag":
        return cls(Family.SOLVABLE, rank, d)

    @classmethod
    def nilpotent(cls, rank: int, k: int) -> "GroupTag":
        return cls(Family.METABELIAN_NILPOTENT, rank, k)

    @classmethod
    def parse(cls, text: str) -> "GroupTag":
        m = _TAG_RE.match(text)
        if m is None:
            raise ValueError(f"malformed group spec {text!r}; expected M(r), S(r,d) or MN(r,k)")
        kind, rank, second = m.group(1), int(m.group(2)), m.group(3)
        if kind == "M":
            if second is not None:
                raise ValueError(f"M(r) takes a single argument, got {text!r}")
            return cls.metabelian(rank)
        if second is None:
            raise ValueError(f"{kind}(...) needs two arguments, got {text!r}")
        if kind == "S":
            return cls.solvable(rank, int(second))
        return cls.nilpotent(rank, int(second))

    def __str__(self) -> str:
        if self.family is Family.METABELIAN:
            return f"M({self.rank})"
        if self.family is Family.SOLVABLE:
            return f"S({self.rank},{self.cls})"
        return f"MN({self.rank},{self.cls})"

    @property
    def is_nilpotent(self) -> bool:
        return self.family is Family.METABELIAN_NILPOTENT

    @property
    def derived_length(self) -> int:
        """Upper bound on the derived length (exact for rank >= 2)."""
        if self.family is Family.METABELIAN_NILPOTENT:
            return 1 if self.cls == 1 else 2
        return self.cls

    def solvable_quotient(self, d: int) -> "GroupTag":
        """The free solvable group ``S(r,d)`` of the same rank."""
        return GroupTag.solvable(self.rank, d)

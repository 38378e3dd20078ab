"""Canonical forms and retract decisions in free metabelian, metabelian-nilpotent
and free solvable groups."""

from .decision import (DecisionReport, Retraction, Status, cyclic_decide, two_gen_decide,
                       two_gen_necessary, verify_retraction)
from .magnus import abelianization, canon, eq, fox_derivative, in_derived, in_gamma, is_identity
from .tags import GroupTag
from .words import Word, parse_word

__all__ = [
    "DecisionReport", "GroupTag", "Retraction", "Status", "Word", "abelianization", "canon",
    "cyclic_decide", "eq", "fox_derivative", "in_derived", "in_gamma", "is_identity",
    "parse_word", "two_gen_decide", "two_gen_necessary", "verify_retraction",
]

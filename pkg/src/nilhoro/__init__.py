"""Exact word metrics, geodesics and Busemann points for the discrete Heisenberg group.

Also covers Z^d and a class-3 nilpotent group on two generators, with a
breadth-first-search oracle against which every closed form is checked.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .groups import H3, AlphabetError, Group, H3Element, evaluate_word, get_group, h3_inv, h3_mul, zd_group
from .metric import CaseTag, h3_dist, h3_norm, h3_norm_case
from .oracle import BudgetExceeded, bfs_ball, bfs_norm, oracle_dist

__all__ = [
    "AlphabetError",
    "BudgetExceeded",
    "CaseTag",
    "Group",
    "H3",
    "H3Element",
    "bfs_ball",
    "bfs_norm",
    "evaluate_word",
    "get_group",
    "h3_dist",
    "h3_inv",
    "h3_mul",
    "h3_norm",
    "h3_norm_case",
    "oracle_dist",
    "zd_group",
]

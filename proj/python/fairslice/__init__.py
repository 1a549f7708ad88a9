"""Envy-free division of cakes, chores and mixed cakes between two groups.

Thin Python layer over the C++ core. The main entry points:

- :class:`TwoPiecePreference` — a player's left/right preference over
  single-cut divisions, as breakpoints plus interval labels.
- :class:`AdditivePiecewiseConstant` — an additive (signed) utility or
  cost with piecewise constant density.
- :func:`singleton_first`, :func:`singleton_last`, :func:`monotone_marks`
  — finite query protocols producing envy-free single-cut divisions.
- :func:`duel` — run a protocol against the adaptive adversary that
  defeats every bounded protocol for group sizes min(k1, k2) >= 2.
- :func:`solve_cake`, :func:`solve_chores` — simplex-based approximate
  solvers for groups of hungry (cake) or lazy (chore) players.
- :func:`gen_counterexample`, :func:`min_cut_search`, :func:`ch_then_pick`
  — mixed-cake tooling around the cut-count lower bound.
"""

from ._fairslice import (
    AdditivePiecewiseConstant,
    InvariantError,
    Side,
    TwoPiecePreference,
    ch_then_pick,
    duel,
    envy_slack,
    gen_counterexample,
    min_cut_search,
    monotone_marks,
    singleton_first,
    singleton_last,
    solve_cake,
    solve_chores,
)

__all__ = [
    "AdditivePiecewiseConstant",
    "InvariantError",
    "Side",
    "TwoPiecePreference",
    "ch_then_pick",
    "duel",
    "envy_slack",
    "gen_counterexample",
    "min_cut_search",
    "monotone_marks",
    "singleton_first",
    "singleton_last",
    "solve_cake",
    "solve_chores",
]

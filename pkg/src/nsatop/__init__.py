"""Exact infinitesimal arithmetic, germ sandbox, bounded-quantifier formulas,
and monad-based finite topology with hull constructions."""

__version__ = "0.1.0"

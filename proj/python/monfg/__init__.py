"""Equilibrium checks and learning experiments for multi-objective normal-form games.

Games, utilities and strategies use the JSON schemas of the ``monfg`` command
line tool, as Python dicts and lists. Any of them may instead be given as the
name of a catalog entry.
"""

import json
import os

from . import _monfg
from ._monfg import MonfgError

__all__ = [
    "MonfgError",
    "catalog",
    "catalog_entry",
    "run_experiment",
    "scan_ne_ser_grid",
    "solve_ce_esr",
    "tradeoff_game",
    "utility_eval",
    "verify",
]

DEFAULT_TOLERANCE = 1e-6


def _arg(value):
    return json.dumps(value)


def catalog():
    """Return ``{name: kind}`` for every built-in entry."""
    return dict(_monfg.catalog_names())


def catalog_entry(name):
    return json.loads(_monfg.catalog_entry(name))


def utility_eval(utility, payoff):
    return _monfg.utility_eval(_arg(utility), list(payoff))


def verify(concept, game, utilities, candidate, tol=DEFAULT_TOLERANCE, seed=0, num_starts=None):
    """Check ``candidate`` against ``concept`` and return the report as a dict.

    ``concept`` is one of ne-esr, ne-ser, ce-esr, ce-ser-single, ce-ser-multi.
    """
    return json.loads(
        _monfg.verify(concept, _arg(game), _arg(utilities), _arg(candidate), tol, seed, num_starts)
    )


def tradeoff_game(game, utilities):
    return json.loads(_monfg.tradeoff_game(_arg(game), _arg(utilities)))


def solve_ce_esr(game, utilities, objective="feasible"):
    """``objective`` is feasible, max-sum or max-player=<k> with k counting from 1."""
    return json.loads(_monfg.solve_ce_esr(_arg(game), _arg(utilities), objective))


def scan_ne_ser_grid(game, utilities, resolution, tol=DEFAULT_TOLERANCE, cap=5_000_000, threads=1,
                     seed=0, num_starts=None):
    return json.loads(
        _monfg.scan_ne_ser_grid(_arg(game), _arg(utilities), resolution, tol, cap, threads, seed,
                                num_starts)
    )


def run_experiment(config, out_dir, threads=1):
    """Run a learning experiment and write its metric files into ``out_dir``.

    Returns the parsed ``summary.json``.
    """
    out_dir = os.fspath(out_dir)
    _monfg.run_experiment(_arg(config), out_dir, threads)
    with open(os.path.join(out_dir, "summary.json"), encoding="utf-8") as f:
        return json.load(f)

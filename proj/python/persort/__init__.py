"""Perfect sorting by reversals via strong interval trees."""

import json

from ._persort import (
    BudgetExceeded,
    DomainError,
    ParseError,
    apply,
    commuting_scenario,
    is_commuting,
    is_perfect,
    parse,
    perfect_sort,
    random_commuting,
    random_permutation,
    reversal_distance,
    sort,
    tree_summary,
    tree_text,
    tree_to_perm,
)
from . import _persort


def tree(perm):
    """Strong interval tree of perm as a dict."""
    return json.loads(_persort.tree_json(perm))


def enumerate_counts(what, n):
    """Exact count table; values are Python ints."""
    table = json.loads(_persort.enumerate(what, n))
    for row in table["rows"]:
        row["value"] = int(row["value"])
    return table


def stats(model, n, trials, seed, threads=1):
    """Monte Carlo report as a dict."""
    return json.loads(_persort.stats(model, n, trials, seed, threads))


__all__ = [
    "BudgetExceeded",
    "DomainError",
    "ParseError",
    "apply",
    "commuting_scenario",
    "enumerate_counts",
    "is_commuting",
    "is_perfect",
    "parse",
    "perfect_sort",
    "random_commuting",
    "random_permutation",
    "reversal_distance",
    "sort",
    "stats",
    "tree",
    "tree_summary",
    "tree_text",
    "tree_to_perm",
]

"""Numerical toolkit for shifted convolution sums of modular form coefficients."""

import json

from ._core import (
    ContractError,
    NumericalError,
    __version__,
    _coefficient_strings,
    _correlate_json,
    bessel_j,
    cover,
    eigenvalues,
    kloosterman,
    petersson,
    ramanujan_sum,
    run_cli,
    w_star,
    weil_bound,
)


def coefficients(weight, upto):
    """Exact a(0..upto) of the weight 12 or 16 eigenform, as Python ints."""
    return [int(s) for s in _coefficient_strings(weight, upto)]


def correlate(kind, config=None):
    """Runs a correlation experiment and returns its report as a dict."""
    return json.loads(_correlate_json(kind, json.dumps(config or {})))


__all__ = [
    "ContractError",
    "NumericalError",
    "__version__",
    "bessel_j",
    "coefficients",
    "correlate",
    "cover",
    "eigenvalues",
    "kloosterman",
    "petersson",
    "ramanujan_sum",
    "run_cli",
    "w_star",
    "weil_bound",
]

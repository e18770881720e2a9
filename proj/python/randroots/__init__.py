"""Real roots of random polynomials."""

import json

from ._core import (
    EnsembleSpec,
    PolySample,
    __version__,
    campaign_names,
    count_roots,
    count_roots_sturm,
    expected_roots,
    find_roots,
    intensity,
    ks_lattice,
    make_sample,
    sample_from,
)
from . import _core


def simulate(spec, trials, seed=0, interval=(), workers=1):
    """Monte Carlo root counts; returns the report as a dict."""
    return json.loads(_core._simulate(spec, trials, seed, list(interval), workers))


def verify(lemma, instances, seed=0, workers=1):
    """Run one lemma campaign; returns the summary as a dict."""
    return json.loads(_core._verify(lemma, instances, seed, workers))


__all__ = [
    "EnsembleSpec",
    "PolySample",
    "campaign_names",
    "count_roots",
    "count_roots_sturm",
    "expected_roots",
    "find_roots",
    "intensity",
    "ks_lattice",
    "make_sample",
    "sample_from",
    "simulate",
    "verify",
]

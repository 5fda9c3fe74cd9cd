"""Kobayashi extremal discs, boundary spherical representations and pluricomplex Poisson kernels."""

import json as _json

import numpy as _np

from ._lempertkit import (  # noqa: F401
    Domain,
    LempertError,
    SphericalRep,
    ball_kobayashi,
    ball_poisson_kernel,
    kobayashi_distance,
    kobayashi_metric,
)
from . import _lempertkit as _core

__all__ = [
    "Domain",
    "LempertError",
    "SphericalRep",
    "ball_kobayashi",
    "ball_poisson_kernel",
    "kobayashi_distance",
    "kobayashi_metric",
    "solve_boundary",
    "shoikhet_counterexample",
    "run_suite",
    "vector",
]


def vector(*coords):
    """Complex coordinate vector accepted by every function here."""
    return _np.asarray(coords, dtype=complex)


def solve_boundary(domain, p, v):
    """Extremal disc with phi(1) = p in direction v; returns the pair and certificate as a dict."""
    return _json.loads(_core.solve_boundary(domain, vector(*p), vector(*v)))


def shoikhet_counterexample():
    return _json.loads(_core.shoikhet_counterexample())


def run_suite(name, seed=1, domain=None, p=None, jobs=1):
    """Runs a verification suite (rigidity, ma, rep, geodesics) and returns the report dict."""
    pv = None if p is None else vector(*p)
    return _json.loads(_core.run_suite(name, seed, domain, pv, jobs))

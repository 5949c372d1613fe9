"""Shared fixtures: the standard group/cocycle suite and a startup identity check."""

from __future__ import annotations

import zlib

import numpy as np
import pytest
from hypothesis import settings

import twista as tw

settings.register_profile("ci", max_examples=25, deadline=None, derandomize=True)
settings.load_profile("ci")


GROUP_BUILDERS = {
    "Z4": lambda: tw.cyclic(4),
    "Z2xZ2": lambda: tw.cyclic_product([2, 2]),
    "Z3xZ3": lambda: tw.cyclic_product([3, 3]),
    "D4": lambda: tw.dihedral(4),
    "S3": lambda: tw.symmetric(3),
    "S4": lambda: tw.symmetric(4),
}

BILINEAR_DATA = {
    "Z4": ([4], [[1]]),
    "Z2xZ2": ([2, 2], [[0, 1], [0, 0]]),
    "Z3xZ3": ([3, 3], [[0, 1], [0, 0]]),
}


@pytest.fixture(scope="session")
def suite_groups():
    return {name: build() for name, build in GROUP_BUILDERS.items()}


def cocycles_for(name: str, group: tw.FiniteGroup) -> dict:
    """Per-group cocycle set: trivial, bilinear where applicable, and a
    normalized random coboundary twist (plus the raw twist)."""
    rng = np.random.default_rng(zlib.crc32(name.encode()))
    out = {"trivial": tw.trivial_cocycle(group)}
    if name in BILINEAR_DATA:
        orders, A = BILINEAR_DATA[name]
        out["bilinear"] = tw.bilinear_cocycle(group, A, orders=orders)
    twist, _ = tw.random_coboundary_twist(tw.trivial_cocycle(group, 4), 4, rng)
    out["twist"] = twist
    out["twist_normalized"] = tw.normalize_cocycle(twist)[0]
    return out


@pytest.fixture(scope="session")
def suite_cocycles(suite_groups):
    return {name: cocycles_for(name, g) for name, g in suite_groups.items()}


@pytest.fixture(scope="session", autouse=True)
def _verify_trace_duality_identity(suite_groups):
    """tau(lam(t) lam(s)) = sigma(t, s) [ts = e]: the identity behind the
    coefficient formula of the trace-duality norm, re-verified at startup."""
    for name in ("Z3xZ3", "S3"):
        g = suite_groups[name]
        if name == "Z3xZ3":
            sigma = tw.bilinear_cocycle(g, [[0, 1], [0, 0]], orders=[3, 3])
        else:
            rng = np.random.default_rng(7)
            sigma, _ = tw.random_coboundary_twist(tw.trivial_cocycle(g, 4), 4, rng)
        lam = tw.regular_rep_tensor(sigma)
        n = g.order
        for t in range(n):
            for s in range(n):
                val = np.trace(lam[t] @ lam[s]) / n
                expect = sigma.values[t, s] if g.mul[t, s] == 0 else 0.0
                assert abs(val - expect) < 1e-12

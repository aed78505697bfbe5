"""Shared fixtures: scripted streams, sample batches, path auditing.

The statistical fixtures are expensive (up to 10^6 perfect samples) and
session-scoped so the whole suite draws each batch exactly once.  Seeds
are fixed arbitrary constants; the streams are counter-based, so every
number asserted downstream is fully deterministic.
"""

import numpy as np
import pytest

from vervaat import make_params, sample_many

SEED_DICKMAN = 20260810
SEED_HALF = 31415926
SEED_TWO = 27182818
SEED_QUARTER = 16180339
SEED_EXPANSION = 14142135
SEED_ORACLE = 57721566


class ScriptedStream:
    """Replays a fixed list of 'uniforms'; for hand-traced expectations."""

    def __init__(self, values):
        self.values = list(values)
        self.position = 0

    def next_uniform(self):
        v = self.values[self.position]
        self.position += 1
        return v


def audit_path(params, path):
    """Assert every structural invariant of a coalesced backward path."""
    floor = params.x0 - 1
    ds, us = path.d_states, path.imputed_u
    t_coal = path.coalesce_index
    assert t_coal == len(us) == len(ds) - 1
    assert all(d >= floor for d in ds)
    for s in range(1, len(ds)):
        jump = ds[s - 1] - ds[s]  # forward transition D(-s) -> D(-s+1)
        assert jump in (-1, 0, 1)
        if jump == 0:
            assert ds[s] == floor, "hold is only allowed at the floor"
        assert (jump == 1) == (us[s - 1] > 2.0 / 3.0), "imputation direction"
        assert 0.0 < us[s - 1] < 1.0
    # coalescence exactly at T and never earlier
    assert us[t_coal - 1] ** params.inv_beta <= 1.0 / (1.0 + ds[t_coal])
    for s in range(1, t_coal):
        assert us[s - 1] ** params.inv_beta > 1.0 / (1.0 + ds[s])


@pytest.fixture(scope="session")
def params_dickman():
    return make_params(1.0)


@pytest.fixture(scope="session")
def dickman_batch(params_dickman):
    """(values, steps, d0) for beta = 1, 10^6 samples."""
    return sample_many(params_dickman, 1_000_000, SEED_DICKMAN)


@pytest.fixture(scope="session")
def half_batch():
    """(values, steps, d0) for beta = 0.5, 10^6 samples."""
    return sample_many(make_params(0.5), 1_000_000, SEED_HALF)


@pytest.fixture(scope="session")
def two_batch():
    """(values, steps, d0) for beta = 2, 10^5 samples."""
    return sample_many(make_params(2.0), 100_000, SEED_TWO)


@pytest.fixture(scope="session")
def quarter_batch():
    """(values, steps, d0) for beta = 0.25, 10^5 samples."""
    return sample_many(make_params(0.25), 100_000, SEED_QUARTER)


@pytest.fixture(scope="session")
def batch_by_beta(dickman_batch, half_batch, two_batch, quarter_batch):
    return {
        1.0: dickman_batch,
        0.5: half_batch,
        2.0: two_batch,
        0.25: quarter_batch,
    }

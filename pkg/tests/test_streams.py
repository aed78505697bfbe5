import math

import numpy as np
import pytest

from vervaat import StreamFactory, UniformStream, geometric_half, spawn_substream

from conftest import ScriptedStream


def test_same_seed_reproduces_first_1000():
    a = UniformStream(42)
    b = UniformStream(42)
    assert [a.next_uniform() for _ in range(1000)] == [
        b.next_uniform() for _ in range(1000)
    ]


def test_outputs_in_unit_interval():
    s = UniformStream(7)
    u = s.uniforms(100_000)
    assert u.min() >= 0.0
    assert u.max() < 1.0


def test_position_counts_consumption():
    s = UniformStream(1)
    s.next_uniform()
    s.next_uniform()
    s.uniforms(10)
    assert s.position == 12


def test_recorded_sequence_replays_byte_identical():
    s = UniformStream(987654321, 5)
    recorded = [s.next_uniform() for _ in range(2500)]
    replay = UniformStream(987654321, 5)
    assert recorded == [replay.next_uniform() for _ in range(2500)]


def test_bulk_and_scalar_draws_share_one_sequence():
    s = UniformStream(5)
    head = [s.next_uniform() for _ in range(10)]
    tail = s.uniforms(300)
    ref = UniformStream(5).uniforms(310)
    assert np.array_equal(np.array(head), ref[:10])
    assert np.array_equal(tail, ref[10:])


def test_restart_equals_fresh_stream():
    s = UniformStream(99, 0)
    s.uniforms(137)  # consume an odd amount first
    s.restart(3)
    fresh = UniformStream(99, 3)
    assert [s.next_uniform() for _ in range(500)] == [
        fresh.next_uniform() for _ in range(500)
    ]
    assert s.position == 500


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        UniformStream(1, -1)
    with pytest.raises(ValueError):
        UniformStream(1).restart(-2)


def test_substream_determinism_and_distinctness():
    factory = StreamFactory(7)
    s0a = factory.substream(0)
    s0b = spawn_substream(factory, 0)
    s1 = factory.substream(1)
    seq0a = s0a.uniforms(200)
    assert np.array_equal(seq0a, s0b.uniforms(200))
    assert not np.array_equal(seq0a, s1.uniforms(200))


def test_substreams_uncorrelated():
    factory = StreamFactory(7)
    a = factory.substream(0).uniforms(100_000)
    b = factory.substream(1).uniforms(100_000)
    r = np.corrcoef(a, b)[0, 1]
    assert abs(r) < 0.01


def test_uniform_mean():
    u = UniformStream(123456).uniforms(1_000_000)
    assert abs(u.mean() - 0.5) < 0.002


# -- geometric draws ---------------------------------------------------------


@pytest.mark.parametrize(
    "u, g",
    [
        (0.5, 1),  # -ln(0.5)/ln 2 = 1 exactly
        (0.6, 1),  # ceil(0.7370)
        (0.2, 3),  # ceil(2.3219)
        (0.25, 2),
        (0.999, 1),
    ],
)
def test_geometric_values(u, g):
    assert geometric_half(ScriptedStream([u])) == g


def test_geometric_redraws_zero():
    s = ScriptedStream([0.0, 0.0, 0.5])
    assert geometric_half(s) == 1
    assert s.position == 3


def test_geometric_law():
    s = UniformStream(20260810, 1)
    n = 500_000
    draws = np.array([geometric_half(s) for _ in range(n)])
    assert draws.min() >= 1
    for k in range(1, 11):
        p = 2.0**-k
        se = math.sqrt(p * (1 - p) / n)
        assert abs((draws == k).mean() - p) <= 3 * se, f"k={k}"

import numpy as np
import pytest

from snakemin import RngStream


def test_same_stream_is_reproducible():
    a = RngStream(7, 3).generator().random(100)
    b = RngStream(7, 3).generator().random(100)
    assert np.array_equal(a, b)


def test_distinct_streams_differ():
    a = RngStream(7, 3).generator().random(100)
    b = RngStream(7, 4).generator().random(100)
    c = RngStream(8, 3).generator().random(100)
    assert not np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_substream_keeps_master_seed():
    s = RngStream(11, 0).substream(42)
    assert s.master_seed == 11
    assert s.stream_id == 42


def test_spawn_is_enumerated_substreams():
    parent = RngStream(5, 0)
    kids = parent.spawn(4, base=100)
    assert [k.stream_id for k in kids] == [100, 101, 102, 103]
    assert all(k.master_seed == 5 for k in kids)


def test_stream_is_frozen():
    s = RngStream(1, 2)
    with pytest.raises(Exception):
        s.stream_id = 9

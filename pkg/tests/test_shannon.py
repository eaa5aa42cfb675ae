import math

import numpy as np
import pytest

from rxfront.shannon import AwgnChannelSpec, capacity, capacity_bound, eb_n0
from rxfront.core import ValidationError

LN2 = math.log(2.0)


def test_capacity_known_point():
    # B=2, P=10, N0=1: 2*log2(6)
    assert capacity(AwgnChannelSpec(10.0, 2.0, 1.0)) == 5.169925001442312


def test_capacity_zero_power():
    assert capacity(AwgnChannelSpec(0.0, 1e6, 1e-18)) == 0.0


def test_capacity_bound_is_wideband_limit():
    assert capacity_bound(1.0, 1.0) == 1.4426950408889634
    # capacity increases with bandwidth but never crosses the bound
    caps = [capacity(AwgnChannelSpec(1.0, b, 1.0)) for b in np.logspace(0, 8, 33)]
    assert all(c < capacity_bound(1.0, 1.0) for c in caps)
    assert all(b > a for a, b in zip(caps, caps[1:]))


def test_eb_n0_known_point():
    assert eb_n0(AwgnChannelSpec(10.0, 2.0, 1.0)) == 1.934264036172708


def test_eb_n0_exceeds_ln2():
    rng = np.random.default_rng(11)
    for _ in range(200):
        p = 10.0 ** rng.uniform(-6, 3)
        b = 10.0 ** rng.uniform(0, 7)
        n0 = 10.0 ** rng.uniform(-21, -9)
        assert eb_n0(AwgnChannelSpec(p, b, n0)) > LN2


def test_eb_n0_undefined_at_zero_power():
    with pytest.raises(ValidationError):
        eb_n0(AwgnChannelSpec(0.0, 1.0, 1.0))


def test_spec_validation():
    with pytest.raises(ValidationError):
        AwgnChannelSpec(-1.0, 1.0, 1.0)
    with pytest.raises(ValidationError):
        AwgnChannelSpec(1.0, 0.0, 1.0)
    with pytest.raises(ValidationError):
        AwgnChannelSpec(1.0, 1.0, 0.0)
    with pytest.raises(ValidationError):
        AwgnChannelSpec(math.inf, 1.0, 1.0)


def test_capacity_bound_argument_checks():
    with pytest.raises(ValidationError):
        capacity_bound(-1.0, 1.0)
    with pytest.raises(ValidationError):
        capacity_bound(1.0, 0.0)

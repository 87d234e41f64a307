import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from milnorflow import GroupKind, MilnorMetric

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ALL_GROUPS = list(GroupKind)

component = st.floats(min_value=0.2, max_value=5.0, allow_nan=False, allow_infinity=False)
triple = st.tuples(component, component, component)


@st.composite
def metrics(draw, groups=ALL_GROUPS):
    group = draw(st.sampled_from(groups))
    return MilnorMetric(group, draw(triple))


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20240611)

import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ramjumps.gfq import FqField
from ramjumps.laurent import LaurentSeries

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# small residue fields used across the suite: (p, d)
FIELD_SPECS = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2)]
_FIELDS = {spec: FqField(*spec) for spec in FIELD_SPECS}


def get_field(p, d=1):
    if (p, d) not in _FIELDS:
        _FIELDS[(p, d)] = FqField(p, d)
    return _FIELDS[(p, d)]


@pytest.fixture
def F9():
    # g^2 + 2g + 2 over F_3
    return FqField(3, 2, [2, 2, 1])


@pytest.fixture
def rng():
    return random.Random(12345)


fields = st.sampled_from(FIELD_SPECS).map(lambda s: get_field(*s))


@st.composite
def elements(draw, field, nonzero=False):
    coords = draw(st.lists(st.integers(0, field.p - 1), min_size=field.d, max_size=field.d))
    x = field(coords)
    if nonzero and not x:
        x = field.one
    return x


@st.composite
def series(draw, field, lo=-12, hi=6, max_terms=5, nonzero=False):
    exps = draw(st.lists(st.integers(lo, hi), min_size=1 if nonzero else 0,
                         max_size=max_terms, unique=True))
    terms = {e: draw(elements(field, nonzero=True)) for e in exps}
    return LaurentSeries(field, terms)


@st.composite
def field_and_series(draw, count=1, **kw):
    field = draw(fields)
    return (field,) + tuple(draw(series(field, **kw)) for _ in range(count))

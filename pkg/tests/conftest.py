import hypothesis.strategies as st
from hypothesis import settings

from xfam.family import Family, FamilySeq

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def families(draw, n_min=1, n_max=5, n=None, min_size=0, max_members=12):
    n = draw(st.integers(n_min, n_max)) if n is None else n
    members = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=max_members))
    return Family(n, tuple(m for m in members if m.bit_count() >= min_size))


@st.composite
def nonempty_families(draw, n_min=1, n_max=5, n=None):
    n = draw(st.integers(n_min, n_max)) if n is None else n
    members = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=12))
    return Family(n, tuple(members))


@st.composite
def sequences(draw, n_min=1, n_max=4, m_max=3):
    n = draw(st.integers(n_min, n_max))
    t = draw(st.integers(1, n))
    m = draw(st.integers(2, m_max))
    fams = tuple(draw(nonempty_families(n=n)) for _ in range(m))
    return FamilySeq(n, t, fams)


def F(n, *sets):
    return Family.from_sets(n, sets)

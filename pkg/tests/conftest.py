from functools import lru_cache

from hypothesis import settings, strategies as st

from wakeford.groups import GroupSet, catalog, make_group

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

SMALL_SPECS = tuple(catalog(12))


@lru_cache(maxsize=None)
def group(spec: str):
    return make_group(spec)


groups = st.sampled_from(SMALL_SPECS).map(group)


def subsets(g, min_size=0, max_size=None, pool=None):
    pool = list(range(g.order)) if pool is None else list(pool)
    top = len(pool) if max_size is None else min(max_size, len(pool))
    return st.lists(st.sampled_from(pool), min_size=min_size, max_size=top, unique=True).map(
        lambda xs: GroupSet.of(g.order, xs)) if pool else st.just(GroupSet(g.order, 0))


@st.composite
def group_and_pair(draw, max_size=6, identity_free_b=False):
    """(g, B, A) with |A| = |B| >= 1."""
    g = draw(groups)
    pool_b = range(1, g.order) if identity_free_b else range(g.order)
    if not list(pool_b):
        g = group("cyclic:2")
        pool_b = range(1, 2) if identity_free_b else range(2)
    b = draw(subsets(g, 1, max_size, pool_b))
    a = draw(st.lists(st.sampled_from(range(g.order)), min_size=len(b), max_size=len(b),
                      unique=True))
    return g, b, g.set(a)

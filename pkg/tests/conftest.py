import os
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ncrep.exact import Matrix, as_rational

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = os.path.join(os.path.dirname(__file__), "data")

small_ints = st.integers(-9, 9)
rationals = st.builds(lambda p, q: as_rational(Fraction(p, q)), st.integers(-20, 20), st.integers(1, 6))


@st.composite
def matrices(draw, rows=None, cols=None, elements=small_ints, max_size=4):
    r = draw(st.integers(1, max_size)) if rows is None else rows
    c = r if cols == "square" else (draw(st.integers(1, max_size)) if cols is None else cols)
    return Matrix(r, c, draw(st.lists(elements, min_size=r * c, max_size=r * c)))


def square(n, elements=small_ints):
    return matrices(rows=n, cols=n, elements=elements)

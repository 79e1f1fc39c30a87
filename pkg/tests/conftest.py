from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from chowcalc.algebra import all_monomials

settings.register_profile(
    "default",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

small_rationals = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 4)
)


def classes(pres, max_degree=None, coeffs=small_rationals):
    """Random classes of ``pres`` built from every monomial up to ``max_degree``."""
    monos = all_monomials(pres, max_degree)
    return st.lists(coeffs, min_size=len(monos), max_size=len(monos)).map(
        lambda cs: pres.cls(dict(zip(monos, cs)))
    )

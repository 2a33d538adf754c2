from fractions import Fraction

import pytest

from elastiq import io
from elastiq.distributions import ElasticParams
from elastiq.geometry import AngleTriple
from elastiq.inverse import Gauge, fit
from elastiq.population import Ensemble, Respondent


@pytest.fixture(scope="session")
def cg_survey():
    return io.load_fixture("clinton_gore")


@pytest.fixture(scope="session")
def rj_survey():
    return io.load_fixture("rose_jackson")


@pytest.fixture(scope="session")
def cg_table(cg_survey):
    return io.normalize_table(cg_survey, exact=True)


@pytest.fixture(scope="session")
def rj_table(rj_survey):
    return io.normalize_table(rj_survey, exact=True)


@pytest.fixture(scope="session")
def half_eps_a_gauge():
    return Gauge("eps-a", Fraction(1, 2))


@pytest.fixture(scope="session")
def cg_params(cg_table, half_eps_a_gauge):
    return fit(cg_table, half_eps_a_gauge)


@pytest.fixture(scope="session")
def rj_params(rj_table, half_eps_a_gauge):
    return fit(rj_table, half_eps_a_gauge)


@pytest.fixture(scope="session")
def two_minds_ensemble():
    # Two respondents with symmetric elastics of different widths sharing
    # one state geometry; the canonical symmetry-breaking example.
    def symmetric(eps):
        e = ElasticParams(eps, Fraction(0))
        return Respondent(e, e)

    return Ensemble(
        (symmetric(Fraction(1)), symmetric(Fraction(2, 5))),
        AngleTriple(Fraction(3, 10), Fraction(1, 10), Fraction(1, 5)),
    )

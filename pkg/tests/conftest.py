import pytest
from hypothesis import settings

from coxfan import corpus, cox, grading, gradmod

settings.register_profile("ci", deadline=None, max_examples=40)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def p2_grading():
    return grading.build_grading(corpus.build("p2"))


@pytest.fixture(scope="session")
def p2_cox(p2_grading):
    b = grading.subgroup_of_whole_group(p2_grading)
    flags = cox.BaseRingFlags(field=True, noetherian=True, reduced=True)
    return cox.build_cox(p2_grading, b, flags)


@pytest.fixture(scope="session")
def p2_ring(p2_cox):
    return gradmod.free_module(p2_cox)


@pytest.fixture(scope="session")
def corpus_gradings():
    return {name: grading.build_grading(corpus.build(name)) for name in corpus.CORPUS_NAMES}

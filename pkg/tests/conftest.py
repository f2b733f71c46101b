import os

import pytest

from tamek2.survey import GOLDEN_RANGE, run_survey


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(tmp_path_factory):
    # keep test runs away from the user's cache directory
    path = tmp_path_factory.mktemp("cache") / "primereps.csv"
    old = os.environ.get("TAMEK2_PRIMEREP_CACHE")
    os.environ["TAMEK2_PRIMEREP_CACHE"] = str(path)
    yield path
    if old is None:
        os.environ.pop("TAMEK2_PRIMEREP_CACHE", None)
    else:
        os.environ["TAMEK2_PRIMEREP_CACHE"] = old


@pytest.fixture(scope="session")
def golden_survey():
    return run_survey(*GOLDEN_RANGE, jobs=1)

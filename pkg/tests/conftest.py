import json
from importlib import resources

import pytest
from hypothesis import settings

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def reference_doc():
    path = resources.files("nlbox.data") / "beta_reference.json"
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def default_class_map():
    from nlbox import swap

    return swap.class_map()

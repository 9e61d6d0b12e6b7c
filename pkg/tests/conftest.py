import pytest
from hypothesis import settings

from _helpers import acceptance_groups
from noether import GroupForm, builtin_group

settings.register_profile("ci", deadline=None, derandomize=True)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def corpus_form() -> GroupForm:
    return GroupForm(acceptance_groups())


@pytest.fixture(scope="session")
def z6_form() -> GroupForm:
    return GroupForm([builtin_group("Z6")])


@pytest.fixture(scope="session")
def d8_form() -> GroupForm:
    return GroupForm([builtin_group("D8")])

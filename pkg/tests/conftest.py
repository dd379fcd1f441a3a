import pytest

from ncresolve import (ModulePresentation, resolve, steenrod_context)


@pytest.fixture(scope="session")
def ctx10():
    return steenrod_context(10)


@pytest.fixture(scope="session")
def ctx12():
    return steenrod_context(12)


@pytest.fixture(scope="session")
def ctx20():
    return steenrod_context(20)


@pytest.fixture(scope="session")
def resolution_k20_s4(ctx20):
    """The flagship run: minimal resolution of F2 over the Steenrod algebra,
    internal degree <= 20, homological degree <= 4."""
    return resolve(ModulePresentation.trivial_module(), ctx20, 4)


@pytest.fixture(scope="session")
def resolution_k18_s4():
    return resolve(ModulePresentation.trivial_module(), steenrod_context(18), 4)

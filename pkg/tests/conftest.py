import pytest

from lfoldq.modforms import build_level_one_eigenform


@pytest.fixture(scope="session")
def delta_10k():
    return build_level_one_eigenform(12, 10**4, use_cache=False)


@pytest.fixture(scope="session")
def delta_1k(delta_10k):
    # a prefix view is enough for small tests
    from lfoldq.modforms import Eigenform

    return Eigenform(
        label=delta_10k.label,
        weight=12,
        level=1,
        coeffs=delta_10k.coeffs[: 10**3 + 1],
        x_max=10**3,
    )


@pytest.fixture(scope="session")
def delta_1e6():
    # acceptance-scale build; several seconds, shared across the session
    return build_level_one_eigenform(12, 10**6, use_cache=False)

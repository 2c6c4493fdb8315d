import pytest

from localregen import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # pay any JIT compilation cost before timed tests run
    kernels.warm_up()

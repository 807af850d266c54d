import pytest

from fermatlab.acceptance import run_all


@pytest.fixture(scope="session")
def acceptance_suite():
    """Run the acceptance criteria once for the whole session; individual
    tests pick apart the shared result."""
    return run_all()

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for `import oracles`

from lowrankseg import generate_toy

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def toy():
    """Clean synthetic dataset: 5 subspaces of dim 4 in R^100, 20 samples each."""
    return generate_toy(seed=1)


@pytest.fixture(scope="session")
def repo_root():
    return REPO_ROOT

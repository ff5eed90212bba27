import os
import sys

import pytest

# the build exports the module directory and binary/data paths
if "RPSP_PY_DIR" in os.environ:
    sys.path.insert(0, os.environ["RPSP_PY_DIR"])


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("RPSP_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("RPSP_CLI not set")
    return path


@pytest.fixture(scope="session")
def data_dir():
    path = os.environ.get("RPSP_DATA", "data")
    if not os.path.isdir(path):
        pytest.skip("RPSP_DATA not set")
    return path

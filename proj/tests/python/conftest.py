import json
import os
import pathlib
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


def _runner():
    exe = os.environ.get("DIRAC_ATLAS_EXE")
    if exe:

        def run(*args):
            p = subprocess.run([exe, *map(str, args)], capture_output=True, text=True)
            return p.returncode, p.stdout, p.stderr

        return run
    core = pytest.importorskip("dirac_atlas._core")
    return lambda *args: core.run([str(a) for a in args])


@pytest.fixture(scope="session")
def cli():
    return _runner()


@pytest.fixture(scope="session")
def schemas():
    return {
        p.name.removesuffix(".schema.json"): json.loads(p.read_text())
        for p in (ROOT / "schemas").glob("*.schema.json")
    }

from __future__ import annotations

import json
import subprocess
import sys

import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile("ci")


@pytest.fixture
def run_cli():
    """Run ``python -m nilhoro`` and return (exit code, parsed stdout or raw text, stderr)."""

    def run(*args: str):
        proc = subprocess.run(
            [sys.executable, "-m", "nilhoro", *args], capture_output=True, text=True, check=False, timeout=300
        )
        try:
            out = json.loads(proc.stdout)
        except json.JSONDecodeError:
            out = proc.stdout
        return proc.returncode, out, proc.stderr

    return run

from dataclasses import dataclass
import os
import shutil
import tempfile
from unittest import TestCase

from typer.testing import CliRunner

from typlab import settings


@dataclass
class TestOutputEnvironment:
    OUTPUT_DIR: str
    RESULTS: str


def setUpTestOutput() -> TestOutputEnvironment:
    """Setup a temporary output directory for sweeps and their artifacts."""
    output_dir = tempfile.mkdtemp()
    settings.print_config["silent"] = False
    settings.print_config["debug"] = False
    return TestOutputEnvironment(
        OUTPUT_DIR=output_dir,
        RESULTS=os.path.join(output_dir, "results.jsonl"),
    )


def tearDownTestOutput(env: TestOutputEnvironment) -> None:
    """Remove the temporary output directory after tests."""
    shutil.rmtree(env.OUTPUT_DIR)


class CliCommandTestBaseClass(TestCase):
    def setUp(self):
        self.env = setUpTestOutput()
        self.runner = CliRunner()

    def tearDown(self):
        tearDownTestOutput(self.env)

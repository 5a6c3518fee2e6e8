from pathlib import Path

import numpy as np
import pytest

from depseq.conllu import DepTree, read_conllu

DATA = Path(__file__).parent / "data"


@pytest.fixture
def sample_path():
    return DATA / "sample.conllu"


@pytest.fixture
def sample(sample_path):
    return read_conllu(sample_path)


@pytest.fixture
def dog_tree():
    # the/DET dog/NOUN chased/VERB cats/NOUN
    return DepTree.from_heads([2, 3, 0, 3], ["det", "nsubj", "root", "obj"],
                              ["DET", "NOUN", "VERB", "NOUN"], ["the", "dog", "chased", "cats"])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""
    def record(name, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        print(ACCEPTANCE_LINES[-1])
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

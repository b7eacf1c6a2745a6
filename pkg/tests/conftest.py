import pytest
from hypothesis import strategies as st

from freemetric.words import Alphabet, MonoidWord, Word, generators

F2 = Alphabet(2)


@pytest.fixture
def ab():
    return generators(F2)


def words(max_size=12, rank=2):
    letters = [c for i in range(1, rank + 1) for c in (i, -i)]
    return st.lists(st.sampled_from(letters), max_size=max_size).map(
        lambda cs: Word(tuple(cs), Alphabet(rank))
    )


def monoid_words(max_size=8, rank=2):
    return st.lists(st.integers(1, rank), max_size=max_size).map(
        lambda cs: MonoidWord(tuple(cs), Alphabet(rank))
    )


# criterion number -> (passed, description); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {num:>2}: {text}")

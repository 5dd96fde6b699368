from __future__ import annotations

import itertools
import sys
from typing import Iterator

from artifact.braid import BraidWord, make_word
from artifact.cartan_weyl import CartanData


def words(C: CartanData, max_len: int, min_len: int = 0) -> Iterator[BraidWord]:
    for n in range(min_len, max_len + 1):
        for letters in itertools.product(range(1, C.rank + 1), repeat=n):
            yield make_word(letters, C)


def pairs(C: CartanData, max_total: int) -> Iterator[tuple[BraidWord, BraidWord]]:
    """All (b, d) with len(b) + len(d) <= max_total."""
    for total in range(max_total + 1):
        for nb in range(total + 1):
            for b in itertools.product(range(1, C.rank + 1), repeat=nb):
                for d in itertools.product(range(1, C.rank + 1), repeat=total - nb):
                    yield make_word(b, C), make_word(d, C)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])

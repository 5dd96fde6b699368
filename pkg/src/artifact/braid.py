"""Positive braid words: parsing, reversal, braid moves and bounded equality search."""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

from .cartan_weyl import INFINITY, CartanData, braid_exponent
from .errors import ArtifactError

UNDECIDED = "undecided"

_TOKEN_RE = re.compile(r"^[sS]?(\d+)$")


@dataclass(frozen=True)
class BraidWord:
    letters: tuple[int, ...]
    cartan: CartanData

    def __post_init__(self):
        for i in self.letters:
            self.cartan.check_index(i)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __add__(self, other: BraidWord) -> BraidWord:
        if other.cartan != self.cartan:
            raise ArtifactError("braid words over different Cartan data")
        return BraidWord(self.letters + other.letters, self.cartan)

    def __str__(self) -> str:
        return " ".join(map(str, self.letters))


def make_word(letters: Sequence[int], C: CartanData) -> BraidWord:
    return BraidWord(tuple(letters), C)


def parse_braid(text: str, C: CartanData) -> BraidWord:
    """
    Parse "1 2 1", "1,2,1" or "s1, s2, s1".

    >>> from artifact.cartan_weyl import cartan_from_name
    >>> parse_braid("s2, s1, s3", cartan_from_name("A3")).letters
    (2, 1, 3)
    """
    tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    letters = []
    for tok in tokens:
        m = _TOKEN_RE.match(tok)
        if not m:
            raise ArtifactError(f"bad braid token {tok!r}")
        letters.append(int(m.group(1)))
    return BraidWord(tuple(letters), C)


def reverse(b: BraidWord) -> BraidWord:
    return BraidWord(b.letters[::-1], b.cartan)


def move_length(C: CartanData, letters: Sequence[int], pos: int) -> int | None:
    """Length m_ij of the braid move starting at ``pos``, or None if none applies there."""
    if pos < 0 or pos + 1 >= len(letters):
        return None
    i, j = letters[pos], letters[pos + 1]
    if i == j:
        return None
    m = braid_exponent(C, i, j)
    if m == INFINITY or pos + m > len(letters):
        return None
    m = int(m)
    for k in range(m):
        if letters[pos + k] != (i if k % 2 == 0 else j):
            return None
    return m


def apply_braid_move(b: BraidWord, pos: int) -> BraidWord:
    """
    Replace the alternating subword at ``pos`` by the one starting with the other letter.

    >>> from artifact.cartan_weyl import cartan_from_name
    >>> apply_braid_move(parse_braid("1 2 1 2", cartan_from_name("B2")), 0).letters
    (2, 1, 2, 1)
    """
    letters = b.letters
    if pos < 0 or pos + 1 >= len(letters) or letters[pos] == letters[pos + 1]:
        raise ArtifactError("no braid move at this position")
    i, j = letters[pos], letters[pos + 1]
    if braid_exponent(b.cartan, i, j) == INFINITY:
        raise ArtifactError("braid exponent is infinite")
    m = move_length(b.cartan, letters, pos)
    if m is None:
        raise ArtifactError("no braid move at this position")
    swapped = tuple(j if k % 2 == 0 else i for k in range(m))
    return BraidWord(letters[:pos] + swapped + letters[pos + m:], b.cartan)


def braid_neighbors(b: BraidWord) -> Iterator[BraidWord]:
    for pos in range(len(b.letters) - 1):
        if move_length(b.cartan, b.letters, pos) is not None:
            yield apply_braid_move(b, pos)


def braid_orbit(b: BraidWord, node_cap: int = 100_000) -> set[tuple[int, ...]] | None:
    """All words reachable by braid moves, or None if the cap is hit."""
    seen = {b.letters}
    queue = deque([b])
    while queue:
        cur = queue.popleft()
        for nxt in braid_neighbors(cur):
            if nxt.letters not in seen:
                seen.add(nxt.letters)
                if len(seen) > node_cap:
                    return None
                queue.append(nxt)
    return seen


def braids_equal(
    a: BraidWord, b: BraidWord, node_cap: int = 1000
) -> bool | Literal["undecided"]:
    """Breadth-first search over braid moves from ``a``; "undecided" when the cap is hit."""
    if a.cartan != b.cartan:
        raise ArtifactError("braid words over different Cartan data")
    if len(a) != len(b):
        return False
    if a.letters == b.letters:
        return True
    seen = {a.letters}
    queue = deque([a])
    while queue:
        cur = queue.popleft()
        for nxt in braid_neighbors(cur):
            if nxt.letters == b.letters:
                return True
            if nxt.letters not in seen:
                if len(seen) >= node_cap:
                    return UNDECIDED
                seen.add(nxt.letters)
                queue.append(nxt)
    return False

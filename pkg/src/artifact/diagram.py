"""
Triangulations of a trapezoid, their string diagrams, and the seeds built from them.

A triangulation for a pair of words (top, bottom) is encoded by a pattern over
``{"T", "B"}``: reading triangles left to right, ``T`` consumes the next top
letter (apex down) and ``B`` the next bottom letter (apex up). Every triangle
contributes one node to the string diagram: ``+i`` for a bottom letter ``i``,
``-i`` for a top letter ``i``, placed on level ``i`` at the triangle's index.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from .braid import BraidWord, move_length, reverse
from .cartan_weyl import CartanData
from .errors import ArtifactError
from .seed import MutationScript, Seed

TOP = "T"
BOTTOM = "B"


def string_id(level: int, ordinal: int) -> str:
    return f"{level}:{ordinal}"


def parse_string_id(v: str) -> tuple[int, int]:
    try:
        level, ordinal = str(v).split(":")
        return int(level), int(ordinal)
    except ValueError:
        raise ArtifactError(f"bad string identifier {v!r}") from None


def string_sort_key(v: str) -> tuple[int, int]:
    return parse_string_id(v)


@dataclass(frozen=True)
class Triangulation:
    top: BraidWord
    bottom: BraidWord
    pattern: str

    def __post_init__(self):
        if any(ch not in (TOP, BOTTOM) for ch in self.pattern):
            raise ArtifactError("pattern symbols must be T or B")
        if self.pattern.count(TOP) != len(self.top) or self.pattern.count(BOTTOM) != len(
            self.bottom
        ):
            raise ArtifactError("Wrong Triangulation!")
        if self.top.cartan != self.bottom.cartan:
            raise ArtifactError("top and bottom words use different Cartan data")

    @property
    def cartan(self) -> CartanData:
        return self.top.cartan

    def triangles(self) -> list[tuple[str, int]]:
        """(symbol, letter) for each triangle, left to right."""
        tops, bottoms = iter(self.top.letters), iter(self.bottom.letters)
        return [(ch, next(tops) if ch == TOP else next(bottoms)) for ch in self.pattern]

    def positions(self, side: str) -> list[int]:
        """Triangle indices holding the letters of one base, in word order."""
        return [k for k, ch in enumerate(self.pattern) if ch == side]

    def to_json(self) -> dict:
        return {
            "top": list(self.top.letters),
            "bottom": list(self.bottom.letters),
            "pattern": self.pattern,
        }


def build_triangulation(top: BraidWord, bottom: BraidWord, pattern: str | Sequence[str]) -> Triangulation:
    text = "".join(pattern).upper() if not isinstance(pattern, str) else pattern.upper()
    return Triangulation(top, bottom, text)


def bottom_only(word: BraidWord) -> Triangulation:
    """The unique triangulation with an empty top base."""
    return Triangulation(BraidWord((), word.cartan), word, BOTTOM * len(word))


@dataclass(frozen=True)
class Node:
    position: int
    level: int
    sign: int


@dataclass(frozen=True)
class StringDiagram:
    """
    Nodes in triangle order plus, per level, the sorted node positions.

    String ``(i, j)`` is the segment on level ``i`` between the ``j``-th and
    ``(j+1)``-th node (counting from 1); ``j = 0`` is the leftmost segment.
    """

    levels: int
    nodes: tuple[Node, ...]
    level_positions: tuple[tuple[int, ...], ...]

    def node_count(self, level: int) -> int:
        return len(self.level_positions[level - 1])

    def strings(self, level: int) -> list[str]:
        return [string_id(level, j) for j in range(self.node_count(level) + 1)]

    def all_strings(self) -> list[str]:
        return [v for i in range(1, self.levels + 1) for v in self.strings(i)]

    def closed_strings(self) -> list[str]:
        return [
            string_id(i, j)
            for i in range(1, self.levels + 1)
            for j in range(1, self.node_count(i))
        ]

    def is_closed(self, v: str) -> bool:
        level, j = parse_string_id(v)
        return 1 <= j < self.node_count(level)

    def string_at(self, level: int, position: int) -> str:
        """The string on ``level`` whose open interval contains ``position``."""
        pos = self.level_positions[level - 1]
        k = bisect.bisect_left(pos, position)
        if k < len(pos) and pos[k] == position:
            raise ArtifactError("internal error: two nodes share a triangle")
        return string_id(level, k)

    def node_ordinal(self, node: Node) -> int:
        return self.level_positions[node.level - 1].index(node.position)


def string_diagram(t: Triangulation, C: CartanData | None = None) -> StringDiagram:
    C = C or t.cartan
    nodes = []
    per_level: list[list[int]] = [[] for _ in range(C.levels)]
    for k, (ch, letter) in enumerate(t.triangles()):
        C.check_index(letter)
        nodes.append(Node(k, letter, 1 if ch == BOTTOM else -1))
        per_level[letter - 1].append(k)
    return StringDiagram(C.levels, tuple(nodes), tuple(tuple(p) for p in per_level))


def seed_from_diagram(sd: StringDiagram, C: CartanData) -> Seed:
    """Sum of the local node contributions; closed strings are the unfrozen vertices."""
    verts = sd.all_strings()
    idx = {v: k for k, v in enumerate(verts)}
    n = len(verts)
    eps = [[Fraction(0)] * n for _ in range(n)]
    half = Fraction(1, 2)
    for node in sd.nodes:
        i, s = node.level, node.sign
        j = sd.node_ordinal(node)
        a, b = idx[string_id(i, j)], idx[string_id(i, j + 1)]
        eps[a][b] -= s
        eps[b][a] += s
        for other in range(1, sd.levels + 1):
            if other == i:
                continue
            c_other_i = C.entry(other, i)
            c_i_other = C.entry(i, other)
            if c_other_i == 0 and c_i_other == 0:
                continue
            c = idx[sd.string_at(other, node.position)]
            eps[a][c] += s * (-c_other_i) * half
            eps[b][c] += s * c_other_i * half
            eps[c][a] += s * c_i_other * half
            eps[c][b] += s * (-c_i_other) * half
    d = [C.level_multiplier(parse_string_id(v)[0]) for v in verts]
    closed = set(sd.closed_strings())
    frozen = [v for v in verts if v not in closed]
    return Seed(verts, frozen, eps, d)


def seed_of(t: Triangulation) -> Seed:
    return seed_from_diagram(string_diagram(t), t.cartan)


def flip_diagonal(t: Triangulation, k: int) -> tuple[Triangulation, MutationScript]:
    """
    Swap triangles ``k`` and ``k + 1`` (one top, one bottom).

    Different letters leave the seed unchanged; equal letters mutate at the
    closed string between the two nodes.
    """
    p = t.pattern
    if not (0 <= k < len(p) - 1) or p[k] == p[k + 1]:
        raise ArtifactError("no flippable quadrilateral at this diagonal")
    tri = t.triangles()
    new = Triangulation(t.top, t.bottom, p[:k] + p[k + 1] + p[k] + p[k + 2:])
    if tri[k][1] != tri[k + 1][1]:
        return new, MutationScript(())
    sd = string_diagram(t)
    level = tri[k][1]
    j = sd.level_positions[level - 1].index(k)
    return new, MutationScript((string_id(level, j + 1),))


def _region(t: Triangulation, side: str, pos: int, m: int) -> list[int]:
    return t.positions(side)[pos:pos + m]


def braid_move_on_base(
    t: Triangulation, side: Literal["top", "bottom"], pos: int
) -> tuple[Triangulation, MutationScript]:
    """
    Apply a braid move to one base word and return the matching mutation script.

    The returned script's ``relabel`` sends each string of the old diagram to
    the corresponding string of the new one.
    """
    sym = TOP if side == "top" else BOTTOM
    word = t.top if sym == TOP else t.bottom
    C = t.cartan
    m = move_length(C, word.letters, pos)
    if m is None:
        raise ArtifactError("no braid move applies at this position")
    region = _region(t, sym, pos, m)
    if region != list(range(region[0], region[0] + m)):
        raise ArtifactError("the moved letters do not occupy consecutive triangles")
    i, j = word.letters[pos], word.letters[pos + 1]
    swapped = tuple(j if k % 2 == 0 else i for k in range(m))
    new_word = BraidWord(word.letters[:pos] + swapped + word.letters[pos + m:], C)
    new_t = (
        Triangulation(new_word, t.bottom, t.pattern)
        if sym == TOP
        else Triangulation(t.top, new_word, t.pattern)
    )
    sd_old, sd_new = string_diagram(t), string_diagram(new_t)
    start = region[0]
    if m == 2:
        steps: tuple[str, ...] = ()
        corr = {v: v for v in sd_old.all_strings()}
    elif m == 3:
        jo = sd_old.level_positions[i - 1].index(start)
        inner = string_id(i, jo + 1)
        kn = sd_new.level_positions[j - 1].index(start)
        corr = {}
        for v in sd_old.all_strings():
            lv, o = parse_string_id(v)
            if lv == i and o > jo + 1:
                corr[v] = string_id(lv, o - 1)
            elif lv == j and o > kn:
                corr[v] = string_id(lv, o + 1)
            else:
                corr[v] = v
        corr[inner] = string_id(j, kn + 1)
        steps = (inner,)
    else:
        corr = {v: v for v in sd_old.all_strings()}
        steps = _long_move_script(sd_old, C, i, j, start, m)
    return new_t, MutationScript(steps, tuple(sorted(corr.items(), key=lambda kv: string_sort_key(kv[0]))))


# Scripts for the doubly-laced and triply-laced moves, read in terms of the
# labels of the picture in which the level with C_ij in {-2, -3} comes first.
_B2_SCRIPT = ("a", "b", "a")
_G2_SCRIPT = ("d", "c", "b", "a", "d", "b", "d", "c", "a", "d")


def _inner_strings(sd: StringDiagram, level: int, start: int, m: int) -> list[str]:
    pos = sd.level_positions[level - 1]
    inside = [k for k, p in enumerate(pos) if start <= p < start + m]
    return [string_id(level, k + 1) for k in inside[:-1]]


def _long_move_script(
    sd: StringDiagram, C: CartanData, first: int, second: int, start: int, m: int
) -> tuple[str, ...]:
    # level_i is the level whose row of C holds the -2 or -3
    level_i = first if C.C[first - 1][second - 1] < -1 else second
    level_j = second if level_i == first else first
    labels = dict(zip("ab" if m == 6 else "a", _inner_strings(sd, level_i, start, m)))
    labels.update(zip("cd" if m == 6 else "b", _inner_strings(sd, level_j, start, m)))
    script = _G2_SCRIPT if m == 6 else _B2_SCRIPT
    if first != level_i:
        # moving back from the picture that starts with the other level
        script = script[::-1]
    return tuple(labels[x] for x in script)


def normalize_for_move(
    t: Triangulation, side: Literal["top", "bottom"], pos: int
) -> tuple[Triangulation, list[str]]:
    """
    Flip diagonals until the letters of the braid move sit in consecutive triangles.

    Returns the new triangulation and the concatenated mutation steps of the flips.
    """
    sym = TOP if side == "top" else BOTTOM
    word = t.top if sym == TOP else t.bottom
    m = move_length(t.cartan, word.letters, pos)
    if m is None:
        raise ArtifactError("no braid move applies at this position")
    steps: list[str] = []
    while True:
        region = _region(t, sym, pos, m)
        gap = next((k for k in range(region[0], region[-1]) if t.pattern[k] != sym), None)
        if gap is None:
            return t, steps
        # push the foreign triangle rightwards past the next region triangle
        k = gap
        while t.pattern[k + 1] != sym:
            k += 1
        t, script = flip_diagonal(t, k)
        steps.extend(script.steps)


def transpose_triangulation(t: Triangulation) -> Triangulation:
    """The triangulation for (reverse(bottom), reverse(top)): mirror and swap bases."""
    pattern = "".join(BOTTOM if ch == TOP else TOP for ch in reversed(t.pattern))
    return Triangulation(reverse(t.bottom), reverse(t.top), pattern)


def transposition_bijection(sd: StringDiagram) -> dict[str, str]:
    """String (i, j) goes to (i, n_i - j) where n_i counts the nodes on level i."""
    out = {}
    for i in range(1, sd.levels + 1):
        n = sd.node_count(i)
        for j in range(n + 1):
            out[string_id(i, j)] = string_id(i, n - j)
    return out


def all_patterns(n_top: int, n_bottom: int) -> list[str]:
    """Every pattern with the given symbol counts, in lexicographic order."""
    from itertools import combinations

    total = n_top + n_bottom
    out = []
    for tops in combinations(range(total), n_top):
        s = set(tops)
        out.append("".join(TOP if k in s else BOTTOM for k in range(total)))
    return sorted(out)

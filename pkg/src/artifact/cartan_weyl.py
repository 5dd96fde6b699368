"""
Symmetrizable generalized Cartan matrices and Weyl group elements.

Convention: ``C[i][j] = <alpha_i^vee, alpha_j>`` with 1-based indices in the
public API and 0-based storage. For type B2 the first simple root is the one
with ``C[1][2] = -2``; for G2, ``C[1][2] = -3``.

Type A Weyl groups use permutations of ``{0, ..., r}``. Everything else uses
integer matrices acting on the root lattice in the basis of simple roots.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .errors import ArtifactError

INFINITY = math.inf

# Safety cap for searches that only terminate in finite type.
DEFAULT_ITERATION_CAP = 10_000


@dataclass(frozen=True)
class CartanData:
    """Cartan matrix with symmetrizer, plus optional extra levels (corank)."""

    name: str
    C: tuple[tuple[int, ...], ...]
    D: tuple[int, ...]
    corank: int = 0
    # coupling of the extra levels to the simple roots, one row per extra level
    A: tuple[tuple[int, ...], ...] = field(default=())
    permutation_model: bool = False

    def __post_init__(self):
        validate_cartan(self.C, self.D)
        if self.corank < 0:
            raise ArtifactError("corank must be non-negative")
        if self.A:
            if len(self.A) != self.corank or any(len(row) != self.rank for row in self.A):
                raise ArtifactError("coupling matrix A must be corank x rank")
            if any(x > 0 for row in self.A for x in row):
                raise ArtifactError("coupling entries must be non-positive")

    @property
    def rank(self) -> int:
        return len(self.C)

    @property
    def levels(self) -> int:
        return self.rank + self.corank

    def entry(self, i: int, j: int) -> int:
        """Extended Cartan entry for 1-based levels ``i, j <= levels``."""
        r = self.rank
        if i <= r and j <= r:
            return self.C[i - 1][j - 1]
        if i > r and j > r:
            return 2 if i == j else 0
        if not self.A:
            return 0
        if i > r:
            return self.A[i - r - 1][j - 1]
        return self.D[i - 1] * self.A[j - r - 1][i - 1]

    def level_multiplier(self, i: int) -> int:
        return self.D[i - 1] if i <= self.rank else 1

    def check_index(self, i: int) -> None:
        if not (isinstance(i, int) and 1 <= i <= self.rank):
            raise ArtifactError("index out of range")

    def to_json(self) -> dict:
        out = {"C": [list(r) for r in self.C], "D": list(self.D), "corank": self.corank}
        if self.A:
            out["A"] = [list(r) for r in self.A]
        return out


def validate_cartan(C: Sequence[Sequence[int]], D: Sequence[int]) -> None:
    r = len(C)
    if r == 0:
        raise ArtifactError("empty Cartan matrix")
    if any(len(row) != r for row in C):
        raise ArtifactError("Cartan matrix must be square")
    for i in range(r):
        if C[i][i] != 2:
            raise ArtifactError("Cartan diagonal must be 2")
        for j in range(r):
            if i == j:
                continue
            if C[i][j] > 0:
                raise ArtifactError("off-diagonal Cartan entries must be <= 0")
            if (C[i][j] == 0) != (C[j][i] == 0):
                raise ArtifactError("Cartan zero pattern must be symmetric")
    if len(D) != r or any(d <= 0 for d in D):
        raise ArtifactError("symmetrizer must have one positive entry per row")
    if reduce(math.gcd, D) != 1:
        raise ArtifactError("symmetrizer entries must have gcd 1")
    for i in range(r):
        for j in range(r):
            if Fraction(C[i][j], D[i]) != Fraction(C[j][i], D[j]):
                raise ArtifactError("D^-1 C is not symmetric")


def minimal_symmetrizer(C: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Smallest positive integer D with D^-1 C symmetric, found by propagating along edges."""
    r = len(C)
    vals: list[Fraction | None] = [None] * r
    for start in range(r):
        if vals[start] is not None:
            continue
        vals[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(r):
                if j != i and C[i][j] != 0:
                    # C[i][j] / D[i] = C[j][i] / D[j]
                    dj = vals[i] * Fraction(C[j][i], C[i][j])
                    if vals[j] is None:
                        vals[j] = dj
                        stack.append(j)
                    elif vals[j] != dj:
                        raise ArtifactError("Cartan matrix is not symmetrizable")
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (v.denominator for v in vals), 1)
    ints = [int(v * lcm) for v in vals]
    g = reduce(math.gcd, ints)
    return tuple(x // g for x in ints)


def _finite_type(letter: str, n: int) -> list[list[int]]:
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        C[i][j], C[j][i] = cij, cji

    if letter == "A" and n >= 1:
        for i in range(n - 1):
            link(i, i + 1)
    elif letter in "BC" and n >= 2:
        for i in range(1, n - 1):
            link(i, i + 1)
        # short simple root first in B_n, matching the B2 convention
        if letter == "B":
            link(0, 1, -2, -1)
        else:
            link(0, 1, -1, -2)
    elif letter == "D" and n >= 3:
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "E" and n in (6, 7, 8):
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif letter == "F" and n == 4:
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif letter == "G" and n == 2:
        link(0, 1, -3, -1)
    else:
        raise ArtifactError(f"unknown Cartan type {letter}{n}")
    return C


_TYPE_RE = re.compile(r"^([A-G])(\d+)$")


def cartan_from_name(name: str) -> CartanData:
    """
    Standard Cartan data for a label such as ``A2``, ``G2`` or ``A1xA1``.

    >>> cartan_from_name("B2").C
    ((2, -2), (-1, 2))
    >>> cartan_from_name("B2").D
    (2, 1)
    """
    label = name.strip().upper().replace("×", "X")
    parts = [p for p in label.split("X") if p]
    if not parts:
        raise ArtifactError(f"unknown Cartan type {name!r}")
    blocks = []
    for part in parts:
        m = _TYPE_RE.match(part)
        if not m:
            raise ArtifactError(f"unknown Cartan type {name!r}")
        blocks.append(_finite_type(m.group(1), int(m.group(2))))
    size = sum(len(b) for b in blocks)
    C = [[0] * size for _ in range(size)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                C[offset + i][offset + j] = x
        offset += len(b)
    D = minimal_symmetrizer(C)
    single_a = len(parts) == 1 and parts[0].startswith("A")
    return CartanData(
        name=label if len(parts) > 1 else parts[0],
        C=tuple(tuple(r) for r in C),
        D=D,
        permutation_model=single_a,
    )


def cartan_from_json(data: dict | str) -> CartanData:
    """Load ``{"C": [[...]], "D": [...], "corank": l}`` with an optional ``"A"`` coupling."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        C = tuple(tuple(int(x) for x in row) for row in data["C"])
        D = tuple(int(x) for x in data["D"])
        corank = int(data.get("corank", 0))
        A = tuple(tuple(int(x) for x in row) for row in data.get("A", ()))
    except (KeyError, TypeError, ValueError) as exc:
        raise ArtifactError(f"malformed Cartan JSON: {exc}") from exc
    return CartanData(name=data.get("name", "custom"), C=C, D=D, corank=corank, A=A)


def braid_exponent(C: CartanData, i: int, j: int) -> float | int:
    """m_ij from the product C_ij C_ji."""
    C.check_index(i)
    C.check_index(j)
    if i == j:
        raise ArtifactError("braid exponent needs i != j")
    p = C.C[i - 1][j - 1] * C.C[j - 1][i - 1]
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(p, INFINITY)


@dataclass(frozen=True)
class WeylElement:
    """
    A Weyl group element.

    ``kind`` is ``"perm"`` (payload is the one-line notation of a permutation of
    ``{0..r}``) or ``"matrix"`` (payload is the flattened action on simple-root
    coordinates, columns being images of simple roots). Matrix elements also
    carry their inverse, which is excluded from equality and hashing.
    """

    kind: str
    payload: tuple[int, ...]
    inverse_payload: tuple[int, ...] = field(default=(), compare=False, hash=False)

    def key(self) -> bytes:
        """Canonical byte serialization, used for hashing in DP tables."""
        return self.kind.encode() + b":" + ",".join(map(str, self.payload)).encode()


def weyl_identity(C: CartanData) -> WeylElement:
    r = C.rank
    if C.permutation_model:
        return WeylElement("perm", tuple(range(r + 1)))
    ident = tuple(1 if a == b else 0 for a in range(r) for b in range(r))
    return WeylElement("matrix", ident, ident)


def _apply_reflection_rows(C: CartanData, i: int, m: tuple[int, ...]) -> tuple[int, ...]:
    # left multiply by s_i: row i becomes row_i - sum_k C[i][k] row_k
    r = C.rank
    rows = [list(m[k * r:(k + 1) * r]) for k in range(r)]
    ci = C.C[i - 1]
    new_row = [rows[i - 1][c] - sum(ci[k] * rows[k][c] for k in range(r)) for c in range(r)]
    rows[i - 1] = new_row
    return tuple(x for row in rows for x in row)


def _apply_reflection_cols(C: CartanData, i: int, m: tuple[int, ...]) -> tuple[int, ...]:
    # right multiply by s_i: column j becomes col_j - C[i][j] col_i
    r = C.rank
    ci = C.C[i - 1]
    out = list(m)
    for row in range(r):
        base = row * r
        for j in range(r):
            out[base + j] = m[base + j] - ci[j] * m[base + i - 1]
    return tuple(out)


def weyl_left_multiply(C: CartanData, i: int, w: WeylElement) -> WeylElement:
    """Return s_i * w."""
    C.check_index(i)
    if w.kind == "perm":
        a, b = i - 1, i
        return WeylElement("perm", tuple(b if x == a else a if x == b else x for x in w.payload))
    return WeylElement(
        "matrix",
        _apply_reflection_rows(C, i, w.payload),
        _apply_reflection_cols(C, i, w.inverse_payload),
    )


def weyl_right_multiply(C: CartanData, i: int, w: WeylElement) -> WeylElement:
    """Return w * s_i."""
    C.check_index(i)
    if w.kind == "perm":
        p = list(w.payload)
        p[i - 1], p[i] = p[i], p[i - 1]
        return WeylElement("perm", tuple(p))
    return WeylElement(
        "matrix",
        _apply_reflection_cols(C, i, w.payload),
        _apply_reflection_rows(C, i, w.inverse_payload),
    )


def length_increases_on_left(C: CartanData, i: int, w: WeylElement) -> bool:
    """True iff l(s_i w) > l(w), i.e. w^-1(alpha_i) is a positive root."""
    C.check_index(i)
    if w.kind == "perm":
        pos = {v: k for k, v in enumerate(w.payload)}
        return pos[i - 1] < pos[i]
    r = C.rank
    column = [w.inverse_payload[k * r + i - 1] for k in range(r)]
    return all(x >= 0 for x in column)


def weyl_from_word(C: CartanData, word: Sequence[int]) -> WeylElement:
    """The product s_{w1} s_{w2} ... of the letters of ``word``."""
    w = weyl_identity(C)
    for i in reversed(word):
        w = weyl_left_multiply(C, i, w)
    return w


def weyl_length(C: CartanData, w: WeylElement, cap: int = DEFAULT_ITERATION_CAP) -> int:
    """Length by greedy descent."""
    if w.kind == "perm":
        p = w.payload
        return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])
    n = 0
    while n <= cap:
        for i in range(1, C.rank + 1):
            if not length_increases_on_left(C, i, w):
                w = weyl_left_multiply(C, i, w)
                n += 1
                break
        else:
            return n
    raise ArtifactError("non-finite type")


def longest_element(
    C: CartanData, cap: int = DEFAULT_ITERATION_CAP
) -> tuple[WeylElement, list[int]]:
    """
    Longest element and one reduced word for it, by greedy ascent.

    >>> w0, word = longest_element(cartan_from_name("G2"))
    >>> len(word)
    6
    """
    w = weyl_identity(C)
    applied: list[int] = []
    while True:
        for i in range(1, C.rank + 1):
            if length_increases_on_left(C, i, w):
                w = weyl_left_multiply(C, i, w)
                applied.append(i)
                break
        else:
            return w, applied[::-1]
        if len(applied) > cap:
            raise ArtifactError("non-finite type")


def coxeter_number(C: CartanData, cap: int = DEFAULT_ITERATION_CAP) -> int:
    """Multiplicative order of s_1 s_2 ... s_r."""
    coxeter = weyl_from_word(C, range(1, C.rank + 1))
    ident = weyl_identity(C)
    w = coxeter
    for k in range(1, cap + 1):
        if w == ident:
            return k
        w = _multiply(C, w, coxeter)
    raise ArtifactError("non-finite type")


def _multiply(C: CartanData, u: WeylElement, v: WeylElement) -> WeylElement:
    if u.kind == "perm":
        return WeylElement("perm", tuple(u.payload[x] for x in v.payload))
    r = C.rank

    def mm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(
            sum(a[i * r + k] * b[k * r + j] for k in range(r)) for i in range(r) for j in range(r)
        )

    return WeylElement("matrix", mm(u.payload, v.payload), mm(v.inverse_payload, u.inverse_payload))


weyl_multiply = _multiply

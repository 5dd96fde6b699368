"""
Point counts f(q) and g(q) of double Bott-Samelson cells.

``count_f`` runs a dynamic program over Weyl group states along one word of
d b°. ``brute_force_f`` counts flag configurations over a small finite field
directly and serves as an independent oracle in type A.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .braid import BraidWord
from .cartan_weyl import (
    CartanData,
    WeylElement,
    length_increases_on_left,
    weyl_identity,
    weyl_left_multiply,
)
from .errors import ArtifactError
from .exact_math import Polynomial, RationalFunction

Q = Polynomial.q()
Q_MINUS_ONE = Polynomial.q_minus_one()


def step_weight(C: CartanData, i: int, u: WeylElement, u_next: WeylElement) -> Polynomial:
    """
    Weight of the transition u -> u_next across a triangle labeled i.

    >>> from artifact.cartan_weyl import cartan_from_name
    >>> A1 = cartan_from_name("A1")
    >>> e = weyl_identity(A1)
    >>> str(step_weight(A1, 1, e, e))
    '-1 + q'
    """
    su = weyl_left_multiply(C, i, u)
    up = length_increases_on_left(C, i, u)
    if u_next == su:
        return Polynomial.constant(1) if up else Q
    if u_next == u and up:
        return Q_MINUS_ONE
    return Polynomial.constant(0)


@dataclass(frozen=True)
class CountResult:
    f: Polynomial
    g: RationalFunction
    r_tilde: int
    word_used: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "f": self.f.to_json(),
            "g": self.g.to_json(),
            "r_tilde": self.r_tilde,
            "word": list(self.word_used),
            "components_conjectural": component_lower_bound(self.g),
        }


def _letters(w: BraidWord | Sequence[int]) -> tuple[int, ...]:
    return tuple(w.letters) if isinstance(w, BraidWord) else tuple(w)


def weight_at_identity(C: CartanData, word: Sequence[int]) -> Polynomial:
    """Sum over all state paths from e back to e of the product of step weights."""
    e = weyl_identity(C)
    table: dict[WeylElement, Polynomial] = {e: Polynomial.constant(1)}
    for i in word:
        new: dict[WeylElement, Polynomial] = {}
        for u, w in table.items():
            su = weyl_left_multiply(C, i, u)
            if length_increases_on_left(C, i, u):
                new[u] = new.get(u, Polynomial()) + w * Q_MINUS_ONE
                new[su] = new.get(su, Polynomial()) + w
            else:
                new[su] = new.get(su, Polynomial()) + w * Q
        table = new
    return table.get(e, Polynomial())


def count_f(C: CartanData, b: BraidWord | Sequence[int], d: BraidWord | Sequence[int]) -> CountResult:
    """
    f = (q-1)^r~ * (weight of e after the word d b°), g = f / (q-1)^(2 r~).

    >>> from artifact.cartan_weyl import cartan_from_name
    >>> res = count_f(cartan_from_name("A1"), [], [1, 1, 1])
    >>> res.f.render(), res.g.render()
    ('1 - 2q + 2q^2 - 2q^3 + q^4', '1 + q^2')
    """
    bl, dl = _letters(b), _letters(d)
    for i in bl + dl:
        C.check_index(i)
    word = dl + tuple(reversed(bl))
    r_tilde = C.levels
    f = weight_at_identity(C, word) * Q_MINUS_ONE ** r_tilde
    g = RationalFunction(f, 2 * r_tilde)
    return CountResult(f, g, r_tilde, word)


def component_lower_bound(g: RationalFunction) -> int:
    """Conjectural component count 1 - ord_{q=1} g."""
    if g.is_zero():
        raise ArtifactError("undefined order")
    return 1 - g.order_at_one()


# --- brute-force oracle over small finite fields -----------------------------

BRUTE_FORCE_MAX_RANK = 2
BRUTE_FORCE_MAX_LENGTH = 5
BRUTE_FORCE_FIELDS = (2, 3, 4)

# GF(4) = {0, 1, w, w + 1} encoded as 0, 1, 2, 3 with w^2 = w + 1
_GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)


class _Field:
    def __init__(self, q: int):
        if q not in BRUTE_FORCE_FIELDS:
            raise ArtifactError(f"field size {q} not supported; use 2, 3 or 4")
        self.q = q
        self.elements = tuple(range(q))

    def add(self, a: int, b: int) -> int:
        return a ^ b if self.q == 4 else (a + b) % self.q

    def neg(self, a: int) -> int:
        return a if self.q == 4 else (-a) % self.q

    def mul(self, a: int, b: int) -> int:
        return _GF4_MUL[a][b] if self.q == 4 else (a * b) % self.q

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return next(x for x in self.elements if self.mul(a, x) == 1)


Subspace = tuple[tuple[int, ...], ...]


def _rref(F: _Field, rows: Sequence[Sequence[int]]) -> Subspace:
    m = [list(r) for r in rows]
    n = len(m[0]) if m else 0
    out_rows = 0
    for col in range(n):
        piv = next((k for k in range(out_rows, len(m)) if m[k][col]), None)
        if piv is None:
            continue
        m[out_rows], m[piv] = m[piv], m[out_rows]
        inv = F.inv(m[out_rows][col])
        m[out_rows] = [F.mul(inv, x) for x in m[out_rows]]
        for k in range(len(m)):
            if k != out_rows and m[k][col]:
                c = F.neg(m[k][col])
                m[k] = [F.add(x, F.mul(c, y)) for x, y in zip(m[k], m[out_rows])]
        out_rows += 1
    return tuple(tuple(r) for r in m[:out_rows])


def _rank(F: _Field, rows: Sequence[Sequence[int]]) -> int:
    return len(_rref(F, rows)) if rows else 0


def _subspaces(F: _Field, n: int, k: int) -> list[Subspace]:
    vectors = [v for v in itertools.product(F.elements, repeat=n) if any(v)]
    found = set()
    for combo in itertools.combinations(vectors, k):
        s = _rref(F, combo)
        if len(s) == k:
            found.add(s)
    return sorted(found)


def _flags(F: _Field, n: int) -> list[tuple[Subspace, ...]]:
    """Complete flags V_1 < ... < V_{n-1} of F^n."""
    by_dim = {k: _subspaces(F, n, k) for k in range(1, n)}
    chains: list[tuple[Subspace, ...]] = [()]
    for k in range(1, n):
        nxt = []
        for ch in chains:
            for s in by_dim[k]:
                if not ch or _rank(F, ch[-1] + s) == k:
                    nxt.append(ch + (s,))
        chains = nxt
    return chains


def _standard_flag(F: _Field, n: int, opposite: bool) -> tuple[Subspace, ...]:
    basis = [tuple(1 if a == b else 0 for b in range(n)) for a in range(n)]
    if opposite:
        basis = basis[::-1]
    return tuple(_rref(F, basis[:k]) for k in range(1, n))


def _walk(
    flags: list[tuple[Subspace, ...]], start: tuple[Subspace, ...], word: Sequence[int]
) -> dict[tuple[Subspace, ...], int]:
    """Number of flag chains from ``start`` whose consecutive steps change exactly V_j."""
    counts = {start: 1}
    for j in word:
        groups: dict[tuple, list] = {}
        for fl in flags:
            groups.setdefault(fl[: j - 1] + fl[j:], []).append(fl)
        new: dict[tuple[Subspace, ...], int] = {}
        for fl, c in counts.items():
            for nb in groups[fl[: j - 1] + fl[j:]]:
                if nb != fl:
                    new[nb] = new.get(nb, 0) + c
        counts = new
    return counts


def _transverse(F: _Field, n: int, top: tuple[Subspace, ...], bottom: tuple[Subspace, ...]) -> bool:
    return all(_rank(F, top[k - 1] + bottom[n - k - 1]) == n for k in range(1, n))


def brute_force_f(
    r: int, b: BraidWord | Sequence[int], d: BraidWord | Sequence[int], q: int
) -> int:
    """
    Count decorated flag configurations of SL_{r+1} over F_q directly.

    The top chain starts at the standard flag and follows b, a step s_j
    changing V_j. The bottom chain starts at the opposite flag and follows d;
    its flags are cosets of the lower Borel, so a step s_j changes V_{r+1-j}.
    The last two flags must be transverse. The raw count is multiplied by
    (q-1)^r for the decoration.

    >>> brute_force_f(1, [], [1, 1, 1], 2)
    5
    """
    bl, dl = _letters(b), _letters(d)
    if not 1 <= r <= BRUTE_FORCE_MAX_RANK:
        raise ArtifactError(f"budget exceeded: rank must be 1..{BRUTE_FORCE_MAX_RANK}")
    if len(bl) + len(dl) > BRUTE_FORCE_MAX_LENGTH:
        raise ArtifactError(f"budget exceeded: total length above {BRUTE_FORCE_MAX_LENGTH}")
    if any(not 1 <= i <= r for i in bl + dl):
        raise ArtifactError("index out of range")
    F = _Field(q)
    n = r + 1
    flags = _flags(F, n)
    top = _walk(flags, _standard_flag(F, n, False), bl)
    bottom = _walk(flags, _standard_flag(F, n, True), [n - j for j in dl])
    raw = sum(
        ct * cb
        for ft, ct in top.items()
        for fb, cb in bottom.items()
        if _transverse(F, n, ft, fb)
    )
    return raw * (q - 1) ** r

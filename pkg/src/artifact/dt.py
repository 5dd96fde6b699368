"""
Maximal green sequences, Donaldson-Thomas scripts and periodicity.

The DT transformation of a pair (b, d) is computed on the cell for the single
word ``d + reverse(b)`` with an empty top base. Its script is the maximal green
sequence below, followed by the per-level reversal of closed strings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Mapping, Sequence

from .braid import BraidWord, reverse
from .cartan_weyl import CartanData, coxeter_number
from .diagram import bottom_only, parse_string_id, seed_of, string_diagram, string_id
from .errors import ArtifactError
from .exact_math import Matrix, permutation_matrix
from .seed import (
    FramedSeed,
    MutationScript,
    Seed,
    apply_script,
    c_matrix,
    frame,
    mutate,
    seed_isomorphic,
    unfrozen_part,
)

DEFAULT_MAX_POWER = 64


def maximal_green_sequence(word: BraidWord) -> MutationScript:
    """
    For each letter, mutate the closed strings 1..t on its level, where t
    counts later occurrences of the same letter.

    >>> from artifact.cartan_weyl import cartan_from_name
    >>> from artifact.braid import parse_braid
    >>> maximal_green_sequence(parse_braid("1 1 1 1", cartan_from_name("A1"))).render()
    '1:1,1:2,1:3,1:1,1:2,1:1'
    """
    letters = word.letters
    steps = []
    for k, i in enumerate(letters):
        later = sum(1 for x in letters[k + 1:] if x == i)
        steps.extend(string_id(i, j) for j in range(1, later + 1))
    return MutationScript(tuple(steps))


def unfrozen_seed_of_word(word: BraidWord) -> Seed:
    return unfrozen_part(seed_of(bottom_only(word)))


def level_reversal(word: BraidWord) -> dict[str, str]:
    """Closed string (i, j) goes to (i, t_i + 1 - j), t_i being the closed count on level i."""
    sd = string_diagram(bottom_only(word))
    out = {}
    for v in sd.closed_strings():
        i, j = parse_string_id(v)
        t = sd.node_count(i) - 1
        out[v] = string_id(i, t + 1 - j)
    return out


@dataclass(frozen=True)
class ColorTrace:
    """Colors seen along a run of a script on a framed seed."""

    steps: tuple[str, ...]
    green_at_turn: tuple[bool, ...]
    final_colors: Mapping[str, str]

    @property
    def all_green_turns(self) -> bool:
        return all(self.green_at_turn)

    @property
    def ends_all_red(self) -> bool:
        return all(c == "red" for c in self.final_colors.values())


def color_trace(seed: Seed, steps: Sequence[str]) -> tuple[ColorTrace, FramedSeed]:
    f = frame(seed)
    greens = []
    for v in steps:
        greens.append(_is_green(f, v))
        f = f.mutate(v)
    final = {v: ("green" if _is_green(f, v) else "red") for v in f.base_vertices}
    return ColorTrace(tuple(steps), tuple(greens), final), f


def _is_green(f: FramedSeed, v: str) -> bool:
    row = f.seed.eps[f.seed.index(v)][len(f.base_vertices):]
    return all(x >= 0 for x in row)


@dataclass(frozen=True)
class DtScript:
    """A mutation script followed by a vertex bijection back to the initial seed."""

    word: BraidWord
    seed: Seed
    script: MutationScript
    sigma: Mapping[str, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "script": [str(v) for v in self.script.steps],
            "sigma": {k: self.sigma[k] for k in self.seed.vertices},
        }


def dt_word(b: BraidWord, d: BraidWord) -> BraidWord:
    return d + reverse(b)


def dt_script(b: BraidWord, d: BraidWord) -> DtScript:
    """Build and verify the DT script for the pair (b, d)."""
    word = dt_word(b, d)
    if len(word) == 0:
        raise ArtifactError("the word d + reverse(b) is empty")
    seed = unfrozen_seed_of_word(word)
    script = maximal_green_sequence(word)
    sigma = level_reversal(word)
    ds = DtScript(word, seed, script, sigma)
    verify_dt_script(ds)
    return ds


def verify_dt_script(ds: DtScript) -> None:
    """Check c = -P_sigma after the script, the seed isomorphism, and c = -id after sigma."""
    seed = ds.seed
    verts = list(seed.vertices)
    f = frame(seed).apply(ds.script.steps)
    c = c_matrix(f)
    perm = [verts.index(ds.sigma[v]) for v in verts]
    if c != -permutation_matrix(perm):
        raise ArtifactError(f"DT verification failed: c-matrix is not -P_sigma for {ds.word}")
    final = apply_script(seed, ds.script.steps)
    if not seed_isomorphic(final, seed, ds.sigma):
        raise ArtifactError(f"DT verification failed: sigma is not a seed isomorphism for {ds.word}")
    if not c_matrix(f.relabel_base(ds.sigma)) == -Matrix.identity(len(verts)):
        raise ArtifactError(f"DT verification failed: c is not -id after sigma for {ds.word}")


def _transformation_order(
    f0: FramedSeed,
    steps: Sequence[str],
    sigma: Mapping[str, str],
    max_power: int,
) -> int | None:
    f = f0
    n = len(f0.base_vertices)
    ident = Matrix.identity(n)
    for k in range(1, max_power + 1):
        f = f.apply(steps)
        if sigma:
            f = f.relabel_base(sigma)
        if c_matrix(f) == ident:
            return k
    return None


def dt_order(ds: DtScript, max_power: int | None = None) -> int | None:
    """
    Least k with the k-th power of DT trivial.

    Each round applies the script and then renames vertices by sigma, so the
    c-matrix is always read against the initial labels; triviality is c = id.
    """
    bound = max_power if max_power is not None else DEFAULT_MAX_POWER
    return _transformation_order(frame(ds.seed), ds.script.steps, ds.sigma, bound)


# --- square products and Zamolodchikov periodicity ---------------------------

Color = Literal[1, -1]


@dataclass(frozen=True)
class BipartiteDynkin:
    cartan: CartanData
    coloring: tuple[int, ...]

    def __post_init__(self):
        C = self.cartan.C
        if len(self.coloring) != self.cartan.rank or any(c not in (1, -1) for c in self.coloring):
            raise ArtifactError("coloring needs one entry in {+1, -1} per vertex")
        for i in range(self.cartan.rank):
            for j in range(self.cartan.rank):
                if i != j and C[i][j] != 0 and self.coloring[i] == self.coloring[j]:
                    raise ArtifactError("coloring is not bipartite")


def bipartite(C: CartanData) -> BipartiteDynkin:
    """2-color the Dynkin diagram, vertex 1 black (+1)."""
    r = C.rank
    colors: list[int | None] = [None] * r
    for start in range(r):
        if colors[start] is not None:
            continue
        colors[start] = 1
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(r):
                if j != i and C.C[i][j] != 0:
                    if colors[j] is None:
                        colors[j] = -colors[i]
                        stack.append(j)
                    elif colors[j] == colors[i]:
                        raise ArtifactError("Dynkin diagram is not bipartite")
    return BipartiteDynkin(C, tuple(colors))


def bipartite_epsilon(L: BipartiteDynkin) -> list[list[int]]:
    C = L.cartan.C
    r = L.cartan.rank
    return [[0 if a == b else L.coloring[a] * C[b][a] for b in range(r)] for a in range(r)]


def product_vertex(i: int, k: int) -> str:
    return f"{i}:{k}"


def square_product(L: BipartiteDynkin, R: BipartiteDynkin) -> tuple[Seed, dict[str, int]]:
    """The square product seed, with its product coloring (+1 black, -1 white)."""
    e1, e2 = bipartite_epsilon(L), bipartite_epsilon(R)
    r1, r2 = L.cartan.rank, R.cartan.rank
    pairs = [(i, k) for i in range(r1) for k in range(r2)]
    verts = [product_vertex(i + 1, k + 1) for i, k in pairs]
    eps = []
    for i, k in pairs:
        row = []
        for j, m in pairs:
            if k == m:
                row.append(-R.coloring[k] * e1[i][j])
            elif i == j:
                row.append(L.coloring[i] * e2[k][m])
            else:
                row.append(0)
        eps.append(row)
    d = [L.cartan.D[i] * R.cartan.D[k] for i, k in pairs]
    g = math.gcd(*d)
    seed = Seed(verts, [], eps, [x // g for x in d])
    colors = {
        product_vertex(i + 1, k + 1): L.coloring[i] * R.coloring[k] for i, k in pairs
    }
    return seed, colors


def zamolodchikov_tau(seed: Seed, colors: Mapping[str, int]) -> MutationScript:
    """All black vertices, then all white, each class in vertex order."""
    black = [v for v in seed.vertices if colors[v] == 1]
    white = [v for v in seed.vertices if colors[v] == -1]
    for cls in (black, white):
        for a in cls:
            for b in cls:
                if a != b and seed.entry(a, b) != 0:
                    raise ArtifactError("two vertices of one color are adjacent")
    return MutationScript(tuple(black + white))


def za_order(seed: Seed, colors: Mapping[str, int], max_power: int = DEFAULT_MAX_POWER) -> int | None:
    """Least k with identity c-matrix after k rounds of tau."""
    tau = zamolodchikov_tau(seed, colors)
    if not apply_script(seed, tau.steps).same_as(seed):
        raise ArtifactError("tau does not preserve the square-product seed")
    return _transformation_order(frame(seed), tau.steps, {}, max_power)


def za_order_up_to_permutation(
    seed: Seed, colors: Mapping[str, int], max_power: int = DEFAULT_MAX_POWER
) -> int | None:
    """Least k whose c-matrix after k rounds of tau is some permutation matrix."""
    tau = zamolodchikov_tau(seed, colors)
    f = frame(seed)
    for k in range(1, max_power + 1):
        f = f.apply(tau.steps)
        rows = f.tracking_rows()
        if all(sorted(r) == [0] * (len(r) - 1) + [1] for r in rows) and len(
            {r.index(1) for r in rows}
        ) == len(rows):
            return k
    return None


def za_bound(left: CartanData, n: int) -> int:
    return coxeter_number(left) + n + 1


def square_word(left: CartanData, n: int) -> tuple[list[int], list[int]]:
    """
    Words p = (white, black, white, ...) and q = (black, white, black, ...),
    each with n + 1 factors, where black/white are the products of the simple
    reflections of each color class.
    """
    L = bipartite(left)
    black = [i + 1 for i in range(left.rank) if L.coloring[i] == 1]
    white = [i + 1 for i in range(left.rank) if L.coloring[i] == -1]
    p: list[int] = []
    q: list[int] = []
    for k in range(n + 1):
        p.extend(white if k % 2 == 0 else black)
        q.extend(black if k % 2 == 0 else white)
    return p, q


def square_dt_bound(left: CartanData, n: int) -> int:
    h = coxeter_number(left)
    return 2 * (h + n + 1) // math.gcd(h, n + 1)

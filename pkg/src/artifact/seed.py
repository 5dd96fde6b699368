"""
Seeds, mutation, principal coefficients, c- and g-matrices.

A seed stores its exchange matrix as row tuples indexed by the vertex order
it was built with. Integral entries are plain ints; only entries between two
frozen vertices may be half-integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Hashable, Iterable, Literal, Mapping, Sequence

from .errors import ArtifactError
from .exact_math import Matrix, Number, format_rational, normalize_number, parse_rational

Vertex = Hashable

AUX_SUFFIX = "'"


class Seed:
    """
    Vertices, frozen subset, exchange matrix and multipliers.

    >>> s = Seed(["1", "2"], [], [[0, 1], [-1, 0]], [1, 1])
    >>> mutate(s, "1").epsilon.rows
    ((0, -1), (1, 0))
    """

    __slots__ = ("vertices", "frozen", "eps", "d", "_index")

    def __init__(
        self,
        vertices: Sequence[Vertex],
        frozen: Iterable[Vertex],
        epsilon: Sequence[Sequence[Number]] | Matrix,
        multipliers: Sequence[int],
        validate: bool = True,
    ):
        self.vertices: tuple[Vertex, ...] = tuple(vertices)
        self._index = {v: k for k, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise ArtifactError("duplicate vertex identifiers")
        self.frozen: frozenset = frozenset(frozen)
        rows = epsilon.rows if isinstance(epsilon, Matrix) else epsilon
        self.eps: tuple[tuple[Number, ...], ...] = tuple(
            tuple(normalize_number(x) for x in row) for row in rows
        )
        self.d: tuple[int, ...] = tuple(int(x) for x in multipliers)
        if validate:
            self.validate()

    @classmethod
    def _trusted(cls, vertices, frozen, eps, d, index) -> Seed:
        s = object.__new__(cls)
        s.vertices, s.frozen, s.eps, s.d, s._index = vertices, frozen, eps, d, index
        return s

    def validate(self) -> None:
        n = len(self.vertices)
        if len(self.eps) != n or any(len(r) != n for r in self.eps):
            raise ArtifactError("exchange matrix shape does not match the vertex set")
        if len(self.d) != n or any(x <= 0 for x in self.d):
            raise ArtifactError("multipliers must be positive, one per vertex")
        unknown = self.frozen - set(self.vertices)
        if unknown:
            raise ArtifactError(f"frozen vertices not in seed: {sorted(map(str, unknown))}")
        for a in range(n):
            for b in range(n):
                x = self.eps[a][b]
                # eps_ab / d_b must be skew-symmetric
                if Fraction(x, self.d[b]) != -Fraction(self.eps[b][a], self.d[a]):
                    raise ArtifactError("exchange matrix is not skew-symmetrizable")
                if isinstance(x, Fraction):
                    both_frozen = (
                        self.vertices[a] in self.frozen and self.vertices[b] in self.frozen
                    )
                    if not both_frozen:
                        raise ArtifactError("non-integral entry outside the frozen block")

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, v: Vertex) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise ArtifactError(f"unknown vertex {v!r}") from None

    def entry(self, a: Vertex, b: Vertex) -> Number:
        return self.eps[self.index(a)][self.index(b)]

    def multiplier(self, v: Vertex) -> int:
        return self.d[self.index(v)]

    @property
    def unfrozen(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if v not in self.frozen)

    @property
    def epsilon(self) -> Matrix:
        return Matrix(self.eps, ncols=len(self.vertices))

    def same_as(self, other: Seed) -> bool:
        """Literal equality: same vertex order, frozen set, matrix and multipliers."""
        return (
            self.vertices == other.vertices
            and self.frozen == other.frozen
            and self.eps == other.eps
            and self.d == other.d
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Seed) and self.same_as(other)

    def __hash__(self) -> int:
        return hash((self.vertices, self.eps))

    def __repr__(self) -> str:
        return f"Seed(vertices={list(self.vertices)}, frozen={sorted(map(str, self.frozen))})"

    def to_json(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "frozen": [str(v) for v in self.vertices if v in self.frozen],
            "epsilon": [[format_rational(x) for x in row] for row in self.eps],
            "d": list(self.d),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Seed:
        try:
            return cls(
                data["vertices"],
                data.get("frozen", []),
                [[parse_rational(x) for x in row] for row in data["epsilon"]],
                data.get("d") or [1] * len(data["vertices"]),
            )
        except (KeyError, TypeError) as exc:
            raise ArtifactError(f"malformed seed JSON: {exc}") from exc


def mutate(s: Seed, c: Vertex) -> Seed:
    """Mutation at the unfrozen vertex ``c``."""
    if c in s.frozen:
        raise ArtifactError(f"cannot mutate at frozen vertex {c!r}")
    k = s.index(c)
    return Seed._trusted(s.vertices, s.frozen, _mutate_rows(s.eps, k), s.d, s._index)


def _mutate_rows(eps: tuple[tuple[Number, ...], ...], k: int) -> tuple[tuple[Number, ...], ...]:
    row_k = eps[k]
    out = []
    for a, row in enumerate(eps):
        if a == k:
            out.append(tuple(-x for x in row))
            continue
        eak = row[k]
        new = list(row)
        new[k] = -new[k]
        if eak > 0:
            for b, ekb in enumerate(row_k):
                if ekb > 0 and b != k:
                    new[b] += eak * ekb
        elif eak < 0:
            for b, ekb in enumerate(row_k):
                if ekb < 0 and b != k:
                    new[b] -= eak * ekb
        if any(isinstance(x, Fraction) for x in new):
            new = [normalize_number(x) for x in new]
        out.append(tuple(new))
    return tuple(out)


def apply_script(s: Seed, steps: Iterable[Vertex]) -> Seed:
    for v in steps:
        s = mutate(s, v)
    return s


def restrict(s: Seed, keep: Sequence[Vertex]) -> Seed:
    idx = [s.index(v) for v in keep]
    eps = [[s.eps[a][b] for b in idx] for a in idx]
    d = [s.d[a] for a in idx]
    return Seed(keep, [v for v in keep if v in s.frozen], eps, d, validate=False)


def unfrozen_part(s: Seed) -> Seed:
    """Drop frozen vertices and rescale multipliers to gcd 1."""
    keep = s.unfrozen
    sub = restrict(s, keep)
    g = reduce(math.gcd, sub.d, 0) or 1
    return Seed(keep, [], sub.eps, [x // g for x in sub.d])


def relabel(s: Seed, mapping: Mapping[Vertex, Vertex]) -> Seed:
    """Rename vertices; vertices missing from ``mapping`` keep their names."""
    names = [mapping.get(v, v) for v in s.vertices]
    frozen = [mapping.get(v, v) for v in s.frozen]
    return Seed(names, frozen, s.eps, s.d, validate=False)


def reorder(s: Seed, order: Sequence[Vertex]) -> Seed:
    if set(order) != set(s.vertices) or len(order) != len(s.vertices):
        raise ArtifactError("reorder needs a permutation of the vertices")
    return restrict(s, order) if order else s


def langlands_dual(s: Seed) -> Seed:
    """Dual seed: exchange matrix -eps^T and multipliers lcm(d) / d_a."""
    n = len(s.vertices)
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), s.d, 1)
    eps = [[-s.eps[b][a] for b in range(n)] for a in range(n)]
    return Seed(s.vertices, s.frozen, eps, [lcm // x for x in s.d])


def seed_isomorphic(s1: Seed, s2: Seed, sigma: Mapping[Vertex, Vertex]) -> bool:
    """True iff ``sigma`` preserves the frozen set, multipliers and every exchange entry."""
    if len(s1) != len(s2):
        return False
    try:
        image = [sigma[v] for v in s1.vertices]
    except KeyError:
        return False
    if set(image) != set(s2.vertices):
        return False
    idx2 = [s2._index[v] for v in image]
    for a, a2 in enumerate(idx2):
        v = s1.vertices[a]
        if (v in s1.frozen) != (image[a] in s2.frozen):
            return False
        if s1.d[a] != s2.d[a2]:
            return False
        row1, row2 = s1.eps[a], s2.eps[a2]
        if any(row1[b] != row2[b2] for b, b2 in enumerate(idx2)):
            return False
    return True


def aux_name(v: Vertex) -> str:
    return f"{v}{AUX_SUFFIX}"


@dataclass(frozen=True)
class FramedSeed:
    """
    A seed with principal coefficients.

    ``seed`` holds the unfrozen vertices followed by one frozen auxiliary per
    unfrozen vertex. ``base_vertices`` lists the unfrozen vertices in order.
    """

    seed: Seed
    base_vertices: tuple[Vertex, ...]
    history: tuple[Vertex, ...] = field(default=())

    @property
    def base(self) -> Seed:
        return restrict(self.seed, self.base_vertices)

    def mutate(self, v: Vertex) -> FramedSeed:
        if v not in self.base_vertices:
            raise ArtifactError(f"cannot mutate at {v!r}: not an unfrozen vertex")
        return FramedSeed(mutate(self.seed, v), self.base_vertices, self.history + (v,))

    def apply(self, steps: Iterable[Vertex]) -> FramedSeed:
        f = self
        for v in steps:
            f = f.mutate(v)
        return f

    def tracking_rows(self) -> list[list[int]]:
        n = len(self.base_vertices)
        return [list(self.seed.eps[a][n:]) for a in range(n)]

    def relabel_base(self, sigma: Mapping[Vertex, Vertex]) -> FramedSeed:
        """
        Rename the unfrozen vertices by ``sigma`` while keeping the auxiliaries,
        then restore the canonical vertex order.
        """
        n = len(self.base_vertices)
        renamed = relabel(self.seed, {v: sigma[v] for v in self.base_vertices})
        order = list(self.base_vertices) + list(self.seed.vertices[n:])
        return FramedSeed(reorder(renamed, order), self.base_vertices, ())


def frame(s: Seed) -> FramedSeed:
    """Attach principal coefficients: [[eps, id], [-id, 0]] on the unfrozen part."""
    base = unfrozen_part(s) if s.frozen else s
    n = len(base)
    verts = list(base.vertices) + [aux_name(v) for v in base.vertices]
    rows = []
    for a in range(n):
        rows.append(list(base.eps[a]) + [1 if a == b else 0 for b in range(n)])
    for a in range(n):
        rows.append([-1 if a == b else 0 for b in range(n)] + [0] * n)
    seed = Seed(verts, verts[n:], rows, list(base.d) * 2)
    return FramedSeed(seed, base.vertices)


def c_matrix(f: FramedSeed) -> Matrix:
    """The unfrozen-by-auxiliary block; rows follow the unfrozen vertex order."""
    return Matrix(f.tracking_rows(), ncols=len(f.base_vertices))


def c_matrix_of(s: Seed, steps: Sequence[Vertex]) -> Matrix:
    return c_matrix(frame(s).apply(steps))


def g_matrix(s: Seed, steps: Sequence[Vertex]) -> Matrix:
    """Inverse transpose of the c-matrix of the same script on the Langlands dual seed."""
    base = unfrozen_part(s) if s.frozen else s
    dual_c = c_matrix_of(langlands_dual(base), steps)
    det = dual_c.determinant()
    if det not in (1, -1):
        raise ArtifactError("internal error: c-matrix is not unimodular")
    return dual_c.transpose().inverse()


def vertex_color(f: FramedSeed, v: Vertex) -> Literal["green", "red"]:
    """Green iff the tracking row of ``v`` is entrywise non-negative."""
    try:
        a = f.base_vertices.index(v)
    except ValueError:
        raise ArtifactError(f"{v!r} is not an unfrozen vertex") from None
    return "green" if all(x >= 0 for x in f.tracking_rows()[a]) else "red"


def row_sign_coherent(row: Sequence[Number]) -> bool:
    return all(x >= 0 for x in row) or all(x <= 0 for x in row)


@dataclass(frozen=True)
class MutationScript:
    """Ordered mutation steps plus an optional terminal relabeling."""

    steps: tuple[Vertex, ...]
    relabel: tuple[tuple[Vertex, Vertex], ...] = ()

    @property
    def relabel_map(self) -> dict:
        return dict(self.relabel)

    def __len__(self) -> int:
        return len(self.steps)

    def render(self) -> str:
        return ",".join(str(v) for v in self.steps)

    def to_json(self) -> dict:
        out: dict = {"steps": [str(v) for v in self.steps]}
        if self.relabel:
            out["relabel"] = {str(a): str(b) for a, b in self.relabel}
        return out


def parse_script(text: str) -> list[str]:
    return [t.strip() for t in text.replace(";", ",").split(",") if t.strip()]

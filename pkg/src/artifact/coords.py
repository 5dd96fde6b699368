"""
Exact cluster Poisson (X) and K2 (A) coordinates on seeds.

Assignments are plain dicts vertex -> Fraction. Braid-move formulas are
verified pointwise at random positive rationals against the mutation engine.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Literal, Mapping

from .braid import make_word
from .cartan_weyl import CartanData, cartan_from_name
from .diagram import (
    BOTTOM,
    TOP,
    Triangulation,
    bottom_only,
    braid_move_on_base,
    parse_string_id,
    seed_of,
    string_id,
)
from .errors import ArtifactError
from .exact_math import format_rational, parse_rational
from .seed import Seed, Vertex, mutate

Assignment = dict
DEFAULT_RNG_SEED = 0
DEFAULT_TRIALS = {"A2": 100, "B2": 100, "G2": 25, "swap": 100}


def _integral_exponent(e) -> int:
    if isinstance(e, Fraction) and e.denominator != 1:
        raise ArtifactError("fractional exponent encountered")
    return int(e)


def _check_mutable(s: Seed, c: Vertex) -> None:
    s.index(c)
    if c in s.frozen:
        raise ArtifactError(f"cannot mutate at frozen vertex {c!r}")


def x_mutate(x: Mapping[Vertex, Fraction], s: Seed, c: Vertex) -> Assignment:
    """
    >>> s = Seed(["1", "2"], [], [[0, 1], [-1, 0]], [1, 1])
    >>> x_mutate({"1": Fraction(2), "2": Fraction(3)}, s, "2")
    {'1': Fraction(3, 2), '2': Fraction(1, 3)}
    """
    _check_mutable(s, c)
    xc = Fraction(x[c])
    if xc == -1:
        raise ArtifactError(f"pole: X at {c!r} equals -1")
    if xc == 0:
        raise ArtifactError(f"pole: X at {c!r} is zero")
    out = {}
    for a in s.vertices:
        if a == c:
            out[a] = 1 / xc
            continue
        e = _integral_exponent(s.entry(a, c))
        out[a] = Fraction(x[a]) * xc ** max(e, 0) * (1 + xc) ** (-e)
    return out


def a_mutate(a: Mapping[Vertex, Fraction], s: Seed, c: Vertex) -> Assignment:
    """
    >>> s = Seed(["1", "2"], [], [[0, 1], [-1, 0]], [1, 1])
    >>> a_mutate({"1": Fraction(2), "2": Fraction(3)}, s, "1")["1"]
    Fraction(2, 1)
    """
    _check_mutable(s, c)
    pos = neg = Fraction(1)
    for b in s.vertices:
        e = _integral_exponent(s.entry(c, b))
        if e > 0:
            pos *= Fraction(a[b]) ** e
        elif e < 0:
            neg *= Fraction(a[b]) ** (-e)
    ac = Fraction(a[c])
    if ac == 0:
        raise ArtifactError(f"zero denominator: A at {c!r} is zero")
    out = {v: Fraction(a[v]) for v in s.vertices}
    out[c] = (pos + neg) / ac
    return out


def p_map(a: Mapping[Vertex, Fraction], s: Seed) -> Assignment:
    """X_c = prod_a A_a^{eps_ca} for every unfrozen c."""
    out = {}
    for c in s.unfrozen:
        val = Fraction(1)
        for v in s.vertices:
            e = _integral_exponent(s.entry(c, v))
            if e:
                val *= Fraction(a[v]) ** e
        out[c] = val
    return out


def boundary_vertex(s: Seed, level: int, side: Literal["left", "right"]) -> Vertex:
    """The leftmost (``i:0``) or rightmost frozen string on a level."""
    ords = [parse_string_id(v)[1] for v in s.vertices if parse_string_id(v)[0] == level]
    if not ords:
        raise ArtifactError(f"missing boundary vertex on level {level}")
    v = string_id(level, 0 if side == "left" else max(ords))
    if v not in s.frozen:
        raise ArtifactError(f"missing boundary vertex on level {level}")
    return v


def reflection_frozen_action(
    x: Mapping[Vertex, Fraction],
    s: Seed,
    C: CartanData,
    level: int,
    side: Literal["left", "right"] = "right",
) -> Assignment:
    """
    Invert the boundary X on ``level``; multiply the boundary X of each other
    level j by X_i^{-C_ij}. Everything else is unchanged.
    """
    C.check_index(level)
    if side not in ("left", "right"):
        raise ArtifactError("side must be left or right")
    vi = boundary_vertex(s, level, side)
    xi = Fraction(x[vi])
    out = {v: Fraction(x[v]) for v in s.vertices}
    out[vi] = 1 / xi
    for j in range(1, C.levels + 1):
        if j == level:
            continue
        cij = C.entry(level, j)
        if cij:
            vj = boundary_vertex(s, j, side)
            out[vj] = out[vj] * xi ** (-cij)
    return out


def assignment_to_json(x: Mapping[Vertex, Fraction]) -> dict[str, str]:
    return {str(k): format_rational(v) for k, v in x.items()}


def assignment_from_json(data: Mapping[str, str]) -> Assignment:
    out = {}
    for k, v in data.items():
        val = Fraction(parse_rational(str(v)))
        if val == 0:
            raise ArtifactError(f"coordinate at {k!r} must be nonzero")
        out[k] = val
    return out


# --- braid-move formulas ------------------------------------------------------

# F-polynomials of the doubly- and triply-laced moves.


def _b2_f(x: Mapping[str, Fraction]) -> dict[str, Fraction]:
    Xa, Xb = x["a"], x["b"]
    return {"a": 1 + Xb + Xa * Xb, "b": 1 + Xb + 2 * Xa * Xb + Xa**2 * Xb}


def _g2_f(x: Mapping[str, Fraction], printed: bool = False) -> dict[str, Fraction]:
    Xa, Xb, Xc, Xd = x["a"], x["b"], x["c"], x["d"]
    # the uncorrected F_a has X_b^3 X_b^2 X_d in place of X_b^3 X_c^2 X_d
    t8 = Xb**3 * Xb**2 * Xd if printed else Xb**3 * Xc**2 * Xd
    Fa = (
        1 + Xd + 3 * Xb * Xd + 3 * Xb**2 * Xd + 3 * Xb**2 * Xc * Xd + Xb**3 * Xd
        + 2 * Xb**3 * Xc * Xd + t8 + 2 * Xa * Xb**2 * Xc * Xd + 2 * Xa * Xb**3 * Xc * Xd
        + 2 * Xa * Xb**3 * Xc**2 * Xd + Xa**2 * Xb**3 * Xc**2 * Xd
    )
    Fb = 1 + Xd + 2 * Xb * Xd + Xb**2 * Xd + Xb**2 * Xc * Xd + Xa * Xb**2 * Xc * Xd
    Fc = (
        1 + Xd + 3 * Xb * Xd + 3 * Xb**2 * Xd + 3 * Xb**2 * Xc * Xd + Xb**3 * Xd
        + 2 * Xb**3 * Xc * Xd + Xb**3 * Xc**2 * Xd + 3 * Xa * Xb**2 * Xc * Xd
        + 3 * Xa * Xb**3 * Xc * Xd + 3 * Xa * Xb**3 * Xc**2 * Xd
        + 3 * Xa**2 * Xb**3 * Xc**2 * Xd + Xa**3 * Xb**3 * Xc**2 * Xd
    )
    # coefficient, exponents of (a, b, c, d)
    fd_terms = [
        (1, 0, 0, 0, 0), (2, 0, 0, 0, 1), (1, 0, 0, 0, 2), (6, 0, 1, 0, 1), (6, 0, 1, 0, 2),
        (6, 0, 2, 0, 1), (15, 0, 2, 0, 2), (3, 0, 2, 1, 1), (3, 0, 2, 1, 2), (2, 0, 3, 0, 1),
        (20, 0, 3, 0, 2), (2, 0, 3, 1, 1), (12, 0, 3, 1, 2), (15, 0, 4, 0, 2), (18, 0, 4, 1, 2),
        (3, 0, 4, 2, 2), (6, 0, 5, 0, 2), (12, 0, 5, 1, 2), (6, 0, 5, 2, 2), (1, 0, 6, 0, 2),
        (3, 0, 6, 1, 2), (3, 0, 6, 2, 2), (1, 0, 6, 3, 2), (3, 1, 2, 1, 1), (3, 1, 2, 1, 2),
        (3, 1, 3, 1, 1), (12, 1, 3, 1, 2), (18, 1, 4, 1, 2), (6, 1, 4, 2, 2), (12, 1, 5, 1, 2),
        (12, 1, 5, 2, 2), (3, 1, 6, 1, 2), (6, 1, 6, 2, 2), (3, 1, 6, 3, 2), (3, 2, 4, 2, 2),
        (6, 2, 5, 2, 2), (3, 2, 6, 2, 2), (3, 2, 6, 3, 2), (1, 3, 6, 3, 2),
    ]
    Fd = sum(k * Xa**p * Xb**r * Xc**s * Xd**t for k, p, r, s, t in fd_terms)
    return {"a": Fa, "b": Fb, "c": Fc, "d": Fd}


Formula = Callable[[dict, dict], Fraction]


@dataclass(frozen=True)
class _MoveCase:
    """A local picture: its triangulation, the pictured labels, the script and formulas."""

    triangulation: Triangulation
    labels: dict[str, str]
    script: tuple[str, ...]
    x_formulas: dict[str, Formula]
    a_formulas: dict[str, Formula]


def _x_tilde(s: Seed, a: Mapping[str, Fraction], labels: Mapping[str, str]) -> dict[str, Fraction]:
    """X_k = prod_l A_l^{eps_kl} on the unfrozen labels."""
    out = {}
    for k, v in labels.items():
        if v in s.frozen:
            continue
        val = Fraction(1)
        for u in s.vertices:
            e = _integral_exponent(s.entry(v, u))
            if e:
                val *= a[u] ** e
        out[k] = val
    return out


def _case(name: str, printed: bool = False) -> _MoveCase:
    if name == "A2":
        C = cartan_from_name("A2")
        t = bottom_only(make_word([1, 2, 1], C))
        labels = dict(a="1:0", b="1:1", c="1:2", d="2:0", e="2:1")
        x = {
            "a": lambda X, F: X["a"] * (1 + X["b"]),
            "b": lambda X, F: 1 / X["b"],
            "c": lambda X, F: X["c"] * X["b"] / (1 + X["b"]),
            "d": lambda X, F: X["d"] * X["b"] / (1 + X["b"]),
            "e": lambda X, F: X["e"] * (1 + X["b"]),
        }
        a = {"b": lambda A, F: (A["a"] * A["e"] + A["c"] * A["d"]) / A["b"]}
    elif name == "swap":
        # nodes -1 then +1 on level 1; level 2 is a single string
        C = cartan_from_name("A2")
        t = Triangulation(make_word([1], C), make_word([1], C), TOP + BOTTOM)
        labels = dict(a="1:0", b="1:1", c="1:2", d="2:0")
        cij = C.entry(1, 2)
        x = {
            "a": lambda X, F: X["a"] * X["b"] / (1 + X["b"]),
            "b": lambda X, F: 1 / X["b"],
            "c": lambda X, F: X["c"] * X["b"] / (1 + X["b"]),
            "d": lambda X, F: X["d"] * (1 + X["b"]) ** (-cij),
        }
        cji = C.entry(2, 1)
        a = {"b": lambda A, F: (A["a"] * A["c"] + A["d"] ** (-cji)) / A["b"]}
    elif name == "B2":
        C = cartan_from_name("B2")
        t = bottom_only(make_word([1, 2, 1, 2], C))
        labels = dict(c="1:0", a="1:1", d="1:2", e="2:0", b="2:1", f="2:2")
        x = {
            "a": lambda X, F: X["a"] / F["b"],
            "b": lambda X, F: F["a"] ** 2 / (X["a"] ** 2 * X["b"]),
            "c": lambda X, F: X["c"] * F["b"] / F["a"],
            "d": lambda X, F: X["d"] * F["a"],
            "e": lambda X, F: X["e"] * X["a"] ** 2 * X["b"] / F["b"],
            "f": lambda X, F: X["f"] * X["b"] * F["b"] / F["a"] ** 2,
        }
        # the uncorrected A'_b has A_c where the mutation gives A_e
        first_b = "c" if printed else "e"
        a = {
            "a": lambda A, F: A["a"] * A["f"] / A["b"] * F["a"],
            "b": lambda A, F: A[first_b] * A["f"] / A["b"] * F["b"],
        }
    elif name == "G2":
        C = cartan_from_name("G2")
        t = bottom_only(make_word([1, 2, 1, 2, 1, 2], C))
        labels = dict(e="1:0", a="1:1", b="1:2", f="1:3", g="2:0", c="2:1", d="2:2", h="2:3")

        def mono(X):
            return X["a"] ** 3 * X["b"] ** 3 * X["c"] ** 2 * X["d"]

        x = {
            "a": lambda X, F: X["a"] * F["d"] / (F["b"] * F["c"]),
            "b": lambda X, F: X["b"] * F["a"] / F["d"],
            "c": lambda X, F: F["a"] ** 3 / (mono(X) * F["d"]),
            "d": lambda X, F: X["c"] * F["b"] ** 3 * F["c"] / F["a"] ** 3,
            "e": lambda X, F: X["e"] * F["c"] / F["a"],
            "f": lambda X, F: X["f"] * F["b"],
            "g": lambda X, F: mono(X) * X["g"] / F["c"],
            "h": lambda X, F: X["d"] * X["h"] * F["d"] / F["b"] ** 3,
        }
        # the uncorrected A'_d divides by A_d^{-2}; the mutation gives A_d^2
        d_power = -2 if printed else 2
        a = {
            "a": lambda A, F: A["a"] * A["h"] / A["d"] * F["a"],
            "b": lambda A, F: A["b"] * A["h"] / A["d"] * F["b"],
            "c": lambda A, F: A["g"] * A["h"] / A["d"] * F["c"],
            "d": lambda A, F: A["c"] * A["h"] ** 2 / A["d"] ** d_power * F["d"],
        }
    else:
        raise ArtifactError(f"unknown braid-move case {name!r}; use A2, B2, G2 or swap")
    if name == "swap":
        script: tuple[str, ...] = (labels["b"],)
    else:
        _, ms = braid_move_on_base(t, "bottom", 0)
        script = tuple(ms.steps)
    return _MoveCase(t, labels, script, x, a)


def _f_values(name: str, vals: Mapping[str, Fraction], printed: bool) -> dict[str, Fraction]:
    if name == "B2":
        return _b2_f(vals)
    if name == "G2":
        return _g2_f(vals, printed)
    return {}


@dataclass
class FormulaReport:
    """Per-coordinate mismatch counts of one verification run."""

    case: str
    trials: int
    rng_seed: int
    printed: bool
    checked: list[str] = field(default_factory=list)
    mismatches: dict[str, int] = field(default_factory=dict)
    poles_resampled: int = 0

    @property
    def ok(self) -> bool:
        return not any(self.mismatches.values())

    @property
    def total_mismatches(self) -> int:
        return sum(self.mismatches.values())

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "trials": self.trials,
            "rng_seed": self.rng_seed,
            "printed": self.printed,
            "results": {k: self.mismatches[k] == 0 for k in self.checked},
            "mismatches": {k: self.mismatches[k] for k in self.checked},
            "poles_resampled": self.poles_resampled,
        }


def _random_value(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 97), rng.randint(1, 97))


def verify_braid_move_formulas(
    case: str,
    trials: int | None = None,
    rng_seed: int = DEFAULT_RNG_SEED,
    include_node_swap: bool = False,
    printed: bool = False,
) -> FormulaReport | list[FormulaReport]:
    """
    Compare the closed-form coordinate changes of a braid move with the engine.

    ``case`` is A2, B2, G2 or swap (the exchange of adjacent nodes -i, i). With
    ``include_node_swap`` the swap case is run too and a list is returned.
    ``printed`` uses the uncorrected formula variants, which contain known typos.
    """
    if include_node_swap and case != "swap":
        first = verify_braid_move_formulas(case, trials, rng_seed, False, printed)
        swap = verify_braid_move_formulas("swap", trials, rng_seed, False, printed)
        return [first, swap]
    if trials is None:
        trials = DEFAULT_TRIALS.get(case, 100)
    if trials < 1:
        raise ArtifactError("trials must be positive")
    mc = _case(case, printed)
    s = seed_of(mc.triangulation)
    for a_ in s.vertices:
        for b_ in s.vertices:
            e = s.entry(a_, b_)
            if isinstance(e, Fraction) and e.denominator != 1:
                if a_ not in s.frozen or b_ not in s.frozen:
                    raise ArtifactError("half-integral entry touches a mutable vertex")
    inv = {v: k for k, v in mc.labels.items()}
    rep = FormulaReport(case, trials, rng_seed, printed)
    names = [f"X'_{k}" for k in mc.labels] + [f"A'_{k}" for k in mc.labels]
    rep.checked = names
    rep.mismatches = {k: 0 for k in names}
    rng = random.Random(rng_seed)
    done = 0
    while done < trials:
        X = {v: _random_value(rng) for v in s.vertices}
        A = {v: _random_value(rng) for v in s.vertices}
        try:
            cur, XX, AA = s, X, A
            for v in mc.script:
                XX, AA = x_mutate(XX, cur, v), a_mutate(AA, cur, v)
                cur = mutate(cur, v)
            xl = {k: X[v] for k, v in mc.labels.items()}
            al = {k: A[v] for k, v in mc.labels.items()}
            fx = _f_values(case, xl, printed)
            fa = _f_values(case, _x_tilde(s, A, mc.labels), printed)
            expect_x = {k: f(xl, fx) for k, f in mc.x_formulas.items()}
            expect_a = {k: f(al, fa) for k, f in mc.a_formulas.items()}
        except (ZeroDivisionError, ArtifactError):
            rep.poles_resampled += 1
            continue
        done += 1
        for v, val in XX.items():
            k = inv[v]
            if val != expect_x.get(k, xl[k]):
                rep.mismatches[f"X'_{k}"] += 1
        for v, val in AA.items():
            k = inv[v]
            if val != expect_a.get(k, al[k]):
                rep.mismatches[f"A'_{k}"] += 1
    return rep


def local_seed(case: str) -> tuple[Seed, dict[str, str], tuple[str, ...]]:
    """The seed of a braid-move picture, its labels (letter -> vertex) and script."""
    mc = _case(case)
    return seed_of(mc.triangulation), dict(mc.labels), mc.script

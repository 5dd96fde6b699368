"""
Exact arithmetic kernel.

Integer polynomials in one variable ``q``, rational functions whose
denominator is a power of ``(q - 1)``, and small dense matrices over the
rationals. Nothing here ever touches floating point.

Rationals are plain :class:`fractions.Fraction` values. Matrix entries are
stored as ``int`` whenever they are integral, which keeps the hot mutation
loops on machine-friendly integers.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import ArtifactError

Number = Union[int, Fraction]


def normalize_number(x: Number) -> Number:
    """Return ``x`` as an ``int`` when it is integral, else as a reduced Fraction."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise ArtifactError(f"not an exact number: {x!r}")


def parse_rational(text: str) -> Number:
    """
    Parse "p" or "p/q" into an exact number.

    >>> parse_rational("-3/6")
    Fraction(-1, 2)
    >>> parse_rational("4")
    4
    """
    try:
        return normalize_number(Fraction(str(text).strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ArtifactError(f"bad rational {text!r}") from exc


def format_rational(x: Number) -> str:
    x = normalize_number(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


class Polynomial:
    """
    Dense integer polynomial in ``q`` with ascending coefficients.

    The zero polynomial has no coefficients at all.

    >>> p = Polynomial([1, 0, 1])
    >>> p * Polynomial.q_minus_one() ** 2
    Polynomial([1, -2, 2, -2, 1])
    >>> p(2)
    5
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: int) -> Polynomial:
        return cls([c])

    @classmethod
    def q(cls) -> Polynomial:
        return cls([0, 1])

    @classmethod
    def q_minus_one(cls) -> Polynomial:
        return cls([-1, 1])

    @staticmethod
    def _coerce(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial([other])
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ArtifactError("negative power of a polynomial")
        result = Polynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        return self.render()

    def divide_by_q_minus_one(self) -> tuple[Polynomial, int]:
        """Synthetic division by (q - 1); returns (quotient, remainder)."""
        if self.is_zero():
            return Polynomial(), 0
        n = self.degree
        quotient = [0] * n
        carry = 0
        for k in range(n, 0, -1):
            carry = carry + self.coeffs[k]
            quotient[k - 1] = carry
        remainder = carry + self.coeffs[0]
        return Polynomial(quotient), remainder

    def render(self, ascending: bool = True) -> str:
        """
        Human-readable form with explicit signs.

        >>> Polynomial([1, -2, 2, -2, 1]).render()
        '1 - 2q + 2q^2 - 2q^3 + q^4'
        >>> Polynomial([1, -2, 2, -2, 1]).render(ascending=False)
        'q^4 - 2q^3 + 2q^2 - 2q + 1'
        """
        if self.is_zero():
            return "0"
        order = range(len(self.coeffs)) if ascending else range(self.degree, -1, -1)
        parts: list[str] = []
        for k in order:
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Polynomial:
        return cls(int(c) for c in data["coeffs"])


def poly_order_at_one(p: Polynomial) -> int:
    """
    Multiplicity of the root q = 1.

    >>> poly_order_at_one(Polynomial([0, 0, -1, 1]))
    1
    """
    if p.is_zero():
        raise ArtifactError("undefined order")
    order = 0
    while True:
        quotient, remainder = p.divide_by_q_minus_one()
        if remainder != 0:
            return order
        p = quotient
        order += 1


class RationalFunction:
    """
    A polynomial over ``(q - 1)^k``, kept with ``k`` minimal.

    >>> RationalFunction(Polynomial([1, -2, 1]), 2)
    RationalFunction(Polynomial([1]), 0)
    """

    __slots__ = ("numerator", "denom_power")

    def __init__(self, numerator: Polynomial, denom_power: int = 0):
        if denom_power < 0:
            raise ArtifactError("denominator power must be non-negative")
        num = numerator
        k = denom_power
        while k > 0 and not num.is_zero():
            quotient, remainder = num.divide_by_q_minus_one()
            if remainder != 0:
                break
            num = quotient
            k -= 1
        if num.is_zero():
            k = 0
        self.numerator: Polynomial = num
        self.denom_power: int = k

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def order_at_one(self) -> int:
        return poly_order_at_one(self.numerator) - self.denom_power

    def times_q_minus_one_power(self, k: int) -> RationalFunction:
        if k >= 0:
            shift = min(k, self.denom_power)
            num = self.numerator * Polynomial.q_minus_one() ** (k - shift)
            return RationalFunction(num, self.denom_power - shift)
        return RationalFunction(self.numerator, self.denom_power - k)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            other = RationalFunction(other, 0)
        if not isinstance(other, RationalFunction):
            return False
        # both sides are normalized, so compare by cross-multiplication anyway
        # to stay correct for hand-built values
        lhs = self.numerator * Polynomial.q_minus_one() ** other.denom_power
        rhs = other.numerator * Polynomial.q_minus_one() ** self.denom_power
        return lhs == rhs

    def __hash__(self) -> int:
        return hash((self.numerator, self.denom_power))

    def __repr__(self) -> str:
        return f"RationalFunction({self.numerator!r}, {self.denom_power})"

    def render(self, ascending: bool = True) -> str:
        num = self.numerator.render(ascending)
        if self.denom_power == 0:
            return num
        den = "(q - 1)" if self.denom_power == 1 else f"(q - 1)^{self.denom_power}"
        if len(self.numerator.coeffs) > 1 and sum(1 for c in self.numerator.coeffs if c) > 1:
            num = f"({num})"
        return f"{num}/{den}"

    __str__ = render

    def to_json(self) -> dict:
        return {"num": self.numerator.to_json(), "den_pow": self.denom_power}

    @classmethod
    def from_json(cls, data: dict) -> RationalFunction:
        return cls(Polynomial.from_json(data["num"]), int(data["den_pow"]))


def poly_divide_by_q_minus_1_power(p: Polynomial, k: int) -> RationalFunction:
    """Return p / (q - 1)^k in normal form."""
    return RationalFunction(p, k)


class Matrix:
    """
    Small dense matrix over the rationals.

    Entries live in row-major tuples; integral entries are stored as ``int``.

    >>> m = Matrix([[1, 2], [3, 4]])
    >>> (m * m.inverse()) == Matrix.identity(2)
    True
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[Number]], ncols: int | None = None):
        self.rows: tuple[tuple[Number, ...], ...] = tuple(
            tuple(normalize_number(x) for x in row) for row in rows
        )
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        if any(len(row) != self.ncols for row in self.rows):
            raise ArtifactError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, n: int, m: int) -> Matrix:
        return cls([[0] * m for _ in range(n)], ncols=m)

    def __getitem__(self, ij: tuple[int, int]) -> Number:
        i, j = ij
        return self.rows[i][j]

    @property
    def entries(self) -> list[Number]:
        return [x for row in self.rows for x in row]

    def transpose(self) -> Matrix:
        return Matrix([list(col) for col in zip(*self.rows)], ncols=self.nrows)

    def __mul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ArtifactError("matrix shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else []
        return Matrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows],
            ncols=other.ncols,
        )

    def __neg__(self) -> Matrix:
        return Matrix([[-x for x in row] for row in self.rows], ncols=self.ncols)

    def __add__(self, other: Matrix) -> Matrix:
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows and self.ncols == other.ncols

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Matrix({[list(r) for r in self.rows]})"

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for x in self.entries)

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.nrows)

    def _echelon(self) -> tuple[list[list[Fraction]], list[list[Fraction]], Fraction]:
        n = self.nrows
        if n != self.ncols:
            raise ArtifactError("square matrix required")
        a = [[Fraction(x) for x in row] for row in self.rows]
        inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
            if pivot is None:
                return a, inv, Fraction(0)
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                inv[col], inv[pivot] = inv[pivot], inv[col]
                det = -det
            p = a[col][col]
            det *= p
            a[col] = [x / p for x in a[col]]
            inv[col] = [x / p for x in inv[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return a, inv, det

    def determinant(self) -> Number:
        return normalize_number(self._echelon()[2])

    def inverse(self) -> Matrix:
        _, inv, det = self._echelon()
        if det == 0:
            raise ArtifactError("singular matrix")
        return Matrix(inv, ncols=self.nrows)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> Matrix:
        return cls([[parse_rational(x) for x in row] for row in data])


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix with a 1 at (k, perm[k]) for every row k."""
    n = len(perm)
    return Matrix([[1 if perm[k] == j else 0 for j in range(n)] for k in range(n)], ncols=n)

"""Exterior algebra on n degree-one generators with exact rational coefficients.

Monomials are bitmasks: bit ``i - 1`` set means generator ``a_i`` occurs.
Generator indices in the public API are 1-based, matching the notation
``a1 ^ a2`` used throughout the package.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .errors import DimensionMismatch


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_indices(mask: int) -> tuple[int, ...]:
    """1-based generator indices of a monomial, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def merge_sign(a: int, b: int) -> int:
    """Sign of ``mono(a) ^ mono(b)`` rewritten in ascending order, or 0 on overlap.

    This is the only place where reordering signs are computed.
    """
    if a & b:
        return 0
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        # generators of a lying above this generator of b must hop over it
        swaps += popcount(a & ~((low << 1) - 1))
        bb ^= low
    return -1 if swaps & 1 else 1


def basis(n: int, k: int) -> list[int]:
    """Degree-k monomials in lexicographic order of their index tuples."""
    return [indices_mask(c) for c in combinations(range(1, n + 1), k)]


def basis_size(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


class Form:
    """An element of the exterior algebra, stored sparsely.

    Instances are immutable. ``terms`` maps monomial bitmasks to non-zero
    ``Fraction`` coefficients. ``a ^ b`` is the wedge product.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[int, object] | None = None):
        if n < 0:
            raise ValueError("generator count must be non-negative")
        self.n = n
        clean = {}
        top = (1 << n) - 1
        for mono, c in (terms or {}).items():
            if mono & ~top:
                raise IndexError(f"monomial {mask_indices(mono)} exceeds n={n}")
            c = Fraction(c)
            if c:
                clean[mono] = c
        self._terms = clean
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, n: int) -> "Form":
        return cls(n)

    @classmethod
    def scalar(cls, n: int, c=1) -> "Form":
        return cls(n, {0: c})

    @classmethod
    def generator(cls, n: int, i: int) -> "Form":
        _check_index(n, i)
        return cls(n, {1 << (i - 1): 1})

    @classmethod
    def monomial(cls, n: int, indices: Iterable[int], coeff=1) -> "Form":
        """Product ``a_{i1} ^ a_{i2} ^ ...`` in the given (possibly unsorted) order."""
        out = cls.scalar(n, coeff)
        for i in indices:
            out = out ^ cls.generator(n, i)
        return out

    @classmethod
    def from_vector(cls, n: int, k: int, vec, monos: list[int] | None = None) -> "Form":
        monos = basis(n, k) if monos is None else monos
        return cls(n, {m: c for m, c in zip(monos, vec) if c})

    # accessors

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, mono: int) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def degrees(self) -> set[int]:
        return {popcount(m) for m in self._terms}

    @property
    def degree(self) -> int | None:
        """Common degree of all terms; None for zero or mixed forms."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, k: int) -> "Form":
        return Form(self.n, {m: c for m, c in self._terms.items() if popcount(m) == k})

    def to_vector(self, k: int, index: dict[int, int] | None = None) -> list[Fraction]:
        """Coefficient vector in the degree-k basis; other degrees must be absent."""
        if index is None:
            index = {m: i for i, m in enumerate(basis(self.n, k))}
        vec = [Fraction(0)] * len(index)
        for m, c in self._terms.items():
            if popcount(m) != k:
                raise ValueError(f"form has a term of degree {popcount(m)}, expected {k}")
            vec[index[m]] = c
        return vec

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Form):
            return self.n == other.n and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # arithmetic

    def _same_n(self, other: "Form"):
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatch(f"forms over {self.n} and {other.n} generators")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Form.scalar(self.n, other)
        self._same_n(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Form(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Form(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, Form):
            return wedge(self, c)
        c = Fraction(c)
        return Form(self.n, {m: v * c for m, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def __xor__(self, other):
        return wedge(self, other)

    def __pow__(self, p: int):
        if p < 0:
            raise ValueError("negative power")
        out = Form.scalar(self.n)
        for _ in range(p):
            out = wedge(out, self)
        return out

    def __repr__(self):
        return f"Form({self.n}, {format_form(self)!r})"

    def __str__(self):
        return format_form(self)


def _check_index(n: int, i: int):
    if not 1 <= i <= n:
        raise IndexError(f"generator index {i} out of range 1..{n}")


def wedge(a: Form, b: Form) -> Form:
    a._same_n(b)
    out: dict[int, Fraction] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            s = merge_sign(ma, mb)
            if s:
                m = ma | mb
                out[m] = out.get(m, 0) + s * ca * cb
    return Form(a.n, out)


def interior(i: int, a: Form) -> Form:
    """Contraction with the i-th dual basis vector (an antiderivation of degree -1)."""
    _check_index(a.n, i)
    bit = 1 << (i - 1)
    below = bit - 1
    out = {}
    for m, c in a._terms.items():
        if m & bit:
            out[m ^ bit] = -c if popcount(m & below) & 1 else c
    return Form(a.n, out)


def top_coefficient(a: Form) -> Fraction:
    return a.coeff((1 << a.n) - 1)


def format_form(a: Form, names: list[str] | None = None) -> str:
    if not a:
        return "0"
    parts = []
    for m in sorted(a._terms, key=lambda m: (popcount(m), mask_indices(m))):
        c = a._terms[m]
        idx = mask_indices(m)
        mono = "^".join(names[i - 1] if names else f"a{i}" for i in idx)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text

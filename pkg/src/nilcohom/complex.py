"""The Chevalley-Eilenberg complex of a Lie algebra and its cohomology.

On generators ``d a_k = -sum_{i<j} c_k^{ij} a_i a_j``; ``d`` is extended to
the whole exterior algebra as a degree +1 antiderivation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import JacobiError, NilcohomError
from .exterior import Form, basis, mask_indices, top_coefficient, wedge
from .lie import StructureConstants


class Differential:
    """Matrices of ``d_k: Λ^k -> Λ^{k+1}`` in the lexicographic monomial bases.

    Build with :func:`build_differential`; ``matrix(k)`` has one row per
    degree-(k+1) monomial and one column per degree-k monomial.
    """

    def __init__(self, sc: StructureConstants, generator_images: list[Form]):
        self.sc = sc
        self.n = sc.n
        self.generator_images = generator_images
        self.bases = [basis(self.n, k) for k in range(self.n + 1)]
        self.index = [{m: i for i, m in enumerate(b)} for b in self.bases]
        self._mono_cache: dict[int, Form] = {}
        self.matrices = [self._build_matrix(k) for k in range(self.n + 1)]
        self._cohomology = None

    def dim(self, k: int) -> int:
        return len(self.bases[k]) if 0 <= k <= self.n else 0

    def _on_monomial(self, mono: int) -> Form:
        if mono not in self._mono_cache:
            n = self.n
            idx = mask_indices(mono)
            out = Form.zero(n)
            for p, i in enumerate(idx):
                head = Form.monomial(n, idx[:p])
                tail = Form.monomial(n, idx[p + 1:])
                term = wedge(wedge(head, self.generator_images[i - 1]), tail)
                out = out - term if p & 1 else out + term
            self._mono_cache[mono] = out
        return self._mono_cache[mono]

    def _build_matrix(self, k: int):
        rows = self.dim(k + 1)
        cols = self.dim(k)
        mat = linalg.zeros(rows, cols)
        if rows == 0:
            return mat
        target = self.index[k + 1]
        for j, mono in enumerate(self.bases[k]):
            for m, c in self._on_monomial(mono).items():
                mat[target[m]][j] = c
        return mat

    def matrix(self, k: int):
        if 0 <= k <= self.n:
            return self.matrices[k]
        return linalg.zeros(self.dim(k + 1), self.dim(k))

    def __call__(self, a: Form) -> Form:
        if a.n != self.n:
            raise NilcohomError(f"form over {a.n} generators, complex has {self.n}")
        out = Form.zero(self.n)
        for mono, c in a.items():
            out = out + c * self._on_monomial(mono)
        return out

    def vector(self, a: Form, k: int):
        return a.to_vector(k, self.index[k])

    def sparse_vector(self, a: Form, k: int) -> dict:
        index = self.index[k]
        try:
            return {index[m]: c for m, c in a.items()}
        except KeyError:
            raise ValueError(f"form has terms outside degree {k}") from None

    def form(self, vec, k: int) -> Form:
        return Form.from_vector(self.n, k, vec, self.bases[k])

    def is_zero(self) -> bool:
        return all(not img for img in self.generator_images)


def generator_differentials(sc: StructureConstants) -> list[Form]:
    n = sc.n
    images = [Form.zero(n) for _ in range(n)]
    for (i, j), targets in sc.brackets.items():
        mono = Form.monomial(n, (i, j))
        for k, c in targets.items():
            images[k - 1] = images[k - 1] - c * mono
    return images


def build_differential(sc: StructureConstants) -> Differential:
    d = Differential(sc, generator_differentials(sc))
    for k, img in enumerate(d.generator_images, 1):
        dd = d(img)
        if dd:
            raise JacobiError(
                f"d(d a{k}) = {dd} is not zero: the brackets violate the Jacobi identity",
                generator=k,
            )
    for k in range(d.n - 1):
        if not linalg.is_zero(linalg.matmul(d.matrices[k + 1], d.matrices[k])):
            raise JacobiError(f"d^2 != 0 on degree {k}")
    return d


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(
            c if type(c) is Fraction else Fraction(c) for c in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other):
        if other.degree != self.degree:
            raise ValueError("cannot add classes of different degree")
        return CohomologyClass(self.degree, [a + b for a, b in zip(self.coords, other.coords)])

    def __mul__(self, c):
        return CohomologyClass(self.degree, [x * c for x in self.coords])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1


class _Degree:
    """Cohomology data in one degree."""

    def __init__(self, d: Differential, k: int):
        dim = d.dim(k)
        self.k = k
        self.dim = dim
        self.cycles = linalg.nullspace(d.matrix(k), dim) if k < d.n else [
            [Fraction(int(i == j)) for i in range(dim)] for j in range(dim)
        ]
        prev = d.matrix(k - 1) if k > 0 else []
        image_cols = linalg.transpose(prev, d.dim(k - 1)) if k > 0 else []
        self.boundaries = linalg.row_space(image_cols, dim)
        span = linalg.Echelon(dim)
        for b in self.boundaries:
            span.add(b)
        self.reps = [z for z in self.cycles if span.add(z)]
        reps = self.reps
        self.betti = len(reps)
        # columns: boundaries first, then representatives
        self._reducer = linalg.Solver(self.boundaries + reps, dim)
        self._primitive = linalg.Solver(image_cols, dim) if k > 0 else None


class CohomologyBasis:
    """Betti numbers, representatives and class reduction for every degree."""

    def __init__(self, d: Differential):
        self.d = d
        self.n = d.n
        self._deg = [_Degree(d, k) for k in range(d.n + 1)]
        self._cup_table = {}

    def cup_table(self, p: int, q: int):
        """``T[i][j]`` = coordinates of (i-th class of H^p) * (j-th class of H^q)."""
        if (p, q) not in self._cup_table:
            left = self.representatives(p)
            right = self.representatives(q)
            self._cup_table[(p, q)] = [
                [self.reduce(wedge(a, b), p + q).coords for b in right] for a in left
            ]
        return self._cup_table[(p, q)]

    def betti(self, k: int | None = None):
        if k is None:
            return [g.betti for g in self._deg]
        return self._deg[k].betti if 0 <= k <= self.n else 0

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti()))

    def representatives(self, k: int) -> list[Form]:
        g = self._deg[k]
        if not hasattr(g, "forms"):
            g.forms = [self.d.form(v, k) for v in g.reps]
        return list(g.forms)

    def representative_vectors(self, k: int):
        return self._deg[k].reps

    def basis_classes(self, k: int) -> list[CohomologyClass]:
        b = self.betti(k)
        return [CohomologyClass(k, [int(i == j) for i in range(b)]) for j in range(b)]

    def representative(self, cls: CohomologyClass) -> Form:
        k = cls.degree
        if not 0 <= k <= self.n:
            return Form.zero(self.n)
        reps = self._deg[k].reps
        if len(cls.coords) != len(reps):
            raise ValueError(f"class has {len(cls.coords)} coordinates, H^{k} has dimension {len(reps)}")
        vec = [Fraction(0)] * self._deg[k].dim
        for c, r in zip(cls.coords, reps):
            if c:
                vec = [x + c * y for x, y in zip(vec, r)]
        return self.d.form(vec, k)

    def is_closed(self, a: Form) -> bool:
        return not self.d(a)

    def reduce_vector(self, vec, k: int) -> tuple:
        g = self._deg[k]
        sol = g._reducer.solve(vec)
        if sol is None:
            raise NilcohomError(f"degree-{k} form is not closed; it has no cohomology class")
        return tuple(sol[len(g.boundaries):])

    def reduce(self, a: Form, k: int | None = None) -> CohomologyClass:
        """Class of a closed homogeneous form, in the cached basis."""
        if k is None:
            k = a.degree
            if k is None:
                if a:
                    raise NilcohomError("cannot reduce a mixed-degree form")
                raise NilcohomError("degree of the zero form is ambiguous; pass k")
        if not 0 <= k <= self.n:
            return CohomologyClass(k, ())
        return CohomologyClass(k, self.reduce_vector(self.d.sparse_vector(a, k), k))

    def is_exact(self, a: Form, k: int | None = None) -> bool:
        k = a.degree if k is None else k
        if k is None:
            return not a
        if k == 0:
            return not a
        return self._deg[k]._primitive.contains(self.d.sparse_vector(a, k))

    def primitive(self, a: Form, k: int | None = None) -> Form | None:
        """Some ``x`` with ``d x = a``, or None when ``a`` is not exact."""
        k = a.degree if k is None else k
        if k is None:
            return Form.zero(self.n) if not a else None
        if k == 0 or k > self.n:
            return None if a else Form.zero(self.n)
        sol = self._deg[k]._primitive.solve(self.d.sparse_vector(a, k))
        if sol is None:
            return None
        return self.d.form(sol, k - 1)

    def boundary_vectors(self, k: int):
        return self._deg[k].boundaries


def cohomology(d: Differential) -> CohomologyBasis:
    if d._cohomology is None:
        d._cohomology = CohomologyBasis(d)
    return d._cohomology


def cup(coh: CohomologyBasis, a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    k = a.degree + b.degree
    if k > coh.n:
        return CohomologyClass(k, ())
    # bilinear in the cached basis
    table = coh.cup_table(a.degree, b.degree)
    out = [Fraction(0)] * coh.betti(k)
    right = [(j, y) for j, y in enumerate(b.coords) if y]
    for i, x in enumerate(a.coords):
        if not x:
            continue
        for j, y in right:
            xy = x * y
            for idx, t in enumerate(table[i][j]):
                if t:
                    out[idx] += xy * t
    return CohomologyClass(k, out)


def poincare_pairing(coh: CohomologyBasis, k: int):
    """Matrix of ``top_coefficient(rep_a ^ rep_b)``, rep_a in H^k, rep_b in H^{n-k}."""
    left = coh.representatives(k)
    right = coh.representatives(coh.n - k)
    return [[top_coefficient(wedge(x, y)) for y in right] for x in left]

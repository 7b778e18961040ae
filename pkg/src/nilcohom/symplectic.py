"""Symplectic forms on the Chevalley-Eilenberg complex.

Conventions (all exact):

* ``Omega[i][j]`` is the coefficient of ``a_i a_j`` in omega for ``i < j``,
  extended antisymmetrically; the Poisson matrix ``Pi`` satisfies
  ``Pi @ Omega == I``.
* ``i(Pi) = sum_{i<j} Pi[i][j] * interior(j) o interior(i)``, so that a
  2-form contracts as ``i(X_i ^ X_j)(a_i ^ a_j) = 1``.
* Koszul codifferential ``delta = i(Pi) o d - d o i(Pi)``.
* The pairing ``Λ^k(Pi)(b, a)`` on monomials is the minor of ``Pi`` with rows
  from ``b`` and columns from ``a``; the star operator is the unique
  ``*a`` with ``b ^ *a = Λ^k(Pi)(b, a) vol`` where ``vol = omega^m / m!``.

With these choices ``delta == (-1)^(k+1) * d *`` holds on every degree-k
form, which the test suite checks exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import linalg
from .complex import CohomologyBasis, Differential, cohomology
from .errors import (DegenerateFormError, NilcohomError, NotClosedError,
                     OddDimensionError, OracleMismatch)
from .exterior import Form, interior, mask_indices, top_coefficient, wedge


@dataclass(eq=False)
class SymplecticData:
    omega: Form
    Omega: list
    Pi: list
    m: int
    vol: Form
    d: Differential
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def n(self):
        return 2 * self.m

    # operator matrices, cached per degree

    def contraction_matrix(self, k: int):
        """Matrix of i(Pi): Λ^k -> Λ^{k-2}."""
        key = ("iPi", k)
        if key not in self._cache:
            d = self.d
            rows, cols = d.dim(k - 2), d.dim(k)
            mat = linalg.zeros(rows, cols)
            if rows:
                for j, mono in enumerate(d.bases[k]):
                    img = contract_poisson(self.Pi, Form(self.n, {mono: 1}))
                    for mm, c in img.items():
                        mat[d.index[k - 2][mm]][j] = c
            self._cache[key] = mat
        return self._cache[key]

    def delta_matrix(self, k: int):
        """Matrix of delta: Λ^k -> Λ^{k-1}."""
        key = ("delta", k)
        if key not in self._cache:
            d = self.d
            rows, cols = d.dim(k - 1), d.dim(k)
            if rows == 0 or cols == 0:
                mat = linalg.zeros(rows, cols)
            else:
                first = linalg.matmul(self.contraction_matrix(k + 1), d.matrix(k)) \
                    if k + 1 <= self.n else linalg.zeros(rows, cols)
                second = linalg.matmul(d.matrix(k - 2), self.contraction_matrix(k)) \
                    if k >= 2 else linalg.zeros(rows, cols)
                mat = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(first, second)]
            self._cache[key] = mat
        return self._cache[key]

    def star_matrix(self, k: int):
        """Matrix of the symplectic star: Λ^k -> Λ^{n-k}."""
        key = ("star", k)
        if key not in self._cache:
            self._cache[key] = _star_matrix(self, k)
        return self._cache[key]


def omega_matrix(w: Form):
    n = w.n
    mat = linalg.zeros(n, n)
    for mono, c in w.items():
        i, j = mask_indices(mono)
        mat[i - 1][j - 1] = c
        mat[j - 1][i - 1] = -c
    return mat


def check_symplectic(d: Differential, w: Form) -> SymplecticData:
    n = d.n
    if n % 2:
        raise OddDimensionError(f"dimension {n} is odd; no symplectic forms exist")
    if w.n != n:
        raise NilcohomError(f"form over {w.n} generators, algebra has dimension {n}")
    if w and w.degrees() != {2}:
        raise NilcohomError(f"a symplectic form must be a 2-form, got degrees {sorted(w.degrees())}")
    dw = d(w)
    if dw:
        raise NotClosedError(f"form is not closed: d(omega) = {dw}", dw=dw)
    m = n // 2
    top = w ** m
    if not top:
        raise DegenerateFormError(f"omega^{m} = 0, the form is degenerate")
    Omega = omega_matrix(w)
    Pi = linalg.inverse(Omega)
    return SymplecticData(w, Omega, Pi, m, top / factorial(m), d)


def contract_poisson(Pi, a: Form) -> Form:
    n = a.n
    out = Form.zero(n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            p = Pi[i - 1][j - 1]
            if p:
                out = out + p * interior(j, interior(i, a))
    return out


def koszul_delta(s: SymplecticData, a: Form) -> Form:
    """delta(a) = i(Pi) d a - d i(Pi) a."""
    d = s.d
    return contract_poisson(s.Pi, d(a)) - d(contract_poisson(s.Pi, a))


def poisson_pairing(Pi, b: int, a: int) -> Fraction:
    """Λ^k(Pi)(b, a) for monomials given as bitmasks."""
    rows = [i - 1 for i in mask_indices(b)]
    cols = [j - 1 for j in mask_indices(a)]
    if len(rows) != len(cols):
        raise ValueError("monomials of different degree")
    if not rows:
        return Fraction(1)
    return linalg.det([[Pi[i][j] for j in cols] for i in rows])


def _star_matrix(s: SymplecticData, k: int):
    d = s.d
    n = s.n
    src = d.bases[k]
    dst = d.bases[n - k]
    c = top_coefficient(s.vol)
    top = (1 << n) - 1
    # wedge pairing between Λ^k and Λ^{n-k}: a signed permutation matrix
    pairing_cols = []
    for g in dst:
        col = []
        for b in src:
            prod = wedge(Form(n, {b: 1}), Form(n, {g: 1}))
            col.append(prod.coeff(top))
        pairing_cols.append(col)
    solver = linalg.Solver(pairing_cols, len(src))
    out_cols = []
    for a in src:
        rhs = [poisson_pairing(s.Pi, b, a) * c for b in src]
        sol = solver.solve(rhs)
        if sol is None:
            raise OracleMismatch("wedge pairing is singular; cannot define the star operator")
        out_cols.append(sol)
    return linalg.transpose(out_cols, len(dst))


def star(s: SymplecticData, a: Form) -> Form:
    k = a.degree
    if k is None:
        if a:
            raise NilcohomError("star needs a homogeneous form")
        return Form.zero(s.n)
    vec = linalg.matvec(s.star_matrix(k), s.d.vector(a, k))
    return s.d.form(vec, s.n - k)


# harmonic cohomology and Lefschetz maps


@dataclass
class HarmonicSummary:
    h: list
    betti: list
    oracle: list  # one dict per checked degree 2m - k, k = 0, 1, 2

    def to_dict(self):
        return {"h": self.h, "betti": self.betti, "lemma_oracle": self.oracle}


def _coh(s: SymplecticData, coh: CohomologyBasis | None) -> CohomologyBasis:
    return coh if coh is not None else cohomology(s.d)


def harmonic_dimensions(s: SymplecticData) -> list[int]:
    """h_k for every degree, straight from ker d ∩ ker delta modulo exact forms."""
    d = s.d
    out = []
    for k in range(s.n + 1):
        dim = d.dim(k)
        stacked = d.matrix(k) + s.delta_matrix(k)
        harmonic = linalg.nullspace(stacked, dim)
        exact = linalg.transpose(d.matrix(k - 1), d.dim(k - 1)) if k > 0 else []
        out.append(len(harmonic) - linalg.intersection_dim(harmonic, exact, dim))
    return out


def harmonic_cohomology(s: SymplecticData, coh: CohomologyBasis | None = None) -> HarmonicSummary:
    """Harmonic dimensions, cross-checked against Lefschetz ranks in the top three degrees.

    Raises OracleMismatch if the two computations ever disagree.
    """
    coh = _coh(s, coh)
    h = harmonic_dimensions(s)
    checks = []
    for k in range(0, min(2, s.m) + 1):
        degree = s.n - k
        rank = lefschetz_rank(s, k, coh)
        checks.append({"degree": degree, "k": k, "harmonic": h[degree],
                       "lefschetz_rank": rank, "agree": h[degree] == rank})
        if h[degree] != rank:
            raise OracleMismatch(
                f"h_{degree} = {h[degree]} from delta-harmonic forms but the Lefschetz "
                f"map H^{k} -> H^{degree} has rank {rank}: sign-convention bug"
            )
    return HarmonicSummary(h, coh.betti(), checks)


def lefschetz_images(s: SymplecticData, k: int, coh: CohomologyBasis | None = None):
    """Classes [omega]^(m-k) [h] for each basis class h of H^k."""
    coh = _coh(s, coh)
    if not 0 <= k <= s.m:
        raise ValueError(f"k must lie in 0..{s.m}")
    power = s.omega ** (s.m - k)
    return [coh.reduce(wedge(power, rep), s.n - k) for rep in coh.representatives(k)]


def lefschetz_rank(s: SymplecticData, k: int, coh: CohomologyBasis | None = None) -> int:
    """Rank of multiplication by [omega]^(m-k) from H^k to H^(2m-k)."""
    images = lefschetz_images(s, k, coh)
    coh = _coh(s, coh)
    return linalg.span_dim([list(c.coords) for c in images], coh.betti(s.n - k))


@dataclass
class LefschetzReport:
    verdicts: list
    passes: bool

    def to_dict(self):
        return {"verdicts": self.verdicts, "hard_lefschetz": self.passes}


def hard_lefschetz(s: SymplecticData, coh: CohomologyBasis | None = None) -> LefschetzReport:
    coh = _coh(s, coh)
    m = s.m
    verdicts = []
    for k in range(1, m + 1):
        rank = lefschetz_rank(s, m - k, coh)
        src, dst = coh.betti(m - k), coh.betti(m + k)
        verdicts.append({
            "k": k, "source_degree": m - k, "target_degree": m + k, "rank": rank,
            "b_source": src, "b_target": dst,
            "surjective": rank == dst, "bijective": rank == dst == src,
        })
    return LefschetzReport(verdicts, all(v["surjective"] for v in verdicts))


def evenness_skew_form(s: SymplecticData, k: int, coh: CohomologyBasis | None = None):
    """Skew form <a, c> = top(a ^ omega^(m-2k-1) ^ c) on H^(2k+1).

    Returns ``(matrix, nondegenerate)``.
    """
    coh = _coh(s, coh)
    deg = 2 * k + 1
    if not 0 <= deg <= s.m:
        raise ValueError(f"need 0 <= 2k+1 <= m = {s.m}")
    power = s.omega ** (s.m - deg)
    reps = coh.representatives(deg)
    mat = [[top_coefficient(wedge(wedge(a, power), c)) for c in reps] for a in reps]
    for i in range(len(mat)):
        for j in range(len(mat)):
            if mat[i][j] != -mat[j][i]:
                raise OracleMismatch("evenness pairing is not skew-symmetric")
    return mat, linalg.rank(mat) == len(mat)


def odd_degree_skew_forms(s: SymplecticData, coh: CohomologyBasis | None = None):
    """Non-degeneracy of the skew form on every H^(2k+1) with 2k+1 <= m."""
    return {2 * k + 1: evenness_skew_form(s, k, coh)[1] for k in range((s.m + 1) // 2)}


# flexibility


@dataclass
class FlexPoint:
    t: Fraction
    symplectic: bool
    h: list | None = None
    reason: str | None = None


@dataclass
class FlexReport:
    points: list
    verdict: str
    differing_degrees: list
    highlighted_degrees: list

    def to_dict(self):
        from .report import fraction_str

        return {
            "points": [
                {"t": fraction_str(p.t), "symplectic": p.symplectic, "h": p.h, "reason": p.reason}
                for p in self.points
            ],
            "verdict": self.verdict,
            "differing_degrees": self.differing_degrees,
            "highlighted_degrees": self.highlighted_degrees,
        }


def flex_scan(d: Differential, wa: Form, wb: Form, steps: int,
              coh: CohomologyBasis | None = None) -> FlexReport:
    """Walk the pencil (1-t) wa + t wb at t = i/steps and compare h-vectors."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    for w in (wa, wb):
        if d(w):
            raise NotClosedError(f"pencil endpoint {w} is not closed", dw=d(w))
    coh = coh if coh is not None else cohomology(d)
    points = []
    for i in range(steps + 1):
        t = Fraction(i, steps)
        w = (1 - t) * wa + t * wb
        try:
            s = check_symplectic(d, w)
        except (DegenerateFormError, NotClosedError, OddDimensionError) as exc:
            points.append(FlexPoint(t, False, reason=str(exc)))
            continue
        points.append(FlexPoint(t, True, harmonic_cohomology(s, coh).h))
    valid = [p.h for p in points if p.symplectic]
    differing = sorted({k for h in valid for g in valid for k in range(len(h)) if h[k] != g[k]})
    if len(valid) < 2:
        verdict = "inconclusive"
    elif differing:
        verdict = "flexible"
    else:
        verdict = "not-observed"
    n = d.n
    highlighted = [k for k in differing if k in (n - 1, n - 2)]
    return FlexReport(points, verdict, differing, highlighted)

"""Triple Massey products in the Chevalley-Eilenberg complex.

For classes a, b, c with ab = 0 = bc pick x, y with ``dx = a b`` and
``dy = b c``. The product is represented by ``x c + (-1)^(|a|+1) a y``, a
closed form of degree ``|a|+|b|+|c|-1``, and is well defined modulo the
indeterminacy ``a H^(|b|+|c|-1) + H^(|a|+|b|-1) c``. The product is trivial
when its class lies in that subspace.

Triviality of all triple products within a degree bound is necessary for
formality, not sufficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .complex import CohomologyBasis, CohomologyClass, cup
from .errors import NilcohomError
from .exterior import Form, wedge


@dataclass
class MasseyResult:
    classes: tuple
    defined: bool
    failing: str | None = None
    x: Form | None = None
    y: Form | None = None
    representative: Form | None = None
    representative_class: CohomologyClass | None = None
    indeterminacy: list = field(default_factory=list)
    trivial: bool | None = None
    labels: tuple | None = None

    @property
    def degree(self):
        return sum(c.degree for c in self.classes) - 1


def triple_massey(coh: CohomologyBasis, a: CohomologyClass, b: CohomologyClass,
                  c: CohomologyClass, x: Form | None = None, y: Form | None = None,
                  labels=None) -> MasseyResult:
    """Compute <a, b, c>. Primitives ``x``/``y`` may be supplied; they are checked."""
    ra, rb, rc = (coh.representative(z) for z in (a, b, c))
    ab = wedge(ra, rb)
    bc = wedge(rb, rc)
    res = MasseyResult((a, b, c), False, labels=labels)
    failing = []
    if not cup(coh, a, b).is_zero():
        failing.append("a*b")
    if not cup(coh, b, c).is_zero():
        failing.append("b*c")
    if failing:
        res.failing = " and ".join(failing) + " non-zero in cohomology"
        return res

    d = coh.d
    if x is None:
        x = coh.primitive(ab, a.degree + b.degree)
    elif d(x) != ab:
        raise NilcohomError("supplied x does not satisfy dx = a b")
    if y is None:
        y = coh.primitive(bc, b.degree + c.degree)
    elif d(y) != bc:
        raise NilcohomError("supplied y does not satisfy dy = b c")

    sign = -1 if a.degree % 2 == 0 else 1  # (-1)^(|a|+1)
    rep = wedge(x, rc) + sign * wedge(ra, y)
    deg = res.degree
    if d(rep):
        raise NilcohomError(f"Massey representative {rep} is not closed")
    res.defined = True
    res.x, res.y, res.representative = x, y, rep
    if deg > coh.n:
        res.representative_class = CohomologyClass(deg, ())
        res.trivial = True
        return res
    res.representative_class = coh.reduce(rep, deg)

    ind = []
    for h in coh.basis_classes(b.degree + c.degree - 1):
        ind.append(cup(coh, a, h))
    for h in coh.basis_classes(a.degree + b.degree - 1):
        ind.append(cup(coh, h, c))
    dim = coh.betti(deg)
    vecs = [list(v.coords) for v in ind if not v.is_zero()]
    basis = linalg.row_space(vecs, dim)
    res.indeterminacy = [CohomologyClass(deg, v) for v in basis]
    target = list(res.representative_class.coords)
    res.trivial = linalg.span_dim(basis + [target], dim) == len(basis)
    return res


def scan_triple_massey(coh: CohomologyBasis, max_total_degree: int, extra=None):
    """Every non-trivial <a, b, c> over basis classes (plus ``extra``).

    ``extra`` maps labels to additional classes, e.g. ``{"omega": [omega]}``.
    Triples are visited ordered by total degree, then by position in the pool.
    """
    pool = []
    for k in range(1, coh.n + 1):
        for i, cls in enumerate(coh.basis_classes(k)):
            pool.append((f"H{k}[{i}]", cls))
    for label, cls in (extra or {}).items():
        if cls.degree >= 1 and not cls.is_zero():
            pool.append((label, cls))
    pool.sort(key=lambda item: item[1].degree)

    triples = []
    for i, (la, a) in enumerate(pool):
        for j, (lb, b) in enumerate(pool):
            for k, (lc, c) in enumerate(pool):
                total = a.degree + b.degree + c.degree
                if total <= max_total_degree:
                    triples.append((total, i, j, k))
    triples.sort()

    cup_zero = {}

    def vanishes(i, j):
        if (i, j) not in cup_zero:
            cup_zero[(i, j)] = cup(coh, pool[i][1], pool[j][1]).is_zero()
        return cup_zero[(i, j)]

    found = []
    for _, i, j, k in triples:
        if not (vanishes(i, j) and vanishes(j, k)):
            continue
        res = triple_massey(coh, pool[i][1], pool[j][1], pool[k][1],
                            labels=(pool[i][0], pool[j][0], pool[k][0]))
        if not res.trivial:
            found.append(res)
    return found

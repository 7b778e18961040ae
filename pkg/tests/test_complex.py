from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import setup
from nilcohom import catalog, linalg
from nilcohom.complex import (CohomologyClass, build_differential, cohomology, cup,
                              generator_differentials, poincare_pairing)
from nilcohom.errors import JacobiError
from nilcohom.exterior import Form, wedge
from nilcohom.lie import StructureConstants, parse_algebra, validate
from oracles import naive_betti, naive_d, naive_d_generators

BETTI = {
    "torus2": [1, 2, 1],
    "torus4": [1, 4, 6, 4, 1],
    "torus6": [1, 6, 15, 20, 15, 6, 1],
    "kt": [1, 3, 4, 3, 1],
    "kt-x-kt": [1, 6, 17, 30, 36, 30, 17, 6, 1],
    "prop45": [1, 3, 5, 6, 5, 3, 1],
}


def gen(n, i):
    return Form.generator(n, i)


def test_prop45_differentials(prop45):
    _, d, _ = prop45
    a = lambda i: gen(6, i)  # noqa: E731
    images = generator_differentials(prop45[0].algebra)
    assert [images[i - 1] for i in (1, 2, 3)] == [Form.zero(6)] * 3
    assert images[3] == a(1) ^ a(2)
    assert images[4] == a(1) ^ a(4)
    assert images[5] == (a(1) ^ a(5)) + (a(2) ^ a(3)) + (a(2) ^ a(4))
    assert d(a(4) ^ a(3)) == a(1) ^ a(2) ^ a(3)


def test_jacobi_error_names_generator():
    sc = parse_algebra("dim 3; [1,2]=1*3; [2,3]=1*1; [1,3]=1*1;")
    with pytest.raises(JacobiError) as exc:
        build_differential(sc)
    assert exc.value.generator is not None


@pytest.mark.parametrize("name", catalog.BUILTIN)
def test_betti(name):
    _, d, coh = setup(name)
    assert coh.betti() == BETTI[name]
    assert coh.euler_characteristic() == 0


@pytest.mark.parametrize("name", ["torus4", "kt", "prop45"])
def test_betti_against_naive_oracle(name):
    entry, _, coh = setup(name)
    assert coh.betti() == naive_betti(entry.algebra.n, entry.algebra.brackets)


@pytest.mark.parametrize("name", catalog.BUILTIN)
def test_d_against_naive_oracle(name):
    entry, d, _ = setup(name)
    n = entry.algebra.n
    dg = naive_d_generators(n, entry.algebra.brackets)
    for k in range(n + 1):
        for mono in catalog_monomials(n, k):
            image = d(Form.monomial(n, mono))
            expect = naive_d({mono: 1}, dg)
            assert {m: c for m, c in _tuple_terms(image).items()} == expect


def catalog_monomials(n, k):
    from itertools import combinations
    return list(combinations(range(1, n + 1), k))


def _tuple_terms(f):
    from nilcohom.exterior import mask_indices
    return {mask_indices(m): c for m, c in f.items()}


def test_kt_cohomology(kt):
    entry, d, coh = kt
    names = dict(zip(entry.algebra.names, range(1, 5)))
    x, e1, e2, e3 = (gen(4, names[s]) for s in ("x", "e1", "e2", "e3"))
    assert coh.representatives(1) == [x, e1, e2]
    assert coh.betti(2) == 4
    assert coh.is_exact(e1 ^ e2)
    assert not coh.is_exact(e1 ^ e3)
    assert d(e3) == e1 ^ e2
    assert coh.primitive(e1 ^ e2) == e3


def test_cup_examples(kt):
    entry, d, coh = kt
    x, e1, e2 = coh.basis_classes(1)
    # [e1][e2] = 0 since e1 e2 = d e3
    assert cup(coh, e1, e2).is_zero()
    assert not cup(coh, x, e1).is_zero()
    assert cup(coh, x, e1) == -cup(coh, e1, x)
    assert cup(coh, e1, e1).is_zero()
    top = CohomologyClass(4, [1])
    assert cup(coh, top, x).coords == ()


@pytest.mark.parametrize("name", catalog.BUILTIN)
def test_poincare_duality(name):
    _, _, coh = setup(name)
    n = coh.n
    for k in range(n + 1):
        assert coh.betti(k) == coh.betti(n - k)
        mat = poincare_pairing(coh, k)
        assert linalg.rank(mat) == coh.betti(k)


@pytest.mark.parametrize("name", catalog.BUILTIN)
def test_reduce_representatives(name):
    _, d, coh = setup(name)
    for k in range(coh.n + 1):
        for i, rep in enumerate(coh.representatives(k)):
            cls = coh.reduce(rep, k)
            assert cls.coords == tuple(Fraction(int(j == i)) for j in range(coh.betti(k)))
            assert coh.representative(cls) == rep
        for v in coh.boundary_vectors(k):
            assert coh.reduce(d.form(v, k), k).is_zero()


def test_reduce_rejects_non_closed(kt):
    _, d, coh = kt
    with pytest.raises(Exception):
        coh.reduce(gen(4, 4), 1)


# random nilpotent algebras: brackets land strictly above both indices


@st.composite
def nilpotent_algebras(draw):
    n = draw(st.integers(2, 6))
    brackets = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n):
            ks = draw(st.lists(st.integers(j + 1, n), max_size=2, unique=True))
            targets = {k: draw(st.integers(-2, 2)) for k in sorted(ks)}
            targets = {k: Fraction(c) for k, c in targets.items() if c}
            if targets:
                brackets[(i, j)] = targets
    sc = StructureConstants(n, brackets)
    assume(validate(sc).jacobi_ok)
    return sc


@settings(max_examples=25, deadline=None)
@given(nilpotent_algebras())
def test_random_nilpotent(sc):
    d = build_differential(sc)
    for k in range(sc.n - 1):
        assert linalg.is_zero(linalg.matmul(d.matrix(k + 1), d.matrix(k)))
    coh = cohomology(d)
    b = coh.betti()
    assert coh.euler_characteristic() == 0
    assert b == b[::-1]
    assert b[1] >= 2
    assert validate(sc).nilpotent


@settings(max_examples=15, deadline=None)
@given(nilpotent_algebras(), st.data())
def test_cup_graded_commutative_associative(sc, data):
    coh = cohomology(build_differential(sc))
    pick = lambda: data.draw(st.sampled_from(  # noqa: E731
        [c for k in range(1, sc.n) for c in coh.basis_classes(k)]))
    a, b, c = pick(), pick(), pick()
    sign = -1 if a.degree * b.degree % 2 else 1
    ab = cup(coh, a, b)
    assert ab == cup(coh, b, a) * sign
    assert cup(coh, ab, c) == cup(coh, a, cup(coh, b, c))
    # cup agrees with wedging representatives
    if ab.degree <= sc.n:
        ra, rb = coh.representative(a), coh.representative(b)
        assert coh.reduce(wedge(ra, rb), ab.degree) == ab

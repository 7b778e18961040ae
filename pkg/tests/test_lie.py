from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcohom import catalog
from nilcohom.complex import build_differential
from nilcohom.errors import ParseError
from nilcohom.exterior import Form
from nilcohom.lie import (StructureConstants, abelian, direct_sum, parse_algebra,
                          parse_algebra_file, parse_form, serialize, validate)

PROP45 = "dim 6; [1,2]=-1*4; [1,4]=-1*5; [1,5]=-1*6; [2,3]=-1*6; [2,4]=-1*6;"


def test_parse_prop45():
    sc = parse_algebra(PROP45)
    assert sc.n == 6
    assert sc.bracket(1, 2) == {4: -1}
    assert sc.bracket(2, 1) == {4: 1}
    assert sc.bracket(2, 4) == {6: -1}
    assert sc.bracket(3, 4) == {}
    assert sc == catalog.load("prop45").algebra


def test_parse_abelian():
    sc = parse_algebra("dim 4;")
    assert sc.brackets == {} and sc.n == 4


def test_kt_differential():
    sc = parse_algebra("dim 4; [2,3]=-1*4;")
    d = build_differential(sc)
    a = lambda i: Form.generator(4, i)  # noqa: E731
    assert d(a(4)) == a(2) ^ a(3)
    assert all(not d(a(i)) for i in (1, 2, 3))


def test_reversed_bracket_folds():
    sc = parse_algebra("dim 3; [2,1] = 3/2*3;")
    assert sc.brackets == {(1, 2): {3: Fraction(-3, 2)}}


@pytest.mark.parametrize("text, fragment, line", [
    ("dim 3; [1,2]=1*3; [1,2]=1*3;", "duplicate bracket", 1),
    ("dim 3;\n[1,4]=1*3;", "out of range", 2),
    ("dim 3;\n[1,1]=1*3;", "must vanish", 2),
    ("dim 3;\n[1,2]=1*3", "expected ';'", 2),
    ("dim 3;\n[1,2]=1 3;", "expected '*'", 2),
    ("dom 3;", "expected 'dim'", 1),
    ("dim 3; [1,2]=1/0*3;", "zero denominator", 1),
    ("dim 2; $", "unexpected character", 1),
])
def test_parse_errors(text, fragment, line):
    with pytest.raises(ParseError) as exc:
        parse_algebra(text)
    assert fragment in str(exc.value)
    assert exc.value.line == line and exc.value.column >= 1


def test_error_column():
    with pytest.raises(ParseError) as exc:
        parse_algebra("dim 3;\n  [1,9]=1*3;")
    assert (exc.value.line, exc.value.column) == (2, 6)


def test_zero_self_bracket_allowed():
    assert parse_algebra("dim 2; [1,1]=0*2;").brackets == {}


def test_differential_block():
    sc = parse_algebra("dim 6; d[4] = a1^a2; d[5] = a1^a4; d[6] = a1^a5 + a2^a3 + a2^a4;")
    assert sc == parse_algebra(PROP45)
    # consistent duplicate information is fine, a conflict is not
    assert parse_algebra("dim 3; [1,2]=-1*3; d[3] = a1^a2;") == parse_algebra("dim 3; [1,2]=-1*3;")
    with pytest.raises(ParseError, match="disagrees"):
        parse_algebra("dim 3; [1,2]=1*3; d[3] = a1^a2;")


def test_parse_forms():
    sc = parse_algebra(PROP45)
    a = lambda i: Form.generator(6, i)  # noqa: E731
    w1 = parse_form("a1^a6 + a2^a5 - a3^a4", sc)
    assert w1 == (a(1) ^ a(6)) + (a(2) ^ a(5)) - (a(3) ^ a(4))
    w2 = parse_form("a1^a3 + a2^a6 - a4^a5", sc)
    assert w2 == (a(1) ^ a(3)) + (a(2) ^ a(6)) - (a(4) ^ a(5))
    assert parse_form("3/2*a2^a1", sc) == Fraction(-3, 2) * (a(1) ^ a(2))
    assert parse_form("-a1", sc) == -a(1)
    with pytest.raises(ParseError):
        parse_form("a1 + a1^a2", sc)
    assert parse_form("a1 + a1^a2", sc, homogeneous=False).degrees() == {1, 2}
    with pytest.raises(ParseError):
        parse_form("a1^a7", sc)
    with pytest.raises(ParseError):
        parse_form("a1", sc, degree=2)
    with pytest.raises(ParseError):
        parse_form("a1 ^", sc)


def test_named_generators_and_forms():
    f = catalog.load("kt")
    sc = f.algebra
    assert sc.names == ("x", "e1", "e2", "e3")
    w = parse_form("e1^e3 + e2^x", sc)
    assert w == f.default_form
    assert parse_form("2*omega", sc, named=f.forms) == 2 * w


def test_validate_prop45():
    r = validate(parse_algebra(PROP45))
    assert r.jacobi_ok and r.nilpotent and r.violations == []
    assert r.nilpotency_class == 4
    assert r.lower_central_series == [6, 3, 2, 1, 0]


def test_validate_abelian_class_one():
    r = validate(abelian(4))
    assert r.nilpotent and r.nilpotency_class == 1


def test_validate_non_nilpotent():
    r = validate(parse_algebra("dim 3; [1,2]=1*1;"))
    assert r.jacobi_ok and not r.nilpotent and r.nilpotency_class is None
    assert r.lower_central_series == [3, 1, 1]


def test_validate_jacobi_violation():
    # [X1,X2]=X3, [X2,X3]=X1, [X1,X3]=X1 breaks Jacobi
    r = validate(parse_algebra("dim 3; [1,2]=1*3; [2,3]=1*1; [1,3]=1*1;"))
    assert not r.jacobi_ok and r.violations == [(1, 2, 3)]


def test_direct_sum():
    assert direct_sum(abelian(2), abelian(2)) == abelian(4)
    kt = catalog.load("kt").algebra
    ktkt = direct_sum(kt, kt)
    assert ktkt.n == 8 and ktkt.brackets == catalog.load("kt-x-kt").algebra.brackets
    s = direct_sum(parse_algebra(PROP45), abelian(1))
    assert s.n == 7 and validate(s).nilpotent and validate(s).jacobi_ok


@pytest.mark.parametrize("name", catalog.BUILTIN)
def test_round_trip_catalog(name):
    entry = catalog.load(name)
    text = serialize(entry.algebra, entry.forms)
    again = parse_algebra_file(text)
    assert again.algebra == entry.algebra
    assert again.forms == entry.forms


@st.composite
def algebras(draw):
    n = draw(st.integers(1, 5))
    brackets = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            targets = {k: draw(st.fractions(-2, 2, max_denominator=2)) for k in
                       draw(st.lists(st.integers(1, n), max_size=2, unique=True))}
            targets = {k: c for k, c in sorted(targets.items()) if c}
            if targets:
                brackets[(i, j)] = targets
    return StructureConstants(n, brackets)


@settings(max_examples=25, deadline=None)
@given(algebras(), algebras())
def test_round_trip_and_direct_sum_jacobi(a, b):
    assert parse_algebra(serialize(a)) == a
    assert validate(direct_sum(a, b)).jacobi_ok == (validate(a).jacobi_ok and validate(b).jacobi_ok)


@settings(max_examples=30, deadline=None)
@given(algebras(), st.integers(1, 5), st.integers(1, 5))
def test_antisymmetry_structural(a, i, j):
    if i <= a.n and j <= a.n:
        assert a.bracket(j, i) == {k: -c for k, c in a.bracket(i, j).items()}

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadrance import (
    DivisionByZero,
    EvenCharacteristic,
    NotPrime,
    TooLarge,
    build_field,
    char_pair_counts,
    factor_prime_power,
    field_arith,
)
from quadrance.field import predicted_char_pair_counts


def _odd_prime_powers(limit):
    out = []
    for q in range(3, limit + 1, 2):
        try:
            p, e = factor_prime_power(q)
        except NotPrime:
            continue
        out.append(q)
    return out


def test_build_field_examples(field_for):
    f7 = field_for(7)
    assert f7.q == 7 and f7.residue_class == 3
    f9 = field_for(9)
    assert f9.q == 9 and f9.residue_class == 1
    with pytest.raises(EvenCharacteristic):
        build_field(2, 3)
    with pytest.raises(NotPrime):
        build_field(9, 1)
    with pytest.raises(TooLarge):
        build_field(101, 2)
    with pytest.raises(TooLarge):
        build_field(11, 1, max_q=7)
    with pytest.raises(ValueError):
        build_field(7, 0)


def test_modulus_is_first_irreducible(field_for):
    # Over F_3 the quadratics with smaller constant-first encodings all
    # have roots, so X^2 + 1 is chosen.
    assert field_for(9).spec.modulus == (1, 0, 1)
    assert field_for(25).spec.modulus == (2, 0, 1)


def test_prime_field_arithmetic(field_for):
    f7 = field_for(7)
    assert f7.mul(3, 5) == 1
    assert f7.inv(4) == 2
    assert field_arith(f7, "add", 5, 4) == 2
    assert field_arith(f7, "neg", 3) == 4
    with pytest.raises(DivisionByZero):
        f7.inv(0)
    with pytest.raises(DivisionByZero):
        field_arith(f7, "div", 3, 0)


def _schoolbook_mul(a, b, modulus, p):
    """Oracle: multiply coefficient vectors and reduce by the modulus."""
    e = len(modulus) - 1
    da = [(a // p**i) % p for i in range(e)]
    db = [(b // p**i) % p for i in range(e)]
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(2 * e - 2, e - 1, -1):
        c = prod[d]
        prod[d] = 0
        for t in range(e + 1):
            prod[d - e + t] = (prod[d - e + t] - c * modulus[t]) % p
    return sum(c * p**i for i, c in enumerate(prod[:e]))


def test_extension_field_mul_against_schoolbook(field_for):
    f9 = field_for(9)
    # x * x reduces to -1 = 2 under X^2 + 1.
    assert f9.mul(3, 3) == 2
    for a in range(9):
        for b in range(9):
            assert f9.mul(a, b) == _schoolbook_mul(a, b, f9.spec.modulus, 3)


def test_log_exp_tables_are_mutual_inverses(field_for):
    for q in (7, 9, 13, 25, 27):
        ctx = field_for(q)
        assert sorted(ctx.exp_table) == list(range(1, q))
        for k, x in enumerate(ctx.exp_table):
            assert ctx.log_table[x] == k


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25, 27, 49])
def test_field_axioms_exhaustive(field_for, q):
    ctx = field_for(q)
    els = range(q)
    for a in els:
        for b in els:
            assert ctx.add(a, b) == ctx.add(b, a)
            assert ctx.mul(a, b) == ctx.mul(b, a)
            assert ctx.add(a, ctx.neg(a)) == 0
            if b:
                assert ctx.mul(b, ctx.inv(b)) == 1
            assert ctx.sub(a, b) == ctx.add(a, ctx.neg(b))
    for a in els:
        for b in els:
            for c in els:
                assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
                assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
                assert ctx.mul(a, ctx.add(b, c)) == ctx.add(
                    ctx.mul(a, b), ctx.mul(a, c)
                )


def test_chi_examples_and_definition(field_for):
    f7 = field_for(7)
    squares = {f7.mul(x, x) for x in range(1, 7)}
    assert squares == {1, 2, 4}
    assert f7.chi(2) == 1
    assert f7.chi(3) == -1
    assert f7.chi(0) == 0


@pytest.mark.parametrize("q", [7, 9, 13, 25, 27, 49])
def test_chi_properties(field_for, q):
    ctx = field_for(q)
    exp = (q - 1) // 2
    for x in range(q):
        assert ctx.chi(x) == (0 if x == 0 else (1 if ctx.pow_el(x, exp) == 1 else -1))
    assert sum(ctx.chi(x) for x in range(q)) == 0
    for a in range(q):
        for b in range(q):
            assert ctx.chi(ctx.mul(a, b)) == ctx.chi(a) * ctx.chi(b)


def test_sqrt_examples(field_for):
    f7 = field_for(7)
    assert f7.sqrt(2) == (3, 4)
    assert f7.sqrt(3) is None
    assert f7.sqrt(0) == (0, 0)


@pytest.mark.parametrize("q", [7, 9, 13, 25])
def test_sqrt_roundtrip(field_for, q):
    ctx = field_for(q)
    for x in range(q):
        roots = ctx.sqrt(x)
        if ctx.chi(x) >= 0:
            assert roots is not None
            r, s = roots
            assert ctx.mul(r, r) == x and ctx.mul(s, s) == x
            assert r <= s
        else:
            assert roots is None


def test_char_pair_count_examples(field_for):
    assert char_pair_counts(field_for(7)).counts.as_tuple() == (1, 1, 2, 1)
    r5 = char_pair_counts(field_for(5))
    assert r5.counts.as_tuple() == (0, 1, 1, 1) and r5.match
    assert char_pair_counts(field_for(3)).counts.as_tuple() == (0, 0, 1, 0)


def test_char_pair_counts_match_closed_forms(field_for):
    for q in _odd_prime_powers(200):
        report = char_pair_counts(field_for(q))
        assert report.match, f"q={q}: {report.counts} != {report.predicted}"
        assert sum(report.counts.as_tuple()) == q - 2
        if q % 4 == 1:
            assert report.notes


@given(st.sampled_from([7, 9, 11, 13, 25]), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_from_int_embeds_prime_subfield(q, n):
    ctx = _cached(q)
    assert ctx.from_int(n) == n % ctx.p
    assert ctx.add(ctx.from_int(n), ctx.from_int(-n)) == 0


def _cached(q):
    from conftest import _field

    return _field(q)


def test_construction_is_deterministic():
    a = build_field(3, 2)
    b = build_field(3, 2)
    assert a.exp_table == b.exp_table
    assert a.g == b.g and a.spec == b.spec


def test_predicted_counts_shape(field_for):
    assert predicted_char_pair_counts(field_for(7)).as_tuple() == (1, 1, 2, 1)
    assert predicted_char_pair_counts(field_for(5)).as_tuple() == (0, 1, 1, 1)

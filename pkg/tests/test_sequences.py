from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from diagonalis.exactalg import UniPoly, binomial
from diagonalis.family import named_instance
from diagonalis.sequences import (PRecurrence, SequenceWindow, binomial_oracle,
                                  builtin_recurrence,
                                  characteristic_polynomial, extract_diagonal,
                                  recurrence_check, recurrence_extend,
                                  recurrence_guess, recurrence_seed,
                                  sequence_sign_scan)
from diagonalis.seriesbox import expand_reciprocal


def test_franel_oracle_values():
    assert [binomial_oracle("franel", n) for n in range(4)] == [1, 2, 10, 56]


def test_kzd_oracle_values():
    assert [binomial_oracle("kzd", n) for n in range(5)] == [1, 4, 40, 544, 8536]


def test_szego3_oracle_values():
    assert [binomial_oracle("szego3", n) for n in range(6)] == \
        [1, 12, 198, 3720, 75690, 1626912]


def test_koornwinder_oracle_values():
    # independent double-binomial sum at n = 2: 1*36 + 4*4 + 36*1
    assert binomial_oracle("koornwinder", 2) == 36 + 16 + 36


def test_twovar_oracle_edges():
    assert binomial_oracle("2var", 0, a=F(1, 2)) == 1
    assert binomial_oracle("2var", 1, a=1) == 1   # 2(n+... ) at a=1: 2-1 = 1
    assert binomial_oracle("2var", 2, a=0) == binomial(4, 2)


def test_oracle_validation():
    with pytest.raises(ValueError):
        binomial_oracle("franel", -1)
    with pytest.raises(ValueError):
        binomial_oracle("2var", 3)
    with pytest.raises(ValueError):
        binomial_oracle("nope", 0)


def _oracle_window(name, upto, **kw):
    return SequenceWindow(0, tuple(binomial_oracle(name, n, **kw)
                                   for n in range(upto + 1)))


def test_builtin_recurrences_verify_on_oracles():
    assert recurrence_check(builtin_recurrence("franel"),
                            _oracle_window("franel", 25)) is None
    assert recurrence_check(builtin_recurrence("szego3"),
                            _oracle_window("szego3", 25)) is None
    assert recurrence_check(builtin_recurrence("kzd"),
                            _oracle_window("kzd", 25)) is None


def test_recurrence_check_flags_tampered_term():
    vals = [binomial_oracle("franel", n) for n in range(10)]
    vals[7] += 1
    bad = recurrence_check(builtin_recurrence("franel"),
                           SequenceWindow(0, tuple(vals)))
    assert bad is not None and bad[0] <= 7


def test_recurrence_check_window_too_short():
    with pytest.raises(ValueError, match="window too short"):
        recurrence_check(builtin_recurrence("franel"), SequenceWindow(0, (1, 2)))


def test_extend_franel():
    ext = recurrence_extend(builtin_recurrence("franel"),
                            SequenceWindow(0, (1, 2)), 5)
    assert ext.values == (1, 2, 10, 56, 346, 2252)


def test_seed_matches_extend_for_franel():
    rec = builtin_recurrence("franel")
    assert recurrence_seed(rec, 8).values == \
        recurrence_extend(rec, SequenceWindow(0, (1, 2)), 8).values


def test_twovar_recurrence_matches_oracle():
    for a in (F(1, 2), F(3, 2), F(-3)):
        rec = builtin_recurrence("2var", a=a)
        win = _oracle_window("2var", 20, a=a)
        assert recurrence_check(rec, win) is None


def test_guess_recovers_franel():
    seq = _oracle_window("franel", 29)
    rec = recurrence_guess(seq, 2, 2)
    assert rec == builtin_recurrence("franel").normalized()


def test_guess_recovers_kzd():
    seq = _oracle_window("kzd", 29)
    rec = recurrence_guess(seq, 2, 3)
    assert rec == builtin_recurrence("kzd").normalized()


def test_guess_needs_enough_terms():
    with pytest.raises(ValueError, match="need >= "):
        recurrence_guess(SequenceWindow(0, tuple(range(1, 9))), 3, 3)


def test_guess_prefers_minimal_order():
    # geometric sequence: order 1 suffices even when order 2 is allowed
    seq = SequenceWindow(0, tuple(F(3) ** n for n in range(20)))
    rec = recurrence_guess(seq, 2, 1)
    assert rec.order == 1


def test_guess_labels_nothing_for_random_junk():
    seq = SequenceWindow(0, (1, 1, 2, 3, 5, 8, 14, 21, 34, 55, 89, 144,
                             233, 378, 610, 987, 1597, 2584))
    assert recurrence_guess(seq, 1, 1) is None


def test_characteristic_polynomial_2var():
    # x^2 - 2(2-a)x + a^2
    for a in (F(1, 2), F(2), F(-3)):
        cp = characteristic_polynomial(builtin_recurrence("2var", a=a))
        want = UniPoly([a * a, -2 * (2 - a), 1]).primitive()
        assert cp == want


def test_characteristic_polynomial_2var_complex_for_a_above_one():
    for a in (F(3, 2), F(2), F(5)):
        cp = characteristic_polynomial(builtin_recurrence("2var", a=a))
        disc = cp[1] ** 2 - 4 * cp[2] * cp[0]
        assert disc < 0


def test_characteristic_polynomial_kzd():
    # manual leading-term oracle: top n-degree is 3 with coefficients
    # 16, -24, 1 from 16(n+1)^3, -4(2n+3)(3n^2+9n+7), (n+2)^3
    rec = builtin_recurrence("kzd")
    assert rec.degree == 3
    lead = [p[3] for p in rec.coeffs]
    assert lead == [16, -24, 1]
    assert characteristic_polynomial(rec) == UniPoly([16, -24, 1])


def test_characteristic_polynomial_franel():
    assert characteristic_polynomial(builtin_recurrence("franel")) == \
        UniPoly([-8, -7, 1])  # (x-8)(x+1)


def test_normalized_is_integer_primitive():
    rec = PRecurrence((UniPoly([F(2, 3), F(4, 3)]), UniPoly([F(-2)])))
    norm = rec.normalized()
    assert norm.coeffs == (UniPoly([-1, -2]), UniPoly([3]))


def test_sign_scan():
    assert sequence_sign_scan(SequenceWindow(0, (1, 2, 3))) is None
    assert sequence_sign_scan(SequenceWindow(0, (1, 0, -2))) == (1, 0)
    assert sequence_sign_scan(SequenceWindow(0, (1, 0, -2)), strict=False) == (2, -2)


def test_sign_scan_on_mixed_two_var_diagonal():
    # 1/(1 - x - y + 2xy): diagonal changes sign
    fam = named_instance("h2var", a=2)
    seq = extract_diagonal(expand_reciprocal(fam.denominator(), 12))
    hit = sequence_sign_scan(seq)
    assert hit is not None


def test_diagonal_requires_rational_box():
    fam = named_instance("StraubLambda")
    box = expand_reciprocal(fam.denominator(), 2)
    with pytest.raises(ValueError):
        extract_diagonal(box)


def test_recurrence_json_roundtrip():
    rec = builtin_recurrence("kzd")
    assert PRecurrence.from_json(rec.to_json()) == rec


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=-4, max_value=4, max_denominator=6).filter(bool))
def test_guess_then_extend_reproduces_data(u0):
    # order-1 data with polynomial coefficient: u_{n+1} = (n+2) u_n
    vals = [u0]
    for n in range(15):
        vals.append((n + 2) * vals[-1])
    seq = SequenceWindow(0, tuple(vals))
    rec = recurrence_guess(seq, 1, 1)
    assert rec is not None
    ext = recurrence_extend(rec, SequenceWindow(0, tuple(vals[:2])), len(vals) - 1)
    assert ext.values == seq.values

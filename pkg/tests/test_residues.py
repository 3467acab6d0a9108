import pytest

from endsin1.residues import (
    DigitClass,
    InputError,
    applicable_methods,
    make_witness,
    offset_params,
    profile,
    trivial_witness,
)

DC37, DC99, DC11 = DigitClass.THREE_SEVEN, DigitClass.NINE_NINE, DigitClass.ONE_ONE


def test_profile_900071():
    prof = profile(900071)
    assert prof.last_digit == 1
    assert prof.mod3 == 2
    assert prof.p_plus_10_mod9 == 0  # 900081 is a multiple of 9
    # alternating digit sum 1-7+0-0+0-9 = -15 = 7 (mod 11)
    assert prof.mod11 == 7
    assert prof.trivial_factor is None


def test_profile_small():
    prof = profile(851)
    assert (prof.mod3, prof.mod11) == (2, 4)
    assert profile(341).trivial_factor == 11
    assert profile(81).trivial_factor == 3


@pytest.mark.parametrize("bad", [20, 1, 11, 900073, 100])
def test_profile_rejects(bad):
    with pytest.raises(InputError):
        profile(bad)


def test_profile_rejects_non_int():
    with pytest.raises(InputError):
        profile("900071")


def test_offset_params_examples():
    assert offset_params(900071, DC99).D == 10000
    prm = offset_params(900071, DC37)
    assert (prm.C, prm.D, prm.L) == (0, 30002, 1)
    prm = offset_params(851, DC37)
    assert (prm.C, prm.D) == (0, 28)
    assert 3 * (10 * 28 + 7) == 851 + 10
    prm = offset_params(1271, DC11)
    assert (prm.L, prm.C, prm.D) == (6, 1, 12)


def test_offset_params_other_residue_branch():
    # 361 = 1 (mod 3): shift by 20
    prm = offset_params(361, DC37)
    assert (prm.L, prm.D) == (2, 12)
    assert prm.check(361)


def test_offset_params_absent():
    assert offset_params(361, DC99) is None  # 371 is not a multiple of 9
    assert offset_params(341, DC11) is None
    assert offset_params(81, DC37) is None


def test_offset_params_remultiply_and_uniqueness():
    for p in range(21, 30001, 10):
        for dc in DigitClass:
            prm = offset_params(p, dc)
            if prm is None:
                continue
            assert (10 * prm.C + dc.d1) * (10 * prm.D + dc.d2) == p + 10 * prm.L
            assert (p + 10 * prm.L) % prm.modulus == 0
        if p % 11:
            Ls = [L for L in range(1, 11) if (p + 10 * L) % 11 == 0]
            assert Ls == [offset_params(p, DC11).L]


def test_applicable_methods():
    kinds = applicable_methods(profile(900071))
    assert (DC37, "lambda") in kinds
    assert (DC99, "lambda") in kinds
    assert (DC11, "lambda") in kinds
    assert (DC99, "tau") in kinds
    assert {dc for dc, k in kinds if k == "fallback"} == set(DigitClass)
    assert applicable_methods(profile(341)) == [(None, "trivial")]
    assert (DC99, "tau") not in applicable_methods(profile(81))


def test_trivial_witness():
    w = trivial_witness(341)
    assert w.factors == (11, 31)
    w = trivial_witness(900021)
    assert w.factors == (3, 300007) and w.digit_class is DC37
    assert trivial_witness(900071) is None


def test_make_witness_is_sound():
    w = make_witness(900071, 257, 34, DC99, "x")
    assert (w.A, w.B) == (34, 257)
    with pytest.raises(AssertionError):
        make_witness(900071, 34, 258, DC99, "x")


def test_digit_class_labels():
    assert DigitClass.from_label("37") is DC37
    assert str(DC99) == "(9,9)"
    with pytest.raises(ValueError):
        DigitClass.from_label("13")

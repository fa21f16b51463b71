from fractions import Fraction

import pytest

from largeabel.kulkarni import (
    TwoParameterFamily,
    brute_force_large_signatures,
    check_completeness,
    contains,
    enumerate_large_signatures,
    exceptional_blocks,
    expand_family,
    verify_exclusion_bounds,
)
from largeabel.signatures import Signature, SignatureFamily, reduced_euler


@pytest.fixture(scope="module")
def found():
    return enumerate_large_signatures()


def fam_by_fixed(found, fixed):
    return next(f for f in found.families if f.fixed_indices == fixed)


def test_family_records(found):
    assert len(found.families) == 7
    two = [f for f in found.families if isinstance(f, TwoParameterFamily)]
    assert len(two) == 1 and two[0].fixed_indices == (2,) and two[0].first_lower == 3
    assert two[0].thresholds() == ((3, 7), (4, 5))
    lowers = {f.fixed_indices: f.lower for f in found.families if isinstance(f, SignatureFamily)}
    assert lowers == {(2, 2, 2): 3, (3, 3): 4, (3, 4): 4, (3, 5): 5, (3, 6): 6, (4, 4): 4}


def test_exceptional(found):
    assert Signature.of(3, 7, 41) in found.exceptional
    assert Signature.of(3, 7, 42) not in found.exceptional
    assert len(found.exceptional) == 102
    counts = [len(v) for v in exceptional_blocks(found.exceptional).values()]
    assert counts == [3, 35, 16, 9, 5, 3, 15, 6, 3, 5, 2]


def test_every_output_is_large(found):
    for sig in found.exceptional:
        assert 0 < reduced_euler(sig) < Fraction(1, 2)
    for fam in found.families:
        for sig in expand_family(fam, 60):
            assert 0 < reduced_euler(sig) < Fraction(1, 2)


def test_expand_family(found):
    assert expand_family(fam_by_fixed(found, (2, 2, 2)), 5) == [Signature.of(2, 2, 2, n) for n in (3, 4, 5)]
    assert expand_family(fam_by_fixed(found, (4, 4)), 6) == [Signature.of(4, 4, n) for n in (4, 5, 6)]
    assert expand_family(fam_by_fixed(found, (3, 3)), 4) == [Signature.of(3, 3, 4)]
    assert expand_family(fam_by_fixed(found, (3, 3)), 3) == []
    assert Signature.of(2, 3, 6) not in expand_family(fam_by_fixed(found, (2,)), 10)
    assert contains(found, Signature.of(2, 3, 7)) and not contains(found, Signature.of(2, 4, 4))


def test_exclusion_bounds():
    report = verify_exclusion_bounds()
    assert report.ok
    mus = {c.description: c.extremal_mu for c in report.cases}
    assert mus["quotient genus 0 with s >= 5"] == Fraction(1, 2)
    assert mus["quotient genus >= 1 with s >= 1"] == Fraction(1, 2)
    assert mus["quotient genus >= 2"] == 2
    assert report.scan_checked > 1000


def test_brute_force_small_bound():
    # direct Fraction scan as an oracle for the vectorized integer version
    from itertools import combinations_with_replacement

    expected = {
        t
        for s in (3, 4)
        for t in combinations_with_replacement(range(2, 31), s)
        if 0 < reduced_euler(Signature(0, t)) < Fraction(1, 2)
    }
    assert brute_force_large_signatures(30) == expected


def test_completeness_small():
    assert check_completeness(50).ok

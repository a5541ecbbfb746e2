import math
from fractions import Fraction as F

import pytest

from src.core.sponge import Ordering, make_system
from src.errors import BorderlineOrdering, PreconditionViolated
from src.ordering.certificates import CertificateKind, OrderingCertificate, chi_high_precision, strict_chain_holds
from src.ordering.lyapunov import b_interval_two_maps, b_membership, lyapunov_profile, two_map_condition

IDENTITY = Ordering((1, 2, 3, 4))
SWAPPED = Ordering((2, 1, 4, 3))


def test_profile_ordering(gap_carpet):
    profile = lyapunov_profile(gap_carpet, (F(1, 4), F(3, 4)))
    assert profile.chi[0] == pytest.approx(0.25 * math.log(2) + 0.75 * math.log(5))
    assert profile.ordering() == Ordering((2, 1))
    assert lyapunov_profile(gap_carpet, (F(1, 2), F(1, 2))).ordering() is None


def test_chi_high_precision_matches_floats(two_map_4d):
    p = (F(2, 5), F(3, 5))
    exact = chi_high_precision(two_map_4d, p, 50)
    approx = lyapunov_profile(two_map_4d, p).chi
    for a, b in zip(exact, approx):
        assert float(a) == pytest.approx(b, rel=1e-12)


def test_membership_blocked_by_domination(bm_2x4):
    assert b_membership(bm_2x4, Ordering((2, 1))) is None
    certificate = b_membership(bm_2x4, Ordering((1, 2)))
    assert certificate.kind is CertificateKind.CYLINDER_STRICT
    assert certificate.verify(bm_2x4)


def test_both_orderings_for_swapped_ratios(gap_carpet):
    for sigma in Ordering.all(2):
        certificate = b_membership(gap_carpet, sigma)
        assert certificate is not None
        assert sum(certificate.weights) == 1
        assert all(isinstance(w, F) and w > 0 for w in certificate.weights)
        assert strict_chain_holds(gap_carpet, sigma, certificate.weights)
        assert certificate.slack > 0


def test_four_coordinate_membership(two_map_4d):
    assert b_membership(two_map_4d, IDENTITY) is not None
    assert b_membership(two_map_4d, SWAPPED) is None
    assert b_membership(two_map_4d, Ordering((1, 2, 4, 3))) is not None
    assert b_membership(two_map_4d, Ordering((2, 1, 3, 4))) is not None
    assert b_membership(two_map_4d, Ordering((3, 1, 2, 4))) is None


def test_explicit_certificate(two_map_4d):
    certificate = OrderingCertificate(IDENTITY, CertificateKind.CYLINDER_STRICT, weights=(F(2, 5), F(3, 5)))
    assert certificate.verify(two_map_4d)
    assert not strict_chain_holds(two_map_4d, IDENTITY, (F(3, 5), F(2, 5)))
    assert not strict_chain_holds(two_map_4d, IDENTITY, (F(1, 2), F(1, 2)))


def test_two_map_interval(two_map_4d):
    lo, hi = b_interval_two_maps(two_map_4d, IDENTITY)
    assert lo == pytest.approx(1 / 3)
    assert hi == pytest.approx(1 / 2)
    assert b_interval_two_maps(two_map_4d, SWAPPED) is None


def test_two_map_interval_needs_two_maps(bm_2x4):
    with pytest.raises(PreconditionViolated):
        b_interval_two_maps(bm_2x4, Ordering((1, 2)))


def test_log_ratio_condition(two_map_4d):
    condition = two_map_condition(two_map_4d)
    assert condition.lhs == pytest.approx(0.5)
    assert condition.rhs == pytest.approx(1.0)
    assert condition.as_pair() == (True, False)
    assert condition.lp_agrees is True


def test_log_ratio_condition_swapped_side():
    # log 4 / log 2 = 2 > log 2 / log 2: now (2,1,4,3) is the member
    S = make_system(
        [(F(1, 8), F(1, 2), F(1, 10), F(1, 20)), (F(3, 5), F(3, 10), F(1, 10), F(1, 5))],
        [(0, 0, 0, 0), (F(2, 5), F(7, 10), F(9, 10), F(4, 5))],
    )
    condition = two_map_condition(S)
    assert condition.as_pair() == (False, True)
    assert condition.lp_agrees is True


def test_log_ratio_condition_preconditions(bm_2x4, gap_carpet):
    with pytest.raises(PreconditionViolated):
        two_map_condition(bm_2x4)
    S = make_system(
        [(F(2, 5), F(1, 5), F(2, 25), F(1, 50)), (F(3, 5), F(3, 10), F(1, 10), F(1, 5))],
        [(0, 0, 0, 0), (F(2, 5), F(7, 10), F(9, 10), F(4, 5))],
    )
    with pytest.raises(PreconditionViolated):
        two_map_condition(S)


def test_wrong_length_ordering(bm_2x4):
    with pytest.raises(PreconditionViolated):
        b_membership(bm_2x4, Ordering((1, 2, 3)))


def test_log_ratio_condition_equal_sides(two_map_balanced):
    with pytest.raises(BorderlineOrdering) as info:
        two_map_condition(two_map_balanced, cross_check=False)
    assert info.value.sigma == IDENTITY
    assert info.value.slack == pytest.approx(0.0)

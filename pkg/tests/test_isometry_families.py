import pytest

from chainisom import (
    CountTable,
    DomainError,
    Family,
    LimitExceeded,
    PartialInjection,
    count_by_fix,
    count_by_height,
    empirical_count_table,
    enumerate_fast,
    enumerate_oracle,
    inverse,
    is_member,
    make_partial_injection,
    order,
)
from chainisom.chain_maps import sort_key
from helpers import elements

BOTH = (Family.DP, Family.ODP)


class TestMembership:
    def test_endpoint_swap_is_dp_only(self):
        a = make_partial_injection(5, [(1, 5), (5, 1)])
        assert is_member(a, Family.DP)
        assert not is_member(a, Family.ODP)

    def test_empty_in_both(self):
        assert is_member(PartialInjection(4), Family.DP)
        assert is_member(PartialInjection(4), Family.ODP)

    def test_distance_violation_in_neither(self):
        a = make_partial_injection(3, [(1, 1), (2, 3)])
        assert not is_member(a, Family.DP)
        assert not is_member(a, Family.ODP)


class TestFastEnumeration:
    def test_dp_on_two_points(self):
        got = list(enumerate_fast(2, Family.DP))
        want = [
            PartialInjection(2),
            make_partial_injection(2, [(1, 1)]),
            make_partial_injection(2, [(1, 2)]),
            make_partial_injection(2, [(2, 1)]),
            make_partial_injection(2, [(2, 2)]),
            make_partial_injection(2, [(1, 1), (2, 2)]),
            make_partial_injection(2, [(1, 2), (2, 1)]),
        ]
        assert got == want

    def test_odp_on_two_points(self):
        assert len(list(enumerate_fast(2, Family.ODP))) == 6

    def test_height_filter(self):
        assert len(list(enumerate_fast(3, Family.ODP, height=2))) == 5
        assert list(enumerate_fast(3, Family.ODP, height=0)) == [PartialInjection(3)]
        assert list(enumerate_fast(3, Family.ODP, height=9)) == []

    def test_chain_of_size_zero(self):
        assert list(enumerate_fast(0, Family.ODP)) == [PartialInjection(0)]

    def test_canonical_order(self):
        for fam in BOTH:
            els = list(enumerate_fast(6, fam))
            keys = [sort_key(a) for a in els]
            assert keys == sorted(keys)

    def test_no_duplicates_up_to_12(self):
        for fam in BOTH:
            els = list(enumerate_fast(12, fam))
            assert len(els) == len(set(els))

    def test_members_only_and_odp_inside_dp(self):
        for n in range(11):
            dp = set(enumerate_fast(n, Family.DP))
            for a in dp:
                assert is_member(a, Family.DP)
            odp = set(enumerate_fast(n, Family.ODP))
            for a in odp:
                assert is_member(a, Family.ODP)
            assert odp <= dp

    def test_closure_under_inverse(self):
        for n in range(8):
            for fam in BOTH:
                members = set(elements(n, fam))
                for a in members:
                    assert inverse(a) in members

    def test_closure_under_composition(self):
        from chainisom import compose

        for n in range(7):
            for fam in BOTH:
                els = elements(n, fam)
                for a in els:
                    for b in els:
                        assert is_member(compose(a, b), fam)

    def test_max_point_in_domain_and_image_is_fixed(self):
        # order-preserving only; the dp endpoint swap is the counterexample
        for n in range(1, 8):
            for a in elements(n, Family.ODP):
                if n in a.domain and n in a.image:
                    assert a.mapping[n] == n
        swap = make_partial_injection(3, [(1, 3), (3, 1)])
        assert is_member(swap, Family.DP) and swap.mapping[3] != 3

    def test_cap_enforced(self):
        with pytest.raises(LimitExceeded):
            enumerate_fast(21, Family.DP)
        with pytest.raises(LimitExceeded):
            enumerate_fast(5, Family.DP, cap=3)
        with pytest.raises(DomainError):
            enumerate_fast(-1, Family.DP)
        # override allows going past the default guard
        assert next(iter(enumerate_fast(4, Family.DP, cap=4))) == PartialInjection(4)


class TestOracleEnumeration:
    def test_counts(self):
        assert sum(1 for _ in enumerate_oracle(3, Family.DP)) == 22
        assert list(enumerate_oracle(0, Family.DP)) == [PartialInjection(0)]
        assert sum(1 for _ in enumerate_oracle(5, Family.ODP)) == 84

    def test_agrees_with_fast_path_up_to_7(self):
        for n in range(8):
            for fam in BOTH:
                assert list(enumerate_fast(n, fam)) == list(enumerate_oracle(n, fam))

    def test_hard_cap(self):
        with pytest.raises(LimitExceeded):
            enumerate_oracle(9, Family.DP)
        with pytest.raises(DomainError):
            enumerate_oracle(-1, Family.DP)


class TestCounting:
    def test_height_row(self):
        assert count_by_height(4, Family.ODP) == [1, 16, 14, 6, 1]

    def test_fix_row(self):
        assert count_by_fix(7, Family.DP) == [460, 106, 21, 35, 35, 21, 7, 1]

    def test_order(self):
        assert order(6, Family.DP) == 319

    def test_histograms_sum_to_order(self):
        for n in range(13):
            for fam in BOTH:
                total = order(n, fam)
                assert sum(count_by_height(n, fam)) == total
                assert sum(count_by_fix(n, fam)) == total


class TestCountTable:
    def test_empirical_table_matches_row_counters(self):
        tbl = empirical_count_table("height", Family.ODP, 5)
        assert tbl.rows[4] == (1, 16, 14, 6, 1)
        assert tbl.row_sums == (1, 2, 6, 16, 38, 84)
        fix = empirical_count_table("fix", Family.DP, 4)
        assert fix.rows[4] == (38, 10, 6, 4, 1)

    def test_validation(self):
        with pytest.raises(DomainError):
            CountTable("height", Family.DP, ((1,), (1, 1)), (1, 3))
        with pytest.raises(DomainError):
            CountTable("height", Family.DP, ((1,),), (1, 2))
        with pytest.raises(DomainError):
            CountTable("weight", Family.DP, ((1,),), (1,))
        with pytest.raises(DomainError):
            empirical_count_table("weight", Family.DP, 3)

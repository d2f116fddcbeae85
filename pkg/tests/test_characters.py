from math import factorial

import pytest
from hypothesis import given, strategies as st

from sqkron.characters import (
    CharCache,
    border_strip_removals,
    centralizer_order,
    chi,
    class_size,
    count_rim_hook_tableaux,
    dimension,
)
from sqkron.partitions import Partition, PartitionError, enumerate_partitions, odd_staircase, square


def shapes(n_lo, n_hi):
    return st.integers(n_lo, n_hi).flatmap(lambda n: st.sampled_from(list(enumerate_partitions(n))))


def test_border_strips():
    got = [(r.shape, r.height) for r in border_strip_removals(Partition((2, 2)), 2)]
    assert sorted(got) == sorted([((2,), 0), ((1, 1), 1)])
    got = [(r.shape, r.height) for r in border_strip_removals(Partition((5, 4)), 5)]
    assert got == [((3, 1), 1)]
    got = [(r.shape, r.height) for r in border_strip_removals(Partition((7,)), 3)]
    assert got == [((4,), 0)]


class TestChi:
    def test_examples(self):
        assert chi((2, 1), (3,)) == -1
        assert chi((5, 4), (5, 3, 1)) == 0

    @given(shapes(1, 9).flatmap(lambda a: st.tuples(st.just(a), st.sampled_from(list(enumerate_partitions(sum(a)))))))
    def test_trivial_and_sign(self, pair):
        alpha, _ = pair
        n = sum(alpha)
        assert chi((n,), alpha) == 1
        assert chi((1,) * n, alpha) == (-1) ** (n - len(alpha))

    @given(shapes(1, 10), st.data())
    def test_removal_order_does_not_matter(self, lam, data):
        alpha = data.draw(st.sampled_from(list(enumerate_partitions(sum(lam)))))
        assert chi(lam, alpha) == chi(lam, alpha, order="smallest")

    def test_size_mismatch(self):
        with pytest.raises(PartitionError):
            chi((2, 1), (2,))

    def test_cache_is_shared(self):
        cache = CharCache()
        first = [chi(lam, (3, 2, 1), cache) for lam in enumerate_partitions(6)]
        misses = cache.misses
        again = [chi(lam, (3, 2, 1), cache) for lam in enumerate_partitions(6)]
        assert first == again
        assert cache.misses == misses


class TestCounts:
    def test_dimensions(self):
        assert dimension((2, 1)) == 2
        assert dimension((7,)) == 1
        assert dimension(square(3)) == 42

    def test_centralizers(self):
        assert centralizer_order((1, 1, 1)) == 6
        assert centralizer_order((3,)) == 3
        assert centralizer_order((2, 2, 1)) == 8
        assert sum(class_size(a) for a in enumerate_partitions(7)) == factorial(7)

    def test_rim_hook_tableaux(self):
        assert count_rim_hook_tableaux((5, 4), (5, 3, 1)) == (0, 0)
        assert count_rim_hook_tableaux((6,), (6,)) == (1, 1)
        assert count_rim_hook_tableaux((5, 5, 5, 1), odd_staircase(4)) == (0, 0)

    @given(shapes(1, 8), st.data())
    def test_signed_count_is_chi(self, lam, data):
        alpha = data.draw(st.sampled_from(list(enumerate_partitions(sum(lam)))))
        signed, unsigned = count_rim_hook_tableaux(lam, alpha)
        assert signed == chi(lam, alpha)
        assert abs(signed) <= unsigned

    @pytest.mark.parametrize("n", range(1, 8))
    def test_row_orthogonality(self, n):
        parts = list(enumerate_partitions(n))
        for lam in parts:
            for mu in parts:
                total = sum(class_size(a) * chi(lam, a) * chi(mu, a) for a in parts)
                assert total == (factorial(n) if lam == mu else 0)

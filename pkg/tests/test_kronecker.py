import pytest
from hypothesis import given, settings, strategies as st

from sqkron import engine
from sqkron.errors import BudgetExceeded, DomainError
from sqkron.kronecker import (
    KroneckerTable,
    conjectured_zero_set,
    formula_value,
    g_value,
    hook_zero,
    kron,
    kronecker_table,
    missing_partitions,
    mu2_positive,
    mu3_positive,
    near_hook_character,
    near_two_row_formula,
    near_two_row_zero,
    nk2,
    nk3,
    saxl_criterion,
    square_near_hook_positive,
    thm_nn,
    two_row_formula,
    two_row_positive,
)
from sqkron.partitions import Partition, PartitionError, conjugate, enumerate_partitions, square


class TestOracle:
    def test_examples(self):
        assert kron((5,), (5,), (5,)) == 1
        assert kron((2, 2), (2, 2), (2, 1, 1)) == 0
        assert kron(square(2), square(2), (2, 2)) == 1
        assert kron(square(5), square(5), (20, 4, 1)) == 1

    def test_size_mismatch(self):
        with pytest.raises(PartitionError):
            kron((2, 1), (3,), (2,))

    @given(st.integers(1, 7), st.data())
    @settings(max_examples=40, deadline=None)
    def test_symmetries(self, n, data):
        parts = list(enumerate_partitions(n))
        a, b, c = (data.draw(st.sampled_from(parts)) for _ in range(3))
        g = kron(a, b, c)
        assert g == kron(b, a, c) == kron(c, b, a)
        assert g == kron(conjugate(a), conjugate(b), c)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_row_matches_direct_sum(self, n):
        parts = list(enumerate_partitions(n))
        lam, mu = parts[len(parts) // 3], parts[-2] if n > 1 else parts[0]
        table = kronecker_table(lam, mu)
        assert table.is_complete()
        assert table.dimension_identity_holds()
        for nu in parts:
            assert table.value(nu) == kron(lam, mu, nu)

    def test_jobs_do_not_change_rows(self):
        one = engine.kronecker_row(square(4), square(4), jobs=1)
        two = engine.kronecker_row(square(4), square(4), jobs=2)
        assert one == two

    def test_table_json_round_trip(self):
        table = kronecker_table((3, 2), (2, 2, 1))
        back = KroneckerTable.from_json(table.to_json())
        assert back == table
        assert table.to_tsv().splitlines()[0] == "nu\tg\tby"


class TestMissing:
    def test_small(self):
        assert missing_partitions(2) == [(3, 1)]

    def test_guard(self):
        with pytest.raises(BudgetExceeded, match="--budget-override"):
            missing_partitions(7)
        with pytest.raises(DomainError):
            missing_partitions(1)


class TestFormulas:
    def test_two_row(self):
        assert two_row_formula(4, 4, 3) == 1
        assert two_row_formula(3, 5, 0) == 1
        with pytest.raises(DomainError):
            two_row_formula(3, 3, 5)

    @pytest.mark.parametrize("m, k, value", [(5, 5, 1), (5, 4, 0), (7, 7, 3)])
    def test_near_two_row(self, m, k, value):
        assert near_two_row_formula(m, k) == value

    def test_near_two_row_domain(self):
        with pytest.raises(DomainError):
            near_two_row_formula(4, 5)

    def test_formula_dispatch(self):
        assert formula_value(square(5), square(5), Partition((20, 4, 1))) == (1, "formula-near-two-row")
        assert formula_value(Partition((12,)), square(4), square(4)) == (1, "formula-two-row")
        assert formula_value(Partition((3, 2)), Partition((3, 2)), Partition((5,))) is None

    def test_g_value_methods(self):
        sq = square(4)
        assert g_value(sq, sq, (15, 1), "oracle") == (0, "oracle")
        assert g_value(sq, sq, (15, 1), "auto") == (0, "formula-two-row")
        assert g_value(sq, sq, (9, 4, 3), "auto")[1] == "oracle"
        with pytest.raises(DomainError):
            g_value(sq, sq, (9, 4, 3), "formula")
        with pytest.raises(ValueError):
            g_value(sq, sq, (9, 4, 3), "guess")


class TestPredicates:
    def test_thm_nn(self):
        assert thm_nn((10, 2))
        assert thm_nn((3, 3, 1, 1))
        assert not thm_nn((2, 1, 1))

    def test_zero_sets(self):
        assert nk2(8, 8)
        assert not nk2(8, 3)
        assert nk3(7, 3)
        assert not hook_zero(7, 7, 3)
        assert hook_zero(7, 7, 46)
        assert near_two_row_zero(6, 4) and not near_two_row_zero(6, 5)
        assert two_row_positive(7, 0) and not two_row_positive(7, 1)
        assert not mu2_positive(8, 1) and mu2_positive(8, 2)
        assert not mu3_positive(7, 1) and mu3_positive(7, 3)
        assert not square_near_hook_positive(7, 2, 44)

    @pytest.mark.parametrize("call", [
        lambda: nk2(7, 1),
        lambda: nk3(6, 1),
        lambda: hook_zero(6, 7, 1),
        lambda: mu2_positive(7, 3),
        lambda: two_row_positive(6, 1),
        lambda: conjectured_zero_set(6),
        lambda: square_near_hook_positive(7, 8, 1),
    ])
    def test_domains_are_refused(self, call):
        with pytest.raises(DomainError):
            call()

    def test_conjectured_zero_set_closed_under_conjugation(self):
        zs = conjectured_zero_set(7)
        assert set(zs) == {conjugate(p) for p in zs}
        assert len(zs) == 12

    def test_near_hook_character_values(self):
        assert near_hook_character(8, 2, 1) == 0
        assert near_hook_character(5, 2, 0) == -1
        with pytest.raises(DomainError):
            near_hook_character(5, 4, 0)

    def test_saxl(self):
        assert saxl_criterion(square(4), (9, 7)) == "inconclusive"
        assert saxl_criterion(square(4), (16,)) == "positive"
        with pytest.raises(PartitionError):
            saxl_criterion(Partition((3, 1)), (4,))

import json

import pytest
from hypothesis import given, settings, strategies as st

from sqkron.certify import (
    ALL_FORMS,
    COMBINERS,
    IDENTITY,
    Leaf,
    MalformedCertificate,
    Node,
    NotFound,
    OracleCapExceeded,
    WitnessNotApplicable,
    canonical_form,
    certify,
    check_certificate,
    combine,
    depth,
    equivalent_forms,
    from_json,
    leaf_count,
    leaves,
    make_triple,
    to_dict,
    to_json,
    verify_certificate,
)
from sqkron.kronecker import kron
from sqkron.partitions import Partition, conjugate, enumerate_partitions, rectangle, square

SQ4, SQ6 = square(4), square(6)


def literal_26_9_1():
    """The hand-written tree for (square_6, square_6, (26,9,1)) built from (8,7,1), (8) and (10,2)."""
    inner = Node("VVH", (
        Leaf(make_triple(SQ4, SQ4, (8, 7, 1)), "oracle"),
        Leaf(make_triple((4, 4), (4, 4), (8,)), "formula-two-row"),
    ), make_triple(rectangle(6, 4), rectangle(6, 4), (16, 7, 1)))
    return Node("HHH", (inner, Leaf(make_triple(rectangle(6, 2), rectangle(6, 2), (10, 2)), "thm-nn")),
                make_triple(SQ6, SQ6, (26, 9, 1)))


class TestTrees:
    def test_combine(self):
        t = combine("VVH", [make_triple(SQ4, SQ4, (8, 7, 1)), make_triple((4, 4), (4, 4), (8,))])
        assert t == make_triple(rectangle(6, 4), rectangle(6, 4), (16, 7, 1))
        with pytest.raises(MalformedCertificate):
            combine("VVV", [t, t])

    def test_combiners_have_even_vertical_count(self):
        assert all(c.count("V") % 2 == 0 for c in COMBINERS)

    def test_shape_helpers(self):
        cert = literal_26_9_1()
        assert leaf_count(cert) == 3
        assert depth(cert) == 2
        assert [leaf.witness for leaf in leaves(cert)] == ["oracle", "formula-two-row", "thm-nn"]


class TestForms:
    def test_counts(self):
        assert len(ALL_FORMS) == 24
        assert equivalent_forms(make_triple(SQ4, SQ4, (15, 1)))[0][0] == IDENTITY

    @given(st.sampled_from(ALL_FORMS))
    def test_inverse(self, form):
        t = make_triple((3, 1), (2, 2), (2, 1, 1))
        assert form.inverse().triple(form.triple(t)) == t

    @given(st.sampled_from(ALL_FORMS), st.integers(1, 6), st.data())
    @settings(max_examples=60, deadline=None)
    def test_forms_preserve_g(self, form, n, data):
        parts = list(enumerate_partitions(n))
        t = make_triple(*(data.draw(st.sampled_from(parts)) for _ in range(3)))
        assert kron(*form.triple(t)) == kron(*t)

    def test_canonical_is_shared(self):
        t = make_triple(SQ4, (3, 3, 3, 3, 2, 2), (8, 8))
        swapped = make_triple((8, 8), conjugate(SQ4), conjugate(Partition((3, 3, 3, 3, 2, 2))))
        assert canonical_form(t) == canonical_form(swapped)

    def test_transformed_certificate_still_verifies(self):
        cert = certify(SQ6, SQ6, (26, 9, 1))
        for form in ALL_FORMS:
            moved = form.certificate(cert)
            assert verify_certificate(moved)
            assert moved.claim == form.triple(cert.claim)


class TestVerification:
    def test_trivial_leaf(self):
        assert verify_certificate(Leaf(make_triple((5,), (5,), (5,)), "formula-two-row"))

    def test_literal_tree_combines_but_first_leaf_is_zero(self):
        report = check_certificate(literal_26_9_1())
        assert [p.kind for p in report.problems] == ["leaf-not-positive"]
        assert report.problems[0].path == "$.children[0].children[0]"

    def test_combine_mismatch(self):
        bad = Node("HHH", (
            Leaf(make_triple((2,), (2,), (2,)), "formula-two-row"),
            Leaf(make_triple((2,), (2,), (2,)), "formula-two-row"),
        ), make_triple((4,), (4,), (3, 1)))
        report = check_certificate(bad)
        assert not report.ok
        assert report.problems[0].kind == "combine-mismatch"

    def test_inapplicable_witness(self):
        with pytest.raises(WitnessNotApplicable):
            check_certificate(Leaf(make_triple((3, 1), (3, 1), (2, 2)), "formula-two-row"))

    def test_oracle_cap(self):
        leaf = Leaf(make_triple(square(6), square(6), (20, 16)), "oracle")
        with pytest.raises(OracleCapExceeded):
            check_certificate(leaf)

    def test_unknown_witness(self):
        with pytest.raises(MalformedCertificate):
            check_certificate(Leaf(make_triple((2,), (2,), (2,)), "intuition"))


class TestJson:
    def test_round_trip(self):
        cert = certify(SQ6, SQ6, (26, 9, 1))
        text = to_json(cert)
        assert from_json(text) == cert
        assert json.loads(text) == to_dict(cert)

    def test_shorthand_accepted(self):
        text = '{"leaf": ["2^2", "2^2", "4"], "witness": "formula-two-row"}'
        assert from_json(text) == Leaf(make_triple((2, 2), (2, 2), (4,)), "formula-two-row")

    @pytest.mark.parametrize("text", [
        "not json",
        "[]",
        '{"leaf": ["2,2", "2,2"], "witness": "oracle"}',
        '{"leaf": ["2,2", "2,2", "4"], "witness": "oracle", "extra": 1}',
        '{"leaf": ["2,2", "2,2", "5"], "witness": "oracle"}',
        '{"claim": ["4", "4", "4"], "node": {"combiner": "HVH", "children": []}}',
        '{"claim": ["4", "4", "4"], "node": {"combiner": "HHH"}}',
        '{"leaf": ["2,3", "2,2", "4"], "witness": "oracle"}',
    ])
    def test_malformed(self, text):
        with pytest.raises(MalformedCertificate):
            from_json(text)


def random_partition(n):
    @st.composite
    def build(draw):
        parts, left, top = [], n, n
        while left:
            p = draw(st.integers(1, min(left, top)))
            parts.append(p)
            left -= p
            top = p
        return Partition(parts)
    return build()


class TestSearch:
    def test_26_9_1(self):
        cert = certify(SQ6, SQ6, (26, 9, 1))
        assert cert.claim == make_triple(SQ6, SQ6, (26, 9, 1))
        assert verify_certificate(cert)
        got = {leaf.triple for leaf in leaves(cert)}
        assert make_triple(SQ4, SQ4, (10, 5, 1)) in got

    def test_rectangle_target(self):
        assert verify_certificate(certify(SQ6, SQ6, (12, 12, 12)))

    def test_zero_is_not_found(self):
        result = certify(SQ4, SQ4, (15, 1), budget=1000)
        assert isinstance(result, NotFound)
        assert not result
        assert result.reason in ("budget", "exhausted")

    def test_budget_is_reported(self):
        result = certify(square(9), square(9), (40, 30, 11), budget=1, witnesses=("formula-two-row",))
        assert isinstance(result, NotFound) and result.reason == "budget"

    def test_deterministic(self):
        first = certify(square(7), square(7), (30, 10, 9))
        assert first
        assert to_json(first) == to_json(certify(square(7), square(7), (30, 10, 9)))

    @given(st.integers(3, 5).flatmap(lambda m: st.tuples(st.just(m), random_partition(m * m))))
    @settings(max_examples=40, deadline=None)
    def test_no_false_positives(self, case):
        m, nu = case
        cert = certify(square(m), square(m), nu, budget=300)
        if cert:
            assert verify_certificate(cert)
            for leaf in leaves(cert):
                assert kron(*leaf.triple) > 0
            assert kron(square(m), square(m), nu) > 0

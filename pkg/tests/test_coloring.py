"""
Tests for kbip.core.coloring and the EdgeColoring type
"""

import numpy as np
import pytest

from kbip.config import CertificateError, ColoringError
from kbip.core.coloring import (
    CLASS_TWO,
    LabelPartition,
    check_partition_condition,
    color_histogram,
    color_kp2,
    color_kpp,
    cyclic_partition,
    derive_subcoloring,
    frame_coloring,
    p_squared_partition,
)
from kbip.core.edge_coloring import EdgeColoring, from_certificate, read_certificate, write_certificate
from kbip.core.factorization import FamilyKind, cyclic_factorization, p_squared_factorization, transversal_matching
from kbip.core.field import make_context
from kbip.core.perm import Permutation
from kbip.utils import encode_pair


class TestPartitions:
    def test_p_squared_class_two(self, ctx5):
        part = p_squared_partition(ctx5)
        members = set(part.members(CLASS_TWO))
        assert len(members) == 10
        for a, b in [(0, 1), (1, 0), (3, 3), (3, 1), (4, 3)]:
            assert encode_pair(a, b, 5) in members

    @pytest.mark.parametrize("p", [3, 5, 7, 11])
    def test_p_squared_class_two_size(self, p):
        assert len(p_squared_partition(make_context(p)).members(CLASS_TWO)) == 2 * p

    def test_rejects_out_of_range_labels(self):
        with pytest.raises(ColoringError):
            LabelPartition.from_class_two(5, [5])

    def test_degenerate(self):
        assert LabelPartition.from_class_two(3, [0, 1, 2]).is_degenerate()
        assert not cyclic_partition(5).is_degenerate()


class TestKpp:
    def test_spot_colors(self, kpp5):
        assert (kpp5.n, kpp5.num_colors) == (5, 7)
        assert kpp5.color(0, 0) == 6
        assert kpp5.color(1, 2) == 6
        assert kpp5.color(2, 4) == 5
        assert kpp5.color(0, 3) == 3
        assert kpp5.is_total()

    def test_histogram(self, kpp5):
        assert color_histogram(kpp5) == [4, 4, 4, 4, 4, 3, 2]

    def test_original_variant(self, ctx5):
        c = color_kpp(ctx5, "original")
        assert c.construction == "kpp-original"
        assert color_histogram(c) == [5, 4, 4, 4, 4, 3, 1]
        assert c.color(0, 0) == 0

    def test_unknown_variant(self, ctx5):
        with pytest.raises(ColoringError):
            color_kpp(ctx5, "shuffled")

    def test_default_variant_at_p3(self, ctx3):
        c = color_kpp(ctx3)
        assert c.construction == "kpp-original"
        assert c.colors.tolist() == [[0, 1, 2], [2, 0, 4], [1, 3, 0]]

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_partition_condition(self, p):
        ctx = make_context(p)
        report = check_partition_condition(cyclic_factorization(p), transversal_matching(FamilyKind.CYCLIC, ctx),
                                           cyclic_partition(p))
        assert report.ok

    def test_uniform_partition_fails_at_p3(self, ctx3):
        report = check_partition_condition(cyclic_factorization(3), transversal_matching(FamilyKind.CYCLIC, ctx3),
                                           cyclic_partition(3))
        assert report.violations == [(2, (0, 1))]


class TestKp2:
    def test_shape(self, kp2_5):
        assert (kp2_5.n, kp2_5.num_colors) == (25, 27)
        assert kp2_5.edge_count == 625
        assert (kp2_5.p, kp2_5.x) == (5, 2)

    def test_histogram(self, kp2_5):
        assert color_histogram(kp2_5) == [24] * 25 + [15, 10]

    def test_rejects_p3(self, ctx3):
        with pytest.raises(ColoringError):
            color_kp2(ctx3)

    def test_p3_on_request(self, ctx3):
        c = color_kp2(ctx3, allow_p3=True)
        assert (c.n, c.num_colors) == (9, 11)

    @pytest.mark.parametrize("p", [5, 7])
    def test_partition_condition(self, p):
        ctx = make_context(p)
        report = check_partition_condition(p_squared_factorization(ctx),
                                           transversal_matching(FamilyKind.P_SQUARED, ctx),
                                           p_squared_partition(ctx))
        assert report.ok
        assert report.cycles_checked > 0

    def test_partition_condition_fails_at_p3(self, ctx3):
        report = check_partition_condition(p_squared_factorization(ctx3),
                                           transversal_matching(FamilyKind.P_SQUARED, ctx3),
                                           p_squared_partition(ctx3))
        assert not report.ok
        # (1,1)(2,2) and (1,2)(2,1) in the zero factor
        assert (0, (4, 8)) in report.violations
        assert (0, (5, 7)) in report.violations


class TestFrameColoring:
    def test_rejects_transversal_violation(self):
        with pytest.raises(ColoringError) as info:
            frame_coloring(cyclic_factorization(5), Permutation.identity(5), cyclic_partition(5))
        assert info.value.offending == [0, 1, 2, 3, 4]

    def test_rejects_degenerate_partition(self, ctx5):
        m = transversal_matching(FamilyKind.CYCLIC, ctx5)
        with pytest.raises(ColoringError):
            frame_coloring(cyclic_factorization(5), m, LabelPartition.from_class_two(5, range(5)))

    def test_degenerate_partition_fails_condition(self, ctx5):
        m = transversal_matching(FamilyKind.CYCLIC, ctx5)
        report = check_partition_condition(cyclic_factorization(5), m, LabelPartition.from_class_two(5, []))
        assert not report.ok

    def test_size_mismatch(self, ctx5):
        with pytest.raises(ColoringError):
            frame_coloring(cyclic_factorization(5), Permutation.identity(7), cyclic_partition(5))

    def test_is_proper_and_total(self, kp2_5):
        for row in kp2_5.colors:
            assert len(set(row.tolist())) == 25
        for column in kp2_5.colors.T:
            assert len(set(column.tolist())) == 25


class TestDeriveSubcoloring:
    def test_nothing_dropped(self, kpp5):
        assert derive_subcoloring(kpp5) is kpp5

    def test_drop_one(self, kp2_5):
        c = derive_subcoloring(kp2_5, [0], [0])
        assert (c.n, c.num_colors) == (24, 27)
        assert c.construction == "kp2-minus-1"
        assert c.color(0, 0) == kp2_5.color(1, 1)

    def test_renumbers_densely(self, kpp5):
        c = derive_subcoloring(kpp5, [1, 3], [0, 4])
        assert c.n == 3
        assert c.colors.tolist() == kpp5.colors[np.ix_([0, 2, 4], [1, 2, 3])].tolist()

    def test_unequal_drop_sets(self, kpp5):
        with pytest.raises(ColoringError):
            derive_subcoloring(kpp5, [0, 1], [0])

    def test_drop_everything(self, kpp5):
        with pytest.raises(ColoringError):
            derive_subcoloring(kpp5, range(5), range(5))

    def test_out_of_range(self, kpp5):
        with pytest.raises(ColoringError):
            derive_subcoloring(kpp5, [5], [0])


class TestEdgeColoring:
    def test_rejects_bad_shape(self):
        with pytest.raises(ColoringError):
            EdgeColoring(n=2, num_colors=3, colors=np.zeros((2, 3)))

    def test_rejects_color_out_of_range(self):
        with pytest.raises(ColoringError):
            EdgeColoring(n=2, num_colors=2, colors=[[0, 1], [2, 0]])

    def test_partial_coloring(self):
        c = EdgeColoring(n=2, num_colors=2, colors=[[0, -1], [1, 0]])
        assert not c.is_total()
        assert c.edge_count == 3

    def test_colors_are_read_only(self, kpp5):
        with pytest.raises(ValueError):
            kpp5.colors[0, 0] = 1

    def test_certificate_layout(self, kpp5):
        payload = kpp5.to_certificate()
        assert list(payload) == ["n", "num_colors", "construction", "p", "x", "edges"]
        assert payload["edges"][:2] == [[0, 0, 6], [0, 1, 1]]
        assert len(payload["edges"]) == 25

    def test_certificate_file(self, tmp_path, kp2_5):
        path = str(tmp_path / "kp2.json")
        write_certificate(kp2_5, path)
        restored = read_certificate(path)
        assert restored == kp2_5
        assert restored.construction == "kp2"

    def test_certificate_with_repeated_edge(self):
        payload = {"n": 1, "num_colors": 1, "edges": [[0, 0, 0], [0, 0, 0]]}
        with pytest.raises(CertificateError):
            from_certificate(payload)

    def test_certificate_missing_field(self):
        with pytest.raises(CertificateError):
            from_certificate({"n": 2, "edges": []})

    def test_certificate_out_of_range_edge(self):
        with pytest.raises(CertificateError):
            from_certificate({"n": 2, "num_colors": 2, "edges": [[0, 2, 0]]})

    @pytest.mark.parametrize("payload", [
        {"n": 2.9, "num_colors": 3, "edges": []},
        {"n": 2, "num_colors": "3", "edges": []},
        {"n": True, "num_colors": 3, "edges": []},
        {"n": 2, "num_colors": 3, "edges": 5},
        {"n": 2, "num_colors": 3, "edges": {"0": [0, 0, 0]}},
        {"n": 2, "num_colors": 3, "edges": ["000", "011", "102", "110"]},
        {"n": 2, "num_colors": 3, "edges": [[0, 0, 0.7]]},
        {"n": 2, "num_colors": 3, "edges": [[0, 0, False]]},
        {"n": 2, "num_colors": 3, "edges": [[0, 0]]},
        {"n": 2, "num_colors": 3, "edges": [[0, 0, 0, 0]]},
        {"n": 2, "num_colors": 3, "p": "5", "edges": []},
    ])
    def test_certificate_values_are_not_coerced(self, payload):
        with pytest.raises(CertificateError):
            from_certificate(payload)

    def test_certificate_size_limits(self):
        with pytest.raises(CertificateError):
            from_certificate({"n": 10 ** 9, "num_colors": 3, "edges": []})
        with pytest.raises(CertificateError):
            from_certificate({"n": 1, "num_colors": 4, "edges": []})
        assert from_certificate({"n": 1, "num_colors": 3, "edges": [[0, 0, 2]]}).color(0, 0) == 2

    def test_certificate_read_from_bad_bytes(self, tmp_path):
        path = tmp_path / "latin1.json"
        path.write_bytes(b'{"n": 1, "num_colors": 1, "construction": "\xff", "edges": [[0, 0, 0]]}')
        with pytest.raises(CertificateError):
            read_certificate(str(path))

"""The bad-algebra battery: basis counts, stored differentials, and the
characteristic-dependent obstruction."""

import pytest

from koszulkit import GF, QQ
from koszulkit.appendix import (
    check_basis,
    find_obstruction,
    make_instance,
    reference_basis_count,
    run_battery,
    run_characteristic,
    verify_differentials,
)


@pytest.fixture(scope="module")
def inst32003():
    return make_instance(GF(32003))


@pytest.fixture(scope="module")
def inst2():
    return make_instance(GF(2))


class TestBasis:
    def test_reference_counts(self):
        assert reference_basis_count((2, 0)) == 1
        assert reference_basis_count((1, 3)) == 2
        assert reference_basis_count((3, 0)) == 0
        assert reference_basis_count((0, 4)) == 5

    def test_engine_agrees(self, inst32003):
        out = check_basis(inst32003, 6)
        assert out["ok"], out["failures"]

    def test_char2_basis(self, inst2):
        assert check_basis(inst2, 5)["ok"]


class TestDifferentials:
    def test_products_vanish(self, inst32003):
        out = verify_differentials(inst32003)
        assert out["ok"]
        assert all(p["zero"] for p in out["products"])
        assert out["column_counts"] == [3, 6, 11, 20]
        assert out["minimal"]
        assert out["bidegree_counts_match"]

    def test_char2_products_vanish_but_fourth_map_incomplete(self, inst2):
        out = verify_differentials(inst2)
        assert all(p["zero"] for p in out["products"])
        extra = out["char2_quadratic_syzygy"]
        assert extra["is_syzygy"] and extra["outside_displayed_span"]

    def test_entries_use_doubled_coefficients(self, inst32003):
        d4 = inst32003.differentials[3]
        K = inst32003.field
        two = K.from_int(2)
        vals = {c for r in range(d4.nrows) for c in d4.entries[r] if c}
        coeffs = {c for f in vals for c in f.terms.values()}
        assert two in coeffs and K.neg(two) in coeffs


class TestObstruction:
    def test_char_zero_representative(self, inst32003):
        obs = find_obstruction(inst32003)
        assert obs["found"]
        assert (obs["hom_degree"], obs["total_degree"]) == (5, 7)
        assert obs["bidegree"] == [5, 2]
        assert obs["ranks"][:5] == [2, 3, 6, 11, 20]

    def test_char_two(self, inst2):
        obs = find_obstruction(inst2)
        assert (obs["hom_degree"], obs["total_degree"]) == (4, 6)
        assert obs["bidegree"] == [4, 2]

    @pytest.mark.parametrize("field_name,expected", [("F3", (5, 7)), ("F7", (5, 7)), ("QQ", (5, 7))])
    def test_other_characteristics(self, field_name, expected):
        out = run_characteristic(field_name)
        obs = out["obstruction"]
        assert out["ok"]
        assert (obs["hom_degree"], obs["total_degree"]) == expected


def test_full_battery():
    out = run_battery()
    assert out["ok"]
    assert [r["field"] for r in out["runs"]] == ["F2", "F3", "F7", "F32003", "QQ"]

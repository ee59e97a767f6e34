"""The four-quadric classifier: closed-loop generation, witness soundness,
sub-form dispatch, generalized zeros, and certificates."""

import random

import pytest

from koszulkit import (
    GF,
    QQ,
    FreeModule,
    Ideal,
    LinearChange,
    PolyMatrix,
    buchberger,
    classify,
    find_generalized_zero,
    ideal_equal,
    is_quadratic_gb,
    is_regular_sequence_mod,
    linear_syzygy_matrix,
    match_form_2iv,
    parse_poly,
    parse_ring,
)
from koszulkit.classify import ClassificationError
from koszulkit.forms import FORMS, generate_ideal


def P(R, s):
    return parse_poly(R, s)


def ideal(R, *texts):
    return Ideal([P(R, t) for t in texts], R)


ALL_FORMS = ["ht4-CI", "ht1", "2i-a", "2i-b", "2i-c", "2ii", "2iii",
             "2iv-a", "2iv-b", "2iv-c", "2iv-d", "ht3-i", "ht3-ii"]

EXPECTED_CASE = {
    "ht4-CI": "ht4-CI", "ht1": "ht1",
    "2i-a": "2i", "2i-b": "2i", "2i-c": "2i",
    "2ii": "2ii", "2iii": "2iii",
    "2iv-a": "2iv-(a)", "2iv-b": "2iv-(b)", "2iv-c": "2iv-(c)", "2iv-d": "2iv-(d)",
    "ht3-i": "ht3-i", "ht3-ii": "ht3-ii",
}

KOSZUL = {"ht4-CI", "ht1", "2i-a", "2i-b", "2i-c", "2ii", "2iii", "2iv-d", "ht3-i", "ht3-ii"}


class TestClosedLoop:
    @pytest.mark.parametrize("form", ALL_FORMS)
    def test_generated_ideal_reclassifies(self, form):
        g = generate_ideal(form, GF(32003), seed=13)
        rep = classify(g["ideal"])
        assert rep.matched_case == EXPECTED_CASE[form]
        if form in KOSZUL:
            assert rep.verdict == "certified-Koszul"
            assert rep.certificate["type"] == "lg-quadratic"
        else:
            assert rep.verdict == "certified-non-Koszul"

    def test_witnesses_regenerate_input(self):
        for form in ("2iii", "2iv-a", "2iv-c", "2ii"):
            g = generate_ideal(form, GF(32003), seed=21)
            rep = classify(g["ideal"])
            spec = FORMS[{"2ii": "2ii"}.get(form, form)]
            if rep.subcase and rep.matched_case == "2i":
                spec = FORMS[f"2i-{rep.subcase}"]
            if form.startswith("2iv"):
                spec = FORMS[form]
            regen = Ideal(spec.build(rep.witnesses), g["ideal"].ring)
            assert ideal_equal(regen, g["ideal"])


class TestSpecificInputs:
    def test_two_plane_product_is_certified(self):
        R = parse_ring("ring F32003 [x,y,z,w]")
        rep = classify(ideal(R, "x*z", "x*w", "y*z", "y*w"))
        assert rep.matched_case == "2i" and rep.subcase == "a"
        assert rep.verdict == "certified-Koszul"
        # the witnesses span two transverse planes regenerating the input
        regen = Ideal(FORMS["2i-a"].build(rep.witnesses), R)
        assert ideal_equal(regen, ideal(R, "x*z", "x*w", "y*z", "y*w"))

    def test_bad_algebra_ideal_matches_two_factor_form(self, bad_algebra_ideal):
        rep = classify(bad_algebra_ideal)
        assert rep.matched_case == "2iv-(c)"
        assert rep.verdict == "certified-non-Koszul"
        assert rep.certificate["type"] == "retract-obstruction"
        pos = rep.certificate["nonlinear_position"]
        assert pos["hom_degree"] == 5 and pos["total_degree"] == 7

    def test_five_generator_input_rejected(self, conca_ideal):
        with pytest.raises(ClassificationError, match="5"):
            classify(conca_ideal)

    def test_degenerate_input_rejected(self):
        R = parse_ring("ring QQ [x,y,z]")
        with pytest.raises(ClassificationError):
            classify(ideal(R, "x", "y*z"))

    def test_generic_two_factor_form_chain_certificate(self):
        g = generate_ideal("2iv-c", GF(32003), seed=7)
        rep = classify(g["ideal"])
        assert rep.verdict == "certified-non-Koszul"
        assert rep.certificate["type"] == "specialization-chain-obstruction"
        assert rep.certificate["bad_algebra"]["nonlinear_position"]["total_degree"] == 7

    def test_scaling_invariance(self):
        rng = random.Random(55)
        for form in ("2iii", "2iv-d", "2i-b"):
            g = generate_ideal(form, GF(32003), seed=17)
            I = g["ideal"]
            phi = LinearChange.random(I.ring, rng)
            I2 = Ideal([phi.apply(f) for f in I.gens], I.ring)
            r1, r2 = classify(I), classify(I2)
            assert r1.matched_case == r2.matched_case
            assert r1.verdict == r2.verdict


class TestLinearSyzygyMatrix:
    def test_one_syzygy_form_has_three_columns(self, generic_one_syzygy):
        M = linear_syzygy_matrix(generic_one_syzygy["ideal"])
        assert M.ncols == 3

    def test_transversal_form_has_two_columns(self):
        g = generate_ideal("2iv-d", GF(32003), seed=1)
        assert linear_syzygy_matrix(g["ideal"]).ncols == 2

    def test_complete_intersection_has_none(self):
        g = generate_ideal("ht4-CI", GF(32003), seed=1)
        assert linear_syzygy_matrix(g["ideal"]).ncols == 0

    def test_columns_are_syzygies(self):
        g = generate_ideal("2iv-a", GF(32003), seed=3)
        from koszulkit.groebner import minimal_quadric_generators

        gens = minimal_quadric_generators(g["ideal"])
        M = linear_syzygy_matrix(g["ideal"])
        for c in range(M.ncols):
            acc = g["ideal"].ring.zero()
            for r in range(M.nrows):
                acc = acc + M.entries[r][c] * gens[r]
            assert not acc


class TestGeneralizedZero:
    def test_literal_zero_entry(self):
        R = parse_ring("ring F7 [x,y]")
        F2 = FreeModule(R, [(0,), (0,)])
        F1 = FreeModule(R, [(1,), (1,)])
        M = PolyMatrix(F2, F1, [[P(R, "x"), R.zero()], [-P(R, "y"), P(R, "x")]])
        out = find_generalized_zero(M)
        assert out is not None
        u, v = out
        K = R.field
        # u M v = 0
        acc = R.zero()
        for i in range(2):
            for j in range(2):
                acc = acc + M.entries[i][j].scale(K.mul(u[i], v[j]))
        assert not acc

    def test_scroll_matrix_is_one_generic(self):
        # brute-force oracle over F7 confirms no nonzero u, v kills u M v
        R = parse_ring("ring F7 [x,y,z,w]")
        F2 = FreeModule(R, [(0,), (0,)])
        F3 = FreeModule(R, [(1,)] * 3)
        M = PolyMatrix(
            F2, F3,
            [[P(R, "x"), P(R, "y"), P(R, "z")], [P(R, "y"), P(R, "z"), P(R, "w")]],
        )
        K = R.field
        found = None
        for u0 in range(7):
            for u1 in range(7):
                if u0 == u1 == 0:
                    continue
                for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1), (1, 2, 3)):
                    acc = R.zero()
                    for i, ui in enumerate((u0, u1)):
                        for j, vj in enumerate(v):
                            acc = acc + M.entries[i][j].scale(K.mul(ui, K.from_int(vj)))
                    if not acc and any(v):
                        found = (u0, u1, v)
        # spot grid had no hits; the solver must agree there is none at all
        assert found is None
        assert find_generalized_zero(M) is None

    def test_generalized_zero_from_row_operations(self):
        # rows (x, y) and (x, y) combine to a zero row
        R = parse_ring("ring F32003 [x,y]")
        F2 = FreeModule(R, [(0,), (0,)])
        F1 = FreeModule(R, [(1,), (1,)])
        M = PolyMatrix(F2, F1, [[P(R, "x"), P(R, "y")], [P(R, "x"), P(R, "y")]])
        out = find_generalized_zero(M)
        assert out is not None


class TestSubformDispatch:
    @pytest.mark.parametrize("form,sub", [("2iv-a", "a"), ("2iv-b", "b"), ("2iv-c", "c"), ("2iv-d", "d")])
    def test_match_form_2iv(self, form, sub):
        g = generate_ideal(form, GF(32003), seed=29)
        got, w = match_form_2iv(g["ideal"])
        assert got == sub
        regen = Ideal(FORMS[form].build(w), g["ideal"].ring)
        assert ideal_equal(regen, g["ideal"])

    def test_2iv_witness_heights_verified(self):
        g = generate_ideal("2iv-a", GF(32003), seed=29)
        _, w = match_form_2iv(g["ideal"])
        assert not FORMS["2iv-a"].check(w, g["ideal"])


class TestCertificates:
    @pytest.mark.parametrize("form", sorted(KOSZUL))
    def test_lg_certificate_is_checkable(self, form):
        from koszulkit import lg_quadratic_certificate

        g = generate_ideal(form, GF(32003), seed=31)
        rep = classify(g["ideal"])
        cert = rep.certificate
        assert cert["type"] == "lg-quadratic"
        assert cert["regular_sequence_verified"]
        assert cert["specialization_matches_input"]
        # re-verify the quadratic basis claim independently
        from koszulkit import parse_polys
        from koszulkit.ring import MonomialOrder

        ext = parse_ring(cert["generic_ring"])
        gens = [parse_poly(ext, s) for s in cert["generic_ideal"]]
        spec = cert["order"]
        order = MonomialOrder(spec["kind"], perm=spec["perm"], n=ext.n)
        gb = buchberger(gens, order)
        assert is_quadratic_gb(gb)
        L = [parse_poly(ext, s) for s in cert["specializing_forms"]]
        assert is_regular_sequence_mod(Ideal(gens, ext), L)

    def test_report_json_schema(self):
        g = generate_ideal("2iii", GF(32003), seed=2)
        rep = classify(g["ideal"])
        js = rep.to_json()
        assert js["schema"] == 1
        assert js["matched_case"] == "2iii"
        assert set(js) >= {"betti", "witnesses", "verdict", "certificate", "hgt", "g"}

"""Buchberger's algorithm, normal forms, and ideal arithmetic."""

import random

import pytest

from koszulkit import (
    DEGLEX,
    DEGREVLEX,
    GF,
    Ideal,
    MonomialOrder,
    buchberger,
    colon,
    eliminate,
    exact_div,
    g_quadratic_search,
    ideal_equal,
    intersect,
    is_quadratic_gb,
    is_subideal,
    normal_form,
    parse_poly,
    parse_ring,
    saturate,
    verify_basis,
)
from koszulkit.groebner import GroebnerError


def P(R, s):
    return parse_poly(R, s)


def ideal(R, *texts):
    return Ideal([P(R, t) for t in texts], R)


class TestBuchberger:
    def test_hand_division_trace(self, qq_xy):
        # S(x^2 - y^2, x*y) = y*(x^2 - y^2) - x*(x*y) = -y^3; irreducible,
        # so the basis closes with y^3 (recorded by-hand trace)
        R = qq_xy
        gb = buchberger([P(R, "x^2-y^2"), P(R, "x*y")])
        assert sorted(str(g) for g in gb.elements) == ["x*y", "x^2 - y^2", "y^3"]
        assert verify_basis(gb)

    def test_monomial_ideal_minimal_generators(self):
        R = parse_ring("ring QQ [x,y,z]")
        gb = buchberger([P(R, "x*y"), P(R, "x*y*z"), P(R, "y*z")])
        assert sorted(str(g) for g in gb.elements) == ["x*y", "y*z"]

    def test_stated_permuted_deglex_basis(self, generic_one_syzygy):
        # the four generators are already a reduced basis under the stated
        # permuted degree-lexicographic order
        R = generic_one_syzygy["ring"]
        I = generic_one_syzygy["ideal"]
        order = MonomialOrder("deglex", n=R.n)  # ring declares a3,b3,b4,a4,x,y,z
        gb = buchberger(I.gens, order)
        assert len(gb) == 4
        assert is_quadratic_gb(gb)
        monic_gens = sorted(str(g.monic(order)) for g in I.gens)
        assert sorted(str(g) for g in gb.elements) == monic_gens

    def test_input_generators_have_zero_normal_form(self):
        R = parse_ring("ring F32003 [x,y,z,w]")
        rng = random.Random(2)
        from koszulkit.forms import random_quadric

        gens = [random_quadric(R, rng) for _ in range(3)]
        gb = buchberger(gens)
        for g in gens:
            assert not normal_form(g, gb)
        assert verify_basis(gb)

    def test_spair_postcondition_random_battery(self):
        rng = random.Random(77)
        from koszulkit.forms import random_quadric

        for trial in range(10):
            n = rng.randint(2, 4)
            R = parse_ring(f"ring F32003 [{','.join('uvwxyz'[:n])}]")
            gens = [random_quadric(R, rng) for _ in range(rng.randint(2, 4))]
            gb = buchberger(gens)
            assert verify_basis(gb)


class TestNormalForm:
    def test_membership_gives_zero(self, qq_xy):
        R = qq_xy
        gb = buchberger([P(R, "x^2-y^2"), P(R, "x*y")])
        assert not normal_form(P(R, "x^3 - x*y^2"), gb)

    def test_unit_survives_proper_ideal(self, qq_xy):
        R = qq_xy
        gb = buchberger([P(R, "x^2-y^2"), P(R, "x*y")])
        assert normal_form(R.one(), gb) == R.one()

    def test_single_reduction_step(self, qq_xy):
        R = qq_xy
        gb = buchberger([P(R, "x^2-y^2"), P(R, "x*y")])
        nf = normal_form(P(R, "x^2"), gb)
        assert nf == P(R, "y^2")
        # re-adding the reducer recovers membership
        assert not normal_form(P(R, "x^2") - nf, gb)

    def test_idempotent(self, qq_xy):
        R = qq_xy
        gb = buchberger([P(R, "x^2-y^2"), P(R, "x*y")])
        nf = normal_form(P(R, "x^3 + y^3 + x"), gb)
        assert normal_form(nf, gb) == nf

    def test_order_independent_membership(self):
        R = parse_ring("ring F32003 [x,y,z]")
        rng = random.Random(4)
        from koszulkit.forms import random_quadric

        I = Ideal([random_quadric(R, rng) for _ in range(2)], R)
        for _ in range(10):
            f = random_quadric(R, rng) * random_quadric(R, rng)
            in1 = not normal_form(f, I.gb(DEGREVLEX))
            in2 = not normal_form(f, I.gb(DEGLEX))
            assert in1 == in2


class TestIdealArithmetic:
    def test_colon_principal(self, qq_xy):
        R = qq_xy
        assert ideal_equal(colon(ideal(R, "x^2"), P(R, "x")), ideal(R, "x"))

    def test_colon_case_a(self):
        R = parse_ring("ring F32003 [x,y,a3,b3,a4,b4]")
        J = ideal(R, "x^2", "b3*x", "a3*x+b3*y")
        got = colon(J, P(R, "a4*x+b4*y"))
        want = ideal(R, "x^2", "x*b3", "b3^2", "a3*x+b3*y")
        assert ideal_equal(got, want)

    def test_colon_case_b(self):
        R = parse_ring("ring F32003 [x,y,a2,b3,a4,b4]")
        J = ideal(R, "x*y", "a2*x", "b3*y")
        got = colon(J, P(R, "a4*x+b4*y"))
        want = intersect(ideal(R, "x", "b3"), ideal(R, "y", "a2"))
        assert ideal_equal(got, want)

    def test_colon_by_zero_ideal_raises(self, qq_xy):
        with pytest.raises(GroebnerError):
            colon(ideal(qq_xy, "x"), Ideal([], qq_xy))

    def test_intersect_coprime_principal(self, qq_xy):
        R = qq_xy
        assert ideal_equal(intersect(ideal(R, "x"), ideal(R, "y")), ideal(R, "x*y"))

    def test_intersect_two_planes_double_inclusion(self):
        R = parse_ring("ring QQ [x,y,z,w]")
        got = intersect(ideal(R, "x", "y"), ideal(R, "z", "w"))
        want = ideal(R, "x*z", "x*w", "y*z", "y*w")
        assert is_subideal(got, want) and is_subideal(want, got)

    def test_transversality_of_independent_pairs(self):
        R = parse_ring("ring QQ [a1,a2,b3,b4,x,y]")
        I1 = ideal(R, "a1*x", "a2*x")
        I2 = ideal(R, "b3*y", "b4*y")
        prod = Ideal([f * g for f in I1.gens for g in I2.gens], R)
        assert ideal_equal(intersect(I1, I2), prod)

    def test_colon_generators_multiply_in(self):
        R = parse_ring("ring F32003 [x,y,z]")
        I = ideal(R, "x^2*z", "y*z^2")
        J = ideal(R, "z", "x*y")
        Q = colon(I, J)
        for f in Q.gens:
            for g in J.gens:
                assert I.contains(f * g)

    def test_eliminate_consistent_with_intersect(self, qq_xy):
        R = qq_xy
        got = intersect(ideal(R, "x"), ideal(R, "y"))
        assert [str(g) for g in got.gens] == ["x*y"]

    def test_eliminate_simple(self):
        R = parse_ring("ring QQ [x,y]")
        out = eliminate(ideal(R, "x*y", "x*y^2"), ["x"])
        assert out.is_zero()
        out2 = eliminate(ideal(R, "x - y^2"), ["x"])
        assert out2.is_zero()

    def test_eliminate_keeps_back_variables(self):
        R = parse_ring("ring QQ [t,x,y]")
        # t*x and (1-t)*y generate: eliminating t leaves x*y
        I = ideal(R, "t*x", "x*y - t*x*y", "y - t*y - y + t*y")  # filler zero gen dropped
        I = Ideal([P(R, "t*x"), P(R, "y - t*y")], R)
        out = eliminate(I, ["t"])
        assert [str(g) for g in out.gens] == ["x*y"]

    def test_saturate_examples(self, qq_xy):
        R = qq_xy
        assert ideal_equal(saturate(ideal(R, "x^2", "x*y"), ideal(R, "x", "y")), ideal(R, "x"))
        I = ideal(R, "x^2", "x*y")
        assert ideal_equal(saturate(I, Ideal([R.one()], R)), I)

    def test_saturate_two_planes(self):
        R = parse_ring("ring QQ [x,y,z,w]")
        got = saturate(ideal(R, "x*z", "x*w", "y*z", "y*w"), ideal(R, "x", "y"))
        want = ideal(R, "z", "w")
        assert is_subideal(got, want) and is_subideal(want, got)

    def test_exact_div(self, qq_xy):
        R = qq_xy
        assert exact_div(P(R, "x^2*y - x*y^2"), P(R, "x*y")) == P(R, "x - y")
        with pytest.raises(GroebnerError):
            exact_div(P(R, "x^2 + y"), P(R, "x"))


class TestQuadraticSearch:
    def test_monomial_products_found_with_identity(self):
        R = parse_ring("ring F32003 [x,y,z,w]")
        I = ideal(R, "x*z", "x*w", "y*z", "y*w")
        r = g_quadratic_search(I, trials=1, seed=0, perms_per_trial=1)
        assert r["witness"] is not None
        assert is_quadratic_gb(buchberger(
            [r["witness"]["change"].apply(g) for g in I.gens], r["witness"]["order"]
        ))

    def test_squared_plane_plus_mixed_found(self):
        R = parse_ring("ring F32003 [x,y,z,w]")
        I = ideal(R, "x^2", "x*y", "y^2", "x*z+y*w")
        r = g_quadratic_search(I, trials=2, seed=0, perms_per_trial=4)
        assert r["witness"] is not None

    def test_five_quadric_example_inconclusive(self, conca_ideal):
        r = g_quadratic_search(conca_ideal, trials=2, seed=3, perms_per_trial=3)
        assert r["witness"] is None
        assert not r["conclusive"]
        assert "not a proof" in r["note"]

    def test_is_quadratic_gb_examples(self, qq_xy):
        R = qq_xy
        gb = buchberger([P(R, "x^2-y^2"), P(R, "x*y")])
        assert not is_quadratic_gb(gb)  # cubic element appears
        R4 = parse_ring("ring QQ [x,y,z,w]")
        gb2 = buchberger([P(R4, s) for s in ("x*z", "x*w", "y*z", "y*w")])
        assert is_quadratic_gb(gb2)

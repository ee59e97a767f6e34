"""Hilbert series, dimension, multiplicity, regular-sequence tests."""

import random

import pytest

from koszulkit import (
    GF,
    Ideal,
    LinearChange,
    hilbert_from_monomials,
    hilbert_of_quotient,
    is_regular_sequence_mod,
    parse_poly,
    parse_ring,
    regularity,
)
from koszulkit.forms import KNOWN_HEIGHT2_TABLES, random_quadric


def P(R, s):
    return parse_poly(R, s)


def ideal(R, *texts):
    return Ideal([P(R, t) for t in texts], R)


class TestMonomialRecursion:
    def test_zero_ideal(self):
        R = parse_ring("ring QQ [x,y,z]")
        h = hilbert_from_monomials(R, [])
        assert list(h.numerator) == [1] and h.dim == 3 and h.multiplicity == 1

    def test_single_edge(self, qq_xy):
        # standard monomials of (x*y): 1; x, y; x^2, y^2; ... so 1, 2, 2, 2, ...
        h = hilbert_from_monomials(qq_xy, [(1, 1)])
        assert list(h.numerator) == [1, 0, -1]
        assert h.dim == 1 and h.multiplicity == 2
        assert h.series(5) == [1, 2, 2, 2, 2, 2]

    def test_series_counts_standard_monomials(self):
        # independent oracle: enumerate standard monomials by brute force
        R = parse_ring("ring QQ [x,y,z]")
        mons = [(2, 0, 0), (1, 1, 0), (0, 0, 3)]
        h = hilbert_from_monomials(R, mons)
        from itertools import product

        for d in range(7):
            count = 0
            for e in product(range(d + 1), repeat=3):
                if sum(e) != d:
                    continue
                if any(all(x >= y for x, y in zip(e, m)) for m in mons):
                    continue
                count += 1
            assert h.series(7)[d] == count

    def test_five_quadric_example_series(self, conca_ideal):
        h = hilbert_of_quotient(conca_ideal)
        assert list(h.reduced_numerator) == [1, 2, -2, -2, 2]
        assert h.dim == 2 and h.codim == 2 and h.multiplicity == 1


class TestQuotientSeries:
    def test_complete_intersection_of_quadrics(self):
        R = parse_ring("ring F32003 [a,b,c,d]")
        rng = random.Random(6)
        I = Ideal([random_quadric(R, rng) for _ in range(4)], R)
        h = hilbert_of_quotient(I)
        # (1 - t^2)^4
        assert list(h.numerator) == [1, 0, -4, 0, 6, 0, -4, 0, 1]

    def test_one_syzygy_form_height_and_multiplicity(self, generic_one_syzygy):
        h = hilbert_of_quotient(generic_one_syzygy["ideal"])
        assert h.multiplicity == 1 and h.codim == 2

    def test_product_form_matches_alternating_betti_sum(self):
        R = parse_ring("ring QQ [x,y,z,w]")
        I = ideal(R, "x*z", "x*w", "y*z", "y*w")
        from koszulkit import minimal_resolution

        _, B = minimal_resolution(I)
        assert B.alternating_sum() == hilbert_of_quotient(I).numerator

    def test_invariant_under_linear_change(self):
        R = parse_ring("ring F32003 [x,y,z,w]")
        rng = random.Random(9)
        I = Ideal([random_quadric(R, rng) for _ in range(3)], R)
        phi = LinearChange.random(R, rng)
        I2 = Ideal([phi.apply(g) for g in I.gens], R)
        assert hilbert_of_quotient(I).numerator == hilbert_of_quotient(I2).numerator


class TestRegularSequences:
    def test_fresh_variable_is_regular(self):
        R = parse_ring("ring QQ [x,y,z]")
        assert is_regular_sequence_mod(ideal(R, "x*y"), [P(R, "z")])

    def test_zerodivisor_detected(self):
        R = parse_ring("ring QQ [x,y,z]")
        assert not is_regular_sequence_mod(ideal(R, "x*y", "x*z"), [P(R, "x")])

    def test_specialization_of_generic_form(self):
        # lift a valid concrete witness to the seven-variable generic form;
        # the specializing differences must be a regular sequence, which is
        # exactly the series equality this operation tests
        from koszulkit.forms import FORMS, generate_ideal

        g = generate_ideal("2iii", GF(32003), seed=4)
        lift = FORMS["2iii"].lift(g["ideal"].ring, g["witnesses"])
        lifted = Ideal(lift.ideal_gens, lift.ring)
        assert len(lift.specializing) == 7
        assert is_regular_sequence_mod(lifted, lift.specializing)


class TestRegularity:
    def test_reference_tables(self):
        assert regularity(KNOWN_HEIGHT2_TABLES["i"]) == 1
        assert regularity(KNOWN_HEIGHT2_TABLES["iv"]) == 2

    def test_exterior_complex_regularity_zero(self):
        R = parse_ring("ring QQ [x,y,z]")
        from koszulkit import minimal_resolution

        _, B = minimal_resolution(ideal(R, "x", "y", "z"))
        assert regularity(B) == 0

    def test_empty_table_errors(self):
        with pytest.raises(Exception):
            regularity({})

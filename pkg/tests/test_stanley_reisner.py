import itertools
import random

import pytest

from vcmkit import (
    DegreeBoundError,
    EmptyVarietyError,
    IrrelevantIdealB,
    Shape,
    SimplicialComplex,
    SqfIdeal,
    UnitIdealError,
    Vertex,
    codim,
    codim_affine,
    complex_of,
    ideal_of,
    prime_components,
    saturate_by_B,
    saturation_oracle,
)
from vcmkit.stanley_reisner import is_saturated
from helpers import (
    antichains_nonvoid,
    cx,
    exponent_vectors,
    minimal_nonfaces_bruteforce,
    random_balanced,
    random_complex,
)

V = Vertex


def _label_faces(words):
    table = {"a": V(1, 0), "b": V(1, 1), "c": V(1, 2),
             "d": V(2, 0), "e": V(2, 1), "f": V(2, 2)}
    return {frozenset(table[ch] for ch in w) for w in words}


class TestSqfIdeal:
    def test_minimalisation(self):
        shape = Shape((3,))
        ideal = SqfIdeal.from_faces(shape, [[V(1, 0)], [V(1, 0), V(1, 1)], [V(1, 2), V(1, 3)]])
        assert ideal.generators == (
            frozenset({V(1, 0)}),
            frozenset({V(1, 2), V(1, 3)}),
        )

    def test_unit_flag(self):
        shape = Shape((1,))
        ideal = SqfIdeal.from_faces(shape, [[]])
        assert ideal.is_unit and ideal.generator_masks == ()
        assert ideal.contains_monomial_mask(0)

    def test_zero_ideal(self):
        ideal = SqfIdeal(Shape((1,)), ())
        assert ideal.is_zero and not ideal.is_unit

    def test_membership(self):
        shape = Shape((3,))
        ideal = SqfIdeal.from_faces(shape, [[V(1, 0), V(1, 1)]])
        assert ideal.contains_monomial_mask(0b011)
        assert ideal.contains_monomial_mask(0b111)
        assert not ideal.contains_monomial_mask(0b101)


class TestIdealOf:
    def test_full_simplex(self):
        assert ideal_of(cx((2,), [(1, 0), (1, 1), (1, 2)])).is_zero

    def test_empty_face_complex(self):
        shape = Shape((1, 0))
        ideal = ideal_of(cx((1, 0), []))
        assert ideal.generators == tuple(frozenset({v}) for v in shape.vertices())

    def test_void_is_unit(self):
        assert ideal_of(SimplicialComplex.from_facets(Shape((1,)), [])).is_unit

    def test_single_balanced_edge(self):
        ideal = ideal_of(cx((1, 1), [(1, 0), (2, 0)]))
        assert ideal.generators == (frozenset({V(1, 1)}), frozenset({V(2, 1)}))

    def test_fig1_generators(self, fig1):
        assert set(ideal_of(fig1.complex).generators) == _label_faces(
            ["ab", "ac", "bf", "cf"])

    def test_counterexample_generators(self, c34):
        assert set(ideal_of(c34.complex).generators) == _label_faces(
            ["abcd", "abcf", "abde", "abef", "adef", "bcef", "cdef"])

    def test_against_bruteforce(self):
        rng = random.Random(41)
        for entries in [(2, 1), (1, 1, 1)]:
            for _ in range(15):
                d = random_complex(Shape(entries), rng)
                if d.is_void:
                    continue
                assert set(ideal_of(d).generators) == minimal_nonfaces_bruteforce(d)


class TestComplexOf:
    def test_unit_raises(self):
        with pytest.raises(UnitIdealError):
            complex_of(SqfIdeal.from_faces(Shape((1,)), [[]]))

    def test_zero_gives_full_simplex(self):
        shape = Shape((1, 1))
        d = complex_of(SqfIdeal(shape, ()))
        assert d.facet_masks == (shape.full_mask,)

    def test_round_trip_exhaustive_small(self):
        for entries in [(3,), (1, 1)]:
            shape = Shape(entries)
            for masks in antichains_nonvoid(shape.num_vertices):
                d = SimplicialComplex(shape, masks)
                assert complex_of(ideal_of(d)) == d
            empty_face = SimplicialComplex(shape, (0,))
            assert complex_of(ideal_of(empty_face)) == empty_face

    def test_round_trip_sampled_six_vertices(self):
        rng = random.Random(43)
        for entries in [(2, 2), (5,), (1, 0, 1)]:
            shape = Shape(entries)
            for _ in range(40):
                d = random_complex(shape, rng, max_facets=6)
                if d.is_void:
                    continue
                assert complex_of(ideal_of(d)) == d

    def test_ideal_round_trip(self):
        rng = random.Random(47)
        shape = Shape((4,))
        for _ in range(40):
            d = random_complex(shape, rng)
            if d.is_void:
                continue
            ideal = ideal_of(d)
            assert ideal_of(complex_of(ideal)) == ideal


class TestPrimeComponents:
    def test_fig1(self, fig1):
        comps = prime_components(fig1.complex)
        assert [(set(c.vertices), c.codim) for c in comps] == [
            ({V(1, 1), V(1, 2)}, 2),
            ({V(1, 0), V(2, 2)}, 2),
        ]

    def test_counterexample_codims(self, c34):
        comps = prime_components(c34.complex)
        assert len(comps) == 8
        assert all(c.codim == 2 for c in comps)

    def test_full_simplex(self):
        comps = prime_components(cx((2,), [(1, 0), (1, 1), (1, 2)]))
        assert comps == ((frozenset(), 0),)

    def test_intersection_is_ideal(self):
        # A monomial lies in the ideal iff it lies in every minimal prime.
        rng = random.Random(53)
        for _ in range(20):
            d = random_complex(Shape((2, 1)), rng)
            if d.is_void:
                continue
            ideal = ideal_of(d)
            comps = prime_components(d)
            for _ in range(20):
                mask = rng.randrange(1 << d.shape.num_vertices)
                in_every_prime = all(
                    mask & d.shape.mask_of(c.vertices) for c in comps) if comps else True
                assert ideal.contains_monomial_mask(mask) == in_every_prime
                assert ideal.contains_monomial_mask(mask) == (not d.has_face_mask(mask))


class TestIrrelevantIdeal:
    def test_generators(self):
        b = IrrelevantIdealB(Shape((1, 1)))
        assert set(b.generators) == {
            frozenset({V(1, 0), V(2, 0)}),
            frozenset({V(1, 0), V(2, 1)}),
            frozenset({V(1, 1), V(2, 0)}),
            frozenset({V(1, 1), V(2, 1)}),
        }

    def test_as_ideal(self):
        ideal = IrrelevantIdealB(Shape((0, 0))).as_ideal()
        assert ideal.generator_masks == (0b11,)


class TestSaturation:
    def test_worked_example(self):
        d = cx((1, 1), [(1, 0), (2, 0)], [(1, 1)])
        s = saturate_by_B(d)
        assert s.facets == (frozenset({V(1, 0), V(2, 0)}),)

    def test_fixed_points(self, fig1, c34):
        assert saturate_by_B(fig1.complex) == fig1.complex
        assert saturate_by_B(c34.complex) == c34.complex
        assert is_saturated(fig1.complex)

    def test_all_irrelevant(self):
        d = cx((1, 1), [(1, 0)], [(2, 1)])
        assert saturate_by_B(d).is_void
        assert not is_saturated(d)

    def test_idempotent(self):
        rng = random.Random(59)
        for _ in range(20):
            d = random_complex(Shape((1, 1, 1)), rng)
            s = saturate_by_B(d)
            assert saturate_by_B(s) == s


class TestCodim:
    def test_fixtures(self, fig1, c34):
        assert codim(fig1.complex) == 2
        assert codim_affine(fig1.complex) == 2
        assert codim(c34.complex) == 2
        assert codim_affine(c34.complex) == 2

    def test_balanced_codim_is_weight(self):
        rng = random.Random(61)
        for entries in [(1, 1), (2, 1), (2, 2), (1, 0)]:
            shape = Shape(entries)
            for _ in range(5):
                d = random_balanced(shape, rng)
                assert codim(d) == shape.weight

    def test_no_relevant_facets(self):
        with pytest.raises(EmptyVarietyError):
            codim(cx((1, 1), [(1, 0)]))

    def test_codim_affine_void(self):
        with pytest.raises(EmptyVarietyError):
            codim_affine(SimplicialComplex.from_facets(Shape((1,)), []))

    def test_codim_affine_empty_face(self):
        assert codim_affine(cx((1, 1), [])) == 4

    def test_saturated_pure_agreement(self):
        rng = random.Random(67)
        count = 0
        while count < 25:
            d = saturate_by_B(random_complex(Shape((2, 1)), rng))
            if d.is_void or not d.is_pure():
                continue
            count += 1
            assert codim(d) == codim_affine(d)


class TestSaturationOracle:
    def test_unit_stays_unit(self):
        out = saturation_oracle([(0, 0)], [(1, 0), (0, 1)])
        assert out == [(0, 0)]

    def test_zero_stays_zero(self):
        assert saturation_oracle([], [(1, 0)]) == []

    def test_saturating_by_itself(self):
        gens = [(1, 1, 0), (0, 1, 1)]
        out = saturation_oracle(gens, gens)
        assert out == [(0, 0, 0)]

    def test_worked_example(self):
        # I = (x2, ab-type gens) on four variables a, b, c, d with B the
        # balanced pairs of (1,1): saturation drops to (b, d).
        i_gens = [(0, 0, 0, 1), (1, 1, 0, 0), (0, 1, 1, 0)]
        b_gens = [(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)]
        out = saturation_oracle(i_gens, b_gens)
        assert sorted(out) == [(0, 0, 0, 1), (0, 1, 0, 0)]

    def test_validation(self):
        with pytest.raises(ValueError):
            saturation_oracle([(1, 0)], [])
        with pytest.raises(ValueError):
            saturation_oracle([(1,)], [(1, 0)])
        with pytest.raises(ValueError):
            saturation_oracle([(-1, 0)], [(1, 0)])

    def test_degree_bound(self):
        with pytest.raises(DegreeBoundError):
            saturation_oracle([(1, 1)], [(1, 0)], degree_bound=1)

    def test_matches_combinatorial_on_samples(self):
        rng = random.Random(71)
        shape = Shape((2, 1))
        n = shape.num_vertices
        b = IrrelevantIdealB(shape)
        b_vecs = [tuple(m >> i & 1 for i in range(n)) for m in b.generator_masks]
        for _ in range(20):
            d = random_complex(shape, rng)
            if d.is_void:
                continue
            got = saturation_oracle(exponent_vectors(ideal_of(d)), b_vecs)
            want = exponent_vectors(ideal_of(saturate_by_B(d)))
            assert sorted(got) == sorted(want)

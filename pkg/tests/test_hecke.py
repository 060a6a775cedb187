from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torushom.errors import IndexOutOfRange
from torushom.hecke import (
    DELTA, LAMBDA, MU, Z, HeckeElement, braid_element, closure_components, hecke_mul_gen,
    hecke_mul_gen_inv, homfly_braid_closure, homfly_knot_polynomial, homfly_torus, jones_trace,
    parse_braid, reduced_word,
)
from torushom.ratfield import ONE, LaurentPoly, RatFunc

H = HeckeElement


def aq(a, q, c=1):
    return LaurentPoly.monomial((a, q, 0), c)


def words(max_strands=4, max_len=6):
    @st.composite
    def build(draw):
        n = draw(st.integers(2, max_strands))
        gens = st.integers(1, n - 1).flatmap(lambda g: st.sampled_from([g, -g]))
        return draw(st.lists(gens, max_size=max_len)), n
    return build()


def elements(n):
    from itertools import permutations

    basis = list(permutations(range(1, n + 1)))
    coeff = st.builds(lambda a, q, c: aq(a, q, c), st.integers(-1, 1), st.integers(-2, 2),
                      st.integers(-3, 3).filter(bool))
    return st.dictionaries(st.sampled_from(basis), coeff, min_size=1, max_size=3).map(
        lambda d: H(n, d))


class TestAlgebra:
    def test_generator_examples(self):
        s1 = H.basis((2, 1))
        assert hecke_mul_gen(H.one(2), 1) == s1
        assert hecke_mul_gen(s1, 1) == s1.scale(DELTA) + H.one(2)

    def test_braid_relations(self):
        assert braid_element([1, 2, 1], 3) == braid_element([2, 1, 2], 3)
        assert braid_element([1, 3], 4) == braid_element([3, 1], 4)
        assert braid_element([1, -1], 2) == H.one(2)

    def test_index_errors(self):
        with pytest.raises(IndexOutOfRange):
            hecke_mul_gen(H.one(2), 2)
        with pytest.raises(IndexOutOfRange):
            homfly_braid_closure([3], 3)

    def test_reduced_word(self):
        perm = (3, 1, 2)
        x = H.one(3)
        for i in reduced_word(perm):
            x = hecke_mul_gen(x, i)
        assert x == H.basis(perm)

    @settings(max_examples=60, deadline=None)
    @given(elements(3), elements(3), elements(3))
    def test_associative(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    @settings(max_examples=60, deadline=None)
    @given(words(), st.data())
    def test_inverse_generator(self, wn, data):
        word, n = wn
        i = data.draw(st.integers(1, n - 1))
        x = braid_element(word, n)
        assert hecke_mul_gen_inv(hecke_mul_gen(x, i), i) == x


class TestTrace:
    def test_params(self):
        assert LAMBDA * MU * Z == RatFunc(1)
        assert MU * (Z - RatFunc(DELTA)) == LAMBDA

    def test_values(self):
        assert jones_trace(H.one(3)) == RatFunc(1)
        assert jones_trace(H.basis((2, 1))) == Z
        t3 = braid_element([1, 1, 1], 2)
        assert jones_trace(t3) == RatFunc(DELTA * DELTA + ONE) * Z + RatFunc(DELTA)

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from([3, 4]).flatmap(lambda n: st.tuples(elements(n), elements(n))))
    def test_symmetry(self, xy):
        x, y = xy
        assert jones_trace(x * y) == jones_trace(y * x)


class TestHomfly:
    def test_unknot(self):
        assert homfly_braid_closure([], 1) == RatFunc(1)
        assert homfly_braid_closure([1], 2) == RatFunc(1)
        assert homfly_braid_closure([-1, 2], 3) == RatFunc(1)

    def test_trefoil(self):
        expect = aq(2, 2) + aq(2, -2) - aq(4, 0)
        assert homfly_knot_polynomial([1, 1, 1], 2) == expect
        assert homfly_torus(3, 2) == RatFunc(expect)

    def test_hopf_link_denominator(self):
        hopf = homfly_braid_closure([1, 1], 2)
        assert closure_components([1, 1], 2) == 2
        assert hopf.den == (((0, 2, 0), 1),)

    @pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 6) for n in range(m + 1, 6)])
    def test_torus_symmetry(self, m, n):
        assert homfly_torus(m, n) == homfly_torus(n, m)

    @settings(max_examples=60, deadline=None)
    @given(words(), st.data())
    def test_skein(self, wn, data):
        word, n = wn
        pos = data.draw(st.integers(0, len(word)))
        g = data.draw(st.integers(1, n - 1))
        plus = homfly_braid_closure(word[:pos] + [g] + word[pos:], n)
        minus = homfly_braid_closure(word[:pos] + [-g] + word[pos:], n)
        zero = homfly_braid_closure(word, n)
        a, a_inv = RatFunc(aq(1, 0)), RatFunc(aq(-1, 0))
        assert a_inv * plus - a * minus == RatFunc(DELTA) * zero

    @settings(max_examples=60, deadline=None)
    @given(words(max_strands=3), st.sampled_from([1, -1]))
    def test_markov_stabilization(self, wn, sign):
        word, n = wn
        assert homfly_braid_closure(word + [sign * n], n + 1) == homfly_braid_closure(word, n)

    @settings(max_examples=60, deadline=None)
    @given(words(), st.data())
    def test_conjugation(self, wn, data):
        word, n = wn
        g = data.draw(st.integers(1, n - 1))
        assert homfly_braid_closure([g] + word + [-g], n) == homfly_braid_closure(word, n)

    def test_parse(self):
        assert parse_braid("1,1,-2") == [1, 1, -2]
        assert parse_braid(" ") == []

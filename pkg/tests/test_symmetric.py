from __future__ import annotations

import pytest
from hypothesis import given, settings

from strategies import permutations
from torushom.errors import InvalidState, SizeMismatch
from torushom.symmetric import Permutation, State, Theory, compose, cyc, state, tr_perm

P = Permutation


def test_tr_perm_examples():
    assert tr_perm(P.identity(3)) == P.identity(2)
    assert tr_perm(P((1, 3, 2))) == P.identity(2)
    assert tr_perm(P((2, 3, 1))) == P((2, 1))
    with pytest.raises(ValueError):
        tr_perm(P(()))


@pytest.mark.parametrize("n", range(1, 9))
def test_tr_perm_identity(n):
    assert tr_perm(P.identity(n)) == P.identity(n - 1)


def test_cyc_examples():
    assert cyc(0) == P(()) and cyc(1) == P.identity(1)
    assert cyc(2) == P((2, 1))
    assert cyc(3) == P((2, 3, 1))
    c = cyc(3)
    assert compose(c, compose(c, c)).is_identity()


def test_compose_examples():
    x = P((3, 1, 2))
    assert compose(x, P.identity(3)) == x
    assert compose(P((2, 1)), P((2, 1))).is_identity()
    assert compose(cyc(3), cyc(3)) == P((3, 1, 2))
    with pytest.raises(SizeMismatch):
        compose(P((1,)), P((1, 2)))


def test_permutation_validation_and_text():
    with pytest.raises(ValueError):
        P((1, 1))
    assert P.parse("2,3,1") == P((2, 3, 1))
    assert str(P((2, 3, 1))) == "2,3,1"
    assert P.parse("") == P(())


@settings(max_examples=200)
@given(permutations(min_size=1))
def test_tr_perm_restricts_when_fixed(sigma):
    n = sigma.size
    t = tr_perm(sigma)
    assert t.size == n - 1
    if sigma(n) == n:
        assert t.images == sigma.images[:-1]
    else:
        # the strand into n is rerouted to wherever n goes
        assert t(sigma.inverse()(n)) == sigma(n)


@settings(max_examples=200)
@given(permutations(min_size=3, max_size=3), permutations(min_size=3, max_size=3),
       permutations(min_size=3, max_size=3))
def test_compose_associative(a, b, c):
    assert compose(a, compose(b, c)) == compose(compose(a, b), c)
    assert compose(a, a.inverse()).is_identity()


@settings(max_examples=100)
@given(permutations(min_size=1, max_size=7))
def test_cycle_order(sigma):
    l = sigma.size
    x = sigma
    for _ in range(l):
        x = compose(cyc(l), x)
    assert x == sigma


def test_state_validation():
    s = state("10", "100")
    assert s.l == 1 and s.theory is Theory.COLUMN
    with pytest.raises(InvalidState):
        State("1", "0", P(()))
    with pytest.raises(InvalidState):
        State("11", "11", P((1,)))
    with pytest.raises(InvalidState):
        State("12", "11", P((1, 2)))
    assert state("", "").key() == ("column", "", "", ())
    assert state("1", "1", theory="row").key()[0] == "row"

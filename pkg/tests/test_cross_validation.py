"""Cross-checks between independent implementations of the same laws.

The braid-relation chains exist twice: once as sparse operator
compositions (ybops) and once as set-map compositions on tuples
(setsol).  Linearizing a point map must preserve every verdict, so any
convention drift between the two implementations shows up here.
"""

import itertools
from fractions import Fraction

import braidforge.setsol as ss
import braidforge.tensor as T
import braidforge.ybops as yb

ONE = Fraction(1)


def permutation_operator_of_map(s: ss.SetNMap) -> T.TensorOperator:
    """The linear extension of a set map, as a 0/1 operator."""
    shp = T.power_shape(s.size, s.arity)
    entries = {}
    for args in itertools.product(range(s.size), repeat=s.arity):
        entries[(shp.flat(s.apply(args)), shp.flat(args))] = ONE
    return T.TensorOperator(shp, shp, entries)


def bijective_tables(m, n):
    perms = list(itertools.permutations(range(m)))
    contexts = list(itertools.product(range(m), repeat=n - 1))
    for combo in itertools.product(perms, repeat=len(contexts)):
        cols = dict(zip(contexts, combo))
        yield lambda *a, c=cols: a[1:] + (c[a[1:]][a[0]],)


def test_operator_chain_matches_set_chain_on_induced_maps():
    # all 16 bijective-column ternary tables on two points, both sides
    for fn in bijective_tables(2, 3):
        s = ss.from_function(2, 3, fn)
        profile = ss.check_set_nsolution(s)
        op = permutation_operator_of_map(s)
        assert yb.verify_nybe(op, 3, "right").holds == profile.satisfies_right
        assert yb.verify_nybe(op, 3, "left").holds == profile.satisfies_left


def test_operator_chain_matches_set_chain_on_raw_binary_maps():
    # every bijective binary map on two points (4! = 24 of them)
    inputs = list(itertools.product(range(2), repeat=2))
    for image in itertools.permutations(inputs):
        s = ss.SetNMap(2, 2, tuple(image))
        profile = ss.check_set_nsolution(s)
        op = permutation_operator_of_map(s)
        report = yb.verify_ybe(op)
        assert report.holds == profile.satisfies_right


def test_flip_map_linearizes_to_cyclic_operator():
    s = ss.flip_map(3, 3)
    assert permutation_operator_of_map(s) == yb.cyclic_operator(3, 3)

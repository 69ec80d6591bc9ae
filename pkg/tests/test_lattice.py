"""Ortholattice tests against a powerset oracle.

The B3 index set must become the subset lattice of {1,2,3}; the oracle
tables here are computed with frozenset algebra and compared entry by entry.
"""

import itertools
import unittest

from helpers import make_b3, make_o6_indexset
from hhsforge.indexset import IndexSet, check_property, relation, wedge, ORTHOGONAL
from hhsforge.lattice import (
    BOTTOM, LatticeError, OrthoLattice,
    boolean_lattice, dump_lattice, format_embedding, horizontal_sum,
    is_orthomodular, product_lattice, search_orthomodular_extension,
    to_ortholattice,
)

UNIVERSE = frozenset("123")


def subset_id(a):
    return "".join(sorted(a)) if a else BOTTOM


def powerset_tables():
    subs = [frozenset(c) for r in range(4)
            for c in itertools.combinations("123", r)]
    meet, join, comp = {}, {}, {}
    for a in subs:
        comp[subset_id(a)] = subset_id(UNIVERSE - a)
        for b in subs:
            meet[(subset_id(a), subset_id(b))] = subset_id(a & b)
            join[(subset_id(a), subset_id(b))] = subset_id(a | b)
    return meet, join, comp


class TestB3Lattice(unittest.TestCase):

    def setUp(self):
        self.s = make_b3()
        self.lat = to_ortholattice(self.s)

    def test_elements(self):
        self.assertEqual(len(self.lat.elements), 8)
        self.assertEqual(self.lat.bottom, BOTTOM)
        self.assertEqual(self.lat.top, "123")

    def test_tables_match_powerset_oracle(self):
        meet, join, comp = powerset_tables()
        for a in self.lat.elements:
            self.assertEqual(self.lat.comp[a], comp[a], msg=a)
            for b in self.lat.elements:
                self.assertEqual(self.lat.meet(a, b), meet[(a, b)], msg=(a, b))
                self.assertEqual(self.lat.join(a, b), join[(a, b)], msg=(a, b))

    def test_meet_extends_wedge(self):
        for u in self.s.domains:
            for v in self.s.domains:
                w = wedge(self.s, u, v)
                self.assertEqual(self.lat.meet(u, v), BOTTOM if w is None else w)

    def test_relation_preserved(self):
        # nesting reads off the meet table, orthogonality off the complement
        for u in self.s.domains:
            for v in self.s.domains:
                self.assertEqual(self.s.nested(u, v), self.lat.meet(u, v) == u)
                if u != v:
                    self.assertEqual(relation(self.s, u, v) == ORTHOGONAL,
                                     self.lat.leq(u, self.lat.comp[v]))

    def test_orthomodular(self):
        rep = is_orthomodular(self.lat)
        self.assertTrue(rep.verdict)
        self.assertEqual(rep.name, "orthomodular")

    def test_agrees_with_strong_orth(self):
        self.assertTrue(check_property(self.s, "strong_orth").verdict)

    def test_search_returns_identity(self):
        res = search_orthomodular_extension(self.lat, 10)
        self.assertTrue(res["found"])
        self.assertEqual(res["target"], "self")
        self.assertEqual(res["mapping"], {x: x for x in self.lat.elements})
        self.assertEqual(res["targets_examined"], 0)
        text = format_embedding(res)
        self.assertIn("target self", text)
        self.assertIn("map 1 -> 1", text)

    def test_dump_lines(self):
        text = dump_lattice(self.lat)
        lines = text.splitlines()
        self.assertEqual(lines[0], "# ortholattice, 8 elements")
        self.assertEqual(lines[1], "element Empty key=0 covers= complement=123")
        self.assertIn("element 1 key=1 covers=Empty complement=23", lines)
        self.assertIn("element 12 key=4 covers=1,2 complement=3", lines)
        self.assertEqual(lines[-1], "element 123 key=7 covers=12,13,23 complement=Empty")


class TestSingleDomainLattice(unittest.TestCase):

    def test_two_elements(self):
        lat = to_ortholattice(IndexSet(["S"], [], []))
        self.assertEqual(sorted(lat.elements), [BOTTOM, "S"])
        self.assertTrue(is_orthomodular(lat).verdict)
        self.assertEqual(lat.meet("S", BOTTOM), BOTTOM)
        self.assertEqual(lat.join("S", BOTTOM), "S")


class TestHexagon(unittest.TestCase):

    def setUp(self):
        self.s = make_o6_indexset()
        self.lat = to_ortholattice(self.s)

    def test_is_valid_ortholattice(self):
        self.assertEqual(len(self.lat.elements), 6)
        self.assertEqual(self.lat.meet("ap", "bp"), BOTTOM)
        self.assertEqual(self.lat.join("a", "b"), "S")

    def test_not_orthomodular(self):
        rep = is_orthomodular(self.lat)
        self.assertFalse(rep.verdict)
        self.assertEqual(rep.witness, ("a", "bp"))
        # replay the witness: (a' meet bp) join a stops at a
        u, v = rep.witness
        self.assertEqual(
            self.lat.join(self.lat.meet(self.lat.comp[u], v), u), "a")

    def test_agrees_with_strong_orth(self):
        self.assertFalse(check_property(self.s, "strong_orth").verdict)

    def test_search_finds_boolean_cube(self):
        res = search_orthomodular_extension(self.lat, 10)
        self.assertTrue(res["found"])
        self.assertEqual(res["target"], "boolean(3)")
        self.assertEqual(res["targets_examined"], 2)
        self.assertGreater(res["assignments_tried"], 0)
        self._replay(self.lat, res)
        text = format_embedding(res)
        self.assertTrue(text.startswith("target boolean(3)"))
        self.assertEqual(len([l for l in text.splitlines() if l.startswith("map ")]), 6)

    def _replay(self, lat, res):
        target = boolean_lattice(3)
        f = res["mapping"]
        self.assertEqual(len(set(f.values())), len(lat.elements))
        for x in lat.elements:
            for y in lat.elements:
                self.assertEqual(lat.leq(x, y), target.leq(f[x], f[y]), msg=(x, y))
                self.assertEqual(lat.orthogonal(x, y),
                                 target.orthogonal(f[x], f[y]), msg=(x, y))

    def test_search_not_found_when_small(self):
        res = search_orthomodular_extension(self.lat, 6)
        self.assertFalse(res["found"])
        self.assertEqual(res["targets_examined"], 1)
        self.assertTrue(format_embedding(res).startswith("NotFound targets=1"))

    def test_search_below_own_size(self):
        res = search_orthomodular_extension(self.lat, 4)
        self.assertFalse(res["found"])
        self.assertEqual(res["targets_examined"], 0)
        self.assertEqual(res["assignments_tried"], 0)

    def test_cap(self):
        with self.assertRaises(LatticeError) as cm:
            search_orthomodular_extension(self.lat, 25)
        self.assertIn("cap exceeded", str(cm.exception))


class TestTargetFamily(unittest.TestCase):

    def test_boolean_lattices_orthomodular(self):
        for k in (1, 2, 3, 4):
            self.assertTrue(is_orthomodular(boolean_lattice(k)).verdict, msg=k)

    def test_horizontal_sum_orthomodular(self):
        mo2 = horizontal_sum([2, 2])
        self.assertEqual(len(mo2.elements), 6)
        self.assertTrue(is_orthomodular(mo2).verdict)
        self.assertTrue(is_orthomodular(horizontal_sum([3, 2])).verdict)

    def test_product_orthomodular(self):
        p = product_lattice(boolean_lattice(1), horizontal_sum([2, 2]))
        self.assertEqual(len(p.elements), 12)
        self.assertTrue(is_orthomodular(p).verdict)

    def test_hexagon_is_not_a_target(self):
        down = {"Empty": {"Empty"}, "a": {"Empty", "a"}, "b": {"Empty", "b"},
                "ap": {"Empty", "b", "ap"}, "bp": {"Empty", "a", "bp"},
                "S": {"Empty", "a", "b", "ap", "bp", "S"}}
        comp = {"Empty": "S", "S": "Empty", "a": "ap", "ap": "a",
                "b": "bp", "bp": "b"}
        direct = OrthoLattice(down, comp, "S", "Empty")
        self.assertFalse(is_orthomodular(direct).verdict)
        # the direct construction and the index-set route agree
        via = to_ortholattice(make_o6_indexset())
        self.assertEqual(direct.meet_table, via.meet_table)
        self.assertEqual(direct.join_table, via.join_table)
        self.assertEqual(direct.comp, via.comp)


class TestToOrtholatticeErrors(unittest.TestCase):

    def test_rejects_non_orthogonal_set(self):
        s = IndexSet(["S", "A"], [("A", "S")], [])
        with self.assertRaises(LatticeError) as cm:
            to_ortholattice(s)
        self.assertIn("not an orthogonal set, witness", str(cm.exception))
        self.assertIn("A", str(cm.exception))

    def test_rejects_bottom_collision(self):
        s = IndexSet(["S", "Empty", "X"],
                     [("Empty", "S"), ("X", "S")], [("Empty", "X")])
        with self.assertRaises(LatticeError) as cm:
            to_ortholattice(s)
        self.assertIn("collides", str(cm.exception))


if __name__ == "__main__":
    unittest.main()

"""Combinatorial models of hierarchically hyperbolic spaces.

The package is organised around one pipeline: a cube complex (or a hand-written
file) yields an index set of domains with nesting and orthogonality
(:mod:`hhsforge.indexset`, :mod:`hhsforge.cubes`), the index set plus
coordinate graphs form a finite hierarchical model (:mod:`hhsforge.model`),
and the model is blown up into a simplicial complex with an extra W-graph
whose simplex classes, links and coordinate graphs can be checked against the
combinatorial axioms (:mod:`hhsforge.chhs`).  Order-theoretic consequences
live in :mod:`hhsforge.lattice`.
"""

__version__ = "0.1.0"

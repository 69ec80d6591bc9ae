"""Shared fixtures for the test modules."""

from hhsforge.indexset import IndexSet

B3_IDS = ["1", "2", "3", "12", "13", "23", "123"]


def make_b3():
    """Nonempty subsets of {1,2,3}: nesting is inclusion, orthogonality is
    disjointness."""
    nest = [("1", "12"), ("1", "13"), ("2", "12"), ("2", "23"),
            ("3", "13"), ("3", "23"), ("12", "123"), ("13", "123"),
            ("23", "123")]
    orth = [("1", "23"), ("2", "13"), ("3", "12")]
    return IndexSet(B3_IDS, nest, orth)


def make_o6_indexset():
    """Two chains a < bp and b < ap under a common top, with a orth ap and
    b orth bp: the standard six-element non-orthomodular ortholattice once a
    bottom is added."""
    return IndexSet(["S", "a", "b", "ap", "bp"],
                    [("a", "bp"), ("b", "ap"), ("ap", "S"), ("bp", "S")],
                    [("a", "ap"), ("b", "bp")])


def make_chain_model():
    """Two-domain chain with a long top coordinate path and one sparse
    minimal projection target, so product regions are nowhere dense before
    augmentation."""
    import networkx as nx
    from hhsforge.model import HHSModel

    index = IndexSet(["S", "V"], [("V", "S")], [])
    points = ["p%02d" % i for i in range(12)]
    cs = ["c%02d" % i for i in range(12)]
    space = nx.path_graph(12)
    space = nx.relabel_nodes(space, dict(enumerate(points)))
    gs = nx.path_graph(12)
    gs = nx.relabel_nodes(gs, dict(enumerate(cs)))
    gv = nx.Graph()
    gv.add_node("v0")
    pi = {}
    for i, p in enumerate(points):
        pi[("S", p)] = {cs[i]}
        pi[("V", p)] = {"v0"}
    rho_up = {("V", "S"): {"c11"}}
    rho_down = {("V", "S"): dict((c, {"v0"}) for c in cs)}
    return HHSModel(index, space, {"S": gs, "V": gv}, pi, rho_up, rho_down)


def make_product_model():
    """Two orthogonal path factors over a 3x3 grid of points."""
    import networkx as nx
    from hhsforge.model import HHSModel

    index = IndexSet(["S", "A", "B"], [("A", "S"), ("B", "S")], [("A", "B")])
    space = nx.Graph()
    for i in range(3):
        for j in range(3):
            space.add_node("%d_%d" % (i, j))
    for i in range(3):
        for j in range(3):
            if i + 1 < 3:
                space.add_edge("%d_%d" % (i, j), "%d_%d" % (i + 1, j))
            if j + 1 < 3:
                space.add_edge("%d_%d" % (i, j), "%d_%d" % (i, j + 1))
    ga = nx.path_graph(3)
    ga = nx.relabel_nodes(ga, {0: "a0", 1: "a1", 2: "a2"})
    gb = nx.path_graph(3)
    gb = nx.relabel_nodes(gb, {0: "b0", 1: "b1", 2: "b2"})
    gs = nx.Graph()
    gs.add_node("s0")
    pi = {}
    for i in range(3):
        for j in range(3):
            p = "%d_%d" % (i, j)
            pi[("A", p)] = {"a%d" % i}
            pi[("B", p)] = {"b%d" % j}
            pi[("S", p)] = {"s0"}
    rho_up = {("A", "S"): {"s0"}, ("B", "S"): {"s0"}}
    rho_down = {("A", "S"): {"s0": {"a1"}}, ("B", "S"): {"s0": {"b1"}}}
    return HHSModel(index, space, {"S": gs, "A": ga, "B": gb},
                    pi, rho_up, rho_down)


def make_transverse_model():
    """Two transverse domains seeing disjoint halves of a path of points."""
    import networkx as nx
    from hhsforge.model import HHSModel

    index = IndexSet(["S", "U", "V"], [("U", "S"), ("V", "S")], [])
    points = ["q%d" % i for i in range(6)]
    space = nx.path_graph(6)
    space = nx.relabel_nodes(space, dict(enumerate(points)))
    gu = nx.path_graph(6)
    gu = nx.relabel_nodes(gu, dict((i, "u%d" % i) for i in range(6)))
    gv = nx.path_graph(6)
    gv = nx.relabel_nodes(gv, dict((i, "v%d" % i) for i in range(6)))
    gs = nx.Graph()
    gs.add_node("s0")
    pi = {}
    for i, p in enumerate(points):
        pi[("U", p)] = {"u%d" % min(i, 3)}
        pi[("V", p)] = {"v%d" % max(i - 2, 0)}
        pi[("S", p)] = {"s0"}
    rho_up = {("U", "S"): {"s0"}, ("V", "S"): {"s0"},
              ("U", "V"): {"v0"}, ("V", "U"): {"u3"}}
    rho_down = {("U", "S"): {"s0": {"u0"}}, ("V", "S"): {"s0": {"v0"}}}
    return HHSModel(index, space, {"S": gs, "U": gu, "V": gv},
                    pi, rho_up, rho_down)


def make_behrstock_model():
    """Nested pair U inside V with a third transverse domain W whose
    relative projections from U and V sit two apart."""
    import networkx as nx
    from hhsforge.model import HHSModel

    index = IndexSet(["S", "V", "U", "W"],
                     [("U", "V"), ("V", "S"), ("W", "S")], [])
    points = ["z%d" % i for i in range(5)]
    space = nx.path_graph(5)
    space = nx.relabel_nodes(space, dict(enumerate(points)))
    gs = nx.Graph()
    gs.add_node("s0")
    gu = nx.Graph()
    gu.add_node("u0")
    gv = nx.path_graph(3)
    gv = nx.relabel_nodes(gv, {0: "v0", 1: "v1", 2: "v2"})
    gw = nx.path_graph(5)
    gw = nx.relabel_nodes(gw, dict((i, "w%d" % i) for i in range(5)))
    pi = {}
    for i, p in enumerate(points):
        pi[("S", p)] = {"s0"}
        pi[("U", p)] = {"u0"}
        pi[("V", p)] = {"v%d" % min(i, 2)}
        pi[("W", p)] = {"w%d" % i}
    rho_up = {("U", "V"): {"v0"}, ("U", "S"): {"s0"}, ("V", "S"): {"s0"},
              ("W", "S"): {"s0"}, ("U", "W"): {"w0"}, ("W", "U"): {"u0"},
              ("V", "W"): {"w2"}, ("W", "V"): {"v0"}}
    rho_down = {("U", "V"): {"v0": {"u0"}, "v1": {"u0"}, "v2": {"u0"}},
                ("U", "S"): {"s0": {"u0"}},
                ("V", "S"): {"s0": {"v0"}},
                ("W", "S"): {"s0": {"w0"}}}
    return HHSModel(index, space, {"S": gs, "U": gu, "V": gv, "W": gw},
                    pi, rho_up, rho_down)


def make_star_model():
    """One minimal domain with a four-vertex coordinate path under a
    point-like top."""
    import networkx as nx
    from hhsforge.model import HHSModel

    index = IndexSet(["S", "V"], [("V", "S")], [])
    points = ["p%d" % i for i in range(4)]
    space = nx.path_graph(4)
    space = nx.relabel_nodes(space, dict(enumerate(points)))
    gv = nx.path_graph(4)
    gv = nx.relabel_nodes(gv, dict((i, "v%d" % i) for i in range(4)))
    gs = nx.Graph()
    gs.add_node("s0")
    pi = {}
    for i, p in enumerate(points):
        pi[("V", p)] = {"v%d" % i}
        pi[("S", p)] = {"s0"}
    rho_up = {("V", "S"): {"s0"}}
    rho_down = {("V", "S"): {"s0": {"v0"}}}
    return HHSModel(index, space, {"S": gs, "V": gv}, pi, rho_up, rho_down)


def make_rect_model():
    """Two orthogonal factors with coordinate paths of lengths 3 and 4
    over a 3x4 grid of points."""
    import networkx as nx
    from hhsforge.model import HHSModel

    index = IndexSet(["S", "A", "B"], [("A", "S"), ("B", "S")], [("A", "B")])
    space = nx.Graph()
    for i in range(3):
        for j in range(4):
            space.add_node("%d_%d" % (i, j))
    for i in range(3):
        for j in range(4):
            if i + 1 < 3:
                space.add_edge("%d_%d" % (i, j), "%d_%d" % (i + 1, j))
            if j + 1 < 4:
                space.add_edge("%d_%d" % (i, j), "%d_%d" % (i, j + 1))
    ga = nx.path_graph(3)
    ga = nx.relabel_nodes(ga, dict((i, "a%d" % i) for i in range(3)))
    gb = nx.path_graph(4)
    gb = nx.relabel_nodes(gb, dict((j, "b%d" % j) for j in range(4)))
    gs = nx.Graph()
    gs.add_node("s0")
    pi = {}
    for i in range(3):
        for j in range(4):
            p = "%d_%d" % (i, j)
            pi[("A", p)] = {"a%d" % i}
            pi[("B", p)] = {"b%d" % j}
            pi[("S", p)] = {"s0"}
    rho_up = {("A", "S"): {"s0"}, ("B", "S"): {"s0"}}
    rho_down = {("A", "S"): {"s0": {"a1"}}, ("B", "S"): {"s0": {"b1"}}}
    return HHSModel(index, space, {"S": gs, "A": ga, "B": gb},
                    pi, rho_up, rho_down)

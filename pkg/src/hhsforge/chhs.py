"""Blow-ups of hierarchical models and the graphs of their maximal simplices.

The blow-up X of a model replaces every minimal domain by a cone over the
vertex set of its coordinate graph and joins the cones of orthogonal
domains.  A maximal simplex of X picks one coordinate per member of a
maximal orthogonal family of minimal domains; these simplices are the
vertices of a second graph W whose edges join simplices with
coordinatewise-close canonical tuples, where the threshold loosens as the
two supports share more domains.  The checkers in this module measure,
exactly and exhaustively on the finite data, the conditions that let the
pair (X, W) stand in for the original model: bounded link chains,
hyperbolic and undistorted class graphs, extension of common nestings,
fill-in of link edges, and the quality of the realisation map.
"""

import itertools
import math

import networkx as nx

from .cubes import four_point_delta
from .indexset import (
    CONTAINS,
    EQUAL,
    NESTED_IN,
    ORTHOGONAL,
    TRANSVERSE,
    PropertyReport,
    complexity,
    depth_stats,
    orth_complement,
    relation,
    split_info,
)
from .model import ConsistentTuple, HHSModel, check_consistency, realise

APEX = "*"

SHAPE_POINT_OR_JOIN = "point-or-join"
SHAPE_ALL_EDGES = "all-edges"
SHAPE_ALMOST_MAXIMAL = "almost-maximal"


class ChhsError(ValueError):
    pass


def vertex_name(v):
    return "%s|%s" % v


def _set_name(vs):
    return "+".join(vertex_name(v) for v in sorted(vs)) or "-"


# -- blow-up -----------------------------------------------------------


class BlowupGraph(object):
    """Cones over the minimal-domain coordinate graphs, joined along
    orthogonality.

    base is the graph on the minimal domains with orthogonality edges,
    blown is the cone-and-join graph, and p retracts every blown vertex
    (domain, coordinate) onto its domain.  Simplices of the blown graph
    are cliques; the apex of the cone over U is the vertex (U, "*").
    """

    def __init__(self, model, base, blown, p):
        self.model = model
        self.base = base
        self.blown = blown
        self.p = dict(p)
        self.minimal = tuple(sorted(base.nodes()))
        self.adj = dict((v, frozenset(blown[v])) for v in blown.nodes())
        self._simplices = None
        self._links = None
        self._classes = None
        self._class_of = None
        self._maximal = None

    def apex(self, u):
        return (u, APEX)

    def cone(self, u):
        return tuple(v for v in sorted(self.blown.nodes()) if self.p[v] == u)


def blow_up(m):
    """Cone every minimal domain over its coordinate vertices and join
    the cones of orthogonal domains."""
    minimal = m.index.minimal_domains()
    if not minimal:
        raise ChhsError("model has no minimal domains")
    base = nx.Graph()
    base.add_nodes_from(minimal)
    for u, v in itertools.combinations(minimal, 2):
        if v in m.index.orth[u]:
            base.add_edge(u, v)
    blown = nx.Graph()
    p = {}
    for u in minimal:
        nodes = sorted(m.coord_graphs[u].nodes())
        if APEX in nodes:
            raise ChhsError("apex marker collides, witness %s" % u)
        p[(u, APEX)] = u
        blown.add_node((u, APEX))
        for c in nodes:
            p[(u, c)] = u
            blown.add_edge((u, APEX), (u, c))
    for u, v in base.edges():
        for a in [w for w in p if p[w] == u]:
            for b in [w for w in p if p[w] == v]:
                blown.add_edge(a, b)
    x = BlowupGraph(m, base, blown, p)
    _validate_blowup(x)
    return x


def _validate_blowup(x):
    for u, v in x.base.edges():
        for a in x.cone(u):
            for b in x.cone(v):
                if b not in x.adj[a]:
                    raise ChhsError("join incomplete, witness %s %s"
                                    % (vertex_name(a), vertex_name(b)))
    for u in x.minimal:
        cone = [v for v in x.cone(u) if v != x.apex(u)]
        for a, b in itertools.combinations(cone, 2):
            if b in x.adj[a]:
                raise ChhsError("cone base not discrete, witness %s %s"
                                % (vertex_name(a), vertex_name(b)))
    top = max(len(c) for c in nx.find_cliques(x.blown))
    families = max(len(c) for c in nx.enumerate_all_cliques(x.base))
    if top > 2 * families:
        raise ChhsError("dimension exceeds the orthogonal width, witness %d" % top)


# -- simplex calculus --------------------------------------------------


def check_simplex(x, delta):
    delta = frozenset(delta)
    for v in delta:
        if v not in x.adj:
            raise ChhsError("unknown vertex, witness %s" % (v,))
    for a, b in itertools.combinations(sorted(delta), 2):
        if b not in x.adj[a]:
            raise ChhsError("not a clique, witness %s %s"
                            % (vertex_name(a), vertex_name(b)))
    return delta


def support(x, delta):
    return frozenset(x.p[v] for v in delta)


def pieces(x, delta):
    out = {}
    for v in delta:
        out.setdefault(x.p[v], set()).add(v)
    return dict((u, frozenset(vs)) for u, vs in out.items())


def link_of_set(x, s):
    """Vertices outside s adjacent to all of s; the whole graph for s
    empty.  Applied to a simplex this is its link, applied to a link it
    gives the double link used by orthogonality."""
    s = frozenset(s)
    if not s:
        return frozenset(x.adj)
    out = None
    for v in s:
        out = x.adj[v] if out is None else out & x.adj[v]
    return out - s


def link(x, delta):
    return link_of_set(x, check_simplex(x, delta))


def star(x, delta):
    delta = check_simplex(x, delta)
    return link_of_set(x, delta) | delta


def simplices(x):
    """Every clique of the blown graph, the empty one included."""
    if x._simplices is None:
        found = [frozenset()]
        for clique in nx.enumerate_all_cliques(x.blown):
            found.append(frozenset(clique))
        found.sort(key=lambda s: (len(s), sorted(s)))
        x._simplices = tuple(found)
        x._links = dict((s, link_of_set(x, s)) for s in found)
    return x._simplices


def simplex_link(x, delta):
    simplices(x)
    if delta in x._links:
        return x._links[delta]
    return link(x, delta)


class SimplexClass(object):
    """All simplices sharing one link, with their saturation."""

    def __init__(self, cid, rep, members, lk, maximal):
        self.id = cid
        self.rep = rep
        self.members = members
        self.link = lk
        self.maximal = maximal
        self.saturation = frozenset(v for s in members for v in s)

    def __repr__(self):
        return "SimplexClass(%s, rep=%s)" % (self.id, _set_name(self.rep))


def simplex_classes(x):
    if x._classes is None:
        groups = {}
        for s in simplices(x):
            groups.setdefault(x._links[s], []).append(s)
        records = []
        for lk in groups:
            members = sorted(groups[lk], key=lambda s: (len(s), sorted(s)))
            records.append((members[0], members, lk))
        records.sort(key=lambda r: (len(r[0]), sorted(r[0])))
        classes = []
        class_of = {}
        for i, (rep, members, lk) in enumerate(records):
            c = SimplexClass("q%d" % i, rep, tuple(members), lk, not lk)
            classes.append(c)
            for s in members:
                class_of[s] = c
        x._classes = tuple(classes)
        x._class_of = class_of
    return x._classes


def class_of(x, delta):
    delta = check_simplex(x, delta)
    simplex_classes(x)
    if delta not in x._class_of:
        raise ChhsError("unknown simplex, witness %s" % _set_name(delta))
    return x._class_of[delta]


def saturation(x, delta):
    return class_of(x, delta).saturation


def _cone_link(x, u, piece):
    """Link of a piece inside its own cone: the apex sees the base, a
    base point sees the apex, an edge sees nothing."""
    if len(piece) == 2:
        return frozenset()
    v = next(iter(piece))
    if v == x.apex(u):
        return frozenset(w for w in x.cone(u) if w != v)
    return frozenset([x.apex(u)])


def _decomposed_link(x, delta):
    bar = support(x, delta)
    out = set()
    for u in x.minimal:
        if u in bar:
            continue
        if all(v in x.base[u] for v in bar):
            out.update(x.cone(u))
    for u, piece in pieces(x, delta).items():
        out.update(_cone_link(x, u, piece))
    return frozenset(out)


def _shape(x, delta):
    """Deterministic trichotomy tag, following the join-term count."""
    bar = support(x, delta)
    terms = []
    bar_term = frozenset(v for u in x.minimal if u not in bar
                         and all(w in x.base[u] for w in bar)
                         for v in x.cone(u))
    if bar_term:
        terms.append(("bar", bar_term))
    apex_piece = None
    for u in sorted(bar):
        part = _cone_link(x, u, pieces(x, delta)[u])
        if part:
            terms.append(("cone", part))
            if pieces(x, delta)[u] == frozenset([x.apex(u)]):
                apex_piece = u
    if len(terms) >= 2:
        return SHAPE_POINT_OR_JOIN
    if not terms:
        return SHAPE_ALL_EDGES
    kind, part = terms[0]
    if kind == "bar":
        return SHAPE_ALL_EDGES
    if apex_piece is not None:
        return SHAPE_ALMOST_MAXIMAL
    return SHAPE_POINT_OR_JOIN


def link_ops(x, delta):
    """Link, star, saturation, class and shape of a simplex, with the
    join decomposition recomputed and compared against the direct link."""
    delta = check_simplex(x, delta)
    direct = link_of_set(x, delta)
    decomposed = _decomposed_link(x, delta)
    if direct != decomposed:
        raise ChhsError("link decomposition mismatch, witness %s"
                        % _set_name(delta))
    c = class_of(x, delta)
    return {
        "link": direct,
        "star": direct | delta,
        "saturation": c.saturation,
        "class_id": c.id,
        "shape": _shape(x, delta),
    }


def class_relation(x, a, b):
    """Relation of two simplex classes, read off link containments."""
    if a.maximal or b.maximal:
        raise ChhsError("class is maximal, witness %s"
                        % (a.id if a.maximal else b.id))
    if a.link == b.link:
        return EQUAL
    if a.link <= b.link:
        return NESTED_IN
    if b.link <= a.link:
        return CONTAINS
    if b.link <= link_of_set(x, a.link):
        return ORTHOGONAL
    return TRANSVERSE


# -- maximal simplices and canonical tuples ----------------------------


def maximal_simplices(x):
    """Support-first enumeration: a maximal orthogonal family of minimal
    domains, then one coordinate per member."""
    if x._maximal is None:
        supports = sorted(tuple(sorted(c)) for c in nx.find_cliques(x.base))
        out = []
        m = x.model
        for bar in supports:
            pools = [sorted(m.coord_graphs[u].nodes()) for u in bar]
            for choice in itertools.product(*pools):
                s = set((u, APEX) for u in bar)
                s.update(zip(bar, choice))
                out.append(frozenset(s))
        x._maximal = tuple(out)
    return x._maximal


def b_sigma(m, sigma):
    """Canonical tuple of a maximal simplex: the prescribed coordinate
    on the support, the union of the relative projections elsewhere."""
    bar = {}
    for u, c in sigma:
        bar.setdefault(u, set()).add(c)
    coords = {}
    for u in sorted(bar):
        if u not in m.index.down or m.index.down[u] != frozenset([u]):
            raise ChhsError("support not minimal, witness %s" % u)
        cs = bar[u] - set([APEX])
        if APEX not in bar[u] or len(cs) != 1:
            raise ChhsError("piece is not a full cone edge, witness %s" % u)
        coords[u] = frozenset(cs)
    for u, v in itertools.combinations(sorted(bar), 2):
        if relation(m.index, u, v) != ORTHOGONAL:
            raise ChhsError("support not orthogonal, witness %s %s" % (u, v))
    for u in m.index.minimal_domains():
        if u not in bar and all(v in m.index.orth[u] for v in bar):
            raise ChhsError("simplex not maximal, witness %s" % u)
    for v in m.index.domains:
        if v in coords:
            continue
        acc = set()
        for u in sorted(bar):
            if relation(m.index, u, v) in (NESTED_IN, TRANSVERSE):
                acc |= m.rho_up[(u, v)]
        if not acc:
            raise ChhsError("no projection target, witness %s" % v)
        if m.diam(v, acc) > 10 * m.E:
            raise ChhsError("coordinate too spread, witness %s" % v)
        coords[v] = frozenset(acc)
    return ConsistentTuple(m.index.domains, coords)


# -- thresholds --------------------------------------------------------


def _modulus(m, t):
    """Largest coordinate jump between points at space distance <= t."""
    cache = getattr(m, "_modulus_cache", None)
    if cache is None:
        cache = m._modulus_cache = {}
    if t not in cache:
        best = 0
        pts = m.points
        for i, z in enumerate(pts):
            for y in pts[i + 1:]:
                if m.zdist(z, y) > t:
                    continue
                for u in m.index.domains:
                    d = m.dist(u, m.pi[(u, z)], m.pi[(u, y)])
                    if d > best:
                        best = d
        cache[t] = best
    return cache[t]


def _minimal_families(s):
    g = nx.Graph()
    minimal = s.minimal_domains()
    g.add_nodes_from(minimal)
    for u, v in itertools.combinations(minimal, 2):
        if v in s.orth[u]:
            g.add_edge(u, v)
    return sorted(tuple(sorted(c)) for c in nx.find_cliques(g))


def coverage_constant(m):
    """How far a point can sit, in coordinates, from the best maximal
    orthogonal family projecting near it."""
    families = _minimal_families(m.index)
    worst = 0
    for z in m.points:
        best = None
        for fam in families:
            gap = 0
            for v in fam:
                for w in m.index.domains:
                    if relation(m.index, v, w) in (NESTED_IN, TRANSVERSE):
                        gap = max(gap, m.dist(w, m.pi[(w, z)],
                                              m.rho_up[(v, w)]))
            if best is None or gap < best:
                best = gap
        worst = max(worst, best)
    return worst


def thresholds(m):
    """Edge thresholds measured from the model.

    c0 is the family-coverage constant, m0 the coordinate modulus at the
    matching space scale; the three lambdas are the loosest scales at
    which same-support completion, product-region adjacency and
    realisation backtracking stay edge-compatible.  The default lambda
    is their maximum, floored at one.
    """
    cache = getattr(m, "_threshold_cache", None)
    if cache is None:
        c0 = coverage_constant(m)
        m0 = _modulus(m, 2 * c0 + 2)
        lam0 = 2 * _modulus(m, c0)
        lam1 = _modulus(m, 4 * c0 + 1)
        lam2 = m0 + 2 * m.E
        cache = m._threshold_cache = {
            "C0": c0,
            "M0": m0,
            "lambda0": lam0,
            "lambda1": lam1,
            "lambda2": lam2,
            "default": max(lam0, lam1, lam2, 1),
        }
    return cache


# -- the W graph -------------------------------------------------------


def _realise_support_first(m, bar, b):
    """Point matching the support coordinates as well as possible, the
    remaining coordinates breaking ties; deterministic on equal scores."""
    bar = sorted(bar)
    rest = [u for u in m.index.domains if u not in bar]
    best = None
    for z in m.points:
        on = max(m.dist(u, m.pi[(u, z)], b.coords[u]) for u in bar)
        off = max([m.dist(u, m.pi[(u, z)], b.coords[u]) for u in rest] + [0])
        key = (on, off, z)
        if best is None or key < best:
            best = key
    return best[2]


class WGraph(object):
    """Maximal simplices of the blow-up, joined when their canonical
    tuples are close in every coordinate graph.

    The threshold for one pair is (k + 1) * lam, where k is the co-level
    of the orthogonal complement of the common support: disjoint
    supports get k = 0, a shared maximal family counts as deep as a
    minimal domain.
    """

    def __init__(self, model, blowup, lam, simplices_, tuples, graph, consts):
        self.model = model
        self.blowup = blowup
        self.lam = lam
        self.simplices = simplices_
        self.index = dict((s, i) for i, s in enumerate(simplices_))
        self.tuples = tuples
        self.graph = graph
        self.c0 = consts["C0"]
        self.m0 = consts["M0"]
        self.lambda0 = consts["lambda0"]
        self.lambda1 = consts["lambda1"]
        self.lambda2 = consts["lambda2"]
        self.points = tuple(
            _realise_support_first(model,
                                   [u for u, c in s if c != APEX], b)
            for s, b in zip(simplices_, tuples))
        self._aug = None
        self._coord = {}
        self._wdist = None

    def simplex_name(self, i):
        parts = {}
        for u, c in self.simplices[i]:
            if c != APEX:
                parts[u] = c
        return " ".join("%s=%s" % (u, parts[u]) for u in sorted(parts))

    def wdist(self, i, j):
        if self._wdist is None:
            self._wdist = dict(nx.all_pairs_shortest_path_length(self.graph))
        return self._wdist[i].get(j, math.inf)


def colevel_of_complement(m, parts):
    """Co-level of the orthogonal complement of a pairwise orthogonal
    family; the empty family points at the whole space, a maximal one
    leaves nothing and counts as deep as a minimal domain."""
    comp = orth_complement(m.index, sorted(parts), m.index.top)
    if comp is None:
        return complexity(m.index)
    return depth_stats(m.index, comp)["co_level"]


def build_w(m, x, lam=None):
    if lam is None:
        lam = thresholds(m)["default"]
    if lam <= 0:
        raise ChhsError("lambda must be positive")
    sigmas = maximal_simplices(x)
    tuples = tuple(b_sigma(m, s) for s in sigmas)
    supports = [support(x, s) for s in sigmas]
    graph = nx.Graph()
    graph.add_nodes_from(range(len(sigmas)))
    levels = {}
    for i, j in itertools.combinations(range(len(sigmas)), 2):
        common = supports[i] & supports[j]
        if common not in levels:
            levels[common] = colevel_of_complement(m, common)
        bound = (levels[common] + 1) * lam
        if _tuple_gap(m, tuples[i], tuples[j], bound) <= bound:
            graph.add_edge(i, j)
    return WGraph(m, x, lam, sigmas, tuples, graph, thresholds(m))


def _tuple_gap(m, a, b, stop=None):
    worst = 0
    for u in m.index.domains:
        d = m.dist(u, a.coords[u], b.coords[u])
        if d > worst:
            worst = d
            if stop is not None and worst > stop:
                return worst
    return worst


def augmented_graph(w):
    """The blown graph plus a complete join over every W-edge."""
    if w._aug is None:
        g = nx.Graph()
        g.add_nodes_from(w.blowup.blown.nodes())
        g.add_edges_from(w.blowup.blown.edges())
        for i, j in w.graph.edges():
            for a in w.simplices[i]:
                for b in w.simplices[j]:
                    if a != b:
                        g.add_edge(a, b)
        w._aug = g
    return w._aug


def _closest_point_projection(dist, targets, sources):
    """Vertices of the target set within one of the least distance from
    the source set; empty when nothing is reachable."""
    best = math.inf
    for s in sources:
        row = dist.get(s, {})
        for t in targets:
            d = row.get(t, math.inf)
            if d < best:
                best = d
    if best is math.inf:
        return frozenset()
    out = set()
    for t in targets:
        d = min(dist.get(s, {}).get(t, math.inf) for s in sources)
        if d <= best + 1:
            out.add(t)
    return frozenset(out)


def coordinate_graph(w, c):
    """Complement graph, class graph and projection tables of one
    non-maximal simplex class."""
    x = w.blowup
    if isinstance(c, str):
        match = [d for d in simplex_classes(x) if d.id == c]
        if not match:
            raise ChhsError("unknown class, witness %s" % c)
        c = match[0]
    if c.maximal:
        raise ChhsError("class is maximal, witness %s" % c.id)
    if c.id not in w._coord:
        aug = augmented_graph(w)
        keep = sorted(set(aug.nodes()) - c.saturation)
        y = nx.Graph(aug.subgraph(keep))
        dist = dict(nx.all_pairs_shortest_path_length(y))
        cg = nx.Graph(y.subgraph(sorted(c.link)))
        pi = {}
        for i, sigma in enumerate(w.simplices):
            meet = sorted(sigma - c.saturation)
            if not meet:
                raise ChhsError("maximal simplex swallowed, witness %s %s"
                                % (c.id, w.simplex_name(i)))
            spread = max(dist[a].get(b, math.inf)
                         for a in meet for b in meet)
            if spread > 1:
                raise ChhsError("maximal simplex split, witness %s %s"
                                % (c.id, w.simplex_name(i)))
            pi[i] = _closest_point_projection(dist, sorted(c.link), meet)
        rho_spots = {}
        rho_maps = {}
        for d in simplex_classes(x):
            if d.maximal or d.id == c.id:
                continue
            rel = class_relation(x, d, c)
            if rel in (TRANSVERSE, NESTED_IN):
                sat = sorted(d.saturation - c.saturation)
                rho_spots[d.id] = _closest_point_projection(
                    dist, sorted(c.link), sat) if sat else frozenset()
            if rel == CONTAINS:
                table = {}
                for v in sorted(d.link):
                    if v in c.saturation:
                        table[v] = frozenset()
                    else:
                        table[v] = _closest_point_projection(
                            dist, sorted(c.link), [v])
                rho_maps[d.id] = table
        members = sorted(c.link)
        diam_in_y = 0
        for a, b in itertools.combinations(members, 2):
            diam_in_y = max(diam_in_y, dist[a].get(b, math.inf))
        if len(members) < 2:
            diam_in_y = 0
        w._coord[c.id] = {
            "Y": y,
            "C": cg,
            "pi": pi,
            "rho_spots": rho_spots,
            "rho_maps": rho_maps,
            "diam": _graph_diameter(cg),
            "diam_in_y": diam_in_y,
        }
    return w._coord[c.id]


def _graph_diameter(g):
    if g.number_of_nodes() <= 1:
        return 0
    if not nx.is_connected(g):
        return math.inf
    return nx.diameter(g)


def _component_delta(g):
    """Exact thin-quadruple constant, componentwise on a disconnected
    graph."""
    best = 0.0
    for comp in nx.connected_components(g):
        sub = nx.Graph(g.subgraph(comp))
        if sub.number_of_nodes() >= 2:
            best = max(best, four_point_delta(sub))
    return best


# -- the verification suite --------------------------------------------


class ChhsReport(object):
    """Measured constants and verdicts for one (X, W) pair."""

    def __init__(self, complexity_, delta, per_class, conditions,
                 wedges, containers, qi):
        self.complexity = complexity_
        self.delta = delta
        self.per_class = per_class
        self.conditions = conditions
        self.simplicial_wedges = wedges
        self.simplicial_containers = containers
        self.qi = qi

    def verdicts(self):
        out = [self.conditions[k] for k in sorted(self.conditions)]
        out.append(self.simplicial_wedges)
        out.append(self.simplicial_containers)
        return out

    def lines(self):
        out = ["complexity=%d" % self.complexity, "delta=%g" % self.delta]
        for cid in sorted(self.per_class, key=lambda c: int(c[1:])):
            row = self.per_class[cid]
            out.append("class=%s rep=%s delta=%g qi_k=%s qi_c=%s"
                       " diam=%s diam_in_y=%s"
                       % (cid, row["rep"], row["delta"], row["qi_k"],
                          row["qi_c"], row["diam"], row["diam_in_y"]))
        for report in self.verdicts():
            out.append(report.line())
        for key in sorted(self.qi):
            out.append("qi_%s=%s" % (key, self.qi[key]))
        return out


def _embedding_constants(cg, dist_y, max_k=10):
    """Least (K, C) with the class metric below K * ambient + C."""
    rows = []
    table = dict(nx.all_pairs_shortest_path_length(cg))
    for a, b in itertools.combinations(sorted(cg.nodes()), 2):
        dc = table[a].get(b, math.inf)
        dy = dist_y[a].get(b, math.inf)
        if dc is math.inf and dy is not math.inf:
            return None
        if dy is math.inf:
            continue
        rows.append((dc, dy))
    best = None
    for k in range(1, max_k + 1):
        c = 0
        for dc, dy in rows:
            c = max(c, dc - k * dy)
        if best is None or (c, k) < best:
            best = (c, k)
    return (best[1], best[0]) if best else (1, 0)


def check_chhs(m, w):
    """Measure the four structural conditions plus the simplicial wedge
    and container properties, with per-class constants."""
    x = w.blowup
    classes = simplex_classes(x)
    nonmax = [c for c in classes if not c.maximal]

    by_size = sorted(classes, key=lambda c: (len(c.link), sorted(c.link)))
    chain = {}
    best_chain = 0
    for c in by_size:
        chain[c.id] = 1
        for d in by_size:
            if len(d.link) >= len(c.link):
                break
            if d.link < c.link:
                chain[c.id] = max(chain[c.id], chain[d.id] + 1)
        best_chain = max(best_chain, chain[c.id])
    cond1 = PropertyReport("bounded_chains", True, None)
    cond1.constant = best_chain

    per_class = {}
    delta = 0.0
    bad_embed = None
    for c in nonmax:
        record = coordinate_graph(w, c)
        d = _component_delta(record["C"])
        dist_y = dict(nx.all_pairs_shortest_path_length(record["Y"]))
        qi = _embedding_constants(record["C"], dist_y)
        if qi is None and bad_embed is None:
            bad_embed = c.id
        per_class[c.id] = {
            "rep": _set_name(c.rep),
            "delta": d,
            "qi_k": qi[0] if qi else math.inf,
            "qi_c": qi[1] if qi else math.inf,
            "diam": record["diam"],
            "diam_in_y": record["diam_in_y"],
        }
        delta = max(delta, d)
    cond2 = PropertyReport("hyperbolic_links", bad_embed is None,
                           None if bad_embed is None else (bad_embed,))
    cond2.constant = delta

    classes_above = {}
    for s in simplices(x):
        c = class_of(x, s)
        for r in range(len(s) + 1):
            for sub in itertools.combinations(sorted(s), r):
                classes_above.setdefault(frozenset(sub), set()).add(c.id)
    by_id = dict((c.id, c) for c in classes)
    cond3 = PropertyReport("common_nesting_extension", True, None)
    for dcls in nonmax:
        gammas = [g for g in nonmax
                  if g.link <= dcls.link and per_class[g.id]["diam"] >= delta]
        if not gammas:
            continue
        for sigma in simplices(x):
            scls = class_of(x, sigma)
            if scls.maximal:
                continue
            found = [g for g in gammas if g.link <= scls.link]
            if not found:
                continue
            ok = False
            for pid in sorted(classes_above.get(sigma, ())):
                pl = by_id[pid].link
                if pl <= dcls.link and all(g.link <= pl for g in found):
                    ok = True
                    break
            if not ok:
                cond3 = PropertyReport(
                    "common_nesting_extension", False,
                    (dcls.id, class_of(x, sigma).id, found[0].id))
                break
        if not cond3.verdict:
            break

    contains = {}
    for i, sigma in enumerate(w.simplices):
        for v in sigma:
            contains.setdefault(v, set()).add(i)
    wadj = dict((i, set(w.graph[i])) for i in w.graph.nodes())
    cond4 = PropertyReport("link_edges_fill_in", True, None)
    for delta_s in simplices(x):
        lk = simplex_link(x, delta_s)
        for v, u in itertools.combinations(sorted(lk), 2):
            if u in x.adj[v]:
                continue
            around_v = contains.get(v, set())
            around_u = contains.get(u, set())
            if not any(wadj[i] & around_u for i in around_v):
                continue
            over_v = [i for i in around_v
                      if delta_s <= w.simplices[i]]
            over_u = [j for j in around_u
                      if delta_s <= w.simplices[j]]
            if not any(wadj[i] & set(over_u) for i in over_v):
                cond4 = PropertyReport(
                    "link_edges_fill_in", False,
                    (_set_name(delta_s), vertex_name(v), vertex_name(u)))
                break
        if not cond4.verdict:
            break

    links = dict((c.link, c.id) for c in classes)
    wedges = PropertyReport("simplicial_wedges", True, None)
    for sigma in simplices(x):
        lk_sigma = simplex_link(x, sigma)
        for dcls in classes:
            want = lk_sigma & dcls.link
            pid = links.get(want)
            if pid is not None and pid in classes_above.get(sigma, ()):
                continue
            wedges = PropertyReport("simplicial_wedges", False,
                                    (_set_name(sigma), dcls.id))
            break
        if not wedges.verdict:
            break

    containers = PropertyReport("simplicial_containers", True, None)
    for c in classes:
        double = link_of_set(x, c.link)
        if double not in links:
            containers = PropertyReport("simplicial_containers", False,
                                        (c.id,))
            break

    qi = realisation_qi(m, w)
    return ChhsReport(best_chain, delta, per_class,
                      {1: cond1, 2: cond2, 3: cond3, 4: cond4},
                      wedges, containers, qi)


# -- realisation quality -----------------------------------------------


def realisation_qi(m, w, max_k=10):
    """Lipschitz, surjectivity and lower quasi-isometry constants of the
    realisation map, measured exhaustively."""
    lip = 0
    for i, j in w.graph.edges():
        lip = max(lip, m.zdist(w.points[i], w.points[j]))
    surj = 0
    for z in m.points:
        surj = max(surj, min(m.zdist(z, p) for p in w.points))
    defect = 0
    for i, b in enumerate(w.tuples):
        z = w.points[i]
        defect = max(defect, max(m.dist(u, m.pi[(u, z)], b.coords[u])
                                 for u in m.index.domains))
    rows = []
    broken = False
    for i, j in itertools.combinations(range(len(w.simplices)), 2):
        dw = w.wdist(i, j)
        if dw is math.inf:
            broken = True
            continue
        rows.append((dw, m.zdist(w.points[i], w.points[j])))

    def fit(pairs):
        # cheapest slope-plus-constant budget, ties to the flatter slope
        best = None
        for k in range(1, max_k + 1):
            c = max([a - k * b for a, b in pairs] + [0])
            if best is None or (c + k, k) < (best[1] + best[0], best[0]):
                best = (k, c)
        return best

    lower = None
    upper = None
    if not broken and rows:
        lower = fit([(dw, dz) for dw, dz in rows])
        upper = fit([(dz, dw) for dw, dz in rows])
    elif not broken:
        lower = upper = (1, 0)
    return {
        "lipschitz": lip,
        "surjectivity_defect": surj,
        "realisation_defect": defect,
        "lower": lower,
        "upper": upper,
        "quasi_isometry": lower is not None,
    }


# -- constructive link intersection ------------------------------------


def _weak_complement(s, parts):
    """Least domain orthogonal to the parts that swallows every minimal
    domain orthogonal to them; None when no minimal qualifies."""
    mins = [u for u in s.minimal_domains()
            if all(v in s.orth[u] for v in parts)]
    if not mins:
        return None
    need = frozenset(mins)
    cands = [t for t in s.domains
             if need <= s.down[t] and all(v in s.orth[t] for v in parts)]
    least = sorted(t for t in cands
                   if not any(r != t and r in s.down[t] for r in cands))
    if len(least) != 1:
        raise ChhsError("weak complement not unique, witness %s"
                        % " ".join(least))
    return least[0]


def _weak_wedge_pair(s, a, b):
    """Least domain under both that contains all their common minimal
    domains; None when they share nothing."""
    lows = s.lower_bounds(a, b)
    if not lows:
        return None
    mins = frozenset(w for w in lows if s.down[w] == frozenset([w]))
    cands = [t for t in lows if mins <= s.down[t]]
    least = sorted(t for t in cands
                   if not any(r != t and r in s.down[t] for r in cands))
    if len(least) != 1:
        raise ChhsError("weak wedge not unique, witness %s" % " ".join(least))
    return least[0]


def _oc(s, parts, ambient):
    if ambient is None:
        return None
    return orth_complement(s, sorted(parts), ambient)


def _bar_split(m, bar_sigma, bar_delta):
    """The peeled and filled supports that decompose the common link of
    two supports: returns (phi, psi, theta)."""
    s = m.index
    minimal = frozenset(s.minimal_domains())
    phi = sorted(u for u in bar_delta if u not in bar_sigma
                 and all(v in s.orth[u] for v in bar_sigma))
    y = _oc(s, sorted(set(bar_sigma) | set(phi)), s.top)
    comp_sigma = _oc(s, sorted(bar_sigma), s.top)
    comp_delta = _oc(s, sorted(bar_delta), s.top)
    if comp_sigma is None or comp_delta is None:
        w = None
    else:
        w = _weak_wedge_pair(s, comp_sigma, comp_delta)
    psi = []
    theta = []
    while True:
        if w is None or w == y:
            break
        fill = sorted(v for v in s.down[y] & minimal if v in s.orth[w])
        if fill:
            theta.append(fill[0])
            y = _oc(s, [fill[0]], y)
            continue
        info = split_info(s, w)
        if not info["split"]:
            raise ChhsError("no orthogonal inside, witness %s %s" % (w, y))
        sam = info["samaritans"][0]
        psi.append(sam)
        w = _oc(s, [sam], w)
        y = _oc(s, [sam], y)
    if w is None:
        while y is not None:
            mins = sorted(s.down[y] & minimal)
            if not mins:
                break
            theta.append(mins[0])
            y = _oc(s, [mins[0]], y)
    return tuple(phi), tuple(psi), tuple(theta)


def _cone_refine(m, x, bar, psi):
    """Grow the support while its free side is a cone, keeping the
    decomposition balanced."""
    s = m.index
    bar = list(bar)
    psi = list(psi)
    while True:
        lk = [u for u in x.minimal if u not in bar
              and all(v in s.orth[u] for v in bar)]
        point = None
        for v in sorted(lk):
            if all(t in s.orth[v] for t in lk if t != v):
                point = v
                break
        if point is None:
            return tuple(bar), tuple(psi)
        bar.append(point)
        psi.append(point)


def _extend_piece(x, u, piece):
    """Complete a piece to a full cone edge, deterministically."""
    if len(piece) == 2:
        return piece
    v = next(iter(piece))
    if v == x.apex(u):
        others = sorted(w for w in x.cone(u) if w != v)
        return piece | frozenset([others[0]])
    return piece | frozenset([x.apex(u)])


def intersection_links_constructive(x, m, sigma, delta):
    """Extend one simplex so that its link, joined with a padding
    simplex, is exactly the intersection of the two links; verified
    against the direct intersection before returning."""
    sigma = check_simplex(x, sigma)
    delta = check_simplex(x, delta)
    goal = link_of_set(x, sigma) & link_of_set(x, delta)
    if link_of_set(x, sigma) <= link_of_set(x, delta):
        return {"pi": sigma, "psi": frozenset()}
    bar_sigma = sorted(support(x, sigma))
    bar_delta = sorted(support(x, delta))
    phi, psi_bar, theta = _bar_split(m, bar_sigma, bar_delta)
    star_delta = set(bar_delta)
    star_delta.update(u for u in x.minimal
                      if all(v in m.index.orth[u] for v in bar_delta)
                      and u not in bar_delta)
    sp = pieces(x, sigma)
    dp = pieces(x, delta)
    out = set()
    for u in bar_sigma:
        if u not in star_delta:
            out |= _extend_piece(x, u, sp[u])
        elif u in dp:
            if _cone_link(x, u, sp[u]) <= _cone_link(x, u, dp[u]):
                out |= sp[u]
            else:
                out |= _extend_piece(x, u, sp[u])
        else:
            out |= sp[u]
    for u in phi:
        out |= dp[u] if u in dp else frozenset([x.apex(u)])
    for u in psi_bar:
        out.add(x.apex(u))
    for u in theta:
        out |= _extend_piece(x, u, frozenset([x.apex(u)]))
    pi = frozenset(out)
    psi = frozenset(x.apex(u) for u in psi_bar)
    check_simplex(x, pi)
    got = link_of_set(x, pi)
    if not sigma <= pi:
        raise ChhsError("extension lost the simplex, witness %s"
                        % _set_name(sigma))
    if (got | psi) != goal or (got & psi):
        raise ChhsError("decomposition mismatch, witness %s %s"
                        % (_set_name(sigma), _set_name(delta)))
    for a in psi:
        if not got <= x.adj[a]:
            raise ChhsError("padding does not join the link, witness %s"
                            % vertex_name(a))
    return {"pi": pi, "psi": psi}


# -- constructive link-edge fill-in ------------------------------------


def _greedy_maximal_support(m, seed):
    s = m.index
    out = sorted(seed)
    for u in s.minimal_domains():
        if u not in out and all(v in s.orth[u] for v in out):
            out.append(u)
            out.sort()
    return tuple(out)


def _shared_coordinate(m, x, delta, u):
    dp = pieces(x, delta)
    if u in dp:
        base = sorted(c for (d, c) in dp[u] if c != APEX)
        if base:
            return base[0]
    return sorted(m.coord_graphs[u].nodes())[0]


def _assemble_maximal(m, x, bar, coords):
    out = set()
    for u in bar:
        out.add(x.apex(u))
        out.add((u, coords[u]))
    return frozenset(out)


def adjacent_extensions(w, delta, v, u, i, j):
    """Complete delta * v and delta * u to adjacent maximal simplices,
    steering by the supports of the two given adjacent witnesses."""
    m = w.model
    x = w.blowup
    delta = check_simplex(x, delta)
    lk = link_of_set(x, delta)
    if v not in lk or u not in lk:
        raise ChhsError("vertex outside the link, witness %s"
                        % vertex_name(v if v not in lk else u))
    if u in x.adj[v]:
        raise ChhsError("vertices already adjacent, witness %s %s"
                        % (vertex_name(v), vertex_name(u)))
    sv, su = w.simplices[i], w.simplices[j]
    if v not in sv or u not in su or j not in w.graph[i]:
        raise ChhsError("witness simplices do not apply, witness %d %d"
                        % (i, j))
    dv, du = x.p[v], x.p[u]
    s = m.index

    if dv == du:
        bar = _greedy_maximal_support(m, support(x, delta) | {dv})
        coords = dict((t, _shared_coordinate(m, x, delta, t)) for t in bar)
        cv = dict(coords)
        cu = dict(coords)
        if v != x.apex(dv):
            cv[dv] = v[1]
        if u != x.apex(du):
            cu[du] = u[1]
        return (_assemble_maximal(m, x, bar, cv),
                _assemble_maximal(m, x, bar, cu))

    bar_sigma = sorted(support(x, sv) & support(x, su))
    bar_delta = sorted(support(x, delta))
    phi, psi_bar, theta = _bar_split(m, bar_sigma, bar_delta)
    lam_bar, _ = _cone_refine(m, x, tuple(bar_delta) + phi + psi_bar + theta,
                              psi_bar)
    lk_bar = [t for t in x.minimal if t not in lam_bar
              and all(r in s.orth[t] for r in lam_bar)]
    if dv not in lk_bar or du not in lk_bar:
        raise ChhsError("support fell outside the common link, witness %s %s"
                        % (dv, du))
    psi_v = sorted(t for t in support(x, sv) if t in lk_bar)
    psi_u = sorted(t for t in support(x, su) if t in lk_bar)

    def complete(side_psi, side_sigma, side_vertex):
        seed = tuple(sorted(set(lam_bar) | set(side_psi)))
        comp = _oc(s, seed, s.top)
        omega = []
        omega_coords = {}
        if comp is not None:
            theta_side = sorted(set(support(x, side_sigma))
                                - set(bar_sigma) - set(side_psi))
            scope = sorted(s.down[comp])
            coords = {}
            for t in scope:
                if t in theta_side:
                    coords[t] = frozenset(
                        [c for (d, c) in pieces(x, side_sigma)[t]
                         if c != APEX])
                else:
                    acc = set()
                    for r in theta_side:
                        if relation(s, r, t) in (NESTED_IN, TRANSVERSE):
                            acc |= m.rho_up[(r, t)]
                    if acc:
                        coords[t] = frozenset(acc)
            if coords:
                target = realise(
                    m, ConsistentTuple(sorted(coords), coords))["point"]
                minimal = sorted(t for t in scope
                                 if s.down[t] == frozenset([t]))
                fam_graph = nx.Graph()
                fam_graph.add_nodes_from(minimal)
                for a, b in itertools.combinations(minimal, 2):
                    if b in s.orth[a]:
                        fam_graph.add_edge(a, b)
                fams = sorted(tuple(sorted(c))
                              for c in nx.find_cliques(fam_graph))
                best = None
                for fam in fams:
                    score = max(m.dist(t, m.pi[(t, target)],
                                       coords.get(t, m.pi[(t, target)]))
                                for t in fam)
                    if best is None or score < best[0]:
                        best = (score, fam)
                omega = list(best[1])
                for t in omega:
                    pool = coords.get(t)
                    omega_coords[t] = (sorted(pool)[0] if pool else
                                       sorted(m.coord_graphs[t].nodes())[0])
        bar = tuple(sorted(set(lam_bar) | set(side_psi) | set(omega)))
        coords_out = {}
        for t in bar:
            if t in side_psi:
                coords_out[t] = next(c for (d, c) in pieces(x, side_sigma)[t]
                                     if c != APEX)
            elif t in omega_coords:
                coords_out[t] = omega_coords[t]
            else:
                coords_out[t] = _shared_coordinate(m, x, delta, t)
        return _assemble_maximal(m, x, bar, coords_out)

    pi_v = complete(psi_v, sv, v)
    pi_u = complete(psi_u, su, u)
    return pi_v, pi_u


# -- identity suite ----------------------------------------------------


def check_link_decomposition(x):
    for s in simplices(x):
        if x._links[s] != _decomposed_link(x, s):
            return PropertyReport("link_decomposition", False,
                                  (_set_name(s),))
    return PropertyReport("link_decomposition", True, None)


def check_shape_tags(x):
    """Every simplex gets one tag, and the tag survives an independent
    recomputation from join structure."""
    for s in simplices(x):
        tag = _shape(x, s)
        lk = x._links[s]
        if tag == SHAPE_POINT_OR_JOIN:
            if len(lk) != 1 and not _is_join(x, lk):
                return PropertyReport("shape_tags", False, (_set_name(s),))
        elif tag == SHAPE_ALL_EDGES:
            if any(len(piece) != 2 for piece in pieces(x, s).values()):
                return PropertyReport("shape_tags", False, (_set_name(s),))
        else:
            bar = support(x, s)
            apexes = [u for u, piece in pieces(x, s).items()
                      if piece == frozenset([x.apex(u)])]
            crowd = [u for u in x.minimal if u not in bar
                     and all(v in x.base[u] for v in bar)]
            if len(apexes) != 1 or crowd:
                return PropertyReport("shape_tags", False, (_set_name(s),))
    return PropertyReport("shape_tags", True, None)


def _is_join(x, vs):
    """A vertex set spans a nontrivial join exactly when the complement
    of its induced graph is disconnected."""
    if len(vs) < 2:
        return False
    comp = nx.complement(x.blown.subgraph(sorted(vs)))
    return not nx.is_connected(comp)


def check_containment_reversal(x):
    """Bigger simplices land in smaller classes."""
    classes = simplex_classes(x)
    del classes
    for s in simplices(x):
        for t in simplices(x):
            if s < t:
                a, b = x._class_of[t], x._class_of[s]
                if a.maximal or b.maximal:
                    continue
                if class_relation(x, a, b) not in (NESTED_IN, EQUAL):
                    return PropertyReport("containment_reversal", False,
                                          (_set_name(s), _set_name(t)))
    return PropertyReport("containment_reversal", True, None)


def _bar_simplices(x):
    out = [()]
    for clique in nx.enumerate_all_cliques(x.base):
        out.append(tuple(sorted(clique)))
    return out


def _bar_link(x, bar):
    return frozenset(u for u in x.minimal if u not in bar
                     and all(v in x.base[u] for v in bar))


def check_link_complements(x):
    """Link containment between supports matches nesting of their weak
    complements."""
    m = x.model
    bars = _bar_simplices(x)
    comps = {}
    for bar in bars:
        comps[bar] = _weak_complement(m.index, bar)
    for a in bars:
        for b in bars:
            left = _bar_link(x, a) <= _bar_link(x, b)
            ca, cb = comps[a], comps[b]
            if ca is None:
                right = True
            elif cb is None:
                right = False
            else:
                right = m.index.nested(ca, cb)
            if left != right:
                return PropertyReport("link_complements", False,
                                      (",".join(a) or "-",
                                       ",".join(b) or "-"))
    return PropertyReport("link_complements", True, None)


def check_complement_dichotomy(x):
    """The weak complement of a support either is the full complement or
    is split, and a split one cones the link."""
    m = x.model
    s = m.index
    for bar in _bar_simplices(x):
        if not bar:
            continue
        weak = _weak_complement(s, bar)
        full = _oc(s, bar, s.top)
        if weak == full:
            continue
        if weak is None or not split_info(s, weak)["split"]:
            return PropertyReport("complement_dichotomy", False,
                                  (",".join(bar),))
        lk = _bar_link(x, bar)
        if not any(all(v in s.orth[u] for v in lk if v != u) for u in lk):
            return PropertyReport("complement_dichotomy", False,
                                  (",".join(bar),))
    return PropertyReport("complement_dichotomy", True, None)


def check_tuple_spread(m, x):
    worst = 0
    for sigma in maximal_simplices(x):
        b = b_sigma(m, sigma)
        for u in m.index.domains:
            worst = max(worst, m.diam(u, b.coords[u]))
    verdict = worst <= 10 * m.E
    report = PropertyReport("tuple_spread", verdict,
                            None if verdict else ("%d" % worst,))
    report.constant = worst
    return report


def check_tuple_consistency(m, x):
    worst = 0
    witness = None
    for sigma in maximal_simplices(x):
        rep = check_consistency(m, b_sigma(m, sigma), kappa=20 * m.E)
        if rep.constant > worst:
            worst = rep.constant
            witness = rep.witness
    verdict = worst <= 20 * m.E
    report = PropertyReport("tuple_consistency", verdict,
                            None if verdict else witness)
    report.constant = worst
    return report


def identity_suite(m, x):
    """The structural identities that every blow-up must satisfy, plus
    the two complement laws that need the model's orthogonality to be
    rich enough."""
    return [
        check_link_decomposition(x),
        check_shape_tags(x),
        check_containment_reversal(x),
        check_link_complements(x),
        check_complement_dichotomy(x),
        check_tuple_spread(m, x),
        check_tuple_consistency(m, x),
    ]


# -- equivariance ------------------------------------------------------


def identity_automorphism(m):
    coords = {}
    for u in m.index.domains:
        for c in m.coord_graphs[u].nodes():
            coords[(u, c)] = c
    return {
        "domains": dict((u, u) for u in m.index.domains),
        "coords": coords,
        "points": dict((z, z) for z in m.points),
    }


def compose_automorphisms(m, g, h):
    """Apply g after h."""
    coords = {}
    for (u, c), d in h["coords"].items():
        coords[(u, c)] = g["coords"][(h["domains"][u], d)]
    return {
        "domains": dict((u, g["domains"][h["domains"][u]])
                        for u in h["domains"]),
        "coords": coords,
        "points": dict((z, g["points"][h["points"][z]])
                       for z in h["points"]),
    }


def _check_automorphism(m, g):
    s = m.index
    dom = g["domains"]
    if sorted(dom) != list(s.domains) or sorted(
            dom.values()) != list(s.domains):
        raise ChhsError("domain map is not a permutation, witness %s"
                        % ",".join(sorted(dom)))
    for u, v in itertools.permutations(s.domains, 2):
        if relation(s, u, v) != relation(s, dom[u], dom[v]):
            raise ChhsError("domain map breaks a relation, witness %s %s"
                            % (u, v))
    for u in s.domains:
        src = sorted(m.coord_graphs[u].nodes())
        img = sorted(g["coords"].get((u, c)) for c in src)
        if img != sorted(m.coord_graphs[dom[u]].nodes()):
            raise ChhsError("coordinate map not onto, witness %s" % u)
        for a, b in m.coord_graphs[u].edges():
            if not m.coord_graphs[dom[u]].has_edge(g["coords"][(u, a)],
                                                   g["coords"][(u, b)]):
                raise ChhsError("coordinate map breaks an edge,"
                                " witness %s %s %s" % (u, a, b))
    pts = g["points"]
    if sorted(pts) != list(m.points) or sorted(
            pts.values()) != list(m.points):
        raise ChhsError("point map is not a permutation, witness %s"
                        % ",".join(sorted(pts)))
    for a, b in m.space.edges():
        if not m.space.has_edge(pts[a], pts[b]):
            raise ChhsError("point map breaks an edge, witness %s %s"
                            % (a, b))

    def image(u, vs):
        return frozenset(g["coords"][(u, c)] for c in vs)

    for u in s.domains:
        for z in m.points:
            if image(u, m.pi[(u, z)]) != m.pi[(dom[u], pts[z])]:
                raise ChhsError("projection diagram breaks, witness %s %s"
                                % (u, z))
    for (u, v), spot in m.rho_up.items():
        if image(v, spot) != m.rho_up[(dom[u], dom[v])]:
            raise ChhsError("relative projection diagram breaks,"
                            " witness %s %s" % (u, v))
    for (u, v), table in m.rho_down.items():
        other = m.rho_down[(dom[u], dom[v])]
        for c, cell in table.items():
            if image(u, cell) != other[g["coords"][(v, c)]]:
                raise ChhsError("downward diagram breaks, witness %s %s %s"
                                % (u, v, c))


def check_equivariance(m, w, g):
    """Exact action on the blow-up and the tuples, coarse action on the
    realisation points."""
    _check_automorphism(m, g)
    x = w.blowup

    def vmap(v):
        u, c = v
        if c == APEX:
            return (g["domains"][u], APEX)
        return (g["domains"][u], g["coords"][(u, c)])

    for a in x.blown.nodes():
        if vmap(a) not in x.adj:
            return PropertyReport("equivariance", False,
                                  (vertex_name(a),))
    for a, b in x.blown.edges():
        if vmap(b) not in x.adj[vmap(a)]:
            return PropertyReport("equivariance", False,
                                  (vertex_name(a), vertex_name(b)))
    mapped = {}
    for i, sigma in enumerate(w.simplices):
        img = frozenset(vmap(v) for v in sigma)
        if img not in w.index:
            return PropertyReport("equivariance", False,
                                  (w.simplex_name(i),))
        mapped[i] = w.index[img]
    for i, j in w.graph.edges():
        if not w.graph.has_edge(mapped[i], mapped[j]):
            return PropertyReport("equivariance", False,
                                  (w.simplex_name(i), w.simplex_name(j)))
    for i in range(len(w.simplices)):
        b = w.tuples[i]
        c = w.tuples[mapped[i]]
        for u in m.index.domains:
            img = frozenset(g["coords"][(u, t)] for t in b.coords[u])
            if img != c.coords[g["domains"][u]]:
                return PropertyReport("equivariance", False,
                                      (w.simplex_name(i), u))
    worst = 0
    for i in range(len(w.simplices)):
        worst = max(worst, m.zdist(g["points"][w.points[i]],
                                   w.points[mapped[i]]))
    verdict = worst <= m.E
    report = PropertyReport("equivariance", verdict,
                            None if verdict else ("defect", "%d" % worst))
    report.constant = worst
    return report


def load_automorphism(text):
    """Parse domain/coord/point mapping lines."""
    g = {"domains": {}, "coords": {}, "points": {}}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "domain" and len(parts) == 3:
            g["domains"][parts[1]] = parts[2]
        elif parts[0] == "coord" and len(parts) == 4:
            g["coords"][(parts[1], parts[2])] = parts[3]
        elif parts[0] == "point" and len(parts) == 3:
            g["points"][parts[1]] = parts[2]
        else:
            raise ChhsError("line %d: cannot parse %r" % (lineno, raw))
    if not g["domains"]:
        raise ChhsError("no domain lines declared")
    return g


def dump_automorphism(g):
    lines = ["# automorphism, %d domains" % len(g["domains"])]
    for u in sorted(g["domains"]):
        lines.append("domain %s %s" % (u, g["domains"][u]))
    for u, c in sorted(g["coords"]):
        lines.append("coord %s %s %s" % (u, c, g["coords"][(u, c)]))
    for z in sorted(g["points"]):
        lines.append("point %s %s" % (z, g["points"][z]))
    return "\n".join(lines) + "\n"


# -- model surgery -----------------------------------------------------


def collapse_unit_coordinates(m, bound=1):
    """Shrink every coordinate graph of diameter at most the bound to a
    single vertex.

    A coordinate graph that small carries no geometry at the model's
    scale, so the collapse changes every distance by at most the bound;
    the kept vertex is the sorted-first one.  Projections and the
    downward tables are rewritten to land on the kept vertices and the
    constants are measured afresh.
    """
    small = {}
    for u in m.index.domains:
        nodes = sorted(m.coord_graphs[u].nodes())
        if len(nodes) > 1 and m.diam(u, nodes) <= bound:
            small[u] = nodes[0]
    if not small:
        return m

    def squash(u, vs):
        if u in small:
            return frozenset([small[u]])
        return frozenset(vs)

    coord_graphs = {}
    for u in m.index.domains:
        if u in small:
            g = nx.Graph()
            g.add_node(small[u])
        else:
            g = nx.Graph(m.coord_graphs[u])
        coord_graphs[u] = g
    pi = dict(((u, z), squash(u, vs)) for (u, z), vs in m.pi.items())
    rho_up = dict(((u, v), squash(v, vs))
                  for (u, v), vs in m.rho_up.items())
    rho_down = {}
    for (v, u), table in m.rho_down.items():
        if u in small:
            union = set()
            for cell in table.values():
                union |= cell
            rho_down[(v, u)] = {small[u]: squash(v, union)}
        else:
            rho_down[(v, u)] = dict((c, squash(v, cell))
                                    for c, cell in table.items())
    return HHSModel(m.index, nx.Graph(m.space), coord_graphs,
                    pi, rho_up, rho_down)


# -- exports -----------------------------------------------------------


def _dot(name, nodes, edges):
    out = ["graph %s {" % name]
    for v in nodes:
        out.append('  "%s";' % v)
    for a, b in edges:
        out.append('  "%s" -- "%s";' % (a, b))
    out.append("}")
    return "\n".join(out) + "\n"


def base_dot(x):
    return _dot("minorth", sorted(x.base.nodes()),
                sorted(tuple(sorted(e)) for e in x.base.edges()))


def blown_dot(x):
    nodes = sorted(vertex_name(v) for v in x.blown.nodes())
    edges = sorted(tuple(sorted((vertex_name(a), vertex_name(b))))
                   for a, b in x.blown.edges())
    return _dot("blowup", nodes, edges)


def w_dot(w):
    nodes = [w.simplex_name(i) for i in range(len(w.simplices))]
    edges = sorted((nodes[min(i, j)], nodes[max(i, j)])
                   for i, j in w.graph.edges())
    return _dot("wgraph", sorted(nodes), edges)


def class_dot(w, cid):
    record = coordinate_graph(w, cid)
    nodes = sorted(vertex_name(v) for v in record["C"].nodes())
    edges = sorted(tuple(sorted((vertex_name(a), vertex_name(b))))
                   for a, b in record["C"].edges())
    return _dot("classgraph", nodes, edges)

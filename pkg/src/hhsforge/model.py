"""Finite models of hierarchical spaces.

A model couples an index set with a finite graph of points and one
coordinate graph per domain.  Projections land points in coordinate
graphs, relative projections tie the coordinate graphs to each other,
and every axiom constant is measured from the data instead of assumed.
"""

import itertools
import math

import networkx as nx

from .indexset import (
    CONTAINS,
    NESTED_IN,
    ORTHOGONAL,
    TRANSVERSE,
    IndexSet,
    PropertyReport,
    load_index_set,
    dump_index_set,
    relation,
    split_info,
)

METRIC_PROPERTIES = ("dpr", "edpr", "bounded_split", "normalised")


class ModelError(ValueError):
    pass


def _as_set(value):
    # strings are single vertices, never iterated characterwise
    if isinstance(value, str):
        return frozenset([value])
    return frozenset(value)


class ConsistentTuple:
    """Coordinates indexed by domains, one bounded vertex set each."""

    def __init__(self, scope, coords):
        self.scope = tuple(sorted(scope))
        self.coords = {}
        for u, val in coords.items():
            if u not in self.scope:
                raise ModelError("coordinate outside scope, witness %s" % u)
            vs = _as_set(val)
            if not vs:
                raise ModelError("empty coordinate, witness %s" % u)
            self.coords[u] = vs

    def restrict(self, domains):
        keep = set(domains)
        coords = dict((u, v) for u, v in self.coords.items() if u in keep)
        return ConsistentTuple(sorted(keep & set(self.scope)), coords)

    def __eq__(self, other):
        if not isinstance(other, ConsistentTuple):
            return NotImplemented
        return self.scope == other.scope and self.coords == other.coords

    def __repr__(self):
        parts = ["%s=%s" % (u, ",".join(sorted(self.coords[u])))
                 for u in self.scope if u in self.coords]
        return "ConsistentTuple(%s)" % " ".join(parts)


class HHSModel:
    """Index set + point graph + coordinate graphs + projection tables.

    pi maps (domain, point) to a nonempty vertex set of that domain's
    coordinate graph.  rho_up maps (U, V) with U nested in or transverse
    to V to a bounded set in CV.  rho_down maps (V, U) with V properly
    nested in U to a total map from CU vertices to nonempty CV sets.
    E is measured from the data when not supplied; kappa defaults to
    20 * E.
    """

    def __init__(self, index, space, coord_graphs, pi, rho_up, rho_down,
                 E=None, kappa=None):
        self.index = index
        self.space = space
        self.points = tuple(sorted(space.nodes()))
        if not self.points:
            raise ModelError("model needs at least one point")
        self.coord_graphs = dict(coord_graphs)
        self.pi = dict(((u, x), _as_set(v)) for (u, x), v in pi.items())
        self.rho_up = dict(((u, v), _as_set(w)) for (u, v), w in rho_up.items())
        self.rho_down = {}
        for (v, u), table in rho_down.items():
            self.rho_down[(v, u)] = dict((w, _as_set(t)) for w, t in table.items())
        self._dist_cache = {}
        self._zdist = None
        self._image_cache = {}
        self._validate()
        if E is None:
            E = measure_model(self)["E"]
        if E < 1:
            raise ModelError("E must be a positive integer")
        self.E = int(E)
        self.kappa = int(kappa) if kappa is not None else 20 * self.E

    def _validate(self):
        for u in self.index.domains:
            if u not in self.coord_graphs:
                raise ModelError("no coordinate graph for %s" % u)
            g = self.coord_graphs[u]
            if g.number_of_nodes() == 0:
                raise ModelError("empty coordinate graph for %s" % u)
            if not nx.is_connected(g):
                raise ModelError("coordinate graph for %s is disconnected" % u)
        for u in self.index.domains:
            nodes = set(self.coord_graphs[u].nodes())
            for x in self.points:
                img = self.pi.get((u, x))
                if not img:
                    raise ModelError("missing projection, witness %s %s" % (u, x))
                if not img <= nodes:
                    raise ModelError("projection leaves the coordinate graph,"
                                     " witness %s %s" % (u, x))
        for u, v in itertools.permutations(self.index.domains, 2):
            rel = relation(self.index, u, v)
            if rel in (NESTED_IN, TRANSVERSE):
                img = self.rho_up.get((u, v))
                if not img:
                    raise ModelError("missing relative projection,"
                                     " witness %s %s" % (u, v))
                if not img <= set(self.coord_graphs[v].nodes()):
                    raise ModelError("relative projection leaves the coordinate"
                                     " graph, witness %s %s" % (u, v))
            if rel == NESTED_IN:
                table = self.rho_down.get((u, v))
                if table is None:
                    raise ModelError("missing downward projection,"
                                     " witness %s %s" % (u, v))
                small = set(self.coord_graphs[u].nodes())
                for w in self.coord_graphs[v].nodes():
                    cell = table.get(w)
                    if not cell or not cell <= small:
                        raise ModelError("bad downward projection,"
                                         " witness %s %s %s" % (u, v, w))

    # -- distances ---------------------------------------------------

    def _pairs(self, u):
        if u not in self._dist_cache:
            g = self.coord_graphs[u]
            self._dist_cache[u] = dict(nx.all_pairs_shortest_path_length(g))
        return self._dist_cache[u]

    def dist(self, u, a, b):
        """Distance in CU between two vertices or vertex sets (min pairwise)."""
        table = self._pairs(u)
        sa, sb = _as_set(a), _as_set(b)
        return min(table[x][y] for x in sa for y in sb)

    def diam(self, u, a):
        table = self._pairs(u)
        sa = _as_set(a)
        return max(table[x][y] for x in sa for y in sa)

    def zdist(self, x, y):
        if self._zdist is None:
            self._zdist = dict(nx.all_pairs_shortest_path_length(self.space))
        return self._zdist[x][y]

    def projection(self, u, x):
        return self.pi[(u, x)]

    def images(self, u):
        if u not in self._image_cache:
            acc = set()
            for x in self.points:
                acc |= self.pi[(u, x)]
            self._image_cache[u] = frozenset(acc)
        return self._image_cache[u]

    def point_tuple(self, x, scope=None):
        if scope is None:
            scope = self.index.domains
        coords = dict((u, self.pi[(u, x)]) for u in scope)
        return ConsistentTuple(scope, coords)

    def down_image(self, small, big, vertices):
        """Image of a CV vertex set under the downward map onto C(small)."""
        table = self.rho_down[(small, big)]
        acc = set()
        for w in _as_set(vertices):
            acc |= table[w]
        return frozenset(acc)


# -- measurement -----------------------------------------------------


def _scan_diameters(m):
    best = 0
    for (u, x), img in sorted(m.pi.items()):
        best = max(best, m.diam(u, img))
    for (u, v), img in sorted(m.rho_up.items()):
        best = max(best, m.diam(v, img))
    for (v, u), table in sorted(m.rho_down.items()):
        # a vertex close to the upward spot may map to a large set;
        # only far vertices need small images
        spot = m.rho_up[(v, u)]
        for w in sorted(table):
            gap = m.dist(u, frozenset([w]), spot)
            best = max(best, min(gap, m.diam(v, table[w])))
    return best


def _scan_lipschitz(m):
    best = 0
    for x, y in m.space.edges():
        for u in m.index.domains:
            d = m.dist(u, m.pi[(u, x)], m.pi[(u, y)])
            # (E, E)-coarse Lipschitz over an edge needs d <= 2E
            best = max(best, int(math.ceil(d / 2.0)))
    return best


def _consistency_value(m, coords, u, v):
    """Defn-style consistency gap of a coordinate pair, E-free."""
    rel = relation(m.index, u, v)
    if rel == TRANSVERSE:
        return min(m.dist(u, coords[u], m.rho_up[(v, u)]),
                   m.dist(v, coords[v], m.rho_up[(u, v)]))
    if rel == NESTED_IN:
        down = m.down_image(u, v, coords[v])
        return min(m.dist(v, coords[v], m.rho_up[(u, v)]),
                   m.diam(u, coords[u] | down))
    if rel == CONTAINS:
        return _consistency_value(m, coords, v, u)
    return 0


def _scan_consistency(m):
    best = 0
    for x in m.points:
        coords = dict((u, m.pi[(u, x)]) for u in m.index.domains)
        for u, v in itertools.combinations(m.index.domains, 2):
            if relation(m.index, u, v) in (TRANSVERSE, NESTED_IN, CONTAINS):
                best = max(best, _consistency_value(m, coords, u, v))
    return best


def _scan_rho_consistency(m):
    best = 0
    for u in m.index.domains:
        for v in sorted(m.index.up[u] - frozenset([u])):
            for w in m.index.domains:
                if (u, w) in m.rho_up and (v, w) in m.rho_up:
                    best = max(best, m.dist(w, m.rho_up[(u, w)],
                                            m.rho_up[(v, w)]))
    return best


def _scan_bgi(m):
    """Least e with the edgewise bounded geodesic image condition."""
    worst = 0
    for (u, v), table in sorted(m.rho_down.items()):
        anchor = m.rho_up[(u, v)]
        for a, b in m.coord_graphs[v].edges():
            gap = min(m.dist(v, a, anchor), m.dist(v, b, anchor))
            spread = m.diam(u, table[a] | table[b])
            if spread > 0:
                # condition must hold once e >= gap, or e >= spread
                worst = max(worst, min(gap, spread))
    return worst


def _interval(m, v, sa, sb):
    cache = getattr(m, "_interval_cache", None)
    if cache is None:
        cache = m._interval_cache = {}
    key = (v, sa, sb) if sorted(sa) <= sorted(sb) else (v, sb, sa)
    if key not in cache:
        table = m._pairs(v)
        da = dict((w, min(table[x][w] for x in sa)) for w in table)
        db = dict((w, min(table[x][w] for x in sb)) for w in table)
        span = min(da[x] for x in sb)
        cache[key] = frozenset(w for w in table
                               if da[w] + db[w] == span)
    return cache[key]


def _scan_large_links(m):
    """Least e for the interval form of the large links condition."""
    worst = 0
    for u in m.index.domains:
        for v in sorted(m.index.up[u] - frozenset([u])):
            anchor = m.rho_up[(u, v)]
            reach_cache = {}
            for x, y in itertools.combinations(m.points, 2):
                gap = m.dist(u, m.pi[(u, x)], m.pi[(u, y)])
                if gap <= worst:
                    continue
                ends = (m.pi[(v, x)], m.pi[(v, y)])
                if ends not in reach_cache:
                    reach_cache[ends] = m.dist(v, anchor,
                                               _interval(m, v, *ends))
                reach = reach_cache[ends]
                if reach > 0:
                    worst = max(worst, min(gap, reach))
    return worst


def _orth_cliques(s):
    g = nx.Graph()
    g.add_nodes_from(s.domains)
    for u in s.domains:
        for v in s.orth[u]:
            g.add_edge(u, v)
    for clique in nx.enumerate_all_cliques(g):
        yield tuple(sorted(clique))


def _realisation_defect(m, pairs, z):
    coordinate = 0
    nested = 0
    transverse = 0
    for v, p in pairs:
        coordinate = max(coordinate, m.dist(v, m.pi[(v, z)], p))
        for w in m.index.domains:
            rel = relation(m.index, v, w)
            if rel == NESTED_IN:
                nested = max(nested,
                             m.dist(w, m.pi[(w, z)], m.rho_up[(v, w)]))
            elif rel == TRANSVERSE:
                transverse = max(transverse,
                                 m.dist(w, m.pi[(w, z)], m.rho_up[(v, w)]))
    return {"coordinate": coordinate, "nested": nested,
            "transverse": transverse}


def _scan_partial_realisation(m):
    worst = 0
    points = m.points
    # the nested and transverse bullets depend only on the family member
    # and the candidate point, never on the chosen image vertex
    base = {}
    for v in m.index.domains:
        terms = []
        for w in m.index.domains:
            rel = relation(m.index, v, w)
            if rel in (NESTED_IN, TRANSVERSE):
                spot = m.rho_up[(v, w)]
                terms.append(tuple(m.dist(w, m.pi[(w, z)], spot)
                                   for z in points))
        if terms:
            base[v] = tuple(max(col) for col in zip(*terms))
        else:
            base[v] = (0,) * len(points)
    coord = {}
    for v in m.index.domains:
        for p in sorted(m.images(v)):
            coord[(v, p)] = tuple(m.dist(v, m.pi[(v, z)], p)
                                  for z in points)
    for family in _orth_cliques(m.index):
        fam_base = tuple(max(base[v][i] for v in family)
                         for i in range(len(points)))
        pools = [sorted(m.images(v)) for v in family]
        for choice in itertools.product(*pools):
            rows = [coord[pair] for pair in zip(family, choice)]
            best = min(max(fam_base[i], *(r[i] for r in rows))
                       for i in range(len(points)))
            worst = max(worst, best)
    return worst


def measure_model(m):
    """Measure every axiom constant from the tables and report E."""
    scans = {
        "diameters": _scan_diameters(m),
        "lipschitz": _scan_lipschitz(m),
        "consistency": _scan_consistency(m),
        "rho_consistency": _scan_rho_consistency(m),
        "bgi": _scan_bgi(m),
        "large_links": _scan_large_links(m),
        "partial_realisation": _scan_partial_realisation(m),
    }
    scans["E"] = max(1, max(scans.values()))
    return scans


# -- consistency and realisation -------------------------------------


def check_consistency(m, t, kappa=None):
    """Check the pairwise consistency inequalities for a tuple."""
    if kappa is None:
        kappa = m.kappa
    worst = 0
    witness = None
    for u, v in itertools.combinations(t.scope, 2):
        if u not in t.coords or v not in t.coords:
            raise ModelError("tuple misses a coordinate, witness %s %s" % (u, v))
        if relation(m.index, u, v) not in (TRANSVERSE, NESTED_IN, CONTAINS):
            continue
        value = _consistency_value(m, t.coords, u, v)
        if value > worst:
            worst = value
            witness = (u, v)
    verdict = worst <= kappa
    report = PropertyReport("consistent", verdict,
                            None if verdict else witness)
    report.constant = worst
    return report


def realise(m, t):
    """Find the point that best matches a tuple or a partial family.

    A ConsistentTuple is matched on every domain it carries.  A list of
    (domain, vertex) pairs must be pairwise orthogonal with vertices in
    the projection images; the returned dict then also reports the
    three defect families separately.
    """
    if isinstance(t, ConsistentTuple):
        best = None
        for z in m.points:
            score = max(m.dist(u, m.pi[(u, z)], t.coords[u])
                        for u in sorted(t.coords))
            if best is None or score < best[1]:
                best = (z, score)
        return {"point": best[0], "defect": best[1]}
    pairs = [(v, p) for v, p in t]
    for (u, _), (v, _) in itertools.combinations(pairs, 2):
        if relation(m.index, u, v) != ORTHOGONAL:
            raise ModelError("family not pairwise orthogonal,"
                             " witness %s %s" % tuple(sorted((u, v))))
    for v, p in pairs:
        if p not in m.images(v):
            raise ModelError("vertex outside the projection image,"
                             " witness %s %s" % (v, p))
    best = None
    for z in m.points:
        bullets = _realisation_defect(m, pairs, z)
        score = max(bullets.values())
        if best is None or score < best[1]:
            best = (z, score, bullets)
    return {"point": best[0], "defect": best[1], "bullets": best[2]}


# -- distance formula -------------------------------------------------


def distance_estimate(m, x, y, threshold):
    """Sum of projection distances strictly above the threshold."""
    total = 0
    for u in m.index.domains:
        d = m.dist(u, m.pi[(u, x)], m.pi[(u, y)])
        if d > threshold:
            total += d
    return total


def distance_profile(m, threshold, max_k=10):
    """Best (K, C) comparing the estimate with the point-graph metric."""
    rows = []
    for x, y in itertools.combinations(m.points, 2):
        rows.append((distance_estimate(m, x, y, threshold), m.zdist(x, y)))
    best = None
    for k in range(1, max_k + 1):
        c = 0
        for est, dz in rows:
            c = max(c, est - k * dz, dz - k * est, 0)
        if best is None or (c, k) < best:
            best = (c, k)
    return {"threshold": threshold, "K": best[1], "C": best[0]}


def uniqueness_profile(m):
    """For each bound on coordinate distances, the largest point distance."""
    pairs = []
    top = 0
    for x, y in itertools.combinations(m.points, 2):
        mc = max(m.dist(u, m.pi[(u, x)], m.pi[(u, y)])
                 for u in m.index.domains)
        pairs.append((mc, m.zdist(x, y)))
        top = max(top, mc)
    profile = []
    for kappa in range(1, top + 2):
        theta = 0
        for mc, dz in pairs:
            if mc < kappa:
                theta = max(theta, dz)
        profile.append((kappa, theta))
    return tuple(profile)


# -- metric properties ------------------------------------------------


def _dpr_constant(m):
    worst = (0, None)
    minimal = m.index.minimal_domains()
    for u in m.index.domains:
        below = sorted(v for v in minimal
                       if v != u and v in m.index.down[u])
        if not below:
            continue
        for w in sorted(m.coord_graphs[u].nodes()):
            gap = min(m.dist(u, w, m.rho_up[(v, u)]) for v in below)
            if gap > worst[0]:
                worst = (gap, (u, w))
    return worst


def _edpr_constant(m):
    worst = 0
    minimal = set(m.index.minimal_domains())
    for u in m.index.domains:
        below = sorted(minimal & m.index.down[u])
        if not below:
            continue
        g = nx.Graph()
        g.add_nodes_from(below)
        for a, b in itertools.combinations(below, 2):
            if b in m.index.orth[a]:
                g.add_edge(a, b)
        families = [tuple(sorted(c)) for c in nx.find_cliques(g)]
        families.sort()
        inside = sorted(m.index.down[u])
        for x in m.points:
            best = None
            for family in families:
                pairs = [(v, m.pi[(v, x)]) for v in family]
                y = None
                score = None
                for z in m.points:
                    bullets = _realisation_defect(m, pairs, z)
                    s = max(bullets.values())
                    if score is None or s < score:
                        score, y = s, z
                gap = max(m.dist(v, m.pi[(v, x)], m.pi[(v, y)])
                          for v in inside)
                if best is None or gap < best:
                    best = gap
            worst = max(worst, best)
    return worst


def check_metric_property(m, name):
    """Measure one of dpr, edpr, bounded_split, normalised.

    The report carries the least constant; dpr and normalised compare
    it against the measured E, the other two always hold with a finite
    constant on a finite model.
    """
    if name == "dpr":
        constant, witness = _dpr_constant(m)
        verdict = constant <= m.E
        report = PropertyReport("dpr", verdict, None if verdict else witness)
        report.constant = constant
        return report
    if name == "edpr":
        report = PropertyReport("edpr", True, None)
        report.constant = _edpr_constant(m)
        return report
    if name == "bounded_split":
        constant = 0
        top = m.index.top
        minimal = set(m.index.minimal_domains())
        for u in m.index.domains:
            if u == top or u in minimal:
                continue
            if split_info(m.index, u)["split"]:
                constant = max(constant, m.diam(u, m.coord_graphs[u].nodes()))
        report = PropertyReport("bounded_split", True, None)
        report.constant = constant
        return report
    if name == "normalised":
        constant = 0
        witness = None
        for u in m.index.domains:
            img = m.images(u)
            for w in sorted(m.coord_graphs[u].nodes()):
                gap = m.dist(u, w, img)
                if gap > constant:
                    constant = gap
                    witness = (u, w)
        verdict = constant <= m.E
        report = PropertyReport("normalised", verdict,
                                None if verdict else witness)
        report.constant = constant
        return report
    raise ModelError("unknown metric property %s" % name)


def check_orth_projection_agreement(m):
    """Orthogonal domains project to nearby spots in every third domain."""
    worst = 0
    witness = None
    for u in m.index.domains:
        for v in sorted(m.index.orth[u]):
            if v < u:
                continue
            for w in m.index.domains:
                if (u, w) in m.rho_up and (v, w) in m.rho_up:
                    d = m.dist(w, m.rho_up[(u, w)], m.rho_up[(v, w)])
                    if d > worst:
                        worst = d
                        witness = (u, v, w)
    verdict = worst <= 2 * m.E
    report = PropertyReport("orth_projection_agreement", verdict,
                            None if verdict else witness)
    report.constant = worst
    return report


# -- point-domain augmentation ----------------------------------------


def augment_point_domains(m):
    """Hang a point domain under every wide domain per realised tuple.

    A domain is wide when it is the top or fails to be split.  For each
    wide U the points are classified by their projections to everything
    nested in U; each class z gets a minimal domain T_<U>_<z> with a
    one-vertex coordinate graph, nested exactly where U is nested plus
    under U itself, and orthogonal exactly where U is orthogonal.
    """
    s = m.index
    wide = []
    for u in s.domains:
        if u == s.top or not split_info(s, u)["split"]:
            wide.append(u)
    fresh = []
    for u in sorted(wide):
        seen = {}
        scope = sorted(s.down[u])
        for z in m.points:
            key = tuple((v, m.pi[(v, z)]) for v in scope)
            if key not in seen:
                seen[key] = z
        for key in sorted(seen, key=lambda k: seen[k]):
            z = seen[key]
            t = "T_%s_%s" % (u, z)
            if t in s.domains:
                raise ModelError("augmented id collides, witness %s" % t)
            fresh.append((t, u, z))
    domains = list(s.domains) + [t for t, _, _ in fresh]
    nesting = [(v, u) for u in s.domains
               for v in sorted(s.down[u] - frozenset([u]))]
    nesting += [(t, u) for t, u, _ in fresh]
    orth = [(u, v) for u in s.domains for v in sorted(s.orth[u]) if u < v]
    orth += [(t, v) for t, u, _ in fresh for v in sorted(s.orth[u])]
    index = IndexSet(domains, nesting, orth)

    coord_graphs = dict(m.coord_graphs)
    pi = dict(m.pi)
    rho_up = dict(m.rho_up)
    rho_down = dict((k, dict(v)) for k, v in m.rho_down.items())
    for t, u, z in fresh:
        g = nx.Graph()
        g.add_node("0")
        coord_graphs[t] = g
        for x in m.points:
            pi[(t, x)] = frozenset(["0"])
        for v in sorted(index.up[t] - frozenset([t])):
            rho_up[(t, v)] = m.pi[(u, z)] if v == u else (
                m.rho_up[(u, v)] if v in s.up[u] else None)
            if rho_up[(t, v)] is None:
                raise ModelError("augment lost a projection, witness %s" % v)
            rho_down[(t, v)] = dict(
                (w, frozenset(["0"])) for w in coord_graphs[v].nodes())
    for t, u, z in fresh:
        for v in index.domains:
            if relation(index, t, v) != TRANSVERSE:
                continue
            rho_up[(v, t)] = frozenset(["0"])
            if (t, v) in rho_up:
                continue
            if v in s.domains:
                # v transverse to t: either transverse to u or below u
                if v in s.up[u] or v in s.orth[u]:
                    raise ModelError("augment relation drift, witness %s" % v)
                if (u, v) in m.rho_up:
                    rho_up[(t, v)] = m.rho_up[(u, v)]
                else:
                    rho_up[(t, v)] = m.pi[(v, z)]
    return HHSModel(index, m.space, coord_graphs, pi, rho_up, rho_down)


# -- file format -------------------------------------------------------


def load_model(text, resolve=None):
    """Parse a model description.

    Index lines (domain/nest/orth) may appear inline, or a single
    `indexset <name>` line can pull them from elsewhere through the
    resolve callback.  The remaining lines are point/space/coord/pi/rho
    tables plus optional E and kappa lines.
    """
    index_lines = []
    points = []
    space_edges = []
    coord_nodes = {}
    coord_edges = {}
    pi = {}
    rho_up = {}
    rho_down = {}
    e_value = None
    kappa_value = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key, args = parts[0], parts[1:]
        if key in ("domain", "nest", "orth"):
            index_lines.append(line)
        elif key == "indexset":
            if len(args) != 1 or resolve is None:
                raise ModelError("line %d: cannot resolve indexset" % lineno)
            index_lines.extend(resolve(args[0]).splitlines())
        elif key == "point":
            if len(args) != 1:
                raise ModelError("line %d: cannot parse %r" % (lineno, raw))
            points.append(args[0])
        elif key == "space":
            if len(args) != 2:
                raise ModelError("line %d: cannot parse %r" % (lineno, raw))
            space_edges.append((args[0], args[1]))
        elif key == "coord":
            if len(args) == 3 and args[1] == "vertex":
                coord_nodes.setdefault(args[0], []).append(args[2])
            elif len(args) == 4 and args[1] == "edge":
                coord_edges.setdefault(args[0], []).append((args[2], args[3]))
            else:
                raise ModelError("line %d: cannot parse %r" % (lineno, raw))
        elif key == "pi":
            if len(args) != 3:
                raise ModelError("line %d: cannot parse %r" % (lineno, raw))
            pi[(args[0], args[1])] = frozenset(args[2].split(","))
        elif key == "rho":
            if len(args) == 3:
                rho_up[(args[0], args[1])] = frozenset(args[2].split(","))
            elif len(args) == 4:
                table = rho_down.setdefault((args[1], args[0]), {})
                table[args[2]] = frozenset(args[3].split(","))
            else:
                raise ModelError("line %d: cannot parse %r" % (lineno, raw))
        elif key == "E":
            e_value = int(args[0])
        elif key == "kappa":
            kappa_value = int(args[0])
        else:
            raise ModelError("line %d: cannot parse %r" % (lineno, raw))
    index = load_index_set("\n".join(index_lines))
    space = nx.Graph()
    space.add_nodes_from(points)
    space.add_edges_from(space_edges)
    coord_graphs = {}
    for u in index.domains:
        g = nx.Graph()
        g.add_nodes_from(coord_nodes.get(u, []))
        g.add_edges_from(coord_edges.get(u, []))
        coord_graphs[u] = g
    return HHSModel(index, space, coord_graphs, pi, rho_up, rho_down,
                    E=e_value, kappa=kappa_value)


def dump_model(m):
    lines = ["# model, %d points, %d domains" % (len(m.points),
                                                 len(m.index.domains))]
    lines.extend(dump_index_set(m.index).splitlines())
    lines.append("E %d" % m.E)
    lines.append("kappa %d" % m.kappa)
    for p in m.points:
        lines.append("point %s" % p)
    for a, b in sorted(tuple(sorted(e)) for e in m.space.edges()):
        lines.append("space %s %s" % (a, b))
    for u in m.index.domains:
        g = m.coord_graphs[u]
        for v in sorted(g.nodes()):
            lines.append("coord %s vertex %s" % (u, v))
        for a, b in sorted(tuple(sorted(e)) for e in g.edges()):
            lines.append("coord %s edge %s %s" % (u, a, b))
    for u in m.index.domains:
        for x in m.points:
            lines.append("pi %s %s %s" % (u, x, ",".join(sorted(m.pi[(u, x)]))))
    for u, v in sorted(m.rho_up):
        lines.append("rho %s %s %s" % (u, v, ",".join(sorted(m.rho_up[(u, v)]))))
    for v, u in sorted(m.rho_down):
        table = m.rho_down[(v, u)]
        for w in sorted(table):
            lines.append("rho %s %s %s %s" % (u, v, w,
                                              ",".join(sorted(table[w]))))
    return "\n".join(lines) + "\n"

"""Exact polynomial-time evaluators for the tractable planar Holant cases.

Five solver families live here:

* ``fkt_count_pm``: weighted perfect matchings of a planar graph through a
  Pfaffian orientation (spanning tree plus dual-tree face fixing) and exact
  skew-symmetric elimination;
* ``product_eval``: product-type grids, by propagating the at-most-two
  consistent patterns per constraint component;
* ``affine_eval``: affine grids, by Gauss-sum variable elimination over F_2
  linear constraints and a quadratic exponent mod 4 with even cross terms;
* ``vanishing_eval``: grids built from one vanishing class are exactly 0;
* ``eo_geneq_eval``: the pinning algorithm for weighted equalities of arity
  gcd >= 5 mixed with exact-one signatures, connected by disequalities.

``evaluate`` dispatches a grid to whichever route its classification allows,
falling back to capped brute force.  ``hypergraph_pm`` counts perfect
matchings of planar hypergraphs through the same machinery.
"""

from math import gcd

from .algebra import AN, I, ONE, SQRT2, ZERO, ZETA
from .classify import (
    SetVerdict,
    dichotomy_plholant_set,
    hypergraph_verdict,
    in_A,
    in_P,
    in_vanishing_minus,
    in_vanishing_plus,
)
from .grid import (
    EmbeddingError,
    PlanarGrid,
    StructureError,
    TooLarge,
    Vertex,
    edge_cap,
    holographic_transform_bipartite,
    two_stretch,
)
from .sigcalc import (
    SymmetricSignature,
    Z,
    all_but_one,
    diseq2,
    equality,
    exact_one,
    tensor_decompose,
)


class ClassError(ValueError):
    """A signature is outside the class a solver requires."""


class RepresentationError(ValueError):
    """A signature passed the class test but admits no usable representation."""


class GcdError(ValueError):
    """Equality arities whose gcd is below 5 cannot be pinned."""


class PinSearchError(RuntimeError):
    """The structural pin search came up empty (impossible on genus-0 input)."""


def _endpoints(f):
    """(f0, fn) when every interior entry vanishes, else None."""
    if any(not e.is_zero() for e in f.entries[1:-1]):
        return None
    return f[0], f[-1]


def _sign_of(x):
    assert x.is_rational()
    r = x.rational()
    return 0 if r == 0 else (1 if r > 0 else -1)


# ---------------------------------------------------------------------------
# FKT: weighted perfect matchings of planar graphs
# ---------------------------------------------------------------------------

class WeightedPlanarGraph:
    """A planar multigraph with a rotation system and nonzero edge weights.

    ``rotation`` maps each vertex id to the counterclockwise list of its
    half-edge ids; ``edges`` is a list of (half, half, weight) triples.
    """

    def __init__(self, vertices, rotation, edges):
        self.vertex_ids = list(vertices)
        self.rotation = {v: list(rotation.get(v, ())) for v in self.vertex_ids}
        self.edges = [(a, b, AN(w)) for (a, b, w) in edges]
        for (_, _, w) in self.edges:
            if w.is_zero():
                raise ValueError("edge weights must be nonzero")
        self._validate()

    def _validate(self):
        verts = []
        for v in self.vertex_ids:
            deg = len(self.rotation[v])
            verts.append(Vertex(v, SymmetricSignature([1] * (deg + 1)),
                                self.rotation[v]))
        probe = PlanarGrid(verts, [(a, b) for (a, b, _) in self.edges])
        _, ok = probe.validate()
        if not ok:
            raise EmbeddingError("the rotation system is not genus 0")
        self.half_owner = probe.half_owner


def _pfaffian(rows):
    """Pfaffian of a skew-symmetric matrix by exact elimination."""
    n = len(rows)
    if n % 2:
        return ZERO
    a = [list(r) for r in rows]
    total = ONE
    flip = False
    while n > 0:
        j = next((k for k in range(1, n) if not a[0][k].is_zero()), None)
        if j is None:
            return ZERO
        if j != 1:
            a[1], a[j] = a[j], a[1]
            for row in a:
                row[1], row[j] = row[j], row[1]
            flip = not flip
        p = a[0][1]
        total = total * p
        b = []
        for i in range(2, n):
            b.append([a[i][k] + (a[1][i] * a[0][k] - a[0][i] * a[1][k]) / p
                      for k in range(2, n)])
        a = b
        n -= 2
    return -total if flip else total


def _fkt_component(vids, rotation, edges, owner):
    """Weighted matching sum of one connected component."""
    if len(vids) % 2:
        return ZERO
    if not edges:
        return ZERO if vids else ONE
    index = {v: i for i, v in enumerate(sorted(vids, key=repr))}
    partner = {}
    edge_of = {}
    for ei, (a, b, _) in enumerate(edges):
        partner[a] = b
        partner[b] = a
        edge_of[a] = ei
        edge_of[b] = ei
    # faces of the component under the rotation system
    nxt = {}
    for v in vids:
        rot = [h for h in rotation[v] if h in partner]
        for i, h in enumerate(rot):
            nxt[h] = rot[(i + 1) % len(rot)]
    faces = []
    seen = set()
    for h0 in sorted(nxt, key=repr):
        if h0 in seen:
            continue
        face = []
        h = h0
        while True:
            face.append(h)
            seen.add(h)
            h = nxt[partner[h]]
            if h == h0:
                break
        faces.append(face)
    # spanning tree over edge indices
    adj = {v: [] for v in vids}
    for ei, (a, b, _) in enumerate(edges):
        adj[owner[a]].append((ei, owner[b]))
        adj[owner[b]].append((ei, owner[a]))
    root = sorted(vids, key=repr)[0]
    tree = set()
    placed = {root}
    frontier = [root]
    while frontier:
        v = frontier.pop()
        for ei, w in sorted(adj[v], key=lambda t: t[0]):
            if w not in placed:
                placed.add(w)
                tree.add(ei)
                frontier.append(w)
    # orientation: per edge, the half on the tail side
    orient = {}
    for ei in tree:
        orient[ei] = edges[ei][0]
    # dual-tree face fixing: every face except the outer root becomes odd
    outer = max(range(len(faces)), key=lambda fi: (len(faces[fi]), -fi))
    face_of_half = {}
    for fi, face in enumerate(faces):
        for h in face:
            face_of_half[h] = fi
    undecided = [0] * len(faces)
    for ei, (a, b, _) in enumerate(edges):
        if ei not in tree:
            undecided[face_of_half[a]] += 1
            undecided[face_of_half[b]] += 1
    queue = [fi for fi in range(len(faces))
             if fi != outer and undecided[fi] == 1]
    done_faces = set()
    while queue:
        fi = queue.pop()
        if fi in done_faces:
            continue
        done_faces.add(fi)
        agree = 0
        pending = None
        for h in faces[fi]:
            ei = edge_of[h]
            if ei in orient:
                if orient[ei] == h:
                    agree += 1
            else:
                pending = (ei, h)
        assert pending is not None
        ei, h = pending
        orient[ei] = h if agree % 2 == 0 else partner[h]
        for half in (edges[ei][0], edges[ei][1]):
            fj = face_of_half[half]
            undecided[fj] -= 1
            if fj != outer and fj not in done_faces and undecided[fj] == 1:
                queue.append(fj)
    assert len(orient) == len(edges)
    # Kasteleyn matrices: actual weights and all-one weights
    m = len(vids)
    mat_w = [[ZERO] * m for _ in range(m)]
    mat_1 = [[ZERO] * m for _ in range(m)]
    for ei, (a, b, w) in enumerate(edges):
        tail_half = orient[ei]
        t = index[owner[tail_half]]
        h = index[owner[partner[tail_half]]]
        mat_w[t][h] = mat_w[t][h] + w
        mat_w[h][t] = mat_w[h][t] - w
        mat_1[t][h] = mat_1[t][h] + ONE
        mat_1[h][t] = mat_1[h][t] - ONE
    pf_1 = _pfaffian(mat_1)
    if pf_1.is_zero():
        return ZERO
    sign = _sign_of(pf_1)
    pf_w = _pfaffian(mat_w)
    return pf_w if sign > 0 else -pf_w


def fkt_count_pm(g):
    """Exact weighted sum over perfect matchings of a planar graph."""
    owner = g.half_owner
    # self-loops never participate in a perfect matching
    edges = [(a, b, w) for (a, b, w) in g.edges if owner[a] != owner[b]]
    parent = {v: v for v in g.vertex_ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b, _) in edges:
        ra, rb = find(owner[a]), find(owner[b])
        if ra != rb:
            parent[ra] = rb
    comps = {}
    for v in g.vertex_ids:
        comps.setdefault(find(v), []).append(v)
    total = ONE
    for vids in comps.values():
        vset = set(vids)
        local = [(a, b, w) for (a, b, w) in edges if owner[a] in vset]
        val = _fkt_component(vids, g.rotation, local, owner)
        if val.is_zero():
            return ZERO
        total = total * val
    return total


def weighted_graph_from_json(doc):
    return WeightedPlanarGraph(
        doc["vertices"],
        {(_maybe_int(k)): v for k, v in doc["rotation"].items()},
        [(a, b, AN(w)) for (a, b, w) in doc["edges"]])


def weighted_graph_to_json(g):
    return {
        "vertices": list(g.vertex_ids),
        "rotation": {str(v): list(r) for v, r in g.rotation.items()},
        "edges": [[a, b, str(w)] for (a, b, w) in g.edges],
    }


def _maybe_int(k):
    try:
        return int(k)
    except (TypeError, ValueError):
        return k


# ---------------------------------------------------------------------------
# product-type grids
# ---------------------------------------------------------------------------

class _ParityUF:
    """Union-find over edge variables with an xor offset to the root."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.offset = [0] * n

    def locate(self, x):
        root = x
        off = 0
        while self.parent[root] != root:
            off ^= self.offset[root]
            root = self.parent[root]
        node, acc = x, off
        while self.parent[node] != node:
            nxt, noff = self.parent[node], self.offset[node]
            self.parent[node] = root
            self.offset[node] = acc
            acc ^= noff
            node = nxt
        return root, off

    def union(self, x, y, parity):
        """Record val(x) xor val(y) = parity; False on contradiction."""
        rx, ox = self.locate(x)
        ry, oy = self.locate(y)
        if rx == ry:
            return (ox ^ oy) == parity
        self.parent[rx] = ry
        self.offset[rx] = ox ^ oy ^ parity
        return True


def product_eval(grid):
    """Exact Holant of a grid whose signatures are all product-type."""
    if grid.dangling:
        raise StructureError("product_eval needs a closed grid")
    for v in grid.vertices.values():
        if not in_P(v.sig):
            raise ClassError("%r is not product-type" % v.sig)
    n_edges = len(grid.edges)
    edge_of = {}
    for ei, (a, b) in enumerate(grid.edges):
        edge_of[a] = ei
        edge_of[b] = ei
    uf = _ParityUF(n_edges)
    slot_w = [[ONE, ONE] for _ in range(n_edges)]
    geneqs = []  # (representative edge, a, b)
    scalar = grid.scalar
    for vid in sorted(grid.vertices, key=repr):
        v = grid.vertices[vid]
        f = v.sig
        if f.is_zero():
            return ZERO
        if f.arity == 0:
            scalar = scalar * f[0]
            continue
        if f.arity == 2 and f[0].is_zero() and f[2].is_zero():
            scalar = scalar * f[1]
            e0, e1 = edge_of[v.rotation[0]], edge_of[v.rotation[1]]
            if not uf.union(e0, e1, 1):
                return ZERO
            continue
        d = tensor_decompose(f)
        if d.kind == "degenerate":
            scalar = scalar * d.c
            u0, u1 = AN(d.u[0]), AN(d.u[1])
            for h in v.rotation:
                e = edge_of[h]
                slot_w[e][0] = slot_w[e][0] * u0
                slot_w[e][1] = slot_w[e][1] * u1
            continue
        end = _endpoints(f)
        if end is not None and not end[0].is_zero() and not end[1].is_zero():
            e0 = edge_of[v.rotation[0]]
            for h in v.rotation[1:]:
                if not uf.union(e0, edge_of[h], 0):
                    return ZERO
            geneqs.append((e0, end[0], end[1]))
            continue
        raise ClassError("%r has no product decomposition" % f)
    comp_edges = {}
    for e in range(n_edges):
        root, off = uf.locate(e)
        comp_edges.setdefault(root, []).append((e, off))
    comp_eqs = {}
    for (e0, a, b) in geneqs:
        root, off = uf.locate(e0)
        comp_eqs.setdefault(root, []).append((off, a, b))
    total = scalar
    for root, members in sorted(comp_edges.items()):
        val = ZERO
        for bit in (0, 1):
            w = ONE
            for (e, off) in members:
                w = w * slot_w[e][bit ^ off]
            for (off, a, b) in comp_eqs.get(root, ()):
                w = w * (a if bit ^ off == 0 else b)
            val = val + w
        if val.is_zero():
            return ZERO
        total = total * val
    return total


# ---------------------------------------------------------------------------
# affine grids
# ---------------------------------------------------------------------------

class _Mod4Form:
    """A quadratic exponent mod 4 in 0-1 variables with even cross terms."""

    __slots__ = ("const", "lin", "cross")

    def __init__(self):
        self.const = 0
        self.lin = {}
        self.cross = {}

    def add_const(self, c):
        self.const = (self.const + c) % 4

    def add_lin(self, x, c):
        c = (self.lin.get(x, 0) + c) % 4
        if c:
            self.lin[x] = c
        else:
            self.lin.pop(x, None)

    def add_cross(self, x, y, c):
        if x == y:
            self.add_lin(x, c)
            return
        assert c % 2 == 0
        key = (x, y) if repr(x) < repr(y) else (y, x)
        c = (self.cross.get(key, 0) + c) % 4
        if c:
            self.cross[key] = c
        else:
            self.cross.pop(key, None)

    def add_parity(self, xs, c):
        """Add c * (x_1 xor ... xor x_m) to the exponent."""
        xs = list(xs)
        for x in xs:
            self.add_lin(x, c)
        for i in range(len(xs)):
            for j in range(i + 1, len(xs)):
                self.add_cross(xs[i], xs[j], 2 * c)

    def pop_var(self, t):
        """Remove t; return (linear coefficient, cross partners with coeff 2)."""
        c = self.lin.pop(t, 0)
        partners = []
        for key in [k for k in self.cross if t in k]:
            other = key[0] if key[1] == t else key[1]
            coeff = self.cross.pop(key)
            if coeff % 4 == 2:
                partners.append(other)
        return c, partners

    def substitute(self, t, vs, bit):
        """Replace variable t by the F_2 expression bit xor (xor of vs)."""
        c, partners = self.pop_var(t)
        if c:
            s = 1 - 2 * bit
            self.add_const(c * bit)
            for v in vs:
                self.add_lin(v, c * s)
            for i in range(len(vs)):
                for j in range(i + 1, len(vs)):
                    self.add_cross(vs[i], vs[j], 2 * c)
        for other in partners:
            self.add_lin(other, 2 * bit)
            for v in vs:
                self.add_cross(v, other, 2)


def _i_power(x):
    for r in range(4):
        if x == I ** r:
            return r
    return None


def _affine_rep(f, slots, form, constraints):
    """Fold one affine signature over its slot variables; return its scalar."""
    if f.arity == 0:
        return f[0]
    d = tensor_decompose(f)
    if d.kind == "degenerate":
        u0, u1 = AN(d.u[0]), AN(d.u[1])
        if u0.is_zero():
            for x in slots:
                constraints.append(({x}, 1))
            return d.c * u1 ** f.arity
        if u1.is_zero():
            for x in slots:
                constraints.append(({x}, 0))
            return d.c * u0 ** f.arity
        r = _i_power(u1 / u0)
        if r is None:
            raise RepresentationError("degenerate direction is not affine")
        for x in slots:
            form.add_lin(x, r)
        return d.c * u0 ** f.arity
    end = _endpoints(f)
    if end is not None and not end[0].is_zero() and not end[1].is_zero():
        a, b = end
        r = _i_power(b / a)
        if r is None:
            raise RepresentationError("endpoint ratio is not a power of i")
        pivot = slots[0]
        for x in slots[1:]:
            constraints.append(({pivot, x} if x != pivot else set(), 0))
        form.add_lin(pivot, r)
        return a
    evens = {f[k] for k in range(0, f.arity + 1, 2)}
    odds = {f[k] for k in range(1, f.arity + 1, 2)}
    if len(evens) <= 1 and len(odds) <= 1:
        a = next(iter(evens))
        b = next(iter(odds))
        parity = set()
        for x in slots:
            parity ^= {x}
        if b.is_zero():
            constraints.append((parity, 0))
            return a
        if a.is_zero():
            constraints.append((parity, 1))
            return b
        r = _i_power(b / a)
        if r is None or r % 2 == 0:
            raise RepresentationError("two-periodic ratio is not +-i")
        form.add_parity(slots, r)
        return a
    if all((f[k + 2] + f[k]).is_zero() for k in range(f.arity - 1)):
        a, b = f[0], f[1]
        parity = set()
        for x in slots:
            parity ^= {x}
        if a.is_zero():
            constraints.append((parity, 1))
            for x in slots:
                form.add_lin(x, 1)
            form.add_const(-1)
            return b
        if b.is_zero():
            constraints.append((parity, 0))
            for x in slots:
                form.add_lin(x, 1)
            return a
        ratio = b / a
        if ratio == ONE:
            for x in slots:
                form.add_lin(x, 1)
            form.add_parity(slots, 3)
            return a
        if ratio == -ONE:
            for x in slots:
                form.add_lin(x, 1)
            form.add_parity(slots, 1)
            return a
    raise RepresentationError("%r admits no affine representation" % f)


def affine_eval(grid):
    """Exact Holant of a grid whose signatures are all affine."""
    if grid.dangling:
        raise StructureError("affine_eval needs a closed grid")
    for v in grid.vertices.values():
        if not in_A(v.sig):
            raise ClassError("%r is not affine" % v.sig)
    edge_of = {}
    for ei, (a, b) in enumerate(grid.edges):
        edge_of[a] = ei
        edge_of[b] = ei
    form = _Mod4Form()
    constraints = []
    scalar = grid.scalar
    for vid in sorted(grid.vertices, key=repr):
        v = grid.vertices[vid]
        if v.sig.is_zero():
            return ZERO
        slots = [edge_of[h] for h in v.rotation]
        scalar = scalar * _affine_rep(v.sig, slots, form, constraints)
    eliminated = set()
    pending = [(set(vs), bit) for (vs, bit) in constraints]
    while pending:
        vs, bit = pending.pop()
        if not vs:
            if bit:
                return ZERO
            continue
        pivot = min(vs)
        rest = sorted(vs - {pivot})
        form.substitute(pivot, rest, bit)
        eliminated.add(pivot)
        rewritten = []
        for (ws, b2) in pending:
            if pivot in ws:
                ws = (ws - {pivot}) ^ set(rest)
                b2 ^= bit
            rewritten.append((ws, b2))
        pending = rewritten
    active = set(range(len(grid.edges))) - eliminated
    total = scalar
    while active:
        t = min(active)
        active.remove(t)
        c, partners = form.pop_var(t)
        live = [x for x in partners if x in active]
        assert len(live) == len(partners)
        if c % 2 == 0:
            total = total * AN(2)
            rhs = 1 if c % 4 == 2 else 0
            if not live:
                if rhs:
                    return ZERO
                continue
            pivot = min(live)
            rest = sorted(set(live) - {pivot})
            form.substitute(pivot, rest, rhs)
            active.remove(pivot)
        elif c % 4 == 1:
            total = total * SQRT2 * ZETA
            form.add_parity(live, 3)
        else:
            total = total * SQRT2 * (ZETA ** 7)
            form.add_parity(live, 1)
    assert not form.lin and not form.cross
    return total * I ** form.const


# ---------------------------------------------------------------------------
# vanishing grids
# ---------------------------------------------------------------------------

def vanishing_eval(grid):
    """Grids built entirely inside one vanishing class evaluate to zero."""
    sigs = [v.sig for v in grid.vertices.values()]
    if not sigs:
        raise ClassError("vanishing_eval needs at least one signature")
    if all(in_vanishing_plus(f) for f in sigs) or \
            all(in_vanishing_minus(f) for f in sigs):
        return ZERO
    raise ClassError("the signatures do not share a vanishing class")


# ---------------------------------------------------------------------------
# the pinning algorithm for weighted equalities with exact-one signatures
# ---------------------------------------------------------------------------

class EOInstance:
    """A bipartite grid: disequalities on the left; generalized equalities,
    exact-one signatures and pins on the right.

    The constructor folds the left disequalities into internal edges, splits
    Z-side degenerate signatures into pins, and flips the whole instance when
    the matching side arrives reversed (all-but-one instead of exact-one).
    """

    def __init__(self, grid):
        if grid.dangling:
            raise StructureError("EO instances must be closed")
        if not grid.side or any(v not in grid.side for v in grid.vertices):
            raise StructureError("EO instances need a bipartition tagging")
        self.grid = grid
        self.scalar = grid.scalar
        self.zero = False
        self.equalities = []   # (a, b, arity, key)
        self.exact_ones = []   # (scale, arity, key)
        self.reversed_ones = []
        self.pins = []         # (c0, c1, key); exactly one side nonzero
        self.ends = []         # list of (kind_index pairs) built below
        self._build()

    def _build(self):
        grid = self.grid
        half_slot = {}   # half id -> (node index, slot index) on the right
        nodes = []       # parsed right-side nodes: (kind, payload)
        for vid in sorted(grid.vertices, key=repr):
            v = grid.vertices[vid]
            if grid.side[vid] == "L":
                continue
            f = v.sig
            if f.is_zero():
                self.zero = True
                return
            pos = 0
            for (kind, payload, width) in self._parse_sig(f, len(v.rotation)):
                idx = len(nodes)
                nodes.append((kind, payload))
                for k in range(width):
                    half_slot[v.rotation[pos]] = (idx, k)
                    pos += 1
            assert pos == len(v.rotation)
        # fold left disequalities into edges between right slots
        edges = []
        for vid in sorted(grid.vertices, key=repr):
            v = grid.vertices[vid]
            if grid.side[vid] != "L":
                continue
            f = v.sig
            if not (f.arity == 2 and f[0].is_zero() and f[2].is_zero()
                    and not f[1].is_zero()):
                raise ClassError("left side must be disequalities, got %r" % f)
            self.scalar = self.scalar * f[1]
            ends = []
            for h in v.rotation:
                other = grid.partner[h]
                if other not in half_slot:
                    raise ClassError("disequalities must connect to the right")
                ends.append(half_slot[other])
            edges.append(tuple(ends))
        if 2 * len(edges) != sum(
                len(grid.vertices[v].rotation) for v in grid.vertices
                if grid.side[v] == "R"):
            raise StructureError("every right slot needs a left disequality")
        # flip when the matching side is reversed
        flip = bool(self.reversed_ones)
        if flip and self.exact_ones:
            raise ClassError("exact-one and all-but-one signatures mix")
        self.nodes = []
        for (kind, payload) in nodes:
            if flip:
                if kind in ("eq", "pin"):
                    payload = (payload[1], payload[0]) + payload[2:]
                elif kind == "rev":
                    kind = "eo"
            elif kind == "rev":
                raise AssertionError("unflipped reversed signature")
            self.nodes.append((kind, payload))
        self.edges = edges
        self.k = 0
        for (kind, payload) in self.nodes:
            if kind == "eq":
                self.k = gcd(self.k, payload[2])

    def _parse_sig(self, f, width):
        """Split one right signature into internal node descriptors."""
        if f.arity == 1:
            c0, c1 = f[0], f[1]
            if c0.is_zero() or c1.is_zero():
                return [("pin", (c0, c1), 1)]
            raise ClassError("unary %r is neither pin nor splittable" % f)
        if f.proportional_to(exact_one(f.arity)):
            if f.arity >= 3:
                self.exact_ones.append(f)
            return [("eo", f[1], width)]
        if f.arity >= 3 and f.proportional_to(all_but_one(f.arity)):
            self.reversed_ones.append(f)
            return [("rev", f[f.arity - 1], width)]
        end = _endpoints(f)
        if end is not None and not end[0].is_zero() and not end[1].is_zero():
            self.equalities.append(f)
            return [("eq", (end[0], end[1], f.arity), width)]
        d = tensor_decompose(f)
        if d.kind == "degenerate":
            u0, u1 = AN(d.u[0]), AN(d.u[1])
            if not u0.is_zero() and not u1.is_zero():
                raise ClassError(
                    "degenerate %r has no pin decomposition" % f)
            self.scalar = self.scalar * d.c
            return [("pin", (u0, u1), 1)] * f.arity
        raise ClassError("%r is not a weighted equality, exact-one or pin" % f)


class _EOState:
    """Mutable working instance for the pinning algorithm.

    Vertex kinds: "eq" carries support weights (w0, w1) and a sign bit on
    each incident end; "eo" carries a weight on each end (the value when
    that end holds the single 1); "pin" carries (c0, c1) with one side zero.
    Every edge is a disequality between its two ends.
    """

    def __init__(self):
        self.scalar = ONE
        self.kind = {}
        self.eqw = {}
        self.pinw = {}
        self.ends = {}      # eid -> [[vid, data], [vid, data]]
        self.inc = {}       # vid -> set of (eid, end index)
        self.done = {}      # resolved edges -> value of end 0
        self.zero = False
        self._next = 0

    def fresh(self):
        self._next += 1
        return self._next

    def measure(self):
        return len(self.ends) + len(self.kind)

    def add_vertex(self, kind, payload=None):
        vid = self.fresh()
        self.kind[vid] = kind
        self.inc[vid] = set()
        if kind == "eq":
            self.eqw[vid] = list(payload)
        elif kind == "pin":
            self.pinw[vid] = payload
        return vid

    def add_edge(self, va, da, vb, db):
        eid = self.fresh()
        self.ends[eid] = [[va, da], [vb, db]]
        self.inc[va].add((eid, 0))
        self.inc[vb].add((eid, 1))
        return eid

    def drop_vertex(self, vid):
        del self.kind[vid]
        del self.inc[vid]
        self.eqw.pop(vid, None)
        self.pinw.pop(vid, None)

    def detach_edge(self, eid):
        (va, _), (vb, _) = self.ends.pop(eid)
        if va in self.inc:
            self.inc[va].discard((eid, 0))
        if vb in self.inc:
            self.inc[vb].discard((eid, 1))

    def mul(self, w):
        self.scalar = self.scalar * w
        if self.scalar.is_zero():
            self.zero = True


def _eo_state(inst):
    state = _EOState()
    node_vid = []
    for (kind, payload) in inst.nodes:
        if kind == "eq":
            node_vid.append(state.add_vertex("eq", (payload[0], payload[1])))
        elif kind == "eo":
            node_vid.append(state.add_vertex("eo"))
        else:
            node_vid.append(state.add_vertex("pin", payload))
    for ((na, _), (nb, _)) in inst.edges:
        da = _end_data(*inst.nodes[na])
        db = _end_data(*inst.nodes[nb])
        state.add_edge(node_vid[na], da, node_vid[nb], db)
    state.scalar = inst.scalar
    if state.scalar.is_zero() or inst.zero:
        state.zero = True
    return state


def _end_data(kind, payload):
    if kind == "eq":
        return 0
    if kind == "eo":
        return payload
    return None


def _resolve(state, requests):
    """Assign edge-end values and propagate all forced consequences."""
    while requests and not state.zero:
        eid, idx, val = requests.pop()
        val0 = val if idx == 0 else 1 - val
        if eid in state.done:
            if state.done[eid] != val0:
                state.zero = True
            continue
        if eid not in state.ends:
            raise AssertionError("resolving an unknown edge")
        state.done[eid] = val0
        (va, da), (vb, db) = state.ends[eid]
        state.detach_edge(eid)
        if va == vb:
            _absorb_loop(state, va, da, db, val0, requests)
            continue
        _absorb(state, va, da, val0, requests)
        if not state.zero:
            _absorb(state, vb, db, 1 - val0, requests)


def _absorb_loop(state, v, da, db, val0, requests):
    if v not in state.kind:
        return
    kind = state.kind[v]
    if kind == "eq":
        if (val0 ^ da) != ((1 - val0) ^ db):
            state.zero = True
            return
        _collapse_eq(state, v, val0 ^ da, requests)
    elif kind == "eo":
        state.mul(da if val0 == 1 else db)
        _collapse_eo(state, v, requests)
    else:
        raise AssertionError("pins have a single end")


def _absorb(state, v, data, endval, requests):
    if v not in state.kind:
        return
    kind = state.kind[v]
    if kind == "pin":
        c = state.pinw[v][endval]
        state.mul(c)
        state.drop_vertex(v)
    elif kind == "eq":
        _collapse_eq(state, v, endval ^ data, requests)
    else:
        if endval == 1:
            state.mul(data)
            _collapse_eo(state, v, requests)
        elif not state.inc[v]:
            state.zero = True


def _collapse_eq(state, v, value, requests):
    state.mul(state.eqw[v][value])
    for (eid, idx) in sorted(state.inc[v]):
        sign = state.ends[eid][idx][1]
        requests.append((eid, idx, value ^ sign))
    state.drop_vertex(v)


def _collapse_eo(state, v, requests):
    for (eid, idx) in sorted(state.inc[v]):
        requests.append((eid, idx, 0))
    state.drop_vertex(v)


def _merge_eq(state, keep, gone, t, extra0=ONE, extra1=ONE):
    """Fold block `gone` (value = value(keep) xor t) into `keep`."""
    w0, w1 = state.eqw[gone]
    k0, k1 = state.eqw[keep]
    state.eqw[keep] = [k0 * (w0 if t == 0 else w1) * extra0,
                       k1 * (w1 if t == 0 else w0) * extra1]
    for (eid, idx) in sorted(state.inc[gone]):
        sign = state.ends[eid][idx][1]
        state.ends[eid][idx] = [keep, sign ^ t]
        state.inc[keep].add((eid, idx))
    state.inc[gone].clear()
    state.drop_vertex(gone)
    if state.eqw[keep][0].is_zero() and state.eqw[keep][1].is_zero():
        state.zero = True


def _merge_eo(state, keep, gone, w_keep_side, w_gone_side):
    """Merge eo `gone` into `keep` after removing their connecting edge.

    Ends kept from `keep` get their weight multiplied by w_keep_side, ends
    from `gone` by w_gone_side.
    """
    for (eid, idx) in sorted(state.inc[keep]):
        state.ends[eid][idx][1] = state.ends[eid][idx][1] * w_keep_side
    for (eid, idx) in sorted(state.inc[gone]):
        state.ends[eid][idx] = [keep, state.ends[eid][idx][1] * w_gone_side]
        state.inc[keep].add((eid, idx))
    state.inc[gone].clear()
    state.drop_vertex(gone)


def _pairs_between(state):
    """Multiplicity map (min vid, max vid) -> sorted edge ids."""
    out = {}
    for eid in sorted(state.ends):
        (va, _), (vb, _) = state.ends[eid]
        if va == vb:
            continue
        key = (min(va, vb), max(va, vb))
        out.setdefault(key, []).append(eid)
    return out


def _simplify_step(state):
    """Apply one local rewrite; True when something fired."""
    # pins force their edge
    for v in sorted(state.kind):
        if state.kind[v] == "pin":
            c0, c1 = state.pinw[v]
            [(eid, idx)] = list(state.inc[v])
            _resolve(state, [(eid, idx, 1 if c0.is_zero() else 0)])
            return True
    # tiny vertices
    for v in sorted(state.kind):
        kind = state.kind[v]
        deg = len(state.inc[v])
        if kind == "eo" and deg == 0:
            state.zero = True
            return True
        if kind == "eo" and deg == 1:
            [(eid, idx)] = list(state.inc[v])
            _resolve(state, [(eid, idx, 1)])
            return True
        if kind == "eq" and deg == 0:
            state.mul(state.eqw[v][0] + state.eqw[v][1])
            state.drop_vertex(v)
            return True
    # self-loops
    for eid in sorted(state.ends):
        (va, da), (vb, db) = state.ends[eid]
        if va != vb:
            continue
        if state.kind[va] == "eq":
            if da == db:
                state.zero = True
            else:
                state.detach_edge(eid)
            return True
        # an exact-one self-loop holds its 1; every other end becomes 0
        state.mul(da + db)
        state.detach_edge(eid)
        reqs = []
        _collapse_eo(state, va, reqs)
        _resolve(state, reqs)
        return True
    # edges between two blocks: merge
    pairs = _pairs_between(state)
    for (va, vb), eids in sorted(pairs.items()):
        if state.kind[va] == "eq" and state.kind[vb] == "eq":
            eid = eids[0]
            (xa, da), (xb, db) = state.ends[eid]
            t = 1 ^ da ^ db
            keep, gone = (xa, xb)
            state.detach_edge(eid)
            _merge_eq(state, keep, gone, t)
            return True
    # multiple edges between two exact-ones, then single-edge merging
    for (va, vb), eids in sorted(pairs.items()):
        if state.kind[va] == "eo" and state.kind[vb] == "eo":
            if len(eids) >= 3:
                state.zero = True
                return True
            if len(eids) == 2:
                e1, e2 = eids
                l1 = _end_weight(state, e1, va)
                l2 = _end_weight(state, e2, va)
                m1 = _end_weight(state, e1, vb)
                m2 = _end_weight(state, e2, vb)
                state.mul(l1 * m2 + l2 * m1)
                state.detach_edge(e1)
                state.detach_edge(e2)
                reqs = []
                _collapse_eo(state, va, reqs)
                _collapse_eo(state, vb, reqs)
                _resolve(state, reqs)
                return True
            eid = eids[0]
            lk = _end_weight(state, eid, va)
            lg = _end_weight(state, eid, vb)
            state.detach_edge(eid)
            _merge_eo(state, va, vb, w_keep_side=lg, w_gone_side=lk)
            return True
    # parallel edges between a block and an exact-one
    for (va, vb), eids in sorted(pairs.items()):
        kinds = (state.kind[va], state.kind[vb])
        if len(eids) < 2 or "eq" not in kinds or "eo" not in kinds:
            continue
        blk = va if state.kind[va] == "eq" else vb
        eo = vb if blk == va else va
        signs = [_end_weight(state, eid, blk) for eid in eids]
        same = None
        for i in range(len(eids)):
            for j in range(i + 1, len(eids)):
                if signs[i] == signs[j]:
                    same = (eids[i], signs[i])
                    break
            if same:
                break
        if same is not None:
            _, s = same
            reqs = []
            _collapse_eq(state, blk, 1 - s, reqs)
            _resolve(state, reqs)
            return True
        # exactly two edges with opposite signs: the exact-one is satisfied
        e1, e2 = eids[0], eids[1]
        s1 = _end_weight(state, e1, blk)
        lam = {s1: _end_weight(state, e1, eo),
               1 - s1: _end_weight(state, e2, eo)}
        w0, w1 = state.eqw[blk]
        state.eqw[blk] = [w0 * lam[0], w1 * lam[1]]
        state.detach_edge(e1)
        state.detach_edge(e2)
        reqs = []
        _collapse_eo(state, eo, reqs)
        _resolve(state, reqs)
        return True
    # arity-2 blocks act as weighted disequality connectors
    for v in sorted(state.kind):
        if state.kind[v] != "eq" or len(state.inc[v]) != 2:
            continue
        (e1, i1), (e2, i2) = sorted(state.inc[v])
        d1 = state.ends[e1][i1][1]
        d2 = state.ends[e2][i2][1]
        u = state.ends[e1][1 - i1][0]
        w = state.ends[e2][1 - i2][0]
        if u == v or w == v or u == w:
            continue
        if d1 == d2:
            raise PinSearchError(
                "same-sign arity-2 block: equality arities violate gcd >= 5")
        if state.kind[u] != "eo" or state.kind[w] != "eo":
            continue
        w0, w1 = state.eqw[v]
        lam_u = _end_weight(state, e1, u)
        lam_w = _end_weight(state, e2, w)
        state.detach_edge(e1)
        state.detach_edge(e2)
        state.drop_vertex(v)
        # u's surviving ends: the 1 sits on u, block value = 1 xor d1
        # w's surviving ends: the 1 sits on w, block value = d1
        _merge_eo(state, u, w,
                  w_keep_side=lam_w * (w1 if d1 == 0 else w0),
                  w_gone_side=lam_u * (w0 if d1 == 0 else w1))
        return True
    # arity-2 exact-ones between two blocks: merge the blocks through them
    for v in sorted(state.kind):
        if state.kind[v] != "eo" or len(state.inc[v]) != 2:
            continue
        (e1, i1), (e2, i2) = sorted(state.inc[v])
        l1 = state.ends[e1][i1][1]
        l2 = state.ends[e2][i2][1]
        b1 = state.ends[e1][1 - i1][0]
        b2 = state.ends[e2][1 - i2][0]
        if b1 == v or b2 == v or b1 == b2:
            continue
        if state.kind[b1] != "eq" or state.kind[b2] != "eq":
            continue
        d1 = state.ends[e1][1 - i1][1]
        d2 = state.ends[e2][1 - i2][1]
        t = 1 ^ d1 ^ d2
        state.detach_edge(e1)
        state.detach_edge(e2)
        state.drop_vertex(v)
        _merge_eq(state, b1, b2, t,
                  extra0=(l1 if d1 == 0 else l2),
                  extra1=(l2 if d1 == 0 else l1))
        return True
    return False


def _end_weight(state, eid, vid):
    """The end payload (weight or sign) that vertex vid holds on edge eid."""
    for (v, d) in state.ends[eid]:
        if v == vid:
            return d
    raise AssertionError


def _pin_step(state):
    """Locate guaranteed pinned edges in the relaxed instance and apply them."""
    blocks = {v for v in state.kind if state.kind[v] == "eq"}
    eos = {v for v in state.kind if state.kind[v] == "eo"}
    if not blocks or not eos:
        raise PinSearchError("pin search on a non-mixed instance")
    small = []
    big = []
    for b in sorted(blocks):
        deg = len(state.inc[b])
        if deg == 4:
            small.append(b)
        elif deg >= 5:
            big.append(b)
        else:
            raise PinSearchError("block of arity %d in the pin phase" % deg)
    # relax arity-4 blocks into paired pseudo-disequalities
    pseudo = []   # (eoA, endA, eoB, endB) with end = (eid, idx at the eo)
    for b in small:
        plus = []
        minus = []
        for (eid, idx) in sorted(state.inc[b]):
            sign = state.ends[eid][idx][1]
            other = state.ends[eid][1 - idx][0]
            entry = (eid, 1 - idx, other)
            (plus if sign == 0 else minus).append(entry)
        if len(plus) != 2 or len(minus) != 2:
            raise PinSearchError("arity-4 block without a (2,2) sign split")
        pseudo.append((plus[0], minus[0]))
        pseudo.append((plus[1], minus[1]))
    # cycle search in the exact-one / pseudo-edge graph
    cycle = _find_cycle([(ea[2], eb[2]) for (ea, eb) in pseudo])
    if cycle is not None:
        cyc_eos, cyc_pseudos = cycle
        used = set()
        for pi in cyc_pseudos:
            ea, eb = pseudo[pi]
            used.add((ea[2], ea[0]))
            used.add((eb[2], eb[0]))
        reqs = []
        for v in cyc_eos:
            for (eid, idx) in sorted(state.inc[v]):
                if (v, eid) not in used:
                    reqs.append((eid, idx, 0))
        assert reqs
        _resolve(state, reqs)
        return
    # no cycles: pseudo edges form trees; group exact-ones into super nodes
    parent = {v: v for v in eos}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (ea, eb) in pseudo:
        ra, rb = find(ea[2]), find(eb[2])
        if ra != rb:
            parent[ra] = rb
    pseudo_ends = {(ea[2], ea[0]) for (ea, eb) in pseudo} | \
                  {(eb[2], eb[0]) for (ea, eb) in pseudo}
    super_slots = {}
    for v in sorted(eos):
        root = find(v)
        for (eid, idx) in sorted(state.inc[v]):
            if (v, eid) not in pseudo_ends:
                super_slots.setdefault(root, []).append((eid, idx, v))
    # parallel edges between a big block and one super node
    for b in big:
        by_super = {}
        for (eid, idx) in sorted(state.inc[b]):
            other = state.ends[eid][1 - idx][0]
            by_super.setdefault(find(other), []).append((eid, idx))
        for root, slots in sorted(by_super.items()):
            if len(slots) < 2:
                continue
            signs = [state.ends[eid][idx][1] for (eid, idx) in slots]
            same_pair = None
            for i in range(len(slots)):
                for j in range(i + 1, len(slots)):
                    if signs[i] == signs[j]:
                        same_pair = (slots[i], slots[j])
            if same_pair is not None:
                reqs = [(eid, 1 - idx, 0) for (eid, idx) in same_pair]
                _resolve(state, reqs)
                return
            pair = {slots[0][0], slots[1][0]}
            reqs = [(eid, idx, 0) for (eid, idx, _) in super_slots[root]
                    if eid not in pair]
            assert reqs, "a super exact-one of arity >= 3 keeps a free end"
            _resolve(state, reqs)
            return
    # simple bipartite graph: only the wheel structure remains (k = 5)
    _wheel_step(state, big, find, super_slots)


def _find_cycle(pairs):
    """The first simple cycle closed while growing a forest edge by edge.

    Returns (set of vertices on the cycle, set of edge indices) or None.
    """
    parent = {}
    tree = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pi, (a, b) in enumerate(pairs):
        for x in (a, b):
            if x not in parent:
                parent[x] = x
                tree[x] = []
        assert a != b, "a pseudo pair never returns to its own exact-one"
        if find(a) != find(b):
            parent[find(a)] = find(b)
            tree[a].append((pi, b))
            tree[b].append((pi, a))
            continue
        # the tree path from a to b plus this edge closes a cycle
        prev = {a: (None, None)}
        stack = [a]
        while b not in prev:
            v = stack.pop()
            for (ei, w) in tree[v]:
                if w not in prev:
                    prev[w] = (v, ei)
                    stack.append(w)
        verts, eids = set(), {pi}
        v = b
        while v is not None:
            verts.add(v)
            v, ei = prev[v]
            if ei is not None:
                eids.add(ei)
        return verts, eids
    return None


def _wheel_step(state, big, find, super_slots):
    """Pin through a wheel: a degree-5 all-equal-sign block whose five
    neighbors close a 5-cycle via five distinct rim blocks."""
    super_deg = {root: len(slots) for root, slots in super_slots.items()}
    # adjacency: block -> supers, super -> blocks (all simple here)
    b_adj = {}
    for b in big:
        seen = {}
        for (eid, idx) in sorted(state.inc[b]):
            other = state.ends[eid][1 - idx][0]
            root = find(other)
            seen[root] = (eid, idx)
        b_adj[b] = seen
    for c in sorted(big):
        if len(state.inc[c]) != 5 or len(b_adj[c]) != 5:
            continue
        signs = {state.ends[eid][idx][1] for (eid, idx) in state.inc[c]}
        if len(signs) != 1:
            continue
        supers = sorted(b_adj[c])
        heavy = [t for t in supers if super_deg[t] > 3]
        if len(heavy) > 1:
            continue
        arrangement = _arrange_wheel(supers, b_adj, c)
        if arrangement is None:
            continue
        order, rims = arrangement
        # different rim signs along the cycle pin the center to 0
        mixed = False
        for i in range(5):
            rim = rims[i]
            e1 = b_adj[rim][order[i]]
            e2 = b_adj[rim][order[(i + 1) % 5]]
            s1 = state.ends[e1[0]][e1[1]][1]
            s2 = state.ends[e2[0]][e2[1]][1]
            if s1 != s2:
                mixed = True
        if mixed:
            reqs = [(eid, 1 - idx, 0) for (eid, idx) in sorted(state.inc[c])]
            _resolve(state, reqs)
            return
        if not heavy:
            # type 1: the center is pinned to 1 on the matching side
            reqs = [(eid, 1 - idx, 1) for (eid, idx) in sorted(state.inc[c])]
            _resolve(state, reqs)
            return
        # type 2: the heavy neighbor's two rim edges are pinned to 0
        t = heavy[0]
        i = order.index(t)
        reqs = []
        for rim in (rims[(i - 1) % 5], rims[i]):
            eid, idx = b_adj[rim][t]
            reqs.append((eid, 1 - idx, 0))
        _resolve(state, reqs)
        return
    raise PinSearchError("no parallel edges, cycle, or wheel: "
                         "is the instance genus 0 with gcd >= 5?")


def _arrange_wheel(supers, b_adj, center):
    """Order the five neighbors into a cycle closed by distinct rim blocks."""
    rim_between = {}
    for b in sorted(b_adj):
        if b == center:
            continue
        for i in range(5):
            for j in range(i + 1, 5):
                if supers[i] in b_adj[b] and supers[j] in b_adj[b]:
                    rim_between.setdefault((supers[i], supers[j]), []).append(b)
    from itertools import permutations
    first = supers[0]
    for perm in permutations(supers[1:]):
        order = [first] + list(perm)
        if order[1] > order[-1]:
            continue  # each cycle once
        chosen = []
        ok = True
        for i in range(5):
            a, b = order[i], order[(i + 1) % 5]
            key = (min(a, b), max(a, b))
            cands = [r for r in rim_between.get(key, ()) if r not in chosen]
            if not cands:
                ok = False
                break
            chosen.append(cands[0])
        if ok:
            return order, chosen
    return None


def eo_geneq_eval(inst):
    """Exact Holant of an EO instance by repeated rewriting and pinning."""
    if inst.k and inst.k < 5:
        raise GcdError("equality arities have gcd %d < 5" % inst.k)
    state = _eo_state(inst)
    while not state.zero and (state.ends or state.kind):
        before = state.measure()
        if not _simplify_step(state):
            if state.zero:
                break
            _pin_step(state)
        assert state.zero or state.measure() < before, \
            "the rewrite system failed to make progress"
    return ZERO if state.zero else state.scalar


# ---------------------------------------------------------------------------
# hypergraph perfect matchings
# ---------------------------------------------------------------------------

class PlanarHypergraph:
    """A hypergraph with a genus-0 incidence embedding.

    ``rotation`` maps every node (hypergraph vertex or hyperedge id) to the
    counterclockwise list of its incidence half-edge ids; an incidence is one
    id shared between a hyperedge's rotation and a member vertex's rotation.
    """

    def __init__(self, vertices, hyperedges, rotation):
        self.vertices = list(vertices)
        self.hyperedges = [(h, list(members)) for (h, members) in hyperedges]
        self.rotation = {k: list(v) for k, v in rotation.items()}
        vset = set(self.vertices)
        hset = {h for (h, _) in self.hyperedges}
        if vset & hset:
            raise StructureError("vertex and hyperedge ids must be disjoint")
        owners = {}
        for node in list(vset) + sorted(hset, key=repr):
            for half in self.rotation.get(node, ()):
                owners.setdefault(half, []).append(node)
        for half, who in owners.items():
            if len(who) != 2 or ((who[0] in vset) == (who[1] in vset)):
                raise StructureError(
                    "incidence %r must join one vertex and one hyperedge"
                    % (half,))
        for (h, members) in self.hyperedges:
            touched = sorted(
                (w for half in self.rotation.get(h, ())
                 for w in owners[half] if w in vset), key=repr)
            if sorted(members, key=repr) != touched:
                raise StructureError(
                    "hyperedge %r members disagree with its rotation" % (h,))
        self._grid = self._incidence_grid()
        _, ok = self._grid.validate()
        if not ok:
            raise EmbeddingError("the incidence embedding is not genus 0")

    def sizes(self):
        return [len(members) for (_, members) in self.hyperedges]

    def _incidence_grid(self):
        """The disequality-connected Holant grid whose value is the PM count.

        Hyperedges carry equalities and vertices carry all-but-one (each
        vertex sees the negation of the hyperedge indicator through the
        disequality edge), so selecting exactly one incident hyperedge per
        vertex is exactly a perfect matching.
        """
        verts = []
        side = {}
        half_vertex = {}
        for node in self.vertices:
            for h in self.rotation.get(node, ()):
                half_vertex[h] = node
        for node in self.vertices:
            deg = len(self.rotation.get(node, ()))
            if deg == 0:
                # an uncovered vertex admits no perfect matching
                verts.append(Vertex(("iso", node), SymmetricSignature([0]), []))
                side[("iso", node)] = "R"
                continue
            # through the disequality the vertex sees negated indicators:
            # exactly one incidence chosen means all slots but one read 1
            sig = all_but_one(deg) if deg >= 2 else SymmetricSignature([1, 0])
            verts.append(Vertex(node, sig,
                                ["v%r_%r" % (node, h)
                                 for h in self.rotation[node]]))
            side[node] = "R"
        for (h, members) in self.hyperedges:
            rot = self.rotation.get(h, ())
            s = len(rot)
            if s == 0:
                continue
            sig = equality(s) if s >= 2 else SymmetricSignature([1, 1])
            verts.append(Vertex(("he", h), sig,
                                ["h%r_%r" % (h, half) for half in rot]))
            side[("he", h)] = "R"
        edges = []
        mid = 0
        for (h, _) in self.hyperedges:
            for half in self.rotation.get(h, ()):
                owner = half_vertex[half]
                la, lb = "L%d_a" % mid, "L%d_b" % mid
                verts.append(Vertex(("ne", mid), diseq2(), [la, lb]))
                side[("ne", mid)] = "L"
                edges.append(("h%r_%r" % (h, half), la))
                edges.append(("v%r_%r" % (owner, half), lb))
                mid += 1
        return PlanarGrid(verts, edges, side=side)

    def holant_grid(self):
        return self._grid


def hypergraph_pm(h, cap=None):
    """(verdict, value): exact when tractable, else capped brute force."""
    sizes = h.sizes()
    if not sizes:
        # no hyperedges: a perfect matching exists only for no vertices
        return (SetVerdict("hpm", True, case="no hyperedges"),
                ZERO if h.vertices else ONE)
    verdict = hypergraph_verdict(sizes)
    t = 0
    for s in sizes:
        t = gcd(t, s)
    if t >= 5:
        return verdict, eo_geneq_eval(EOInstance(h.holant_grid()))
    if set(sizes) == {2}:
        # ordinary graph: count perfect matchings through FKT
        rotation = {v: list(h.rotation.get(v, ())) for v in h.vertices}
        edges = []
        for (he, members) in h.hyperedges:
            h1, h2 = h.rotation[he]
            edges.append((h1, h2, ONE))
        g = WeightedPlanarGraph(h.vertices, rotation, edges)
        return verdict, fkt_count_pm(g)
    # PHard sizes, or size-1 hyperedges (planar monomer-dimer): brute force
    try:
        value = h.holant_grid().holant(cap)
    except TooLarge:
        value = None
    return verdict, value


def hypergraph_from_json(doc):
    return PlanarHypergraph(
        [_maybe_int(v) for v in doc["vertices"]],
        [(_maybe_int(e["id"]), [_maybe_int(m) for m in e["members"]])
         for e in doc["hyperedges"]],
        {_maybe_int(k): v for k, v in doc["rotation"].items()})


def hypergraph_to_json(h):
    return {
        "vertices": list(h.vertices),
        "hyperedges": [{"id": he, "members": list(m)}
                       for (he, m) in h.hyperedges],
        "rotation": {str(k): list(v) for k, v in h.rotation.items()},
    }


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------

def _fkt_route(grid):
    """Grids of exact-one signatures count weighted perfect matchings."""
    scalar = grid.scalar
    rotation = {}
    for vid, v in grid.vertices.items():
        if not v.sig.proportional_to(exact_one(v.sig.arity)):
            raise ClassError("%r is not an exact-one signature" % v.sig)
        scalar = scalar * v.sig[1]
        rotation[vid] = list(v.rotation)
    g = WeightedPlanarGraph(list(grid.vertices), rotation,
                            [(a, b, ONE) for (a, b) in grid.edges])
    return scalar * fkt_count_pm(g)


def _eo_route(grid):
    """Z-side normalization: stretch, transform by Z, run the pin solver."""
    stretched = two_stretch(grid)
    transformed = holographic_transform_bipartite(stretched, Z)
    return eo_geneq_eval(EOInstance(transformed))


def _transformed_route(grid, T):
    stretched = two_stretch(grid)
    transformed = holographic_transform_bipartite(stretched, T)
    sigs = [v.sig for v in transformed.vertices.values()]
    if all(in_P(f) for f in sigs):
        return product_eval(transformed)
    if all(in_A(f) for f in sigs):
        return affine_eval(transformed)
    return None


def evaluate(grid, method="auto", cap=None):
    """Exact Holant value through the best applicable route."""
    if method == "brute":
        return grid.holant(cap)
    if method == "product":
        return product_eval(grid)
    if method == "affine":
        return affine_eval(grid)
    if method == "fkt":
        return _fkt_route(grid)
    if method == "eo":
        return _eo_route(grid)
    if method != "auto":
        raise ValueError("unknown method %r" % method)
    if not grid.vertices:
        return grid.scalar
    sigs = []
    for vid in sorted(grid.vertices, key=repr):
        f = grid.vertices[vid].sig
        if f not in sigs:
            sigs.append(f)
    if all(in_P(f) for f in sigs):
        return product_eval(grid)
    if all(in_A(f) for f in sigs):
        return affine_eval(grid)
    if all(in_vanishing_plus(f) for f in sigs) or \
            all(in_vanishing_minus(f) for f in sigs):
        return ZERO
    if all(f.proportional_to(exact_one(f.arity)) for f in sigs):
        return _fkt_route(grid)
    verdict = dichotomy_plholant_set(sigs)
    if verdict.tractable:
        if verdict.witness is not None:
            value = _transformed_route(grid, verdict.witness)
            if value is not None:
                return value
        if verdict.case and "case 7" in verdict.case:
            return _eo_route(grid)
        try:
            return grid.holant(cap)
        except TooLarge:
            raise TooLarge(
                "tractable (%s) but no polynomial route is implemented and "
                "%d edges exceed the cap %d"
                % (verdict.case, len(grid.edges), edge_cap(cap)))
    try:
        return grid.holant(cap)
    except TooLarge:
        raise TooLarge(
            "classified #P-hard (%s) and %d edges exceed the brute-force "
            "cap %d" % (verdict.obstruction, len(grid.edges), edge_cap(cap)))

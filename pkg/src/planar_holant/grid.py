"""Planar signature grids with rotation systems.

A grid is a set of vertices carrying signatures, a counterclockwise rotation
(cyclic list of half-edge ids) per vertex, matched edges as unordered pairs
of half-edge ids, and an ordered list of dangling half-edges for F-gates.
Faces come from rotation-system traversal; planarity is verified through the
Euler formula per connected component, never computed.
"""

import json
import os

from .algebra import AN, ONE, ZERO
from .sigcalc import (
    GeneralSignature,
    SymmetricSignature,
    equality,
    row_transform,
    transform,
)


class StructureError(ValueError):
    pass


class EmbeddingError(ValueError):
    pass


class OrderError(EmbeddingError):
    pass


class TooLarge(RuntimeError):
    pass


class NotBipartite(ValueError):
    pass


class SingularTransform(ValueError):
    pass


DEFAULT_CAP = 24


def edge_cap(override=None):
    if override is not None:
        return override
    env = os.environ.get("HOLANT_CAP")
    return int(env) if env else DEFAULT_CAP


class Vertex:
    __slots__ = ("id", "sig", "rotation")

    def __init__(self, vid, sig, rotation):
        self.id = vid
        self.sig = sig
        self.rotation = tuple(rotation)


class PlanarGrid:
    def __init__(self, vertices, edges, dangling=(), side=None, scalar=ONE):
        self.vertices = {v.id: v for v in vertices}
        if len(self.vertices) != len(vertices):
            raise StructureError("duplicate vertex ids")
        self.edges = [tuple(e) for e in edges]
        self.dangling = tuple(dangling)
        self.side = dict(side) if side else {}
        self.scalar = AN(scalar)
        self._index()

    def _index(self):
        self.half_owner = {}
        for v in self.vertices.values():
            arity = v.sig.arity
            if len(v.rotation) != arity:
                raise StructureError(
                    "vertex %r degree %d != signature arity %d"
                    % (v.id, len(v.rotation), arity))
            for h in v.rotation:
                if h in self.half_owner:
                    raise StructureError("half-edge %r used twice" % (h,))
                self.half_owner[h] = v.id
        self.partner = {}
        seen = set()
        for (a, b) in self.edges:
            for h in (a, b):
                if h not in self.half_owner:
                    raise StructureError("edge uses unknown half-edge %r" % (h,))
                if h in seen:
                    raise StructureError("half-edge %r in two edges" % (h,))
                seen.add(h)
            self.partner[a] = b
            self.partner[b] = a
        for h in self.dangling:
            if h not in self.half_owner:
                raise StructureError("dangling unknown half-edge %r" % (h,))
            if h in seen:
                raise StructureError("half-edge %r both matched and dangling" % (h,))
            seen.add(h)
        missing = set(self.half_owner) - seen
        if missing:
            raise StructureError("half-edges neither matched nor dangling: %r"
                                 % sorted(missing))

    # -- faces and planarity ------------------------------------------------

    def faces(self):
        """Face orbits of the rotation system, as lists of out-dart half-edges.

        Dangling half-edges are ignored; only matched darts trace faces.
        """
        partner = self.partner
        nxt_at = {}
        for v in self.vertices.values():
            rot = [h for h in v.rotation if h in partner]
            for i, h in enumerate(rot):
                nxt_at[h] = rot[(i + 1) % len(rot)]
        out = []
        visited = set()
        for h0 in sorted(nxt_at, key=repr):
            if h0 in visited or h0 not in partner:
                continue
            face = []
            h = h0
            while True:
                face.append(h)
                visited.add(h)
                h = nxt_at[partner[h]]
                if h == h0:
                    break
            out.append(face)
        return out

    def _components(self):
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for (a, b) in self.edges:
            union(self.half_owner[a], self.half_owner[b])
        comps = {}
        for v in self.vertices:
            comps.setdefault(find(v), []).append(v)
        return list(comps.values())

    def validate(self):
        """(faces, genus_ok): Euler characteristic 2 per component.

        Dangling edges are closed off through a virtual outer vertex whose
        rotation reverses the declared counterclockwise order, which also
        checks that the dangling edges can sit on a common outer face.
        """
        if self.dangling:
            virt_halves = ["__virt_%d" % k for k in range(len(self.dangling))]
            virt = Vertex("__virt", _DummySig(len(self.dangling)),
                          list(reversed(virt_halves)))
            pairs = list(zip(self.dangling, virt_halves))
            closed = PlanarGrid(
                list(self.vertices.values()) + [virt],
                self.edges + pairs,
                (), self.side, self.scalar)
            faces = closed.faces()
            ok = closed._euler_ok()
            if not ok and self._euler_ok():
                raise OrderError("dangling order inconsistent with an outer face")
            return faces, ok
        return self.faces(), self._euler_ok()

    def _euler_ok(self):
        comp = self._components()
        vert_comp = {}
        for ci, vs in enumerate(comp):
            for v in vs:
                vert_comp[v] = ci
        e_count = [0] * len(comp)
        f_sets = [set() for _ in comp]
        for (a, b) in self.edges:
            e_count[vert_comp[self.half_owner[a]]] += 1
        for fi, face in enumerate(self.faces()):
            f_sets[vert_comp[self.half_owner[face[0]]]].add(fi)
        for ci, vs in enumerate(comp):
            f = len(f_sets[ci]) if e_count[ci] else 1
            if len(vs) - e_count[ci] + f != 2:
                return False
        return True

    # -- evaluation -----------------------------------------------------------

    def holant(self, cap=None):
        """Exact Holant value by frontier contraction over all edge assignments."""
        if self.dangling:
            raise StructureError("holant needs a closed grid; use gate_signature")
        if len(self.edges) > edge_cap(cap):
            raise TooLarge("edge count %d over cap %d"
                           % (len(self.edges), edge_cap(cap)))
        return self.scalar * _contract(self, {})

    def gate_signature(self, cap=None):
        """The F-gate signature over the dangling edges, as a GeneralSignature."""
        if not self.dangling:
            raise StructureError("gate needs dangling edges")
        if len(self._components()) > 1:
            raise StructureError("multi-component gates are not supported")
        if len(self.edges) > edge_cap(cap):
            raise TooLarge("edge count %d over cap %d"
                           % (len(self.edges), edge_cap(cap)))
        m = len(self.dangling)
        ents = []
        for idx in range(1 << m):
            pins = {h: (idx >> (m - 1 - i)) & 1 for i, h in enumerate(self.dangling)}
            ents.append(self.scalar * _contract(self, pins))
        return GeneralSignature(m, ents)


class _DummySig:
    """Placeholder signature for the virtual closing vertex."""

    def __init__(self, arity):
        self.arity = arity


def _contract(grid, pinned):
    """Sum over assignments of matched edges; dangling bits fixed by `pinned`."""
    edge_of = {}
    for ei, (a, b) in enumerate(grid.edges):
        edge_of[a] = ei
        edge_of[b] = ei
    states = {(): ONE}
    open_edges = []  # edges with exactly one processed endpoint, in state-key order
    for vid in _vertex_order(grid):
        v = grid.vertices[vid]
        fixed = {}       # slot -> pinned bit
        closing = {}     # slot -> position in open_edges
        fresh = []       # slots opening edges toward unprocessed vertices
        loop_first = {}  # self-loop edge id -> first slot
        loop_pairs = {}  # second self-loop slot -> first slot
        for i, h in enumerate(v.rotation):
            if h in pinned:
                fixed[i] = pinned[h]
                continue
            ei = edge_of[h]
            a, b = grid.edges[ei]
            other = b if h == a else a
            if grid.half_owner[other] == vid:
                if ei in loop_first:
                    loop_pairs[i] = loop_first[ei]
                else:
                    loop_first[ei] = i
            elif ei in open_edges:
                closing[i] = open_edges.index(ei)
            else:
                fresh.append(i)
        closed = {open_edges[p] for p in closing.values()}
        keep_pos = [p for p, e in enumerate(open_edges) if e not in closed]
        enum_slots = fresh + sorted(loop_first.values())
        new_states = {}
        deg = len(v.rotation)
        for key, weight in states.items():
            base = [None] * deg
            for i, bit in fixed.items():
                base[i] = bit
            for i, pos in closing.items():
                base[i] = key[pos]
            kept = tuple(key[p] for p in keep_pos)
            for mask in range(1 << len(enum_slots)):
                bits = list(base)
                for j, i in enumerate(enum_slots):
                    bits[i] = (mask >> j) & 1
                for i, first in loop_pairs.items():
                    bits[i] = bits[first]
                val = _sig_value(v.sig, bits)
                if val.is_zero():
                    continue
                nkey = kept + tuple(bits[i] for i in fresh)
                w = weight * val
                if nkey in new_states:
                    new_states[nkey] = new_states[nkey] + w
                else:
                    new_states[nkey] = w
        open_edges = [open_edges[p] for p in keep_pos] + \
            [edge_of[v.rotation[i]] for i in fresh]
        states = new_states
        if not states:
            return ZERO
    total = ZERO
    for key, w in states.items():
        assert key == ()
        total = total + w
    return total


def _sig_value(s, bits):
    if isinstance(s, SymmetricSignature):
        return s[sum(bits)]
    return s.value(bits)


def _vertex_order(grid):
    """Greedy order keeping the open frontier small."""
    adj = {v: set() for v in grid.vertices}
    for (a, b) in grid.edges:
        va, vb = grid.half_owner[a], grid.half_owner[b]
        if va != vb:
            adj[va].add(vb)
            adj[vb].add(va)
    order = []
    placed = set()
    remaining = set(grid.vertices)
    while remaining:
        best = None
        best_score = None
        for v in remaining:
            inside = len(adj[v] & placed)
            outside = len(adj[v] - placed)
            score = (outside - inside, repr(v))
            if best_score is None or score < best_score:
                best, best_score = v, score
        order.append(best)
        placed.add(best)
        remaining.discard(best)
    return order


# -- grid rewrites -----------------------------------------------------------

def _fresh_ids(grid, count):
    ids = []
    used = set(grid.half_owner)
    k = 0
    while len(ids) < count:
        cand = "s%d" % k
        if cand not in used:
            ids.append(cand)
            used.add(cand)
        k += 1
    return ids


def two_stretch(grid):
    """Insert an equality vertex in the middle of every matched edge.

    The result is bipartition-tagged: new equalities on the left, original
    vertices on the right.  The Holant value is unchanged.
    """
    fresh = _fresh_ids(grid, 2 * len(grid.edges))
    new_vertices = list(grid.vertices.values())
    new_edges = []
    side = {v: "R" for v in grid.vertices}
    for ei, (a, b) in enumerate(grid.edges):
        ha, hb = fresh[2 * ei], fresh[2 * ei + 1]
        w = Vertex(("eq", ei), equality(2), [ha, hb])
        new_vertices.append(w)
        side[("eq", ei)] = "L"
        new_edges.append((a, ha))
        new_edges.append((b, hb))
    return PlanarGrid(new_vertices, new_edges, grid.dangling, side, grid.scalar)


def holographic_transform_bipartite(grid, T):
    """Valiant's Holant theorem: left signatures f -> f T^{tensor}, right
    g -> (T^{-1})^{tensor} g; the Holant value is exactly preserved."""
    if not grid.side or any(v not in grid.side for v in grid.vertices):
        raise NotBipartite("grid is not bipartition-tagged")
    for (a, b) in grid.edges:
        if grid.side[grid.half_owner[a]] == grid.side[grid.half_owner[b]]:
            raise NotBipartite("edge inside one side of the bipartition")
    if not T.is_invertible():
        raise SingularTransform("transform must be invertible")
    Tinv = T.inverse()
    new_vertices = []
    for v in grid.vertices.values():
        if not isinstance(v.sig, SymmetricSignature):
            raise StructureError("holographic transforms need symmetric signatures")
        if grid.side[v.id] == "L":
            ns = row_transform(v.sig, T)
        else:
            ns = transform(Tinv, v.sig)
        new_vertices.append(Vertex(v.id, ns, v.rotation))
    return PlanarGrid(new_vertices, grid.edges, grid.dangling, grid.side, grid.scalar)


def orthogonal_transform(grid, T):
    """One-sided transform of every vertex by an orthogonal T; value preserved."""
    if not T.is_orthogonal():
        raise SingularTransform("transform must be orthogonal")
    new_vertices = [Vertex(v.id, transform(T, v.sig), v.rotation)
                    for v in grid.vertices.values()]
    return PlanarGrid(new_vertices, grid.edges, grid.dangling, grid.side, grid.scalar)


# -- JSON ----------------------------------------------------------------------

def grid_from_json(doc):
    sigs = {name: SymmetricSignature([AN(e) for e in entries])
            for name, entries in doc["signatures"].items()}
    vertices = []
    for vd in doc["vertices"]:
        if vd["sig"] not in sigs:
            raise StructureError("unknown signature %r" % vd["sig"])
        vertices.append(Vertex(vd["id"], sigs[vd["sig"]], vd["rotation"]))
    side = {}
    for k, s in (doc.get("side") or {}).items():
        side[_maybe_int(k)] = s
    scalar = AN(doc["scalar"]) if doc.get("scalar") else ONE
    return PlanarGrid(vertices, [tuple(e) for e in doc["edges"]],
                      doc.get("dangling", ()), side, scalar)


def _maybe_int(k):
    try:
        return int(k)
    except (TypeError, ValueError):
        return k


def grid_to_json(grid):
    sigs = {}
    names = {}
    for v in grid.vertices.values():
        key = v.sig.entries
        if key not in names:
            names[key] = "f%d" % len(names)
            sigs[names[key]] = [str(e) for e in v.sig.entries]
    return {
        "signatures": sigs,
        "vertices": [{"id": v.id, "sig": names[v.sig.entries],
                      "rotation": list(v.rotation)}
                     for v in grid.vertices.values()],
        "edges": [list(e) for e in grid.edges],
        "dangling": list(grid.dangling),
        "side": {str(k): v for k, v in grid.side.items()},
        "scalar": str(grid.scalar),
    }


def load_grid(path):
    with open(path) as fh:
        return grid_from_json(json.load(fh))

"""The m-replicated algebra of a hereditary path algebra and its modules.

The algebra has basis {(p, k): p path, 0 <= k <= m} plus dual-path
elements {(p*, k): p path, 1 <= k <= m}; paths multiply within a layer,
a dual path at layer k eats path prefixes from layer k-1 on the right and
path suffixes from layer k on the left, and products of two dual elements
vanish.

A module is a tuple of layer representations M_0..M_m over the base
quiver together with connecting matrices g[k, p] from the component of
M_k at target(p) to the component of M_{k-1} at source(p), one per dual
basis element.  Only the duals of maximal paths are free data; the rest
are derived through the prefix/suffix relations and all relations are
re-checked on every construction, so convention errors fail fast.

Components are ordered (layer, vertex), flattened as k * n_vertices + i;
dimension vectors print as (layer0 | layer1 | ...).
"""

import json

import numpy as np

from . import exactfield as ef
from . import quiverrep as qr
from .errors import AnomalyError, InputError, WindowOverflow
from .splitting import find_invertible_combo, fitting_split

PATH = "p"
DUAL = "d"


def _left_extension(quiver, pb, a, q):
    """Path id of (a then q), or None when the composite does not exist."""
    if quiver.arrow_target[a] != pb.source[q]:
        return None
    return pb.index.get((quiver.arrow_source[a], (a,) + pb.arrows_of[q]))


def _right_extension(quiver, pb, q, a):
    """Path id of (q then a), or None when the composite does not exist."""
    if quiver.arrow_source[a] != pb.target[q]:
        return None
    return pb.index.get((pb.source[q], pb.arrows_of[q] + (a,)))


class ReplicatedAlgebra:
    """Basis and multiplication table of the m-replicated algebra."""

    def __init__(self, quiver, m, p):
        if m < 1:
            raise InputError(f"replication level m must be >= 1, got {m}")
        ef.FieldSpec(p)
        self.quiver = quiver
        self.m = m
        self.p = p
        pb = quiver.paths
        self.basis = [(PATH, k, q) for k in range(m + 1) for q in range(pb.n)]
        self.basis += [(DUAL, k, q) for k in range(1, m + 1) for q in range(pb.n)]
        self.dim = len(self.basis)
        self.n_components = (m + 1) * quiver.n_vertices
        self._proj = {}
        self._inj = {}
        self._opposite = None
        self._op_map = None

    def components(self):
        return [(k, i) for k in range(self.m + 1) for i in range(self.quiver.n_vertices)]

    def comp_index(self, k, i):
        return k * self.quiver.n_vertices + i

    def mult(self, b1, b2):
        """Product of two basis elements: a basis element or None (= zero)."""
        pb = self.quiver.paths
        t1, k1, p1 = b1
        t2, k2, p2 = b2
        if t1 == PATH and t2 == PATH:
            if k1 != k2:
                return None
            r = pb.compose(p1, p2)
            return None if r is None else (PATH, k1, r)
        if t1 == DUAL and t2 == PATH:
            # (p1*, k1) . (p2, k1 - 1) = r* where p1 = p2 r
            if k2 != k1 - 1:
                return None
            a1, a2 = pb.arrows_of[p1], pb.arrows_of[p2]
            if pb.source[p1] != pb.source[p2] or a1[:len(a2)] != a2:
                return None
            return (DUAL, k1, pb.index[(pb.target[p2], a1[len(a2):])])
        if t1 == PATH and t2 == DUAL:
            # (p1, k2) . (p2*, k2) = r* where p2 = r p1
            if k1 != k2:
                return None
            a1, a2 = pb.arrows_of[p1], pb.arrows_of[p2]
            if pb.target[p1] != pb.target[p2]:
                return None
            if len(a1) <= len(a2) and (not a1 or a2[len(a2) - len(a1):] == a1):
                return (DUAL, k2, pb.index[(pb.source[p2], a2[:len(a2) - len(a1)])])
            return None
        return None  # dual . dual = 0

    def left_component(self, b):
        pb = self.quiver.paths
        t, k, q = b
        return (k, pb.source[q]) if t == PATH else (k, pb.target[q])

    def right_component(self, b):
        pb = self.quiver.paths
        t, k, q = b
        return (k, pb.target[q]) if t == PATH else (k - 1, pb.source[q])

    def check_associativity(self):
        """(xy)z = x(yz) on all basis triples; products are basis elements
        or zero, so this is a finite table check."""
        table = {}
        for x in self.basis:
            for y in self.basis:
                r = self.mult(x, y)
                if r is not None:
                    table[(x, y)] = r
        for x in self.basis:
            for y in self.basis:
                xy = table.get((x, y))
                for z in self.basis:
                    yz = table.get((y, z))
                    lhs = table.get((xy, z)) if xy is not None else None
                    rhs = table.get((x, yz)) if yz is not None else None
                    if lhs != rhs:
                        raise AnomalyError(f"associativity fails on {x}, {y}, {z}")
        return True

    def opposite(self):
        """The opposite algebra, realized as the replicated algebra of the
        opposite quiver with layers reversed; double opposite returns the
        original object."""
        if self._opposite is None:
            op = ReplicatedAlgebra(self.quiver.opposite(), self.m, self.p)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def to_opposite_element(self, b):
        """(p, k) -> (p_rev, m - k); (p*, k) -> (p_rev*, m - k + 1)."""
        pb = self.quiver.paths
        pb_op = self.quiver.opposite().paths
        t, k, q = b
        q_op = pb.reversed_id(pb_op, q)
        return (t, self.m - k, q_op) if t == PATH else (t, self.m - k + 1, q_op)

    def fingerprint(self):
        import hashlib
        text = self.quiver.to_text() + f"|m={self.m}|p={self.p}"
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    # -- distinguished modules ---------------------------------------------

    def proj(self, i, k):
        """Indecomposable projective at vertex i, layer k.  For k >= 1 the
        layer-k part is P_A(i), the layer-(k-1) part is I_A(i), and the
        module is projective-injective with top S(i,k) and socle S(i,k-1)."""
        key = (int(i), int(k))
        if key not in self._proj:
            self._proj[key] = self._build_proj(*key)
        return self._proj[key]

    def inj(self, i, k):
        """Indecomposable injective at vertex i, layer k: proj(i, k+1) for
        k < m, and I_A(i) concentrated in layer m for k = m."""
        i, k = int(i), int(k)
        if not (0 <= i < self.quiver.n_vertices and 0 <= k <= self.m):
            raise InputError(f"inj({i},{k}) out of range")
        if k < self.m:
            return self.proj(i, k + 1)
        key = (i, k)
        if key not in self._inj:
            self._inj[key] = rep_at_layer(
                self, qr.injective(self.quiver, self.p, self.quiver.vertices[i]), self.m)
        return self._inj[key]

    def _build_proj(self, i, k):
        quiver, p, pb = self.quiver, self.p, self.quiver.paths
        if not (0 <= i < quiver.n_vertices and 0 <= k <= self.m):
            raise InputError(f"proj({i},{k}) out of range")
        if k == 0:
            return rep_at_layer(self, qr.projective(quiver, p, quiver.vertices[i]), 0)
        layers = []
        for l in range(self.m + 1):
            if l == k:
                layers.append(qr.projective(quiver, p, quiver.vertices[i]))
            elif l == k - 1:
                layers.append(qr.injective(quiver, p, quiver.vertices[i]))
            else:
                layers.append(qr.Representation(quiver, p, [0] * quiver.n_vertices))
        conn = {}
        for pid in range(pb.n):
            tv, sv = pb.target[pid], pb.source[pid]
            upper = [q for q in pb.from_vertex[i] if pb.target[q] == tv]
            lower = [r for r in pb.into_vertex[i] if pb.source[r] == sv]
            mat = ef.zeros(len(lower), len(upper))
            for cq, q in enumerate(upper):
                for cr, r in enumerate(lower):
                    if pb.compose(r, q) == pid:  # p = r q picks up q . p* = r*
                        mat[cr, cq] = 1
            conn[(k, pid)] = mat
        return LayeredModule(self, layers, conn=conn)

    def projective_injectives(self):
        """All proj(i, k) with k >= 1, in (k, i) order."""
        return [self.proj(i, k) for k in range(1, self.m + 1)
                for i in range(self.quiver.n_vertices)]

    def simple(self, i, k):
        quiver = self.quiver
        if not (0 <= i < quiver.n_vertices and 0 <= k <= self.m):
            raise InputError(f"simple({i},{k}) out of range")
        return rep_at_layer(self, qr.simple(quiver, self.p, quiver.vertices[i]), k)

    def zero_module(self):
        layers = [qr.Representation(self.quiver, self.p, [0] * self.quiver.n_vertices)
                  for _ in range(self.m + 1)]
        return LayeredModule(self, layers, conn={})

    def __repr__(self):
        return f"ReplicatedAlgebra(m={self.m}, p={self.p}, dim={self.dim})"


_ALGEBRAS = {}


def build_replicated(quiver, m, p=ef.DEFAULT_PRIME, check=True):
    """Construct (and memoize) the m-replicated algebra; associativity of
    the multiplication table is verified on all basis triples."""
    key = (quiver.to_text(), m, p)
    if key not in _ALGEBRAS:
        alg = ReplicatedAlgebra(quiver, m, p)
        if check:
            alg.check_associativity()
        _ALGEBRAS[key] = alg
    return _ALGEBRAS[key]


class LayeredModule:
    """A right module over a ReplicatedAlgebra: one representation per
    layer plus connecting matrices for every dual basis element."""

    def __init__(self, algebra, layers, conn=None, maximal_conn=None, validate=True):
        self.algebra = algebra
        quiver, p, pb = algebra.quiver, algebra.p, algebra.quiver.paths
        if len(layers) != algebra.m + 1:
            raise InputError(f"expected {algebra.m + 1} layers, got {len(layers)}")
        self.layers = []
        for rep in layers:
            if rep.quiver is not quiver:
                # memoized algebras keep the first quiver object; accept
                # text-equal copies by rebuilding the layer over ours
                if rep.quiver.to_text() != quiver.to_text() or rep.p != p:
                    raise InputError("layer over the wrong quiver or prime")
                rep = qr.Representation(quiver, p, rep.dims, rep.maps)
            elif rep.p != p:
                raise InputError("layer over the wrong prime")
            self.layers.append(rep)
        if conn is None:
            conn = self._derive_conn(maximal_conn or {})
        self.conn = {}
        for k in range(1, algebra.m + 1):
            for pid in range(pb.n):
                mat = conn.get((k, pid))
                want = (self.layers[k - 1].dims[pb.source[pid]],
                        self.layers[k].dims[pb.target[pid]])
                if mat is None:
                    mat = ef.zeros(*want)
                else:
                    mat = np.mod(np.array(mat, dtype=np.int64).reshape(want), p)
                self.conn[(k, pid)] = mat
        if validate:
            self._validate()

    def _derive_conn(self, maximal_conn):
        """Fill in connecting matrices for all paths from the maximal-path
        data: g[k, q] = M_a^(k-1) g[k, a.q] = g[k, q.a] M_a^(k)."""
        alg, pb, quiver = self.algebra, self.algebra.quiver.paths, self.algebra.quiver
        conn = {}
        for (k, pid), mat in maximal_conn.items():
            if pid not in pb.maximal:
                raise InputError(f"path {pb.name(pid)} is not maximal")
            conn[(k, pid)] = np.array(mat, dtype=np.int64)
        order = sorted(range(pb.n), key=lambda q: -len(pb.arrows_of[q]))
        for k in range(1, alg.m + 1):
            for q in order:
                if (k, q) in conn:
                    continue
                want = (self.layers[k - 1].dims[pb.source[q]],
                        self.layers[k].dims[pb.target[q]])
                done = False
                for a in range(len(quiver.arrows)):
                    left = _left_extension(quiver, pb, a, q)
                    if left is not None and (k, left) in conn:
                        conn[(k, q)] = ef.mul(self.layers[k - 1].maps[a],
                                              conn[(k, left)], alg.p)
                        done = True
                        break
                    right = _right_extension(quiver, pb, q, a)
                    if right is not None and (k, right) in conn:
                        conn[(k, q)] = ef.mul(conn[(k, right)],
                                              self.layers[k].maps[a], alg.p)
                        done = True
                        break
                if not done:
                    conn[(k, q)] = ef.zeros(*want)
        return conn

    def _validate(self):
        alg, pb, quiver, p = self.algebra, self.algebra.quiver.paths, self.algebra.quiver, self.algebra.p
        for k in range(1, alg.m + 1):
            for q in range(pb.n):
                g_q = self.conn[(k, q)]
                arrs = pb.arrows_of[q]
                for a in range(len(quiver.arrows)):
                    left = _left_extension(quiver, pb, a, q)
                    if left is not None:
                        got = ef.mul(self.layers[k - 1].maps[a], self.conn[(k, left)], p)
                        if not np.array_equal(got, g_q):
                            raise InputError(
                                f"prefix relation fails at layer {k}, path {pb.name(q)}")
                    right = _right_extension(quiver, pb, q, a)
                    if right is not None:
                        got = ef.mul(self.conn[(k, right)], self.layers[k].maps[a], p)
                        if not np.array_equal(got, g_q):
                            raise InputError(
                                f"suffix relation fails at layer {k}, path {pb.name(q)}")
                    # zero products: q* . a = 0 unless a is the first arrow
                    # of q, and a . q* = 0 unless a is the last arrow of q
                    if quiver.arrow_source[a] == pb.source[q] and arrs[:1] != (a,):
                        if ef.mul(self.layers[k - 1].maps[a], g_q, p).any():
                            raise InputError(
                                f"zero product fails: arrow after {pb.name(q)}* at layer {k}")
                    if quiver.arrow_target[a] == pb.target[q] and arrs[-1:] != (a,):
                        if ef.mul(g_q, self.layers[k].maps[a], p).any():
                            raise InputError(
                                f"zero product fails: {pb.name(q)}* after arrow at layer {k}")
                if k >= 2:
                    for r in range(pb.n):
                        if pb.target[r] == pb.source[q]:
                            two = ef.mul(self.conn[(k - 1, r)], self.conn[(k, q)], p)
                            if two.any():
                                raise InputError(
                                    f"two-step zero fails: {pb.name(r)}* after {pb.name(q)}*")

    # -- bookkeeping ---------------------------------------------------------

    @property
    def p(self):
        return self.algebra.p

    def component_dims(self):
        return [self.layers[k].dims[i] for (k, i) in self.algebra.components()]

    @property
    def total_dim(self):
        return sum(self.component_dims())

    def is_zero(self):
        return self.total_dim == 0

    def dim_table(self):
        """Per-layer dimension vectors, e.g. ((1, 1), (1, 0))."""
        return tuple(rep.dims for rep in self.layers)

    def dim_label(self):
        return "|".join(",".join(str(d) for d in rep.dims) for rep in self.layers)

    def support_layers(self):
        return [k for k in range(self.algebra.m + 1) if sum(self.layers[k].dims)]

    def is_layer_module(self, k):
        return self.support_layers() in ([k], [])

    def action_matrix(self, b):
        """Matrix of the right action of a basis element, from its left
        component to its right component."""
        t, k, q = b
        if t == PATH:
            return self.layers[k].act_path(q)
        return self.conn[(k, q)]

    # -- constructions --------------------------------------------------------

    def submodule(self, bases):
        """Submodule spanned by per-component column bases (must be closed
        under all actions).  Returns (sub, inclusion)."""
        alg, pb = self.algebra, self.algebra.quiver.paths
        nv = alg.quiver.n_vertices
        sub_layers, incl_parts = [], []
        for k in range(alg.m + 1):
            layer_bases = [bases[alg.comp_index(k, i)] for i in range(nv)]
            sub, incl = self.layers[k].submodule(layer_bases)
            sub_layers.append(sub)
            incl_parts.append(incl)
        conn = {}
        for (k, pid), mat in self.conn.items():
            src_basis = bases[alg.comp_index(k, pb.target[pid])]
            tgt_basis = bases[alg.comp_index(k - 1, pb.source[pid])]
            moved = ef.mul(mat, src_basis, alg.p)
            coords = ef.coordinates_in_span(tgt_basis, moved, alg.p)
            if coords is None:
                raise InputError("submodule bases not closed under connecting actions")
            conn[(k, pid)] = coords
        sub = LayeredModule(alg, sub_layers, conn=conn)
        blocks = [bases[c].copy() for c in range(alg.n_components)]
        return sub, LayeredMorphism(sub, self, blocks)

    def quotient(self, span):
        """Quotient by the span of per-component columns (must be stable
        under all actions).  Returns (quotient, projection)."""
        alg, pb = self.algebra, self.algebra.quiver.paths
        nv = alg.quiver.n_vertices
        projs, sections = [], []
        for c in range(alg.n_components):
            dim = self.component_dims()[c]
            pr, sec = ef.quotient_projection(span[c], dim, alg.p)
            projs.append(pr)
            sections.append(sec)
        quo_layers = []
        for k in range(alg.m + 1):
            dims = [projs[alg.comp_index(k, i)].shape[0] for i in range(nv)]
            maps = []
            for a in range(len(alg.quiver.arrows)):
                s, t = alg.quiver.arrow_source[a], alg.quiver.arrow_target[a]
                maps.append(ef.mul(projs[alg.comp_index(k, t)],
                                   ef.mul(self.layers[k].maps[a],
                                          sections[alg.comp_index(k, s)], alg.p), alg.p))
            quo_layers.append(qr.Representation(alg.quiver, alg.p, dims, maps))
        conn = {}
        for (k, pid), mat in self.conn.items():
            src = alg.comp_index(k, pb.target[pid])
            tgt = alg.comp_index(k - 1, pb.source[pid])
            conn[(k, pid)] = ef.mul(projs[tgt], ef.mul(mat, sections[src], alg.p), alg.p)
        quo = LayeredModule(alg, quo_layers, conn=conn)
        proj = LayeredMorphism(self, quo, projs)
        if not proj.is_morphism():
            raise InputError("quotient span is not stable under all actions")
        return quo, proj

    @staticmethod
    def direct_sum(mods):
        """Block direct sum; returns (sum, inclusions, projections)."""
        if not mods:
            raise InputError("direct_sum of empty list")
        alg = mods[0].algebra
        for m in mods:
            if m.algebra is not alg:
                raise InputError("direct_sum: modules over different algebras")
        pb = alg.quiver.paths
        layer_sums = []
        for k in range(alg.m + 1):
            layer_sums.append(qr.Representation.direct_sum([m.layers[k] for m in mods]))
        conn = {}
        for k in range(1, alg.m + 1):
            for pid in range(pb.n):
                tgt_dims = [m.conn[(k, pid)].shape[0] for m in mods]
                src_dims = [m.conn[(k, pid)].shape[1] for m in mods]
                blk = ef.zeros(sum(tgt_dims), sum(src_dims))
                ro = co = 0
                for m in mods:
                    g = m.conn[(k, pid)]
                    blk[ro:ro + g.shape[0], co:co + g.shape[1]] = g
                    ro += g.shape[0]
                    co += g.shape[1]
                conn[(k, pid)] = blk
        total = LayeredModule(alg, [ls[0] for ls in layer_sums], conn=conn)
        incls, projs = [], []
        for idx, m in enumerate(mods):
            iblocks, pblocks = [], []
            for (k, i) in alg.components():
                iblocks.append(layer_sums[k][1][idx].blocks[i])
                pblocks.append(layer_sums[k][2][idx].blocks[i])
            incls.append(LayeredMorphism(m, total, iblocks))
            projs.append(LayeredMorphism(total, m, pblocks))
        return total, incls, projs

    def dual(self):
        """The dual module over the opposite algebra: layer K is the dual
        of layer m-K, arrow and connecting matrices transpose."""
        alg = self.algebra
        op = alg.opposite()
        pb, pb_op = alg.quiver.paths, op.quiver.paths
        layers = []
        for kk in range(alg.m + 1):
            src = self.layers[alg.m - kk]
            layers.append(qr.Representation(
                op.quiver, alg.p, src.dims,
                [src.maps[a].T.copy() for a in range(len(alg.quiver.arrows))]))
        conn = {}
        for kk in range(1, alg.m + 1):
            for pid in range(pb.n):
                pid_op = pb.reversed_id(pb_op, pid)
                conn[(kk, pid_op)] = self.conn[(alg.m - kk + 1, pid)].T.copy()
        return LayeredModule(op, layers, conn=conn)

    def to_json(self):
        alg, pb = self.algebra, self.algebra.quiver.paths
        connecting = []
        for k in range(1, alg.m + 1):
            for pid in range(pb.n):
                mat = self.conn[(k, pid)]
                if mat.any():
                    connecting.append({"k": k, "path": pb.name(pid), "matrix": mat.tolist()})
        return {
            "m": alg.m,
            "p": alg.p,
            "layers": [rep.to_json() for rep in self.layers],
            "connecting": connecting,
        }

    @classmethod
    def from_json(cls, algebra, data):
        try:
            if data["m"] != algebra.m or data["p"] != algebra.p:
                raise InputError("module JSON does not match the algebra (m or p differ)")
            layers = [qr.Representation.from_json(algebra.quiver, algebra.p, d)
                      for d in data["layers"]]
            conn = {}
            for entry in data["connecting"]:
                pid = algebra.quiver.paths.by_name(entry["path"])
                conn[(entry["k"], pid)] = np.array(entry["matrix"], dtype=np.int64)
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad layered-module JSON: {exc}") from exc
        return cls(algebra, layers, conn=conn)

    def __repr__(self):
        return f"Layered({self.dim_label()})"


class LayeredMorphism:
    """A morphism of layered modules: per-component matrices commuting
    with all arrow and connecting actions."""

    def __init__(self, source, target, blocks):
        self.source = source
        self.target = target
        self.p = source.algebra.p
        sdims, tdims = source.component_dims(), target.component_dims()
        self.blocks = []
        for c, b in enumerate(blocks):
            b = np.mod(np.array(b, dtype=np.int64).reshape(tdims[c], sdims[c]), self.p)
            self.blocks.append(b)

    def blocks_flat(self):
        return self.blocks

    def is_morphism(self):
        for src, tgt, ms, mt in _action_edges(self.source, self.target):
            lhs = ef.mul(self.blocks[tgt], ms, self.p)
            rhs = ef.mul(mt, self.blocks[src], self.p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_zero(self):
        return all(not b.any() for b in self.blocks)

    def compose(self, other):
        """self after other."""
        return LayeredMorphism(other.source, self.target,
                               [ef.mul(self.blocks[c], other.blocks[c], self.p)
                                for c in range(len(self.blocks))])

    def add(self, other):
        return LayeredMorphism(self.source, self.target,
                               [np.mod(self.blocks[c] + other.blocks[c], self.p)
                                for c in range(len(self.blocks))])

    def flatten(self):
        if not self.blocks:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([b.reshape(-1) for b in self.blocks])

    @staticmethod
    def from_flat(source, target, vec):
        sdims, tdims = source.component_dims(), target.component_dims()
        blocks, pos = [], 0
        for c in range(len(sdims)):
            r, cdim = tdims[c], sdims[c]
            blocks.append(np.array(vec[pos:pos + r * cdim], dtype=np.int64).reshape(r, cdim))
            pos += r * cdim
        return LayeredMorphism(source, target, blocks)

    @staticmethod
    def identity(module):
        return LayeredMorphism(module, module,
                               [ef.eye(d) for d in module.component_dims()])

    def kernel(self):
        bases = [ef.kernel_basis(b, self.p) for b in self.blocks]
        return self.source.submodule(bases)

    def cokernel(self):
        return self.target.quotient(list(self.blocks))

    def rank(self):
        return sum(ef.rank(b, self.p) for b in self.blocks)

    def is_injective(self):
        return all(ef.rank(b, self.p) == b.shape[1] for b in self.blocks)

    def is_surjective(self):
        return all(ef.rank(b, self.p) == b.shape[0] for b in self.blocks)

    def dual(self, dual_source=None, dual_target=None):
        """The dual morphism between the dual modules (direction reverses)."""
        alg = self.source.algebra
        src = dual_target if dual_target is not None else self.target.dual()
        tgt = dual_source if dual_source is not None else self.source.dual()
        nv = alg.quiver.n_vertices
        blocks = []
        for (kk, i) in alg.components():
            blocks.append(self.blocks[alg.comp_index(alg.m - kk, i)].T.copy())
        return LayeredMorphism(src, tgt, blocks)

    def __repr__(self):
        return f"LayeredMorphism({self.source!r} -> {self.target!r})"


def _action_edges(m, n):
    """Aligned action matrices of two modules over the same algebra:
    yields (src_comp, tgt_comp, m_matrix, n_matrix)."""
    alg = m.algebra
    if n.algebra is not alg:
        raise InputError("modules over different algebras")
    quiver, pb = alg.quiver, alg.quiver.paths
    for k in range(alg.m + 1):
        for a in range(len(quiver.arrows)):
            src = alg.comp_index(k, quiver.arrow_source[a])
            tgt = alg.comp_index(k, quiver.arrow_target[a])
            yield src, tgt, m.layers[k].maps[a], n.layers[k].maps[a]
    for k in range(1, alg.m + 1):
        for pid in range(pb.n):
            src = alg.comp_index(k, pb.target[pid])
            tgt = alg.comp_index(k - 1, pb.source[pid])
            yield src, tgt, m.conn[(k, pid)], n.conn[(k, pid)]


def hom_layered(m, n):
    """A basis of the space of layered morphisms M -> N (canonical)."""
    if m.algebra is not n.algebra:
        raise InputError("hom_layered: modules over different algebras")
    sdims, tdims = m.component_dims(), n.component_dims()
    ncols = sum(s * t for s, t in zip(sdims, tdims))
    if ncols == 0:
        return []
    col_off = []
    pos = 0
    for c in range(len(sdims)):
        col_off.append(pos)
        pos += sdims[c] * tdims[c]
    rows = []
    p = m.algebra.p
    for src, tgt, ms, mt in _action_edges(m, n):
        blk = tdims[tgt] * sdims[src]
        if blk == 0:
            continue
        row = ef.zeros(blk, ncols)
        if tdims[src]:
            row[:, col_off[src]:col_off[src] + tdims[src] * sdims[src]] = \
                np.kron(mt, ef.eye(sdims[src]))
        if sdims[tgt]:
            row[:, col_off[tgt]:col_off[tgt] + tdims[tgt] * sdims[tgt]] = np.mod(
                row[:, col_off[tgt]:col_off[tgt] + tdims[tgt] * sdims[tgt]]
                - np.kron(ef.eye(tdims[tgt]), ms.T), p)
        rows.append(row)
    d = np.vstack(rows) if rows else ef.zeros(0, ncols)
    ker = ef.kernel_basis(d, p)
    return [LayeredMorphism.from_flat(m, n, ker[:, c]) for c in range(ker.shape[1])]


def hom_dim_layered(m, n):
    return len(hom_layered(m, n))


def is_iso_layered(m, n, seed=ef.DEFAULT_SEED):
    """Isomorphism test for layered modules (same search strategy as the
    representation-level test)."""
    if m.component_dims() != n.component_dims():
        return False
    if m.total_dim == 0:
        return True
    basis = hom_layered(m, n)
    if not basis:
        return False
    return find_invertible_combo([h.blocks for h in basis], m.p, seed) is not None


def decompose_layered(m, seed=ef.DEFAULT_SEED):
    """Indecomposable summands of a layered module with multiplicities."""
    pieces = fitting_split(m, hom_layered, seed)
    out = []
    for piece in pieces:
        for k, (mod, mult) in enumerate(out):
            if is_iso_layered(piece, mod, seed):
                out[k] = (mod, mult + 1)
                break
        else:
            out.append((piece, 1))
    return out


# ---------------------------------------------------------------------------
# radical, top, socle, covers, envelopes, syzygies
# ---------------------------------------------------------------------------


def rep_at_layer(algebra, rep, k):
    """Embed an A-module as a layered module concentrated in layer k.
    Representations over a text-equal copy of the quiver (memoized
    algebras keep the first quiver object) are rebuilt in place."""
    quiver, p = algebra.quiver, algebra.p
    if rep.quiver is not quiver:
        if rep.quiver.to_text() != quiver.to_text() or rep.p != p:
            raise InputError("representation over the wrong quiver")
        rep = qr.Representation(quiver, p, rep.dims, rep.maps)
    layers = [rep if l == k else qr.Representation(quiver, p, [0] * quiver.n_vertices)
              for l in range(algebra.m + 1)]
    return LayeredModule(algebra, layers, conn={})


def radical_span(m):
    """Per-component spans of rad M: images of arrow maps plus images of
    every connecting action (the radical of the algebra is spanned by the
    non-trivial paths and all dual elements)."""
    alg = m.algebra
    dims = m.component_dims()
    spans = [[] for _ in range(alg.n_components)]
    for src, tgt, ms, _ in _action_edges(m, m):
        if ms.size:
            spans[tgt].append(ms)
    return [np.hstack(s) if s else ef.zeros(dims[c], 0)
            for c, s in enumerate(spans)]


def top_generators(m):
    """[(component, lift)] giving a basis of M / rad M."""
    spans = radical_span(m)
    dims = m.component_dims()
    gens = []
    for c, (k, i) in enumerate(m.algebra.components()):
        _, section = ef.quotient_projection(spans[c], dims[c], m.p)
        for col in range(section.shape[1]):
            gens.append(((k, i), section[:, col].copy()))
    return gens


def generator_morphism(comp, vec, m):
    """The morphism proj(i, k) -> M sending the canonical generator to vec;
    the extension is forced by the right action of the algebra basis."""
    alg = m.algebra
    k, i = comp
    pb = alg.quiver.paths
    source = alg.proj(i, k)
    blocks = []
    for (l, j) in alg.components():
        cols = []
        if l == k:
            for q in pb.from_vertex[i]:
                if pb.target[q] == j:
                    cols.append(ef.mul(m.layers[k].act_path(q), vec.reshape(-1, 1), alg.p))
        elif l == k - 1:
            for r in pb.into_vertex[i]:
                if pb.source[r] == j:
                    cols.append(ef.mul(m.conn[(k, r)], vec.reshape(-1, 1), alg.p))
        dim_t = m.layers[l].dims[j]
        blocks.append(np.hstack(cols) if cols else ef.zeros(dim_t, 0))
    return source, LayeredMorphism(source, m, blocks)


def proj_cover(m):
    """Minimal projective cover: (P, epimorphism, summand list [(i, k)])."""
    alg = m.algebra
    gens = top_generators(m)
    if not gens:
        zero = alg.zero_module()
        return zero, LayeredMorphism(zero, m, [ef.zeros(d, 0) for d in m.component_dims()]), []
    parts = [generator_morphism((k, i), vec, m) for (k, i), vec in gens]
    total, _, _ = LayeredModule.direct_sum([pr for pr, _ in parts])
    blocks = []
    for c in range(alg.n_components):
        cols = [mor.blocks[c] for _, mor in parts]
        blocks.append(np.hstack(cols))
    cover = LayeredMorphism(total, m, blocks)
    return total, cover, [(i, k) for (k, i), _ in gens]


def syzygy(m):
    """Kernel of the projective cover (zero for projectives)."""
    _, cover, _ = proj_cover(m)
    return cover.kernel()[0]


def inj_envelope(m):
    """Minimal injective envelope via duality: E(M) = D(P(D M)).

    Returns (E, embedding).  The double dual has literally the same
    matrices as M, so the dualized cover is a morphism out of M itself.
    """
    dm = m.dual()
    p_cover, cover, _ = proj_cover(dm)
    env = p_cover.dual()
    embed = cover.dual(dual_source=env, dual_target=m)
    return env, embed


def cosyzygy(m):
    """Cokernel of the injective envelope (zero for injectives)."""
    env, embed = inj_envelope(m)
    return embed.cokernel()[0]


def pd(m):
    """Projective dimension via iterated syzygies (finite: the global
    dimension of the algebra is at most 2m+1)."""
    cur = m
    steps = 0
    while not cur.is_zero():
        cur = syzygy(cur)
        steps += 1
        if steps > 2 * m.algebra.m + 2:
            raise AnomalyError("syzygies fail to terminate within the 2m+1 bound")
    return max(steps - 1, 0)


def global_dimension(algebra):
    """max pd over the simple modules S(i, k)."""
    return max(pd(algebra.simple(i, k))
               for k in range(algebra.m + 1)
               for i in range(algebra.quiver.n_vertices))


# ---------------------------------------------------------------------------
# window conversion and the Sigma_k / U_k strata
# ---------------------------------------------------------------------------


def convert_window(m, target_algebra):
    """Reinterpret a layered module over an algebra with a different level
    (same quiver, same prime); the support must fit the target."""
    alg = m.algebra
    if target_algebra.quiver.to_text() != alg.quiver.to_text() or target_algebra.p != alg.p:
        raise InputError("convert_window: different quiver or prime")
    sup = m.support_layers()
    if sup and max(sup) > target_algebra.m:
        raise WindowOverflow(
            f"module supported up to layer {max(sup)} exceeds window m={target_algebra.m}")
    quiver, p = target_algebra.quiver, target_algebra.p
    zero = qr.Representation(quiver, p, [0] * quiver.n_vertices)
    # rebuild layers over the target's quiver object (equal by text)
    layers = [qr.Representation(quiver, p, m.layers[k].dims, m.layers[k].maps)
              if k <= alg.m else zero for k in range(target_algebra.m + 1)]
    conn = {}
    for (k, pid), mat in m.conn.items():
        if k <= target_algebra.m:
            conn[(k, pid)] = mat
    return LayeredModule(target_algebra, layers, conn=conn)


class SigmaStratum:
    """The k-th cosyzygy shift of the indecomposable projective A-modules,
    computed inside a window algebra of level k+1."""

    def __init__(self, k, members, window_algebra):
        self.k = k
        self.members = members
        self.window_algebra = window_algebra


def sigma_stratum(algebra, k, check_indecomposable=True):
    """Sigma_k inside the enlarged window A^(K), K = k+1 (capped at 2m+2);
    one cosyzygy step raises the layer support by at most one, so members
    occupy layers <= k.  k may run up to 2m+1 (the projective-dimension
    ceiling), which the pd-sandwich checks need."""
    if not 0 <= k <= 2 * algebra.m + 1:
        raise InputError(f"sigma_stratum: k={k} outside [0, 2m+1]")
    cap = 2 * algebra.m + 2
    window_m = min(max(k + 1, 1), cap)
    walg = build_replicated(algebra.quiver, window_m, algebra.p, check=False)
    members = []
    for i in range(algebra.quiver.n_vertices):
        x = walg.proj(i, 0)
        for step in range(k):
            x = cosyzygy(x)
            sup = x.support_layers()
            if sup and max(sup) > step + 1:
                raise WindowOverflow(
                    f"Sigma_{k}: support layer {max(sup)} after {step + 1} cosyzygies")
        if check_indecomposable and not x.is_zero():
            pieces = fitting_split(x, hom_layered)
            if len(pieces) != 1:
                raise AnomalyError(
                    f"cosyzygy of P({algebra.quiver.vertices[i]}) decomposed in Sigma_{k}")
        members.append(x)
    return SigmaStratum(k, members, walg)


def u_stratum(algebra, k):
    """Members of Sigma_k supported in layers <= m, reinterpreted over the
    algebra: the indecomposables of Sigma_k that are A^(m)-modules."""
    if not 0 <= k <= global_dimension(algebra) - 1:
        raise InputError(f"u_stratum: k={k} outside [0, gl.dim - 1]")
    stratum = sigma_stratum(algebra, k)
    out = []
    for x in stratum.members:
        sup = x.support_layers()
        if x.is_zero() or (sup and max(sup) > algebra.m):
            continue
        out.append(convert_window(x, algebra))
    return out

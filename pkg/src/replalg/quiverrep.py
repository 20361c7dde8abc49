"""Quivers, hereditary path algebras, and their modules as representations.

Conventions, fixed once and pinned by tests:
  * a right module over kQ is a representation in which an arrow a: i -> j
    induces a linear map from the component at i to the component at j;
  * the indecomposable projective P(i) has basis the paths with source i,
    so dim Hom(P(i), M) = dim M at i;
  * the indecomposable injective I(i) has basis the (duals of) paths with
    target i, so dim Hom(M, I(i)) = dim M at i;
  * path composition is written left to right: pq means "p then q" and
    exists when target(p) = source(q).

Matrices act on column vectors; the map for a: i -> j has shape
(dim j, dim i).
"""

import json

import numpy as np

from . import exactfield as ef
from .errors import InputError
from .splitting import find_invertible_combo, fitting_split, single_eigenvalue


class Quiver:
    """A finite connected acyclic quiver with named vertices and arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = [str(v) for v in vertices]
        self.arrows = [(str(n), str(s), str(t)) for (n, s, t) in arrows]
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex names")
        if len(set(n for n, _, _ in self.arrows)) != len(self.arrows):
            raise InputError("duplicate arrow names")
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        for n, s, t in self.arrows:
            if s not in self.vindex or t not in self.vindex:
                raise InputError(f"arrow {n}: unknown endpoint {s if s not in self.vindex else t}")
        self.n_vertices = len(self.vertices)
        self.arrow_source = [self.vindex[s] for _, s, _ in self.arrows]
        self.arrow_target = [self.vindex[t] for _, _, t in self.arrows]
        self._check_acyclic()
        self._check_connected()
        self._paths = None
        self._opposite = None

    def _check_acyclic(self):
        indeg = [0] * self.n_vertices
        for t in self.arrow_target:
            indeg[t] += 1
        queue = [v for v in range(self.n_vertices) if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for a, s in enumerate(self.arrow_source):
                if s == v:
                    indeg[self.arrow_target[a]] -= 1
                    if indeg[self.arrow_target[a]] == 0:
                        queue.append(self.arrow_target[a])
        if seen != self.n_vertices:
            raise InputError("quiver has a directed cycle")

    def _check_connected(self):
        if self.n_vertices == 0:
            raise InputError("empty quiver")
        adj = [set() for _ in range(self.n_vertices)]
        for a in range(len(self.arrows)):
            adj[self.arrow_source[a]].add(self.arrow_target[a])
            adj[self.arrow_target[a]].add(self.arrow_source[a])
        seen = {0}
        queue = [0]
        while queue:
            v = queue.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != self.n_vertices:
            raise InputError("quiver is not connected")

    @property
    def paths(self):
        if self._paths is None:
            self._paths = PathBasis(self)
        return self._paths

    def opposite(self):
        """The quiver with all arrows reversed (names preserved)."""
        if self._opposite is None:
            op = Quiver(self.vertices, [(n, t, s) for (n, s, t) in self.arrows])
            op._opposite = self
            self._opposite = op
        return self._opposite

    def __repr__(self):
        return f"Quiver({self.vertices}, {self.arrows})"

    @classmethod
    def from_text(cls, text):
        """Parse the line format: `vertex <name>` / `arrow <name>: <src> -> <tgt>`."""
        vertices, arrows = [], []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("vertex "):
                name = line[len("vertex "):].strip()
                if not name:
                    raise InputError(f"line {lineno}: vertex needs a name")
                vertices.append(name)
            elif line.startswith("arrow "):
                rest = line[len("arrow "):]
                if ":" not in rest or "->" not in rest:
                    raise InputError(f"line {lineno}: expected 'arrow <name>: <src> -> <tgt>'")
                name, ends = rest.split(":", 1)
                src, tgt = ends.split("->", 1)
                if not name.strip() or not src.strip() or not tgt.strip():
                    raise InputError(f"line {lineno}: expected 'arrow <name>: <src> -> <tgt>'")
                arrows.append((name.strip(), src.strip(), tgt.strip()))
            else:
                raise InputError(f"line {lineno}: unrecognized directive {line.split()[0]!r}")
        if not vertices:
            raise InputError("quiver file declares no vertices")
        return cls(vertices, arrows)

    @classmethod
    def from_json(cls, data):
        try:
            arrows = [(a["name"], a["source"], a["target"]) for a in data["arrows"]]
            return cls(data["vertices"], arrows)
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad quiver JSON: {exc}") from exc

    @classmethod
    def load(cls, path):
        text = open(path).read()
        if text.lstrip().startswith("{"):
            return cls.from_json(json.loads(text))
        return cls.from_text(text)

    def to_text(self):
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"arrow {n}: {s} -> {t}" for (n, s, t) in self.arrows]
        return "\n".join(lines) + "\n"


class PathBasis:
    """All directed paths of an acyclic quiver, closed under composition.

    Paths are stored as tuples of arrow indices, ordered by (length, arrow
    tuple); the first n_vertices entries are the trivial paths.  Maximal
    paths (no proper extension on either side) index the bimodule
    generators of the dual of the algebra.
    """

    def __init__(self, quiver):
        self.quiver = quiver
        paths = [() for _ in range(quiver.n_vertices)]
        srcs = list(range(quiver.n_vertices))
        tgts = list(range(quiver.n_vertices))
        frontier = [((a,), quiver.arrow_source[a], quiver.arrow_target[a])
                    for a in range(len(quiver.arrows))]
        while frontier:
            frontier.sort()
            for arrs, s, t in frontier:
                paths.append(arrs)
                srcs.append(s)
                tgts.append(t)
            nxt = []
            for arrs, s, t in frontier:
                for a in range(len(quiver.arrows)):
                    if quiver.arrow_source[a] == t:
                        nxt.append((arrs + (a,), s, quiver.arrow_target[a]))
            frontier = nxt
        self.arrows_of = paths
        self.source = srcs
        self.target = tgts
        # trivial paths share the empty arrow tuple, so keys carry the source
        self.index = {(srcs[i], arrs): i for i, arrs in enumerate(paths)}
        self.n = len(paths)
        self.from_vertex = [[] for _ in range(quiver.n_vertices)]
        self.into_vertex = [[] for _ in range(quiver.n_vertices)]
        for i in range(self.n):
            self.from_vertex[srcs[i]].append(i)
            self.into_vertex[tgts[i]].append(i)
        has_left = set()   # p admits a*p
        has_right = set()  # p admits p*a
        for i in range(self.n):
            for a in range(len(quiver.arrows)):
                if quiver.arrow_target[a] == srcs[i]:
                    has_left.add(i)
                if quiver.arrow_source[a] == tgts[i]:
                    has_right.add(i)
        self.maximal = [i for i in range(self.n)
                        if i not in has_left and i not in has_right]

    def trivial(self, v):
        return v

    def compose(self, p, q):
        """Path id of pq ("p then q"), or None if not composable."""
        if self.target[p] != self.source[q]:
            return None
        return self.index[(self.source[p], self.arrows_of[p] + self.arrows_of[q])]

    def name(self, p):
        arrs = self.arrows_of[p]
        if not arrs:
            return f"e_{self.quiver.vertices[self.source[p]]}"
        return ".".join(self.quiver.arrows[a][0] for a in arrs)

    def by_name(self, name):
        if name.startswith("e_"):
            v = name[2:]
            if v not in self.quiver.vindex:
                raise InputError(f"unknown trivial path {name!r}")
            return self.quiver.vindex[v]
        aindex = {n: i for i, (n, _, _) in enumerate(self.quiver.arrows)}
        try:
            arrs = tuple(aindex[part] for part in name.split("."))
        except KeyError as exc:
            raise InputError(f"unknown arrow in path {name!r}: {exc}") from exc
        key = (self.quiver.arrow_source[arrs[0]], arrs)
        if key not in self.index:
            raise InputError(f"{name!r} is not a path of the quiver")
        return self.index[key]

    def reversed_id(self, opposite_paths, p):
        """Id of the reversed path inside the opposite quiver's basis."""
        return opposite_paths.index[(self.target[p], tuple(reversed(self.arrows_of[p])))]


class Representation:
    """A module over the path algebra: dims per vertex, one matrix per arrow."""

    def __init__(self, quiver, p, dims, maps=None):
        self.quiver = quiver
        self.p = p
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != quiver.n_vertices or any(d < 0 for d in self.dims):
            raise InputError(f"bad dimension vector {dims}")
        if maps is None:
            maps = [ef.zeros(self.dims[quiver.arrow_target[a]],
                             self.dims[quiver.arrow_source[a]])
                    for a in range(len(quiver.arrows))]
        self.maps = []
        for a, mat in enumerate(maps):
            mat = ef.fmat(mat, p) if not isinstance(mat, np.ndarray) else np.mod(mat.astype(np.int64), p)
            want = (self.dims[quiver.arrow_target[a]], self.dims[quiver.arrow_source[a]])
            if mat.shape != want:
                raise InputError(f"arrow {quiver.arrows[a][0]}: matrix shape {mat.shape}, expected {want}")
            self.maps.append(mat)

    @property
    def total_dim(self):
        return sum(self.dims)

    def is_zero(self):
        return self.total_dim == 0

    def act_path(self, pid):
        """Matrix of the action along a path (source component -> target)."""
        pb = self.quiver.paths
        out = ef.eye(self.dims[pb.source[pid]])
        for a in pb.arrows_of[pid]:
            out = ef.mul(self.maps[a], out, self.p)
        return out

    # -- generic-module protocol used by splitting and shared machinery --

    def component_dims(self):
        return list(self.dims)

    def submodule(self, bases):
        """Submodule spanned by per-vertex column bases; bases must be
        independent columns and closed under the arrow maps.

        Returns (sub, inclusion).
        """
        dims = [b.shape[1] for b in bases]
        maps = []
        for a in range(len(self.quiver.arrows)):
            s, t = self.quiver.arrow_source[a], self.quiver.arrow_target[a]
            mapped = ef.mul(self.maps[a], bases[s], self.p)
            coords = ef.coordinates_in_span(bases[t], mapped, self.p)
            if coords is None:
                raise InputError("submodule bases not closed under arrow maps")
            maps.append(coords)
        sub = Representation(self.quiver, self.p, dims, maps)
        incl = RepMorphism(sub, self, [bases[i].copy() for i in range(len(bases))])
        return sub, incl

    def quotient(self, span):
        """Quotient by the subrepresentation spanned by per-vertex columns
        (must be arrow-stable).  Returns (quotient, projection)."""
        projs, sections = [], []
        for i in range(self.quiver.n_vertices):
            pr, sec = ef.quotient_projection(span[i], self.dims[i], self.p)
            projs.append(pr)
            sections.append(sec)
        dims = [pr.shape[0] for pr in projs]
        maps = []
        for a in range(len(self.quiver.arrows)):
            s, t = self.quiver.arrow_source[a], self.quiver.arrow_target[a]
            maps.append(ef.mul(projs[t], ef.mul(self.maps[a], sections[s], self.p), self.p))
        quo = Representation(self.quiver, self.p, dims, maps)
        proj = RepMorphism(self, quo, projs)
        if not proj.is_morphism():
            raise InputError("quotient span is not arrow-stable")
        return quo, proj

    def dual(self):
        """The dual module over the opposite quiver (transposed arrow maps)."""
        op = self.quiver.opposite()
        return Representation(op, self.p, self.dims,
                              [self.maps[a].T.copy() for a in range(len(self.quiver.arrows))])

    @staticmethod
    def direct_sum(mods):
        """Block direct sum; returns (sum, inclusions, projections)."""
        if not mods:
            raise InputError("direct_sum of empty list")
        quiver, p = mods[0].quiver, mods[0].p
        for m in mods:
            if m.quiver is not quiver or m.p != p:
                raise InputError("direct_sum: mixed quivers or primes")
        dims = [sum(m.dims[i] for m in mods) for i in range(quiver.n_vertices)]
        offs = []
        run = [0] * quiver.n_vertices
        for m in mods:
            offs.append(list(run))
            run = [run[i] + m.dims[i] for i in range(quiver.n_vertices)]
        maps = []
        for a in range(len(quiver.arrows)):
            s, t = quiver.arrow_source[a], quiver.arrow_target[a]
            blk = ef.zeros(dims[t], dims[s])
            for k, m in enumerate(mods):
                blk[offs[k][t]:offs[k][t] + m.dims[t],
                    offs[k][s]:offs[k][s] + m.dims[s]] = m.maps[a]
            maps.append(blk)
        total = Representation(quiver, p, dims, maps)
        incls, projs = [], []
        for k, m in enumerate(mods):
            iblocks, pblocks = [], []
            for i in range(quiver.n_vertices):
                inc = ef.zeros(dims[i], m.dims[i])
                prj = ef.zeros(m.dims[i], dims[i])
                inc[offs[k][i]:offs[k][i] + m.dims[i], :] = ef.eye(m.dims[i])
                prj[:, offs[k][i]:offs[k][i] + m.dims[i]] = ef.eye(m.dims[i])
                iblocks.append(inc)
                pblocks.append(prj)
            incls.append(RepMorphism(m, total, iblocks))
            projs.append(RepMorphism(total, m, pblocks))
        return total, incls, projs

    def to_json(self):
        return {
            "dims": {v: self.dims[i] for i, v in enumerate(self.quiver.vertices)},
            "maps": {self.quiver.arrows[a][0]: self.maps[a].tolist()
                     for a in range(len(self.quiver.arrows))},
        }

    @classmethod
    def from_json(cls, quiver, p, data):
        try:
            dims = [data["dims"][v] for v in quiver.vertices]
            maps = []
            for a, (name, s, t) in enumerate(quiver.arrows):
                raw = data["maps"].get(name)
                if raw is None:
                    maps.append(ef.zeros(dims[quiver.vindex[t]], dims[quiver.vindex[s]]))
                else:
                    mat = np.array(raw, dtype=np.int64).reshape(
                        dims[quiver.vindex[t]], dims[quiver.vindex[s]])
                    maps.append(np.mod(mat, p))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad representation JSON: {exc}") from exc
        return cls(quiver, p, dims, maps)

    def __repr__(self):
        return f"Rep{self.dims}"


class RepMorphism:
    """A morphism of representations: one matrix per vertex, intertwining
    all arrow maps."""

    def __init__(self, source, target, blocks):
        self.source = source
        self.target = target
        self.p = source.p
        self.blocks = [np.mod(b.astype(np.int64), source.p) for b in blocks]
        for i in range(source.quiver.n_vertices):
            want = (target.dims[i], source.dims[i])
            if self.blocks[i].shape != want:
                raise InputError(f"morphism block {i}: shape {self.blocks[i].shape}, expected {want}")

    def is_morphism(self):
        q = self.source.quiver
        for a in range(len(q.arrows)):
            s, t = q.arrow_source[a], q.arrow_target[a]
            lhs = ef.mul(self.blocks[t], self.source.maps[a], self.p)
            rhs = ef.mul(self.target.maps[a], self.blocks[s], self.p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def blocks_flat(self):
        return self.blocks

    def is_zero(self):
        return all(not b.any() for b in self.blocks)

    def compose(self, other):
        """self after other (other: X -> Y, self: Y -> Z gives X -> Z)."""
        return RepMorphism(other.source, self.target,
                           [ef.mul(self.blocks[i], other.blocks[i], self.p)
                            for i in range(len(self.blocks))])

    def flatten(self):
        return np.concatenate([b.reshape(-1) for b in self.blocks]) \
            if self.blocks else np.zeros(0, dtype=np.int64)

    @staticmethod
    def from_flat(source, target, vec):
        blocks = []
        pos = 0
        for i in range(source.quiver.n_vertices):
            r, c = target.dims[i], source.dims[i]
            blocks.append(np.array(vec[pos:pos + r * c], dtype=np.int64).reshape(r, c))
            pos += r * c
        return RepMorphism(source, target, blocks)

    def kernel(self):
        """Kernel submodule with its inclusion."""
        bases = [ef.kernel_basis(self.blocks[i], self.p) for i in range(len(self.blocks))]
        return self.source.submodule(bases)

    def cokernel(self):
        """Cokernel with the projection from the target."""
        span = [self.blocks[i] for i in range(len(self.blocks))]
        return self.target.quotient(span)

    def rank(self):
        return sum(ef.rank(b, self.p) for b in self.blocks)

    def is_injective(self):
        return all(ef.rank(b, self.p) == b.shape[1] for b in self.blocks)

    def is_surjective(self):
        return all(ef.rank(b, self.p) == b.shape[0] for b in self.blocks)

    def __repr__(self):
        return f"RepMorphism{tuple(b.shape for b in self.blocks)}"


# ---------------------------------------------------------------------------
# standard modules
# ---------------------------------------------------------------------------


def simple(quiver, p, v):
    vi = _vertex_index(quiver, v)
    dims = [1 if i == vi else 0 for i in range(quiver.n_vertices)]
    return Representation(quiver, p, dims)


def projective(quiver, p, v):
    """P(v): component at j has basis the paths v ~> j; an arrow acts by
    right extension of paths."""
    vi = _vertex_index(quiver, v)
    pb = quiver.paths
    basis = {j: [q for q in pb.from_vertex[vi] if pb.target[q] == j]
             for j in range(quiver.n_vertices)}
    return _path_module(quiver, p, basis, extend="right")


def injective(quiver, p, v):
    """I(v): component at j has basis the dual paths j ~> v; an arrow
    a: j -> j' sends q* to (q')* when q = a.q'."""
    vi = _vertex_index(quiver, v)
    pb = quiver.paths
    basis = {j: [q for q in pb.into_vertex[vi] if pb.source[q] == j]
             for j in range(quiver.n_vertices)}
    return _path_module(quiver, p, basis, extend="strip_left")


def _vertex_index(quiver, v):
    key = str(v)
    if key not in quiver.vindex:
        raise InputError(f"unknown vertex {v!r}")
    return quiver.vindex[key]


def _path_module(quiver, p, basis, extend):
    pb = quiver.paths
    dims = [len(basis[j]) for j in range(quiver.n_vertices)]
    pos = {j: {q: k for k, q in enumerate(basis[j])} for j in range(quiver.n_vertices)}
    maps = []
    for a in range(len(quiver.arrows)):
        s, t = quiver.arrow_source[a], quiver.arrow_target[a]
        mat = ef.zeros(dims[t], dims[s])
        for k, q in enumerate(basis[s]):
            if extend == "right":
                ext = pb.index.get((pb.source[q], pb.arrows_of[q] + (a,)))
            else:  # strip a leading arrow from a dual path
                arrs = pb.arrows_of[q]
                ext = (pb.index.get((quiver.arrow_target[a], arrs[1:]))
                       if arrs and arrs[0] == a else None)
            if ext is not None and ext in pos[t]:
                mat[pos[t][ext], k] = 1
        maps.append(mat)
    return Representation(quiver, p, dims, maps)


# ---------------------------------------------------------------------------
# Hom and Ext via the canonical two-term complex
#
# For hereditary kQ the standard projective resolution of M gives, after
# applying Hom(-, N), the complex
#     0 -> Hom(M,N) -> (+)_i hom(M_i, N_i) --d--> (+)_{a: i->j} hom(M_i, N_j)
# with (d phi)_a = N_a phi_i - phi_j M_a; Ext^1(M,N) is coker d.
# ---------------------------------------------------------------------------


def coerce_same_quiver(m, n):
    """Rebuild n over m's quiver object when the quivers agree by text
    (memoized algebras keep the first quiver object around)."""
    if n.quiver is m.quiver:
        return n
    if n.quiver.to_text() != m.quiver.to_text() or n.p != m.p:
        raise InputError("modules over different quivers")
    return Representation(m.quiver, m.p, n.dims, n.maps)


def _hom_complex_matrix(m, n):
    quiver, p = m.quiver, m.p
    cols = sum(n.dims[i] * m.dims[i] for i in range(quiver.n_vertices))
    rows = sum(n.dims[quiver.arrow_target[a]] * m.dims[quiver.arrow_source[a]]
               for a in range(len(quiver.arrows)))
    d = ef.zeros(rows, cols)
    col_off = []
    pos = 0
    for i in range(quiver.n_vertices):
        col_off.append(pos)
        pos += n.dims[i] * m.dims[i]
    row = 0
    for a in range(len(quiver.arrows)):
        i, j = quiver.arrow_source[a], quiver.arrow_target[a]
        blk = n.dims[j] * m.dims[i]
        if blk:
            if n.dims[i]:
                # vec_rm(N_a . phi_i) = (N_a kron I) vec_rm(phi_i)
                d[row:row + blk, col_off[i]:col_off[i] + n.dims[i] * m.dims[i]] = \
                    np.kron(n.maps[a], ef.eye(m.dims[i]))
            if m.dims[j]:
                # vec_rm(phi_j . M_a) = (I kron M_a^T) vec_rm(phi_j)
                d[row:row + blk, col_off[j]:col_off[j] + n.dims[j] * m.dims[j]] = np.mod(
                    d[row:row + blk, col_off[j]:col_off[j] + n.dims[j] * m.dims[j]]
                    - np.kron(ef.eye(n.dims[j]), m.maps[a].T), p)
        row += blk
    return d


def hom_basis(m, n):
    """A basis of Hom(M, N), canonical for fixed inputs."""
    n = coerce_same_quiver(m, n)
    if m.total_dim == 0 or n.total_dim == 0:
        return []
    d = _hom_complex_matrix(m, n)
    ker = ef.kernel_basis(d, m.p)
    return [RepMorphism.from_flat(m, n, ker[:, k]) for k in range(ker.shape[1])]


def hom_dim(m, n):
    n = coerce_same_quiver(m, n)
    if m.total_dim == 0 or n.total_dim == 0:
        return 0
    d = _hom_complex_matrix(m, n)
    return d.shape[1] - ef.rank(d, m.p)


def ext1_dim(m, n):
    """dim Ext^1(M, N) over the hereditary path algebra."""
    n = coerce_same_quiver(m, n)
    if m.total_dim == 0 or n.total_dim == 0:
        return 0
    d = _hom_complex_matrix(m, n)
    return d.shape[0] - ef.rank(d, m.p)


def euler_form(quiver, dm, dn):
    """<dm, dn> = sum_i dm_i dn_i - sum_{a:i->j} dm_i dn_j
    (= dim Hom - dim Ext^1 for hereditary kQ)."""
    val = sum(dm[i] * dn[i] for i in range(quiver.n_vertices))
    for a in range(len(quiver.arrows)):
        val -= dm[quiver.arrow_source[a]] * dn[quiver.arrow_target[a]]
    return val


def realize_extension(m, n, class_index):
    """The middle term of the class_index-th basis extension class of
    Ext^1(M, N): a short exact sequence 0 -> N -> E -> M -> 0.

    Returns (E, incl, proj).  Class indices enumerate the canonical basis
    of coker(d); the sequence is non-split exactly for nonzero classes.
    """
    edim = ext1_dim(m, n)
    if not (0 <= class_index < edim):
        raise InputError(f"extension class index {class_index} out of range (dim Ext = {edim})")
    coeffs = [0] * edim
    coeffs[class_index] = 1
    return realize_extension_class(m, n, coeffs)


def realize_extension_class(m, n, coeffs):
    """The middle term for an arbitrary coefficient vector over the
    canonical basis of Ext^1(M, N)."""
    n = coerce_same_quiver(m, n)
    quiver, p = m.quiver, m.p
    d = _hom_complex_matrix(m, n)
    rows = d.shape[0]
    proj_q, section = ef.quotient_projection(d, rows, p)
    edim = proj_q.shape[0]
    if len(coeffs) != edim:
        raise InputError(f"expected {edim} class coefficients, got {len(coeffs)}")
    xi_flat = np.mod(section @ np.array(coeffs, dtype=np.int64).reshape(-1, 1), p)[:, 0]
    xi = []
    pos = 0
    for a in range(len(quiver.arrows)):
        i, j = quiver.arrow_source[a], quiver.arrow_target[a]
        blk = n.dims[j] * m.dims[i]
        xi.append(np.array(xi_flat[pos:pos + blk], dtype=np.int64).reshape(n.dims[j], m.dims[i]))
        pos += blk
    dims = [n.dims[i] + m.dims[i] for i in range(quiver.n_vertices)]
    maps = []
    for a in range(len(quiver.arrows)):
        i, j = quiver.arrow_source[a], quiver.arrow_target[a]
        blk = ef.zeros(dims[j], dims[i])
        blk[:n.dims[j], :n.dims[i]] = n.maps[a]
        blk[:n.dims[j], n.dims[i]:] = xi[a]
        blk[n.dims[j]:, n.dims[i]:] = m.maps[a]
        maps.append(blk)
    e = Representation(quiver, p, dims, maps)
    iblocks = [np.vstack([ef.eye(n.dims[i]), ef.zeros(m.dims[i], n.dims[i])])
               for i in range(quiver.n_vertices)]
    pblocks = [np.hstack([ef.zeros(m.dims[i], n.dims[i]), ef.eye(m.dims[i])])
               for i in range(quiver.n_vertices)]
    return e, RepMorphism(n, e, iblocks), RepMorphism(e, m, pblocks)


def sequence_splits(incl):
    """Whether a short exact sequence splits, given the inclusion N -> E:
    tests for a retraction r with r . incl = id."""
    n, e = incl.source, incl.target
    basis = hom_basis(e, n)
    if not basis:
        return n.total_dim == 0
    restricted = np.array([h.compose(incl).flatten() for h in basis], dtype=np.int64).T
    target = RepMorphism(n, n, [ef.eye(d) for d in n.dims]).flatten().reshape(-1, 1)
    return ef.solve(restricted, target, n.p) is not None


# ---------------------------------------------------------------------------
# isomorphism testing and decomposition
# ---------------------------------------------------------------------------

def is_iso(m, n, seed=ef.DEFAULT_SEED):
    """Whether M and N are isomorphic (bounded-determinism search for an
    invertible morphism, exhaustive on tiny Hom spaces)."""
    if m.component_dims() != n.component_dims():
        return False
    if m.total_dim == 0:
        return True
    basis = hom_basis(m, n)
    if not basis:
        return False
    return find_invertible_combo([h.blocks for h in basis], m.p, seed) is not None


def decompose(m, seed=ef.DEFAULT_SEED):
    """Indecomposable direct summands of M, as (module, multiplicity) pairs.

    Fitting splitting: characteristic polynomials of endomorphisms are
    factored and M splits along coprime-factor kernels; a piece is declared
    indecomposable when no endomorphism splits it.
    """
    pieces = fitting_split(m, hom_basis, seed)
    out = []
    for piece in pieces:
        for k, (rep, mult) in enumerate(out):
            if is_iso(piece, rep, seed):
                out[k] = (rep, mult + 1)
                break
        else:
            out.append((piece, 1))
    return out


def end_is_local(m, seed=ef.DEFAULT_SEED):
    """True when End(M) is local with residue field F_p: every basis
    endomorphism is scalar + nilpotent."""
    ends = hom_basis(m, m)
    for f in ends:
        if single_eigenvalue(f.blocks, m.p, seed) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# tops, covers, and the Auslander-Reiten translate tau = DTr
# ---------------------------------------------------------------------------


def radical_span(m):
    """Per-vertex spanning columns of rad M = sum of arrow images."""
    quiver = m.quiver
    spans = [[] for _ in range(quiver.n_vertices)]
    for a in range(len(quiver.arrows)):
        t = quiver.arrow_target[a]
        if m.maps[a].size:
            spans[t].append(m.maps[a])
    return [np.hstack(s) if s else ef.zeros(m.dims[i], 0)
            for i, s in enumerate(spans)]


def top_generators(m):
    """[(vertex, column vector)] lifting a basis of M/rad M."""
    spans = radical_span(m)
    gens = []
    for i in range(m.quiver.n_vertices):
        proj, section = ef.quotient_projection(spans[i], m.dims[i], m.p)
        for k in range(proj.shape[0]):
            gens.append((i, section[:, k].copy()))
    return gens


def morphism_from_generator(vertex, vec, m):
    """The morphism P(vertex) -> M sending the trivial-path generator to vec."""
    quiver, p = m.quiver, m.p
    pb = quiver.paths
    proj = projective(quiver, p, quiver.vertices[vertex])
    basis = [q for q in pb.from_vertex[vertex]]
    by_target = {j: [q for q in basis if pb.target[q] == j] for j in range(quiver.n_vertices)}
    blocks = []
    for j in range(quiver.n_vertices):
        cols = [ef.mul(m.act_path(q), vec.reshape(-1, 1), p) for q in by_target[j]]
        blocks.append(np.hstack(cols) if cols else ef.zeros(m.dims[j], 0))
    return proj, RepMorphism(proj, m, blocks)


def projective_cover(m):
    """Minimal projective cover: (P, cover, summand vertices in order)."""
    gens = top_generators(m)
    if not gens:
        zero = Representation(m.quiver, m.p, [0] * m.quiver.n_vertices)
        return zero, RepMorphism(zero, m, [ef.zeros(d, 0) for d in m.dims]), []
    parts = [morphism_from_generator(v, vec, m) for v, vec in gens]
    total, incls, _ = Representation.direct_sum([pr for pr, _ in parts])
    blocks = []
    for j in range(m.quiver.n_vertices):
        cols = [mor.blocks[j] for _, mor in parts]
        blocks.append(np.hstack(cols) if cols else ef.zeros(m.dims[j], 0))
    cover = RepMorphism(total, m, blocks)
    return total, cover, [v for v, _ in gens]


def _projective_coordinates(cover_source_vertices, phi):
    """Express a morphism between explicit projective sums as a matrix of
    path-algebra elements; entry (s, t) is a dict path_id -> coefficient."""
    quiver = phi.source.quiver
    pb = quiver.paths
    src_verts = cover_source_vertices[1]
    tgt_verts = cover_source_vertices[0]
    # column offsets of each source generator (trivial path slot)
    src_off = []
    run = {j: 0 for j in range(quiver.n_vertices)}
    for y in src_verts:
        paths_by_tgt = {}
        for q in pb.from_vertex[y]:
            paths_by_tgt.setdefault(pb.target[q], []).append(q)
        src_off.append({j: run[j] for j in range(quiver.n_vertices)})
        for j in range(quiver.n_vertices):
            run[j] += len(paths_by_tgt.get(j, []))
    tgt_layout = []
    run = {j: 0 for j in range(quiver.n_vertices)}
    for x in tgt_verts:
        entry = {}
        for j in range(quiver.n_vertices):
            qs = [q for q in pb.from_vertex[x] if pb.target[q] == j]
            entry[j] = (run[j], qs)
            run[j] += len(qs)
        tgt_layout.append(entry)
    lam = [[{} for _ in src_verts] for _ in tgt_verts]
    for t, y in enumerate(src_verts):
        gen_col = src_off[t][y] + [q for q in pb.from_vertex[y]
                                   if pb.target[q] == y].index(y)  # trivial path position
        image = phi.blocks[y][:, gen_col]
        for s in range(len(tgt_verts)):
            off, qs = tgt_layout[s][y]
            for k, q in enumerate(qs):
                c = int(image[off + k])
                if c:
                    lam[s][t][q] = c
    return lam


def transpose(m):
    """Tr M over the opposite quiver, from a minimal projective presentation."""
    quiver, p = m.quiver, m.p
    p0, cover, verts0 = projective_cover(m)
    ker, incl = cover.kernel()
    p1, cover1, verts1 = projective_cover(ker)
    if not verts1:
        return Representation(quiver.opposite(), p, [0] * quiver.n_vertices)
    phi = incl.compose(cover1)
    lam = _projective_coordinates((verts0, verts1), phi)
    op = quiver.opposite()
    pb, pb_op = quiver.paths, op.paths
    if not verts0:
        total1_op, _, _ = Representation.direct_sum(
            [projective(op, p, op.vertices[y]) for y in verts1])
        return total1_op
    # psi: (+)_s P_op(x_s) -> (+)_t P_op(y_t), block (t,s) = left multiplication
    # by the reversed coordinates of lam[s][t]
    parts0 = [projective(op, p, op.vertices[x]) for x in verts0]
    parts1 = [projective(op, p, op.vertices[y]) for y in verts1]
    total0, _, projs0 = Representation.direct_sum(parts0)
    total1, incls1, _ = Representation.direct_sum(parts1)
    acc = None
    for s, x in enumerate(verts0):
        for t, y in enumerate(verts1):
            if not lam[s][t]:
                continue
            vec = np.zeros(parts1[t].dims[x], dtype=np.int64)
            qs_op = [q for q in pb_op.from_vertex[y] if pb_op.target[q] == x]
            for q, c in lam[s][t].items():
                q_op = pb.reversed_id(pb_op, q)
                vec[qs_op.index(q_op)] = c
            _, mor = morphism_from_generator(x, np.mod(vec, p), parts1[t])
            # morphism P_op(x_s) -> total1 via this block
            blk = incls1[t].compose(mor).compose(projs0[s])
            acc = blk if acc is None else RepMorphism(
                total0, total1,
                [np.mod(acc.blocks[i] + blk.blocks[i], p) for i in range(quiver.n_vertices)])
    if acc is None:
        return total1
    coker, _ = acc.cokernel()
    return coker


def tau(m):
    """Auslander-Reiten translate DTr; zero for projective modules."""
    tr = transpose(m)
    return tr.dual()


def tau_inverse(m):
    """TrD; zero for injective modules."""
    return transpose(m.dual())

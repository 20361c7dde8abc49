"""Auslander-Reiten machinery over the replicated algebra.

tau = DTr is computed from a minimal projective presentation: the
presentation map is rewritten as a matrix of algebra elements, transposed
into the opposite algebra (replicated algebra of the opposite quiver,
layers reversed), its cokernel is the transpose, and dualizing brings the
result back.  tau^{-1} = TrD runs the same machinery starting from the
dual.  Catalogs are built by closing the projectives and injectives under
tau and tau^{-1}; mesh data and orbit tables are then recomputed from
radical quotients, so the mesh identities are independent checks rather
than construction assumptions.
"""

import json
import time

import numpy as np

from . import exactfield as ef
from . import replicated as rp
from .errors import AnomalyError, BudgetExceeded, InputError
from .replicated import DUAL, PATH, LayeredModule, LayeredMorphism
from .splitting import fitting_split, single_eigenvalue

CATALOG_BUDGET = 10000
PHASE_SECONDS = 60.0


def proj_basis_elements(algebra, i, k):
    """Algebra basis elements of proj(i, k) per component, matching the
    column order used by the proj constructor."""
    pb = algebra.quiver.paths
    out = {}
    for (l, j) in algebra.components():
        if l == k:
            out[(l, j)] = [(PATH, k, q) for q in pb.from_vertex[i] if pb.target[q] == j]
        elif k >= 1 and l == k - 1:
            out[(l, j)] = [(DUAL, k, r) for r in pb.into_vertex[i] if pb.source[r] == j]
        else:
            out[(l, j)] = []
    return out


def _presentation_matrix(m):
    """Minimal projective presentation P1 -> P0 -> M -> 0, with the map
    expressed as algebra elements: returns (summands0, summands1, lam)
    where lam[s][t] is a list of (basis element, coefficient)."""
    alg = m.algebra
    p0, cover, summands0 = rp.proj_cover(m)
    ker, incl = cover.kernel()
    p1, cover1, summands1 = rp.proj_cover(ker)
    if not summands1:
        return summands0, [], []
    phi = incl.compose(cover1)
    # column offset of each P1 generator inside its component of P1
    gen_cols = []
    run = {}
    for t, (i, k) in enumerate(summands1):
        layout = proj_basis_elements(alg, i, k)
        start = {c: run.get(c, 0) for c in layout}
        for c, elts in layout.items():
            run[c] = run.get(c, 0) + len(elts)
        gen = (PATH, k, alg.quiver.paths.trivial(i))
        gen_cols.append(start[(k, i)] + layout[(k, i)].index(gen))
    # row layout of P0 per component
    layouts0 = [proj_basis_elements(alg, i, k) for (i, k) in summands0]
    lam = []
    for s in range(len(summands0)):
        lam.append([[] for _ in summands1])
    for t, (i, k) in enumerate(summands1):
        comp = alg.comp_index(k, i)
        col = phi.blocks[comp][:, gen_cols[t]]
        row = 0
        for s in range(len(summands0)):
            elts = layouts0[s][(k, i)]
            for b in elts:
                c = int(col[row])
                if c:
                    lam[s][t].append((b, c))
                row += 1
        assert row == len(col)
    return summands0, summands1, lam


def transpose_layered(m):
    """Tr M as a module over the opposite replicated algebra."""
    alg = m.algebra
    op = alg.opposite()
    summands0, summands1, lam = _presentation_matrix(m)
    if not summands1:
        return op.zero_module()

    def sigma_comp(i, k):
        return (i, alg.m - k)

    parts1 = [op.proj(*sigma_comp(i, k)) for (i, k) in summands1]
    total1, incls1, _ = LayeredModule.direct_sum(parts1)
    if not summands0:
        return total1
    parts0 = [op.proj(*sigma_comp(i, k)) for (i, k) in summands0]
    total0, _, projs0 = LayeredModule.direct_sum(parts0)
    acc = None
    for s, (i0, k0) in enumerate(summands0):
        io, ko = sigma_comp(i0, k0)
        for t in range(len(summands1)):
            if not lam[s][t]:
                continue
            i1, k1 = summands1[t]
            layout_t = proj_basis_elements(op, *sigma_comp(i1, k1))
            vec = np.zeros(parts1[t].layers[ko].dims[io], dtype=np.int64)
            slot = layout_t[(ko, io)]
            for b, c in lam[s][t]:
                vec[slot.index(alg.to_opposite_element(b))] = c
            _, mor = rp.generator_morphism((ko, io), np.mod(vec, alg.p), parts1[t])
            blk = incls1[t].compose(mor).compose(projs0[s])
            acc = blk if acc is None else acc.add(blk)
    if acc is None:
        return total1
    return acc.cokernel()[0]


def tau(m):
    """Auslander-Reiten translate DTr: zero exactly on projectives."""
    return transpose_layered(m).dual()


def tau_inverse(m):
    """TrD: zero exactly on injectives."""
    return transpose_layered(m.dual())


class IndecCatalog:
    """One representative per isomorphism class of indecomposables,
    closed under tau and tau^{-1}, with flags and translation tables."""

    def __init__(self, algebra, modules, tau_map, tau_inv_map,
                 projective, injective, seed=ef.DEFAULT_SEED):
        self.algebra = algebra
        self.modules = modules
        self.tau_map = tau_map
        self.tau_inv_map = tau_inv_map
        self.projective = projective
        self.injective = injective
        self.seed = seed
        self._hom_bases = {}
        self._leq = None

    def __len__(self):
        return len(self.modules)

    @property
    def proj_inj(self):
        return self.projective & self.injective

    def layer0(self, idx):
        return self.modules[idx].is_layer_module(0)

    def find(self, m, seed=None):
        """Catalog index of a module isomorphic to m, or None."""
        seed = self.seed if seed is None else seed
        dims = m.component_dims()
        for idx, cand in enumerate(self.modules):
            if cand.component_dims() == dims and rp.is_iso_layered(cand, m, seed):
                return idx
        return None

    def label(self, idx):
        return f"X{idx}[{self.modules[idx].dim_label()}]"

    # -- Hom bookkeeping -----------------------------------------------------

    def hom_basis(self, i, j):
        key = (i, j)
        if key not in self._hom_bases:
            self._hom_bases[key] = rp.hom_layered(self.modules[i], self.modules[j])
        return self._hom_bases[key]

    def hom_dim(self, i, j):
        return len(self.hom_basis(i, j))

    def rad_basis(self, i, j):
        """Basis of rad(X_i, X_j): all of Hom for i != j; for i = j the
        scalar-corrected nilpotent parts of the endomorphism basis."""
        if i != j:
            return self.hom_basis(i, j)
        x = self.modules[i]
        out = []
        for f in self.hom_basis(i, i):
            lam = single_eigenvalue(f.blocks, x.p, self.seed)
            if lam is None:
                raise AnomalyError(f"endomorphism of {self.label(i)} is not scalar + nilpotent")
            g = LayeredMorphism(x, x, [np.mod(b - lam * ef.eye(b.shape[0]), x.p)
                                       for b in f.blocks])
            if not g.is_zero():
                out.append(g)
        flats = np.array([g.flatten() for g in out], dtype=np.int64)
        if len(out) > 1:
            r, pivots = ef.rref(flats, x.p)
            out = [LayeredMorphism.from_flat(x, x, r[t]) for t in range(len(pivots))]
        return out

    def irreducible_mult(self, i, j):
        """dim rad(X_i, X_j) / rad^2, the arrow multiplicity in the AR quiver."""
        rad = self.rad_basis(i, j)
        if not rad:
            return 0
        rad2_flat = []
        for z in range(len(self.modules)):
            for u in self.rad_basis(i, z):
                for v in self.rad_basis(z, j):
                    comp = v.compose(u)
                    if not comp.is_zero():
                        rad2_flat.append(comp.flatten())
        dim_rad = len(rad)
        if not rad2_flat:
            return dim_rad
        mat = np.array(rad2_flat, dtype=np.int64)
        return dim_rad - ef.rank(mat, self.algebra.p)

    # -- predecessor order ----------------------------------------------------

    def leq_matrix(self):
        """Reflexive-transitive closure of {(i, j): Hom(X_i, X_j) != 0}."""
        if self._leq is None:
            n = len(self.modules)
            adj = np.zeros((n, n), dtype=bool)
            for i in range(n):
                adj[i, i] = True
                for j in range(n):
                    if i != j and self.hom_dim(i, j) > 0:
                        adj[i, j] = True
            for k in range(n):
                adj |= np.outer(adj[:, k], adj[k, :])
            self._leq = adj
        return self._leq

    def leq(self, i, j):
        if not (0 <= i < len(self.modules) and 0 <= j < len(self.modules)):
            raise InputError("leq: module not in catalog")
        return bool(self.leq_matrix()[i, j])

    def set_leq(self, s1, s2, strict=False):
        """The four-clause set relation on catalog index sets; strict adds
        disjointness."""
        s1, s2 = set(s1), set(s2)
        mat = self.leq_matrix()
        if not all(any(mat[x, y] for x in s1) for y in s2):
            return False
        if not all(any(mat[x, y] for y in s2) for x in s1):
            return False
        if any(mat[y, x] for y in s2 for x in s1):
            return False
        if any(mat[y, x] for x in s1 for y in s2):
            return False
        if strict and s1 & s2:
            return False
        return True

    def to_json(self):
        return {
            "fingerprint": self.algebra.fingerprint(),
            "modules": [m.to_json() for m in self.modules],
            "tau": self.tau_map,
            "tau_inv": self.tau_inv_map,
            "projective": sorted(self.projective),
            "injective": sorted(self.injective),
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, algebra, data):
        if data.get("fingerprint") != algebra.fingerprint():
            raise InputError("catalog fingerprint does not match the algebra")
        modules = [LayeredModule.from_json(algebra, d) for d in data["modules"]]
        return cls(algebra, modules,
                   [None if t is None else int(t) for t in data["tau"]],
                   [None if t is None else int(t) for t in data["tau_inv"]],
                   set(data["projective"]), set(data["injective"]),
                   seed=data.get("seed", ef.DEFAULT_SEED))


def indec_catalog(algebra, budget=CATALOG_BUDGET, seed=ef.DEFAULT_SEED,
                  time_limit=PHASE_SECONDS):
    """Close {proj(i,k)} and {inj(i,k)} under tau^{-1} and tau.

    Exceeding the entry budget or the time limit raises BudgetExceeded (the
    expected signal for representation-infinite base algebras).
    """
    start = time.monotonic()
    seeds = [algebra.proj(i, k) for k in range(algebra.m + 1)
             for i in range(algebra.quiver.n_vertices)]
    seeds += [algebra.inj(i, algebra.m) for i in range(algebra.quiver.n_vertices)]
    modules = []

    def locate(m):
        dims = m.component_dims()
        for idx, cand in enumerate(modules):
            if cand.component_dims() == dims and rp.is_iso_layered(cand, m, seed):
                return idx
        return None

    def register(m):
        idx = locate(m)
        if idx is not None:
            return idx, False
        if len(fitting_split(m, rp.hom_layered, seed)) != 1:
            raise AnomalyError("tau closure produced a decomposable module")
        modules.append(m)
        if len(modules) > budget:
            raise BudgetExceeded(
                f"catalog exceeded {budget} entries: "
                "not representation-finite within budget")
        if time.monotonic() - start > time_limit:
            raise BudgetExceeded(f"catalog construction exceeded {time_limit:.0f}s")
        return len(modules) - 1, True

    queue = []
    for s in seeds:
        idx, fresh = register(s)
        if fresh:
            queue.append(idx)
    tau_map, tau_inv_map = {}, {}
    pos = 0
    while pos < len(queue):
        idx = queue[pos]
        pos += 1
        for op, table in ((tau_inverse, tau_inv_map), (tau, tau_map)):
            image = op(modules[idx])
            if image.is_zero():
                table[idx] = None
                continue
            jdx, fresh = register(image)
            table[idx] = jdx
            if fresh:
                queue.append(jdx)
    projective = set()
    injective = set()
    for idx, m in enumerate(modules):
        dims = m.component_dims()
        for k in range(algebra.m + 1):
            for i in range(algebra.quiver.n_vertices):
                if algebra.proj(i, k).component_dims() == dims and \
                        rp.is_iso_layered(algebra.proj(i, k), m, seed):
                    projective.add(idx)
                if algebra.inj(i, k).component_dims() == dims and \
                        rp.is_iso_layered(algebra.inj(i, k), m, seed):
                    injective.add(idx)
    cat = IndecCatalog(algebra,
                       modules,
                       [tau_map.get(i) for i in range(len(modules))],
                       [tau_inv_map.get(i) for i in range(len(modules))],
                       projective, injective, seed=seed)
    _check_translation_tables(cat)
    return cat


def _check_translation_tables(cat):
    """tau is defined exactly off projectives, tau^{-1} off injectives,
    and they are mutually inverse where defined."""
    for idx in range(len(cat)):
        if (cat.tau_map[idx] is None) != (idx in cat.projective):
            raise AnomalyError(f"tau undefined exactly on projectives fails at {cat.label(idx)}")
        if (cat.tau_inv_map[idx] is None) != (idx in cat.injective):
            raise AnomalyError(f"tau^-1 undefined exactly on injectives fails at {cat.label(idx)}")
        t = cat.tau_map[idx]
        if t is not None and cat.tau_inv_map[t] != idx:
            raise AnomalyError(f"tau^-1 tau != id at {cat.label(idx)}")


class ARQuiver:
    """Irreducible-map multiplicities and mesh data over a catalog."""

    def __init__(self, catalog):
        self.catalog = catalog
        n = len(catalog)
        self.mult = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if i == j or catalog.hom_dim(i, j):
                    self.mult[i, j] = catalog.irreducible_mult(i, j)
        self.meshes = {}
        for z in range(n):
            if catalog.tau_map[z] is not None:
                middle = {y: int(self.mult[y, z]) for y in range(n) if self.mult[y, z]}
                self.meshes[z] = middle

    def mesh_violations(self):
        """Mesh dimension identity dim tau Z + dim Z = sum mult(Y -> Z) dim Y
        at every non-projective node; returns the failing nodes."""
        bad = []
        cat = self.catalog
        for z, middle in self.meshes.items():
            tz = cat.tau_map[z]
            want = np.array(cat.modules[z].component_dims()) + \
                np.array(cat.modules[tz].component_dims())
            got = sum(mult * np.array(cat.modules[y].component_dims())
                      for y, mult in middle.items())
            if not np.array_equal(want, got):
                bad.append(z)
        return bad

    def to_dot(self):
        """DOT digraph: solid arrows with multiplicities, dashed tau edges."""
        cat = self.catalog
        lines = ["digraph ar_quiver {", "  rankdir=LR;"]
        for i in range(len(cat)):
            flags = []
            if i in cat.projective:
                flags.append("P")
            if i in cat.injective:
                flags.append("I")
            tag = f" {'/'.join(flags)}" if flags else ""
            lines.append(f'  n{i} [label="X{i} ({cat.modules[i].dim_label()}){tag}"];')
        for i in range(len(cat)):
            for j in range(len(cat)):
                if self.mult[i, j]:
                    attr = f' [label="{self.mult[i, j]}"]' if self.mult[i, j] > 1 else ""
                    lines.append(f"  n{i} -> n{j}{attr};")
        for z, tz in enumerate(cat.tau_map):
            if tz is not None:
                lines.append(f"  n{z} -> n{tz} [style=dashed, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"


class OrbitTable:
    """tau-orbits as chains from the projective end to the injective end."""

    def __init__(self, catalog):
        self.catalog = catalog
        n = len(catalog)
        self.orbits = []
        seen = set()
        for start in range(n):
            if start in seen or catalog.tau_map[start] is not None:
                continue
            chain = [start]
            seen.add(start)
            cur = start
            while catalog.tau_inv_map[cur] is not None:
                cur = catalog.tau_inv_map[cur]
                if cur in seen or len(chain) > n:
                    raise AnomalyError("tau-periodic orbit in a finite catalog")
                chain.append(cur)
                seen.add(cur)
            self.orbits.append(chain)
        if len(seen) != n:
            raise AnomalyError("orbit chains do not cover the catalog")

    def cardinalities(self):
        return sorted((len(o) for o in self.orbits), reverse=True)

    def max_cardinality(self):
        return max(len(o) for o in self.orbits)

    def orbit_of(self, idx):
        for o in self.orbits:
            if idx in o:
                return o
        raise InputError(f"index {idx} not in any orbit")

    def to_json(self):
        cat = self.catalog
        return {
            "fingerprint": cat.algebra.fingerprint(),
            "orbits": [{"members": [cat.label(i) for i in o], "cardinality": len(o)}
                       for o in self.orbits],
            "cardinalities": self.cardinalities(),
        }


def ar_quiver(catalog):
    return ARQuiver(catalog)


def tau_orbits(catalog):
    return OrbitTable(catalog)


def stable_hom_dim(m, n):
    """dim Hom(M, N) minus the dimension of the subspace of morphisms
    factoring through add of the projective-injectives."""
    alg = m.algebra
    basis = rp.hom_layered(m, n)
    if not basis:
        return 0
    through = []
    for pi in alg.projective_injectives():
        ups = rp.hom_layered(m, pi)
        downs = rp.hom_layered(pi, n)
        for u in ups:
            for v in downs:
                comp = v.compose(u)
                if not comp.is_zero():
                    through.append(comp.flatten())
    if not through:
        return len(basis)
    mat = np.array(through, dtype=np.int64)
    return len(basis) - ef.rank(mat, alg.p)

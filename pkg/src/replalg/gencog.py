"""Generator-cogenerators: minimal right approximations, M-dimension,
and global dimensions of endomorphism algebras.

The minimal right add-M approximation of X is built by projectivization:
the multiplicity of a summand M_i is dim Hom(M_i, X) / (radical image),
with chosen coset representatives assembled into the approximating map.
M-dimension iterates approximation kernels on multisets of indecomposable
summands; since approximations are additive, only kernels of single
indecomposables are ever computed, and the chain becomes a walk on a
finite successor graph.  An infinite M-dimension is certified by a state
revisit; leaving the window (unbounded growth) yields an indeterminate
verdict, never a guess.
"""

import math

import numpy as np

from . import artrans as ar
from . import exactfield as ef
from . import replicated as rp
from .errors import AnomalyError, ContractError, InputError
from .replicated import LayeredModule, LayeredMorphism
from .splitting import single_eigenvalue

MDIM_MAX_STEPS = 64
MDIM_DIM_CAP = 600
INDETERMINATE = "indeterminate"


class WitnessNotFound(ContractError):
    """No orbit long enough to run the construction."""

    def __init__(self, message, max_cardinality=None):
        super().__init__(message)
        self.max_cardinality = max_cardinality


class IsoRegistry:
    """Canonical representatives of iso classes of layered modules."""

    def __init__(self, modules=None, seed=ef.DEFAULT_SEED):
        self.modules = list(modules or [])
        self.seed = seed

    def canon(self, m, register=True):
        dims = m.component_dims()
        for idx, cand in enumerate(self.modules):
            if cand.component_dims() == dims and rp.is_iso_layered(cand, m, self.seed):
                return idx
        if not register:
            return None
        self.modules.append(m)
        return len(self.modules) - 1

    def __len__(self):
        return len(self.modules)


class GenCog:
    """A generator-cogenerator given by registry ids of its pairwise
    non-isomorphic indecomposable summands (multiplicity one each)."""

    def __init__(self, engine, summand_ids, require_gencog=True):
        self.engine = engine
        self.summands = frozenset(summand_ids)
        if require_gencog:
            missing = engine.required_ids() - self.summands
            if missing:
                raise ContractError(
                    "not a generator-cogenerator: missing "
                    + ", ".join(str(i) for i in sorted(missing)))

    @property
    def algebra(self):
        return self.engine.algebra

    def modules(self):
        return [self.engine.registry.modules[i] for i in sorted(self.summands)]

    def to_json(self):
        return {
            "fingerprint": self.algebra.fingerprint(),
            "summands": [self.engine.registry.modules[i].to_json()
                         for i in sorted(self.summands)],
        }


class ApproxResult:
    """A minimal right add-M approximation f: M' -> X with its kernel."""

    def __init__(self, summand_ids, multiplicities, morphism, kernel, kernel_incl):
        self.summand_ids = summand_ids
        self.multiplicities = multiplicities
        self.morphism = morphism
        self.kernel = kernel
        self.kernel_incl = kernel_incl
        self.surjective = morphism.is_surjective()


def _rad_basis_of(m, seed):
    """Scalar-corrected nilpotent basis of rad End(M) for M with local
    endomorphism algebra and residue field F_p."""
    out = []
    for f in rp.hom_layered(m, m):
        lam = single_eigenvalue(f.blocks, m.p, seed)
        if lam is None:
            raise AnomalyError("summand endomorphism is not scalar + nilpotent")
        g = LayeredMorphism(m, m, [np.mod(b - lam * ef.eye(b.shape[0]), m.p)
                                   for b in f.blocks])
        if not g.is_zero():
            out.append(g)
    return out


def min_right_approx(summands, x, hom_fn=rp.hom_layered, seed=ef.DEFAULT_SEED):
    """Minimal right add-M approximation of X for M = (+) summands
    (pairwise non-isomorphic indecomposables).

    Multiplicity of M_i = dim( Hom(M_i, X) / sum_j rad(M_i, M_j) Hom(M_j, X) );
    coset representatives are chosen greedily along the canonical Hom basis.
    """
    p = x.algebra.p
    homs = [hom_fn(mi, x) for mi in summands]
    reps, mults, used = [], [], []
    for i, mi in enumerate(summands):
        if not homs[i]:
            mults.append(0)
            continue
        rad_image = []
        for j, mj in enumerate(summands):
            if not homs[j]:
                continue
            if i == j:
                rad_ij = _rad_basis_of(mi, seed)
            else:
                rad_ij = hom_fn(mi, mj)
            for r in rad_ij:
                for f in homs[j]:
                    comp = f.compose(r)
                    if not comp.is_zero():
                        rad_image.append(comp.flatten())
        span = [v for v in rad_image]
        base_rank = ef.rank(np.array(span, dtype=np.int64), p) if span else 0
        cur_rank = base_rank
        chosen = []
        for f in homs[i]:
            trial = span + [f.flatten()]
            r = ef.rank(np.array(trial, dtype=np.int64), p)
            if r > cur_rank:
                span = trial
                cur_rank = r
                chosen.append(f)
        mults.append(len(chosen))
        if chosen:
            reps.append((i, chosen))
            used.append((summands[i], len(chosen)))
    if not used:
        zero = x.algebra.zero_module()
        f = LayeredMorphism(zero, x, [ef.zeros(d, 0) for d in x.component_dims()])
        return ApproxResult([], [0] * len(summands), f, zero, None)
    parts = []
    for i, chosen in reps:
        parts.extend([summands[i]] * len(chosen))
    total, _, _ = LayeredModule.direct_sum(parts)
    blocks = []
    ncomp = x.algebra.n_components
    for c in range(ncomp):
        cols = []
        for i, chosen in reps:
            for f in chosen:
                cols.append(f.blocks[c])
        blocks.append(np.hstack(cols))
    f = LayeredMorphism(total, x, blocks)
    kernel, incl = f.kernel()
    return ApproxResult([i for i, _ in reps], mults, f, kernel, incl)


def verify_approximation(summands, x, result, hom_fn=rp.hom_layered):
    """Independent check of the two approximation invariants.

    (1) for every summand S the composition Hom(S, M') -> Hom(S, X) is
    surjective; (2) right minimality: every endomorphism h of M' with
    f h = 0 lies in rad End(M')."""
    p = x.algebra.p
    f = result.morphism
    mprime = f.source
    for s in summands:
        target = hom_fn(s, x)
        if not target:
            continue
        through = [f.compose(g).flatten() for g in hom_fn(s, mprime)]
        through = [v for v in through if v.any()]
        mat = np.array(through, dtype=np.int64) if through else None
        got = ef.rank(mat, p) if mat is not None else 0
        if got != len(target):
            return False
    # right minimality
    ends = rp.hom_layered(mprime, mprime)
    if ends:
        flats = np.array([f.compose(h).flatten() for h in ends], dtype=np.int64).T
        ker = ef.kernel_basis(flats, p)
        for c in range(ker.shape[1]):
            h = None
            for t in range(len(ends)):
                coeff = int(ker[t, c])
                if coeff:
                    scaled = LayeredMorphism(
                        mprime, mprime,
                        [np.mod(coeff * b, p) for b in ends[t].blocks])
                    h = scaled if h is None else h.add(scaled)
            if h is not None and single_eigenvalue(h.blocks, p, 0) != 0:
                return False
    return True


class MDimResult:
    """Outcome of an M-dimension computation: a value (int, inf, or None
    for indeterminate), the witness chain of non-add-M states, and cycle
    evidence when infinite."""

    def __init__(self, value, chain, cycle=None, reason=None):
        self.value = value
        self.chain = chain
        self.cycle = cycle
        self.reason = reason

    @property
    def is_infinite(self):
        return self.value == math.inf

    @property
    def indeterminate(self):
        return self.value is None


class MDimEngine:
    """Shared approximation/omega caches over a registry of canonical
    modules (the catalog in exact mode, a growing store in windowed mode)."""

    def __init__(self, algebra, registry, seed=ef.DEFAULT_SEED,
                 dim_cap=MDIM_DIM_CAP, catalog=None):
        self.algebra = algebra
        self.registry = registry
        self.seed = seed
        self.dim_cap = dim_cap
        self.catalog = catalog
        self._required = None
        self._omega = {}
        self._hom_nonzero = {}

    @classmethod
    def for_catalog(cls, catalog, seed=ef.DEFAULT_SEED):
        reg = IsoRegistry(list(catalog.modules), seed=seed)
        return cls(catalog.algebra, reg, seed=seed, catalog=catalog)

    @classmethod
    def windowed(cls, algebra, seed=ef.DEFAULT_SEED, dim_cap=MDIM_DIM_CAP):
        return cls(algebra, IsoRegistry(seed=seed), seed=seed, dim_cap=dim_cap)

    def required_ids(self):
        """Registry ids of all proj(i,k) and inj(i,k): the summands every
        generator-cogenerator must contain."""
        if self._required is None:
            req = set()
            alg = self.algebra
            for k in range(alg.m + 1):
                for i in range(alg.quiver.n_vertices):
                    req.add(self.registry.canon(alg.proj(i, k)))
                    req.add(self.registry.canon(alg.inj(i, k)))
            self._required = req
        return set(self._required)

    def gencog(self, extra_ids=(), modules=()):
        ids = self.required_ids()
        ids.update(extra_ids)
        for m in modules:
            ids.add(self.registry.canon(m))
        return GenCog(self, ids)

    def hom_nonzero(self, i, j):
        key = (i, j)
        if key not in self._hom_nonzero:
            if self.catalog is not None:
                val = self.catalog.hom_dim(i, j) > 0
            else:
                val = rp.hom_dim_layered(self.registry.modules[i],
                                         self.registry.modules[j]) > 0
            self._hom_nonzero[key] = val
        return self._hom_nonzero[key]

    def hom_fn(self):
        if self.catalog is not None:
            def fn(a, b):
                ia = self._fast_index(a)
                ib = self._fast_index(b)
                if ia is not None and ib is not None:
                    return self.catalog.hom_basis(ia, ib)
                return rp.hom_layered(a, b)
            return fn
        return rp.hom_layered

    def _fast_index(self, m):
        for idx, cand in enumerate(self.registry.modules):
            if cand is m:
                return idx
        return None

    def omega_ids(self, x_id, summand_ids):
        """Registry ids (with multiplicity) of the indecomposable summands
        of Omega_M(X); cached on (X, predecessors of X inside M)."""
        relevant = frozenset(i for i in summand_ids if self.hom_nonzero(i, x_id))
        key = (x_id, relevant)
        if key in self._omega:
            return self._omega[key]
        x = self.registry.modules[x_id]
        mods = [self.registry.modules[i] for i in sorted(relevant)]
        result = min_right_approx(mods, x, hom_fn=self.hom_fn(), seed=self.seed)
        if not result.surjective:
            raise AnomalyError("approximation by a generator failed to be surjective")
        pieces = []
        if not result.kernel.is_zero():
            if result.kernel.total_dim > self.dim_cap:
                self._omega[key] = None  # window exit
                return None
            for piece, mult in rp.decompose_layered(result.kernel, self.seed):
                pid = self.registry.canon(piece)
                pieces.extend([pid] * mult)
        out = tuple(sorted(pieces))
        self._omega[key] = out
        return out

    def mdim_id(self, x_id, summand_ids, max_steps=MDIM_MAX_STEPS):
        """(value, chain, cycle, reason) for a single indecomposable."""
        memo = {}
        onstack = []

        def rec(idx, depth):
            if idx in summand_ids:
                return 0
            if idx in memo:
                return memo[idx]
            if idx in onstack:
                return math.inf
            if depth > max_steps:
                return None
            onstack.append(idx)
            succ = self.omega_ids(idx, summand_ids)
            if succ is None:
                onstack.pop()
                memo[idx] = None
                return None
            best = 0
            for nxt in set(succ):
                if nxt in summand_ids:
                    continue
                sub = rec(nxt, depth + 1)
                if sub is None:
                    best = None
                    break
                if sub == math.inf:
                    best = math.inf
                    break
                best = max(best, sub)
            onstack.pop()
            val = None if best is None else (math.inf if best == math.inf else best + 1)
            if val != math.inf or not onstack:
                memo[idx] = val
            return val

        value = rec(x_id, 0)
        chain, cycle = self._witness_chain(x_id, summand_ids, value, max_steps)
        reason = "window exit or step cap" if value is None else None
        return value, chain, cycle, reason

    def _witness_chain(self, x_id, summand_ids, value, max_steps):
        """Reconstruct the multiset chain Omega^0, Omega^1, ... of non-add-M
        summand ids; for an infinite verdict, stop at the first revisited
        state and report it as the cycle certificate."""
        state = (x_id,) if x_id not in summand_ids else ()
        chain = [state]
        seen = {state: 0}
        cycle = None
        steps = 0
        while state and steps < max_steps:
            nxt = []
            ok = True
            for idx in state:
                succ = self.omega_ids(idx, summand_ids)
                if succ is None:
                    ok = False
                    break
                nxt.extend(i for i in succ if i not in summand_ids)
            if not ok:
                break
            state = tuple(sorted(nxt))
            steps += 1
            if state in seen:
                chain.append(state)
                if state:
                    cycle = (seen[state], steps)
                break
            seen[state] = steps
            chain.append(state)
        return chain, cycle


def m_dimension(gencog, x, max_steps=MDIM_MAX_STEPS):
    """M-dimension of a module x: least i with Omega_M^i(x) in add M;
    math.inf with a cycle certificate, or indeterminate on window exit."""
    engine = gencog.engine
    if x.is_zero():
        return MDimResult(0, [()])
    pieces = []
    for piece, mult in rp.decompose_layered(x, engine.seed):
        pid = engine.registry.canon(piece)
        pieces.extend([pid] * mult)
    values = []
    chains = []
    cycle = None
    for pid in sorted(set(pieces)):
        if pid in gencog.summands:
            values.append(0)
            continue
        val, chain, cyc, reason = engine.mdim_id(pid, gencog.summands, max_steps)
        if val is None:
            return MDimResult(None, chain, reason=reason or INDETERMINATE)
        values.append(val)
        chains.append(chain)
        if cyc is not None:
            cycle = (pid, cyc)
    value = max(values) if values else 0
    if math.inf in values:
        value = math.inf
    chain = max(chains, key=len) if chains else [tuple(sorted(pieces))]
    return MDimResult(value, chain, cycle=cycle)


class GldimEndResult:
    """Exact value, or a (lower bound, windowed upper check) pair."""

    def __init__(self, value=None, exact=False, lower=None, window_checked=None,
                 window_size=None, witnesses=None, indeterminates=0):
        self.value = value
        self.exact = exact
        self.lower = lower
        self.window_checked = window_checked
        self.window_size = window_size
        self.witnesses = witnesses or []
        self.indeterminates = indeterminates

    def __repr__(self):
        if self.exact:
            return f"GldimEnd(value={self.value})"
        return (f"GldimEnd(lower={self.lower}, window_checked={self.window_checked}, "
                f"window={self.window_size})")


def gldim_end(gencog, max_steps=MDIM_MAX_STEPS, oracle_cap=400):
    """Exact gl.dim End(M) over a complete catalog: 2 + max M-dim over the
    catalog (values at 2 cross-resolved by the end-algebra oracle)."""
    engine = gencog.engine
    if engine.catalog is None:
        raise ContractError("exact mode requires a complete catalog; use gldim_end_windowed")
    worst = 0
    witnesses = []
    for idx in range(len(engine.catalog)):
        if idx in gencog.summands:
            continue
        val, chain, cyc, reason = engine.mdim_id(idx, gencog.summands, max_steps)
        if val is None:
            raise AnomalyError(f"indeterminate M-dimension in exact mode: {reason}")
        if val == math.inf:
            return GldimEndResult(value=math.inf, exact=True,
                                  witnesses=[(idx, math.inf, chain)])
        if val > worst:
            worst = val
            witnesses = [(idx, val, chain)]
    if worst >= 1:
        return GldimEndResult(value=worst + 2, exact=True, witnesses=witnesses)
    # every M-dimension is 0: gl.dim End <= 2; resolve below 2 by the oracle
    from .endalg import end_algebra_gldim
    try:
        value = end_algebra_gldim(gencog, cap=oracle_cap)
    except Exception:
        value = 2
    return GldimEndResult(value=value, exact=True, witnesses=witnesses)


def gldim_end_windowed(gencog, census_modules, max_steps=MDIM_MAX_STEPS):
    """Windowed mode: exact lower bound from witnesses plus an upper bound
    checked over all supplied census indecomposables."""
    engine = gencog.engine
    worst = 0
    witnesses = []
    indeterminates = 0
    for m in census_modules:
        pid = engine.registry.canon(m)
        if pid in gencog.summands:
            continue
        val, chain, cyc, reason = engine.mdim_id(pid, gencog.summands, max_steps)
        if val is None:
            indeterminates += 1
            continue
        if val == math.inf:
            return GldimEndResult(value=math.inf, exact=True,
                                  witnesses=[(pid, math.inf, chain)])
        if val > worst:
            worst = val
            witnesses = [(pid, val, chain)]
    lower = worst + 2 if worst >= 1 else 2
    return GldimEndResult(lower=lower, window_checked=worst + 2,
                          window_size=len(census_modules),
                          witnesses=witnesses, indeterminates=indeterminates)


# ---------------------------------------------------------------------------
# the four constructions
# ---------------------------------------------------------------------------


def construct_thm32(catalog, d, engine=None):
    """M = catalog minus {tau^i Z: 0 <= i <= d-3} for a non-injective Z
    with tau^(d-2) Z projective, taken from the longest-orbit walk."""
    if d < 2:
        raise InputError(f"d must be >= 2, got {d}")
    engine = engine or MDimEngine.for_catalog(catalog)
    table = ar.tau_orbits(catalog)
    orbit = None
    for o in table.orbits:
        if len(o) >= d:
            orbit = o
            break
    if orbit is None:
        raise WitnessNotFound(
            f"max orbit cardinality {table.max_cardinality()} < d = {d}",
            max_cardinality=table.max_cardinality())
    z = orbit[d - 2]
    excluded = {orbit[j] for j in range(1, d - 1)}
    ids = set(range(len(catalog))) - excluded
    return GenCog(engine, ids), z


def construct_E(algebra, i, engine=None, registry_seed=ef.DEFAULT_SEED):
    """E_i = A + DA_m + P + (U_i + ... + U_{t-1}), t = gl.dim A^(m)."""
    t = rp.global_dimension(algebra)
    if not 1 <= i <= t - 1:
        raise InputError(f"construct_E: i = {i} outside [1, {t - 1}]")
    if engine is None:
        engine = MDimEngine.windowed(algebra, seed=registry_seed)
    ids = engine.required_ids()
    for k in range(i, t):
        for u in rp.u_stratum(algebra, k):
            ids.add(engine.registry.canon(u))
    return GenCog(engine, ids)


def _simple_projective_vertices(quiver):
    return [i for i in range(quiver.n_vertices)
            if not any(quiver.arrow_source[a] == i for a in range(len(quiver.arrows)))]


def preprojective_slices(quiver, p, depth):
    """tau^{-j} walks from the indecomposable projectives of the base
    algebra: slices[j][i] = tau^{-j} P(vertex i) (None once zero)."""
    from . import quiverrep as qr
    slices = [[qr.projective(quiver, p, v) for v in quiver.vertices]]
    for _ in range(depth):
        prev = slices[-1]
        nxt = []
        for m in prev:
            if m is None or m.total_dim == 0:
                nxt.append(None)
                continue
            t = qr.tau_inverse(m)
            nxt.append(t if t.total_dim else None)
        slices.append(nxt)
    return slices


def ar_sequence_middle(quiver, p, z, pool, seed=ef.DEFAULT_SEED):
    """Middle-term summands (with multiplicity) of the almost split
    sequence ending in a non-projective module z, computed as rad/rad^2
    multiplicities over a pool of candidate indecomposables; the pool must
    contain every predecessor slice of z (sound for maps into a
    preprojective module).  The mesh dimension identity is verified and
    failure raises."""
    from . import quiverrep as qr
    tz = qr.tau(z)
    mods = []
    for m in pool:
        if m is None or m.total_dim == 0:
            continue
        if not any(c.dims == m.dims and qr.is_iso(c, m, seed) for c in mods):
            mods.append(m)
    z_idx = next((i for i, m in enumerate(mods)
                  if m.dims == z.dims and qr.is_iso(m, z, seed)), None)
    if z_idx is None:
        mods.append(z)
        z_idx = len(mods) - 1

    def rad_basis(i, j):
        if i != j:
            return qr.hom_basis(mods[i], mods[j])
        a = mods[i]
        out = []
        for f in qr.hom_basis(a, a):
            lam = single_eigenvalue(f.blocks, p, seed)
            if lam is None:
                raise AnomalyError("pool endomorphism not scalar + nilpotent")
            g = qr.RepMorphism(a, a, [np.mod(blk - lam * ef.eye(blk.shape[0]), p)
                                      for blk in f.blocks])
            if not g.is_zero():
                out.append(g)
        if len(out) > 1:
            flats = np.array([g.flatten() for g in out], dtype=np.int64)
            red, pivots = ef.rref(flats, p)
            out = [qr.RepMorphism.from_flat(a, a, red[t]) for t in range(len(pivots))]
        return out

    middle = []
    for y_idx, y in enumerate(mods):
        rad = rad_basis(y_idx, z_idx)
        if not rad:
            continue
        rad2 = []
        for w_idx in range(len(mods)):
            for u in rad_basis(y_idx, w_idx):
                for v in rad_basis(w_idx, z_idx):
                    comp = v.compose(u)
                    if not comp.is_zero():
                        rad2.append(comp.flatten())
        mat = np.array(rad2, dtype=np.int64) if rad2 else None
        dim_rad2 = ef.rank(mat, p) if mat is not None else 0
        mult = len(rad) - dim_rad2
        if mult > 0:
            middle.append((y, mult))
    want = np.array(z.dims) + np.array(tz.dims)
    got = sum(mult * np.array(y.dims) for y, mult in middle) if middle \
        else np.zeros(len(z.dims), dtype=np.int64)
    if not np.array_equal(want, got):
        raise AnomalyError("mesh dimension identity failed for the knitted sequence")
    return tz, middle


def construct_lem47(algebra, d, engine=None, search_depth=8):
    """M = A + DA_m + (tau^i Y_j for 0 <= i <= d-(2m+3)) + P, with the Y_j
    the middle of the almost split sequence ending in Z, where tau^(d-(2m+2)) Z
    is simple projective.  Returns (GenCog, witness N = cosyzygy^{2m} Z, Z)."""
    from . import quiverrep as qr
    m_level = algebra.m
    if d < 2 * m_level + 3:
        raise InputError(f"lem47 needs d >= 2m+3 = {2 * m_level + 3}, got {d}")
    quiver, p = algebra.quiver, algebra.p
    steps = d - (2 * m_level + 2)
    z = None
    for i in _simple_projective_vertices(quiver):
        cand = qr.projective(quiver, p, quiver.vertices[i])
        ok = True
        for _ in range(steps):
            cand = qr.tau_inverse(cand)
            if cand.total_dim == 0:
                ok = False
                break
        if ok and qr.tau_inverse(cand).total_dim:
            z = cand
            break
    if z is None:
        raise ContractError(
            "no preprojective witness Z: base algebra looks representation-finite")
    depth = max(steps + 2, 3)
    slices = preprojective_slices(quiver, p, depth)
    pool = [m for sl in slices for m in sl]
    tz, middle = ar_sequence_middle(quiver, p, z, pool)
    if engine is None:
        engine = MDimEngine.windowed(algebra)
    ids = engine.required_ids()
    for y, _ in middle:
        cur = y
        for i in range(d - (2 * m_level + 3) + 1):
            if cur.total_dim == 0:
                break
            ids.add(engine.registry.canon(rp.rep_at_layer(algebra, cur, 0)))
            cur = qr.tau(cur)
    gencog = GenCog(engine, ids)
    # witness N = Omega^{-2m}(Z) inside A^(m)
    n = rp.rep_at_layer(algebra, z, 0)
    for _ in range(2 * m_level):
        n = rp.cosyzygy(n)
    return gencog, n, z


def construct_lem48(algebra, engine=None, search_bound=3):
    """M = A + DA_m + P + N' for a non-split self-extension N' of a brick N
    with Ext^1(N, N) != 0.  Returns (GenCog, N at layer 0, N')."""
    from . import quiverrep as qr
    quiver, p = algebra.quiver, algebra.p
    n = _find_self_extending_brick(quiver, p, search_bound)
    if n is None:
        raise ContractError(
            "no brick with a self-extension found within the search bound "
            "(base algebra looks representation-finite)")
    e, incl, proj = qr.realize_extension(n, n, 0)
    if qr.sequence_splits(incl):
        raise AnomalyError("realized self-extension split")
    if engine is None:
        engine = MDimEngine.windowed(algebra)
    ids = engine.required_ids()
    ids.add(engine.registry.canon(rp.rep_at_layer(algebra, e, 0)))
    return GenCog(engine, ids), rp.rep_at_layer(algebra, n, 0), e


def _find_self_extending_brick(quiver, p, bound):
    from . import quiverrep as qr
    rng = np.random.default_rng(ef.DEFAULT_SEED)
    for total in range(2, bound * quiver.n_vertices + 1):
        for dims in _dim_vectors(quiver.n_vertices, total, bound):
            candidates = _candidate_maps(quiver, p, dims, rng)
            for maps in candidates:
                try:
                    m = qr.Representation(quiver, p, dims, maps)
                except InputError:
                    continue
                if len(qr.hom_basis(m, m)) == 1 and qr.ext1_dim(m, m) > 0:
                    return m
    return None


def _dim_vectors(n, total, bound):
    if n == 1:
        if total <= bound:
            yield (total,)
        return
    for first in range(min(bound, total) + 1):
        for rest in _dim_vectors(n - 1, total - first, bound):
            yield (first,) + rest


def _candidate_maps(quiver, p, dims, rng):
    """Small deterministic sweep of arrow-map families: zero, truncated
    identity, or a seeded random matrix per arrow."""
    shapes = [(dims[quiver.arrow_target[a]], dims[quiver.arrow_source[a]])
              for a in range(len(quiver.arrows))]
    out = []
    for code in range(3 ** len(shapes)):
        maps = []
        c = code
        for (r, cdim) in shapes:
            kind = c % 3
            c //= 3
            if kind == 2:
                mat = ef.fmat(rng.integers(0, p, size=(r, cdim)), p) if r * cdim \
                    else ef.zeros(r, cdim)
            else:
                mat = ef.zeros(r, cdim)
                if kind == 1:
                    for t in range(min(r, cdim)):
                        mat[t, t] = 1
            maps.append(mat)
        out.append(maps)
    return out

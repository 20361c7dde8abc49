"""Bounded windows of indecomposables for representation-infinite checks.

Full enumeration is impossible over a representation-infinite algebra, so
upper bounds are verified over a window: every indecomposable the closure
below can reach whose per-vertex dimensions stay within a bound.  The
closure is explicitly partial (results quote the window); it combines

  * simples, projectives, injectives of the base algebra,
  * tau^{-1} walks from projectives and tau walks from injectives,
  * middle terms of all extension classes between census members (the
    whole class space when p^e is small, basis classes plus seeded
    combinations otherwise), iterated to a fixpoint,

and then transports the base census into the replicated algebra by
cosyzygy shifts computed in an enlarged window, keeping the shifts that
are supported in layers <= m.
"""

import numpy as np

from . import exactfield as ef
from . import quiverrep as qr
from . import replicated as rp
from .errors import InputError

EXT_ENUM_CAP = 81
CLOSURE_ROUNDS = 4


def base_indecomposables(quiver, p, bound, seed=ef.DEFAULT_SEED,
                         rounds=CLOSURE_ROUNDS, ext_cap=EXT_ENUM_CAP):
    """Window census of indecomposable modules over the base hereditary
    algebra with every vertex dimension <= bound (partial by design)."""
    found = []

    def add(m):
        if m.total_dim == 0 or any(d > bound for d in m.dims):
            return False
        for cand in found:
            if cand.dims == m.dims and qr.is_iso(cand, m, seed):
                return False
        found.append(m)
        return True

    for v in quiver.vertices:
        add(qr.simple(quiver, p, v))
        add(qr.projective(quiver, p, v))
        add(qr.injective(quiver, p, v))
    for v in quiver.vertices:
        cur = qr.projective(quiver, p, v)
        for _ in range(4 * bound):
            cur = qr.tau_inverse(cur)
            if cur.total_dim == 0 or any(d > bound for d in cur.dims):
                break
            add(cur)
        cur = qr.injective(quiver, p, v)
        for _ in range(4 * bound):
            cur = qr.tau(cur)
            if cur.total_dim == 0 or any(d > bound for d in cur.dims):
                break
            add(cur)
    rng = np.random.default_rng(seed)
    for _ in range(rounds):
        grew = False
        snapshot = list(found)
        for m in snapshot:
            for n in snapshot:
                dims = [m.dims[i] + n.dims[i] for i in range(quiver.n_vertices)]
                if any(d > bound for d in dims):
                    continue
                e = qr.ext1_dim(m, n)
                if e == 0:
                    continue
                if p ** e <= ext_cap:
                    coeff_list = [_digits(code, p, e) for code in range(1, p ** e)]
                else:
                    coeff_list = [[1 if t == j else 0 for t in range(e)] for j in range(e)]
                    coeff_list += [list(rng.integers(0, p, size=e)) for _ in range(4)]
                for coeffs in coeff_list:
                    if not any(coeffs):
                        continue
                    middle, _, _ = qr.realize_extension_class(m, n, coeffs)
                    for piece, _ in qr.decompose(middle, seed):
                        if add(piece):
                            grew = True
        if not grew:
            break
    return found


def _digits(code, p, length):
    out = []
    for _ in range(length):
        out.append(code % p)
        code //= p
    return out


def census_modules(algebra, bound, seed=ef.DEFAULT_SEED):
    """Window census over the replicated algebra: the base census at layer
    0 together with its cosyzygy shifts (computed in an enlarged window)
    that restrict to the algebra, plus projectives and injectives; all
    members have every component dimension <= bound."""
    quiver, p, m = algebra.quiver, algebra.p, algebra.m
    base = base_indecomposables(quiver, p, bound, seed)
    walg = rp.build_replicated(quiver, 2 * m + 2, p, check=False)
    out = []

    def add(mod):
        if mod.is_zero() or any(d > bound for d in mod.component_dims()):
            return
        dims = mod.component_dims()
        for cand in out:
            if cand.component_dims() == dims and rp.is_iso_layered(cand, mod, seed):
                return
        out.append(mod)

    for k in range(m + 1):
        for i in range(quiver.n_vertices):
            add(algebra.proj(i, k))
            add(algebra.inj(i, k))
    for x in base:
        add(rp.rep_at_layer(algebra, x, 0))
        shifted = rp.rep_at_layer(walg, x, 0)
        for _ in range(2 * m + 1):
            shifted = rp.cosyzygy(shifted)
            if shifted.is_zero():
                break
            sup = shifted.support_layers()
            if sup and max(sup) <= m:
                try:
                    add(rp.convert_window(shifted, algebra))
                except InputError:
                    pass
    return out

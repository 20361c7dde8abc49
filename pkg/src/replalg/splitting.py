"""Fitting-lemma decomposition, generic over the module protocol.

Works for any module object exposing `p`, `total_dim`, `component_dims()`
and `submodule(bases) -> (sub, incl)`, with morphisms exposing
`blocks_flat()` (square per-component matrices for endomorphisms).

An endomorphism whose characteristic polynomial has at least two distinct
irreducible factors splits the module into the corresponding primary
components.  A module is declared indecomposable when

  * its endomorphism space is one-dimensional, or
  * every basis endomorphism is scalar + nilpotent (then End is local:
    a spanning set of scalar-plus-nilpotent elements cannot exist in a
    non-local finite-dimensional algebra), or
  * an exhaustive sweep over a small endomorphism space finds no split, or
  * basis elements plus seeded random combinations all fail (bounded
    determinism; the fallbacks above cover every small-field case).
"""

import numpy as np

from . import exactfield as ef
from .errors import BudgetExceeded

RANDOM_TRIES = 20
EXHAUSTIVE_CAP = 4096
DIM_CAP = 2000
ISO_EXHAUSTIVE_DIM = 4
ISO_EXHAUSTIVE_PRIME = 5


def find_invertible_combo(bases, p, seed=ef.DEFAULT_SEED):
    """An invertible combination of a basis of Hom(M, N) (as block lists),
    or None: basis elements first, then seeded random combinations, then
    exhaustive enumeration when the space is tiny."""
    def invertible(blocks):
        return all(b.shape[0] == b.shape[1] and ef.rank(b, p) == b.shape[0]
                   for b in blocks)

    for blocks in bases:
        if invertible(blocks):
            return blocks
    rng = np.random.default_rng(seed)
    r = len(bases)
    nblocks = len(bases[0])
    for _ in range(RANDOM_TRIES):
        coeffs = rng.integers(0, p, size=r)
        blocks = [np.mod(sum(int(c) * h[i] for c, h in zip(coeffs, bases)), p)
                  for i in range(nblocks)]
        if invertible(blocks):
            return blocks
    if r <= ISO_EXHAUSTIVE_DIM and p <= ISO_EXHAUSTIVE_PRIME:
        for code in range(1, p ** r):
            coeffs = [(code // p ** k) % p for k in range(r)]
            blocks = [np.mod(sum(c * h[i] for c, h in zip(coeffs, bases)), p)
                      for i in range(nblocks)]
            if invertible(blocks):
                return blocks
    return None


def endo_char_poly(blocks, p):
    """char poly of a block-diagonal endomorphism (product over components)."""
    cp = [1]
    for b in blocks:
        if b.shape[0]:
            cp = ef.poly_mul(cp, ef.char_poly(b, p), p)
    return cp


def single_eigenvalue(blocks, p, seed=ef.DEFAULT_SEED):
    """lam if the endomorphism is lam*id + nilpotent, else None."""
    facs = ef.factor_poly(endo_char_poly(blocks, p), p, seed)
    if len(facs) == 1 and ef.poly_deg(facs[0][0]) == 1:
        return (-facs[0][0][0]) % p
    if not facs:  # zero-dimensional module
        return 0
    return None


def _primary_split(m, blocks, p, seed):
    """Split m along the primary components of an endomorphism, or None."""
    facs = ef.factor_poly(endo_char_poly(blocks, p), p, seed)
    if len(facs) < 2:
        return None
    pieces = []
    for g, e in facs:
        gpow = [1]
        for _ in range(e):
            gpow = ef.poly_mul(gpow, g, p)
        bases = [ef.kernel_basis(ef.poly_eval_matrix(gpow, b, p), p) for b in blocks]
        sub, _ = m.submodule(bases)
        pieces.append(sub)
    assert sum(piece.total_dim for piece in pieces) == m.total_dim
    return pieces


def _split_once(m, hom_fn, seed):
    """One nontrivial split of m, or None if m is indecomposable (or
    declared so under the bounded search).

    A nilpotency test on basis elements alone cannot certify that End is
    local (a span of nilpotents need not consist of nilpotents), so the
    only early certificates are dim End = 1 and the exhaustive sweep; the
    sweep is projectivized (first nonzero coefficient = 1), which loses no
    splits since primary components are scale-invariant.
    """
    ends = hom_fn(m, m)
    r = len(ends)
    if r <= 1:
        return None
    p = m.p
    for f in ends:
        pieces = _primary_split(m, f.blocks_flat(), p, seed)
        if pieces:
            return pieces
    rng = np.random.default_rng(seed)
    nblocks = len(ends[0].blocks_flat())
    for _ in range(RANDOM_TRIES):
        coeffs = rng.integers(0, p, size=r)
        blocks = [np.mod(sum(int(c) * f.blocks_flat()[i] for c, f in zip(coeffs, ends)), p)
                  for i in range(nblocks)]
        pieces = _primary_split(m, blocks, p, seed)
        if pieces:
            return pieces
    if p ** r <= EXHAUSTIVE_CAP * (p - 1):
        for code in range(1, p ** r):
            coeffs = [(code // p ** k) % p for k in range(r)]
            lead = next((c for c in coeffs if c), 0)
            if lead != 1:
                continue
            blocks = [np.mod(sum(c * f.blocks_flat()[i] for c, f in zip(coeffs, ends)), p)
                      for i in range(nblocks)]
            pieces = _primary_split(m, blocks, p, seed)
            if pieces:
                return pieces
        return None  # exhaustive: certified indecomposable
    return None


def fitting_split(m, hom_fn, seed=ef.DEFAULT_SEED):
    """All indecomposable pieces of m, with repetition, in a deterministic
    order.  hom_fn(M, N) must return a basis of Hom(M, N)."""
    if m.total_dim > DIM_CAP:
        raise BudgetExceeded(f"decomposition of a module of total dimension {m.total_dim}")
    out = []
    stack = [m]
    while stack:
        cur = stack.pop(0)
        if cur.total_dim == 0:
            continue
        pieces = _split_once(cur, hom_fn, seed)
        if pieces is None:
            out.append(cur)
        else:
            stack.extend(pieces)
    return out

import numpy as np
import pytest

from replalg import exactfield as ef


def cofactor_char_poly(a, p):
    """Independent oracle: det(xI - a) by cofactor expansion on polynomial
    entries, for matrices up to 6x6."""
    n = a.shape[0]
    assert n <= 6
    # polynomial entries, lowest degree first
    m = [[[(-int(a[i, j])) % p] if i != j else [(-int(a[i, j])) % p, 1]
          for j in range(n)] for i in range(n)]

    def det(rows, cols):
        if len(cols) == 1:
            return m[rows[0]][cols[0]]
        i = rows[0]
        total = []
        for k, j in enumerate(cols):
            sub = det(rows[1:], cols[:k] + cols[k + 1:])
            term = ef.poly_mul(m[i][j], sub, p)
            if k % 2 == 1:
                term = [(-c) % p for c in term]
            size = max(len(total), len(term))
            total = [( (total[t] if t < len(total) else 0)
                       + (term[t] if t < len(term) else 0)) % p
                     for t in range(size)]
        return ef.poly_trim(total, p)

    return det(list(range(n)), list(range(n)))


def test_fieldspec_rejects_composite():
    with pytest.raises(ef.InputError):
        ef.FieldSpec(6)
    assert ef.FieldSpec(2).p == 2
    assert ef.FieldSpec(32003).p == 32003


def test_rank_identity_and_zero():
    assert ef.rank(ef.eye(3), 32003) == 3
    assert ef.rank(ef.zeros(2, 5), 32003) == 0
    assert ef.rank(ef.fmat([[1, 1], [1, 1]], 2), 2) == 1


def test_rank_equals_rank_of_transpose():
    rng = np.random.default_rng(0)
    for p in (2, 3, 32003):
        for _ in range(20):
            a = ef.fmat(rng.integers(0, p, size=(4, 6)), p)
            assert ef.rank(a, p) == ef.rank(a.T, p)


def test_rank_nullity():
    rng = np.random.default_rng(1)
    for p in (2, 5, 32003):
        for _ in range(20):
            a = ef.fmat(rng.integers(0, p, size=(5, 7)), p)
            k = ef.kernel_basis(a, p)
            assert ef.rank(a, p) + k.shape[1] == a.shape[1]
            if k.shape[1]:
                assert not np.any(ef.mul(a, k, p))


def test_solve_identity_and_zero():
    b = ef.fmat([[3], [5], [7]], 32003)
    x = ef.solve(ef.eye(3), b, 32003)
    assert np.array_equal(x, b)
    k = ef.kernel_basis(ef.zeros(2, 2), 32003)
    assert k.shape[1] == 2


def test_solve_random_remultiplication():
    p = 32003
    rng = np.random.default_rng(2)
    for _ in range(10):
        a = ef.fmat(rng.integers(0, p, size=(6, 6)), p)
        b = ef.fmat(rng.integers(0, p, size=(6, 1)), p)
        x = ef.solve(a, b, p)
        if x is not None:
            assert np.array_equal(ef.mul(a, x, p), b)


def test_solve_dimension_mismatch():
    with pytest.raises(ef.InputError):
        ef.solve(ef.eye(3), ef.zeros(2, 1), 5)


def test_inverse_roundtrip():
    p = 101
    rng = np.random.default_rng(3)
    found = 0
    for _ in range(10):
        a = ef.fmat(rng.integers(0, p, size=(4, 4)), p)
        inv = ef.inverse(a, p)
        if inv is not None:
            found += 1
            assert np.array_equal(ef.mul(a, inv, p), ef.eye(4))
    assert found > 0


def test_quotient_projection():
    p = 7
    span = ef.fmat([[1, 0], [2, 0], [0, 1], [0, 0]], p)
    proj, section = ef.quotient_projection(span, 4, p)
    assert proj.shape == (2, 4)
    assert not np.any(ef.mul(proj, span, p))
    assert np.array_equal(ef.mul(proj, section, p), ef.eye(2))


def test_char_poly_identity():
    # det(xI - I) = (x-1)^3 = x^3 - 3x^2 + 3x - 1
    p = 32003
    cp = ef.char_poly(ef.eye(3), p)
    assert cp == [(-1) % p, 3 % p, (-3) % p, 1]


def test_char_poly_matches_cofactor_oracle():
    rng = np.random.default_rng(4)
    for p in (2, 3, 32003):
        for n in (1, 2, 3, 4, 5, 6):
            a = ef.fmat(rng.integers(0, p, size=(n, n)), p)
            assert ef.char_poly(a, p) == cofactor_char_poly(a, p)


def test_factor_companion_x2_plus_1_char2():
    # x^2 + 1 = (x+1)^2 over F_2
    a = ef.fmat([[0, 1], [1, 0]], 2)  # companion matrix of x^2 + 1
    facs = ef.factor_char_poly(a, 2)
    assert facs == [([1, 1], 2)]


def test_factor_diagonal_char3():
    # diag(1, -1) over F_3: (x-1)(x+1)
    a = ef.fmat([[1, 0], [0, -1]], 3)
    facs = ef.factor_char_poly(a, 3)
    assert facs == [([1, 1], 1), ([2, 1], 1)]


def test_factor_reexpands_to_char_poly():
    rng = np.random.default_rng(5)
    for p in (2, 3, 32003):
        for _ in range(8):
            a = ef.fmat(rng.integers(0, p, size=(5, 5)), p)
            cp = ef.char_poly(a, p)
            prod = [1]
            for fac, mult in ef.factor_char_poly(a, p):
                for _ in range(mult):
                    prod = ef.poly_mul(prod, fac, p)
            assert prod == cp


def test_factor_poly_handles_pth_powers():
    # (x^2 + 1)^2 = x^4 + 2x^2 + 1 over F_2 has zero derivative
    f = ef.poly_mul([1, 0, 1], [1, 0, 1], 2)
    facs = ef.factor_poly(f, 2)
    assert facs == [([1, 1], 4)]


def test_poly_eval_matrix_cayley_hamilton():
    rng = np.random.default_rng(6)
    for p in (3, 32003):
        a = ef.fmat(rng.integers(0, p, size=(4, 4)), p)
        cp = ef.char_poly(a, p)
        assert not np.any(ef.poly_eval_matrix(cp, a, p))

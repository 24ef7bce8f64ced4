import numpy as np
import pytest

from mckaygraphs.groups import Dihedral, build_group, conjugacy
from mckaygraphs.modp import (
    FpElem,
    FpMatrix,
    SplitIncomplete,
    _charpoly,
    _right_kernel,
    _rref,
    simultaneous_split,
)


def test_fp_elem_field_axioms():
    p = 11
    for a in range(p):
        for b in range(p):
            x, y = FpElem(p, a), FpElem(p, b)
            assert (x + y).value == (a + b) % p
            assert (x * y).value == a * b % p
            assert (x - y).value == (a - b) % p
    for a in range(1, p):
        x = FpElem(p, a)
        assert (x * x.inverse()).value == 1


def det_mod(a, p):
    a = a.copy() % p
    n = a.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            det = -det % p
        det = det * int(a[c, c]) % p
        inv = pow(int(a[c, c]), p - 2, p)
        for i in range(c + 1, n):
            if a[i, c]:
                a[i] = (a[i] - a[i, c] * inv % p * a[c]) % p
    return det % p


def test_charpoly_against_determinants():
    p = 101
    rng = np.random.default_rng(5)
    for _ in range(25):
        n = int(rng.integers(1, 8))
        a = rng.integers(0, p, (n, n)).astype(np.int64)
        cp = _charpoly(a, p)
        assert len(cp) == n + 1 and cp[-1] == 1
        for lam in rng.integers(0, p, 5):
            val = sum(int(cp[i]) * pow(int(lam), i, p) for i in range(n + 1)) % p
            ref = det_mod(int(lam) * np.eye(n, dtype=np.int64) - a, p)
            assert val == ref


def test_rref_and_kernel():
    p = 7
    a = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 5]], dtype=np.int64)
    red, pivots = _rref(a, p)
    assert pivots == [0, 1]
    ker = _right_kernel(a, p)
    assert ker.shape[0] == 1
    assert np.all((a @ ker[0]) % p == 0)
    m = FpMatrix(p, a)
    km = m.right_kernel()
    assert np.all(m.apply(km.a[0]) == 0)


def test_split_identity_matrices_incomplete():
    with pytest.raises(SplitIncomplete):
        simultaneous_split([FpMatrix.identity(7, 3)])


def test_split_single_diagonal():
    vs = simultaneous_split([FpMatrix(7, np.diag([1, 2, 3]))])
    assert sorted(tuple(v) for v in vs) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def s3_class_matrices_bruteforce(p):
    """Class-sum matrices of S_3 mod p by direct convolution over elements."""
    g = build_group(Dihedral(3))
    cd = conjugacy(g)
    r = cd.r
    mats = []
    for i in range(r):
        mat = np.zeros((r, r), dtype=np.int64)
        for j in range(r):
            # multiply class sums c_i * c_j and read off class coefficients
            counts = np.zeros(g.order, dtype=np.int64)
            for x in cd.classes[i]:
                for y in cd.classes[j]:
                    counts[g.mul[x, y]] += 1
            for k in range(r):
                rep = cd.reps[k]
                mat[k, j] = counts[rep]
        mats.append(mat % p)
    return mats, cd


def test_split_s3_class_matrices_mod_7():
    mats, cd = s3_class_matrices_bruteforce(7)
    fpmats = [FpMatrix(7, m.T) for m in mats]  # columns carry central characters
    vs = simultaneous_split(fpmats[1:], p=7, dim=3)
    assert len(vs) == 3
    for v in vs:
        for m in fpmats:
            w = (m.a @ v) % 7
            nz = int(np.nonzero(v)[0][0])
            lam = int(w[nz]) * pow(int(v[nz]), 5, 7) % 7
            assert np.all(w == (lam * v) % 7)


def test_split_random_commuting_families():
    p = 101
    rng = np.random.default_rng(17)
    for _ in range(8):
        n = int(rng.integers(2, 10))
        while True:
            s = rng.integers(0, p, (n, n)).astype(np.int64)
            if det_mod(s, p) != 0:
                break
        aug = np.concatenate([s, np.eye(n, dtype=np.int64)], axis=1) % p
        red, _ = _rref(aug, p)
        sinv = red[:, n:]
        mats = [
            FpMatrix(p, (s @ np.diag(rng.integers(0, p, n)) @ sinv) % p)
            for _ in range(3)
        ]
        mats.append(FpMatrix(p, (s @ np.diag(np.arange(1, n + 1)) @ sinv) % p))
        vs = simultaneous_split(mats)
        assert len(vs) == n
        for v in vs:
            for m in mats:
                w = (m.a @ v) % p
                nz = int(np.nonzero(v)[0][0])
                lam = int(w[nz]) * pow(int(v[nz]), p - 2, p) % p
                assert np.all(w == (lam * v) % p)

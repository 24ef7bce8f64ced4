"""Dense linear algebra over a prime field F_p.

Includes the simultaneous eigenspace splitting used by the modular
character-table computation: a commuting family of matrices that is
diagonalizable over F_p is split into r one-dimensional common eigenspaces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class SplitIncomplete(Exception):
    """Some joint subspace of dimension > 1 resisted every available matrix."""


@dataclass(frozen=True)
class FpElem:
    p: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other: "FpElem"):
        assert self.p == other.p, "mixed moduli"

    def __add__(self, other: "FpElem") -> "FpElem":
        self._check(other)
        return FpElem(self.p, self.value + other.value)

    def __sub__(self, other: "FpElem") -> "FpElem":
        self._check(other)
        return FpElem(self.p, self.value - other.value)

    def __mul__(self, other: "FpElem") -> "FpElem":
        self._check(other)
        return FpElem(self.p, self.value * other.value)

    def __neg__(self) -> "FpElem":
        return FpElem(self.p, -self.value)

    def inverse(self) -> "FpElem":
        assert self.value != 0, "zero has no inverse"
        return FpElem(self.p, pow(self.value, self.p - 2, self.p))

    def __truediv__(self, other: "FpElem") -> "FpElem":
        return self * other.inverse()


def _inv_mod(v: int, p: int) -> int:
    return pow(int(v) % p, p - 2, p)


def _rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (matrix, pivot column list)."""
    m = a.copy() % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * _inv_mod(m[r, c], p)) % p
        other = np.nonzero(m[:, c])[0]
        for i in other:
            if i != r:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _right_kernel(a: np.ndarray, p: int) -> np.ndarray:
    """Rows form a basis of {v : a @ v == 0 mod p}."""
    rows, cols = a.shape
    red, pivots = _rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-red[r, fc]) % p
    return basis


def _hessenberg(a: np.ndarray, p: int) -> np.ndarray:
    h = a.copy() % p
    n = h.shape[0]
    for j in range(n - 2):
        col = h[j + 1 :, j]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = j + 1 + int(nz[0])
        if piv != j + 1:
            h[[j + 1, piv]] = h[[piv, j + 1]]
            h[:, [j + 1, piv]] = h[:, [piv, j + 1]]
        inv = _inv_mod(h[j + 1, j], p)
        f = (h[j + 2 :, j] * inv) % p
        if np.any(f):
            h[j + 2 :, :] = (h[j + 2 :, :] - np.outer(f, h[j + 1, :])) % p
            h[:, j + 1] = (h[:, j + 1] + h[:, j + 2 :] @ f) % p
    return h


def _charpoly(a: np.ndarray, p: int) -> np.ndarray:
    """Monic characteristic polynomial mod p, coefficients lowest degree first."""
    n = a.shape[0]
    if n == 0:
        return np.array([1], dtype=np.int64)
    h = _hessenberg(a, p)
    # polys[k] = charpoly of the leading k x k block, length k + 1
    polys = [np.array([1], dtype=np.int64)]
    # subdiag products beta[i] = prod_{j=i..k-2} h[j+1, j], built per step
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = np.zeros(k + 1, dtype=np.int64)
        cur[1:] = prev
        cur[:-1] = (cur[:-1] - h[k - 1, k - 1] * prev) % p
        beta = 1
        for i in range(k - 1, 0, -1):
            beta = (beta * h[i, i - 1]) % p
            coef = (h[i - 1, k - 1] * beta) % p
            if coef:
                cur[: i] = (cur[: i] - coef * polys[i - 1]) % p
        polys.append(cur % p)
    return polys[n]


def _poly_roots(poly: np.ndarray, p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.full(p, int(poly[-1]) % p, dtype=np.int64)
    for c in poly[-2::-1]:
        acc = (acc * xs + int(c)) % p
    return [int(x) for x in xs[acc == 0]]


class FpMatrix:
    """Matrix over F_p backed by a numpy int64 array."""

    def __init__(self, p: int, rows):
        self.p = p
        self.a = np.array(rows, dtype=np.int64) % p
        assert self.a.ndim == 2

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def entry(self, i: int, j: int) -> FpElem:
        return FpElem(self.p, int(self.a[i, j]))

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        assert self.p == other.p
        return FpMatrix(self.p, (self.a @ other.a) % self.p)

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.p, self.a.T)

    def rref(self) -> tuple["FpMatrix", list[int]]:
        red, pivots = _rref(self.a, self.p)
        return FpMatrix(self.p, red), pivots

    def right_kernel(self) -> "FpMatrix":
        return FpMatrix(self.p, _right_kernel(self.a, self.p))

    def apply(self, v: np.ndarray) -> np.ndarray:
        return (self.a @ (np.asarray(v, dtype=np.int64) % self.p)) % self.p

    def charpoly(self) -> np.ndarray:
        return _charpoly(self.a, self.p)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self.a.shape == other.a.shape
            and bool(np.all(self.a == other.a))
        )

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p},\n{self.a})"


def _split_subspace(basis: np.ndarray, pivots: list[int], mat: np.ndarray, p: int):
    """Split an invariant row-space by the eigenvalues of mat; None if no split."""
    m = basis.shape[0]
    r = (basis @ mat.T % p)[:, pivots] % p
    # scalar action cannot split
    lam = int(r[0, 0])
    if np.array_equal(r, (lam * np.eye(m, dtype=np.int64)) % p):
        return None
    pieces = []
    total = 0
    for lam in _poly_roots(_charpoly(r, p), p):
        ker = _right_kernel((r.T - lam * np.eye(m, dtype=np.int64)) % p, p)
        if ker.shape[0] == 0:
            continue
        sub = (ker @ basis) % p
        red, piv = _rref(sub, p)
        pieces.append((red, piv))
        total += red.shape[0]
    if total != m:
        # restriction not diagonalizable: the prime was unsuitable
        raise SplitIncomplete(f"subspace of dimension {m} split into only {total}")
    return pieces


def simultaneous_split(mats, p: int | None = None, dim: int | None = None) -> list[np.ndarray]:
    """Common 1-dimensional eigenvectors of a commuting diagonalizable family.

    `mats` may be any iterable of FpMatrix (consumed lazily, so callers can
    stream matrices that are expensive to build).  Returns `dim` vectors
    spanning F_p^dim, each normalized with leading coefficient 1.  Raises
    SplitIncomplete when some joint subspace of dimension > 1 is not split by
    any input matrix.
    """
    iterator = iter(mats)
    first = next(iterator, None)
    if first is None:
        if dim == 1 and p is not None:
            return [np.array([1], dtype=np.int64)]
        raise SplitIncomplete("no matrices to split with")
    p = first.p
    r = first.shape[0]
    assert dim is None or dim == r
    subspaces: list[tuple[np.ndarray, list[int]]] = [
        (np.eye(r, dtype=np.int64), list(range(r)))
    ]
    mat: FpMatrix | None = first
    while mat is not None:
        assert mat.p == p and mat.shape == (r, r)
        if all(b.shape[0] == 1 for b, _ in subspaces):
            break
        nxt: list[tuple[np.ndarray, list[int]]] = []
        for basis, pivots in subspaces:
            if basis.shape[0] == 1:
                nxt.append((basis, pivots))
                continue
            pieces = _split_subspace(basis, pivots, mat.a, p)
            if pieces is None:
                nxt.append((basis, pivots))
            else:
                nxt.extend(pieces)
        subspaces = nxt
        mat = next(iterator, None)
    if any(b.shape[0] > 1 for b, _ in subspaces):
        raise SplitIncomplete(
            "a joint subspace of dimension > 1 remains; choose another prime"
        )
    vectors = sorted([b[0] % p for b, _ in subspaces], key=lambda v: tuple(v))
    return vectors

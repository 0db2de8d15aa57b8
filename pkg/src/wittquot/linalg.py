"""Exact dense linear algebra over a :class:`~wittquot.ffield.GF` and over its dual numbers.

Matrices are plain ``int64`` numpy arrays of field encodings; the field is
passed alongside.  Dual-number matrices are :class:`DualMatrix` pairs.
Characteristic polynomials are returned low degree first:
``c[k]`` is the coefficient of ``t**k`` and ``c[-1] == 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ffield import GF


@dataclass(frozen=True)
class DualMatrix:
    """``real + ε·eps`` with ε² = 0.

    ``eps`` may carry leading batch axes: shape ``(..., d, d)``.  All batch
    members share the real part, which is how directional derivatives along
    many directions are evaluated in one pass.
    """

    real: np.ndarray
    eps: np.ndarray

    @property
    def shape(self):
        return self.real.shape


def _square(M) -> int:
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"square matrix required, got shape {M.shape}")
    return M.shape[0]


def rref(F: GF, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; the pivot in each column is the first nonzero row."""
    R = F.asarray(M).copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = F.mul(R[r], F.inv(R[r, c]))
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            R[nzr] = F.sub(R[nzr], F.mul(col[nzr, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: GF, M: np.ndarray) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def rank_kernel(F: GF, M) -> tuple[int, np.ndarray]:
    """Rank and a basis of the right kernel (rows of the returned array).

    The kernel basis is the standard one read off the RREF: one vector per
    free column, with a 1 in that column.
    """
    if isinstance(M, DualMatrix):
        raise TypeError("rank_kernel needs field coefficients; dual numbers do not form a field")
    M = np.asarray(M)
    cols = M.shape[1]
    R, pivots = rref(F, M)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = F.zeros((len(free), cols))
    for t, c in enumerate(free):
        K[t, c] = 1
        for i, pc in enumerate(pivots):
            K[t, pc] = F.neg(R[i, c])
    return len(pivots), K


def row_space_basis(F: GF, vectors: np.ndarray) -> np.ndarray:
    """RREF rows spanning the same space as ``vectors``."""
    vectors = np.asarray(vectors)
    if vectors.shape[0] == 0:
        return vectors
    R, piv = rref(F, vectors)
    return R[: len(piv)]


def independent_subset(F: GF, vectors: np.ndarray) -> list[int]:
    """Indices of the greedy (in order) maximal independent subset of the rows."""
    vectors = np.asarray(vectors)
    if vectors.shape[0] == 0:
        return []
    return rref(F, vectors.T)[1]


def solve_in_span(F: GF, basis: np.ndarray, v: np.ndarray):
    """Coefficients ``c`` with ``c @ basis == v``, or ``None`` if ``v`` is not in the span."""
    basis = np.asarray(basis)
    aug = np.concatenate([basis.T, np.asarray(v)[:, None]], axis=1)
    R, piv = rref(F, aug)
    k = basis.shape[0]
    if k in piv:
        return None
    c = F.zeros(k)
    for i, pc in enumerate(piv):
        c[pc] = R[i, k]
    return c


def mat_power(F: GF, M: np.ndarray, e: int) -> np.ndarray:
    d = _square(M)
    if e < 0:
        raise ValueError("negative exponent")
    out = F.eye(d)
    base = F.asarray(M)
    while e:
        if e & 1:
            out = F.dot(out, base)
        e >>= 1
        if e:
            base = F.dot(base, base)
    return out


def poly_eval_matrix(F: GF, coeffs, M: np.ndarray) -> np.ndarray:
    """Horner evaluation of ``sum(coeffs[k] * M**k)``."""
    d = _square(M)
    out = F.zeros((d, d))
    I = F.eye(d)
    for c in reversed(list(coeffs)):
        out = F.add(F.dot(out, M), F.mul(c, I))
    return out


def _conv_trunc(F: GF, a: np.ndarray, b: np.ndarray, length: int) -> np.ndarray:
    """First ``length`` coefficients of the product of two coefficient vectors.

    ``a`` and ``b`` may carry matching leading batch axes; the last axis is the
    coefficient axis.
    """
    la, lb = a.shape[-1], b.shape[-1]
    batch = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    out = F.zeros(batch + (length,))
    for i in range(min(la, length)):
        j = min(lb, length - i)
        out[..., i : i + j] = F.add(out[..., i : i + j], F.mul(a[..., i : i + 1], b[..., :j]))
    return out


def charpoly_hessenberg(F: GF, M: np.ndarray) -> np.ndarray:
    """Characteristic polynomial by similarity reduction to upper Hessenberg form.

    Divides only by nonzero field elements; O(d^3).
    """
    d = _square(M)
    H = F.asarray(M).copy()
    for j in range(d - 2):
        nz = np.flatnonzero(H[j + 1 :, j])
        if nz.size == 0:
            continue
        i = j + 1 + nz[0]
        if i != j + 1:
            H[[i, j + 1]] = H[[j + 1, i]]
            H[:, [i, j + 1]] = H[:, [j + 1, i]]
        u = F.div(H[j + 2 :, j], H[j + 1, j])
        if not u.any():
            continue
        H[j + 2 :] = F.sub(H[j + 2 :], F.mul(u[:, None], H[j + 1][None, :]))
        H[:, j + 1] = F.add(H[:, j + 1], F.dot(H[:, j + 2 :], u))
    # polys[k] = charpoly of the leading k x k block, stored high degree last
    polys = F.zeros((d + 1, d + 1))
    polys[0, 0] = 1
    for k in range(1, d + 1):
        a = k - 1
        shifted = np.roll(polys[k - 1], 1)
        cur = F.sub(shifted, F.mul(H[a, a], polys[k - 1]))
        if k > 1:
            # sub-diagonal products h[i+1,i] ... h[a,a-1] for i = a-1 down to 0
            sub = H[np.arange(1, k), np.arange(0, k - 1)]
            prods = F.zeros(k - 1)
            acc = 1
            for i in range(k - 2, -1, -1):
                acc = int(F.mul(acc, sub[i]))
                prods[i] = acc
            w = F.mul(H[:a, a], prods)  # coefficient for polys[i] with i < a
            cur = F.sub(cur, F.dot(w, polys[:a]))
        polys[k] = cur
    return polys[d]


def _berkowitz_real(F: GF, A: np.ndarray) -> np.ndarray:
    d = A.shape[0]
    c = np.array([1], dtype=np.int64)  # high degree first
    for k in range(d):
        t = F.zeros(k + 2)
        t[0] = 1
        t[1] = F.neg(A[k, k])
        R, C, Ak = A[k, :k], A[:k, k], A[:k, :k]
        v = C
        for j in range(k):
            t[j + 2] = F.neg(F.sum(F.mul(R, v)))
            v = F.dot(Ak, v)
        c = _conv_trunc(F, t, c, k + 2)
    return c[::-1].copy()


def _berkowitz_dual(F: GF, A: np.ndarray, B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Division-free characteristic polynomial of ``A + εB``; ``B`` may be batched."""
    d = A.shape[0]
    batch = B.shape[:-2]
    c = np.array([1], dtype=np.int64)
    ce = F.zeros(batch + (1,))
    for k in range(d):
        t = F.zeros(k + 2)
        te = F.zeros(batch + (k + 2,))
        t[0] = 1
        t[1] = F.neg(A[k, k])
        te[..., 1] = F.neg(B[..., k, k])
        R, C, Ak = A[k, :k], A[:k, k], A[:k, :k]
        Re, Ce, Bk = B[..., k, :k], B[..., :k, k], B[..., :k, :k]
        v, ve = C, Ce
        for j in range(k):
            t[j + 2] = F.neg(F.sum(F.mul(R, v)))
            te[..., j + 2] = F.neg(F.add(F.sum(F.mul(Re, v), axis=-1), F.sum(F.mul(R, ve), axis=-1)))
            ve = F.add(F.dot(ve, Ak.T), F.dot(Bk, v[..., None])[..., 0])
            v = F.dot(Ak, v)
        c_new = _conv_trunc(F, t, c, k + 2)
        ce = F.add(_conv_trunc(F, te, c, k + 2), _conv_trunc(F, t, ce, k + 2))
        c = c_new
    return c[::-1].copy(), ce[..., ::-1].copy()


def charpoly_berkowitz(F: GF, M: np.ndarray) -> np.ndarray:
    """Division-free characteristic polynomial (Berkowitz); O(d^4) field operations."""
    _square(M)
    return _berkowitz_real(F, F.asarray(M))


def charpoly(F: GF, M):
    """Monic characteristic polynomial, low degree first.

    Over the field this uses Hessenberg reduction.  For a :class:`DualMatrix`
    it uses the division-free algorithm and returns ``(real, eps)``
    coefficient arrays; ``eps`` inherits the batch axes of ``M.eps``.
    """
    if isinstance(M, DualMatrix):
        _square(M.real)
        if M.eps.shape[-2:] != M.real.shape:
            raise ValueError("eps part must match the real part's shape")
        return _berkowitz_dual(F, F.asarray(M.real), F.asarray(M.eps))
    M = np.asarray(M)
    _square(M)
    return charpoly_hessenberg(F, M)

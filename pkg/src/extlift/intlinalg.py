"""Exact integer linear algebra.

Two Smith normal form engines live here:

* :func:`snf` works over Z with Python integers (no overflow, ever) and
  returns the full ``U A V = S`` factorisation with the divisibility chain.
* :func:`snf_mod` works over Z/e with int64 numpy arrays.  Entries never
  exceed ``e``, so it is the workhorse for cochain complexes of finite
  modules, where every quantity is killed by the module exponent anyway.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .exceptions import DimensionMismatch, NotSurjective


def xgcd(a, b):
    """Return ``(x, y, g)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, nx, y, ny = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
    if a < 0:
        a, x, y = -a, -x, -y
    return x, y, a


def _as_int_rows(A):
    A = np.asarray(A, dtype=object)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    return [[int(v) for v in row] for row in A], A.shape


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def as_object_matrix(rows, shape=None):
    M = np.empty(shape if shape is not None else (len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            M[i, j] = v
    return M


@dataclass(frozen=True)
class SNFResult:
    U: np.ndarray
    S: np.ndarray
    V: np.ndarray

    @property
    def diagonal(self):
        k = min(self.S.shape)
        return [int(self.S[i, i]) for i in range(k)]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)


def snf(A):
    """Smith normal form over Z: ``U @ A @ V == S``.

    ``U`` and ``V`` are unimodular, ``S`` is diagonal with non-negative
    entries ``s1 | s2 | ...``.  Pivots are chosen of minimal absolute value.
    All matrices are numpy object arrays of Python ints.
    """
    M, (m, n) = _as_int_rows(A)
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in M:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = M[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = M[t][t]
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
            rest = [(abs(M[i][t]), i, None) for i in range(t + 1, m) if M[i][t]]
            rest += [(abs(M[t][j]), None, j) for j in range(t + 1, n) if M[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda r: r[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-v for v in M[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return SNFResult(as_object_matrix(U, (m, m)), as_object_matrix(M, (m, n)),
                     as_object_matrix(V, (n, n)))


def invariant_factors(A):
    """Non-unit invariant factors and free rank of ``Z^rows / A Z^cols``."""
    A = np.asarray(A, dtype=object)
    rows = A.shape[0]
    if A.size == 0:
        return [], rows
    diag = snf(A).diagonal
    torsion = [d for d in diag if d > 1]
    return torsion, rows - sum(1 for d in diag if d)


def hnf(B):
    """Canonical column Hermite form of the lattice spanned by B's columns.

    Returns a matrix whose non-zero columns form a lower echelon basis with
    positive pivots and entries left of each pivot reduced into
    ``[0, pivot)``.  Two matrices span the same lattice iff their HNFs
    agree.
    """
    M, (m, n) = _as_int_rows(B)
    cols = [[M[i][j] for i in range(m)] for j in range(n)]
    basis = []
    c = 0
    for i in range(m):
        live = [v for v in cols[c:] if v[i]]
        zeros = [v for v in cols[c:] if not v[i] and any(v)]
        while len(live) > 1:
            live.sort(key=lambda v: abs(v[i]))
            piv = live[0]
            nxt = [piv]
            for v in live[1:]:
                q = v[i] // piv[i]
                w = [a - q * b for a, b in zip(v, piv)]
                if w[i]:
                    nxt.append(w)
                elif any(w):
                    zeros.append(w)
            live = nxt
        if live:
            piv = live[0]
            if piv[i] < 0:
                piv = [-a for a in piv]
            for k, prev in enumerate(basis):
                q = prev[i] // piv[i]
                basis[k] = [a - q * b for a, b in zip(prev, piv)]
            basis.append(piv)
            cols = cols[:c] + [piv] + zeros
            c += 1
        else:
            cols = cols[:c] + zeros
    out = np.zeros((m, len(basis)), dtype=object)
    for j, v in enumerate(basis):
        for i in range(m):
            out[i, j] = v[i]
    return out


def right_inverse(A):
    """Integer matrix ``s0`` with ``A @ s0 == I``.

    Raises NotSurjective unless ``A`` maps ``Z^cols`` onto ``Z^rows``.
    """
    A = np.asarray(A, dtype=object)
    m, n = A.shape
    res = snf(A)
    diag = res.diagonal
    if len(diag) < m or any(d != 1 for d in diag):
        raise NotSurjective(f"invariant factors {diag} are not all 1")
    # A = U^-1 [I 0] V^-1, so V [I; 0] U is a right inverse
    return res.V[:, :m].dot(res.U)


def matmul(A, B):
    return np.asarray(A, dtype=object).dot(np.asarray(B, dtype=object))


# --- arithmetic over Z/e -------------------------------------------------

_OVERFLOW_GUARD = 2 ** 62


@dataclass
class ModSNF:
    """``U @ A @ V == diag(S)`` modulo ``e``; pivots are divisors of ``e``."""

    e: int
    diagonal: np.ndarray
    U: np.ndarray | None
    V: np.ndarray | None
    Uinv: np.ndarray | None
    Vinv: np.ndarray | None


def _unit_part(a, e):
    """A unit ``u`` mod e with ``a == u * gcd(a, e) (mod e)``."""
    g = gcd(a, e)
    u = (a // g) % e
    step = e // g
    while gcd(u, e) != 1:
        u = (u + step) % e
    return u


def snf_mod(A, e, want=("U", "V", "Uinv", "Vinv")):
    """Diagonalise ``A`` over Z/e with invertible transforms.

    The returned diagonal has length ``min(rows, cols)``; non-zero entries
    are proper divisors of ``e``.  Only the transforms listed in ``want``
    are tracked.
    """
    A = np.array(A, dtype=np.int64) % e
    m, n = A.shape
    if max(m, n, 1) * e * e >= _OVERFLOW_GUARD:
        raise OverflowError("modulus too large for int64 elimination")
    U = np.eye(m, dtype=np.int64) if "U" in want else None
    Uinv = np.eye(m, dtype=np.int64) if "Uinv" in want else None
    V = np.eye(n, dtype=np.int64) if "V" in want else None
    Vinv = np.eye(n, dtype=np.int64) if "Vinv" in want else None
    diag = []
    gcd_table = np.gcd(np.arange(e, dtype=np.int64), e)

    def swap_rows(i, j):
        if i == j:
            return
        A[[i, j]] = A[[j, i]]
        if U is not None:
            U[[i, j]] = U[[j, i]]
        if Uinv is not None:
            Uinv[:, [i, j]] = Uinv[:, [j, i]]

    def swap_cols(i, j):
        if i == j:
            return
        A[:, [i, j]] = A[:, [j, i]]
        if V is not None:
            V[:, [i, j]] = V[:, [j, i]]
        if Vinv is not None:
            Vinv[[i, j]] = Vinv[[j, i]]

    def euclid_rows(t, i):
        a, b = int(A[t, t]), int(A[i, t])
        x, y, g = xgcd(a, b)
        a1, b1 = a // g, b // g
        for M in (A, U):
            if M is not None:
                rt, ri = M[t].copy(), M[i].copy()
                M[t] = (x * rt + y * ri) % e
                M[i] = (-b1 * rt + a1 * ri) % e
        if Uinv is not None:
            ct, ci = Uinv[:, t].copy(), Uinv[:, i].copy()
            Uinv[:, t] = (a1 * ct + b1 * ci) % e
            Uinv[:, i] = (-y * ct + x * ci) % e

    def euclid_cols(t, j):
        a, b = int(A[t, t]), int(A[t, j])
        x, y, g = xgcd(a, b)
        a1, b1 = a // g, b // g
        for M in (A, V):
            if M is not None:
                ct, cj = M[:, t].copy(), M[:, j].copy()
                M[:, t] = (x * ct + y * cj) % e
                M[:, j] = (-b1 * ct + a1 * cj) % e
        if Vinv is not None:
            rt, rj = Vinv[t].copy(), Vinv[j].copy()
            Vinv[t] = (a1 * rt + b1 * rj) % e
            Vinv[j] = (-y * rt + x * rj) % e

    for t in range(min(m, n)):
        # a unit in the current column is as good as any pivot; only scan
        # the whole remaining block when there is none
        col = gcd_table[A[t:, t]]
        i = int(np.argmin(col))
        if col[i] == 1:
            j = 0
        else:
            G = gcd_table[A[t:, t:]]
            flat = int(np.argmin(G))
            if G.flat[flat] == e:
                diag.extend([0] * (min(m, n) - t))
                break
            i, j = divmod(flat, n - t)
        swap_rows(t, t + i)
        swap_cols(t, t + j)
        while True:
            g = gcd(int(A[t, t]), e)
            bad = np.flatnonzero(A[t + 1:, t] % g)
            if len(bad):
                euclid_rows(t, t + 1 + int(bad[0]))
                continue
            bad = np.flatnonzero(A[t, t + 1:] % g)
            if len(bad):
                euclid_cols(t, t + 1 + int(bad[0]))
                continue
            break
        u = _unit_part(int(A[t, t]), e)
        if u != 1:
            uinv = pow(u, -1, e)
            A[t] = A[t] * uinv % e
            if U is not None:
                U[t] = U[t] * uinv % e
            if Uinv is not None:
                Uinv[:, t] = Uinv[:, t] * u % e
        f = A[t + 1:, t] // g
        rows = np.flatnonzero(f)
        if len(rows):
            fr, rows = f[rows], rows + t + 1
            A[rows] = (A[rows] - np.outer(fr, A[t])) % e
            if U is not None:
                U[rows] = (U[rows] - np.outer(fr, U[t])) % e
            if Uinv is not None:
                Uinv[:, t] = (Uinv[:, t] + Uinv[:, rows] @ fr) % e
        f = A[t, t + 1:] // g
        if f.any():
            A[t, t + 1:] = 0
            if V is not None:
                V[:, t + 1:] = (V[:, t + 1:] - np.outer(V[:, t], f)) % e
            if Vinv is not None:
                Vinv[t] = (Vinv[t] + f @ Vinv[t + 1:]) % e
        diag.append(g)
    return ModSNF(e, np.asarray(diag, dtype=np.int64), U, V, Uinv, Vinv)


def _integer_solve(A, b, moduli):
    """Solve ``A x = b`` over Z with rows ``i`` taken mod ``moduli[i] > 0``."""
    m, n = A.shape
    extra = [i for i in range(m) if moduli[i]]
    aug = np.zeros((m, n + len(extra)), dtype=object)
    aug[:, :n] = A
    for k, i in enumerate(extra):
        aug[i, n + k] = int(moduli[i])
    res = snf(aug)
    ub = res.U.dot(np.asarray(b, dtype=object))
    diag = res.diagonal
    y = np.zeros(aug.shape[1], dtype=object)
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
    return res.V.dot(y)[:n]


class MixedSolver:
    """Reusable solver for ``A x = b`` with per-row moduli (0 means Z).

    When every modulus is positive, rows are rescaled to the common
    exponent ``e`` and the system is factored once with :func:`snf_mod`;
    each right-hand side then costs two matrix-vector products.
    """

    def __init__(self, A, moduli):
        A = np.asarray(A)
        if A.ndim != 2 or len(moduli) != A.shape[0]:
            raise DimensionMismatch("moduli must match the number of rows")
        self.A = A
        self.moduli = [int(d) for d in moduli]
        self.modular = bool(self.moduli) and all(d > 0 for d in self.moduli)
        if self.modular:
            e = 1
            for d in self.moduli:
                e = e * d // gcd(e, d)
            self.e = e
            self.scale = np.asarray([e // d for d in self.moduli], dtype=np.int64)
            Ai = np.asarray(A, dtype=np.int64) % e
            self.fact = snf_mod((self.scale[:, None] * Ai) % e, e, want=("U", "V"))

    def solve(self, b):
        b = np.asarray(b)
        if b.shape != (self.A.shape[0],):
            raise DimensionMismatch("right-hand side has the wrong length")
        m, n = self.A.shape
        if not self.modular:
            x = _integer_solve(np.asarray(self.A, dtype=object), b.astype(object), self.moduli)
            return None if x is None else np.asarray(x, dtype=object)
        if n == 0:
            return np.zeros(0, dtype=np.int64) if not ((b % np.asarray(self.moduli)) != 0).any() else None
        e, F = self.e, self.fact
        u = F.U @ ((self.scale * (b.astype(np.int64) % e)) % e) % e
        k = len(F.diagonal)
        y = np.zeros(n, dtype=np.int64)
        if (u[k:] % e).any():
            return None
        for i in range(k):
            g = int(F.diagonal[i]) or e
            if u[i] % g:
                return None
            y[i] = u[i] // g if g != e else 0
        x = F.V @ y % e
        return x


def solve_mixed(A, b, moduli):
    """Return ``x`` with ``A x == b`` row-wise modulo ``moduli`` or None.

    A modulus of 0 means the row is an equation over Z.
    """
    A = np.asarray(A)
    b = np.asarray(b)
    if A.ndim != 2 or b.shape != (A.shape[0],) or len(moduli) != A.shape[0]:
        raise DimensionMismatch("A, b and moduli disagree in size")
    return MixedSolver(A, moduli).solve(b)

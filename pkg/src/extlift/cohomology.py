"""Normalised inhomogeneous cochains of a finite group Q with coefficients
in a finite Q-module, and the second cohomology group.

Conventions (left action, written additively) are those forced by the
extension multiplication ``(m, x)(m', x') = (m + x.m' + c(x, x'), xx')``::

    (d0 n)(x)       = x.n - n
    (d1 f)(x, y)    = x.f(y) - f(xy) + f(x)
    (d2 c)(x, y, z) = x.c(y, z) - c(xy, z) + c(x, yz) - c(x, y)

Associativity of the multiplication is exactly ``d2 c = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .exceptions import CoefficientMismatch, NotACocycle
from .intlinalg import MixedSolver, snf_mod


class Cochain:
    """A normalised map ``Q^degree -> M``.

    ``values`` has shape ``(|Q|,) * degree + (rank,)`` and is zero whenever
    an argument is the identity (index 0).
    """

    def __init__(self, module, degree, values=None, check=True):
        self.module = module
        self.degree = int(degree)
        n = module.group.order
        shape = (n,) * self.degree + (module.rank,)
        if values is None:
            values = np.zeros(shape, dtype=np.int64)
        values = module.reduce(np.asarray(values, dtype=np.int64).reshape(shape))
        self.values = values
        self.values.setflags(write=False)
        if check and not self.is_normalized():
            raise ValueError("cochain is not normalised")

    @classmethod
    def zero(cls, module, degree):
        return cls(module, degree)

    @classmethod
    def from_dict(cls, module, degree, entries):
        """Build from ``{(q1, ..., qd): value}``; missing tuples are zero."""
        n = module.group.order
        vals = np.zeros((n,) * degree + (module.rank,), dtype=np.int64)
        for args, v in entries.items():
            args = (args,) if np.isscalar(args) else tuple(args)
            vals[args] = v
        return cls(module, degree, vals)

    @classmethod
    def from_function(cls, module, degree, fn):
        n = module.group.order
        vals = np.zeros((n,) * degree + (module.rank,), dtype=np.int64)
        for args in np.ndindex(*(n,) * degree):
            if all(args):
                vals[args] = fn(*args)
        return cls(module, degree, vals)

    @classmethod
    def from_vector(cls, module, degree, vec):
        n = module.group.order
        vals = np.zeros((n,) * degree + (module.rank,), dtype=np.int64)
        inner = (n - 1,) * degree + (module.rank,)
        vals[(slice(1, None),) * degree] = np.asarray(vec, dtype=np.int64).reshape(inner)
        return cls(module, degree, vals, check=False)

    def vector(self):
        """Values on non-identity tuples, flattened (lexicographic, component last)."""
        return self.values[(slice(1, None),) * self.degree].reshape(-1)

    def is_normalized(self):
        v = self.values
        for axis in range(self.degree):
            if np.take(v, 0, axis=axis).any():
                return False
        return True

    def __getitem__(self, args):
        return self.values[args]

    def _same(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if other.module is not self.module or other.degree != self.degree:
            raise CoefficientMismatch("cochains live over different modules or degrees")
        return True

    def __add__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        return Cochain(self.module, self.degree, self.values + other.values, check=False)

    def __sub__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        return Cochain(self.module, self.degree, self.values - other.values, check=False)

    def __neg__(self):
        return Cochain(self.module, self.degree, -self.values, check=False)

    def __rmul__(self, n):
        return Cochain(self.module, self.degree, int(n) * self.values, check=False)

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and other.module is self.module
            and other.degree == self.degree
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None

    def is_zero(self):
        return not self.values.any()

    def __repr__(self):
        return f"Cochain(degree={self.degree}, module={self.module!r})"


def coboundary(f):
    """Apply the differential to a cochain of degree 0, 1 or 2."""
    M, d = f.module, f.degree
    Q = M.group
    T = Q.table
    v = f.values
    if d == 0:
        out = M.act_all(v) - v[None, :]
    elif d == 1:
        out = M.act_all(v)  # [x, y] = x.f(y)
        out = out - v[T] + v[:, None, :]
    elif d == 2:
        out = M.act_all(v)  # [x, y, z] = x.c(y, z)
        out = out - v[T] + v[:, T] - v[:, :, None, :]
    else:
        raise ValueError("coboundary is implemented for degrees 0, 1, 2")
    return Cochain(M, d + 1, out, check=False)


def is_cocycle(c):
    return coboundary(c).is_zero()


def _require_cocycle(c):
    if c.degree != 2 or not is_cocycle(c):
        raise NotACocycle("expected a 2-cocycle")


def killing_cochain(c):
    """The 1-cochain ``b(x) = sum_y c(x, y)``; it satisfies ``d1 b = |Q| c``."""
    _require_cocycle(c)
    return Cochain(c.module, 1, c.values.sum(axis=1))


@dataclass
class CohomologyGroup:
    """``H^2(Q, M)`` as invariant factors ``d1 | d2 | ...`` with one
    representative cocycle per cyclic factor."""

    invariant_factors: tuple
    representatives: list
    matrices: dict = field(default_factory=dict, repr=False)
    stats: dict = field(default_factory=dict, repr=False)

    @property
    def order(self):
        return int(np.prod(self.invariant_factors)) if self.invariant_factors else 1

    def is_trivial(self):
        return not self.invariant_factors


def _primes(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def cyclic_to_invariant(orders, gens, e):
    """Regroup a direct sum of cyclic groups into invariant-factor form.

    ``gens[i]`` generates a cyclic summand of order ``orders[i]``; vectors
    are combined mod ``e``.  Returns ``(factors, generators)`` with factors
    ascending in the divisibility chain.
    """
    parts = {}
    for h, u in zip(orders, gens):
        for p in _primes(h):
            q = 1
            while h % (q * p) == 0:
                q *= p
            parts.setdefault(p, []).append((q, (h // q) * np.asarray(u) % e))
    if not parts:
        return (), []
    for p in parts:
        parts[p].sort(key=lambda t: -t[0])
    length = max(len(v) for v in parts.values())
    factors, out = [], []
    for j in range(length):
        f, vec = 1, 0
        for p in sorted(parts):
            if j < len(parts[p]):
                f *= parts[p][j][0]
                vec = (vec + parts[p][j][1]) % e
        factors.append(f)
        out.append(vec)
    return tuple(reversed(factors)), list(reversed(out))


class CochainComplex:
    """Coboundary matrices in normalised coordinates for a fixed module.

    Coordinates of degree d are ``(tuple of non-identity elements, component)``
    in lexicographic order, matching :meth:`Cochain.vector`.
    """

    def __init__(self, module):
        self.module = M = module
        n, k = M.group.order, M.rank
        self.n, self.k = n, k
        self.e = M.exponent
        self.dims = {d: (n - 1) ** d * k for d in range(4)}
        self.moduli = {d: np.tile(M.moduli, (n - 1) ** d) for d in range(4)}
        self._D1 = self._D2 = None
        self._solver = None
        self._h2 = None
        self._z2 = None

    def _block(self, args):
        m = self.n - 1
        idx = 0
        for a in args:
            idx = idx * m + (a - 1)
        return idx * self.k

    @property
    def D1(self):
        if self._D1 is None:
            n, k, A, T = self.n, self.k, self.module.action, self.module.group.table
            D = np.zeros((self.dims[2], self.dims[1]), dtype=np.int64)
            I = np.eye(k, dtype=np.int64)
            for x in range(1, n):
                for y in range(1, n):
                    r = self._block((x, y))
                    D[r:r + k, self._block((y,)):self._block((y,)) + k] += A[x]
                    if T[x, y]:
                        c = self._block((T[x, y],))
                        D[r:r + k, c:c + k] -= I
                    c = self._block((x,))
                    D[r:r + k, c:c + k] += I
            self._D1 = D
        return self._D1

    @property
    def D2(self):
        if self._D2 is None:
            n, k, A, T = self.n, self.k, self.module.action, self.module.group.table
            D = np.zeros((self.dims[3], self.dims[2]), dtype=np.int64)
            I = np.eye(k, dtype=np.int64)
            for x in range(1, n):
                for y in range(1, n):
                    for z in range(1, n):
                        r = self._block((x, y, z))
                        c = self._block((y, z))
                        D[r:r + k, c:c + k] += A[x]
                        if T[x, y]:
                            c = self._block((T[x, y], z))
                            D[r:r + k, c:c + k] -= I
                        if T[y, z]:
                            c = self._block((x, T[y, z]))
                            D[r:r + k, c:c + k] += I
                        c = self._block((x, y))
                        D[r:r + k, c:c + k] -= I
            self._D2 = D
        return self._D2

    def solve_d1(self, c):
        """A normalised 1-cochain f with ``d1 f = c``, or None."""
        if self.dims[1] == 0 or self.dims[2] == 0:
            return Cochain.zero(self.module, 1) if c.is_zero() else None
        if self._solver is None:
            self._solver = MixedSolver(self.D1, self.moduli[2])
        x = self._solver.solve(c.vector())
        if x is None:
            return None
        return Cochain.from_vector(self.module, 1, np.asarray(x, dtype=np.int64))

    def _cocycle_lattice(self):
        """Generators of Z^2 mod e in x-coordinates, plus the data for H^2."""
        if self._z2 is None:
            e, n2, n3 = self.e, self.dims[2], self.dims[3]
            scale = e // self.moduli[3]
            F = snf_mod((scale[:, None] * self.D2) % e, e, want=("V", "Vinv"))
            diag = np.zeros(n2, dtype=np.int64)
            diag[: len(F.diagonal)] = F.diagonal
            g = np.where(diag == 0, e, np.gcd(diag, e))
            t = e // g
            self._z2 = (F, g, t)
        return self._z2

    def cocycle_generators(self):
        """Cochains generating the cocycle group ``Z^2``."""
        if self.dims[2] == 0:
            return []
        F, g, t = self._cocycle_lattice()
        gens = (F.V * t[None, :]) % self.e
        out = []
        for i in np.flatnonzero(g > 1):
            out.append(Cochain.from_vector(self.module, 2, gens[:, i] % self.moduli[2]))
        return out

    def h2(self):
        if self._h2 is not None:
            return self._h2
        M = self.module
        if self.dims[2] == 0 or M.order == 1:
            self._h2 = CohomologyGroup((), [], {"d1": self.D1, "d2": self.D2})
            return self._h2
        e, n2 = self.e, self.dims[2]
        F, g, t = self._cocycle_lattice()
        boundaries = np.concatenate([self.D1 % e, np.diag(self.moduli[2])], axis=1)
        Y = F.Vinv @ (boundaries % e) % e
        if (Y % t[:, None]).any():
            raise AssertionError("coboundaries escaped the cocycle lattice")
        Z = (Y // t[:, None]) % g[:, None]
        P = np.concatenate([np.diag(g), Z], axis=1)
        G = snf_mod(P % e, e, want=("Uinv",))
        h = np.where(G.diagonal == 0, e, np.gcd(G.diagonal, e))
        cyc = [(int(h[i]), G.Uinv[:, i]) for i in range(n2) if h[i] > 1]
        factors, zgens = cyclic_to_invariant([o for o, _ in cyc], [u for _, u in cyc], e)
        reps = []
        for z in zgens:
            x = F.V @ (t * z % e) % e
            reps.append(Cochain.from_vector(M, 2, x % self.moduli[2]))
        self._h2 = CohomologyGroup(factors, reps, {"d1": self.D1, "d2": self.D2})
        return self._h2


def complex_of(module):
    """The (cached) cochain complex of a module."""
    cx = module.__dict__.get("_cochain_complex")
    if cx is None:
        cx = CochainComplex(module)
        module.__dict__["_cochain_complex"] = cx
    return cx


def solve_coboundary(c):
    """Normalised f with ``d1 f = c``, or None if c is not a coboundary."""
    _require_cocycle(c)
    f = complex_of(c.module).solve_d1(c)
    if f is not None and coboundary(f) != c:
        raise AssertionError("coboundary solver returned a wrong witness")
    return f


def h2(Q, M):
    """Second cohomology ``H^2(Q, M)`` of a finite module."""
    if M.group is not Q and M.group != Q:
        raise CoefficientMismatch("module is defined over a different group")
    return complex_of(M).h2()


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def class_order(c):
    """Smallest n >= 1 with ``n c`` a coboundary; always divides |Q|."""
    _require_cocycle(c)
    cx = complex_of(c.module)
    for n in divisors(c.module.group.order):
        if cx.solve_d1(n * c) is not None:
            return n
    raise AssertionError("no divisor of |Q| kills the class")


def coboundary_witness(c, n):
    """A 1-cochain b with ``d1 b = n c``, or None."""
    _require_cocycle(c)
    return solve_coboundary(n * c)


def baer_sum(c1, c2):
    """Sum of extension classes at cocycle level (pointwise sum)."""
    if c1.module is not c2.module:
        raise CoefficientMismatch("cocycles have different coefficient modules")
    _require_cocycle(c1)
    _require_cocycle(c2)
    return c1 + c2


def random_cocycle(M, rng):
    """A uniformly mixed random element of ``Z^2(Q, M)``."""
    gens = complex_of(M).cocycle_generators()
    c = Cochain.zero(M, 2)
    for z in gens:
        c = c + int(rng.integers(0, M.exponent)) * z
    return c


def random_cochain(M, degree, rng):
    n = M.group.order
    inner = (n - 1) ** degree
    vec = rng.integers(0, np.iinfo(np.int32).max, size=(inner, M.rank)) % M.moduli
    return Cochain.from_vector(M, degree, vec.reshape(-1))

"""Exact integer linear algebra and finitely presented abelian groups.

Matrices are plain lists of integer rows.  A relation matrix ``M`` with
``c`` columns presents the abelian group ``Z^c / (row space of M)``;
homomorphisms from that group to ``Z/m`` are the vectors ``x`` with
``M x = 0 (mod m)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

from sympy import factorint


def identity_matrix(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(ncols)]
            for i in range(len(A))]


def determinant(A):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1]


def _ncols(M, ncols):
    if ncols is not None:
        if any(len(r) != ncols for r in M):
            raise ValueError("row length does not match ncols")
        return ncols
    if not M:
        raise ValueError("ncols is required for a matrix without rows")
    widths = {len(r) for r in M}
    if len(widths) != 1:
        raise ValueError("ragged matrix")
    return widths.pop()


def smith_normal_form(M, ncols=None, left=True):
    """Return ``(D, U, V)`` with ``U * M * V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with non-negative
    entries forming a divisibility chain.  Pivots are chosen by smallest
    absolute value.  With ``left=False`` the row transform is not
    accumulated and ``U`` is returned as ``None`` (useful for tall
    relation matrices where only ``V`` matters).
    """
    nc = _ncols(M, ncols)
    nr = len(M)
    A = [list(map(int, r)) for r in M]
    U = identity_matrix(nr) if left else None
    V = identity_matrix(nc)

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            if U is not None:
                U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(nr, nc)):
        best = None
        for i in range(t, nr):
            row = A[i]
            for j in range(t, nc):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, nc):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                # move the smallest leftover of row/column t into the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, nr) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, nc) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if A[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
    return A, U, V


def diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def _sparse_unit_reduce(rows, ncols):
    """Eliminate +-1 pivots in a sparse integer matrix.

    ``rows`` is a list of ``{col: value}`` dicts.  Returns the number of
    unit pivots removed and the residual rows (none of which has a unit
    entry); the residual's Smith form together with that many 1s is the
    Smith form of the input.
    """
    active = {}
    cols = {}
    for rid, r in enumerate(rows):
        r = {c: v for c, v in r.items() if v}
        if not r:
            continue
        active[rid] = r
        for c in r:
            cols.setdefault(c, set()).add(rid)
    units = 0
    progress = True
    while progress:
        progress = False
        for rid in sorted(active, key=lambda k: len(active[k])):
            r = active.get(rid)
            if r is None:
                continue
            unit_cols = [c for c, v in r.items() if v in (1, -1)]
            if not unit_cols:
                continue
            c = min(unit_cols, key=lambda k: (len(cols[k]), k))
            pv = r[c]
            for sid in list(cols[c]):
                if sid == rid:
                    continue
                s = active[sid]
                f = s[c] * pv
                for k, v in r.items():
                    nv = s.get(k, 0) - f * v
                    if nv:
                        if k not in s:
                            cols.setdefault(k, set()).add(sid)
                        s[k] = nv
                    elif k in s:
                        del s[k]
                        cols[k].discard(sid)
                if not s:
                    del active[sid]
            for k in r:
                cols[k].discard(rid)
            del active[rid]
            units += 1
            progress = True
    return units, list(active.values())


def invariant_factors(M, ncols=None):
    """``(rank, factors)``: the rank of ``M`` and its Smith diagonal entries > 1."""
    nc = _ncols(M, ncols)
    return _invariants_sparse([{j: v for j, v in enumerate(r) if v} for r in M], nc)


def _invariants_sparse(rows, nc):
    units, rest = _sparse_unit_reduce(rows, nc)
    if not rest:
        return units, []
    used = sorted({c for r in rest for c in r})
    pos = {c: j for j, c in enumerate(used)}
    dense = []
    for r in rest:
        row = [0] * len(used)
        for c, v in r.items():
            row[pos[c]] = v
        dense.append(row)
    D, _, _ = smith_normal_form(dense, len(used), left=False)
    diag = [d for d in diagonal(D) if d]
    return units + len(diag), [d for d in diag if d > 1]


def sparse_invariant_factors(rows, ncols):
    """Same as :func:`invariant_factors` for ``{col: value}`` row dicts."""
    return _invariants_sparse([dict(r) for r in rows], ncols)


def _normalize_chain(orders):
    """Invariant factors (>1, divisibility chain) of a sum of cyclic groups."""
    by_prime = {}
    for n in orders:
        if n == 0:
            raise ValueError("infinite cyclic summand in a torsion list")
        for q, e in factorint(abs(n)).items():
            by_prime.setdefault(q, []).append(e)
    length = max((len(v) for v in by_prime.values()), default=0)
    chain = [1] * length
    for q, exps in by_prime.items():
        exps.sort()
        for k, e in enumerate(exps):
            chain[length - len(exps) + k] *= q ** e
    return tuple(chain)


@dataclass(frozen=True)
class FpAbelianGroup:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ...`` and ``d_i >= 2``."""

    free_rank: int = 0
    invariant_factors: tuple = ()

    def __post_init__(self):
        facs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", facs)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in facs):
            raise ValueError(f"invariant factors must be >= 2: {facs}")
        if any(b % a for a, b in zip(facs, facs[1:])):
            raise ValueError(f"not a divisibility chain: {facs}")

    @classmethod
    def from_cyclic_orders(cls, orders, free_rank=0):
        return cls(free_rank, _normalize_chain([d for d in orders if d != 1]))

    def is_trivial(self):
        return self.free_rank == 0 and not self.invariant_factors

    def is_finite(self):
        return self.free_rank == 0

    @property
    def torsion_order(self):
        return prod(self.invariant_factors)

    @property
    def exponent(self):
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def torsion(self):
        return FpAbelianGroup(0, self.invariant_factors)

    def count_homs_to_cyclic(self, m):
        """``|Hom(A, Z/m)| = prod gcd(d_i, m) * m^free_rank``."""
        return prod(gcd(d, m) for d in self.invariant_factors) * m ** self.free_rank

    def to_json(self):
        return {"freeRank": self.free_rank,
                "invariantFactors": list(self.invariant_factors)}

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


def cokernel(M, ncols=None):
    """Abelian group presented by the rows of ``M`` as relations on its columns."""
    nc = _ncols(M, ncols)
    rank, facs = invariant_factors(M, nc)
    return FpAbelianGroup(nc - rank, tuple(facs))


def p_prime_torsion(A, p):
    orders = []
    for d in A.invariant_factors:
        while d % p == 0:
            d //= p
        orders.append(d)
    return FpAbelianGroup.from_cyclic_orders(orders)


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def echelon_rows(M, ncols=None):
    """Row-reduce over Z to at most ``ncols`` rows spanning the same lattice.

    Only unimodular row operations are used, so the result presents the
    same cokernel as ``M``.
    """
    nc = _ncols(M, ncols)
    basis = {}
    for r in M:
        v = list(map(int, r))
        while True:
            c = next((j for j, x in enumerate(v) if x), None)
            if c is None:
                break
            b = basis.get(c)
            if b is None:
                basis[c] = v if v[c] > 0 else [-x for x in v]
                break
            if v[c] % b[c] == 0:
                q = v[c] // b[c]
                v = [x - q * y for x, y in zip(v, b)]
                continue
            g, s, t = _xgcd(b[c], v[c])
            if g < 0:
                g, s, t = -g, -s, -t
            bc, vc = b[c] // g, v[c] // g
            basis[c] = [s * y + t * x for x, y in zip(v, b)]
            v = [vc * y - bc * x for x, y in zip(v, b)]
    return [basis[c] for c in sorted(basis)], nc


def cokernel_basis(M, ncols=None):
    """Cokernel together with explicit dual generators.

    Returns ``(A, torsion_gens, free_gens)`` where ``A`` is the cokernel,
    ``torsion_gens[i]`` is an integer vector ``x`` of length ``ncols`` with
    ``M x = 0 (mod d_i)`` generating the ``Z/d_i`` summand of
    ``Hom(A, Q/Z)``, and ``free_gens`` are integer vectors with ``M x = 0``.
    """
    E, nc = echelon_rows(M, ncols)
    if E:
        D, _, V = smith_normal_form(E, nc)
        diag = diagonal(D)
    else:
        V, diag = identity_matrix(nc), []
    diag = diag + [0] * (nc - len(diag))
    torsion, free = [], []
    for i, d in enumerate(diag):
        col = [V[k][i] for k in range(nc)]
        if d == 0:
            free.append(col)
        elif d > 1:
            torsion.append((d, col))
    A = FpAbelianGroup(len(free), tuple(d for d, _ in torsion))
    return A, [c for _, c in torsion], free


def _count_mod_prime_power(M, nc, q, k):
    mod = q ** k
    A = {tuple(x % mod for x in r) for r in M}
    A = [list(r) for r in A if any(r)]
    live_cols = set(range(nc))
    log_count = 0

    def val(x):
        v = 0
        while x % q == 0:
            x //= q
            v += 1
        return v

    while A:
        best = None
        for i, r in enumerate(A):
            for j in live_cols:
                if r[j]:
                    v = val(r[j])
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        prow = A.pop(i)
        unit = prow[j] // q ** v
        uinv = pow(unit, -1, mod)
        prow = [(x * uinv) % mod for x in prow]
        step = q ** v
        nxt = []
        for r in A:
            if r[j]:
                f = r[j] // step
                r = [(x - f * y) % mod for x, y in zip(r, prow)]
            if any(r[c] for c in live_cols if c != j):
                nxt.append(r)
        A = nxt
        live_cols.discard(j)
        # q^v x_j = 0 mod q^k has q^v solutions
        log_count += v
    log_count += k * len(live_cols)
    return q ** log_count


def solve_homogeneous_mod(M, m, ncols=None):
    """Number of ``x`` in ``(Z/m)^ncols`` with ``M x = 0 (mod m)``.

    Works one prime power at a time with elimination over ``Z/q^k``,
    pivoting on entries of least ``q``-valuation; this never touches the
    integer Smith form, so it can serve as an independent check on it.
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    nc = _ncols(M, ncols)
    total = 1
    for q, k in factorint(m).items():
        total *= _count_mod_prime_power(M, nc, q, k)
    return total

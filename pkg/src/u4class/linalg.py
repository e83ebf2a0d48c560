"""Exact integer and mod-2 matrix algebra.

Everything downstream (cohomology, spectral sequences, classification)
reduces to the functions here: Smith normal form, kernels, and homology
subquotients, all over arbitrary-precision integers.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .kernels import gf2

__all__ = [
    "AbelianGroup",
    "IntMatrix",
    "SmithForm",
    "smith_normal_form",
    "rank",
    "invariant_factors",
    "homology_at",
    "presented_homology_at",
    "kernel_basis",
    "solve",
    "lattice_quotient",
    "mod2_rank",
    "mod2_kernel_basis",
    "integer_kernel",
    "ColumnLattice",
]

_SCIPY_LIMIT = 2**31 - 1


# ---------------------------------------------------------------------------
# Abelian groups in invariant-factor form


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: free rank plus torsion chain.

    Torsion coefficients are >= 2 and form a divisibility chain
    d_1 | d_2 | ... | d_k.
    """

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion coefficient {d} < 2")
            if prev is not None and d % prev:
                raise ValueError("torsion coefficients not a divisor chain")
            prev = d

    @staticmethod
    def from_cyclic_orders(orders) -> "AbelianGroup":
        """Normalize a direct sum of cyclic groups (0 means Z) to invariant
        factors."""
        free = 0
        primary = {}  # prime -> list of exponents
        for m in orders:
            m = abs(m)
            if m == 0:
                free += 1
                continue
            if m == 1:
                continue
            for p, e in _factorize(m):
                primary.setdefault(p, []).append(e)
        depth = max((len(v) for v in primary.values()), default=0)
        factors = [1] * depth
        for p, exps in primary.items():
            exps.sort(reverse=True)
            for i, e in enumerate(exps):
                factors[i] *= p**e
        factors.reverse()  # ascending divisibility
        return AbelianGroup(free, tuple(factors))

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int | None:
        """Group order, or None if infinite."""
        if self.rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def exponent(self) -> int | None:
        if self.rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_cyclic_orders(
            [0] * (self.rank + other.rank) + list(self.torsion)
            + list(other.torsion))

    def tensor(self, other: "AbelianGroup") -> "AbelianGroup":
        """Tensor product over Z."""
        orders = [0] * (self.rank * other.rank)
        orders += list(self.torsion) * other.rank
        orders += list(other.torsion) * self.rank
        for a in self.torsion:
            for b in other.torsion:
                orders.append(_gcd(a, b))
        return AbelianGroup.from_cyclic_orders(orders)

    def tor(self, other: "AbelianGroup") -> "AbelianGroup":
        """Torsion product Tor_1(self, other)."""
        return AbelianGroup.from_cyclic_orders(
            [_gcd(a, b) for a in self.torsion for b in other.torsion])

    def elements(self):
        """All elements as coordinate tuples (finite groups only)."""
        if self.rank:
            raise ValueError("infinite group")
        coords = [()]
        for d in self.torsion:
            coords = [c + (i,) for c in coords for i in range(d)]
        return coords

    def element_order_counts(self) -> dict[int, int]:
        """How many elements have each order; an isomorphism invariant that
        determines finite abelian groups."""
        counts = {}
        for el in self.elements():
            o = 1
            for x, d in zip(el, self.torsion):
                o = _lcm(o, d // _gcd(d, x))
            counts[o] = counts.get(o, 0) + 1
        return counts

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _lcm(a, b):
    return a * b // _gcd(a, b) if a and b else 0


def _factorize(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


# ---------------------------------------------------------------------------
# Sparse integer matrices


class IntMatrix:
    """Immutable sparse integer matrix in canonical triplet form."""

    __slots__ = ("nrows", "ncols", "rows", "cols", "vals")

    def __init__(self, nrows, ncols, rows=(), cols=(), vals=(), *,
                 canonical=False):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        if canonical:
            self.rows = list(rows)
            self.cols = list(cols)
            self.vals = list(vals)
        else:
            rows, cols, vals = list(rows), list(cols), list(vals)
            built = None
            if len(rows) == len(cols) == len(vals) > 512:
                built = self._canonicalize_fast(rows, cols, vals)
            if built is not None:
                self.rows, self.cols, self.vals = built
            else:
                acc = {}
                for r, c, v in zip(rows, cols, vals):
                    if not 0 <= r < self.nrows or not 0 <= c < self.ncols:
                        raise ValueError(f"entry ({r},{c}) out of range")
                    key = (r, c)
                    acc[key] = acc.get(key, 0) + int(v)
                self.rows, self.cols, self.vals = [], [], []
                for (r, c), v in sorted(acc.items()):
                    if v:
                        self.rows.append(r)
                        self.cols.append(c)
                        self.vals.append(v)

    def _canonicalize_fast(self, rows, cols, vals):
        """Vectorized sort-and-accumulate; None when int64 cannot hold the
        entries or their sums exactly."""
        try:
            r = np.asarray(rows, dtype=np.int64)
            c = np.asarray(cols, dtype=np.int64)
            v = np.asarray(vals, dtype=np.int64)
        except (OverflowError, TypeError, ValueError):
            return None
        if v.size and int(np.abs(v).max()) * v.size >= 2 ** 62:
            return None
        if self.nrows * self.ncols >= 2 ** 62:
            return None
        if r.size and (r.min() < 0 or r.max() >= self.nrows
                       or c.min() < 0 or c.max() >= self.ncols):
            raise ValueError("entry out of range")
        order = np.lexsort((c, r))
        r, c, v = r[order], c[order], v[order]
        key = r * self.ncols + c
        starts = np.empty(key.size, dtype=bool)
        if key.size:
            starts[0] = True
            starts[1:] = key[1:] != key[:-1]
        idx = np.flatnonzero(starts)
        sums = np.add.reduceat(v, idx) if idx.size else v
        keep = sums != 0
        return (r[idx][keep].tolist(), c[idx][keep].tolist(),
                sums[keep].tolist())

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zeros(nrows, ncols):
        return IntMatrix(nrows, ncols)

    @staticmethod
    def identity(n):
        rng = list(range(n))
        return IntMatrix(n, n, rng, rng, [1] * n, canonical=True)

    @staticmethod
    def from_dense(rows):
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        ri, ci, vi = [], [], []
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                if v:
                    ri.append(i)
                    ci.append(j)
                    vi.append(int(v))
        return IntMatrix(nr, nc, ri, ci, vi, canonical=True)

    # -- basic queries ------------------------------------------------------

    @property
    def nnz(self):
        return len(self.vals)

    @property
    def is_zero(self):
        return not self.vals

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, c, v in zip(self.rows, self.cols, self.vals):
            out[r][c] = v
        return out

    def max_abs(self):
        return max((abs(v) for v in self.vals), default=0)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix)
                and (self.nrows, self.ncols) == (other.nrows, other.ncols)
                and self.rows == other.rows and self.cols == other.cols
                and self.vals == other.vals)

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(self.vals)))

    def __repr__(self):
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    # -- structural ops -----------------------------------------------------

    def transpose(self):
        return IntMatrix(self.ncols, self.nrows, self.cols, self.rows,
                         self.vals)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix(
            self.nrows, self.ncols + other.ncols,
            self.rows + other.rows,
            self.cols + [c + self.ncols for c in other.cols],
            self.vals + other.vals)

    def columns_dense(self):
        out = [[0] * self.nrows for _ in range(self.ncols)]
        for r, c, v in zip(self.rows, self.cols, self.vals):
            out[c][r] = v
        return out

    def matmul(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matmul")
        fast = self._matmul_scipy(other)
        if fast is not None:
            return fast
        by_row = {}
        for r, c, v in zip(other.rows, other.cols, other.vals):
            by_row.setdefault(r, []).append((c, v))
        acc = {}
        for r, k, v in zip(self.rows, self.cols, self.vals):
            for c, w in by_row.get(k, ()):
                key = (r, c)
                acc[key] = acc.get(key, 0) + v * w
        ri, ci, vi = [], [], []
        for (r, c), v in sorted(acc.items()):
            if v:
                ri.append(r)
                ci.append(c)
                vi.append(v)
        return IntMatrix(self.nrows, other.ncols, ri, ci, vi, canonical=True)

    def _matmul_scipy(self, other):
        # int64 product is exact when a crude bound on entry growth holds
        try:
            import numpy as np
            from scipy import sparse
        except ImportError:  # pragma: no cover
            return None
        inner = max(1, self.ncols)
        bound = inner * max(1, self.max_abs()) * max(1, other.max_abs())
        if bound > _SCIPY_LIMIT:
            return None
        a = sparse.coo_matrix(
            (np.asarray(self.vals, dtype=np.int64),
             (np.asarray(self.rows, dtype=np.int64),
              np.asarray(self.cols, dtype=np.int64))),
            shape=(self.nrows, self.ncols)).tocsr()
        b = sparse.coo_matrix(
            (np.asarray(other.vals, dtype=np.int64),
             (np.asarray(other.rows, dtype=np.int64),
              np.asarray(other.cols, dtype=np.int64))),
            shape=(other.nrows, other.ncols)).tocsr()
        c = (a @ b).tocoo()
        keep = c.data != 0
        order = np.lexsort((c.col[keep], c.row[keep]))
        return IntMatrix(self.nrows, other.ncols,
                         c.row[keep][order].tolist(),
                         c.col[keep][order].tolist(),
                         c.data[keep][order].tolist(), canonical=True)

    # -- mod-2 views --------------------------------------------------------

    def mod2_column_masks(self):
        """Columns as GF(2) bit integers (bit i = row i)."""
        out = [0] * self.ncols
        for r, c, v in zip(self.rows, self.cols, self.vals):
            if v & 1:
                out[c] ^= 1 << r
        return out


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """diagonal d_1 | d_2 | ...; optionally U, V with U @ M @ V = diag."""

    diagonal: tuple[int, ...]
    left: tuple | None = None
    right: tuple | None = None

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d)

    @property
    def nontrivial(self):
        return tuple(d for d in self.diagonal if d > 1)


@functools.lru_cache(maxsize=8)
def _snf_diagonal(m: IntMatrix) -> tuple[int, ...]:
    """Cached Smith diagonal: in a cochain complex the same differential
    appears as d_out at one degree and d_in at the next, and the
    elimination dominates the hash-plus-compare cost of the lookup."""
    npiv, rr, rc, rv = kernels.unit_pivot_phase(
        m.nrows, m.ncols, m.rows, m.cols, m.vals)
    diag = [1] * npiv + _remainder_snf(rr, rc, rv)
    diag += [0] * (min(m.nrows, m.ncols) - len(diag))
    return tuple(diag)


def smith_normal_form(m: IntMatrix, keep_transforms=False) -> SmithForm:
    """Smith normal form; transforms retained only on request."""
    if keep_transforms:
        diag, u, v = _dense_snf(m.to_dense(), m.nrows, m.ncols, True)
        diag += [0] * (min(m.nrows, m.ncols) - len(diag))
        return SmithForm(tuple(diag), tuple(map(tuple, u)),
                         tuple(map(tuple, v)))
    return SmithForm(_snf_diagonal(m))


def rank(m: IntMatrix) -> int:
    return sum(1 for d in _snf_diagonal(m) if d)


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Nontrivial (> 1) invariant factors of the cokernel restricted to the
    image, i.e. the torsion of Z^rows / column span beyond free parts."""
    return smith_normal_form(m).nontrivial


def _remainder_snf(rr, rc, rv):
    """Dense SNF of the (compressed) remainder left by the unit phase."""
    if not rv:
        return []
    rmap = {r: i for i, r in enumerate(sorted(set(rr)))}
    cmap = {c: j for j, c in enumerate(sorted(set(rc)))}
    dense = [[0] * len(cmap) for _ in range(len(rmap))]
    for r, c, v in zip(rr, rc, rv):
        dense[rmap[r]][cmap[c]] = v
    diag, _, _ = _dense_snf(dense, len(rmap), len(cmap), False)
    return diag


def _gcdex(a, b):
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _dense_snf(a, m, n, want):
    """Dense Smith reduction; returns (nonzero diagonal, U, V).

    Off-pivot entries are cleared with extended-gcd two-row (two-column)
    unimodular combinations rather than Euclidean swap ping-pong, which
    keeps intermediate entry growth polynomial.
    """
    a = [list(row) for row in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)] if want else None
    v = [[int(i == j) for j in range(n)] for i in range(n)] if want else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if want:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if want:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def row_op(i, j, q):  # row i -= q * row j
        ai, aj = a[i], a[j]
        for k in range(n):
            ai[k] -= q * aj[k]
        if want:
            ui, uj = u[i], u[j]
            for k in range(m):
                ui[k] -= q * uj[k]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        if want:
            u[i] = [-x for x in u[i]]

    def clear_row_entry(t, i):
        """Make a[i][t] = 0 using pivot row t; pivot becomes the gcd."""
        p, w = a[t][t], a[i][t]
        if w % p == 0:
            row_op(i, t, w // p)
            return False
        g, x, y = _gcdex(p, w)
        pt, wt = p // g, w // g
        rt = [x * aa + y * bb for aa, bb in zip(a[t], a[i])]
        ri = [-wt * aa + pt * bb for aa, bb in zip(a[t], a[i])]
        a[t], a[i] = rt, ri
        if want:
            ut = [x * aa + y * bb for aa, bb in zip(u[t], u[i])]
            ui = [-wt * aa + pt * bb for aa, bb in zip(u[t], u[i])]
            u[t], u[i] = ut, ui
        return True

    def clear_col_entry(t, j):
        """Make a[t][j] = 0 using pivot column t."""
        p, w = a[t][t], a[t][j]
        if w % p == 0:
            q = w // p
            for row in a:
                row[j] -= q * row[t]
            if want:
                for row in v:
                    row[j] -= q * row[t]
            return False
        g, x, y = _gcdex(p, w)
        pt, wt = p // g, w // g
        for row in a:
            ct, cj = row[t], row[j]
            row[t] = x * ct + y * cj
            row[j] = -wt * ct + pt * cj
        if want:
            for row in v:
                ct, cj = row[t], row[j]
                row[t] = x * ct + y * cj
                row[j] = -wt * ct + pt * cj
        return True

    t = 0
    limit = min(m, n)
    while t < limit:
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    best = x
                    piv = (i, j)
                    if x == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        if a[t][t] < 0:
            negate_row(t)
        while True:
            dirty = False
            for i in range(m):
                if i != t and a[i][t]:
                    dirty |= clear_row_entry(t, i)
            for j in range(n):
                if j != t and a[t][j]:
                    # a gcd step here re-dirties column t, hence the loop;
                    # each such step strictly divides the pivot, so the
                    # ping-pong is bounded
                    dirty |= clear_col_entry(t, j)
            if a[t][t] < 0:
                negate_row(t)
            if dirty or any(a[i][t] for i in range(m) if i != t):
                continue
            p = a[t][t]
            offender = None
            for i in range(t + 1, m):
                if any(x % p for x in a[i][t + 1:]):
                    offender = i
                    break
            if offender is None:
                break
            row_op(t, offender, -1)  # fold the offending row into row t
        t += 1
    diag = [a[i][i] for i in range(t)]
    return diag, u, v


# ---------------------------------------------------------------------------
# Kernels, solves, lattices


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Integral kernel basis as columns (dense transform route; small
    matrices only)."""
    sf = smith_normal_form(m, keep_transforms=True)
    r = sf.rank
    vt = sf.right  # ncols x ncols
    n = m.ncols
    cols = [[vt[i][j] for i in range(n)] for j in range(r, n)]
    ri, ci, vi = [], [], []
    for j, col in enumerate(cols):
        for i, x in enumerate(col):
            if x:
                ri.append(i)
                ci.append(j)
                vi.append(x)
    return IntMatrix(n, n - r, ri, ci, vi)


def solve(m: IntMatrix, b) -> list[int] | None:
    """One integral solution of M x = b, or None."""
    sf = smith_normal_form(m, keep_transforms=True)
    ub = [sum(sf.left[i][k] * b[k] for k in range(m.nrows))
          for i in range(m.nrows)]
    y = [0] * m.ncols
    for i in range(m.nrows):
        d = sf.diagonal[i] if i < len(sf.diagonal) else 0
        if d:
            if ub[i] % d:
                return None
            if i < m.ncols:
                y[i] = ub[i] // d
        elif ub[i]:
            return None
    return [sum(sf.right[i][k] * y[k] for k in range(m.ncols))
            for i in range(m.ncols)]


class _LatticeCoords:
    """Coordinates on the column lattice of a matrix, via its Smith form."""

    def __init__(self, m: IntMatrix):
        self.sf = smith_normal_form(m, keep_transforms=True)
        self.nrows = m.nrows
        self.rank = self.sf.rank

    def coords(self, vec):
        """Coordinates of vec in the lattice basis, or None if outside."""
        u = self.sf.left
        out = []
        for i in range(self.nrows):
            w = sum(u[i][k] * vec[k] for k in range(self.nrows))
            d = self.sf.diagonal[i] if i < len(self.sf.diagonal) else 0
            if d:
                if w % d:
                    return None
                out.append(w // d)
            elif w:
                return None
        return out[:self.rank]


def lattice_quotient(numerator: IntMatrix, denominator: IntMatrix
                     ) -> AbelianGroup:
    """span(numerator columns) / span(denominator columns) as an abelian
    group.  Raises if the denominator is not inside the numerator lattice."""
    coords = _LatticeCoords(numerator)
    r = coords.rank
    den = denominator.columns_dense()
    ri, ci, vi = [], [], []
    for j, col in enumerate(den):
        c = coords.coords(col)
        if c is None:
            raise ValueError("denominator lattice not inside numerator")
        for i, x in enumerate(c):
            if x:
                ri.append(i)
                ci.append(j)
                vi.append(x)
    cmat = IntMatrix(r, denominator.ncols, ri, ci, vi)
    sf = smith_normal_form(cmat)
    return AbelianGroup.from_cyclic_orders(
        [0] * (r - sf.rank) + list(sf.nontrivial))


# ---------------------------------------------------------------------------
# Homology of complexes


def homology_at(d_in: IntMatrix, d_out: IntMatrix) -> AbelianGroup:
    """ker(d_out)/im(d_in) at a position of free modules.

    d_in maps into Z^c, d_out maps out of Z^c.  The composition is checked.
    Rank is c - rank(d_out) - rank(d_in); torsion equals the nontrivial
    invariant factors of d_in, since ker(d_out) is a direct summand
    containing im(d_in) and Z^c / ker(d_out) is free.
    """
    c = d_in.nrows
    if d_out.ncols != c:
        raise ValueError("chain position mismatch")
    if not d_out.matmul(d_in).is_zero:
        raise ValueError("composition d_out . d_in is nonzero")
    sf = smith_normal_form(d_in)
    # rank sandwich: im(d_in) <= ker(d_out) (composition checked above)
    # gives rank(d_out) <= c - rank(d_in), and the GF(2) rank is a lower
    # bound; when the two meet, the integer elimination of d_out (often
    # the largest matrix present) is certified unnecessary
    upper = c - sf.rank
    if mod2_rank(d_out, only_cached=True) == upper:
        rank_out = upper
    else:
        rank_out = rank(d_out)
    free = c - rank_out - sf.rank
    return AbelianGroup.from_cyclic_orders(
        [0] * free + list(sf.nontrivial))


def presented_homology_at(d_in: IntMatrix, rel_here: IntMatrix,
                          d_out: IntMatrix, rel_next: IntMatrix
                          ) -> AbelianGroup:
    """Homology at a presented position (Z^k mod rel_here columns).

    d_in and d_out act on generators and must respect relations; the cycle
    lattice is the projection of ker[d_out | rel_next] and the boundary
    lattice is spanned by the d_in and rel_here columns.
    """
    k = rel_here.nrows
    if d_in.nrows != k or d_out.ncols != k:
        raise ValueError("chain position mismatch")
    comp = d_out.matmul(d_in)
    for col in comp.columns_dense():
        if solve(rel_next, col) is None:
            raise ValueError("composition nonzero modulo relations")
    stacked = d_out.hstack(rel_next)
    ker = kernel_basis(stacked)
    # cycle lattice: x-projection of the kernel, plus the relations
    proj = IntMatrix(
        k, ker.ncols,
        [r for r, c, v in zip(ker.rows, ker.cols, ker.vals) if r < k],
        [c for r, c, v in zip(ker.rows, ker.cols, ker.vals) if r < k],
        [v for r, c, v in zip(ker.rows, ker.cols, ker.vals) if r < k])
    numerator = proj.hstack(rel_here)
    denominator = d_in.hstack(rel_here)
    return lattice_quotient(numerator, denominator)


# ---------------------------------------------------------------------------
# Mod-2 interface


_MOD2_RANK_CACHE: dict = {}


def mod2_rank(m: IntMatrix, only_cached=False) -> int | None:
    """Rank over GF(2); with only_cached, return a previously computed
    value or None without eliminating."""
    cached = _MOD2_RANK_CACHE.get(m)
    if cached is not None or only_cached:
        return cached
    npiv, _, _, _ = kernels.unit_pivot_phase(
        m.nrows, m.ncols, m.rows, m.cols, m.vals, mod2=True)
    while len(_MOD2_RANK_CACHE) >= 8:
        _MOD2_RANK_CACHE.pop(next(iter(_MOD2_RANK_CACHE)))
    _MOD2_RANK_CACHE[m] = npiv
    return npiv


def mod2_kernel_basis(m: IntMatrix) -> list[int]:
    """Kernel basis over GF(2), one bit integer per basis vector (bit j =
    coefficient of column j)."""
    return gf2.kernel(m.mod2_column_masks())


# ---------------------------------------------------------------------------
# Sparse lattice elimination (no dense transforms)


def _echelon_sparse_rows(rows):
    """Row-echelon a list of sparse rows (dicts col -> value) in place with
    unimodular two-row gcd combinations; returns {pivot col: row index}."""
    pivots = {}
    for idx, row in enumerate(rows):
        while True:
            live = [c for c, v in row.items() if v]
            if not live:
                break
            c = min(live)
            if c not in pivots:
                pivots[c] = idx
                break
            piv = rows[pivots[c]]
            a, b = piv[c], row[c]
            if a and b % a == 0:
                q = b // a
                for cc, v in piv.items():
                    row[cc] = row.get(cc, 0) - q * v
                continue
            g, x, y = _gcdex(a, b)
            ua, ub = a // g, b // g
            keys = set(piv) | set(row)
            for cc in keys:
                pv, rv = piv.get(cc, 0), row.get(cc, 0)
                piv[cc] = x * pv + y * rv
                row[cc] = ua * rv - ub * pv
    return pivots


def integer_kernel(m: IntMatrix) -> list[list[int]]:
    """Saturated basis of the integral kernel of m, as coordinate vectors
    of length m.ncols.  Works row-elimination on [m^T | I], so only the
    column count drives the cost; suitable for tall sparse matrices."""
    cols = {}
    for r, c, v in zip(m.rows, m.cols, m.vals):
        cols.setdefault(c, {})[r] = v
    rows = []
    for j in range(m.ncols):
        row = dict(cols.get(j, {}))
        row[m.nrows + j] = 1
        rows.append(row)
    _echelon_sparse_rows(rows)
    out = []
    for row in rows:
        if any(c < m.nrows and v for c, v in row.items()):
            continue
        vec = [0] * m.ncols
        for c, v in row.items():
            if v:
                vec[c - m.nrows] = v
        out.append(vec)
    return out


class ColumnLattice:
    """Membership tests against the lattice spanned by a matrix's columns,
    via a one-time sparse row echelon of the transpose."""

    def __init__(self, m: IntMatrix):
        self.nrows = m.nrows
        cols = {}
        for r, c, v in zip(m.rows, m.cols, m.vals):
            cols.setdefault(c, {})[r] = v
        rows = [dict(cols[j]) for j in sorted(cols)]
        pivots = _echelon_sparse_rows(rows)
        self._pivot_rows = sorted(
            ((c, rows[i]) for c, i in pivots.items()))

    def reduce(self, vec):
        """Remainder of vec after integral reduction by the lattice."""
        vec = list(vec)
        for c, row in self._pivot_rows:
            if vec[c]:
                v = row[c]
                if vec[c] % v:
                    break
                q = vec[c] // v
                for cc, rv in row.items():
                    if rv:
                        vec[cc] -= q * rv
        return vec

    def contains(self, vec):
        return not any(self.reduce(vec))

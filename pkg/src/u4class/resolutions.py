"""Truncated free resolutions of the trivial module over the group ring.

Three constructions: the normalized bar resolution (any group), the
2-periodic resolution (cyclic groups), and tensor products of resolutions
(direct products).  The latter two keep direct-product groups of order up
to ~100 inside the feasibility bound that the bar resolution would blow.
"""

from __future__ import annotations

import os

import numpy as np

from .groups import FiniteGroup
from .linalg import IntMatrix
from .modules import GModule

__all__ = [
    "FeasibilityError",
    "Resolution",
    "BarResolution",
    "PeriodicResolution",
    "TensorResolution",
    "RelabeledResolution",
    "bar_resolution",
    "periodic_resolution",
    "default_resolution",
    "max_generators",
]

_ENV_BOUND = "U4CLASS_MAX_GENERATORS"
_DEFAULT_BOUND = 10**6


class FeasibilityError(RuntimeError):
    """A computation exceeds the configured feasibility bound."""


def max_generators() -> int:
    value = os.environ.get(_ENV_BOUND)
    return int(value) if value else _DEFAULT_BOUND


class Resolution:
    """Truncated free resolution: modules F_0..F_{N+1} over Z[G] with
    boundaries d_n: F_n -> F_{n-1} for 1 <= n <= N+1.

    Boundaries are stored blockwise: blocks(n) maps (row_gen, col_gen) to a
    dict {group element -> integer coefficient}.
    """

    group: FiniteGroup
    degree: int
    ranks: list[int]

    def rank(self, n):
        return self.ranks[n] if 0 <= n <= self.degree + 1 else 0

    def blocks(self, n) -> dict:
        raise NotImplementedError

    # -- matrix assembly ----------------------------------------------------

    def coboundary_matrix(self, module: GModule, n) -> IntMatrix:
        """delta^n: Hom(F_n, M) -> Hom(F_{n+1}, M) as an integer matrix on
        generator coordinates (relations are the caller's concern)."""
        if n < 0:
            return IntMatrix.zeros(self.rank(0) * module.ngens, 0)
        cache = getattr(self, "_cob_cache", None)
        if cache is None:
            cache = self._cob_cache = {}
        key = (module, n)
        if key not in cache:
            cache[key] = self._build_coboundary(module, n)
        return cache[key]

    def _build_coboundary(self, module, n):
        flipped = {(col, row): coeffs
                   for (row, col), coeffs in self.blocks(n + 1).items()}
        return self._hom_matrix(flipped, module,
                                self.rank(n + 1), self.rank(n),
                                inverse=False)

    def chain_matrix(self, module: GModule, n) -> IntMatrix:
        """d_n tensored with M: (M x F_n)_G -> (M x F_{n-1})_G."""
        if n < 1:
            return IntMatrix.zeros(0, self.rank(0) * module.ngens)
        return self._hom_matrix(self.blocks(n), module, self.rank(n - 1),
                                self.rank(n), inverse=True)

    def _hom_matrix(self, blocks, module, nrow_gens, ncol_gens, inverse):
        k = module.ngens
        rows, cols, vals = [], [], []
        for (rg, cg), coeffs in blocks.items():
            acc = [[0] * k for _ in range(k)]
            for g, c in coeffs.items():
                act = module.actions[self.group.inverse(g) if inverse else g]
                for i in range(k):
                    for j in range(k):
                        acc[i][j] += c * act[i][j]
            for i in range(k):
                for j in range(k):
                    if acc[i][j]:
                        rows.append(rg * k + i)
                        cols.append(cg * k + j)
                        vals.append(acc[i][j])
        return IntMatrix(nrow_gens * k, ncol_gens * k, rows, cols, vals)

    # -- verification -------------------------------------------------------

    def verify(self):
        """Check d d = 0 in all available degrees and the augmentation."""
        for n in range(2, self.degree + 2):
            self._dd_check(n)
        # augmentation: eps(d_1 e) = 0 for every generator of F_1
        sums = {}
        for (_, cg), coeffs in self.blocks(1).items():
            sums[cg] = sums.get(cg, 0) + sum(coeffs.values())
        if any(sums.get(cg, 0) for cg in range(self.rank(1))):
            raise ValueError("augmentation of d_1 is nonzero")
        if self.rank(0) < 1:
            raise ValueError("augmentation cannot surject")
        return True

    def _dd_check(self, n):
        mul = self.group.multiply
        outer = self.blocks(n)
        inner = self.blocks(n - 1)
        acc = {}
        for (mid, cg), coeffs1 in outer.items():
            for (rg, mid2), coeffs2 in inner.items():
                if mid2 != mid:
                    continue
                for g1, c1 in coeffs1.items():
                    for g2, c2 in coeffs2.items():
                        key = (rg, cg, mul(g1, g2))
                        acc[key] = acc.get(key, 0) + c1 * c2
        if any(acc.values()):
            raise ValueError(f"d_{n-1} d_{n} != 0")


# ---------------------------------------------------------------------------
# Periodic resolution for cyclic groups


class PeriodicResolution(Resolution):
    """All ranks 1; boundaries alternate t-1 and the norm element."""

    def __init__(self, group: FiniteGroup, degree: int):
        if not group.is_cyclic:
            raise ValueError(f"{group.name} is not cyclic")
        self.group = group
        self.degree = degree
        self.ranks = [1] * (degree + 2)
        self.generator = group.cyclic_generator()
        self._powers = [0]
        for _ in range(group.order - 1):
            self._powers.append(group.multiply(self._powers[-1],
                                               self.generator))

    def blocks(self, n):
        if not 1 <= n <= self.degree + 1:
            raise ValueError(f"no boundary in degree {n}")
        if n % 2 == 1:
            coeffs = {self.generator: 1, 0: -1}
            if self.group.order == 1:
                coeffs = {0: 0}
        else:
            coeffs = {}
            for p in self._powers:
                coeffs[p] = coeffs.get(p, 0) + 1
        return {(0, 0): dict(coeffs)}


def periodic_resolution(group, degree):
    return PeriodicResolution(group, degree)


# ---------------------------------------------------------------------------
# Normalized bar resolution


class BarResolution(Resolution):
    """Normalized inhomogeneous bar resolution; rank (|G|-1)^n in degree n.

    Generators of F_n are tuples of nonidentity elements, indexed big-endian
    in base |G|-1 with digit = element - 1.
    """

    def __init__(self, group: FiniteGroup, degree: int):
        self.group = group
        self.degree = degree
        m = group.order
        total = sum((m - 1)**n for n in range(degree + 2))
        bound = max_generators()
        if total > bound:
            raise FeasibilityError(
                f"bar resolution of {group.name} to degree {degree} needs "
                f"{total} generators (bound {bound}; set {_ENV_BOUND} to "
                "raise it)")
        self.ranks = [(m - 1)**n for n in range(degree + 2)]

    # face data for d_d: list of (source-kept mask or None, target index
    # array, actor element array or 0, sign)

    def faces(self, d):
        m = self.group.order
        base = m - 1
        r = self.ranks[d]
        idx = np.arange(r, dtype=np.int64)
        digits = np.empty((r, d), dtype=np.int64)
        rest = idx
        for pos in range(d - 1, -1, -1):
            digits[:, pos] = rest % base
            rest = rest // base
        powers = base ** np.arange(d - 1, -1, -1, dtype=np.int64)
        out = []
        # face 0: drop the first entry, first element acts
        target = idx % (base ** (d - 1)) if d >= 1 else idx * 0
        out.append((None, target, digits[:, 0] + 1, 1))
        # middle faces: multiply adjacent entries, drop if identity
        mul = self.group.mul
        for i in range(1, d):
            prod = mul[digits[:, i - 1] + 1, digits[:, i] + 1].astype(
                np.int64)
            keep = prod != 0
            nd = np.delete(digits, i, axis=1).copy()
            nd[:, i - 1] = prod - 1
            target = nd @ powers[1:]
            out.append((keep, target, None, -1 if i % 2 else 1))
        # face d: drop the last entry
        if d >= 1:
            out.append((None, idx // base, None, -1 if d % 2 else 1))
        return out

    def blocks(self, n):
        if not 1 <= n <= self.degree + 1:
            raise ValueError(f"no boundary in degree {n}")
        acc = {}
        for keep, target, actor, sign in self.faces(n):
            r = self.ranks[n]
            for col in range(r):
                if keep is not None and not keep[col]:
                    continue
                g = int(actor[col]) if actor is not None else 0
                block = acc.setdefault((int(target[col]), col), {})
                block[g] = block.get(g, 0) + sign
        return {key: {g: c for g, c in blk.items() if c}
                for key, blk in acc.items()
                if any(blk.values())}

    def _rank_one_matrix(self, signs, n, inverse):
        """Matrix of d_n against a free rank-1 module with the given
        +-1 action values; rows F_{n-1}, cols F_n (chain orientation)."""
        signs = np.asarray(signs, dtype=np.int64)
        inv = self.group.inverse_table
        rows_list, cols_list, vals_list = [], [], []
        r = self.ranks[n]
        col_idx = np.arange(r, dtype=np.int64)
        for keep, target, actor, sign in self.faces(n):
            if actor is None:
                act = np.ones(r, dtype=np.int64)
            else:
                elems = inv[actor] if inverse else actor
                act = signs[elems]
            vals = sign * act
            if keep is not None:
                rows_list.append(target[keep])
                cols_list.append(col_idx[keep])
                vals_list.append(vals[keep])
            else:
                rows_list.append(target)
                cols_list.append(col_idx)
                vals_list.append(vals)
        rows = np.concatenate(rows_list)
        cols = np.concatenate(cols_list)
        vals = np.concatenate(vals_list)
        return _coo_to_intmatrix(self.ranks[n - 1], r, rows, cols, vals)

    def _build_coboundary(self, module, n):
        if module.ngens == 1:
            signs = tuple(a[0][0] for a in module.actions)
            if all(s in (1, -1) for s in signs):
                chain = self._rank_one_matrix(signs, n + 1, inverse=False)
                return chain.transpose()
        return super()._build_coboundary(module, n)

    def chain_matrix(self, module, n):
        if n < 1:
            return IntMatrix.zeros(0, self.rank(0) * module.ngens)
        if module.ngens == 1:
            signs = tuple(a[0][0] for a in module.actions)
            if all(s in (1, -1) for s in signs):
                return self._rank_one_matrix(signs, n, inverse=True)
        return super().chain_matrix(module, n)

    def _dd_check(self, n):
        """Vectorized check that d_{n-1} d_n = 0 over the group ring."""
        mul = self.group.mul
        m = self.group.order
        r2 = self.ranks[n - 2]
        outer = self.faces(n)
        inner = self.faces(n - 1)
        r = self.ranks[n]
        col = np.arange(r, dtype=np.int64)
        keys, weights = [], []
        for keep1, target1, actor1, sign1 in outer:
            if keep1 is None:
                c1, t1 = col, target1
                a1 = actor1 if actor1 is not None else None
            else:
                c1, t1 = col[keep1], target1[keep1]
                a1 = actor1[keep1] if actor1 is not None else None
            g1 = a1 if a1 is not None else np.zeros(len(c1), dtype=np.int64)
            for keep2, target2, actor2, sign2 in inner:
                if keep2 is not None:
                    sel = keep2[t1]
                    cc, tt, gg = c1[sel], target2[t1[sel]], g1[sel]
                    g2 = np.zeros(len(cc), dtype=np.int64)
                else:
                    cc, tt, gg = c1, target2[t1], g1
                    g2 = actor2[t1] if actor2 is not None else \
                        np.zeros(len(cc), dtype=np.int64)
                prod = mul[gg, g2].astype(np.int64)
                keys.append((cc * m + prod) * r2 + tt)
                weights.append(np.full(len(cc), sign1 * sign2,
                                       dtype=np.int64))
        keys = np.concatenate(keys)
        weights = np.concatenate(weights)
        _, inverse = np.unique(keys, return_inverse=True)
        sums = np.bincount(inverse, weights=weights.astype(np.float64))
        if np.any(sums != 0):
            raise ValueError(f"d_{n-1} d_{n} != 0")


def bar_resolution(group, degree):
    return BarResolution(group, degree)


def _coo_to_intmatrix(nrows, ncols, rows, cols, vals):
    from scipy import sparse
    coo = sparse.coo_matrix((vals, (rows, cols)), shape=(nrows, ncols))
    csr = coo.tocsr()
    csr.sum_duplicates()
    coo = csr.tocoo()
    keep = coo.data != 0
    order = np.lexsort((coo.col[keep], coo.row[keep]))
    return IntMatrix(nrows, ncols, coo.row[keep][order].tolist(),
                     coo.col[keep][order].tolist(),
                     coo.data[keep][order].tolist(), canonical=True)


# ---------------------------------------------------------------------------
# Tensor product of resolutions


class TensorResolution(Resolution):
    """Tensor of resolutions of the factors of a direct product group.

    Generators in degree n are triples (i, a, b) with a, b generators of the
    factor resolutions in degrees i and n-i; the boundary is
    d(x o y) = dx o y + (-1)^i x o dy with coefficients embedded along the
    product index (ga, gb) -> ga * |B| + gb.
    """

    def __init__(self, res_a: Resolution, res_b: Resolution,
                 group: FiniteGroup):
        if group.product_factors is None:
            raise ValueError("group was not built as a direct product")
        fa, fb = group.product_factors
        if fa.order != res_a.group.order or fb.order != res_b.group.order:
            raise ValueError("factor resolutions do not match the product")
        self.group = group
        self.res_a = res_a
        self.res_b = res_b
        self.degree = min(res_a.degree, res_b.degree)
        self._gens = []
        self._index = []
        for n in range(self.degree + 2):
            gens = []
            for i in range(n + 1):
                for a in range(res_a.rank(i)):
                    for b in range(res_b.rank(n - i)):
                        gens.append((i, a, b))
            self._gens.append(gens)
            self._index.append({g: t for t, g in enumerate(gens)})
        self.ranks = [len(g) for g in self._gens]

    def gens(self, n):
        return self._gens[n]

    def gen_index(self, n, gen):
        return self._index[n][gen]

    def blocks(self, n):
        if not 1 <= n <= self.degree + 1:
            raise ValueError(f"no boundary in degree {n}")
        nb = self.res_b.group.order
        acc = {}

        def add(row, col, elem, coeff):
            block = acc.setdefault((row, col), {})
            block[elem] = block.get(elem, 0) + coeff

        blocks_a = {i: self.res_a.blocks(i) for i in range(1, n + 1)}
        blocks_b = {j: self.res_b.blocks(j) for j in range(1, n + 1)}
        for col, (i, a, b) in enumerate(self._gens[n]):
            if i >= 1:
                for (ra, ca), coeffs in blocks_a[i].items():
                    if ca != a:
                        continue
                    row = self._index[n - 1][(i - 1, ra, b)]
                    for ga, c in coeffs.items():
                        add(row, col, ga * nb, c)
            j = n - i
            if j >= 1:
                sign = -1 if i % 2 else 1
                for (rb, cb), coeffs in blocks_b[j].items():
                    if cb != b:
                        continue
                    row = self._index[n - 1][(i, a, rb)]
                    for gb, c in coeffs.items():
                        add(row, col, gb, sign * c)
        return {key: {g: c for g, c in blk.items() if c}
                for key, blk in acc.items() if any(blk.values())}

    def factor_leaves(self):
        """Flattened (leaf resolution, index offset multiplier) list; the
        element index of a product is sum of leaf indices times offsets."""
        out = []
        for res, other_size in ((self.res_a, self.res_b.group.order),
                                (self.res_b, 1)):
            if isinstance(res, TensorResolution):
                for leaf, off in res.factor_leaves():
                    out.append((leaf, off * other_size))
            else:
                out.append((res, other_size))
        return out


# ---------------------------------------------------------------------------
# Transport along an isomorphism


class RelabeledResolution(Resolution):
    """A resolution transported along a group isomorphism.

    Blocks of the inner resolution with every group element relabeled by
    the isomorphism; lets abelian groups without direct-product provenance
    (e.g. extracted subgroups) reuse periodic/tensor resolutions.
    """

    def __init__(self, inner: Resolution, group: FiniteGroup, iso):
        iso = np.asarray(iso, dtype=np.int64)
        if len(iso) != group.order or inner.group.order != group.order:
            raise ValueError("isomorphism table has the wrong size")
        if sorted(iso.tolist()) != list(range(group.order)) or iso[0] != 0:
            raise ValueError("relabeling is not a bijection fixing 0")
        if not np.array_equal(iso[inner.group.mul],
                              group.mul[np.ix_(iso, iso)]):
            raise ValueError("relabeling is not an isomorphism")
        self.inner = inner
        self.group = group
        self.degree = inner.degree
        self.ranks = list(inner.ranks)
        self._iso = iso.tolist()

    def blocks(self, n):
        iso = self._iso
        return {key: {iso[g]: c for g, c in coeffs.items()}
                for key, coeffs in self.inner.blocks(n).items()}


def _abelian_tensor_resolution(group: FiniteGroup,
                               degree: int) -> Resolution:
    from .groups import abelian_cyclic_decomposition, cyclic_group
    gens = abelian_cyclic_decomposition(group)
    orders = [group.element_order(g) for g in gens]
    product = cyclic_group(orders[0])
    for o in orders[1:]:
        product = product.direct_product(cyclic_group(o))
    iso = []
    for idx in range(product.order):
        rest, digits = idx, []
        for o in reversed(orders):
            digits.append(rest % o)
            rest //= o
        e = 0
        for g, d in zip(gens, reversed(digits)):
            for _ in range(d):
                e = group.multiply(e, g)
        iso.append(e)
    return RelabeledResolution(default_resolution(product, degree),
                               group, iso)


# ---------------------------------------------------------------------------
# Resolution policy


def default_resolution(group: FiniteGroup, degree: int) -> Resolution:
    """Periodic for cyclic groups, tensor across direct products, a
    relabeled tensor resolution for other abelian groups, bar otherwise
    (subject to the feasibility bound)."""
    if group.is_cyclic:
        return PeriodicResolution(group, degree)
    if group.product_factors is not None:
        fa, fb = group.product_factors
        return TensorResolution(default_resolution(fa, degree),
                                default_resolution(fb, degree), group)
    if group.is_abelian:
        return _abelian_tensor_resolution(group, degree)
    return BarResolution(group, degree)

"""Pure-Python sparse elimination backend.

This is the arbitrary-precision reference implementation of the unit-pivot
phase.  The compiled backend in ``_speedups`` mirrors it with int64
arithmetic and falls back here on overflow.
"""

import heapq

__all__ = ["unit_pivot_phase"]


def unit_pivot_phase(nrows, ncols, row_idx, col_idx, values, mod2=False):
    """Clear +-1 pivots from a sparse integer matrix by unimodular operations.

    Parameters
    ----------
    nrows, ncols : int
        Matrix shape.
    row_idx, col_idx, values : sequences
        Triplet form of the matrix.  Duplicate positions are not allowed.
    mod2 : bool
        If true, work over GF(2); every nonzero entry is then a unit and the
        remainder is empty, so the returned pivot count is the mod-2 rank.

    Returns
    -------
    (npivots, rem_rows, rem_cols, rem_values)
        Number of eliminated pivots plus the triplets of the remaining
        submatrix.  Rank and invariant factors of the input equal npivots
        (as many 1s) plus those of the remainder.

    Each step picks a +-1 entry, clears its column with row operations and
    then drops its row and column; the implicit column operations clearing
    the pivot row only touch the dropped row, so invariant factors are
    preserved.  Pivots are chosen Markowitz-style (small row, then small
    column) to limit fill-in.
    """
    rows = {}
    cols = {}
    for r, c, v in zip(row_idx, col_idx, values):
        if mod2:
            v &= 1
        if not v:
            continue
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)

    heap = []
    for r, d in rows.items():
        heapq.heappush(heap, (len(d), r))

    npivots = 0
    while heap:
        _, r = heapq.heappop(heap)
        prow = rows.get(r)
        if prow is None:
            continue
        best = None
        for c, v in prow.items():
            if mod2 or v == 1 or v == -1:
                score = len(cols[c])
                if best is None or score < best[0]:
                    best = (score, c)
        if best is None:
            continue
        _, pc = best
        u = 1 if mod2 else prow[pc]

        del rows[r]
        for cc in prow:
            cols[cc].discard(r)

        for rr in list(cols[pc]):
            row2 = rows[rr]
            f = row2[pc] * u  # u is its own inverse
            for cc, vv in prow.items():
                nv = row2.get(cc, 0) - f * vv
                if mod2:
                    nv &= 1
                if nv:
                    if cc not in row2:
                        cols[cc].add(rr)
                    row2[cc] = nv
                elif cc in row2:
                    del row2[cc]
                    cols[cc].discard(rr)
            if row2:
                heapq.heappush(heap, (len(row2), rr))
            else:
                del rows[rr]
        npivots += 1

    rem_rows, rem_cols, rem_vals = [], [], []
    for r, d in rows.items():
        for c, v in d.items():
            rem_rows.append(r)
            rem_cols.append(c)
            rem_vals.append(v)
    return npivots, rem_rows, rem_cols, rem_vals

# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled unit-pivot elimination.

Mirrors kernels.pure.unit_pivot_phase with int64 arithmetic.  Raises
OverflowError when entry growth could leave the exact int64 range, at
which point the dispatcher re-runs the call on the pure backend.

Rows are kept as column-sorted vectors and updated by linear merges;
per-column row lists may contain stale indices and are validated by
binary search when used.  This keeps the inner update loop allocation-
free and cache-friendly, which dominates on the fill-heavy bar-
resolution matrices.
"""

from libcpp.algorithm cimport sort
from libcpp.pair cimport pair
from libcpp.queue cimport priority_queue
from libcpp.vector cimport vector

ctypedef long long i64
ctypedef pair[int, i64] Entry

cdef i64 LIMIT_FACTOR = (<i64>1) << 30
cdef i64 LIMIT_SUM = (<i64>1) << 61


cdef inline Py_ssize_t _find_col(vector[Entry]& row, int col) nogil:
    """Index of col in a column-sorted row, or -1."""
    cdef Py_ssize_t lo = 0, hi = <Py_ssize_t>row.size() - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if row[mid].first < col:
            lo = mid + 1
        elif row[mid].first > col:
            hi = mid - 1
        else:
            return mid
    return -1


def unit_pivot_phase(nrows, ncols, row_idx, col_idx, values, mod2=False):
    """See kernels.pure.unit_pivot_phase for the contract."""
    cdef int m = nrows
    cdef int n = ncols
    cdef bint m2 = bool(mod2)
    cdef vector[vector[Entry]] rows = vector[vector[Entry]](m)
    cdef vector[vector[int]] colrows = vector[vector[int]](n)
    cdef vector[int] colcount = vector[int](n, 0)
    cdef vector[char] alive = vector[char](m, <char>0)
    cdef priority_queue[pair[i64, int]] heap
    cdef vector[Entry] prow, merged
    cdef vector[int] cand
    cdef Py_ssize_t k, nnz = len(values), i, j, ni, nj, idx
    cdef size_t k2
    cdef int r, c, rr, cc, pc, npivots = 0
    cdef i64 v, u, f, pv, old, nv, best, sz
    cdef pair[i64, int] top
    cdef object pyv

    for k in range(nnz):
        r = row_idx[k]
        c = col_idx[k]
        pyv = values[k]
        if pyv > LIMIT_SUM or pyv < -LIMIT_SUM:
            raise OverflowError("input entry exceeds compiled range")
        v = pyv
        if m2:
            v = v & 1
        if v == 0:
            continue
        rows[r].push_back(Entry(c, v))
        alive[r] = 1
    for r in range(m):
        if alive[r]:
            sort(rows[r].begin(), rows[r].end())
            for k2 in range(rows[r].size()):
                cc = rows[r][k2].first
                colrows[cc].push_back(r)
                colcount[cc] += 1
            heap.push(pair[i64, int](-<i64>rows[r].size(), r))

    while heap.size() > 0:
        top = heap.top()
        heap.pop()
        r = top.second
        if not alive[r] or <i64>rows[r].size() != -top.first:
            continue
        # unit pivot column with (approximately) fewest live rows
        pc = -1
        best = 0
        u = 1
        for k2 in range(rows[r].size()):
            cc = rows[r][k2].first
            v = rows[r][k2].second
            if m2 or v == 1 or v == -1:
                if pc < 0 or <i64>colcount[cc] < best:
                    best = colcount[cc]
                    pc = cc
                    u = 1 if m2 else v
        if pc < 0:
            continue   # no unit entry now; stays in the remainder

        prow.swap(rows[r])
        alive[r] = 0
        for k2 in range(prow.size()):
            colcount[prow[k2].first] -= 1

        cand.swap(colrows[pc])
        for k2 in range(cand.size()):
            rr = cand[k2]
            if not alive[rr] or rr == r:
                continue
            idx = _find_col(rows[rr], pc)
            if idx < 0:
                continue   # stale column entry
            f = rows[rr][idx].second
            if not m2:
                f = f * u
                if f > LIMIT_FACTOR or f < -LIMIT_FACTOR:
                    raise OverflowError("entry growth exceeds int64")
            merged.clear()
            merged.reserve(rows[rr].size() + prow.size())
            i = 0
            j = 0
            ni = <Py_ssize_t>rows[rr].size()
            nj = <Py_ssize_t>prow.size()
            while i < ni or j < nj:
                if j >= nj or (i < ni and
                               rows[rr][i].first < prow[j].first):
                    merged.push_back(rows[rr][i])
                    i += 1
                elif i >= ni or prow[j].first < rows[rr][i].first:
                    cc = prow[j].first
                    pv = prow[j].second
                    if m2:
                        nv = pv & 1
                    else:
                        if pv > LIMIT_FACTOR or pv < -LIMIT_FACTOR:
                            raise OverflowError(
                                "entry growth exceeds int64")
                        nv = -f * pv
                    if nv != 0:
                        merged.push_back(Entry(cc, nv))
                        colrows[cc].push_back(rr)
                        colcount[cc] += 1
                    j += 1
                else:
                    cc = prow[j].first
                    old = rows[rr][i].second
                    pv = prow[j].second
                    if m2:
                        nv = (old ^ pv) & 1
                    else:
                        if (pv > LIMIT_FACTOR or pv < -LIMIT_FACTOR
                                or old > LIMIT_SUM or old < -LIMIT_SUM):
                            raise OverflowError(
                                "entry growth exceeds int64")
                        nv = old - f * pv
                    if nv != 0:
                        merged.push_back(Entry(cc, nv))
                    else:
                        colcount[cc] -= 1
                    i += 1
                    j += 1
            rows[rr].swap(merged)
            if rows[rr].size() > 0:
                heap.push(pair[i64, int](-<i64>rows[rr].size(), rr))
            else:
                alive[rr] = 0
        cand.clear()
        npivots += 1

    rem_rows, rem_cols, rem_vals = [], [], []
    for r in range(m):
        if alive[r]:
            for k2 in range(rows[r].size()):
                rem_rows.append(r)
                rem_cols.append(rows[r][k2].first)
                rem_vals.append(rows[r][k2].second)
    return npivots, rem_rows, rem_cols, rem_vals

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels; exact mirror of `conecuts.kernels.pure`.

Works on C int64, so callers must pre-check magnitudes (the dispatch layer in
`conecuts.kernels` does) and fall back to the pure module when bounds are not
provably safe.  Division sticks to Python (floor) semantics: cdivision stays
off, so negative operands round exactly like the reference implementation.
"""

from cpython.array cimport array

COMPILED = True


cdef inline long long _fval(const long long* g, long long gden, int j, int m,
                            const long long* nums, long long den):
    cdef long long s = 0
    cdef int i
    for i in range(m):
        s += g[i] * nums[i]
    cdef long long d = gden * den
    if nums[j - 1] != 0 and s % d == 0:
        return s // d + 1
    return -((-s) // d)


def lattice_points(blocks, box):
    """Integer points of the block intersection within a closed box."""
    cdef long long x0 = box[0], x1 = box[1], y0 = box[2], y1 = box[3]
    cdef int nb = len(blocks)
    cdef array rows_flat = array('q'), rhs_flat = array('q'), ms = array('q')
    cdef list offsets = []
    cdef int off_r = 0, off_b = 0
    for m, rows, rhs in blocks:
        ms.append(m)
        offsets.append((off_r, off_b))
        rows_flat.extend(array('q', rows))
        rhs_flat.extend(array('q', rhs))
        off_r += 2 * m
        off_b += m
    cdef long long[::1] R = rows_flat
    cdef long long[::1] B = rhs_flat
    cdef long long[::1] M = ms
    cdef array offr_a = array('q', [o[0] for o in offsets] or [0])
    cdef array offb_a = array('q', [o[1] for o in offsets] or [0])
    cdef long long[::1] OR_ = offr_a
    cdef long long[::1] OB = offb_a

    cdef list out = []
    cdef long long x, y, axis, total, v
    cdef int bi, i, m_i
    cdef long long ro, bo
    cdef bint ok
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            ok = True
            for bi in range(nb):
                m_i = <int> M[bi]
                ro = OR_[bi]
                bo = OB[bi]
                axis = R[ro + 2 * m_i - 2] * x + R[ro + 2 * m_i - 1] * y - B[bo + m_i - 1]
                if axis < 0:
                    ok = False
                    break
                total = 0
                for i in range(m_i - 1):
                    v = R[ro + 2 * i] * x + R[ro + 2 * i + 1] * y - B[bo + i]
                    total += v * v
                if axis * axis < total:
                    ok = False
                    break
            if ok:
                out.append((x, y))
    return out


def subadditive_violations(gnum, long long gden, int j, us, uds, vs, vds):
    """Count pairs with f(u) + f(v) < f(u+v); returns (count, first_index)."""
    cdef int m = len(gnum)
    cdef Py_ssize_t n = len(uds)
    cdef array g_a = array('q', gnum)
    cdef array us_a = array('q', us)
    cdef array vs_a = array('q', vs)
    cdef array uds_a = array('q', uds)
    cdef array vds_a = array('q', vds)
    cdef long long[::1] G = g_a
    cdef long long[::1] U = us_a
    cdef long long[::1] V = vs_a
    cdef long long[::1] DU = uds_a
    cdef long long[::1] DV = vds_a
    cdef array w_a = array('q', [0] * m)
    cdef long long[::1] W = w_a

    cdef Py_ssize_t k, first = -1
    cdef long long count = 0
    cdef long long fu, fv, fw, du, dv
    cdef int i
    for k in range(n):
        du = DU[k]
        dv = DV[k]
        fu = _fval(&G[0], gden, j, m, &U[k * m], du)
        fv = _fval(&G[0], gden, j, m, &V[k * m], dv)
        for i in range(m):
            W[i] = U[k * m + i] * dv + V[k * m + i] * du
        fw = _fval(&G[0], gden, j, m, &W[0], du * dv)
        if fu + fv < fw:
            count += 1
            if first < 0:
                first = k
    return count, first


def monotone_violations(gnum, long long gden, int j, us, uds, vs, vds):
    """Count pairs with f(u) < f(v)."""
    cdef int m = len(gnum)
    cdef Py_ssize_t n = len(uds)
    cdef array g_a = array('q', gnum)
    cdef array us_a = array('q', us)
    cdef array vs_a = array('q', vs)
    cdef array uds_a = array('q', uds)
    cdef array vds_a = array('q', vds)
    cdef long long[::1] G = g_a
    cdef long long[::1] U = us_a
    cdef long long[::1] V = vs_a
    cdef long long[::1] DU = uds_a
    cdef long long[::1] DV = vds_a

    cdef Py_ssize_t k, first = -1
    cdef long long count = 0
    cdef long long fu, fv
    for k in range(n):
        fu = _fval(&G[0], gden, j, m, &U[k * m], DU[k])
        fv = _fval(&G[0], gden, j, m, &V[k * m], DV[k])
        if fu < fv:
            count += 1
            if first < 0:
                first = k
    return count, first


def soc_contains_batch(vecs, int m):
    """Cone membership for n integer vectors packed in one flat sequence."""
    cdef array vs_a = array('q', vecs)
    cdef long long[::1] V = vs_a
    cdef Py_ssize_t n = len(vecs) // m
    cdef list out = []
    cdef Py_ssize_t k
    cdef int i
    cdef long long axis, total, c
    for k in range(n):
        axis = V[k * m + m - 1]
        if axis < 0:
            out.append(False)
            continue
        total = 0
        for i in range(m - 1):
            c = V[k * m + i]
            total += c * c
        out.append(axis * axis >= total)
    return out

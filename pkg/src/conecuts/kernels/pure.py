"""Pure-Python integer kernels.

Reference implementations of the hot loops; the compiled module in
`_speedups.pyx` mirrors these exactly.  All inputs are pre-integerized by the
callers (denominators cleared), so every operation below is plain integer
arithmetic and remains exact at any magnitude.

Data layout shared with the compiled kernels:

* a block is (m, rows, rhs): rows is a flat tuple of 2*m ints (row-major m x 2
  matrix A), rhs a tuple of m ints (b); a point x is in the block iff
  v = A x - b lies in the second-order cone with axis v[m-1];
* a gamma function is (gnum, gden, j): gnum the integer numerators of gamma,
  gden the positive common denominator, j the 1-based tracked coordinate;
* sample vectors come as flat int tuples with one positive denominator per
  vector; f values are always integers, so property checks compare ints.
"""

COMPILED = False


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def lattice_points(blocks, box):
    """Integer points of the intersection of the blocks within a closed box.

    blocks: sequence of (m, rows, rhs) integer triples.
    box: (x0, x1, y0, y1) with x0 <= x1, y0 <= y1.
    Returns a list of (x, y) tuples in row-major scan order.
    """
    x0, x1, y0, y1 = box
    out = []
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            ok = True
            for m, rows, rhs in blocks:
                axis = rows[2 * m - 2] * x + rows[2 * m - 1] * y - rhs[m - 1]
                if axis < 0:
                    ok = False
                    break
                total = 0
                for i in range(m - 1):
                    v = rows[2 * i] * x + rows[2 * i + 1] * y - rhs[i]
                    total += v * v
                if axis * axis < total:
                    ok = False
                    break
            if ok:
                out.append((x, y))
    return out


def _f_value(gnum, gden, j, nums, den) -> int:
    """Integer value of the step function at nums/den (den > 0)."""
    s = 0
    for g, n in zip(gnum, nums):
        s += g * n
    d = gden * den
    if nums[j - 1] != 0 and s % d == 0:
        return s // d + 1
    return _ceil_div(s, d)


def subadditive_violations(gnum, gden, j, us, uds, vs, vds):
    """Count pairs with f(u) + f(v) < f(u+v); returns (count, first_index).

    us, vs: flat int tuples of length n*m; uds, vds: per-vector denominators.
    """
    m = len(gnum)
    n = len(uds)
    count, first = 0, -1
    for k in range(n):
        un = us[k * m : (k + 1) * m]
        vn = vs[k * m : (k + 1) * m]
        du, dv = uds[k], vds[k]
        fu = _f_value(gnum, gden, j, un, du)
        fv = _f_value(gnum, gden, j, vn, dv)
        wn = tuple(a * dv + b * du for a, b in zip(un, vn))
        fw = _f_value(gnum, gden, j, wn, du * dv)
        if fu + fv < fw:
            count += 1
            if first < 0:
                first = k
    return count, first


def monotone_violations(gnum, gden, j, us, uds, vs, vds):
    """Count pairs with f(u) < f(v); callers arrange u >= v in the cone order."""
    m = len(gnum)
    n = len(uds)
    count, first = 0, -1
    for k in range(n):
        fu = _f_value(gnum, gden, j, us[k * m : (k + 1) * m], uds[k])
        fv = _f_value(gnum, gden, j, vs[k * m : (k + 1) * m], vds[k])
        if fu < fv:
            count += 1
            if first < 0:
                first = k
    return count, first


def soc_contains_batch(vecs, m):
    """Cone membership for n integer vectors packed in one flat tuple."""
    n = len(vecs) // m
    out = []
    for k in range(n):
        axis = vecs[k * m + m - 1]
        if axis < 0:
            out.append(False)
            continue
        total = 0
        for i in range(m - 1):
            c = vecs[k * m + i]
            total += c * c
        out.append(axis * axis >= total)
    return out

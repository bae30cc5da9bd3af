"""Kernel dispatch: compiled extension when available and provably safe.

The compiled module computes in C int64; `safe_*` bounds below certify that no
intermediate can overflow before we hand work to it.  Anything unbounded or
oversized runs on the pure-Python module, which uses arbitrary-precision ints
with identical semantics.  Set CONECUTS_PURE_KERNELS=1 to force the fallback.
"""

import os

from conecuts.kernels import pure

if os.environ.get("CONECUTS_PURE_KERNELS"):
    _impl = pure
else:
    try:
        from conecuts.kernels import _speedups as _impl
    except ImportError:
        _impl = pure

COMPILED = _impl.COMPILED

_I64_MAX = 2**62  # one bit of headroom under the true limit


def backend_name() -> str:
    return "compiled" if COMPILED else "pure"


def _blocks_safe(blocks, box) -> bool:
    mx = max(abs(box[0]), abs(box[1]))
    my = max(abs(box[2]), abs(box[3]))
    for m, rows, rhs in blocks:
        bounds = []
        for i in range(m):
            b = abs(rows[2 * i]) * mx + abs(rows[2 * i + 1]) * my + abs(rhs[i])
            bounds.append(b)
        if any(b * b >= _I64_MAX for b in bounds):
            return False
        if sum(b * b for b in bounds[:-1]) >= _I64_MAX:
            return False
    return True


def lattice_points(blocks, box):
    blocks = [(m, tuple(rows), tuple(rhs)) for m, rows, rhs in blocks]
    if _impl is not pure and _blocks_safe(blocks, box):
        return _impl.lattice_points(blocks, box)
    return pure.lattice_points(blocks, box)


def _samples_safe(gnum, gden, us, uds, vs, vds) -> bool:
    m = len(gnum)
    gmax = max(abs(g) for g in gnum) or 1
    nmax = max(map(abs, us + vs), default=0) or 1
    dmax = max(max(uds, default=1), max(vds, default=1))
    # worst case inside f(u+v): sum of m products g_i * (u_i*dv + v_i*du)
    if m * gmax * (2 * nmax * dmax) >= _I64_MAX:
        return False
    if gden * dmax * dmax >= _I64_MAX:
        return False
    return True


def subadditive_violations(gnum, gden, j, us, uds, vs, vds):
    if _impl is not pure and _samples_safe(gnum, gden, us, uds, vs, vds):
        return _impl.subadditive_violations(gnum, gden, j, us, uds, vs, vds)
    return pure.subadditive_violations(gnum, gden, j, us, uds, vs, vds)


def monotone_violations(gnum, gden, j, us, uds, vs, vds):
    if _impl is not pure and _samples_safe(gnum, gden, us, uds, vs, vds):
        return _impl.monotone_violations(gnum, gden, j, us, uds, vs, vds)
    return pure.monotone_violations(gnum, gden, j, us, uds, vs, vds)


def soc_contains_batch(vecs, m):
    if _impl is not pure and all(abs(c) < 2**30 for c in vecs):
        return _impl.soc_contains_batch(vecs, m)
    return pure.soc_contains_batch(vecs, m)

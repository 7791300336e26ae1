# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bit kernels (64-bit words).

Same contracts as ``_pykernels``; callers must keep polynomial degrees and
tuple widths within 64 bits.  ``lcarev._kernels`` does that dispatch.
"""

from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memcpy, memset
from libc.stdint cimport uint64_t, uint32_t, uint8_t

ctypedef uint64_t u64


cdef extern from *:
    int __builtin_parityll(unsigned long long) nogil


cdef inline u64 _low_mask(int deg) nogil:
    return (<u64>0xFFFFFFFFFFFFFFFF) >> (64 - deg)


cdef inline u64 _low_bits(f, int deg):
    # mask as a Python int first; a C-level 1 << deg overflows past 31
    return <u64>(f & 0xFFFFFFFFFFFFFFFF) & _low_mask(deg)


cdef inline u64 _mulmod(u64 a, u64 b, u64 flow, u64 hi, u64 mask) nogil:
    cdef u64 r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        if a & hi:
            a = ((a << 1) ^ flow) & mask
        else:
            a = a << 1
    return r


def mulmod(a, b, f, int deg):
    cdef u64 mask = _low_mask(deg)
    cdef u64 hi = (<u64>1) << (deg - 1)
    cdef u64 flow = _low_bits(f, deg)
    return _mulmod(<u64>a, <u64>b, flow, hi, mask)


def powmod(a, e, f, int deg):
    cdef u64 mask = _low_mask(deg)
    cdef u64 hi = (<u64>1) << (deg - 1)
    cdef u64 flow = _low_bits(f, deg)
    cdef u64 base = <u64>a
    cdef u64 r = 1
    cdef bytes eb
    cdef const unsigned char* p
    cdef Py_ssize_t i, nbytes
    cdef int j
    cdef unsigned char byte
    if e == 0:
        return 1
    nbytes = (e.bit_length() + 7) // 8
    eb = e.to_bytes(nbytes, "big")
    p = eb
    for i in range(nbytes):
        byte = p[i]
        for j in range(7, -1, -1):
            r = _mulmod(r, r, flow, hi, mask)
            if (byte >> j) & 1:
                r = _mulmod(r, base, flow, hi, mask)
    return r


def sqr_chain(a, long long k, f, int deg):
    cdef u64 mask = _low_mask(deg)
    cdef u64 hi = (<u64>1) << (deg - 1)
    cdef u64 flow = _low_bits(f, deg)
    cdef u64 r = <u64>a
    cdef long long i
    with nogil:
        for i in range(k):
            r = _mulmod(r, r, flow, hi, mask)
    return r


def order_scan(f, int deg, long long limit):
    cdef u64 mask = _low_mask(deg)
    cdef u64 hi = (<u64>1) << (deg - 1)
    cdef u64 flow = _low_bits(f, deg)
    cdef u64 r
    cdef long long k = 1
    if deg > 1:
        r = 2
    else:
        r = flow
    with nogil:
        while k <= limit:
            if r == 1:
                break
            if r & hi:
                r = ((r << 1) ^ flow) & mask
            else:
                r = r << 1
            k += 1
    if k > limit:
        return 0
    return k


def dfa_scan(coef_mask, int d, int rR, long long max_steps, bint want_residues):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << rR
    cdef u64 cm = <u64>coef_mask
    cdef u64 full = _low_mask(d)
    cdef u64 pmask = (<u64>size) - 1
    cdef u64* node = <u64*>malloc(size * sizeof(u64))
    cdef uint32_t* stamp = <uint32_t*>calloc(size, sizeof(uint32_t))
    cdef Py_ssize_t i
    cdef long long step = 0
    cdef uint32_t tag = 0
    cdef bint back, ok
    cdef u64 t
    reversible = [0] if want_residues else []
    if node == NULL or stamp == NULL:
        free(node)
        free(stamp)
        raise MemoryError()
    try:
        for i in range(size):
            node[i] = <u64>i
        while step < max_steps:
            step += 1
            with nogil:
                back = True
                for i in range(size):
                    t = node[i]
                    t = ((t << 1) | <u64>__builtin_parityll(t & cm)) & full
                    node[i] = t
                    if t != <u64>i:
                        back = False
            if back:
                return step, reversible
            if want_residues:
                tag += 1
                if tag == 0:
                    memset(stamp, 0, size * sizeof(uint32_t))
                    tag = 1
                ok = True
                with nogil:
                    for i in range(size):
                        t = node[i] & pmask
                        if stamp[t] == tag:
                            ok = False
                            break
                        stamp[t] = tag
                if ok:
                    reversible.append(step)
        return -1, reversible
    finally:
        free(node)
        free(stamp)


cdef int _rank(u64* work, int n, int ncols) nogil:
    cdef int rk = 0
    cdef int col, i, pivot
    cdef u64 bit, p
    for col in range(ncols):
        bit = (<u64>1) << col
        pivot = -1
        for i in range(rk, n):
            if work[i] & bit:
                pivot = i
                break
        if pivot < 0:
            continue
        p = work[pivot]
        work[pivot] = work[rk]
        work[rk] = p
        for i in range(rk + 1, n):
            if work[i] & bit:
                work[i] ^= p
        rk += 1
        if rk == n:
            break
    return rk


def rank(rows, int ncols):
    cdef int n = len(rows)
    cdef u64 buf[64]
    cdef u64 cmask = _low_mask(ncols) if ncols > 0 else 0
    cdef int i
    if n > 64:
        raise ValueError("at most 64 rows")
    for i in range(n):
        buf[i] = (<u64>(rows[i] & 0xFFFFFFFFFFFFFFFF)) & cmask
    return _rank(buf, n, ncols)


def sbp_scan(coef_mask, int d, int rR, rows, long long steps):
    cdef int n = len(rows)
    cdef u64 cm = <u64>coef_mask
    cdef u64 full = _low_mask(d)
    cdef u64 pmask = _low_mask(rR)
    cdef u64 cur[64]
    cdef u64 tmp[64]
    cdef long long k
    cdef int i
    cdef u64 t
    if n > 64:
        raise ValueError("at most 64 rows")
    for i in range(n):
        cur[i] = <u64>rows[i]
    flags = bytearray(steps)
    cdef unsigned char[:] fv = flags
    with nogil:
        for k in range(steps):
            for i in range(n):
                tmp[i] = cur[i] & pmask
            fv[k] = _rank(tmp, n, rR) == rR
            for i in range(n):
                t = cur[i]
                cur[i] = ((t << 1) | <u64>__builtin_parityll(t & cm)) & full
    return bytes(flags), [cur[i] for i in range(n)]


def det(rows, int n):
    cdef Py_ssize_t words = (n + 63) // 64
    cdef u64* m
    cdef u64* rowp
    cdef u64* piv
    cdef u64 tmpw, bit
    cdef Py_ssize_t i, j, w, col, pivot, wc
    cdef bytes b
    if n == 0:
        return 1
    m = <u64*>malloc(n * words * sizeof(u64))
    if m == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            b = rows[i].to_bytes(words * 8, "little")
            memcpy(&m[i * words], <const char*>b, words * 8)
        with nogil:
            for col in range(n):
                wc = col >> 6
                bit = (<u64>1) << (col & 63)
                pivot = -1
                for i in range(col, n):
                    if m[i * words + wc] & bit:
                        pivot = i
                        break
                if pivot < 0:
                    break
                if pivot != col:
                    for w in range(wc, words):
                        tmpw = m[pivot * words + w]
                        m[pivot * words + w] = m[col * words + w]
                        m[col * words + w] = tmpw
                piv = &m[col * words]
                for i in range(col + 1, n):
                    rowp = &m[i * words]
                    if rowp[wc] & bit:
                        for w in range(wc, words):
                            rowp[w] ^= piv[w]
        return 0 if pivot < 0 else 1
    finally:
        free(m)

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the loops in _kernels_py; same signatures and results."""

from libc.math cimport sqrt

ctypedef long long i64


cdef inline i64 isqrt64(i64 n):
    cdef i64 r = <i64>sqrt(<double>n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def imag_reduced_forms(D):
    cdef i64 d = D
    cdef i64 amax = isqrt64((-d) // 3)
    cdef i64 a, b, num, c
    out = []
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - d) & 1:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            out.append((a, b, c))
    return out


def imag_class_number(D):
    cdef i64 d = D
    cdef i64 amax = isqrt64((-d) // 3)
    cdef i64 a, b, num, c, h = 0
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - d) & 1:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            h += 1
    return h


cdef list _real_ideals(i64 d):
    cdef i64 s = isqrt64(d)
    cdef i64 b, N, lo, hi, r, dv, e
    out = []
    b = s if (s - d) % 2 == 0 else s - 1
    while b > 0:
        N = (d - b * b) // 4
        lo = s - b + 1
        hi = s + b
        r = isqrt64(N)
        for dv in range(1, r + 1):
            if N % dv:
                continue
            e = N // dv
            if lo <= 2 * dv <= hi:
                out.append((dv, b))
            if e != dv and lo <= 2 * e <= hi:
                out.append((e, b))
        b -= 2
    return out


def real_reduced_ideals(D):
    return _real_ideals(D)


def real_rho(a, b, D, s):
    cdef i64 aa = a, bb = b, d = D, ss = s
    cdef i64 c = (d - bb * bb) // (4 * aa)
    return c, ss - (ss + bb) % (2 * c)


def real_cycles(D):
    cdef i64 d = D
    cdef i64 s = isqrt64(d)
    ideals = _real_ideals(d)
    cdef Py_ssize_t n = len(ideals)
    index = {f: i for i, f in enumerate(ideals)}
    cid = [-1] * n
    cdef i64 a, b, c
    cdef Py_ssize_t i, j
    cdef int ncyc = 0
    for i in range(n):
        if cid[i] >= 0:
            continue
        a, b = ideals[i]
        j = i
        while cid[j] < 0:
            cid[j] = ncyc
            c = (d - b * b) // (4 * a)
            b = s - (s + b) % (2 * c)
            a = c
            j = index[(a, b)]
        ncyc += 1
    return ideals, cid, ncyc


def real_class_number(D):
    return real_cycles(D)[2]


cdef inline i64 mulmod(i64 a, i64 b, i64 q):
    return <i64>((<unsigned long long>a * <unsigned long long>b) % <unsigned long long>q)


cdef i64 modinv(i64 a, i64 n):
    cdef i64 r0 = n, r1 = a % n, t0 = 0, t1 = 1, qq, tmp
    while r1:
        qq = r0 // r1
        tmp = r0 - qq * r1
        r0 = r1
        r1 = tmp
        tmp = t0 - qq * t1
        t0 = t1
        t1 = tmp
    return t0 % n if t0 >= 0 else (t0 % n + n) % n


cdef void polmul(i64* u, i64* v, i64* out, i64 c2, i64 c1, i64 c0, i64 q):
    cdef i64 p[5]
    cdef int i, j, k
    cdef i64 t
    for i in range(5):
        p[i] = 0
    for i in range(3):
        for j in range(3):
            p[i + j] = (p[i + j] + mulmod(u[i], v[j], q)) % q
    for k in range(4, 2, -1):
        t = p[k]
        if t:
            p[k - 1] = (p[k - 1] + q - mulmod(t, c2, q)) % q
            p[k - 2] = (p[k - 2] + q - mulmod(t, c1, q)) % q
            p[k - 3] = (p[k - 3] + q - mulmod(t, c0, q)) % q
    out[0] = p[0]
    out[1] = p[1]
    out[2] = p[2]


def cubic_has_root(c2, c1, c0, q):
    cdef i64 Q = q
    cdef i64 a2 = c2 % q, a1 = c1 % q, a0 = c0 % q
    cdef i64 x
    if a0 == 0:
        return True
    if Q < 7:
        for x in range(Q):
            if (x * x * x + a2 * x * x + a1 * x + a0) % Q == 0:
                return True
        return False
    cdef i64 res[3]
    cdef i64 base[3]
    cdef i64 tmp[3]
    res[0] = 1; res[1] = 0; res[2] = 0
    base[0] = 0; base[1] = 1; base[2] = 0
    cdef i64 e = Q
    while e:
        if e & 1:
            polmul(res, base, tmp, a2, a1, a0, Q)
            res[0] = tmp[0]; res[1] = tmp[1]; res[2] = tmp[2]
        e >>= 1
        if e:
            polmul(base, base, tmp, a2, a1, a0, Q)
            base[0] = tmp[0]; base[1] = tmp[1]; base[2] = tmp[2]
    from ._kernels_py import _gcd_degree
    return _gcd_degree([res[0], (res[1] - 1) % Q, res[2]], [a0, a1, a2, 1], Q) > 0


def minus_log_mod(u0, u1, m, tmax, prec):
    cdef int s_max = 0
    cdef i64 pw = 3
    while pw <= tmax:
        s_max += 1
        pw *= 3
    cdef int P = prec + s_max
    if P > 19:
        from ._kernels_py import minus_log_mod as slow
        return slow(u0, u1, m, tmax, prec)
    cdef i64 M = 1, target = 1
    cdef int i
    for i in range(P):
        M *= 3
    for i in range(prec):
        target *= 3
    cdef i64 a0 = u0 % M, a1 = u1 % M, mm = m % M
    cdef i64 x = a0, y = a1, nx, ny, total = 0, ys, tp, term, pw3
    cdef i64 t
    cdef int s
    for t in range(1, tmax + 1):
        s = 0
        tp = t
        pw3 = 1
        while tp % 3 == 0:
            tp //= 3
            s += 1
            pw3 *= 3
        ys = (y // pw3) % target
        term = mulmod(ys, modinv(tp, target), target)
        if t % 2:
            total = (total + term) % target
        else:
            total = (total + target - term) % target
        nx = (mulmod(x, a0, M) + M - mulmod(mulmod(mm, y, M), a1, M)) % M
        ny = (mulmod(x, a1, M) + mulmod(y, a0, M)) % M
        x = nx
        y = ny
    return total

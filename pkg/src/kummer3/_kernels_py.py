"""Pure-Python versions of the hot loops; the Cython module mirrors these."""

from math import isqrt


def imag_reduced_forms(D):
    """Reduced forms (a, b, c) of discriminant D < 0: |b| <= a <= c, b >= 0 on the boundary."""
    out = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) & 1:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            out.append((a, b, c))
    return out


def imag_class_number(D):
    return len(imag_reduced_forms(D))


def real_reduced_ideals(D):
    """Reduced ideals [a, (b + sqrt D)/2]: 0 < b < sqrt D, sqrt D - b < 2a < sqrt D + b."""
    s = isqrt(D)
    out = []
    b = s if (s - D) % 2 == 0 else s - 1
    while b > 0:
        N = (D - b * b) // 4
        lo, hi = s - b + 1, s + b  # lo <= 2a <= hi
        r = isqrt(N)
        for d in range(1, r + 1):
            if N % d:
                continue
            e = N // d
            if lo <= 2 * d <= hi:
                out.append((d, b))
            if e != d and lo <= 2 * e <= hi:
                out.append((e, b))
        b -= 2
    return out


def real_rho(a, b, D, s):
    """One reduction step on a reduced ideal; returns the next reduced ideal."""
    c = (D - b * b) // (4 * a)
    two_c = 2 * c
    bb = s - (s + b) % two_c
    return c, bb


def real_cycles(D):
    """(ideals, cycle id per ideal, number of cycles)."""
    s = isqrt(D)
    ideals = real_reduced_ideals(D)
    index = {f: i for i, f in enumerate(ideals)}
    cid = [-1] * len(ideals)
    ncyc = 0
    for i in range(len(ideals)):
        if cid[i] >= 0:
            continue
        a, b = ideals[i]
        j = i
        while cid[j] < 0:
            cid[j] = ncyc
            a, b = real_rho(a, b, D, s)
            j = index[(a, b)]
        ncyc += 1
    return ideals, cid, ncyc


def real_class_number(D):
    return real_cycles(D)[2]


def cubic_has_root(c2, c1, c0, q):
    """Does x^3 + c2 x^2 + c1 x + c0 have a root mod the prime q?"""
    c2 %= q
    c1 %= q
    c0 %= q
    if c0 == 0:
        return True
    if q < 7:
        return any((x * x * x + c2 * x * x + c1 * x + c0) % q == 0 for x in range(q))

    # compute x^q mod f and test gcd(x^q - x, f) != 1
    def mulmod(u, v):
        # u, v are (u0, u1, u2) polynomials of degree <= 2
        p = [0] * 5
        for i in range(3):
            if u[i]:
                for j in range(3):
                    p[i + j] += u[i] * v[j]
        for k in (4, 3):
            t = p[k] % q
            if t:
                p[k - 1] -= t * c2
                p[k - 2] -= t * c1
                p[k - 3] -= t * c0
        return (p[0] % q, p[1] % q, p[2] % q)

    result = (1, 0, 0)
    base = (0, 1, 0)
    e = q
    while e:
        if e & 1:
            result = mulmod(result, base)
        e >>= 1
        if e:
            base = mulmod(base, base)
    g = [result[0], (result[1] - 1) % q, result[2]]
    return _gcd_degree(g, [c0, c1, c2, 1], q) > 0


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _gcd_degree(a, b, q):
    a = _trim([x % q for x in a])
    b = _trim([x % q for x in b])
    while a:
        inv = pow(a[-1], q - 2, q)
        while len(b) >= len(a):
            coef = b[-1] * inv % q
            shift = len(b) - len(a)
            for i in range(len(a)):
                b[shift + i] = (b[shift + i] - coef * a[i]) % q
            _trim(b)
            if not b:
                break
        a, b = b, a
    return len(b) - 1


def minus_log_mod(u0, u1, m, tmax, prec):
    """C1 of the log series of 1 + delta, delta = u0 + u1*sqrt(-m), modulo 3^prec.

    Terms are summed for t = 1..tmax. The caller guarantees that the
    sqrt(-m)-coordinate of delta^t is divisible by 3^v3(t), and chooses the
    working precision so every division by t keeps prec digits.
    """
    s_max = 0
    while 3 ** (s_max + 1) <= tmax:
        s_max += 1
    P = prec + s_max
    M = 3 ** P
    target = 3 ** prec
    u0 %= M
    u1 %= M
    mm = m % M
    x, y = u0, u1
    total = 0
    for t in range(1, tmax + 1):
        s, tp = 0, t
        while tp % 3 == 0:
            tp //= 3
            s += 1
        ys = y // 3 ** s  # exact 3-adically
        term = ys * pow(tp, -1, target) % target
        if t % 2:
            total += term
        else:
            total -= term
        x, y = (x * u0 - mm * y % M * u1) % M, (x * u1 + y * u0) % M
    return total % target

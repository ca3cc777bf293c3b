"""Compiled area-objective peeling engine.

A line-for-line port of :class:`hullpeel.peeler.PeelState` restricted to the
area objective and machine-integer coordinates, compiled with numba.  The
skip lists, kd-tree and heap live in flat int64 arrays; a point's node in a
chain is its own index, so both chains share one index space.

Coordinates must satisfy ``|c| < 2**29``; then every cross product fits in
an int64 and so does every doubled area.  Sensitivities are sums of
shoelace terms whose true values fit, so they come out exact.
"""
from __future__ import annotations

import numpy as np
from numba import njit

MAXL = 32
WALK = 12
COORD_LIMIT = 2**29

ERR_DEGENERATE = 1
ERR_INSIDE = 2
ERR_INVARIANT = 3

# counter slots
C_TANGENT = 0
C_EXTREME = 1
C_RESTORE_CALLS = 2
C_RESTORE_QUERIES = 3
C_ACTIVATIONS = 4
C_ERR = 5
C_MAX_MEMBER = 6
C_HEAP = 7
C_CCOUNT = 8
C_STEP = 9
C_RESTORE_POINTS = 10

# chain status slots, 3 per chain
S_TAIL = 0
S_SIZE = 1
S_LEVELS = 2

_LEAF = 8


# -- predicates ---------------------------------------------------------------

@njit(cache=True, inline="always")
def _gt(X, Y, CNT, mode, qx, qy, a, b):
    # mode 0: a more clockwise-tangent (right); 1: left; 2: extreme in (qx, qy)
    if mode == 2:
        d = qx * (X[a] - X[b]) + qy * (Y[a] - Y[b])
        if d != 0:
            return d > 0
        return qx * (Y[a] - Y[b]) - qy * (X[a] - X[b]) > 0
    d = (X[b] - qx) * (Y[a] - qy) - (Y[b] - qy) * (X[a] - qx)
    if d == 0:
        CNT[C_ERR] = ERR_DEGENERATE
        return False
    if mode == 0:
        return d > 0
    return d < 0


@njit(cache=True, inline="always")
def _d(X, Y, a, b):
    return Y[a] * X[b] - X[a] * Y[b]


# -- skip-list chains ---------------------------------------------------------

@njit(cache=True, inline="always")
def _succ(NX, BASE, ST, H, c, x):
    s = NX[c, BASE[c, x]]
    if s < 0:
        s = NX[c, BASE[c, H]]
    return s


@njit(cache=True, inline="always")
def _pred(PV, BASE, ST, H, c, x):
    p = PV[c, BASE[c, x]]
    if p == H:
        p = ST[3 * c + S_TAIL]
    return p


@njit(cache=True)
def _insert_after(NX, PV, BASE, HT, ST, IN, H, c, x, node):
    h = HT[c, node]
    b = BASE[c, node]
    bx = BASE[c, x]
    nx = NX[c, bx]
    NX[c, b] = nx
    PV[c, b] = x
    NX[c, bx] = node
    if nx < 0:
        ST[3 * c + S_TAIL] = node
    else:
        PV[c, BASE[c, nx]] = node
    p = x
    for lvl in range(1, h):
        while HT[c, p] <= lvl:
            p = PV[c, BASE[c, p] + HT[c, p] - 1]
        bp = BASE[c, p] + lvl
        nx = NX[c, bp]
        NX[c, b + lvl] = nx
        PV[c, b + lvl] = p
        NX[c, bp] = node
        if nx >= 0:
            PV[c, BASE[c, nx] + lvl] = node
    if h > ST[3 * c + S_LEVELS]:
        ST[3 * c + S_LEVELS] = h
    IN[c, node] = 1
    ST[3 * c + S_SIZE] += 1


@njit(cache=True)
def _unlink(NX, PV, BASE, HT, ST, IN, H, c, node):
    b = BASE[c, node]
    if node == ST[3 * c + S_TAIL]:
        p = PV[c, b]
        ST[3 * c + S_TAIL] = -1 if p == H else p
    for lvl in range(HT[c, node]):
        p = PV[c, b + lvl]
        nx = NX[c, b + lvl]
        NX[c, BASE[c, p] + lvl] = nx
        if nx >= 0:
            PV[c, BASE[c, nx] + lvl] = p
    IN[c, node] = 0
    ST[3 * c + S_SIZE] -= 1


@njit(cache=True)
def _last_true(X, Y, CNT, NX, BASE, ST, H, c, kind, mode, qx, qy, first, p0):
    x = H
    for lvl in range(ST[3 * c + S_LEVELS] - 1, -1, -1):
        y = NX[c, BASE[c, x] + lvl]
        while y >= 0:
            if y == first:
                ok = True
            else:
                s = NX[c, BASE[c, y]]
                if s < 0:
                    s = first
                if kind == 0:
                    ok = _gt(X, Y, CNT, mode, qx, qy, s, y) and \
                        not _gt(X, Y, CNT, mode, qx, qy, p0, y)
                else:
                    ok = _gt(X, Y, CNT, mode, qx, qy, s, y) or \
                        not _gt(X, Y, CNT, mode, qx, qy, y, p0)
            if not ok:
                break
            x = y
            y = NX[c, BASE[c, x] + lvl]
    return x


@njit(cache=True)
def _argmax(X, Y, CNT, NX, BASE, ST, H, c, mode, qx, qy):
    first = NX[c, BASE[c, H]]
    second = NX[c, BASE[c, first]]
    if ST[3 * c + S_SIZE] <= 2:
        if second >= 0 and _gt(X, Y, CNT, mode, qx, qy, second, first):
            return second
        return first
    if _gt(X, Y, CNT, mode, qx, qy, second, first):
        x = _last_true(X, Y, CNT, NX, BASE, ST, H, c, 0, mode, qx, qy, first, first)
        return NX[c, BASE[c, x]]
    x = _last_true(X, Y, CNT, NX, BASE, ST, H, c, 1, mode, qx, qy, first, first)
    r = NX[c, BASE[c, x]]
    return r if r >= 0 else first


@njit(cache=True)
def _walk(X, Y, CNT, NX, PV, BASE, ST, H, c, mode, qx, qy, node, limit):
    s = _succ(NX, BASE, ST, H, c, node)
    if _gt(X, Y, CNT, mode, qx, qy, s, node):
        for _ in range(limit):
            node = s
            s = _succ(NX, BASE, ST, H, c, node)
            if not _gt(X, Y, CNT, mode, qx, qy, s, node):
                return node
        return -1
    p = _pred(PV, BASE, ST, H, c, node)
    if _gt(X, Y, CNT, mode, qx, qy, p, node):
        for _ in range(limit):
            node = p
            p = _pred(PV, BASE, ST, H, c, node)
            if not _gt(X, Y, CNT, mode, qx, qy, p, node):
                return node
        return -1
    return node


@njit(cache=True)
def _tangent(X, Y, CNT, NX, PV, BASE, ST, H, c, q, mode, hint):
    CNT[C_TANGENT] += 1
    qx = X[q]
    qy = Y[q]
    first = NX[c, BASE[c, H]]
    if ST[3 * c + S_SIZE] == 1:
        return first
    v = -1
    if hint >= 0 and ST[3 * c + S_SIZE] > 2:
        v = _walk(X, Y, CNT, NX, PV, BASE, ST, H, c, mode, qx, qy, hint, WALK)
    if v < 0:
        v = _argmax(X, Y, CNT, NX, BASE, ST, H, c, mode, qx, qy)
    if _gt(X, Y, CNT, mode, qx, qy, _succ(NX, BASE, ST, H, c, v), v) or \
            _gt(X, Y, CNT, mode, qx, qy, _pred(PV, BASE, ST, H, c, v), v):
        if CNT[C_ERR] == 0:
            CNT[C_ERR] = ERR_INSIDE
    return v


# -- kd-tree over the center points -------------------------------------------

@njit(cache=True)
def _select(PERM, key, lo, hi, k):
    # place the k-th smallest (by key) of PERM[lo:hi] at position k
    while hi - lo > 1:
        mid = (lo + hi) // 2
        # median of three as pivot
        a = key[PERM[lo]]
        b = key[PERM[mid]]
        cc = key[PERM[hi - 1]]
        if (a <= b <= cc) or (cc <= b <= a):
            pv = b
        elif (b <= a <= cc) or (cc <= a <= b):
            pv = a
        else:
            pv = cc
        i = lo
        j = hi - 1
        while i <= j:
            while key[PERM[i]] < pv:
                i += 1
            while key[PERM[j]] > pv:
                j -= 1
            if i <= j:
                t = PERM[i]
                PERM[i] = PERM[j]
                PERM[j] = t
                i += 1
                j -= 1
        if k <= j:
            hi = j + 1
        elif k >= i:
            lo = i
        else:
            return


@njit(cache=True)
def _kd_refresh(X, Y, K, BOX, PERM, LIVE, node):
    # K columns: left, right, lo, hi, parent; BOX columns: minx, maxx, miny, maxy, empty
    left = K[node, 0]
    if left < 0:
        empty = 1
        mnx = mxx = mny = mxy = 0
        for t in range(K[node, 2], K[node, 3]):
            i = PERM[t]
            if LIVE[i]:
                x = X[i]
                y = Y[i]
                if empty:
                    mnx = mxx = x
                    mny = mxy = y
                    empty = 0
                else:
                    if x < mnx:
                        mnx = x
                    if x > mxx:
                        mxx = x
                    if y < mny:
                        mny = y
                    if y > mxy:
                        mxy = y
    else:
        right = K[node, 1]
        el = BOX[left, 4]
        er = BOX[right, 4]
        if el and er:
            empty = 1
            mnx = mxx = mny = mxy = 0
        elif el:
            empty = 0
            mnx, mxx, mny, mxy = BOX[right, 0], BOX[right, 1], BOX[right, 2], BOX[right, 3]
        elif er:
            empty = 0
            mnx, mxx, mny, mxy = BOX[left, 0], BOX[left, 1], BOX[left, 2], BOX[left, 3]
        else:
            empty = 0
            mnx = min(BOX[left, 0], BOX[right, 0])
            mxx = max(BOX[left, 1], BOX[right, 1])
            mny = min(BOX[left, 2], BOX[right, 2])
            mxy = max(BOX[left, 3], BOX[right, 3])
    changed = empty != BOX[node, 4] or mnx != BOX[node, 0] or mxx != BOX[node, 1] \
        or mny != BOX[node, 2] or mxy != BOX[node, 3]
    BOX[node, 0] = mnx
    BOX[node, 1] = mxx
    BOX[node, 2] = mny
    BOX[node, 3] = mxy
    BOX[node, 4] = empty
    return changed


@njit(cache=True)
def _kd_build(X, Y, members, LIVE, LEAF):
    m = members.shape[0]
    cap = 4 * (m // _LEAF + 1) + 4
    K = np.full((cap, 5), -1, dtype=np.int64)
    BOX = np.zeros((cap, 5), dtype=np.int64)
    PERM = members.copy()
    if m == 0:
        return K[:0], BOX[:0], PERM
    stack = np.empty((256, 4), dtype=np.int64)
    sp = 0
    stack[0, 0] = 0
    stack[0, 1] = m
    stack[0, 2] = -1
    stack[0, 3] = 0
    sp = 1
    count = 0
    while sp > 0:
        sp -= 1
        lo = stack[sp, 0]
        hi = stack[sp, 1]
        parent = stack[sp, 2]
        side = stack[sp, 3]
        node = count
        count += 1
        K[node, 0] = -1
        K[node, 1] = -1
        K[node, 2] = lo
        K[node, 3] = hi
        K[node, 4] = parent
        BOX[node, 4] = 1
        if parent >= 0:
            K[parent, side] = node
        if hi - lo <= _LEAF:
            continue
        mnx = mxx = X[PERM[lo]]
        mny = mxy = Y[PERM[lo]]
        for t in range(lo + 1, hi):
            i = PERM[t]
            if X[i] < mnx:
                mnx = X[i]
            if X[i] > mxx:
                mxx = X[i]
            if Y[i] < mny:
                mny = Y[i]
            if Y[i] > mxy:
                mxy = Y[i]
        mid = lo + (hi - lo) // 2
        if mxx - mnx >= mxy - mny:
            _select(PERM, X, lo, hi, mid)
        else:
            _select(PERM, Y, lo, hi, mid)
        stack[sp, 0] = mid
        stack[sp, 1] = hi
        stack[sp, 2] = node
        stack[sp, 3] = 1
        sp += 1
        stack[sp, 0] = lo
        stack[sp, 1] = mid
        stack[sp, 2] = node
        stack[sp, 3] = 0
        sp += 1
    K = K[:count]
    BOX = BOX[:count]
    for node in range(count - 1, -1, -1):
        if K[node, 0] < 0:
            for t in range(K[node, 2], K[node, 3]):
                LEAF[PERM[t]] = node
        _kd_refresh(X, Y, K, BOX, PERM, LIVE, node)
    return K, BOX, PERM


@njit(cache=True, inline="always")
def _kd_bound(BOX, node, nx, ny):
    bx = nx * BOX[node, 1] if nx > 0 else nx * BOX[node, 0]
    by = ny * BOX[node, 3] if ny > 0 else ny * BOX[node, 2]
    return bx + by


@njit(cache=True)
def _kd_best(X, Y, K, BOX, PERM, LIVE, nx, ny, thr, has_thr):
    if K.shape[0] == 0 or BOX[0, 4]:
        return -1
    best = -1
    b0 = 0
    b1 = 0
    stack = np.empty(256, dtype=np.int64)
    stack[0] = 0
    sp = 1
    while sp > 0:
        sp -= 1
        node = stack[sp]
        if BOX[node, 4]:
            continue
        bound = _kd_bound(BOX, node, nx, ny)
        if has_thr and bound <= thr:
            continue
        if best >= 0 and bound < b0:
            continue
        l = K[node, 0]
        if l < 0:
            for t in range(K[node, 2], K[node, 3]):
                i = PERM[t]
                if not LIVE[i]:
                    continue
                dd = nx * X[i] + ny * Y[i]
                if has_thr and dd <= thr:
                    continue
                pp = nx * Y[i] - ny * X[i]
                if best < 0 or dd > b0 or (dd == b0 and pp > b1):
                    best = i
                    b0 = dd
                    b1 = pp
            continue
        r = K[node, 1]
        el = BOX[l, 4]
        er = BOX[r, 4]
        if el:
            if not er:
                stack[sp] = r
                sp += 1
        elif er:
            stack[sp] = l
            sp += 1
        elif _kd_bound(BOX, l, nx, ny) >= _kd_bound(BOX, r, nx, ny):
            stack[sp] = r
            stack[sp + 1] = l
            sp += 2
        else:
            stack[sp] = l
            stack[sp + 1] = r
            sp += 2
    return best


@njit(cache=True)
def _kd_delete(X, Y, K, BOX, PERM, LIVE, LEAF, CNT, i):
    LIVE[i] = 0
    CNT[C_CCOUNT] -= 1
    node = LEAF[i]
    while node >= 0 and _kd_refresh(X, Y, K, BOX, PERM, LIVE, node):
        node = K[node, 4]


@njit(cache=True)
def _beyond(X, Y, K, BOX, PERM, LIVE, CNT, a, b):
    CNT[C_EXTREME] += 1
    nx = -(Y[b] - Y[a])
    ny = X[b] - X[a]
    return _kd_best(X, Y, K, BOX, PERM, LIVE, nx, ny, nx * X[a] + ny * Y[a], True)


@njit(cache=True)
def _bridge(X, Y, K, BOX, PERM, LIVE, LEAF, CNT, a, b, delete, OUT, STK):
    # quickhull between a and b; STK rows: (kind, s, e); kind 1 emits s
    m = 0
    sp = 0
    STK[0, 0] = 0
    STK[0, 1] = a
    STK[0, 2] = b
    sp = 1
    while sp > 0:
        sp -= 1
        kind = STK[sp, 0]
        s = STK[sp, 1]
        e = STK[sp, 2]
        if kind == 1:
            OUT[m] = s
            m += 1
            continue
        z = _beyond(X, Y, K, BOX, PERM, LIVE, CNT, s, e)
        if z < 0:
            continue
        if delete:
            _kd_delete(X, Y, K, BOX, PERM, LIVE, LEAF, CNT, z)
        STK[sp, 0] = 0
        STK[sp, 1] = z
        STK[sp, 2] = e
        STK[sp + 1, 0] = 1
        STK[sp + 1, 1] = z
        STK[sp + 2, 0] = 0
        STK[sp + 2, 1] = s
        STK[sp + 2, 2] = z
        sp += 3
    return m


# -- heap (max value, then min id) --------------------------------------------

@njit(cache=True, inline="always")
def _before(HK, HI, i, j):
    return HK[i] > HK[j] or (HK[i] == HK[j] and HI[i] < HI[j])


@njit(cache=True)
def _hswap(HK, HI, HV, i, j):
    HK[i], HK[j] = HK[j], HK[i]
    HI[i], HI[j] = HI[j], HI[i]
    HV[i], HV[j] = HV[j], HV[i]


@njit(cache=True)
def _hpush(HK, HI, HV, CNT, key, pid, ver):
    i = CNT[C_HEAP]
    CNT[C_HEAP] += 1
    HK[i] = key
    HI[i] = pid
    HV[i] = ver
    while i > 0:
        p = (i - 1) >> 1
        if _before(HK, HI, i, p):
            _hswap(HK, HI, HV, i, p)
            i = p
        else:
            break


@njit(cache=True)
def _hpop(HK, HI, HV, CNT):
    n = CNT[C_HEAP] - 1
    pid = HI[0]
    ver = HV[0]
    CNT[C_HEAP] = n
    if n > 0:
        HK[0] = HK[n]
        HI[0] = HI[n]
        HV[0] = HV[n]
        i = 0
        while True:
            l = 2 * i + 1
            if l >= n:
                break
            m = l
            r = l + 1
            if r < n and _before(HK, HI, r, l):
                m = r
            if _before(HK, HI, m, i):
                _hswap(HK, HI, HV, i, m)
                i = m
            else:
                break
    return pid, ver


# -- static hull --------------------------------------------------------------

@njit(cache=True)
def _hull_cw(X, Y, order, m, OUT):
    # monotone chain over order[:m] (sorted by x then y); clockwise from first
    if m < 3:
        for i in range(m):
            OUT[i] = order[i]
        return m
    buf = np.empty(m + 1, dtype=np.int64)
    top = 0
    for t in range(m):
        p = order[t]
        while top >= 2:
            a = buf[top - 2]
            b = buf[top - 1]
            if (X[b] - X[a]) * (Y[p] - Y[a]) - (Y[b] - Y[a]) * (X[p] - X[a]) >= 0:
                top -= 1
            else:
                break
        buf[top] = p
        top += 1
    k = 0
    for t in range(top - 1):
        OUT[k] = buf[t]
        k += 1
    top = 0
    for t in range(m - 1, -1, -1):
        p = order[t]
        while top >= 2:
            a = buf[top - 2]
            b = buf[top - 1]
            if (X[b] - X[a]) * (Y[p] - Y[a]) - (Y[b] - Y[a]) * (X[p] - X[a]) >= 0:
                top -= 1
            else:
                break
        buf[top] = p
        top += 1
    for t in range(top - 1):
        OUT[k] = buf[t]
        k += 1
    return k


# -- the engine ---------------------------------------------------------------

@njit(cache=True)
def _fresh_arc(X, Y, CNT, NX, PV, BASE, ST, H, node, hs, he):
    if ST[3 + S_SIZE] == 0:
        return -1, -1
    p = _pred(PV, BASE, ST, H, 0, node)
    s = _succ(NX, BASE, ST, H, 0, node)
    xs = _tangent(X, Y, CNT, NX, PV, BASE, ST, H, 1, p, 0, hs)
    if (X[s] - X[p]) * (Y[xs] - Y[p]) - (Y[s] - Y[p]) * (X[xs] - X[p]) <= 0:
        return -1, -1
    xe = _tangent(X, Y, CNT, NX, PV, BASE, ST, H, 1, s, 1, he if he >= 0 else xs)
    return xs, xe


@njit(cache=True)
def _arc_count(NX, BASE, ST, H, MEM, CNT, s, e, delta):
    cnt = 1
    x = s
    MEM[x] += delta
    if MEM[x] > CNT[C_MAX_MEMBER]:
        CNT[C_MAX_MEMBER] = MEM[x]
    while x != e:
        x = _succ(NX, BASE, ST, H, 1, x)
        cnt += 1
        MEM[x] += delta
        if MEM[x] > CNT[C_MAX_MEMBER]:
            CNT[C_MAX_MEMBER] = MEM[x]
    return cnt


@njit(cache=True)
def _scratch(X, Y, NX, PV, BASE, ST, H, ASTART, AEND, u):
    t = _pred(PV, BASE, ST, H, 0, u)
    v = _succ(NX, BASE, ST, H, 0, u)
    val = _d(X, Y, t, u) + _d(X, Y, u, v)
    prev = t
    s = ASTART[u]
    if s >= 0:
        e = AEND[u]
        x = s
        val -= _d(X, Y, prev, x)
        prev = x
        while x != e:
            x = _succ(NX, BASE, ST, H, 1, x)
            val -= _d(X, Y, prev, x)
            prev = x
    val -= _d(X, Y, prev, v)
    return val


@njit(cache=True)
def _peel_all(X, Y, order, RANK, INV, HT, BASE, poolsize, k, ids_out, sens_out,
              newly_out, l1_out, l2_out, CNT):
    # points are stored in a locality-friendly order; the heap works on RANK
    # (the caller's index) so ties still go to the lowest caller index
    n = X.shape[0] - 1
    H = n
    NX = np.full((2, poolsize), -1, dtype=np.int64)
    PV = np.full((2, poolsize), -1, dtype=np.int64)
    ST = np.zeros(6, dtype=np.int64)
    ST[S_TAIL] = -1
    ST[3 + S_TAIL] = -1
    ST[S_LEVELS] = 1
    ST[3 + S_LEVELS] = 1
    IN = np.zeros((2, n), dtype=np.uint8)
    ASTART = np.full(n, -1, dtype=np.int64)
    AEND = np.full(n, -1, dtype=np.int64)
    SENS = np.zeros(n, dtype=np.int64)
    VER = np.zeros(n, dtype=np.int64)
    MEM = np.zeros(n, dtype=np.int64)
    cap = 4 * n + 16
    HK = np.empty(cap, dtype=np.int64)
    HI = np.empty(cap, dtype=np.int64)
    HV = np.empty(cap, dtype=np.int64)
    ACT = np.empty(n, dtype=np.int64)
    CH = np.empty(n + 1, dtype=np.int64)
    STK = np.empty((3 * n + 8, 3), dtype=np.int64)
    LIVE = np.zeros(n, dtype=np.uint8)
    LEAF = np.full(n, -1, dtype=np.int64)

    # outer layers
    ring = np.empty(n, dtype=np.int64)
    h1 = _hull_cw(X, Y, order, n, ring)
    if h1 < 3:
        CNT[C_ERR] = ERR_DEGENERATE
        return 0
    mark = np.zeros(n, dtype=np.uint8)
    x = H
    for t in range(h1):
        mark[ring[t]] = 1
        _insert_after(NX, PV, BASE, HT, ST, IN, H, 0, x, ring[t])
        x = ring[t]
    rest = np.empty(n, dtype=np.int64)
    m = 0
    for t in range(n):
        if not mark[order[t]]:
            rest[m] = order[t]
            m += 1
    ring2 = np.empty(max(m, 1), dtype=np.int64)
    h2 = _hull_cw(X, Y, rest, m, ring2)
    x = H
    for t in range(h2):
        mark[ring2[t]] = 2
        _insert_after(NX, PV, BASE, HT, ST, IN, H, 1, x, ring2[t])
        x = ring2[t]
    members = np.empty(m - h2, dtype=np.int64)
    c = 0
    for t in range(m):
        if mark[rest[t]] == 0:
            members[c] = rest[t]
            LIVE[rest[t]] = 1
            c += 1
    CNT[C_CCOUNT] = c
    K, BOX, PERM = _kd_build(X, Y, members, LIVE, LEAF)

    hs = -1
    he = -1
    node = NX[0, BASE[0, H]]
    for _ in range(h1):
        s, e = _fresh_arc(X, Y, CNT, NX, PV, BASE, ST, H, node, hs, he)
        if s >= 0:
            hs = s
            he = e
            CNT[C_ACTIVATIONS] += _arc_count(NX, BASE, ST, H, MEM, CNT, s, e, 1)
        ASTART[node] = s
        AEND[node] = e
        val = _scratch(X, Y, NX, PV, BASE, ST, H, ASTART, AEND, node)
        SENS[node] = val
        VER[node] += 1
        _hpush(HK, HI, HV, CNT, val, RANK[node], VER[node])
        node = _succ(NX, BASE, ST, H, 0, node)
    if CNT[C_ERR]:
        return 0

    remaining = n
    steps = 0
    while steps < k:
        # pop a current entry
        uid = -1
        while CNT[C_HEAP] > 0:
            pid, ver = _hpop(HK, HI, HV, CNT)
            pid = INV[pid]
            if VER[pid] == ver and IN[0, pid]:
                uid = pid
                break
        if uid < 0:
            break
        value = SENS[uid]
        t_node = _pred(PV, BASE, ST, H, 0, uid)
        v_node = _succ(NX, BASE, ST, H, 0, uid)
        start = ASTART[uid]
        end = AEND[uid]
        na = 0
        if start >= 0:
            x = start
            ACT[0] = x
            na = 1
            MEM[x] -= 1
            while x != end:
                x = _succ(NX, BASE, ST, H, 1, x)
                ACT[na] = x
                na += 1
                MEM[x] -= 1
        VER[uid] += 1
        remaining -= 1
        _unlink(NX, PV, BASE, HT, ST, IN, H, 0, uid)
        x = t_node
        ids_out[steps] = RANK[uid]
        sens_out[steps] = value
        steps += 1
        CNT[C_STEP] = steps
        if remaining < 3:
            for j in range(na):
                _unlink(NX, PV, BASE, HT, ST, IN, H, 1, ACT[j])
                _insert_after(NX, PV, BASE, HT, ST, IN, H, 0, x, ACT[j])
                x = ACT[j]
            newly_out[steps - 1] = 0
            l1_out[steps - 1] = ST[S_SIZE]
            l2_out[steps - 1] = ST[3 + S_SIZE]
            break

        a_node = -1
        b_node = -1
        if na > 0:
            if na == ST[3 + S_SIZE]:
                for j in range(na):
                    _unlink(NX, PV, BASE, HT, ST, IN, H, 1, ACT[j])
                if CNT[C_CCOUNT] > 0:
                    # second layer consumed: it becomes the center's hull
                    lo = _kd_best(X, Y, K, BOX, PERM, LIVE, -1, 0, 0, False)
                    hi = _kd_best(X, Y, K, BOX, PERM, LIVE, 1, 0, 0, False)
                    saved = CNT[C_EXTREME]
                    mm = 0
                    CH[mm] = lo
                    mm += 1
                    if lo != hi:
                        mm += _bridge(X, Y, K, BOX, PERM, LIVE, LEAF, CNT, lo, hi,
                                      False, CH[mm:], STK)
                        CH[mm] = hi
                        mm += 1
                        mm += _bridge(X, Y, K, BOX, PERM, LIVE, LEAF, CNT, hi, lo,
                                      False, CH[mm:], STK)
                    CNT[C_EXTREME] = saved
                    xx = H
                    for j in range(mm):
                        _kd_delete(X, Y, K, BOX, PERM, LIVE, LEAF, CNT, CH[j])
                        _insert_after(NX, PV, BASE, HT, ST, IN, H, 1, xx, CH[j])
                        xx = CH[j]
            else:
                a_node = _pred(PV, BASE, ST, H, 1, start)
                b_node = _succ(NX, BASE, ST, H, 1, end)
                for j in range(na):
                    _unlink(NX, PV, BASE, HT, ST, IN, H, 1, ACT[j])
                if CNT[C_CCOUNT] > 0:
                    if a_node == b_node:
                        anyl = _kd_best(X, Y, K, BOX, PERM, LIVE, 1, 0, 0, False)
                        z = _kd_best(X, Y, K, BOX, PERM, LIVE, X[anyl] - X[a_node],
                                     Y[anyl] - Y[a_node], 0, False)
                        _kd_delete(X, Y, K, BOX, PERM, LIVE, LEAF, CNT, z)
                        mm = _bridge(X, Y, K, BOX, PERM, LIVE, LEAF, CNT, a_node, z,
                                     True, CH, STK)
                        CH[mm] = z
                        mm += 1
                        mm += _bridge(X, Y, K, BOX, PERM, LIVE, LEAF, CNT, z, a_node,
                                      True, CH[mm:], STK)
                    else:
                        before = CNT[C_EXTREME]
                        mm = _bridge(X, Y, K, BOX, PERM, LIVE, LEAF, CNT, a_node, b_node,
                                     True, CH, STK)
                        CNT[C_RESTORE_CALLS] += 1
                        CNT[C_RESTORE_POINTS] += mm
                        used = CNT[C_EXTREME] - before
                        CNT[C_RESTORE_QUERIES] += used
                        if used != 2 * mm + 1:
                            CNT[C_ERR] = ERR_INVARIANT
                            return steps
                    xx = a_node
                    for j in range(mm):
                        _insert_after(NX, PV, BASE, HT, ST, IN, H, 1, xx, CH[j])
                        xx = CH[j]
        x = t_node
        for j in range(na):
            _insert_after(NX, PV, BASE, HT, ST, IN, H, 0, x, ACT[j])
            x = ACT[j]

        newly = 0
        hs = a_node
        he = a_node
        for j in range(na):
            node = ACT[j]
            s, e = _fresh_arc(X, Y, CNT, NX, PV, BASE, ST, H, node, hs, he)
            ASTART[node] = s
            AEND[node] = e
            if s >= 0:
                hs = s
                he = e
                cnt = _arc_count(NX, BASE, ST, H, MEM, CNT, s, e, 1)
                newly += cnt
                CNT[C_ACTIVATIONS] += cnt
            val = _scratch(X, Y, NX, PV, BASE, ST, H, ASTART, AEND, node)
            SENS[node] = val
            VER[node] += 1
            _hpush(HK, HI, HV, CNT, val, RANK[node], VER[node])

        u = uid
        first_act = ACT[0] if na > 0 else -1
        last_act = ACT[na - 1] if na > 0 else -1

        # counterclockwise neighbour t: its clockwise side changed
        tid = t_node
        xn = _succ(NX, BASE, ST, H, 0, tid)
        te = AEND[tid]
        ts = ASTART[tid]
        val = SENS[tid]
        added = 0
        if te >= 0 and not IN[1, te]:
            if te != first_act:
                CNT[C_ERR] = ERR_INVARIANT
                return steps
            if ts == te:
                prev = _pred(PV, BASE, ST, H, 0, tid)
                ASTART[tid] = -1
                AEND[tid] = -1
            else:
                if a_node < 0 or not IN[1, a_node]:
                    CNT[C_ERR] = ERR_INVARIANT
                    return steps
                prev = a_node
                AEND[tid] = a_node
            val -= _d(X, Y, prev, u) - _d(X, Y, prev, te) - _d(X, Y, te, u)
            val += _d(X, Y, tid, xn) - _d(X, Y, tid, u)
            val -= _d(X, Y, prev, xn) - _d(X, Y, prev, u)
        elif te >= 0:
            last = te
            val += _d(X, Y, tid, xn) - _d(X, Y, tid, u)
            val -= _d(X, Y, last, xn) - _d(X, Y, last, u)
            ne = _tangent(X, Y, CNT, NX, PV, BASE, ST, H, 1, xn, 1, te)
            if ne != te:
                p = te
                while p != ne:
                    p = _succ(NX, BASE, ST, H, 1, p)
                    val -= _d(X, Y, last, p) + _d(X, Y, p, xn) - _d(X, Y, last, xn)
                    last = p
                    added += 1
                    MEM[p] += 1
                    if MEM[p] > CNT[C_MAX_MEMBER]:
                        CNT[C_MAX_MEMBER] = MEM[p]
                AEND[tid] = ne
        else:
            prev = _pred(PV, BASE, ST, H, 0, tid)
            val += _d(X, Y, tid, xn) - _d(X, Y, tid, u)
            val -= _d(X, Y, prev, xn) - _d(X, Y, prev, u)
            s, e = _fresh_arc(X, Y, CNT, NX, PV, BASE, ST, H, tid, -1, -1)
            if s >= 0:
                last = prev
                p = s
                while True:
                    val -= _d(X, Y, last, p) + _d(X, Y, p, xn) - _d(X, Y, last, xn)
                    last = p
                    added += 1
                    MEM[p] += 1
                    if MEM[p] > CNT[C_MAX_MEMBER]:
                        CNT[C_MAX_MEMBER] = MEM[p]
                    if p == e:
                        break
                    p = _succ(NX, BASE, ST, H, 1, p)
                ASTART[tid] = s
                AEND[tid] = e
        CNT[C_ACTIVATIONS] += added
        newly += added
        SENS[tid] = val
        VER[tid] += 1
        _hpush(HK, HI, HV, CNT, val, RANK[tid], VER[tid])

        # clockwise neighbour v: its counterclockwise side changed
        vid = v_node
        yn = _pred(PV, BASE, ST, H, 0, vid)
        vs = ASTART[vid]
        ve = AEND[vid]
        val = SENS[vid]
        added = 0
        if vs >= 0 and not IN[1, vs]:
            if vs != last_act:
                CNT[C_ERR] = ERR_INVARIANT
                return steps
            if ve == vs:
                nxt = _succ(NX, BASE, ST, H, 0, vid)
                ASTART[vid] = -1
                AEND[vid] = -1
            else:
                if b_node < 0 or not IN[1, b_node]:
                    CNT[C_ERR] = ERR_INVARIANT
                    return steps
                nxt = b_node
                ASTART[vid] = b_node
            val -= _d(X, Y, u, nxt) - _d(X, Y, u, vs) - _d(X, Y, vs, nxt)
            val += _d(X, Y, yn, vid) - _d(X, Y, u, vid)
            val -= _d(X, Y, yn, nxt) - _d(X, Y, u, nxt)
        elif vs >= 0:
            first = vs
            val += _d(X, Y, yn, vid) - _d(X, Y, u, vid)
            val -= _d(X, Y, yn, first) - _d(X, Y, u, first)
            ns = _tangent(X, Y, CNT, NX, PV, BASE, ST, H, 1, yn, 0, vs)
            if ns != vs:
                p = vs
                nxt = first
                while p != ns:
                    p = _pred(PV, BASE, ST, H, 1, p)
                    val -= _d(X, Y, yn, p) + _d(X, Y, p, nxt) - _d(X, Y, yn, nxt)
                    nxt = p
                    added += 1
                    MEM[p] += 1
                    if MEM[p] > CNT[C_MAX_MEMBER]:
                        CNT[C_MAX_MEMBER] = MEM[p]
                ASTART[vid] = ns
        else:
            nxt = _succ(NX, BASE, ST, H, 0, vid)
            val += _d(X, Y, yn, vid) - _d(X, Y, u, vid)
            val -= _d(X, Y, yn, nxt) - _d(X, Y, u, nxt)
            s, e = _fresh_arc(X, Y, CNT, NX, PV, BASE, ST, H, vid, -1, -1)
            if s >= 0:
                after = nxt
                p = e
                while True:
                    val -= _d(X, Y, yn, p) + _d(X, Y, p, after) - _d(X, Y, yn, after)
                    after = p
                    added += 1
                    MEM[p] += 1
                    if MEM[p] > CNT[C_MAX_MEMBER]:
                        CNT[C_MAX_MEMBER] = MEM[p]
                    if p == s:
                        break
                    p = _pred(PV, BASE, ST, H, 1, p)
                ASTART[vid] = s
                AEND[vid] = e
        CNT[C_ACTIVATIONS] += added
        newly += added
        SENS[vid] = val
        VER[vid] += 1
        _hpush(HK, HI, HV, CNT, val, RANK[vid], VER[vid])

        newly_out[steps - 1] = newly
        l1_out[steps - 1] = ST[S_SIZE]
        l2_out[steps - 1] = ST[3 + S_SIZE]
        if CNT[C_ERR]:
            return steps
    return steps


def _spread(v):
    v = (v | (v << 16)) & np.uint64(0x0000FFFF0000FFFF)
    v = (v | (v << 8)) & np.uint64(0x00FF00FF00FF00FF)
    v = (v | (v << 4)) & np.uint64(0x0F0F0F0F0F0F0F0F)
    v = (v | (v << 2)) & np.uint64(0x3333333333333333)
    return (v | (v << 1)) & np.uint64(0x5555555555555555)


def _morton_order(xs, ys):
    """Z-order permutation: nearby points get nearby slots in every array."""
    if xs.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    span = int(max(xs.max() - xs.min(), ys.max() - ys.min()))
    shift = max(0, span.bit_length() - 16)
    x = ((xs - xs.min()) >> shift).astype(np.uint64)
    y = ((ys - ys.min()) >> shift).astype(np.uint64)
    return np.argsort(_spread(x) | (_spread(y) << np.uint64(1)), kind="stable").astype(np.int64)


def _layout(n, rng):
    """Skip-list heights and pool offsets for both chains (header last)."""
    HT = np.empty((2, n + 1), dtype=np.int64)
    BASE = np.empty((2, n + 1), dtype=np.int64)
    pool = 0
    for c in range(2):
        h = np.minimum(rng.geometric(0.5, size=n), MAXL).astype(np.int64)
        HT[c, :n] = h
        HT[c, n] = MAXL
        BASE[c, n] = 0
        BASE[c, :n] = MAXL + np.concatenate(([0], np.cumsum(h)[:-1]))
        pool = max(pool, int(MAXL + h.sum()))
    return HT, BASE, pool


def peel_area(xs, ys, k, seed=0):
    """Peel with the area objective on integer coordinates.

    ``xs``, ``ys``: int64 arrays with ``|c| < 2**29``; points are identified
    by their index, which is also the tie-break.  Returns a dict with the
    peeled indices, doubled-area sensitivities, newly-active counts, layer
    sizes after each peel, counters and an error code (0 on success).
    """
    xs = np.ascontiguousarray(xs, dtype=np.int64)
    ys = np.ascontiguousarray(ys, dtype=np.int64)
    n = xs.shape[0]
    if n and (np.abs(xs).max() >= COORD_LIMIT or np.abs(ys).max() >= COORD_LIMIT):
        raise OverflowError("coordinates exceed the compiled engine's range")
    RANK = _morton_order(xs, ys)
    INV = np.empty(n, dtype=np.int64)
    INV[RANK] = np.arange(n, dtype=np.int64)
    X = np.concatenate((xs[RANK], [0]))
    Y = np.concatenate((ys[RANK], [0]))
    order = np.lexsort((Y[:n], X[:n])).astype(np.int64)
    rng = np.random.default_rng(seed)
    HT, BASE, pool = _layout(n, rng)
    k = max(0, min(k, n))
    ids = np.empty(k, dtype=np.int64)
    sens = np.empty(k, dtype=np.int64)
    newly = np.empty(k, dtype=np.int64)
    l1 = np.empty(k, dtype=np.int64)
    l2 = np.empty(k, dtype=np.int64)
    CNT = np.zeros(16, dtype=np.int64)
    steps = _peel_all(X, Y, order, RANK, INV, HT, BASE, pool, k, ids, sens, newly, l1, l2, CNT)
    return {
        "ids": ids[:steps],
        "sens": sens[:steps],
        "newly": newly[:steps],
        "l1": l1[:steps],
        "l2": l2[:steps],
        "error": int(CNT[C_ERR]),
        "activations": int(CNT[C_ACTIVATIONS]),
        "tangent_queries": int(CNT[C_TANGENT]),
        "extreme_queries": int(CNT[C_EXTREME]),
        "restore_calls": int(CNT[C_RESTORE_CALLS]),
        "restore_queries": int(CNT[C_RESTORE_QUERIES]),
        "restore_points": int(CNT[C_RESTORE_POINTS]),
        "max_membership": int(CNT[C_MAX_MEMBER]),
    }

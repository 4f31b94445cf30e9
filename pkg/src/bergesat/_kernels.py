"""Compiled inner loops for the configuration model.

Every trial ``t`` under master seed ``s`` reseeds the compiled MT19937 state
from ``_trial_seed(s, t)`` and then runs a forward Fisher-Yates shuffle of
the configuration points, drawing position ``i`` from ``[i, T)`` for
``i = 0, 1, ...``. Block ``b`` is positions ``b*k .. b*k+k-1``. The lazy
rejection kernel draws in the same order and stops at the first defect, so
a trial it accepts replays exactly through ``trial_permutation``.
"""

import numba as nb
import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_LOW32 = np.uint64(0xFFFFFFFF)


@nb.njit(cache=True)
def _splitmix(z):
    z = z + _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


@nb.njit(cache=True)
def _trial_seed(seed, t):
    return np.uint32(_splitmix(_splitmix(seed) ^ np.uint64(t)) & _LOW32)


@nb.njit(cache=True)
def trial_permutation(total, seed, t):
    np.random.seed(_trial_seed(np.uint64(seed), t))
    perm = np.arange(total)
    for i in range(total):
        j = np.random.randint(i, total)
        tmp = perm[i]
        perm[i] = perm[j]
        perm[j] = tmp
    return perm


@nb.njit(cache=True)
def _lazy_trial(owner, k, perm, touched, inc, inc_cnt, vtouched, blocks):
    # On return perm and inc_cnt are back to their identity/zero state.
    total = owner.shape[0]
    nt = 0
    nv = 0
    ok = True
    for b in range(total // k):
        for s in range(k):
            i = b * k + s
            j = np.random.randint(i, total)
            tmp = perm[i]
            perm[i] = perm[j]
            perm[j] = tmp
            touched[nt] = j
            nt += 1
            u = owner[perm[i]]
            for s2 in range(s):
                w = blocks[b, s2]
                if w == u:
                    ok = False
                    break
                for q in range(inc_cnt[u]):
                    eb = inc[u, q]
                    for s3 in range(k):
                        if blocks[eb, s3] == w:
                            ok = False
                if not ok:
                    break
            if not ok:
                break
            blocks[b, s] = u
        if not ok:
            break
        for s in range(k):
            u = blocks[b, s]
            if inc_cnt[u] == 0:
                vtouched[nv] = u
                nv += 1
            inc[u, inc_cnt[u]] = b
            inc_cnt[u] += 1
    for q in range(nt - 1, -1, -1):
        j = touched[q]
        tmp = perm[q]
        perm[q] = perm[j]
        perm[j] = tmp
    for q in range(nv):
        inc_cnt[vtouched[q]] = 0
    return ok


@nb.njit(cache=True)
def first_defect_free(owner, n, k, maxdeg, seed, start, stop):
    """Index of the first trial in ``[start, stop)`` with no loop or overlap, else -1."""
    total = owner.shape[0]
    perm = np.arange(total)
    touched = np.empty(max(total, 1), np.int64)
    vtouched = np.empty(max(n, 1), np.int64)
    inc = np.empty((max(n, 1), max(maxdeg, 1)), np.int64)
    inc_cnt = np.zeros(max(n, 1), np.int64)
    blocks = np.empty((max(total // k, 1), k), np.int64)
    useed = np.uint64(seed)
    for t in range(start, stop):
        np.random.seed(_trial_seed(useed, t))
        if _lazy_trial(owner, k, perm, touched, inc, inc_cnt, vtouched, blocks):
            return t
    return -1


@nb.njit(cache=True)
def block_defects(owners, n):
    """Loop and overlap counts for one configuration given as a (blocks, k) owner array."""
    nblocks, k = owners.shape
    loops = 0
    npairs = k * (k - 1) // 2
    keys = np.empty(nblocks * npairs, np.int64)
    cnt = 0
    for b in range(nblocks):
        for i in range(k):
            for j in range(i + 1, k):
                u = owners[b, i]
                w = owners[b, j]
                if u == w:
                    loops += 1
                else:
                    if u > w:
                        u, w = w, u
                    keys[cnt] = (u * n + w) * nblocks + b
                    cnt += 1
    keys = np.sort(keys[:cnt])
    overlaps = 0
    q = 0
    while q < cnt:
        pair = keys[q] // nblocks
        tot = 0
        sq = 0
        while q < cnt and keys[q] // nblocks == pair:
            blk = keys[q]
            c = 0
            while q < cnt and keys[q] == blk:
                c += 1
                q += 1
            tot += c
            sq += c * c
        overlaps += (tot * tot - sq) // 2
    return loops, overlaps


@nb.njit(cache=True)
def defect_counts(owner, n, k, seed, start, stop):
    """Per-trial (loops, overlaps) for trials ``start..stop-1``."""
    total = owner.shape[0]
    loops = np.empty(stop - start, np.int64)
    overlaps = np.empty(stop - start, np.int64)
    for t in range(start, stop):
        perm = trial_permutation(total, seed, t)
        owners = np.empty((total // k, k), np.int64)
        for i in range(total):
            owners[i // k, i % k] = owner[perm[i]]
        a, b = block_defects(owners, n)
        loops[t - start] = a
        overlaps[t - start] = b
    return loops, overlaps

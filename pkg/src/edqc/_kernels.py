"""Compiled per-source kernels: diffusion, extraction, and the fused search loop.

All state lives in caller-owned scratch arrays sized ``n``. A kernel only
touches the entries it marks and resets them before returning, so one
diffusion costs time proportional to the region it reaches, not to ``n``.
"""

import numpy as np
from numba import njit

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_ONE = np.uint64(1)
_S11 = np.uint64(11)
_S27 = np.uint64(27)
_S30 = np.uint64(30)
_S31 = np.uint64(31)
_INV53 = 2.0 ** -53


@njit(nogil=True, cache=True, inline="always")
def _mix64(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit(nogil=True, cache=True, inline="always")
def _stream_key(seed, source):
    return _mix64(_mix64(seed) + np.uint64(source + 1) * _GOLDEN)


@njit(nogil=True, cache=True, inline="always")
def _uniform(key, counter):
    return np.float64((_mix64(key + counter * _GOLDEN) >> _S11) + _ONE) * _INV53


class Scratch:
    """Per-worker work arrays for a graph with ``n`` vertices."""

    def __init__(self, n, max_degree):
        self.f = np.zeros(n, dtype=np.float64)
        self.touched = np.empty(n + 1, dtype=np.int64)  # +1: branch-free append overwrites one past the end
        self.active = np.empty(n, dtype=np.int64)
        self.wbuf = np.empty(max(max_degree, 1), dtype=np.float64)
        self.lo_buf = np.empty(n, dtype=np.int64)
        self.hi_buf = np.empty(n, dtype=np.int64)
        self.in_s = np.zeros(n, dtype=np.uint8)
        self.members = np.empty(n, dtype=np.int64)


@njit(nogil=True, cache=True)
def diffuse(indptr, indices, source, steps, theta, seed,
            f, touched, active, wbuf, lo_buf, hi_buf, round_sums):
    """Run the diffusion from ``source``; return the number of touched vertices.

    Energies are left in ``f`` at the positions ``touched[:nt]``. If
    ``round_sums`` is non-empty, the total energy after each round is stored.
    """
    key = _stream_key(seed, source)
    counter = np.uint64(0)
    f[source] = 1.0
    touched[0] = source
    nt = 1
    active[0] = source
    na = 1
    record = round_sums.shape[0] > 0
    for t in range(steps):
        # Read-only pass over everything this round will touch. Its loads are
        # independent, so cache misses overlap instead of serializing behind
        # the ordered update pass below. The sink test keeps the loads alive.
        for ia in range(na):
            u = active[ia]
            lo_buf[ia] = indptr[u]
            hi_buf[ia] = indptr[u + 1]
        sink = 0.0
        for ia in range(na):
            for j in range(lo_buf[ia], hi_buf[ia]):
                sink += f[indices[j]]
        if sink < 0.0:
            return -1
        for ia in range(na):
            u = active[ia]
            lo = lo_buf[ia]
            d = hi_buf[ia] - lo
            if d == 0:
                continue
            total = 0.0
            for j in range(d):
                counter += _ONE
                x = _uniform(key, counter)
                wbuf[j] = x
                total += x
            half = f[u] * 0.5
            for j in range(d):
                w = indices[lo + j]
                # branch-free append of first-time vertices
                fw = f[w]
                touched[nt] = w
                nt += fw == 0.0
                f[w] = fw + half * (wbuf[j] / total)
            f[u] = half
        if record:
            s = 0.0
            for i in range(nt):
                s += f[touched[i]]
            round_sums[t] = s
        if t + 1 < steps:
            na = 0
            for i in range(nt):
                v = touched[i]
                if f[v] > theta:
                    active[na] = v
                    na += 1
            active[:na].sort()
    return nt


@njit(nogil=True, cache=True)
def reset(f, touched, nt):
    for i in range(nt):
        f[touched[i]] = 0.0


@njit(nogil=True, cache=True, inline="always")
def _admits(e, s, gnum, gden):
    if s <= 1:
        return True
    return 2 * e * gden >= gnum * s * (s - 1)


@njit(nogil=True, cache=True)
def _links(indptr, indices, v, in_s, members, s):
    lo = indptr[v]
    hi = indptr[v + 1]
    d = hi - lo
    c = 0
    if d <= s:
        for j in range(lo, hi):
            c += in_s[indices[j]]
    else:
        nb = indices[lo:hi]
        for i in range(s):
            x = members[i]
            k = np.searchsorted(nb, x)
            if k < d and nb[k] == x:
                c += 1
    return c


@njit(nogil=True, cache=True)
def extract(indptr, indices, f, touched, nt, theta, gnum, gden, greedy, in_s, members):
    """Turn the energies in ``f`` into a feasible set.

    Returns ``(size, internal_edges, breakpoint)``; the chosen vertices are
    ``members[:size]``. ``greedy`` selects the breakpoint-free insertion rule.
    """
    cand = np.empty(nt, dtype=np.int64)
    k = 0
    for i in range(nt):
        v = touched[i]
        if f[v] > 0.0 and f[v] >= theta:
            cand[k] = v
            k += 1
    if k == 0:
        return 0, 0, 0
    cand = np.sort(cand[:k])
    neg = np.empty(k, dtype=np.float64)
    for i in range(k):
        neg[i] = -f[cand[i]]
    order = cand[np.argsort(neg, kind="mergesort")]

    s = 0
    e = 0
    if greedy:
        for i in range(k):
            v = order[i]
            c = _links(indptr, indices, v, in_s, members, s)
            in_s[v] = 1
            members[s] = v
            s += 1
            e += c
            if not _admits(e, s, gnum, gden):
                s -= 1
                e -= c
                in_s[v] = 0
                break
        for i in range(s):
            in_s[members[i]] = 0
        return s, e, 0

    b = 1
    best = -1.0
    for i in range(k - 1):
        drop = f[order[i]] - f[order[i + 1]]
        if drop > best:
            best = drop
            b = i + 1

    for i in range(b):
        v = order[i]
        e += _links(indptr, indices, v, in_s, members, s)
        in_s[v] = 1
        members[s] = v
        s += 1
    while s > 3 and not _admits(e, s, gnum, gden):
        s -= 1
        v = members[s]
        in_s[v] = 0
        e -= _links(indptr, indices, v, in_s, members, s)
    if not _admits(e, s, gnum, gden):
        for i in range(s):
            in_s[members[i]] = 0
        return 0, 0, b

    # S is still the prefix order[:s]; everything after it is A \ S in order
    for i in range(s, k):
        v = order[i]
        c = _links(indptr, indices, v, in_s, members, s)
        if _admits(e + c, s + 1, gnum, gden):
            in_s[v] = 1
            members[s] = v
            s += 1
            e += c
    for i in range(s):
        in_s[members[i]] = 0
    return s, e, b


@njit(nogil=True, cache=True)
def search_chunk(indptr, indices, sources, steps, theta, seed, gnum, gden, greedy,
                 f, touched, active, wbuf, lo_buf, hi_buf, in_s, members, sizes,
                 best_members):
    """Diffuse + extract for each source in ``sources``.

    ``sizes[i]`` receives each result size. Returns ``(pos, size, edges)`` of
    the first strictly-largest non-empty result (``pos = -1`` if none) and
    copies its vertices into ``best_members``.
    """
    no_trace = np.empty(0, dtype=np.float64)
    best_pos = -1
    best_size = 0
    best_e = 0
    for i in range(sources.shape[0]):
        src = sources[i]
        nt = diffuse(indptr, indices, src, steps, theta, seed,
                     f, touched, active, wbuf, lo_buf, hi_buf, no_trace)
        s, e, _ = extract(indptr, indices, f, touched, nt, theta, gnum, gden,
                          greedy, in_s, members)
        reset(f, touched, nt)
        sizes[i] = s
        if s > best_size:
            best_pos = i
            best_size = s
            best_e = e
            best_members[:s] = members[:s]
    return best_pos, best_size, best_e


@njit(nogil=True, cache=True)
def diffuse_many(indptr, indices, sources, steps, theta, seed,
                 f, touched, active, wbuf, lo_buf, hi_buf, round_sums):
    """Diffusion only, from each source in turn.

    With a ``(len(sources), steps)`` ``round_sums`` the per-round totals are
    recorded; pass an empty 2-D array to skip. Returns total support size.
    """
    record = round_sums.shape[0] > 0
    empty = np.empty(0, dtype=np.float64)
    support = 0
    for i in range(sources.shape[0]):
        rs = round_sums[i] if record else empty
        nt = diffuse(indptr, indices, sources[i], steps, theta, seed,
                     f, touched, active, wbuf, lo_buf, hi_buf, rs)
        support += nt
        reset(f, touched, nt)
    return support

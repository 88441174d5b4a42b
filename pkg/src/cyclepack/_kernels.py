"""Bitset search kernels.

The kernels are written in the subset of Python that numba compiles.  By
default they are compiled with ``numba.njit``.  Setting the environment
variable ``CYCLEPACK_DISABLE_NUMBA=1`` (or running without numba installed)
selects the fallback path: the same code runs interpreted over Python ints and
the batch degree kernel switches to a vectorised numpy implementation.  The
choice is made once, at import time.

Graphs reach the kernels as one ``int64`` adjacency row per vertex, so at
most :data:`MAX_VERTICES` vertices are supported.
"""

import os

import numpy as np

FOUND = 1
NOT_FOUND = 0
EXHAUSTED = -1

MAX_VERTICES = 63


def _flag_set(name):
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


try:
    if _flag_set("CYCLEPACK_DISABLE_NUMBA"):
        raise ImportError("disabled by CYCLEPACK_DISABLE_NUMBA")
    import numba
except ImportError:
    numba = None

USE_NUMBA = numba is not None
BACKEND = "numba" if USE_NUMBA else "python"


def jit(fn):
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


if USE_NUMBA:

    def as_rows(rows):
        return np.asarray(rows, dtype=np.int64)

    @jit
    def _scratch(size, fill):
        return np.full(size, fill, np.int64)

    @jit
    def _scratch2(rows, cols):
        return np.zeros((rows, cols), np.int64)

else:

    def as_rows(rows):
        return [int(r) for r in rows]

    def _scratch(size, fill):
        return [fill] * size

    def _scratch2(rows, cols):
        return [[0] * cols for _ in range(rows)]


@jit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@jit
def bit_index(low):
    """Index of the single set bit in ``low``."""
    i = 0
    while low > 1:
        low >>= 1
        i += 1
    return i


@jit
def _hash_slot(key, size):
    h = (key ^ (key >> 29)) * 0x5851F42D4C957F2D
    h ^= h >> 32
    return h & (size - 1)


@jit
def memo_failed(keys, vals, key, k):
    """True when ``key`` was already shown unable to host ``k`` items."""
    size = len(keys)
    slot = _hash_slot(key, size)
    for _ in range(16):
        kk = keys[slot]
        if kk == -1:
            return False
        if kk == key:
            return vals[slot] <= k
        slot = (slot + 1) & (size - 1)
    return False


@jit
def memo_store(keys, vals, key, k):
    size = len(keys)
    slot = _hash_slot(key, size)
    for _ in range(16):
        kk = keys[slot]
        if kk == -1:
            keys[slot] = key
            vals[slot] = k
            return
        if kk == key:
            if k < vals[slot]:
                vals[slot] = k
            return
        slot = (slot + 1) & (size - 1)


def memo_tables(n):
    size = 1 << min(20, max(8, n + 4))
    return _scratch(size, -1), _scratch(size, 0)


# -- cycles ----------------------------------------------------------------

@jit
def prune_to_core(rows, alive):
    """Remove vertices with at most one live neighbour until none remain."""
    changed = True
    while changed:
        changed = False
        rest = alive
        while rest:
            low = rest & -rest
            rest ^= low
            if popcount(rows[bit_index(low)] & alive) <= 1:
                alive &= ~low
                changed = True
    return alive


@jit
def cycle_rank(rows, alive):
    """Edges minus vertices plus components of the subgraph on ``alive``."""
    nv = 0
    deg = 0
    rest = alive
    while rest:
        low = rest & -rest
        rest ^= low
        nv += 1
        deg += popcount(rows[bit_index(low)] & alive)
    comps = 0
    unseen = alive
    while unseen:
        frontier = unseen & -unseen
        comp = frontier
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                f ^= low
                nxt |= rows[bit_index(low)]
            nxt &= alive & ~comp
            comp |= nxt
            frontier = nxt
        unseen &= ~comp
        comps += 1
    return deg // 2 - nv + comps


@jit
def search_cycles(rows, alive, k, counter, mkeys, mvals, out, out_len, depth):
    """Decide whether ``alive`` hosts ``k`` disjoint cycles.

    Branches on a minimum-degree vertex ``v``: either ``v`` lies on a
    chordless cycle (enumerated shortest first, lowest ids first) or ``v`` is
    deleted.  ``counter`` holds ``[nodes, budget]``.  On success the chosen
    cycles are written to ``out[depth:]``.
    """
    counter[0] += 1
    if counter[0] > counter[1]:
        return EXHAUSTED
    if k <= 0:
        return FOUND
    alive = prune_to_core(rows, alive)
    nv = popcount(alive)
    if nv < 3 * k:
        return NOT_FOUND
    if cycle_rank(rows, alive) < k:
        return NOT_FOUND
    if memo_failed(mkeys, mvals, alive, k):
        return NOT_FOUND

    v = -1
    best = 1 << 30
    rest = alive
    while rest:
        low = rest & -rest
        rest ^= low
        u = bit_index(low)
        d = popcount(rows[u] & alive)
        if d < best:
            best = d
            v = u
    vbit = 1 << v
    nv_mask = rows[v] & alive

    path = _scratch(nv + 1, 0)
    cand = _scratch(nv + 1, 0)
    blk = _scratch(nv + 1, 0)
    path[0] = v
    for L in range(3, nv + 1):
        extendable = False
        d = 1
        cand[1] = nv_mask
        blk[1] = 0
        while d >= 1:
            c = cand[d]
            if c == 0:
                d -= 1
                continue
            low = c & -c
            cand[d] = c ^ low
            u = bit_index(low)
            path[d] = u
            if d == L - 1:
                cmask = vbit
                for j in range(1, L):
                    cmask |= 1 << path[j]
                r = search_cycles(rows, alive & ~cmask, k - 1, counter, mkeys, mvals,
                                  out, out_len, depth + 1)
                if r == FOUND:
                    for j in range(L):
                        out[depth][j] = path[j]
                    out_len[depth] = L
                    return FOUND
                if r == EXHAUSTED:
                    return EXHAUSTED
                continue
            d += 1
            if d >= 3:
                blk[d] = blk[d - 1] | rows[path[d - 2]] | (1 << path[d - 2])
            else:
                blk[d] = 0
            base = rows[path[d - 1]] & alive & ~vbit & ~blk[d] & ~(1 << path[d - 1])
            if d < L - 1:
                cand[d] = base & ~nv_mask
            else:
                if base & ~nv_mask:
                    extendable = True
                cand[d] = base & nv_mask & ~((2 << path[1]) - 1)
        if not extendable:
            break

    r = search_cycles(rows, alive & ~vbit, k, counter, mkeys, mvals, out, out_len, depth)
    if r == NOT_FOUND:
        memo_store(mkeys, mvals, alive, k)
    return r


# -- triangles ---------------------------------------------------------------

@jit
def search_triangles(tri_mask, inc_ptr, inc_idx, alive, t, counter, mkeys, mvals, out, depth):
    """Decide whether ``t`` disjoint triangles from ``tri_mask`` fit in ``alive``.

    Branches on the lowest vertex covered by a usable triangle: use one of
    its triangles, or discard the vertex.  Chosen indices go to ``out``.
    """
    counter[0] += 1
    if counter[0] > counter[1]:
        return EXHAUSTED
    if t <= 0:
        return FOUND
    cover = 0
    for j in range(len(tri_mask)):
        tm = tri_mask[j]
        if tm & alive == tm:
            cover |= tm
    alive = alive & cover
    if popcount(alive) < 3 * t:
        return NOT_FOUND
    if memo_failed(mkeys, mvals, alive, t):
        return NOT_FOUND
    low = alive & -alive
    u = bit_index(low)
    for p in range(inc_ptr[u], inc_ptr[u + 1]):
        j = inc_idx[p]
        tm = tri_mask[j]
        if tm & alive != tm:
            continue
        r = search_triangles(tri_mask, inc_ptr, inc_idx, alive & ~tm, t - 1, counter,
                             mkeys, mvals, out, depth + 1)
        if r == FOUND:
            out[depth] = j
            return FOUND
        if r == EXHAUSTED:
            return EXHAUSTED
    r = search_triangles(tri_mask, inc_ptr, inc_idx, alive & ~low, t, counter,
                         mkeys, mvals, out, depth)
    if r == NOT_FOUND:
        memo_store(mkeys, mvals, alive, t)
    return r


# -- batch enumeration --------------------------------------------------------

def pair_arrays(n):
    """Vertex pairs in lexicographic order; bit ``j`` of an edge mask is pair ``j``."""
    pu, pv = [], []
    for u in range(n):
        for v in range(u + 1, n):
            pu.append(u)
            pv.append(v)
    return np.array(pu, np.int64), np.array(pv, np.int64)


if USE_NUMBA:

    @jit
    def _rows_from_masks(masks, pu, pv, n):
        out = np.zeros((len(masks), n), np.int64)
        for b in range(len(masks)):
            m = masks[b]
            j = 0
            while m:
                if m & 1:
                    out[b, pu[j]] |= 1 << pv[j]
                    out[b, pv[j]] |= 1 << pu[j]
                m >>= 1
                j += 1
        return out

    @jit
    def _degrees_from_masks(masks, pu, pv, n):
        out = np.zeros((len(masks), n), np.int64)
        for b in range(len(masks)):
            m = masks[b]
            j = 0
            while m:
                if m & 1:
                    out[b, pu[j]] += 1
                    out[b, pv[j]] += 1
                m >>= 1
                j += 1
        return out

else:

    def _edge_bits(masks, npairs):
        return (masks[:, None] >> np.arange(npairs, dtype=np.int64)) & 1

    def _rows_from_masks(masks, pu, pv, n):
        eb = _edge_bits(masks, len(pu))
        out = np.zeros((len(masks), n), np.int64)
        for j in range(len(pu)):
            out[:, pu[j]] |= eb[:, j] << pv[j]
            out[:, pv[j]] |= eb[:, j] << pu[j]
        return out

    def _degrees_from_masks(masks, pu, pv, n):
        inc = np.zeros((len(pu), n), np.int64)
        inc[np.arange(len(pu)), pu] = 1
        inc[np.arange(len(pu)), pv] = 1
        return _edge_bits(masks, len(pu)) @ inc


def rows_from_masks(masks, n):
    """Adjacency rows, shape ``(len(masks), n)``, for labelled edge masks."""
    pu, pv = pair_arrays(n)
    return _rows_from_masks(np.asarray(masks, np.int64), pu, pv, n)


def degrees_from_masks(masks, n):
    """Degree sequences, shape ``(len(masks), n)``, for labelled edge masks."""
    pu, pv = pair_arrays(n)
    if len(pu) == 0:
        return np.zeros((len(masks), n), np.int64)
    return _degrees_from_masks(np.asarray(masks, np.int64), pu, pv, n)

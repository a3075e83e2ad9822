"""Hot inner loops over packed adjacency rows.

Rows are ``uint64`` words, little-endian bit order: node ``v`` lives in word
``v >> 6`` at bit ``v & 63``. Trailing bits past ``n`` are always zero.

Each public function takes ``backend=None|"numba"|"numpy"``; ``None`` follows
the ``ILMT_NO_NUMBA`` switch in :mod:`ilmt._accel`.
"""
import numpy as np

from ._accel import njit, resolve

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)


@njit
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return (x * _H01) >> np.uint64(56)


@njit
def _has_bit(row, v):
    return (row[v >> 6] >> np.uint64(v & 63)) & _ONE


# ---------------------------------------------------------------- census3

@njit
def _d3_arc_sum_nb(out, inn, n):
    words = out.shape[1]
    total = 0
    for u in range(n):
        for v in range(n):
            if _has_bit(out[u], v):
                c = 0
                for w in range(words):
                    c += _popcount(out[v, w] & inn[u, w])
                total += c
    return total


def _row_bits(row, n):
    return np.unpackbits(row.view(np.uint8), bitorder="little")[:n].astype(bool)


def _d3_arc_sum_np(out, inn, n):
    total = 0
    for u in range(n):
        vs = np.flatnonzero(_row_bits(out[u], n))
        if vs.size:
            total += int(np.bitwise_count(out[vs] & inn[u]).sum())
    return total


def d3_arc_sum(out, inn, n, backend=None):
    """Sum over arcs (u, v) of |N+(v) & N-(u)|; every directed triangle counted 3 times."""
    if resolve(backend) == "numba":
        return int(_d3_arc_sum_nb(out, inn, n))
    return _d3_arc_sum_np(out, inn, n)


# ---------------------------------------------------------------- census4

@njit
def _t4_pair_sum_nb(out, n):
    words = out.shape[1]
    total = 0
    for u in range(n):
        for v in range(n):
            if _has_bit(out[u], v):
                c = 0
                for w in range(words):
                    c += _popcount(out[u, w] & out[v, w])
                total += c * (c - 1) // 2
    return total


def _t4_pair_sum_np(out, n):
    total = 0
    for u in range(n):
        vs = np.flatnonzero(_row_bits(out[u], n))
        if vs.size:
            c = np.bitwise_count(out[vs] & out[u]).sum(axis=1, dtype=np.int64)
            total += int((c * (c - 1) // 2).sum())
    return total


def t4_pair_sum(out, n, backend=None):
    """Sum over arcs (u, v) of C(|N+(u) & N+(v)|, 2).

    In a tournament each transitive 4-set has exactly one arc whose endpoints
    both beat the remaining pair, and no other 4-type has one, so this is the
    linear-order 4-set count.
    """
    if resolve(backend) == "numba":
        return int(_t4_pair_sum_nb(out, n))
    return _t4_pair_sum_np(out, n)


# ---------------------------------------------------------------- BFS

@njit
def _eccentricities_nb(out, n):
    words = out.shape[1]
    ecc = np.full(n, -1, dtype=np.int64)
    visited = np.zeros(words, dtype=np.uint64)
    frontier = np.zeros(n, dtype=np.int64)
    nxt = np.zeros(n, dtype=np.int64)
    for s in range(n):
        visited[:] = 0
        visited[s >> 6] |= _ONE << np.uint64(s & 63)
        frontier[0] = s
        fsize = 1
        seen = 1
        depth = 0
        while fsize > 0:
            nsize = 0
            for i in range(fsize):
                x = frontier[i]
                for w in range(words):
                    fresh = out[x, w] & ~visited[w]
                    while fresh:
                        low = fresh & (~fresh + _ONE)
                        b = 0
                        t = low
                        while t > _ONE:
                            t >>= _ONE
                            b += 1
                        visited[w] |= low
                        nxt[nsize] = w * 64 + b
                        nsize += 1
                        fresh ^= low
            if nsize == 0:
                break
            depth += 1
            seen += nsize
            for i in range(nsize):
                frontier[i] = nxt[i]
            fsize = nsize
        if seen == n:
            ecc[s] = depth
    return ecc


def _eccentricities_np(out, n):
    ecc = np.full(n, -1, dtype=np.int64)
    for s in range(n):
        visited = np.zeros(out.shape[1], dtype=np.uint64)
        visited[s >> 6] |= np.uint64(1) << np.uint64(s & 63)
        frontier = np.array([s])
        seen, depth = 1, 0
        while True:
            reach = np.bitwise_or.reduce(out[frontier], axis=0) & ~visited
            k = int(np.bitwise_count(reach).sum())
            if k == 0:
                break
            visited |= reach
            seen += k
            depth += 1
            frontier = np.flatnonzero(_row_bits(reach, n))
        if seen == n:
            ecc[s] = depth
    return ecc


def eccentricities(out, n, backend=None):
    """Directed out-eccentricity of every node; -1 where some node is unreachable."""
    if resolve(backend) == "numba":
        return _eccentricities_nb(out, n)
    return _eccentricities_np(out, n)


# ---------------------------------------------------------------- cops

@njit
def _cop_ranks_nb(succ_ptr, succ_idx, occ, nbr_ptr, nbr_idx):
    nconf, n = occ.shape
    big = np.iinfo(np.int64).max
    cop = np.full((nconf, n), big, dtype=np.int64)
    rob = np.full((nconf, n), big, dtype=np.int64)
    for c in range(nconf):
        for r in range(n):
            if occ[c, r]:
                cop[c, r] = 0
                rob[c, r] = 0
    level = 0
    changed = True
    while changed:
        changed = False
        level += 1
        for c in range(nconf):
            for r in range(n):
                if cop[c, r] != big:
                    continue
                for j in range(succ_ptr[c], succ_ptr[c + 1]):
                    if rob[succ_idx[j], r] < level:
                        cop[c, r] = level
                        changed = True
                        break
        for c in range(nconf):
            for r in range(n):
                if rob[c, r] != big:
                    continue
                ok = True
                for j in range(nbr_ptr[r], nbr_ptr[r + 1]):
                    if cop[c, nbr_idx[j]] > level:
                        ok = False
                        break
                if ok:
                    rob[c, r] = level
                    changed = True
    for c in range(nconf):
        for r in range(n):
            if cop[c, r] == big:
                cop[c, r] = -1
            if rob[c, r] == big:
                rob[c, r] = -1
    return cop, rob


def _cop_ranks_np(succ_ptr, succ_idx, occ, nbr_ptr, nbr_idx):
    nconf, n = occ.shape
    big = np.iinfo(np.int64).max
    cop = np.where(occ, 0, big).astype(np.int64)
    rob = cop.copy()
    level = 0
    while True:
        level += 1
        rob_won = rob < level
        reach = np.logical_or.reduceat(rob_won[succ_idx], succ_ptr[:-1], axis=0)
        new_cop = reach & (cop == big)
        cop[new_cop] = level
        cop_won = cop <= level
        safe = np.logical_and.reduceat(cop_won[:, nbr_idx], nbr_ptr[:-1], axis=1)
        new_rob = safe & (rob == big)
        rob[new_rob] = level
        if not new_cop.any() and not new_rob.any():
            break
    cop[cop == big] = -1
    rob[rob == big] = -1
    return cop, rob


def cop_ranks(succ_ptr, succ_idx, occ, nbr_ptr, nbr_idx, backend=None):
    """Backward induction for the cops-and-robber reachability game.

    ``succ_ptr/succ_idx`` is the CSR list of configurations reachable by one
    joint cop move (passes included, so every row is nonempty). ``nbr_ptr/
    nbr_idx`` lists each node's closed out-neighbourhood. ``occ[c, r]`` marks
    co-location. Returns ``(cop, rob)`` rank tables for the cop-to-move and
    robber-to-move phases: the round at which the state became a cop win, or
    -1 for robber wins. A cop-to-move state of rank i always has a joint move
    into a robber-to-move state of rank < i.
    """
    args = (
        np.ascontiguousarray(succ_ptr, dtype=np.int64),
        np.ascontiguousarray(succ_idx, dtype=np.int64),
        np.ascontiguousarray(occ, dtype=np.bool_),
        np.ascontiguousarray(nbr_ptr, dtype=np.int64),
        np.ascontiguousarray(nbr_idx, dtype=np.int64),
    )
    if resolve(backend) == "numba":
        return _cop_ranks_nb(*args)
    return _cop_ranks_np(*args)

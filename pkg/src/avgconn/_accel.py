"""Hot kernels with a numba path and a pure Python/numpy fallback.

Set ``AVGCONN_NUMBA=0`` before import to run the fallback path. The two
paths compute identical results; ``benchmarks/bench_kernels.py`` compares
their speed.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _env_enabled() -> bool:
    flag = os.environ.get("AVGCONN_NUMBA", "1").strip().lower()
    return numba is not None and flag not in ("0", "false", "no", "off")


USE_NUMBA = _env_enabled()


def _jit(fn):
    if not USE_NUMBA:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# ---------------------------------------------------------------------------
# augmenting-path max-flow on a CSR residual network


def _max_flow_kernel(n, offsets, to, cap, rev, flow, s, t, limit, skip, parent, queue, seen):
    total = 0
    while total < limit:
        for i in range(n):
            parent[i] = -1
            seen[i] = 0
        seen[s] = 1
        queue[0] = s
        head = 0
        tail = 1
        found = False
        while head < tail and not found:
            x = queue[head]
            head += 1
            for a in range(offsets[x], offsets[x + 1]):
                if a == skip:
                    continue
                y = to[a]
                if seen[y] == 0 and cap[a] - flow[a] > 0:
                    seen[y] = 1
                    parent[y] = a
                    if y == t:
                        found = True
                        break
                    queue[tail] = y
                    tail += 1
        if not found:
            break
        b = limit - total
        y = t
        while y != s:
            a = parent[y]
            r = cap[a] - flow[a]
            if r < b:
                b = r
            y = to[rev[a]]
        y = t
        while y != s:
            a = parent[y]
            flow[a] += b
            flow[rev[a]] -= b
            y = to[rev[a]]
        total += b
    return total


def _reach_kernel(n, offsets, to, cap, flow, s, skip, seen, queue):
    for i in range(n):
        seen[i] = 0
    seen[s] = 1
    queue[0] = s
    head = 0
    tail = 1
    while head < tail:
        x = queue[head]
        head += 1
        for a in range(offsets[x], offsets[x + 1]):
            if a == skip:
                continue
            y = to[a]
            if seen[y] == 0 and cap[a] - flow[a] > 0:
                seen[y] = 1
                queue[tail] = y
                tail += 1
    return seen


_max_flow_jit = _jit(_max_flow_kernel)
_reach_jit = _jit(_reach_kernel)


def max_flow(offsets, to, cap, rev, s, t, limit, skip=-1):
    """Integral max-flow value from s to t (capped at ``limit``) and the flow vector."""
    n = offsets.shape[0] - 1
    if USE_NUMBA:
        flow = np.zeros(to.shape[0], dtype=np.int64)
        parent = np.empty(n, dtype=np.int64)
        queue = np.empty(n, dtype=np.int64)
        seen = np.empty(n, dtype=np.int8)
        val = _max_flow_jit(n, offsets, to, cap, rev, flow, s, t, limit, skip, parent, queue, seen)
        return int(val), flow
    flow_l = [0] * to.shape[0]
    val = _max_flow_kernel(
        n, offsets.tolist(), to.tolist(), cap.tolist(), rev.tolist(), flow_l,
        s, t, limit, skip, [0] * n, [0] * n, [0] * n,
    )
    return int(val), np.asarray(flow_l, dtype=np.int64)


def residual_reach(offsets, to, cap, flow, s, skip=-1) -> np.ndarray:
    """Boolean mask of nodes reachable from s in the residual network."""
    n = offsets.shape[0] - 1
    if USE_NUMBA:
        seen = np.empty(n, dtype=np.int8)
        queue = np.empty(n, dtype=np.int64)
        return _reach_jit(n, offsets, to, cap, flow, s, skip, seen, queue).astype(bool)
    seen = _reach_kernel(
        n, offsets.tolist(), to.tolist(), cap.tolist(), flow.tolist(), s, skip, [0] * n, [0] * n
    )
    return np.asarray(seen, dtype=bool)


# ---------------------------------------------------------------------------
# brute-force minimal separator scan over all subsets of V - {u, v}


def _component_mask(nbr, n, start, blocked):
    comp = 1 << start
    changed = True
    while changed:
        changed = False
        for i in range(n):
            if (comp >> i) & 1:
                grown = comp | (nbr[i] & ~blocked)
                if grown != comp:
                    comp = grown
                    changed = True
    return comp


def _make_scan(component_mask):
    def _scan_kernel(nbr, n, u, v, cand, out):
        c = len(cand)
        count = 0
        for code in range(1 << c):
            s_mask = 0
            for b in range(c):
                if (code >> b) & 1:
                    s_mask |= 1 << cand[b]
            cu = component_mask(nbr, n, u, s_mask)
            if (cu >> v) & 1:
                continue
            cv = component_mask(nbr, n, v, s_mask)
            ok = True
            for b in range(c):
                if (code >> b) & 1:
                    x = cand[b]
                    if (nbr[x] & cu) == 0 or (nbr[x] & cv) == 0:
                        ok = False
                        break
            if ok:
                out[count] = s_mask
                count += 1
        return count

    return _scan_kernel


_scan_kernel = _make_scan(_component_mask)
_scan_jit = _jit(_make_scan(_jit(_component_mask)))


def scan_minimal_separators(nbr_masks: np.ndarray, n: int, u: int, v: int) -> list[int]:
    """Bitmasks of every minimal u-v separator (full-component criterion)."""
    cand = np.array([x for x in range(n) if x not in (u, v)], dtype=np.int64)
    if USE_NUMBA:
        out = np.empty(1 << cand.shape[0], dtype=np.int64)
        cnt = _scan_jit(nbr_masks.astype(np.int64), n, u, v, cand, out)
        return [int(x) for x in out[:cnt]]
    out_l = [0] * (1 << cand.shape[0])
    cnt = _scan_kernel([int(x) for x in nbr_masks], n, u, v, cand.tolist(), out_l)
    return out_l[:cnt]


# ---------------------------------------------------------------------------
# brute-force canonical code: min over vertex orderings of the graph6 bit string


def _canon_kernel(adj, perms, iu, ju):
    nbits = iu.shape[0]
    best = -1
    best_k = 0
    for k in range(perms.shape[0]):
        code = 0
        for b in range(nbits):
            code = (code << 1) | adj[perms[k, iu[b]], perms[k, ju[b]]]
        if best < 0 or code < best:
            best = code
            best_k = k
    return best, best_k


_canon_jit = _jit(_canon_kernel)


def canonical_code(adj: np.ndarray, perms: np.ndarray) -> tuple[int, int]:
    """(minimum code, index of a minimising permutation) over ``perms``.

    Bit b of the code (most significant first) is the adjacency of the pair
    (perm[i_b], perm[j_b]) in graph6 upper-triangle order.
    """
    n = adj.shape[0]
    iu, ju = _graph6_pairs(n)
    if USE_NUMBA and iu.shape[0] <= 62:
        best, k = _canon_jit(adj.astype(np.int64), perms.astype(np.int64), iu, ju)
        return int(best), int(k)
    if iu.shape[0] == 0:
        return 0, 0
    bits = adj[perms[:, iu], perms[:, ju]].astype(np.int64)
    if iu.shape[0] <= 62:
        weights = np.left_shift(np.int64(1), np.arange(iu.shape[0] - 1, -1, -1, dtype=np.int64))
        codes = bits @ weights
        k = int(np.argmin(codes))
        return int(codes[k]), k
    # wide codes: lexicographic argmin over rows
    order = np.lexsort(bits.T[::-1])
    k = int(order[0])
    return int("".join(map(str, bits[k])), 2), k


def _graph6_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    iu, ju = [], []
    for j in range(1, n):
        for i in range(j):
            iu.append(i)
            ju.append(j)
    return np.array(iu, dtype=np.int64), np.array(ju, dtype=np.int64)

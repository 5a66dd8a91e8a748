"""Compiled inner loops.

Push kernels run until the queue empties or ``stop_at`` pushes have been
made, so the caller can pause them for checkpoints and resume with the same
arrays.  ``ctr`` holds ``[head, size, pushes, touched_arcs]`` of the ring
buffer queue.
"""
import numpy as np
from numba import njit

DONE = 0
PAUSED = 1
WATCHDOG = 2
DIVERGED = 3
LOG_FULL = 4


@njit(cache=True, nogil=True)
def bli_push(in_offsets, in_targets, d, z_hat, r, thresh, queue, in_queue, ctr,
             stop_at, max_pushes, pop_log):
    n = z_hat.shape[0]
    head, size, pushes, touched = ctr[0], ctr[1], ctr[2], ctr[3]
    status = DONE
    while size > 0:
        if pushes >= stop_at:
            status = PAUSED
            break
        if pushes >= max_pushes:
            status = WATCHDOG
            break
        if pushes < pop_log.shape[0]:
            pass
        elif pop_log.shape[0] > 0:
            status = LOG_FULL
            break
        v = queue[head]
        head += 1
        if head == n:
            head = 0
        size -= 1
        in_queue[v] = 0
        if pop_log.shape[0] > 0:
            pop_log[pushes] = v
        rv = r[v]
        inc = rv / (1.0 + d[v])
        z_hat[v] += inc
        for k in range(in_offsets[v], in_offsets[v + 1]):
            u = in_targets[k]
            r[u] += inc
            if r[u] > thresh[u] and in_queue[u] == 0:
                tail = head + size
                if tail >= n:
                    tail -= n
                queue[tail] = u
                size += 1
                in_queue[u] = 1
        r[v] = 0.0
        pushes += 1
        touched += d[v]
    ctr[0], ctr[1], ctr[2], ctr[3] = head, size, pushes, touched
    return status


@njit(cache=True, nogil=True)
def sor_push(in_offsets, in_targets, d, z_hat, r, thresh, queue, in_queue, ctr,
             stop_at, max_pushes, pop_log, omega, blowup):
    n = z_hat.shape[0]
    head, size, pushes, touched = ctr[0], ctr[1], ctr[2], ctr[3]
    status = DONE
    while size > 0:
        if pushes >= stop_at:
            status = PAUSED
            break
        if pushes >= max_pushes:
            status = WATCHDOG
            break
        if pushes < pop_log.shape[0]:
            pass
        elif pop_log.shape[0] > 0:
            status = LOG_FULL
            break
        v = queue[head]
        head += 1
        if head == n:
            head = 0
        size -= 1
        in_queue[v] = 0
        if pop_log.shape[0] > 0:
            pop_log[pushes] = v
        rv = r[v]
        inc = omega * rv / (1.0 + d[v])
        z_hat[v] += inc
        for k in range(in_offsets[v], in_offsets[v + 1]):
            u = in_targets[k]
            r[u] += inc
            if abs(r[u]) > thresh[u] and in_queue[u] == 0:
                tail = head + size
                if tail >= n:
                    tail -= n
                queue[tail] = u
                size += 1
                in_queue[u] = 1
        r[v] = (1.0 - omega) * rv
        pushes += 1
        touched += d[v]
        if abs(r[v]) > thresh[v] and in_queue[v] == 0:
            tail = head + size
            if tail >= n:
                tail -= n
            queue[tail] = v
            size += 1
            in_queue[v] = 1
        if abs(rv) > blowup:
            status = DIVERGED
            break
    ctr[0], ctr[1], ctr[2], ctr[3] = head, size, pushes, touched
    return status


@njit(cache=True, nogil=True)
def discounted_walks(out_offsets, out_targets, d, starts, walk_len, seed, ends, steps):
    """Run one walk per entry of ``starts``; write the end node and step count.

    At node ``j`` the walk stops with probability ``1/(1+d_j)``, otherwise it
    moves to a uniform out-neighbour.  ``steps[k] == walk_len`` with no stop
    marks truncation.  Returns the number of truncated walks.
    """
    np.random.seed(seed)
    truncated = 0
    for k in range(starts.shape[0]):
        v = starts[k]
        t = 0
        stopped = False
        while t < walk_len:
            t += 1
            dv = d[v]
            if dv == 0 or np.random.random() * (1.0 + dv) < 1.0:
                stopped = True
                break
            v = out_targets[out_offsets[v] + np.random.randint(dv)]
        ends[k] = v
        steps[k] = t
        if not stopped:
            truncated += 1
    return truncated


@njit(cache=True, nogil=True)
def walk_means(out_offsets, out_targets, d, s, nodes, num_walks, walk_len, seed, est):
    """``est[k]`` = mean of ``s`` at the end of ``num_walks`` walks from ``nodes[k]``."""
    np.random.seed(seed)
    truncated = 0
    for k in range(nodes.shape[0]):
        acc = 0.0
        for _ in range(num_walks):
            v = nodes[k]
            t = 0
            stopped = False
            while t < walk_len:
                t += 1
                dv = d[v]
                if dv == 0 or np.random.random() * (1.0 + dv) < 1.0:
                    stopped = True
                    break
                v = out_targets[out_offsets[v] + np.random.randint(dv)]
            acc += s[v]
            if not stopped:
                truncated += 1
        est[k] = acc / num_walks
    return truncated


@njit(cache=True, nogil=True)
def _wilson_once(out_offsets, out_targets, d, nxt, in_tree, root):
    n = d.shape[0]
    for i in range(n):
        in_tree[i] = 0
    for i in range(n):
        u = i
        while in_tree[u] == 0:
            du = d[u]
            if du == 0 or np.random.random() * (1.0 + du) < 1.0:
                nxt[u] = -1
                break
            nxt[u] = out_targets[out_offsets[u] + np.random.randint(du)]
            u = nxt[u]
        # u is now the absorbing end: a fresh root, or a node already in the forest
        rt = u if in_tree[u] == 0 else root[u]
        u = i
        while in_tree[u] == 0:
            in_tree[u] = 1
            root[u] = rt
            if nxt[u] < 0:
                break
            u = nxt[u]


@njit(cache=True, nogil=True)
def wilson_forest(out_offsets, out_targets, d, seed, parent, root):
    """One converging forest; ``parent[v] == -1`` marks a root."""
    np.random.seed(seed)
    in_tree = np.zeros(d.shape[0], dtype=np.uint8)
    _wilson_once(out_offsets, out_targets, d, parent, in_tree, root)


@njit(cache=True, nogil=True)
def forest_accumulate(out_offsets, out_targets, d, s, l, seed, acc, root_counts):
    """Sum ``s[root[i]]`` over ``l`` forests; optionally tally root frequencies.

    ``root_counts`` is either empty or an ``(n, n)`` integer matrix.
    """
    np.random.seed(seed)
    n = d.shape[0]
    nxt = np.empty(n, dtype=np.int64)
    in_tree = np.zeros(n, dtype=np.uint8)
    root = np.empty(n, dtype=np.int64)
    tally = root_counts.shape[0] > 0
    for _ in range(l):
        _wilson_once(out_offsets, out_targets, d, nxt, in_tree, root)
        for i in range(n):
            acc[i] += s[root[i]]
            if tally:
                root_counts[i, root[i]] += 1

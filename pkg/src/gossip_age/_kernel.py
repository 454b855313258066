"""Numba event loop for the version-age simulator.

One superposed exponential clock drives everything: inter-event times are
Exp(total rate) and the event identity is drawn by the alias method, both
from raw PCG64 uniforms handed in by the caller in chunks (two uniforms per
event, one while fully synced). Keeping the uniform stream explicit makes
trajectories bit-reproducible for a given seed and lets the pure-Python
reference path consume the identical stream.

Per-node age integrals use lazy accounting: a node's version contributes to
its running integral only when the version changes (or at the final flush),
so each event costs O(1) regardless of n. The per-node time-average age over
the window [start, horizon] is then
(integral of source version - integral of node version) / window length.

Fast path: when every node already holds the source's current version, no
push/gossip/contact event can change any state, so the next state change is
the source self-update after Exp(lam_e). The kernel samples it directly and
skips the no-op draws; this is exact by memorylessness of the superposition.

Event kind codes:
    0  source self-update
    1  set node b to the source's version (direct push, or contact with the source)
    2  gossip a -> b (receiver keeps the fresher version)
    3  contact between nodes a and b (both keep the fresher version)
    4  exchange: a and b swap versions
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

__all__ = ["build_alias", "advance"]


def build_alias(weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vose alias table for the categorical distribution weights/sum(weights).

    Deterministic construction (list stacks, fixed iteration order) so the
    sampled index sequence is reproducible across platforms.
    """
    w = np.asarray(weights, dtype=np.float64)
    k = w.size
    if k == 0 or np.any(w < 0) or w.sum() <= 0.0:
        raise ValueError("alias table needs at least one positive weight")
    scaled = w * (k / w.sum())
    prob = np.ones(k)
    alias = np.zeros(k, dtype=np.int64)
    small = [i for i in range(k) if scaled[i] < 1.0]
    large = [i for i in range(k) if scaled[i] >= 1.0]
    while small and large:
        s = small.pop()
        g = large.pop()
        prob[s] = scaled[s]
        alias[s] = g
        scaled[g] = (scaled[g] + scaled[s]) - 1.0
        if scaled[g] < 1.0:
            small.append(g)
        else:
            large.append(g)
    # leftovers are 1.0 up to float drift
    return prob, alias


@njit(cache=True, nogil=True)
def advance(
    kinds,      # int8[m] event kind codes
    ev_a,       # int64[m]
    ev_b,       # int64[m]
    aprob,      # float64[m] alias acceptance probabilities
    aalias,     # int64[m] alias targets
    total,      # float64, superposed rate
    lam_e,      # float64, source self-update rate
    horizon,    # float64
    start,      # float64, averaging-window start (warmup boundary)
    u,          # float64[chunk] uniforms
    pos,        # int64, next unread index in u
    versions,   # int64[n], in place
    node_int,   # float64[n], in place: integral of node version over [start, t]
    node_t,     # float64[n], in place: time of node's last version change
    clock,      # float64
    nsrc,       # int64, source version
    src_int,    # float64, integral of source version
    src_t,      # float64, time of last source version change
    synced,     # int64, count of nodes holding the source's version
    events,     # int64, applied events so far
):
    """Run events until the horizon or until the uniform buffer runs dry.

    Returns (done, pos, clock, nsrc, src_int, src_t, synced, events); when
    done, integrals have been flushed to the horizon.
    """
    n = versions.size
    m = aprob.size
    done = False
    while True:
        if synced == n:
            if lam_e <= 0.0:
                done = True
                break
            if pos >= u.size:
                break
            dt = -math.log1p(-u[pos]) / lam_e
            pos += 1
            t = clock + dt
            if t >= horizon:
                done = True
                break
            # source self-update (only possible state change while synced)
            lo = src_t if src_t > start else start
            hi = t if t > start else start
            src_int += nsrc * (hi - lo)
            src_t = t
            nsrc += 1
            synced = 0
        else:
            if pos + 2 > u.size:
                break
            dt = -math.log1p(-u[pos]) / total
            x = u[pos + 1] * m
            pos += 2
            t = clock + dt
            if t >= horizon:
                done = True
                break
            k = int(x)
            idx = k if x - k < aprob[k] else aalias[k]
            kind = kinds[idx]
            if kind == 0:
                lo = src_t if src_t > start else start
                hi = t if t > start else start
                src_int += nsrc * (hi - lo)
                src_t = t
                nsrc += 1
                synced = 0
            elif kind == 1:
                b = ev_b[idx]
                if versions[b] != nsrc:
                    lo = node_t[b] if node_t[b] > start else start
                    hi = t if t > start else start
                    node_int[b] += versions[b] * (hi - lo)
                    node_t[b] = t
                    versions[b] = nsrc
                    synced += 1
            elif kind == 2:
                a = ev_a[idx]
                b = ev_b[idx]
                va = versions[a]
                if va > versions[b]:
                    lo = node_t[b] if node_t[b] > start else start
                    hi = t if t > start else start
                    node_int[b] += versions[b] * (hi - lo)
                    node_t[b] = t
                    versions[b] = va
                    if va == nsrc:
                        synced += 1
            elif kind == 3:
                a = ev_a[idx]
                b = ev_b[idx]
                va = versions[a]
                vb = versions[b]
                if va > vb:
                    lo = node_t[b] if node_t[b] > start else start
                    hi = t if t > start else start
                    node_int[b] += vb * (hi - lo)
                    node_t[b] = t
                    versions[b] = va
                    if va == nsrc:
                        synced += 1
                elif vb > va:
                    lo = node_t[a] if node_t[a] > start else start
                    hi = t if t > start else start
                    node_int[a] += va * (hi - lo)
                    node_t[a] = t
                    versions[a] = vb
                    if vb == nsrc:
                        synced += 1
            else:  # kind 4, exchange swap
                a = ev_a[idx]
                b = ev_b[idx]
                va = versions[a]
                vb = versions[b]
                if va != vb:
                    lo = node_t[a] if node_t[a] > start else start
                    hi = t if t > start else start
                    node_int[a] += va * (hi - lo)
                    node_t[a] = t
                    lo = node_t[b] if node_t[b] > start else start
                    node_int[b] += vb * (hi - lo)
                    node_t[b] = t
                    versions[a] = vb
                    versions[b] = va
        clock = t
        events += 1

    if done:
        # flush all integrals to the horizon
        lo = src_t if src_t > start else start
        src_int += nsrc * (horizon - lo)
        src_t = horizon
        for i in range(n):
            lo = node_t[i] if node_t[i] > start else start
            node_int[i] += versions[i] * (horizon - lo)
            node_t[i] = horizon
        clock = horizon
    return done, pos, clock, nsrc, src_int, src_t, synced, events

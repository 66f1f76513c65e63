"""Adiabatic eigenvalue tracking along a 1D parameter grid.

Eigen-solvers return states sorted by energy; to follow a physical state
through avoided crossings we re-order columns so that neighbouring grid
points maximize eigenvector overlap.  Exactly degenerate levels (symmetry
pairs) are handled as clusters: within a cluster individual eigenvectors are
gauge-arbitrary, so matching is done on subspaces and an overlap of a cluster
with its partner cluster counts as whole.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["TrackFlag", "track_eigensystems"]


@dataclass(frozen=True)
class TrackFlag:
    """Diagnostic attached to a track where continuity could not be assured."""

    track: int
    grid_index: int
    overlap: float

    def __str__(self):
        return f"track {self.track}: overlap {self.overlap:.3f} at grid index {self.grid_index}"


def _clusters(vals: np.ndarray, tol: float):
    """Group indices of (sorted) vals into degenerate clusters."""
    groups, cur = [], [0]
    for i in range(1, len(vals)):
        if vals[i] - vals[cur[-1]] <= tol:
            cur.append(i)
        else:
            groups.append(cur)
            cur = [i]
    groups.append(cur)
    return groups


def track_eigensystems(energies, vectors, start=-1, degeneracy_tol=1e-10,
                       overlap_threshold=0.5):
    """Reorder per-point eigen-systems into continuous tracks.

    Parameters
    ----------
    energies : (npts, nstates) array, ascending per point.
    vectors : (npts, dim, nstates) array, column k belongs to energies[:, k].
    start : grid index whose energy-ordering defines the track numbering
        (default: last point, i.e. the large-separation asymptote).
    degeneracy_tol : absolute energy gap below which levels form a cluster.
    overlap_threshold : squared-overlap below which a TrackFlag is recorded.

    Returns (tracked_energies, tracked_vectors, flags).  Tracks are continued
    from ``start`` outwards in both directions by greedy cluster assignment on
    the squared-overlap matrix.
    """
    energies = np.asarray(energies)
    vectors = np.asarray(vectors)
    npts, nstates = energies.shape
    order = np.empty((npts, nstates), dtype=int)
    start = start % npts
    order[start] = np.arange(nstates)
    flags: list[TrackFlag] = []

    def assign(i_prev, i_cur):
        vp = vectors[i_prev][:, order[i_prev]]
        vc = vectors[i_cur]
        ov2 = np.abs(vp.conj().T @ vc) ** 2  # (track, cur-state)
        cl_prev = _clusters(energies[i_prev][order[i_prev]].real, degeneracy_tol)
        cl_cur = _clusters(energies[i_cur].real, degeneracy_tol)
        perm = np.full(nstates, -1, dtype=int)
        col_taken = np.zeros(nstates, dtype=bool)
        # greedy cluster matching on total squared overlap, equal sizes first
        pairs = []
        for a, rows in enumerate(cl_prev):
            for b, cols in enumerate(cl_cur):
                pairs.append((ov2[np.ix_(rows, cols)].sum(), len(rows) != len(cols), a, b))
        pairs.sort(key=lambda p: (p[1], -p[0]))
        row_done = [False] * len(cl_prev)
        col_done = [False] * len(cl_cur)
        for total, _, a, b in pairs:
            if row_done[a] or col_done[b] or len(cl_prev[a]) != len(cl_cur[b]):
                continue
            rows, cols = list(cl_prev[a]), list(cl_cur[b])
            frac = total / len(rows)
            if frac < overlap_threshold:
                for t in rows:
                    flags.append(TrackFlag(track=int(t), grid_index=i_cur, overlap=float(frac)))
            sub = ov2[np.ix_(rows, cols)].copy()
            for _ in rows:
                r, c = np.unravel_index(np.argmax(sub), sub.shape)
                perm[rows[r]] = cols[c]
                col_taken[cols[c]] = True
                sub[r, :] = -1.0
                sub[:, c] = -1.0
            row_done[a] = col_done[b] = True
        # leftovers (cluster structure changed along the grid): best remaining
        for t in np.nonzero(perm < 0)[0]:
            free = np.nonzero(~col_taken)[0]
            best = free[np.argmax(ov2[t, free])]
            perm[t] = best
            col_taken[best] = True
            if ov2[t, best] < overlap_threshold:
                flags.append(TrackFlag(track=int(t), grid_index=i_cur, overlap=float(ov2[t, best])))
        order[i_cur] = perm

    for i in range(start + 1, npts):
        assign(i - 1, i)
    for i in range(start - 1, -1, -1):
        assign(i + 1, i)

    te = np.take_along_axis(energies, order, axis=1)
    tv = np.stack([vectors[i][:, order[i]] for i in range(npts)])
    return te, tv, flags

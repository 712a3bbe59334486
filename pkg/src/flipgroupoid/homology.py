"""Integer homology of the square/pentagon 2-complex on an exchange graph.

The 2-cells are the geometric squares and pentagons (each unoriented
relation cycle counted once, not once per basepoint).  H_1 is computed
exactly over the integers: the cycle lattice of the graph has the
fundamental cycles of the non-tree edges as a basis, and in that basis a
cell boundary is simply its restriction to non-tree coordinates, so the
first homology is read off the Smith normal form of one integer matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exchange import ExchangeGraph, RelationInstance, RelationKind, all_relation_instances

__all__ = ["smith_normal_form", "invariant_factors", "two_cells", "homology_h1", "face_census"]


def smith_normal_form(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact integer Smith normal form: returns (U, D, V) with D = U @ M @ V,
    U and V unimodular, D diagonal with d1 | d2 | ... >= 0."""
    A = [[int(x) for x in row] for row in np.atleast_2d(np.asarray(M))]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(r1, r2, q):  # A[r1] -= q * A[r2]
        A[r1] = [a - q * b for a, b in zip(A[r1], A[r2])]
        U[r1] = [a - q * b for a, b in zip(U[r1], U[r2])]

    def col_op(c1, c2, q):  # A[:,c1] -= q * A[:,c2]
        for r in range(rows):
            A[r][c1] -= q * A[r][c2]
        for r in range(cols):
            V[r][c1] -= q * V[r][c2]

    def swap_rows(r1, r2):
        A[r1], A[r2] = A[r2], A[r1]
        U[r1], U[r2] = U[r2], U[r1]

    def swap_cols(c1, c2):
        for r in range(rows):
            A[r][c1], A[r][c2] = A[r][c2], A[r][c1]
        for r in range(cols):
            V[r][c1], V[r][c2] = V[r][c2], V[r][c1]

    t = 0
    while t < min(rows, cols):
        # smallest nonzero entry of the trailing block as pivot
        best = None
        for r in range(t, rows):
            for c in range(t, cols):
                if A[r][c] != 0 and (best is None or abs(A[r][c]) < abs(A[best[0]][best[1]])):
                    best = (r, c)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            done = True
            for r in range(t + 1, rows):
                if A[r][t] != 0:
                    q = A[r][t] // p
                    row_op(r, t, q)
                    if A[r][t] != 0:  # remainder becomes the better pivot
                        swap_rows(t, r)
                        done = False
                        break
            if not done:
                continue
            for c in range(t + 1, cols):
                if A[t][c] != 0:
                    q = A[t][c] // p
                    col_op(c, t, q)
                    if A[t][c] != 0:
                        swap_cols(t, c)
                        done = False
                        break
            if done:
                break
        # divisibility: pivot must divide the whole trailing block
        p = A[t][t]
        offender = None
        for r in range(t + 1, rows):
            for c in range(t + 1, cols):
                if A[r][c] % p != 0:
                    offender = r
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)  # A[t] += A[offender], restart this pivot
            continue
        if p < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return (
        np.array(U, dtype=object),
        np.array(A, dtype=object),
        np.array(V, dtype=object),
    )


def invariant_factors(M) -> list[int]:
    """Diagonal of the Smith normal form, nonzero entries only.

    Vectorized elimination without transform tracking; falls back to exact
    Python integers if entries threaten to overflow int64.
    """
    A = np.array(np.atleast_2d(np.asarray(M)), dtype=np.int64)
    if A.size == 0:
        return []
    out: list[int] = []
    t = 0
    rows, cols = A.shape
    while t < rows and t < cols:
        if np.abs(A[t:, t:]).max(initial=0) > 2**30:
            return out + _invariant_factors_exact(A[t:, t:])
        sub = A[t:, t:]
        nz = sub != 0
        if not nz.any():
            break
        absval = np.where(nz, np.abs(sub), np.iinfo(np.int64).max)
        r, c = np.unravel_index(np.argmin(absval), absval.shape)
        r += t
        c += t
        A[[t, r], :] = A[[r, t], :]
        A[:, [t, c]] = A[:, [c, t]]
        while True:
            p = int(A[t, t])
            col = A[t + 1:, t]
            if col.any():
                q = col // p
                A[t + 1:, :] -= np.outer(q, A[t, :])
                rem = A[t + 1:, t]
                if rem.any():
                    r = int(np.nonzero(rem)[0][0]) + t + 1
                    A[[t, r], :] = A[[r, t], :]
                    continue
            row = A[t, t + 1:]
            if row.any():
                q = row // p
                A[:, t + 1:] -= np.outer(A[:, t], q)
                rem = A[t, t + 1:]
                if rem.any():
                    c = int(np.nonzero(rem)[0][0]) + t + 1
                    A[:, [t, c]] = A[:, [c, t]]
                    continue
            break
        p = abs(int(A[t, t]))
        if p != 1:
            bad = np.nonzero((A[t + 1:, t + 1:] % p).any(axis=1))[0]
            if bad.size:
                A[t, :] += A[bad[0] + t + 1, :]
                continue
        # p divides the whole trailing block, so the chain d1 | d2 | ... holds
        out.append(p)
        t += 1
    return out


def _invariant_factors_exact(A) -> list[int]:
    _, D, _ = smith_normal_form(np.array(A, dtype=object))
    return [int(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0]


@dataclass(frozen=True)
class TwoCell:
    kind: RelationKind
    edges: tuple  # signed canonical edge ids around the cycle


def _cycle_of(instance: RelationInstance, g: ExchangeGraph):
    """Signed canonical edges around left path then reversed right path."""
    cyc = []
    for (v, k) in instance.left_steps:
        eid = g.edge_id(v, k)
        cyc.append((eid, 1 if eid == (v, k) else -1))
    for (v, k) in reversed(instance.right_steps):
        eid = g.edge_id(v, k)
        cyc.append((eid, -1 if eid == (v, k) else 1))
    return tuple(cyc)


def two_cells(g: ExchangeGraph) -> list[TwoCell]:
    """Distinct unoriented squares and pentagons of the graph."""
    if not g.is_complete():
        raise ValueError("2-complex needs a fully enumerated graph")
    seen = {}
    for inst in all_relation_instances(g):
        if inst.kind is RelationKind.HEX_DUMBBELL:
            continue
        if not inst.co_terminates():
            raise RuntimeError("relation instance does not close")
        cyc = _cycle_of(inst, g)
        key = frozenset(e for e, _ in cyc)
        if key not in seen:
            seen[key] = TwoCell(inst.kind, cyc)
    return [seen[k] for k in sorted(seen, key=sorted)]


def face_census(g: ExchangeGraph) -> dict:
    cells = two_cells(g)
    return {
        "squares": sum(c.kind is RelationKind.SQUARE for c in cells),
        "pentagons": sum(c.kind is RelationKind.PENTAGON for c in cells),
    }


def homology_h1(g: ExchangeGraph) -> tuple[int, list[int]]:
    """First Betti number and torsion of the square+pentagon 2-complex."""
    if not g.is_complete():
        raise ValueError("homology needs a fully enumerated graph")
    edges = g.unoriented_edges()
    eindex = {(v, k): i for i, (v, k, _, _) in enumerate(edges)}
    nv, ne = g.vertex_count(), len(edges)

    # spanning tree; the non-tree edges index the cycle lattice basis
    tree_edges = set()
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for k in sorted(g.nbr[v]):
            u, k2 = g.nbr[v][k]
            if u not in seen:
                seen.add(u)
                tree_edges.add(g.edge_id(v, k))
                stack.append(u)
    if len(seen) != nv:
        raise RuntimeError("exchange graph is not connected")
    nontree = [i for i, (v, k, _, _) in enumerate(edges) if (v, k) not in tree_edges]
    pos = {i: r for r, i in enumerate(nontree)}

    cells = two_cells(g)
    M = np.zeros((len(nontree), len(cells)), dtype=np.int64)
    for c, cell in enumerate(cells):
        for eid, sign in cell.edges:
            r = pos.get(eindex[eid])
            if r is not None:
                M[r, c] += sign
    factors = invariant_factors(M) if M.size else []
    rank = len(factors)
    betti = len(nontree) - rank
    torsion = [d for d in factors if d not in (1, -1)]
    return betti, torsion

"""Structured symmetric {1}-inverses of pocket-graph Laplacians.

The full Laplacian is never assembled or inverted here: every inverse taken
is of a matrix no larger than max(n, l, m-l) (or max(k, n-k, l, m-l) on the
split-base path), and the full-size {1}-inverse is assembled from Kronecker
blocks of those small factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import (
    BlockLayout,
    Graph,
    PocketSpec,
    is_connected,
    join,
    laplacian,
    make_layout,
)
from .linalg import invert, kron, pseudo_inverse_laplacian, shifted_group_inverse


@dataclass(frozen=True)
class StructuredOneInverse:
    """A symmetric {1}-inverse over the full vertex set, plus its factors.

    ``matrix`` is indexed by global vertex ids. ``ingredients`` keeps the
    small factors (base group inverse, P/Q inverses, couplings) for audit.
    """

    matrix: np.ndarray
    layout: BlockLayout
    ingredients: dict


def one_inverse_lemma26(a: np.ndarray, b: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Symmetric {1}-inverse of the Laplacian [[A, B], [B^T, D]].

    With H = A - B D^-1 B^T and H# its group inverse, returns
    [[H#, -H# B D^-1], [-D^-1 B^T H#, D^-1 + D^-1 B^T H# B D^-1]].
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = np.asarray(d, dtype=float)
    d_inv = invert(d)
    h = a - b @ d_inv @ b.T
    h_sharp = _group_inverse_sym(h)
    top_right = -h_sharp @ b @ d_inv
    return np.block(
        [
            [h_sharp, top_right],
            [top_right.T, d_inv + d_inv @ b.T @ h_sharp @ b @ d_inv],
        ]
    )


def _group_inverse_sym(h: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Group inverse of a symmetric matrix.

    Laplacian-shaped inputs (rows summing to zero) go through the
    rank-correction identity; anything else through a spectral pseudoinverse
    (group inverse equals Moore-Penrose for symmetric matrices).
    """
    n = h.shape[0]
    if n == 0:
        return np.zeros((0, 0))
    scale = max(np.abs(h).max(), 1.0)
    if np.abs(h.sum(axis=1)).max() <= tol * scale:
        return pseudo_inverse_laplacian(h)
    w, v = np.linalg.eigh(h)
    inv_w = np.where(np.abs(w) > tol * scale, 1.0 / np.where(w == 0, 1.0, w), 0.0)
    return (v * inv_w) @ v.T


def _p_factor(h1: Graph, m: int) -> np.ndarray:
    l = h1.order
    return (
        laplacian(h1)
        + (m - l + 1) * np.eye(l)
        - ((m - l) / l) * np.ones((l, l))
    )


def _q_factor(h2: Graph, l: int, m: int) -> np.ndarray:
    q = m - l
    return (
        laplacian(h2)
        + l * np.eye(q)
        - (l / (m - l + 1)) * np.ones((q, q))
    )


def pocket_d_inverse(
    h1: Graph, h2: Graph, copies: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Closed-form inverse blocks of the pocket block D.

    D is the 2x2 block [[(L(H1)+(m-l+1)I) (x) I, -J (x) I],
    [-J (x) I, (L(H2)+lI) (x) I]]; its inverse has diagonal blocks
    P^-1 (x) I and Q^-1 (x) I and constant coupling (1/l) J (x) I.
    """
    if h1.order < 1 or copies < 1:
        raise ValueError("need l >= 1 and copies >= 1")
    l, m = h1.order, h1.order + h2.order
    eye = np.eye(copies)
    p_inv = kron(invert(_p_factor(h1, m)), eye)
    if m == l:
        q_inv = np.zeros((0, 0))
        coupling = np.zeros((l * copies, 0))
    else:
        q_inv = kron(invert(_q_factor(h2, l, m)), eye)
        coupling = kron(np.full((l, m - l), 1.0 / l), eye)
    return p_inv, q_inv, coupling


def _assemble(blocks: list[list[np.ndarray]]) -> np.ndarray:
    rows = [b for row in blocks for b in row if b.shape[0] and b.shape[1]]
    if not rows:
        sizes_r = sum(row[0].shape[0] for row in blocks)
        return np.zeros((sizes_r, sizes_r))
    keep_cols = [j for j in range(len(blocks[0])) if blocks[0][j].shape[1]]
    keep_rows = [i for i in range(len(blocks)) if blocks[i][0].shape[0]]
    trimmed = [[blocks[i][j] for j in keep_cols] for i in keep_rows]
    return np.block(trimmed)


def _to_global(n_block: np.ndarray, layout: BlockLayout) -> np.ndarray:
    perm = layout.to_global()
    out = np.empty_like(n_block)
    out[np.ix_(perm, perm)] = n_block
    return out


def theorem3_one_inverse(spec: PocketSpec) -> StructuredOneInverse:
    """Structured {1}-inverse for the all-vertices-pocketed case (k = n).

    Blocks: base group inverse L#(F), P^-1 + J (x) L#(F) on the H1 block,
    Q^-1 + J (x) L#(F) on the H2 block, and the corresponding row-sum and
    constant couplings.
    """
    if spec.k != spec.n:
        raise ValueError("this path requires a pocket at every vertex (k = n)")
    layout = make_layout(spec)
    n, l, m = spec.n, spec.l, spec.m
    lf = _permuted_base_laplacian(spec.F, layout.f_order)
    lf_sharp = pseudo_inverse_laplacian(lf)

    p_inv, q_inv, _ = pocket_d_inverse(spec.H1, spec.H2, n)
    ones_l = np.ones((1, l))
    ones_q = np.ones((1, m - l))
    f_h1 = kron(ones_l, lf_sharp)
    f_h2 = kron(ones_q, lf_sharp)
    h1_h1 = p_inv + kron(np.ones((l, l)), lf_sharp)
    h2_h2 = q_inv + kron(np.ones((m - l, m - l)), lf_sharp)
    coupling = kron(
        np.ones((l, m - l)), np.eye(n) / l + lf_sharp
    )  # (1/l) J (x) I + J (x) L#(F)

    n_block = _assemble(
        [
            [lf_sharp, f_h1, f_h2],
            [f_h1.T, h1_h1, coupling],
            [f_h2.T, coupling.T, h2_h2],
        ]
    )
    return StructuredOneInverse(
        matrix=_to_global(n_block, layout),
        layout=layout,
        ingredients={
            "base_sharp": lf_sharp,
            "p_inv_factor": invert(_p_factor(spec.H1, m)),
            "q_inv_factor": invert(_q_factor(spec.H2, l, m)) if m > l else np.zeros((0, 0)),
        },
    )


def theorem4_one_inverse(
    f1: Graph, f2: Graph, h1: Graph, h2: Graph
) -> StructuredOneInverse:
    """Structured {1}-inverse for the split base F = F1 v F2.

    Pockets attach to every F1 vertex. The base factor is the group inverse
    of L(F1) + (n-k)I - ((n-k)/k)J, obtained from the shifted-inverse
    identity with shift n - k; requires order(F2) >= 1.
    """
    k, nk, l = f1.order, f2.order, h1.order
    n, m = k + nk, h1.order + h2.order
    if k < 1 or nk < 1:
        raise ValueError("need order(F1) >= 1 and order(F2) >= 1; "
                         "use the all-pocketed path when F2 is absent")
    if l < 1:
        raise ValueError("need l = order(H1) >= 1")
    spec = PocketSpec(join(f1, f2), tuple(range(k)), h1, h2)
    layout = make_layout(spec)

    h_sharp = shifted_group_inverse(laplacian(f1), float(nk))
    f2_inv = invert(laplacian(f2) + k * np.eye(nk))
    p_inv, q_inv, _ = pocket_d_inverse(h1, h2, k)

    f1_f2 = (h_sharp @ np.ones((k, nk))) / k
    f1_h1 = kron(np.ones((1, l)), h_sharp)
    f1_h2 = kron(np.ones((1, m - l)), h_sharp)
    h1_h1 = p_inv + kron(np.ones((l, l)), h_sharp)
    h2_h2 = q_inv + kron(np.ones((m - l, m - l)), h_sharp)
    coupling = kron(np.ones((l, m - l)), h_sharp + np.eye(k) / l)
    z_f2_h1 = np.zeros((nk, l * k))
    z_f2_h2 = np.zeros((nk, (m - l) * k))

    n_block = _assemble(
        [
            [h_sharp, f1_f2, f1_h1, f1_h2],
            [f1_f2.T, f2_inv, z_f2_h1, z_f2_h2],
            [f1_h1.T, z_f2_h1.T, h1_h1, coupling],
            [f1_h2.T, z_f2_h2.T, coupling.T, h2_h2],
        ]
    )
    return StructuredOneInverse(
        matrix=_to_global(n_block, layout),
        layout=layout,
        ingredients={
            "base_sharp": h_sharp,
            "f2_inv": f2_inv,
            "p_inv_factor": invert(_p_factor(h1, m)),
            "q_inv_factor": invert(_q_factor(h2, l, m)) if m > l else np.zeros((0, 0)),
        },
    )


def _permuted_base_laplacian(f: Graph, order: tuple[int, ...]) -> np.ndarray:
    perm = np.asarray(order, dtype=int)
    lf = laplacian(f)
    return lf[np.ix_(perm, perm)]


def split_base_join(spec: PocketSpec) -> tuple[Graph, Graph]:
    """Split F as F1 v F2 with F1 induced on the attachment vertices.

    Raises ValueError when some cross edge is missing (F is not that join)
    or when all vertices are attached (F2 empty).
    """
    attach = list(spec.attach)
    rest = [u for u in range(spec.n) if u not in set(attach)]
    if not rest:
        raise ValueError("F2 is empty: every vertex is attached")
    for a in attach:
        for b in rest:
            if not spec.F.has_edge(a, b):
                raise ValueError(
                    f"F is not F1 v F2: missing cross edge ({a},{b})"
                )
    return spec.F.induced(attach), spec.F.induced(rest)


def structured_one_inverse(spec: PocketSpec) -> StructuredOneInverse:
    """Dispatch: all-pocketed path when k = n, split-base path otherwise.

    The result is indexed by the spec's own global vertex ids, so the
    split-base output is re-permuted when the attachment list is not the
    identity prefix.
    """
    if spec.k == spec.n:
        return theorem3_one_inverse(spec)
    f1, f2 = split_base_join(spec)
    inner = theorem4_one_inverse(f1, f2, spec.H1, spec.H2)
    layout = make_layout(spec)
    # inner.matrix is in block-position order (its own f_order is identity)
    return StructuredOneInverse(
        matrix=_to_global(inner.matrix, layout),
        layout=layout,
        ingredients=inner.ingredients,
    )

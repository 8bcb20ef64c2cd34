"""Multinomial softmax regression, L2-regularized, bias unpenalized.

The objective is the summed negative log-likelihood plus 0.5 * l2 * ||W||^2.
It is minimized by gradient descent with a per-column diagonal
preconditioner (1 / column variance, computed once from the training data)
and Armijo backtracking line search, which keeps the loss non-increasing at
every accepted step. Convergence is declared when the max-norm of the raw
gradient drops to ``tol``; otherwise the loop stops at ``max_iter``.
"""

from __future__ import annotations

import numpy as np

from .tree import N_CLASSES

_ARMIJO_C = 1e-4


def softmax(logits: np.ndarray) -> np.ndarray:
    z = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


def _loss(W, b, X, Y, l2) -> float:
    logits = X @ W.T + b
    m = logits.max(axis=1, keepdims=True)
    lse = m[:, 0] + np.log(np.exp(logits - m).sum(axis=1))
    nll = float(lse.sum() - (logits * Y).sum())
    return nll + 0.5 * l2 * float((W * W).sum())


def _grad(W, b, X, Y, l2):
    logits = X @ W.T + b
    P = softmax(logits)
    D = P - Y
    return D.T @ X + l2 * W, D.sum(axis=0)


def train_softmax(X, y, l2: float = 1.0, tol: float = 1e-6, max_iter: int = 10000):
    """Returns (W, b, info); info records the loss trajectory and convergence."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n, d = X.shape
    Y = np.zeros((n, N_CLASSES), dtype=np.float64)
    Y[np.arange(n), y] = 1.0

    scale = X.std(axis=0)
    scale[scale < 1e-12] = 1.0
    precond = 1.0 / scale**2  # diagonal preconditioner per feature column

    W = np.zeros((N_CLASSES, d), dtype=np.float64)
    b = np.zeros(N_CLASSES, dtype=np.float64)
    loss = _loss(W, b, X, Y, l2)
    losses = [loss]
    eta = 1.0
    converged = False
    iterations = 0

    for iterations in range(1, max_iter + 1):
        GW, gb = _grad(W, b, X, Y, l2)
        grad_max = max(float(np.abs(GW).max()), float(np.abs(gb).max()))
        if grad_max <= tol:
            converged = True
            iterations -= 1
            break
        DW = GW * precond
        db = gb
        slope = float((GW * DW).sum() + (gb * db).sum())
        eta = min(eta * 2.0, 1e8)
        while True:
            cand_loss = _loss(W - eta * DW, b - eta * db, X, Y, l2)
            if cand_loss <= loss - _ARMIJO_C * eta * slope or eta < 1e-18:
                break
            eta *= 0.5
        if cand_loss > loss:
            break  # line search bottomed out: no representable descent
        W = W - eta * DW
        b = b - eta * db
        loss = cand_loss
        losses.append(loss)

    GW, gb = _grad(W, b, X, Y, l2)
    info = {
        "converged": converged,
        "iterations": iterations,
        "final_grad_max": max(float(np.abs(GW).max()), float(np.abs(gb).max())),
        "losses": losses,
    }
    return W, b, info


def logreg_scores_matrix(W: np.ndarray, b: np.ndarray, X: np.ndarray) -> np.ndarray:
    return softmax(X @ W.T + b)

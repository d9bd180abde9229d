"""Independent reference solvers used by the tests."""

import numpy as np
from scipy.optimize import linprog


def lp_minimax(head, nodes=512, rounds=30):
    """Chebyshev-center LP on a grid, refined by adding the worst points."""
    f = head.trig()
    N = head.n - head.l
    k = np.arange(N)

    def basis(phi):
        return np.hstack([np.cos(np.multiply.outer(phi, k)), np.sin(np.multiply.outer(phi, k[1:]))])

    phi = 2 * np.pi * np.arange(nodes) / nodes
    fine = 2 * np.pi * np.arange(64 * nodes) / (64 * nodes)
    for _ in range(rounds):
        B = basis(phi)
        m = B.shape[1]
        ones = np.ones((phi.size, 1))
        A = np.vstack([np.hstack([B, -ones]), np.hstack([-B, -ones])])
        b = np.concatenate([-f(phi), f(phi)])
        res = linprog(np.r_[np.zeros(m), 1.0], A_ub=A, b_ub=b, bounds=[(None, None)] * m + [(0, None)], method="highs")
        c, h = res.x[:m], res.x[-1]
        e = np.abs(f(fine) + basis(fine) @ c)
        if e.max() - h <= 1e-10:
            break
        peaks = fine[(e >= np.roll(e, 1)) & (e >= np.roll(e, -1)) & (e > h)]
        phi = np.unique(np.r_[phi, peaks])
    return e.max()

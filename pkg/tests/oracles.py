"""Independent dense-linear-algebra oracles used by several test files."""
import numpy as np

from semidual import fp


def naive_betti(M, L):
    """beta_i = dim Tor_i(M, k) for i <= L from a deliberately non-minimal resolution.

    Every stage is covered by a free module with one generator per k-basis
    vector of the kernel; Tor(-, k) is then read off the differentials modulo
    the maximal ideal.  Shares nothing with the minimal-resolution code apart
    from modular rank and nullspace.
    """
    A, p = M.algebra, M.p
    one = A.index[A.ctx.one()]
    acts = M.basis_actions.astype(np.int64)  # (c, dim M, dim M)
    gens = np.eye(M.dim, dtype=np.int64)  # generator vectors in the current target
    target_acts = acts
    reduced = []  # d_i modulo m as k-matrices (rows: target gens, cols: source gens)
    for _ in range(L + 1):
        # cover map R^g -> target: column (s, c) = basis monomial c applied to generator s
        cover = np.einsum("cab,bs->asc", target_acts, gens) % p
        cover = cover.reshape(target_acts.shape[1], -1)
        ker = fp.nullspace(cover, p).astype(np.int64)  # inside R^g, index s * dimA + c
        g = gens.shape[1]
        # coefficient of the unit monomial of each kernel vector gives the map to k^g
        reduced.append(ker.reshape(g, A.dim, -1)[:, one, :] % p)
        # next target: the free module R^g with its actions
        target_acts = np.stack([np.kron(np.eye(g, dtype=np.int64), A.basis_matrices[c])
                                for c in range(A.dim)])
        gens = ker
    # F_i (x) k = k^{g_i}; the map F_{i+1} (x) k -> F_i (x) k is reduced[i]
    sizes = [M.dim] + [r.shape[1] for r in reduced[:-1]]
    ranks = [fp.rank(r, p) if r.size else 0 for r in reduced]
    return [sizes[i] - ranks[i] - (ranks[i - 1] if i else 0) for i in range(L + 1)]


def hom_dim_bruteforce(M, N):
    """dim Hom_R(M, N) from the commuting equations, solved by a single nullspace."""
    p = M.p
    eqs = []
    for am, an in zip(M.actions, N.actions):
        # phi am - an phi = 0 with phi flattened row-major (N.dim x M.dim)
        eqs.append(np.kron(np.eye(N.dim, dtype=np.int64), am.T.astype(np.int64))
                   - np.kron(an.astype(np.int64), np.eye(M.dim, dtype=np.int64)))
    big = np.vstack(eqs) % p
    return M.dim * N.dim - fp.rank(big, p)

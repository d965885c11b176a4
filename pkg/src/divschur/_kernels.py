"""Hot loops, each with a numba kernel and a pure-numpy twin.

The public wrappers pick the compiled path when :func:`_accel.numba_enabled`
is true. Both paths must agree to rounding; ``tests/test_kernels.py`` checks
that and ``benchmarks/bench_kernels.py`` times them.
"""
import numpy as np

from ._accel import njit, numba_enabled

# -------------------------------------------------------- divided-difference grid


@njit
def _divdiff_tensor_nb(grid, table, k, out):
    N = grid.shape[0]
    idx = np.empty(k + 1, np.int64)
    q = np.empty(k + 1, table.dtype)
    for flat in range(out.shape[0]):
        r = flat
        for a in range(k, -1, -1):
            idx[a] = r % N
            r //= N
        # insertion sort, k is tiny
        for a in range(1, k + 1):
            v = idx[a]
            b = a - 1
            while b >= 0 and idx[b] > v:
                idx[b + 1] = idx[b]
                b -= 1
            idx[b + 1] = v
        for i in range(k + 1):
            q[i] = table[0, idx[i]]
        for j in range(1, k + 1):
            for i in range(k - j + 1):
                if idx[i] == idx[i + j]:
                    q[i] = table[j, idx[i]]
                else:
                    q[i] = (q[i + 1] - q[i]) / (grid[idx[i + j]] - grid[idx[i]])
        out[flat] = q[0]


def _divdiff_tensor_np(grid, table, k, out, chunk=1 << 18):
    N = grid.shape[0]
    total = out.shape[0]
    powers = N ** np.arange(k, -1, -1)
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total))
        idx = np.sort((flat[:, None] // powers[None, :]) % N, axis=1)
        q = table[0][idx]
        with np.errstate(divide="ignore", invalid="ignore"):
            for j in range(1, k + 1):
                same = idx[:, : k - j + 1] == idx[:, j:]
                quot = (q[:, 1: k - j + 2] - q[:, : k - j + 1]) / (
                    grid[idx[:, j:]] - grid[idx[:, : k - j + 1]]
                )
                q = np.where(same, table[j][idx[:, : k - j + 1]], quot)
        out[start: start + len(flat)] = q[:, 0]


def divdiff_tensor(grid, table, k):
    """Tensor of order-k divided differences over ``grid^(k+1)``.

    ``table[d, i]`` holds ``f^(d)(grid[i]) / d!``; repeated indices read it.
    """
    grid = np.ascontiguousarray(grid, dtype=float)
    table = np.ascontiguousarray(table)
    if not np.iscomplexobj(table):
        table = table.astype(float)
    N = grid.shape[0]
    out = np.empty(N ** (k + 1), dtype=table.dtype)
    if numba_enabled():
        _divdiff_tensor_nb(grid, table, k, out)
    else:
        _divdiff_tensor_np(grid, table, k, out)
    return out.reshape((N,) * (k + 1))


# --------------------------------------------------------- bilinear contractions
# out[a, c] = sum_b psi[a, b, c] x[a, b] y[b, c]


@njit
def _contract2_nb(psi, x, y, out):
    N = psi.shape[0]
    for a in range(N):
        for c in range(N):
            s = 0j
            for b in range(N):
                s += psi[a, b, c] * x[a, b] * y[b, c]
            out[a, c] = s


@njit
def _adjoint2_first_nb(psi, y, B, out):
    # out[a, b] = sum_c conj(psi[a,b,c] y[b,c]) B[a,c]
    N = psi.shape[0]
    for a in range(N):
        for b in range(N):
            s = 0j
            for c in range(N):
                s += np.conj(psi[a, b, c] * y[b, c]) * B[a, c]
            out[a, b] = s


@njit
def _adjoint2_second_nb(psi, x, B, out):
    # out[b, c] = sum_a conj(psi[a,b,c] x[a,b]) B[a,c]
    N = psi.shape[0]
    for b in range(N):
        for c in range(N):
            s = 0j
            for a in range(N):
                s += np.conj(psi[a, b, c] * x[a, b]) * B[a, c]
            out[b, c] = s


def _c(a):
    return np.ascontiguousarray(a, dtype=complex)


def contract2(psi, x, y):
    if numba_enabled():
        out = np.empty((psi.shape[0], psi.shape[2]), complex)
        _contract2_nb(_c(psi), _c(x), _c(y), out)
        return out
    return np.einsum("abc,ab,bc->ac", psi, x, y)


def adjoint2(psi, xs, slot, B):
    """Adjoint of ``x_slot -> T_psi(x_1, x_2)`` applied to ``B`` (n = 2)."""
    if numba_enabled():
        out = np.empty((psi.shape[0], psi.shape[0]), complex)
        if slot == 0:
            _adjoint2_first_nb(_c(psi), _c(xs[1]), _c(B), out)
        else:
            _adjoint2_second_nb(_c(psi), _c(xs[0]), _c(B), out)
        return out
    if slot == 0:
        return np.einsum("abc,bc,ac->ab", np.conj(psi), np.conj(xs[1]), B)
    return np.einsum("abc,ab,ac->bc", np.conj(psi), np.conj(xs[0]), B)

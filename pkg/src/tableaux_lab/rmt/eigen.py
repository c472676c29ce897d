"""Hermitian eigensolver: complex Householder reduction, then implicit QL.

The reduction produces a real symmetric tridiagonal matrix with
nonnegative off-diagonal (phases are rotated away), which is what the
chi-band model of the GUE looks like.  QL with Wilkinson-type shifts then
diagonalizes it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from ..errors import NoConvergence, NotHermitian

MAX_SWEEPS_PER_EIGENVALUE = 50
HERMITIAN_TOLERANCE = 1e-12


@dataclass(frozen=True)
class HermitianMatrix:
    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def to_text(self) -> str:
        """``n`` on the first line, then ``n*n`` lines of ``re im`` row-major."""
        lines = [str(self.dim)]
        lines += [f"{float(z.real)!r} {float(z.imag)!r}" for z in self.entries.ravel()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "HermitianMatrix":
        tokens = text.split()
        n = int(tokens[0])
        vals = np.array(tokens[1:1 + 2 * n * n], dtype=float)
        if vals.size != 2 * n * n:
            raise ValueError("truncated matrix text")
        return cls((vals[0::2] + 1j * vals[1::2]).reshape(n, n))


@dataclass(frozen=True)
class TridiagonalModel:
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        e = np.asarray(self.offdiag, dtype=float)
        if e.shape != (max(d.size - 1, 0),):
            raise ValueError("offdiag must have length len(diag) - 1")
        if np.any(e < 0):
            raise ValueError("offdiag entries must be nonnegative")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def dim(self) -> int:
        return self.diag.size

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


@dataclass(frozen=True)
class BlockSpec:
    """Block sizes ``d_1..d_K`` of a block-diagonal matrix."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"block sizes must be positive, got {self.dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def m(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return tuple(out)

    def slices(self) -> list[slice]:
        return [slice(o, o + d) for o, d in zip(self.offsets, self.dims)]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with their block layout.

    With ``ordered_within_blocks`` each block is sorted largest first and the
    blocks are concatenated; otherwise values are globally ascending.
    """

    values: np.ndarray
    blocks: BlockSpec | None = None
    ordered_within_blocks: bool = False

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if self.blocks is None:
            object.__setattr__(self, "blocks", BlockSpec((max(v.size, 1),)) if v.size else None)
        elif self.blocks.m != v.size:
            raise ValueError("block sizes do not add up to the number of values")

    def block_values(self) -> list[np.ndarray]:
        if self.blocks is None:
            return []
        return [self.values[s] for s in self.blocks.slices()]

    def to_csv_rows(self) -> list[str]:
        rows = ["block,index,value"]
        for k, block in enumerate(self.block_values(), start=1):
            rows += [f"{k},{i},{float(v)!r}" for i, v in enumerate(block, start=1)]
        return rows


@njit(cache=True)
def _householder(a, want_q):
    """Reduce Hermitian ``a`` (overwritten) so that ``q^H a q`` is real tridiagonal."""
    n = a.shape[0]
    q = np.eye(n, dtype=np.complex128)
    for k in range(n - 2):
        x = a[k + 1:, k].copy()
        tail = 0.0
        for i in range(1, x.size):
            tail += x[i].real ** 2 + x[i].imag ** 2
        if tail == 0.0:
            continue
        norm = np.sqrt(tail + x[0].real ** 2 + x[0].imag ** 2)
        ax0 = abs(x[0])
        phase = x[0] / ax0 if ax0 > 0 else 1.0 + 0.0j
        v = x
        v[0] += phase * norm
        vnorm2 = 0.0
        for i in range(v.size):
            vnorm2 += v[i].real ** 2 + v[i].imag ** 2
        beta = 2.0 / vnorm2
        sub = a[k + 1:, k + 1:]
        w = np.zeros(v.size, dtype=np.complex128)
        for i in range(v.size):
            acc = 0.0 + 0.0j
            for j in range(v.size):
                acc += sub[i, j] * v[j]
            w[i] = beta * acc
        vw = 0.0 + 0.0j
        for i in range(v.size):
            vw += np.conj(v[i]) * w[i]
        qv = w - (0.5 * beta * vw) * v
        for i in range(v.size):
            for j in range(v.size):
                sub[i, j] -= v[i] * np.conj(qv[j]) + qv[i] * np.conj(v[j])
        a[k + 1, k] = -phase * norm
        a[k, k + 1] = np.conj(a[k + 1, k])
        for i in range(k + 2, n):
            a[i, k] = 0.0
            a[k, i] = 0.0
        if want_q:
            qs = q[:, k + 1:]
            qsv = np.zeros(n, dtype=np.complex128)
            for i in range(n):
                for j in range(v.size):
                    qsv[i] += qs[i, j] * v[j]
            for i in range(n):
                for j in range(v.size):
                    qs[i, j] -= beta * qsv[i] * np.conj(v[j])
    d = np.empty(n)
    e = np.zeros(max(n - 1, 0))
    ph = 1.0 + 0.0j
    for i in range(n):
        d[i] = a[i, i].real
        if want_q:
            for r in range(n):
                q[r, i] *= ph
        if i < n - 1:
            s = a[i + 1, i]
            e[i] = abs(s)
            if e[i] > 0:
                ph = ph * s / e[i]
    return d, e, q


@njit(cache=True)
def _tql(d, e_in, z, want_z, max_iter):
    """Implicit QL on a symmetric tridiagonal matrix; returns 0 or -1 on failure."""
    n = d.size
    e = np.zeros(n)
    for i in range(n - 1):
        e[i] = e_in[i]
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) + dd == dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                return -1
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if want_z:
                    for k in range(z.shape[0]):
                        f = z[k, i + 1]
                        z[k, i + 1] = s * z[k, i] + c * f
                        z[k, i] = c * z[k, i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0


@njit(cache=True)
def _eigvals_dense(a, max_iter):
    d, e, _ = _householder(a, False)
    info = _tql(d, e, np.zeros((0, 0)), False, max_iter)
    d.sort()
    return d, info


@njit(cache=True)
def eigvals_stack(stack, max_iter):
    """Ascending eigenvalues of every matrix in a ``(count, n, n)`` Hermitian stack."""
    count, n = stack.shape[0], stack.shape[1]
    out = np.empty((count, n))
    status = 0
    for i in range(count):
        vals, info = _eigvals_dense(stack[i].copy(), max_iter)
        out[i] = vals
        if info != 0:
            status = info
    return out, status


@njit(cache=True)
def tridiagonal_eigvals_stack(diags, offdiags, max_iter):
    count, n = diags.shape
    out = np.empty((count, n))
    status = 0
    dummy = np.zeros((0, 0))
    for i in range(count):
        d = diags[i].copy()
        info = _tql(d, offdiags[i], dummy, False, max_iter)
        d.sort()
        out[i] = d
        if info != 0:
            status = info
    return out, status


def _as_array(x) -> np.ndarray:
    if isinstance(x, HermitianMatrix):
        return x.entries
    return np.asarray(x, dtype=np.complex128)


def check_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOLERANCE) -> None:
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotHermitian(f"shape {a.shape} is not square")
    if np.max(np.abs(a - a.conj().T), initial=0.0) > tol * scale:
        raise NotHermitian("matrix differs from its conjugate transpose")


def householder_tridiagonalize(x, return_unitary: bool = False):
    """Unitary reduction to a real tridiagonal model with nonnegative off-diagonal.

    With ``return_unitary`` also returns ``q`` such that
    ``q.conj().T @ x @ q == model.dense()``.
    """
    a = _as_array(x)
    check_hermitian(a)
    d, e, q = _householder(a.copy(), return_unitary)
    model = TridiagonalModel(d, e)
    return (model, q) if return_unitary else model


def _raise_if(info: int) -> None:
    if info != 0:
        raise NoConvergence(f"QL did not converge within {MAX_SWEEPS_PER_EIGENVALUE} sweeps per eigenvalue")


def eigvals(x) -> Spectrum:
    """All eigenvalues, ascending, of a Hermitian matrix or tridiagonal model."""
    if isinstance(x, TridiagonalModel):
        d = x.diag.copy()
        info = _tql(d, x.offdiag, np.zeros((0, 0)), False, MAX_SWEEPS_PER_EIGENVALUE)
        _raise_if(info)
        return Spectrum(np.sort(d))
    a = _as_array(x)
    check_hermitian(a)
    vals, info = _eigvals_dense(a.copy(), MAX_SWEEPS_PER_EIGENVALUE)
    _raise_if(info)
    return Spectrum(vals)


def eigh(x) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors as columns."""
    a = _as_array(x)
    check_hermitian(a)
    d, e, q = _householder(a.copy(), True)
    z = np.eye(d.size)
    info = _tql(d, e, z, True, MAX_SWEEPS_PER_EIGENVALUE)
    _raise_if(info)
    order = np.argsort(d)
    return d[order], (q @ z)[:, order]


def eigvals_many(stack: np.ndarray) -> np.ndarray:
    stack = np.ascontiguousarray(stack, dtype=np.complex128)
    if stack.shape[0] == 0:
        return np.empty((0, stack.shape[1]))
    vals, info = eigvals_stack(stack, MAX_SWEEPS_PER_EIGENVALUE)
    _raise_if(info)
    return vals


def tridiagonal_eigvals_many(diags: np.ndarray, offdiags: np.ndarray) -> np.ndarray:
    vals, info = tridiagonal_eigvals_stack(np.ascontiguousarray(diags, dtype=float),
                                           np.ascontiguousarray(offdiags, dtype=float),
                                           MAX_SWEEPS_PER_EIGENVALUE)
    _raise_if(info)
    return vals

"""Dense float64 matrix ops with strict shape contracts.

A "matrix" throughout the package is a 2-D float64 numpy array treated as an
immutable value: every op validates shapes, never mutates its inputs, and
returns a fresh array. Elementwise ops require exactly equal shapes; the
silent numpy broadcasting rules are deliberately not part of the contract.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeError
from .rng import Rng

Matrix = np.ndarray


def as_matrix(x) -> Matrix:
    """Coerce to a 2-D float64 array; reject any other rank."""
    a = np.asarray(x, dtype=np.float64)
    if a.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got ndim={a.ndim}, shape={a.shape}")
    return a


def _same_shape(op: str, a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"{op}: shapes differ, {a.shape} vs {b.shape}")


def matmul(a, b) -> Matrix:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"matmul: inner dimensions differ, {a.shape} x {b.shape}")
    return a @ b


def relu(x) -> Matrix:
    return np.maximum(as_matrix(x), 0.0)


def sigmoid(x) -> Matrix:
    """Logistic function, split by sign so exp never overflows."""
    x = as_matrix(x)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def tanh(x) -> Matrix:
    return np.tanh(as_matrix(x))


def hadamard(a, b) -> Matrix:
    a, b = as_matrix(a), as_matrix(b)
    _same_shape("hadamard", a, b)
    return a * b


def add(a, b) -> Matrix:
    a, b = as_matrix(a), as_matrix(b)
    _same_shape("add", a, b)
    return a + b


def concat_cols(a, b) -> Matrix:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[0] != b.shape[0]:
        raise ShapeError(f"concat_cols: row counts differ, {a.shape} vs {b.shape}")
    return np.hstack([a, b])


def glorot_uniform(rows: int, cols: int, rng: Rng) -> Matrix:
    """Uniform in [-s, s] with s = sqrt(6 / (rows + cols))."""
    if rows < 1 or cols < 1:
        raise ShapeError(f"glorot_uniform needs positive dims, got {rows}x{cols}")
    s = np.sqrt(6.0 / (rows + cols))
    return rng.uniform_matrix(rows, cols, -s, s)


@dataclass
class Parameter:
    """A trainable matrix plus its gradient accumulator."""

    name: str
    value: np.ndarray
    grad: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        self.value = as_matrix(self.value)
        if self.grad is None:
            self.grad = np.zeros_like(self.value)
        else:
            self.grad = as_matrix(self.grad)
            if self.grad.shape != self.value.shape:
                raise ShapeError(
                    f"parameter {self.name!r}: grad shape {self.grad.shape} "
                    f"!= value shape {self.value.shape}"
                )

    def zero_grad(self) -> None:
        self.grad.fill(0.0)

"""Concrete Werner-state families.

Pure states are amplitude vectors of length 2**n with qubit 1 as the most
significant bit; mixed states are 2**n x 2**n density matrices.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial

import numpy as np

from .diagrams import Partition
from .pauli import sigma_tensor

SQRT_HALF = 1.0 / np.sqrt(2.0)


def singlet() -> np.ndarray:
    return np.array([0.0, SQRT_HALF, -SQRT_HALF, 0.0], dtype=complex)


def permute_qubits_state(psi: np.ndarray, order, n: int) -> np.ndarray:
    """Move tensor factor j of ``psi`` to qubit position ``order[j]`` (0-based)."""
    t = np.asarray(psi).reshape((2,) * n)
    inverse = np.argsort(order)
    return t.transpose(inverse).reshape(-1)


def permute_qubits_operator(rho: np.ndarray, order, n: int) -> np.ndarray:
    """Move tensor factor j of ``rho`` to qubit position ``order[j]`` (0-based)."""
    t = np.asarray(rho).reshape((2,) * (2 * n))
    inverse = list(np.argsort(order))
    t = t.transpose(inverse + [n + k for k in inverse])
    return t.reshape(2**n, 2**n)


def chord_state(m: Partition) -> np.ndarray:
    """Product of singlets over the chords of a matching.

    Each chord {a, b} with a < b carries |0>_a|1>_b - |1>_a|0>_b.
    """
    if not m.is_matching:
        raise ValueError("chord_state expects a perfect matching")
    n = m.n
    psi = np.ones(1, dtype=complex)
    order = []
    for a, b in m.blocks:
        psi = np.kron(psi, singlet())
        order += [a - 1, b - 1]
    return permute_qubits_state(psi, order, n)


def bits_of(s) -> tuple[int, ...]:
    try:
        bits = tuple(int(c) for c in s)
    except ValueError as e:
        raise ValueError(f"not a bit string: {s!r}") from e
    if not bits or any(b not in (0, 1) for b in bits):
        raise ValueError(f"not a nonempty bit string: {s!r}")
    return bits


def basis_index(bits) -> int:
    k = 0
    for b in bits:
        k = 2 * k + b
    return k


def shift(bits) -> tuple[int, ...]:
    """Cyclic shift moving each bit one position toward qubit 1, wrapping the first to the end."""
    return tuple(bits[1:]) + (bits[0],)


def cyclic_sum(bits) -> np.ndarray:
    """Unnormalized sum_k omega^k |shift^k I> with omega = exp(2 pi i / n)."""
    bits = bits_of(bits)
    n = len(bits)
    omega = np.exp(2j * np.pi / n)
    out = np.zeros(2**n, dtype=complex)
    cur = bits
    for k in range(n):
        out[basis_index(cur)] += omega**k
        cur = shift(cur)
    return out


def cyclic_state(bits) -> np.ndarray | None:
    """Normalized C(I), or ``None`` when the phased sum vanishes."""
    raw = cyclic_sum(bits)
    norm = np.linalg.norm(raw)
    if norm <= 1e-12 * len(bits_of(bits)):
        return None
    return raw / norm


@lru_cache(maxsize=None)
def _cn_density(n: int) -> np.ndarray:
    acc = np.zeros((2**n, 2**n), dtype=complex)
    for k in range(2**n):
        bits = tuple(int(c) for c in format(k, f"0{n}b"))
        c = cyclic_state(bits)
        if c is not None:
            acc += np.outer(c, c.conj())
    acc /= np.trace(acc).real
    acc.setflags(write=False)
    return acc


def cn_density(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("cn_density needs n >= 1")
    return _cn_density(n).copy()


def diagram_density(d: Partition) -> np.ndarray:
    """Tensor product of C_|U| over the blocks U of ``d``, each on its own qubits."""
    rho = np.ones((1, 1), dtype=complex)
    order: list[int] = []
    for block in d.blocks:
        rho = np.kron(rho, _cn_density(len(block)))
        order += [x - 1 for x in block]
    return permute_qubits_operator(rho, order, d.n)


def _arrangements(counts: tuple[int, int, int, int]):
    """Distinct orderings of a multiset given by letter counts, lexicographic."""
    n = sum(counts)
    counts = list(counts)
    word: list[int] = []

    def rec():
        if len(word) == n:
            yield tuple(word)
            return
        for letter in range(4):
            if counts[letter]:
                counts[letter] -= 1
                word.append(letter)
                yield from rec()
                word.pop()
                counts[letter] += 1

    return rec()


def multinomial(*ks: int) -> int:
    out = factorial(sum(ks))
    for k in ks:
        out //= factorial(k)
    return out


def sym_element(n1: int, n2: int, n3: int, n: int) -> np.ndarray:
    """Average of sigma_I over the distinct arrangements of the Pauli word."""
    if min(n1, n2, n3) < 0 or n1 + n2 + n3 > n:
        raise ValueError(f"need nonnegative n1+n2+n3 <= n, got ({n1}, {n2}, {n3}, {n})")
    n0 = n - n1 - n2 - n3
    acc = np.zeros((2**n, 2**n), dtype=complex)
    count = 0
    for word in _arrangements((n0, n1, n2, n3)):
        acc += sigma_tensor(word)
        count += 1
    return acc / count


def radial_element(m: int, n: int) -> np.ndarray:
    """Matrix of the polynomial (x^2 + y^2 + z^2)^m under the Sym correspondence."""
    if m < 0 or 2 * m > n:
        raise ValueError(f"need 0 <= m <= n/2, got m={m}, n={n}")
    acc = np.zeros((2**n, 2**n), dtype=complex)
    for a in range(m + 1):
        for b in range(m - a + 1):
            c = m - a - b
            acc += multinomial(a, b, c) * sym_element(2 * a, 2 * b, 2 * c, n)
    return acc

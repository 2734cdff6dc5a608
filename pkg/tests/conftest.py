import itertools

import numpy as np
import pytest

import designlab as dl


def krawtchouk(n: int, j: int, i: int) -> float:
    """Binary Krawtchouk polynomial K_j(i) by the three-term recurrence."""
    prev, cur = 0.0, 1.0
    for k in range(j):
        nxt = ((n - 2 * i) * cur - (n - k + 1) * prev) / (k + 1)
        prev, cur = cur, nxt
    return cur


def extended_hamming_code() -> list[int]:
    """Vertex ids of the [8,4,4] extended Hamming code in H(8,2).

    Generator [I | P] of the [7,4] Hamming code plus an overall parity bit;
    bit i of a codeword is digit i of the vertex id.
    """
    gen = [
        (1, 0, 0, 0, 1, 1, 0),
        (0, 1, 0, 0, 1, 0, 1),
        (0, 0, 1, 0, 0, 1, 1),
        (0, 0, 0, 1, 1, 1, 1),
    ]
    words = []
    for coeffs in itertools.product((0, 1), repeat=4):
        word = [sum(c * g[k] for c, g in zip(coeffs, gen)) % 2 for k in range(7)]
        word.append(sum(word) % 2)
        words.append(sum(b << k for k, b in enumerate(word)))
    return sorted(words)


def even_weight_code(space: dl.Space) -> np.ndarray:
    words = np.array(space.labels)
    return np.flatnonzero(words.sum(axis=1) % 2 == 0)


FANO_BLOCKS = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6),
               (2, 5, 7), (3, 4, 7), (3, 5, 6)]


@pytest.fixture(scope="session")
def h32():
    return dl.hamming(3, 2)


@pytest.fixture(scope="session")
def h32_spec(h32):
    return dl.spectral_decomposition(h32)


@pytest.fixture(scope="session")
def h82():
    return dl.hamming(8, 2)


@pytest.fixture(scope="session")
def h82_spec(h82):
    return dl.spectral_decomposition(h82)


@pytest.fixture(scope="session")
def c4():
    return dl.cycle(4)


@pytest.fixture(scope="session")
def c4_spec(c4):
    return dl.spectral_decomposition(c4)


@pytest.fixture(scope="session")
def j73():
    return dl.johnson(7, 3)


@pytest.fixture(scope="session")
def j73_spec(j73):
    return dl.spectral_decomposition(j73)

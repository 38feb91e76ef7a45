"""Binary container for lattice states.

Layout: magic "WQW1", N as little-endian u32, chirality as u8 (0 plus,
1 minus), then N^3 * 2 little-endian complex doubles with x varying fastest,
then y, z, and the spinor component slowest.
"""

from __future__ import annotations

import struct
from typing import Tuple

import numpy as np

from .walk import Chirality, LatticeState

MAGIC = b"WQW1"


def write_state(path, state: LatticeState, chirality: Chirality) -> None:
    payload = np.ascontiguousarray(
        np.transpose(state.amplitudes, (3, 2, 1, 0)).astype("<c16")
    )
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<IB", state.N, 0 if chirality is Chirality.PLUS else 1))
        fh.write(payload.tobytes())


def read_state(path) -> Tuple[LatticeState, Chirality]:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != MAGIC:
            raise ValueError(f"bad magic {magic!r}")
        n_raw = fh.read(5)
        if len(n_raw) != 5:
            raise ValueError("truncated header")
        n, chir = struct.unpack("<IB", n_raw)
        if chir not in (0, 1):
            raise ValueError(f"bad chirality byte {chir}")
        data = np.frombuffer(fh.read(), dtype="<c16")
    expected = n * n * n * 2
    if data.size != expected:
        raise ValueError(f"expected {expected} amplitudes, found {data.size}")
    amp = np.transpose(data.reshape(2, n, n, n), (3, 2, 1, 0)).copy()
    state = LatticeState(int(n), amp)
    return state, Chirality.PLUS if chir == 0 else Chirality.MINUS

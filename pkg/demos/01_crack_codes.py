"""Crack coding a tiny image by hand.

Run: python demos/01_crack_codes.py
"""
import numpy as np

from crackcode import decode, dump_text, encode
from crackcode.bitpack import pack

# A 3x6 patch of grey values.  The 200-valued region snakes down and right.
image = np.array([
    [200, 10, 10, 10, 10, 10],
    [200, 200, 200, 200, 200, 200],
    [10, 10, 10, 200, 200, 200],
])

chains = encode(image)
print(f"{len(chains.chains)} chains, {chains.code_count} direction codes for {image.size} pixels\n")

# Same layout as a human-readable dump: row, column, value, codes, then -1.
# Codes: 0 left, 1 up, 2 right, 3 down.
print(dump_text(chains))

# Each chain's codes cost two bits apiece once packed.
first = chains.chains[0]
packed = pack(first.codes)
print(f"first chain: {len(first.codes)} codes -> {len(packed.data)} bytes: {packed.data.hex(' ')}")

# Replaying the chains rebuilds the image exactly.
restored = decode(chains)
assert (restored == image).all()
print("decoded image matches the original")

"""Shared test data.

Dimensions were computed outside the package: A-D types with an
orthonormal-basis Weyl dimension formula (sympy root systems, C2 via B2
with the nodes swapped), exceptional types from standard tables.
"""

# (type, Lambda-coefficients, dimension)
BATTERY = [
    ("A1", [3], 4),
    ("A2", [1, 1], 8),
    ("A2", [2, 1], 15),
    ("A3", [1, 0, 1], 15),
    ("A3", [1, 1, 0], 20),
    ("B2", [1, 1], 16),
    ("C2", [3, 1], 64),
    ("B3", [1, 0, 1], 48),
    ("C3", [1, 1, 0], 64),
    ("D4", [0, 1, 0, 0], 28),
    ("G2", [1, 1], 64),
]

# further oracle values (type, weight, dimension)
DIMENSIONS = BATTERY + [
    ("A3", [2, 1, 1], 140),
    ("C2", [1, 0], 4),
    ("C2", [0, 1], 5),
    ("B3", [1, 1, 1], 512),
    ("D4", [1, 0, 1, 1], 350),
    ("G2", [1, 0], 7),
    ("G2", [0, 1], 14),
    ("F4", [0, 0, 0, 1], 26),
    ("F4", [1, 0, 0, 0], 52),
    ("E6", [1, 0, 0, 0, 0, 0], 27),
    ("E6", [0, 1, 0, 0, 0, 0], 78),
    ("E8", [0, 0, 0, 0, 0, 0, 0, 1], 248),
    ("E8", [1, 0, 0, 0, 0, 0, 0, 0], 3875),
]

# weights used for the finite-type virtualization checks, per catalog entry
FOLDING_WEIGHTS = {
    "C2>A3": [[1, 0], [0, 1], [3, 1]],
    "B2>A3": [[1, 0], [0, 1], [1, 1]],
    "G2>D4": [[1, 0], [0, 1], [1, 1]],
    "G2>D4:dual": [[1, 0], [0, 1], [1, 1]],
    "B3>D4": [[1, 0, 0], [0, 0, 1], [1, 0, 1]],
    "C3>D4": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "F4>E6": [[0, 0, 0, 1], [1, 0, 0, 0], [0, 0, 1, 0]],
    "F4>E6:dual": [[0, 0, 0, 1], [1, 0, 0, 0], [0, 0, 1, 0]],
}

# (folding, r) pairs for the KR checks at desk scale
KR_CASES = [
    ("C2~>A3~", 1),
    ("D3~2>A3~", 1),
    ("B3~>D4~", 3),
    ("A5~2>D4~", 1),
    ("A4~2>A3~", 2),
]


def folding_weights(name, fold):
    """Listed weights, or the fundamental weights at nodes 1, 2 and n."""
    if name in FOLDING_WEIGHTS:
        return FOLDING_WEIGHTS[name]
    n = fold.source.rank
    return [[int(k == idx) for k in range(1, n + 1)] for idx in sorted({1, 2, n})]

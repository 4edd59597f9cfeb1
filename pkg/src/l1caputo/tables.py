"""Parameter lattices and published values of the four convergence tables.

Parameters are kept as the printed strings so emitted rows echo them verbatim.
Each entry: parameters..., published estimated order, published theoretical order.
"""

from __future__ import annotations

ALPHAS = ("0.1", "0.3", "0.5", "0.6", "0.9")

# (p, mu) per alpha block
_T1_BLOCK = (("1.5", "0.00"), ("1.5", "0.40"), ("3.0", "0.00"), ("3.0", "1.60"))
_T1_EST = (
    (1.234, 0.968, 1.568, 1.034),
    (1.034, 0.768, 1.368, 0.834),
    (0.834, 0.568, 1.168, 0.634),
    (0.734, 0.468, 1.068, 0.534),
    (0.434, 0.168, 0.768, 0.234),
)
_T1_THEORY = (
    (1.233, 0.967, 1.567, 1.033),
    (1.033, 0.767, 1.367, 0.833),
    (0.833, 0.567, 1.167, 0.633),
    (0.733, 0.467, 1.067, 0.533),
    (0.433, 0.167, 0.767, 0.233),
)

# (p, mu, gamma) per alpha block
_T2_BLOCK = (
    ("1.5", "0.00", "0.00"),
    ("1.5", "0.40", "0.10"),
    ("1.5", "0.10", "0.40"),
    ("1.5", "0.25", "0.25"),
    ("3.0", "0.00", "0.00"),
    ("3.0", "1.60", "0.40"),
    ("3.0", "0.40", "1.60"),
    ("3.0", "1.00", "1.00"),
)
_T2_EST = (
    (1.238, 0.969, 0.970, 1.069, 1.589, 1.036, 1.039, 1.238),
    (1.037, 0.769, 0.769, 0.868, 1.388, 0.836, 0.838, 1.037),
    (0.837, 0.569, 0.569, 0.668, 1.187, 0.636, 0.637, 0.837),
    (0.736, 0.469, 0.469, 0.568, 1.086, 0.536, 0.537, 0.736),
    (0.436, 0.169, 0.169, 0.268, 0.785, 0.236, 0.236, 0.436),
)
_T2_THEORY = (
    (1.233, 0.967, 0.967, 1.067, 1.567, 1.033, 1.033, 1.233),
    (1.033, 0.767, 0.767, 0.867, 1.367, 0.833, 0.833, 1.033),
    (0.833, 0.567, 0.567, 0.667, 1.167, 0.633, 0.633, 0.833),
    (0.733, 0.467, 0.467, 0.567, 1.067, 0.533, 0.533, 0.733),
    (0.433, 0.167, 0.167, 0.267, 0.767, 0.233, 0.233, 0.433),
)

# (p, mu) per alpha block, shared by tables 3 and 4
_T34_BLOCK = (("1.5", "0.5"), ("1.5", "2.0"), ("3.0", "0.5"), ("3.0", "2.0"))
_T3_EST = (
    (1.280, 1.132, 1.588, 1.525),
    (1.080, 0.932, 1.388, 1.325),
    (0.880, 0.732, 1.188, 1.125),
    (0.780, 0.632, 1.088, 1.025),
    (0.480, 0.332, 0.788, 0.725),
)
_T4_EST = (
    (1.317, 1.281, 1.606, 1.599),
    (1.117, 1.081, 1.406, 1.399),
    (0.917, 0.881, 1.206, 1.199),
    (0.817, 0.781, 1.106, 1.099),
    (0.517, 0.481, 0.806, 0.799),
)
_T34_THEORY = (
    (1.233, 1.233, 1.567, 1.567),
    (1.033, 1.033, 1.367, 1.367),
    (0.833, 0.833, 1.167, 1.167),
    (0.733, 0.733, 1.067, 1.067),
    (0.433, 0.433, 0.767, 0.767),
)


def _expand(block, est, theory):
    return tuple(
        (alpha, *params, est[i][k], theory[i][k])
        for i, alpha in enumerate(ALPHAS)
        for k, params in enumerate(block)
    )


TABLE_1 = _expand(_T1_BLOCK, _T1_EST, _T1_THEORY)
TABLE_2 = _expand(_T2_BLOCK, _T2_EST, _T2_THEORY)
TABLE_3 = _expand(_T34_BLOCK, _T3_EST, _T34_THEORY)
TABLE_4 = _expand(_T34_BLOCK, _T4_EST, _T34_THEORY)

PUBLISHED = {1: TABLE_1, 2: TABLE_2, 3: TABLE_3, 4: TABLE_4}

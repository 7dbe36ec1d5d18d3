"""Printed values used as oracles; each one is checked against the source text."""

# first-layer records: m -> (case, ram_status, Val or None, Q^acyc)
LAYER_RECORDS = {
    157019: ("NonSplit", "Ramified", 4, [0, -318, -4067]),
    3647: ("NonSplit", "Ramified", 5, [0, -3, -523]),
    107: (None, None, None, [0, 6, 17]),
    302: ("NonSplit", "Ramified", 3, [0, -93, -458]),
    237: ("NormalSplit", "Unramified", 1, [-1, 0, 6]),
    87: ("Trivial", "Unramified", 3, [-1, -2, 3]),
    8139: ("SpecialSplit", "Ramified", 3, [0, 108, -651]),
    128451: ("NormalSplit", "Unramified", 1, [-1, 76, 84]),
    23178: ("SpecialSplit", "Ramified", 2, [0, -54, -3168]),
    42591: ("SpecialSplit", "Unramified", 1, [-1, -20, -156]),
}

# 3-parts of H_(k_1^acyc) extracted from the printed invariants
H_K3 = {302: [3, 3], 3647: [27, 3], 157019: [27, 3, 3, 3], 87: [], 237: [], 8139: [9, 3]}

# kernel orders from the prose ("total", "injective" or an order)
KERNEL_PROSE = {302: "total", 3647: 3, 78730: 9, 58213: "injective", 32573: 3}

NORMAL_SPLIT_1E4 = [
    237, 426, 669, 687, 705, 1038, 1281, 1407, 1722, 2091, 2190, 2199, 2622, 2685, 2694,
    2802, 2955, 3270, 3513, 4017, 4026, 4035, 4467, 4485, 4566, 4638, 4701, 4881, 4917,
    5142, 5205, 5295, 5313, 5646, 5871, 5961, 6267, 6303, 6429, 6510, 6690, 6699, 6789,
    7662, 7671, 7905, 7914, 7977, 8031, 8265, 8274, 8571, 8706, 8742, 8751, 8823, 8886,
    9489, 9498, 9687,
]

PROGRAM_I_LIST = [
    28477, 32573, 34603, 35353, 39677, 50983, 55486, 56773, 58213, 59221, 61379, 63079,
    67054, 68626, 78730, 82834, 86551, 88415, 98281, 106282, 109441, 111749, 113213,
    118382, 128123, 130458, 134830, 137513, 140570, 145090, 155954, 157019, 161034,
    180071, 182201, 190754, 191473, 191926, 192262, 192862, 198833, 200693,
]

CAPITULE1_HEAD = [302, 602, 617, 713, 863]  # 3 split, ramified
CAPITULE2_HEAD = [298, 397, 622, 643, 685]  # 3 not split, ramified

# census to 10^6: Non-Split, Normal Split, Special Split, Trivial
CENSUS_1E6 = {"NonSplit": 69809, "NormalSplit": 7233, "SpecialSplit": 2203, "Trivial": 528678}

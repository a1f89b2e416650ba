"""Expected Z2 / B2 / H2 spans for the five three-dimensional fixtures.

A form is a dict {(i, j): coeff} over the Delta_ij basis (1-based).  The H2
entries are representatives; they are only meaningful modulo B2.
"""

L = "l"

SPACES = {
    "m3_01": {
        "z2": [{(1, 1): 1}, {(1, 2): 1, (2, 1): 1}, {(1, 3): 1, (2, 2): 1, (3, 1): 1}],
        "b2": [{(1, 1): 1}, {(1, 2): 1, (2, 1): 1}],
        "h2": [{(1, 3): 1, (2, 2): 1, (3, 1): 1}],
    },
    "m3_02": {
        "z2": [{(1, 1): 1}, {(1, 3): 1}, {(1, 2): 1, (2, 1): 1}, {(3, 1): 1},
               {(2, 3): 1, (3, 2): 1}, {(3, 3): 1}],
        "b2": [{(1, 1): 1}],
        "h2": [{(1, 3): 1}, {(1, 2): 1, (2, 1): 1}, {(3, 1): 1}, {(2, 3): 1, (3, 2): 1}, {(3, 3): 1}],
    },
    "m3_03": {
        "z2": [{(1, 1): 1}, {(1, 2): 1}, {(2, 1): 1}, {(2, 2): 1},
               {(1, 3): 1, (3, 1): 1}, {(2, 3): 1, (3, 2): 1}],
        "b2": [{(1, 2): 1, (2, 1): 1}],
        "h2": [{(1, 1): 1}, {(2, 1): 1}, {(2, 2): 1}, {(1, 3): 1, (3, 1): 1}, {(2, 3): 1, (3, 2): 1}],
    },
    "m3_04": {
        "z2": [{(1, 1): 1}, {(1, 2): 1}, {(2, 1): 1}, {(2, 2): 1},
               {(1, 3): 1, (3, 1): -1}, {(2, 3): 1, (3, 2): -1}],
        "b2": [{(1, 2): 1, (2, 1): -1}],
        "h2": [{(1, 1): 1}, {(1, 2): 1}, {(2, 2): 1}, {(1, 3): 1, (3, 1): -1}, {(2, 3): 1, (3, 2): -1}],
    },
    "m3_05": {
        "z2": [{(1, 1): 1}, {(1, 2): 1}, {(2, 1): 1}, {(2, 2): 1}],
        "b2": [{(1, 1): L, (2, 1): 1, (2, 2): 1}],
        "h2": [{(1, 1): 1}, {(1, 2): 1}, {(2, 2): 1}],
    },
}

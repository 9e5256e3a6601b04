"""Shared test data.

REISNER_ROWS are the exponent vectors of the ten squarefree cubics cutting
out the 6-vertex triangulation of the projective plane; the ideal they
generate is the recurring worked example across the test suite.
"""

REISNER_ROWS = (
    (1, 1, 1, 0, 0, 0),
    (1, 1, 0, 1, 0, 0),
    (1, 0, 1, 0, 1, 0),
    (1, 0, 0, 1, 0, 1),
    (1, 0, 0, 0, 1, 1),
    (0, 1, 1, 0, 0, 1),
    (0, 1, 0, 1, 1, 0),
    (0, 1, 0, 0, 1, 1),
    (0, 0, 1, 1, 1, 0),
    (0, 0, 1, 1, 0, 1),
)

RP2_FACETS = (
    (0, 1, 4),
    (0, 1, 5),
    (0, 2, 3),
    (0, 2, 5),
    (0, 3, 4),
    (1, 2, 3),
    (1, 2, 4),
    (1, 3, 5),
    (2, 4, 5),
    (3, 4, 5),
)

"""Published reference values for the lower bounds, d = 2..11.

Golden data for regression checks: the table command recomputes every entry
and reports the maximum relative deviation, so numeric-library differences
surface as a measured number instead of a silent failure.

TABLE1 maps d -> (phi_b3_bound, penrose_bound); TABLE3 maps
d -> (penrose_bound, phi_b3_bound, hall_bound).  The two tables disagree in
the last printed digit for a few entries (independent roundings of the same
quantities).  TABLE2 maps d -> (r, t, runs, successes, ci_upper, lower_bound)
for the published simulation runs.
"""

TABLE1 = {
    2: (0.135802, 0.0795774),
    3: (0.0433691, 0.0298415),
    4: (0.0167131, 0.0126651),
    5: (0.00734445, 0.00593678),
    6: (0.00357261, 0.00302358),
    7: (0.00188850, 0.00165352),
    8: (0.00107117, 0.000962435),
    9: (0.000645942, 0.000592123),
    10: (0.000411202, 0.000382941),
    11: (0.000274803, 0.000259158),
}

TABLE3 = {
    2: (0.0795774, 0.135802, 0.174746),
    3: (0.0298415, 0.0433691, 0.0534187),
    4: (0.0126651, 0.0167131, 0.0198296),
    5: (0.00593678, 0.00734445, 0.00845546),
    6: (0.00302358, 0.00357261, 0.00401478),
    7: (0.00165352, 0.00188850, 0.00208114),
    8: (0.000962436, 0.00107117, 0.00116176),
    9: (0.000592124, 0.000645943, 0.000691455),
    10: (0.000382941, 0.000411203, 0.000435437),
    11: (0.000259158, 0.000274804, 0.000288394),
}

TABLE2 = {
    2: (16000, 0.357, 10000, 0, 0.00063692, 0.356772),
    3: (2000, 0.0814, 10000, 0, 0.00063692, 0.0813481),
    4: (500, 0.0261, 10000, 10, 0.002119993, 0.0260445),
    5: (500, 0.0101, 10000, 0, 0.00063692, 0.0100935),
    6: (200, 0.00456, 10000, 1, 0.000813077, 0.00455628),
    7: (200, 0.00228, 10000, 18, 0.003154537, 0.00227278),
    8: (150, 0.00124, 10000, 21, 0.003529665, 0.00123560),
    9: (150, 0.000725, 10000, 6, 0.001571485, 0.000723859),
    10: (120, 0.000450, 10000, 4, 0.001282615, 0.000449422),
    11: (120, 0.0002955, 10000, 8, 0.001849554, 0.000294952),
}

DIMENSIONS = tuple(range(2, 12))

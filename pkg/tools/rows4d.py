"""Four-dimensional rows of the annotation manifest, as printed in the source table.

Run ``python3 tools/build_annotations.py`` to regenerate ``annotations.json``.
"""
from fractions import Fraction

# (family, subcase label, condition, samples, h, center, hf(+r2), lam>=0 (+r2), lam>=0 (+R2), lam=0 (+R2))
ROWS_4D = [
    ("A4.1", "all", None, [{}], (2, 2, 2, 1), 0, True, False, False, False),
    ("A4.2", "generic", "alpha not in (-2, -1, 0)", [{"alpha": "1/3"}, {"alpha": "2"}, {"alpha": "-3"}],
     (1, 0, 0, 0), 0, False, True, True, True),
    ("A4.2", "alpha=-2", "alpha == -2", [{"alpha": "-2"}], (1, 0, 1, 1), 0, True, False, True, False),
    ("A4.2", "alpha=-1", "alpha == -1", [{"alpha": "-1"}], (1, 1, 1, 0), 0, False, False, True, False),
    ("A4.3", "all", None, [{}], (2, 2, 1, 0), 1, False, False, True, False),
    ("A4.4", "all", None, [{}], (1, 0, 0, 0), 0, False, True, True, True),
    ("A4.5", "generic",
     "-1 < alpha <= beta <= 1 and alpha*beta != 0 and beta not in (-alpha, -(alpha+1))",
     [{"alpha": "1/2", "beta": "1"}, {"alpha": "-1/3", "beta": "1/2"}, {"alpha": "1/3", "beta": "2/3"}],
     (1, 0, 0, 0), 0, False, True, True, True),
    ("A4.5", "beta=-alpha-1", "beta == -(alpha+1) and -1 < alpha < -1/2",
     [{"alpha": "-3/4", "beta": "-1/4"}, {"alpha": "-2/3", "beta": "-1/3"}],
     (1, 0, 1, 1), 0, True, False, True, False),
    ("A4.5", "alpha=beta=-1/2", "alpha == -1/2 and beta == -1/2", [{"alpha": "-1/2", "beta": "-1/2"}],
     (1, 0, 1, 1), 0, False, False, True, False),
    ("A4.5", "alpha=-1", "alpha == -1 and beta > 0 and beta != 1",
     [{"alpha": "-1", "beta": "1/2"}, {"alpha": "-1", "beta": "1/3"}, {"alpha": "-1", "beta": "2"}],
     (1, 1, 1, 0), 0, False, False, True, False),
    ("A4.5", "alpha=-1,beta=1", "alpha == -1 and beta == 1", [{"alpha": "-1", "beta": "1"}],
     (1, 2, 2, 0), 0, False, False, False, False),
    ("A4.6", "generic", "alpha > 0 and beta not in (0, -alpha/2)",
     [{"alpha": "1", "beta": "1"}, {"alpha": "2", "beta": "-1/3"}, {"alpha": "1/2", "beta": "3"}],
     (1, 0, 0, 0), 0, False, True, True, True),
    ("A4.6", "beta=-alpha/2", "beta == -alpha/2 and alpha > 0",
     [{"alpha": "2", "beta": "-1"}, {"alpha": "1", "beta": "-1/2"}],
     (1, 0, 1, 1), 0, True, False, True, False),
    ("A4.6", "beta=0", "beta == 0 and alpha > 0", [{"alpha": "1", "beta": "0"}, {"alpha": "2", "beta": "0"}],
     (1, 1, 1, 0), 0, False, False, True, False),
    ("A4.7", "all", None, [{}], (1, 0, 0, 0), 0, False, False, True, True),
    ("A4.8", "all", None, [{}], (1, 0, 1, 1), 1, True, False, True, False),
    ("A4.9", "generic", "-1 < alpha <= 1 and alpha not in (-1/2, 0)",
     [{"alpha": "1/3"}, {"alpha": "1"}, {"alpha": "-2/3"}], (1, 0, 0, 0), 0, False, False, True, True),
    ("A4.9", "alpha=-1/2", "alpha == -1/2", [{"alpha": "-1/2"}], (1, 1, 1, 0), 0, True, False, False, False),
    ("A4.9", "alpha=0", "alpha == 0", [{"alpha": "0"}], (2, 1, 0, 0), 0, False, False, True, False),
    ("A4.10", "all", None, [{}], (1, 0, 1, 1), 1, True, False, True, False),
    ("A4.11", "all", "alpha > 0", [{"alpha": "1"}, {"alpha": "1/2"}, {"alpha": "3"}],
     (1, 0, 0, 0), 0, False, False, True, True),
    ("A4.12", "all", None, [{}], (2, 1, 0, 0), 0, True, False, False, False),
]

FAMILIES_4D = {
    "A4.1": {"nilradical": "n4"},
    "A4.2": {"nilradical": "R3"},
    "A4.3": {"nilradical": "R3"},
    "A4.4": {"nilradical": "R3"},
    "A4.5": {"nilradical": "R3",
             "isomorphisms": [{"condition": "alpha != 0 and beta == -alpha", "text": "isomorphic to A4.5 with (alpha, beta) = (-1, 1/alpha)"},
                              {"condition": "alpha == -1", "text": "isomorphic to A4.5 with (alpha, beta) = (-1, -beta)"}]},
    "A4.6": {"nilradical": "R3"},
    "A4.7": {"nilradical": "h3"},
    "A4.8": {"nilradical": "h3"},
    "A4.9": {"nilradical": "h3"},
    "A4.10": {"nilradical": "h3"},
    "A4.11": {"nilradical": "h3"},
    "A4.12": {"nilradical": "R2"},
    "B": {"nilradical": "R3", "domain": "beta > 0",
          "isomorphisms": [
              {"condition": "beta == 2", "text": "isomorphic to A4.2 with alpha = -2"},
              {"condition": "0 < beta < 2", "text": "isomorphic to A4.6 with alpha = 2*beta/sqrt(4 - beta^2), beta' = -alpha/2"},
              {"condition": "beta > 2", "text": "isomorphic to A4.5 with alpha = -1/2 - sqrt(beta^2 - 4)/(2*beta), beta' = -(alpha + 1)"}]},
    "r2": {"nilradical": "R"},
}

REFINED = {
    "A4.5/alpha=beta=-1/2": {"summand": "r2", "pairs": [["5", "4"]], "target": "4 + rt*5", "rootd": 2},
}

KNOWN_DISCREPANCIES = {
    "A4.1/all": {"center_dim": "bracket (e24, e34, 0, 0) has centre spanned by e_1; annotation records 0"},
}

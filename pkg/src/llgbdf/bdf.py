"""BDF scheme identities and their multistep coefficient tables.

All four integrators share one template: a BDF combination of history
levels on the left, an implicit Laplacian at the new level, and explicitly
extrapolated coefficient fields.  Weights below are ordered newest level
first.
"""

from __future__ import annotations

from enum import Enum


class SchemeKind(Enum):
    BDF1 = "bdf1"
    BDF2_SIPM = "bdf2-sipm"
    BDF3_EXISTING = "bdf3-existing"
    BDF3_PROPOSED = "bdf3-proposed"

    @classmethod
    def parse(cls, text: str) -> "SchemeKind":
        key = text.strip().lower().replace("_", "-")
        aliases = {
            "bdf1": cls.BDF1,
            "bdf2": cls.BDF2_SIPM,
            "bdf2-sipm": cls.BDF2_SIPM,
            "sipm": cls.BDF2_SIPM,
            "bdf3-existing": cls.BDF3_EXISTING,
            "existing": cls.BDF3_EXISTING,
            "bdf3-proposed": cls.BDF3_PROPOSED,
            "proposed": cls.BDF3_PROPOSED,
            "bdf3": cls.BDF3_PROPOSED,
        }
        if key not in aliases:
            raise ValueError(f"unknown scheme {text!r}")
        return aliases[key]


#: number of prior (m, f) levels each scheme consumes
HISTORY_DEPTH = {
    SchemeKind.BDF1: 1,
    SchemeKind.BDF2_SIPM: 2,
    SchemeKind.BDF3_EXISTING: 3,
    SchemeKind.BDF3_PROPOSED: 3,
}

#: coefficient of the implicit level in the BDF time derivative
LEADING_COEFF = {
    SchemeKind.BDF1: 1.0,
    SchemeKind.BDF2_SIPM: 1.5,
    SchemeKind.BDF3_EXISTING: 11.0 / 6.0,
    SchemeKind.BDF3_PROPOSED: 11.0 / 6.0,
}

#: weights of the history levels moved to the right-hand side,
#: newest first: b_core = sum w_i m^{newest-i}
HISTORY_WEIGHTS = {
    1: (1.0,),
    2: (2.0, -0.5),
    3: (3.0, -1.5, 1.0 / 3.0),
}

#: explicit extrapolation weights to the new level, newest first
EXTRAPOLATION_WEIGHTS = {
    1: (1.0,),
    2: (2.0, -1.0),
    3: (3.0, -3.0, 1.0),
}

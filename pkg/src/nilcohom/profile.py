"""Classify a symplectic nilmanifold against the table of homotopy properties.

The table (symplectically aspherical case) has one row per combination of
(triviality of Massey products, Hard Lefschetz, evenness of odd Betti numbers)
in the order yes/no, most significant column first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex import CohomologyBasis, Differential, cohomology
from .errors import OracleMismatch
from .exterior import Form
from .massey import scan_triple_massey
from .symplectic import check_symplectic, hard_lefschetz, odd_degree_skew_forms

TABLE_ROWS = {
    1: "Kähler (T^{2n})",
    2: "Impossible",
    3: "?",
    4: "?",
    5: "?",
    6: "Impossible",
    7: "K x K",
    8: "K",
}

MASSEY_CAVEAT = (
    "Massey column: only triple products of basis classes (and [omega]) up to the "
    "degree bound were scanned; 'yes' means none was found non-trivial, which does "
    "not certify that all Massey products vanish."
)
UNKNOWN_CAVEAT = (
    "This combination is marked '?' in the table: no example is known, and this "
    "report makes no existence claim."
)


def table_row(massey_trivial: bool, hlp: bool, odd_even: bool) -> int:
    return 1 + 4 * (not massey_trivial) + 2 * (not hlp) + (not odd_even)


@dataclass
class PropertyProfile:
    massey_triple_trivial: bool
    massey_bound: int
    massey_witness: object
    hard_lefschetz: bool
    odd_betti_even: bool
    betti: list
    matched_table_line: int
    annotation: str
    caveats: list

    def to_dict(self):
        w = self.massey_witness
        return {
            "massey_triple_trivial": self.massey_triple_trivial,
            "massey_bound": self.massey_bound,
            "massey_witness": list(w.labels) if w is not None else None,
            "hard_lefschetz": self.hard_lefschetz,
            "odd_betti_even": self.odd_betti_even,
            "betti": self.betti,
            "matched_table_line": self.matched_table_line,
            "annotation": self.annotation,
            "caveats": self.caveats,
        }


def compute_profile(d: Differential, omega: Form, massey_bound: int = 4,
                    coh: CohomologyBasis | None = None) -> PropertyProfile:
    coh = coh if coh is not None else cohomology(d)
    s = check_symplectic(d, omega)
    betti = coh.betti()
    odd_even = all(b % 2 == 0 for k, b in enumerate(betti) if k % 2)
    hlp = hard_lefschetz(s, coh).passes
    if hlp:
        # second route: the skew forms on odd cohomology must be non-degenerate
        forms = odd_degree_skew_forms(s, coh)
        if not all(forms.values()) or not odd_even:
            raise OracleMismatch(
                "Hard Lefschetz holds but odd-degree cohomology is not symplectic: "
                f"skew forms {forms}, Betti numbers {betti}"
            )
    hits = scan_triple_massey(coh, massey_bound, {"omega": coh.reduce(omega, 2)})
    trivial = not hits
    row = table_row(trivial, hlp, odd_even)
    if TABLE_ROWS[row] == "Impossible":
        raise OracleMismatch(f"computed profile lands on impossible table line {row}")
    caveats = [MASSEY_CAVEAT]
    if TABLE_ROWS[row] == "?":
        caveats.append(UNKNOWN_CAVEAT)
    return PropertyProfile(trivial, massey_bound, hits[0] if hits else None, hlp,
                           odd_even, betti, row, TABLE_ROWS[row], caveats)

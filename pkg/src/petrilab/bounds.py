"""Integer calculators for the dimension bounds on W^r_d and the associated
classification statements.  No geometry happens here."""

from __future__ import annotations

from dataclasses import dataclass

KEEM_MIN_GENUS = 11
KEEM_DEGREE_SLACK = 4  # d <= g + r - 4

MUMFORD_CASES = ("trigonal", "bi-elliptic", "smooth-plane-quintic")
CLIFFORD_TWO_CASES = ("plane-sextic", "four-gonal")

# Machine-readable notes on sign and factor conventions used by this package.
ERRATA = (
    {
        "id": "main-bound-sign",
        "note": "the Clifford-index refinement is d - 2r - ceil(c/2); a '+ceil(c/2)' form of the same "
        "bound also circulates and disagrees with the c = 0 case, so the minus sign is used",
    },
    {
        "id": "sequence-bound-factors",
        "note": "h0(K_{r+1}) <= h0(K - 2D) + (r - 1) h0(K - D); reports also carry the variant with the "
        "two h0 factors exchanged as 'printed_bound', unchecked",
    },
    {
        "id": "cliff-2d-direction",
        "note": "h0(K - 2D) >= g - d - e gives Cliff(2D) = Cliff(K - 2D) <= 2e; combined with "
        "Cliff(2D) >= Cliff(C) this yields 2e >= Cliff(C)",
    },
)


def ceil_half(c: int) -> int:
    return -(-c // 2)


def cliff_pair(d: int, r: int) -> int:
    return d - 2 * r


def martens_bound(d: int, r: int, hyperelliptic: bool) -> int:
    return d - 2 * r if hyperelliptic else d - 2 * r - 1


def main_result_bound(d: int, r: int, c: int) -> int:
    """d - 2r - ceil(c/2) for a curve of Clifford index c."""
    if c < 0:
        raise ValueError("Clifford index is nonnegative")
    return d - 2 * r - ceil_half(c)


def mumford_case_labels() -> list[str]:
    """Curves with dim W^r_d = d - 2r - 1 fall in one of these classes."""
    return list(MUMFORD_CASES)


def _normalize(label: str) -> str:
    return "-".join(label.lower().replace("_", " ").split())


def is_mumford_case(label: str) -> bool:
    return _normalize(label) in MUMFORD_CASES


def keem_applicable(g: int, d: int, r: int) -> bool:
    return g >= KEEM_MIN_GENUS and d <= g + r - KEEM_DEGREE_SLACK


def clifford_two_classification(d: int, r: int, g: int, dim_wrd: int) -> dict | None:
    """Clifford index 2 (plane sextic or 4-gonal) when dim W^r_d = d - 2r - 2 and d <= g - 2.

    Returns ``None`` when the hypotheses are not met.
    """
    if d <= g - 2 and dim_wrd == d - 2 * r - 2:
        return {"cliff": 2, "cases": list(CLIFFORD_TWO_CASES)}
    return None


@dataclass(frozen=True)
class BoundQuery:
    g: int
    d: int
    r: int
    c: int = 0
    observed_dim: int | None = None

    def __post_init__(self):
        if self.g < 2 or self.r < 0 or self.d < 0 or self.c < 0:
            raise ValueError(f"invalid bound query {self}")

    def evaluate(self) -> dict:
        out = {
            "g": self.g,
            "d": self.d,
            "r": self.r,
            "c": self.c,
            "cliff_L": cliff_pair(self.d, self.r),
            "martens_hyperelliptic": martens_bound(self.d, self.r, True),
            "martens_non_hyperelliptic": martens_bound(self.d, self.r, False),
            "main_result": main_result_bound(self.d, self.r, self.c),
            "keem_applicable": keem_applicable(self.g, self.d, self.r),
            "errata": [e["id"] for e in ERRATA],
        }
        if self.observed_dim is not None:
            out["observed_dim"] = self.observed_dim
            out["within_main_result"] = self.observed_dim <= out["main_result"]
            out["clifford_two"] = clifford_two_classification(self.d, self.r, self.g, self.observed_dim)
        return out

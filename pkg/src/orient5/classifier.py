"""Decision table placing a multiplication of a diameter-5 tree in class C0
(orientation number 5) or C1 (orientation number 6)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from .errors import PreconditionError
from .graph import Diam5Profile, ParentTree, a_set, check_multiplicities, diameter, profile_diam5

ROW1 = "Row1"
ROW2 = "Row2"
ROW3_C0 = "Row3-C0"
ROW3_C1 = "Row3-C1"


@dataclass(frozen=True)
class Classification:
    klass: str  # "C0" or "C1"
    orientation_number: int
    rule: str
    profile: Diam5Profile
    witness: Any = field(default=None, compare=False)

    def __post_init__(self):
        assert (self.orientation_number == 5) == (self.klass == "C0")


def _check_input(t: ParentTree, s: Mapping[str, int]) -> dict[str, int]:
    d = diameter(t)
    if d >= 6:
        raise PreconditionError(
            f"tree has diameter {d}; multiplications of trees with diameter >= 6 are "
            "already known to lie in C0 and are not classified here"
        )
    if d != 5:
        raise PreconditionError(f"tree has diameter {d}; only diameter 5 is classified")
    try:
        return check_multiplicities(t, s, minimum=2)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None


def classify(t: ParentTree, s: Mapping[str, int]) -> Classification:
    s = _check_input(t, s)
    prof = profile_diam5(t, s)
    if s[prof.c1] >= 3 or s[prof.c2] >= 3:
        return Classification("C0", 5, ROW1, prof)
    if prof.m[1] >= 4 and prof.m[2] >= 4:
        return Classification("C0", 5, ROW2, prof)
    # both centres have multiplicity 2 and rows 1-2 failed, so some m_k is 2 or 3
    assert any(2 <= prof.m[k] <= 3 for k in (1, 2)), "decision table is not exhaustive"
    if len(prof.nl[1]) == 1 or len(prof.nl[2]) == 1:
        return Classification("C0", 5, ROW3_C0, prof)
    return Classification("C1", 6, ROW3_C1, prof)


def check_known_criteria(t: ParentTree, s: Mapping[str, int], c: Classification) -> dict:
    """Cross-check a classification against the older partial criteria.

    Clause ``b``: at most one vertex has two vertices at distance 5 => C0.
    Clause ``c``: off-centre degrees all <= 2, |A| >= 2 and s == 2 everywhere => C1.
    Each clause is reported as ``vacuous``, ``checked`` or ``violated``.
    """
    a = a_set(t)
    prof = c.profile
    centres = {prof.c1, prof.c2}
    if len(a) <= 1:
        b = "checked" if c.klass == "C0" else "violated"
    else:
        b = "vacuous"
    thin = all(t.degree(v) <= 2 for v in t.vertices if v not in centres)
    all_two = all(s[v] == 2 for v in t.vertices)
    if thin and len(a) >= 2 and all_two:
        cc = "checked" if c.klass == "C1" else "violated"
    else:
        cc = "vacuous"
    return {"a_set_size": len(a), "b": b, "c": cc}


def verdict(t: ParentTree, s: Mapping[str, int], c: Classification | None = None) -> dict:
    """JSON-ready summary used by the ``classify`` command."""
    c = c or classify(t, s)
    known = check_known_criteria(t, s, c)
    return {
        "class": c.klass,
        "orientation_number": c.orientation_number,
        "rule": c.rule,
        "centres": [c.profile.c1, c.profile.c2],
        "nl_sizes": [len(c.profile.nl[1]), len(c.profile.nl[2])],
        "m": [c.profile.m[1], c.profile.m[2]],
        "a_set_size": known["a_set_size"],
        "thm14": {"b": known["b"], "c": known["c"]},
    }
